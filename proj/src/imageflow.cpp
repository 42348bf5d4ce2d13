#include "flowpred/imageflow.hpp"

#include <cmath>
#include <string>

#include "flowpred/error.hpp"

namespace flowpred {

SeedMask SeedMask::from_image(const GrayImage& image) {
  SeedMask seeds(image.width, image.height);
  for (std::size_t i = 0; i < image.pixels.size(); ++i) {
    switch (image.pixels[i]) {
      case 0: break;
      case 255: seeds.labels[i] = SeedLabel::kSource; break;
      case 128: seeds.labels[i] = SeedLabel::kSink; break;
      default:
        throw ParseError("seed image sample " + std::to_string(image.pixels[i]) + " at index " +
                         std::to_string(i) + " is not 0, 128 or 255");
    }
  }
  return seeds;
}

GrayImage SeedMask::to_image() const {
  GrayImage image(width, height);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    image.pixels[i] = labels[i] == SeedLabel::kSource ? 255 : labels[i] == SeedLabel::kSink ? 128 : 0;
  }
  return image;
}

void GraphParams::validate() const {
  if (contrast_scale < 1) throw ContractError("contrast scale C must be >= 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ContractError("sigma must be positive");
  if (neighborhood != 4 && neighborhood != 8) throw ContractError("neighborhood must be 4 or 8");
  if (weight_scale < 1) throw ContractError("weight scale must be >= 1");
}

Capacity boundary_weight(int ip, int iq, const GraphParams& params) {
  const double diff = static_cast<double>(ip - iq);
  const double w = static_cast<double>(params.weight_scale) * params.contrast_scale *
                   std::exp(-(diff * diff) / (2.0 * params.sigma * params.sigma));
  return std::max<Capacity>(1, std::llround(w));
}

SegmentationGraph build_grid_graph(const GrayImage& image, const SeedMask& seeds,
                                   const GraphParams& params) {
  params.validate();
  if (image.width != seeds.width || image.height != seeds.height) {
    throw ContractError("seed mask " + std::to_string(seeds.width) + "x" +
                        std::to_string(seeds.height) + " does not match image " +
                        std::to_string(image.width) + "x" + std::to_string(image.height));
  }
  bool has_source = false;
  bool has_sink = false;
  for (auto label : seeds.labels) {
    has_source |= label == SeedLabel::kSource;
    has_sink |= label == SeedLabel::kSink;
  }
  if (!has_source && !has_sink) throw ContractError("no seeds");
  if (!has_source) throw ContractError("no source seed");
  if (!has_sink) throw ContractError("no sink seed");

  const int w = image.width;
  const int h = image.height;
  const VertexId pixels = w * h;
  std::vector<Edge> edges;
  std::vector<Capacity> incident(static_cast<std::size_t>(pixels), 0);

  // Forward half of the neighbourhood; each offset yields both directions.
  static constexpr int kOffsets[4][2] = {{1, 0}, {0, 1}, {1, 1}, {-1, 1}};
  const int offsets = params.neighborhood == 8 ? 4 : 2;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int k = 0; k < offsets; ++k) {
        const int nx = x + kOffsets[k][0];
        const int ny = y + kOffsets[k][1];
        if (nx < 0 || nx >= w || ny >= h) continue;
        const VertexId p = y * w + x;
        const VertexId q = ny * w + nx;
        const Capacity c = boundary_weight(image.at(x, y), image.at(nx, ny), params);
        edges.push_back(Edge{p, q, c});
        edges.push_back(Edge{q, p, c});
        incident[static_cast<std::size_t>(p)] += 2 * c;
        incident[static_cast<std::size_t>(q)] += 2 * c;
      }
    }
  }

  const auto first_terminal = static_cast<EdgeId>(edges.size());
  const VertexId s = pixels;
  const VertexId t = pixels + 1;
  for (VertexId p = 0; p < pixels; ++p) {
    // Exceeds every cut through the pixel's grid edges, so never cut.
    const Capacity hard = 1 + incident[static_cast<std::size_t>(p)];
    switch (seeds.labels[static_cast<std::size_t>(p)]) {
      case SeedLabel::kSource: edges.push_back(Edge{s, p, hard}); break;
      case SeedLabel::kSink: edges.push_back(Edge{p, t, hard}); break;
      case SeedLabel::kNeutral: break;
    }
  }
  return SegmentationGraph(FlowNetwork::build(pixels + 2, std::move(edges), s, t), w, h,
                           first_terminal);
}

GrayImage SegmentationMask::to_image() const {
  GrayImage image(width, height);
  for (std::size_t i = 0; i < foreground.size(); ++i) image.pixels[i] = foreground[i] ? 255 : 0;
  return image;
}

SegmentResult segment(const SegmentationGraph& graph, const SolveOptions& options) {
  const FlowNetwork& net = graph.network();
  SolveResult solved = ford_fulkerson(net, Flow::zero(net), options);
  SegmentResult result;
  result.cut = min_cut(net, solved.flow);
  result.stats = solved.stats;
  result.mask.width = graph.width();
  result.mask.height = graph.height();
  result.mask.foreground.assign(static_cast<std::size_t>(graph.width() * graph.height()), 0);
  for (VertexId v : result.cut.source_side) {
    int x = 0;
    int y = 0;
    if (graph.pixel_of_vertex(v, x, y)) {
      result.mask.foreground[static_cast<std::size_t>(v)] = 1;
    }
  }
  return result;
}

}  // namespace flowpred
