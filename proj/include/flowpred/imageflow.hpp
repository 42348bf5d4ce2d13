#pragma once

#include <cstdint>
#include <vector>

#include "flowpred/network.hpp"
#include "flowpred/pgm.hpp"
#include "flowpred/solve.hpp"

namespace flowpred {

enum class SeedLabel : std::int8_t { kSink = -1, kNeutral = 0, kSource = 1 };

struct SeedMask {
  int width = 0;
  int height = 0;
  std::vector<SeedLabel> labels;

  SeedMask() = default;
  SeedMask(int w, int h)
      : width(w), height(h),
        labels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), SeedLabel::kNeutral) {}

  SeedLabel& at(int x, int y) { return labels[static_cast<std::size_t>(y * width + x)]; }
  SeedLabel at(int x, int y) const { return labels[static_cast<std::size_t>(y * width + x)]; }

  /// Seeds PGM: 0 neutral, 255 source, 128 sink. Any other sample is a
  /// ParseError.
  static SeedMask from_image(const GrayImage& image);
  GrayImage to_image() const;
};

struct GraphParams {
  int contrast_scale = 1;  // C
  double sigma = 10.0;
  int neighborhood = 4;  // 4 or 8
  int weight_scale = 1000;

  /// Throws ContractError on out-of-range parameters.
  void validate() const;
};

/// round(weight_scale * C * exp(-(Ip - Iq)^2 / (2 sigma^2))), at least 1.
Capacity boundary_weight(int ip, int iq, const GraphParams& params);

/// Pixel vertices 0..wh-1 in row-major order, then the source terminal (wh)
/// and the sink terminal (wh + 1). Grid edges come first, each neighbour pair
/// as two opposite edges of equal capacity; terminal edges follow.
class SegmentationGraph {
 public:
  SegmentationGraph(FlowNetwork network, int width, int height, EdgeId first_terminal_edge)
      : network_(std::move(network)), width_(width), height_(height),
        first_terminal_edge_(first_terminal_edge) {}

  const FlowNetwork& network() const { return network_; }
  int width() const { return width_; }
  int height() const { return height_; }
  VertexId source() const { return network_.source(); }
  VertexId sink() const { return network_.sink(); }

  VertexId vertex_of_pixel(int x, int y) const { return y * width_ + x; }
  /// Returns false for the terminals.
  bool pixel_of_vertex(VertexId v, int& x, int& y) const {
    if (v < 0 || v >= width_ * height_) return false;
    x = v % width_;
    y = v / width_;
    return true;
  }
  bool is_terminal_edge(EdgeId e) const { return e >= first_terminal_edge_; }

 private:
  FlowNetwork network_;
  int width_;
  int height_;
  EdgeId first_terminal_edge_;
};

/// Throws ContractError on dimension mismatch or when either seed class is
/// missing ("no source seed" / "no sink seed").
SegmentationGraph build_grid_graph(const GrayImage& image, const SeedMask& seeds,
                                   const GraphParams& params);

struct SegmentationMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> foreground;  // 1 = foreground

  bool is_foreground(int x, int y) const {
    return foreground[static_cast<std::size_t>(y * width + x)] != 0;
  }
  /// 255 foreground, 0 background.
  GrayImage to_image() const;
  bool operator==(const SegmentationMask&) const = default;
};

struct SegmentResult {
  SegmentationMask mask;
  SolveStats stats;
  CutResult cut;
};

/// Solves the graph and labels a pixel foreground iff its vertex lies on the
/// source side of the minimum cut.
SegmentResult segment(const SegmentationGraph& graph, const SolveOptions& options);

}  // namespace flowpred
