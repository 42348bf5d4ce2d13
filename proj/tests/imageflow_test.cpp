#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "flowpred/error.hpp"
#include "flowpred/generators.hpp"
#include "flowpred/imageflow.hpp"
#include "flowpred/pgm.hpp"
#include "flowpred/predictors.hpp"
#include "test_support.hpp"

using namespace flowpred;

namespace {

TEST(Pgm, AsciiAndBinaryAgree) {
  std::istringstream ascii("P2\n# comment\n3 2\n255\n0 10 20\n30 40 255\n");
  const auto a = read_pgm(ascii);
  EXPECT_EQ(a.width, 3);
  EXPECT_EQ(a.height, 2);
  EXPECT_EQ(a.pixels, (std::vector<std::uint8_t>{0, 10, 20, 30, 40, 255}));

  std::stringstream binary;
  write_pgm(binary, a);
  EXPECT_EQ(binary.str().substr(0, 2), "P5");
  EXPECT_EQ(read_pgm(binary), a);
}

TEST(Pgm, KeepsSamplesBelowFullDepth) {
  std::istringstream in("P2 2 1 15 3 15\n");
  EXPECT_EQ(read_pgm(in).pixels, (std::vector<std::uint8_t>{3, 15}));
}

PgmError::Kind pgm_error_kind(const std::string& text) {
  std::istringstream in(text);
  try {
    read_pgm(in);
  } catch (const PgmError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "accepted: " << text;
  return PgmError::Kind::kBadHeader;
}

TEST(Pgm, Errors) {
  EXPECT_EQ(pgm_error_kind("P6\n1 1\n255\nx"), PgmError::Kind::kBadMagic);
  EXPECT_EQ(pgm_error_kind("P5\n2\n"), PgmError::Kind::kBadHeader);
  EXPECT_EQ(pgm_error_kind("P5\n0 2\n255\n"), PgmError::Kind::kBadDimensions);
  EXPECT_EQ(pgm_error_kind("P5\n1 1\n65535\n\x01\x02"), PgmError::Kind::kUnsupportedDepth);
  EXPECT_EQ(pgm_error_kind("P5\n4 4\n255\nabc"), PgmError::Kind::kTruncated);
  EXPECT_EQ(pgm_error_kind("P2\n2 2\n255\n1 2 3\n"), PgmError::Kind::kTruncated);
}

TEST(Seeds, ImageRoundTripAndRejectsOtherSamples) {
  GrayImage img(3, 1);
  img.pixels = {0, 255, 128};
  const auto seeds = SeedMask::from_image(img);
  EXPECT_EQ(seeds.labels,
            (std::vector<SeedLabel>{SeedLabel::kNeutral, SeedLabel::kSource, SeedLabel::kSink}));
  EXPECT_EQ(seeds.to_image(), img);
  img.pixels[0] = 7;
  EXPECT_THROW(SeedMask::from_image(img), ParseError);
}

TEST(GridGraph, LayoutOnTinyImage) {
  GrayImage img(2, 2, 50);
  img.at(1, 0) = 60;
  SeedMask seeds(2, 2);
  seeds.at(0, 0) = SeedLabel::kSource;
  seeds.at(1, 1) = SeedLabel::kSink;
  const GraphParams params;
  const auto graph = build_grid_graph(img, seeds, params);
  const auto& net = graph.network();
  EXPECT_EQ(net.vertex_count(), 6);
  EXPECT_EQ(graph.source(), 4);
  EXPECT_EQ(graph.sink(), 5);
  // 4 neighbour pairs x 2 directions, then one edge per seed.
  ASSERT_EQ(net.edge_count(), 10);
  const Capacity strong = 1000;
  const Capacity weak = boundary_weight(50, 60, params);
  EXPECT_EQ(weak, 607);  // 1000 * exp(-100 / 200)
  EXPECT_EQ(net.edge(0), (Edge{0, 1, weak}));
  EXPECT_EQ(net.edge(1), (Edge{1, 0, weak}));
  EXPECT_EQ(net.edge(2), (Edge{0, 2, strong}));
  EXPECT_FALSE(graph.is_terminal_edge(7));
  EXPECT_TRUE(graph.is_terminal_edge(8));
  EXPECT_EQ(net.edge(8), (Edge{4, 0, 1 + 2 * (weak + strong)}));
  EXPECT_EQ(net.edge(9).head, 5);
  EXPECT_EQ(net.edge(9).tail, 3);

  int x = -1;
  int y = -1;
  EXPECT_TRUE(graph.pixel_of_vertex(3, x, y));
  EXPECT_EQ(x, 1);
  EXPECT_EQ(y, 1);
  EXPECT_FALSE(graph.pixel_of_vertex(graph.sink(), x, y));
}

TEST(GridGraph, EightNeighbourhoodEdgeCount) {
  GraphParams params;
  params.neighborhood = 8;
  SeedMask seeds(3, 3);
  seeds.at(0, 0) = SeedLabel::kSource;
  seeds.at(2, 2) = SeedLabel::kSink;
  const auto graph = build_grid_graph(GrayImage(3, 3, 9), seeds, params);
  // 12 axis pairs + 8 diagonal pairs, both directions, plus 2 seeds.
  EXPECT_EQ(graph.network().edge_count(), 2 * 20 + 2);
}

TEST(GridGraph, ContractErrors) {
  const GrayImage img(4, 4);
  SeedMask seeds(4, 4);
  EXPECT_THROW(build_grid_graph(img, seeds, {}), ContractError);
  seeds.at(0, 0) = SeedLabel::kSource;
  try {
    build_grid_graph(img, seeds, {});
    FAIL();
  } catch (const ContractError& e) {
    EXPECT_STREQ(e.what(), "no sink seed");
  }
  EXPECT_THROW(build_grid_graph(img, SeedMask(3, 4), {}), ContractError);
  GraphParams bad;
  bad.neighborhood = 6;
  EXPECT_THROW(bad.validate(), ContractError);
}

TEST(Segment, TwoRegionsSplitExactly) {
  const auto img = two_region_image(16, 16);
  SeedMask seeds(16, 16);
  seeds.at(3, 8) = SeedLabel::kSource;
  seeds.at(12, 8) = SeedLabel::kSink;
  const auto graph = build_grid_graph(img, seeds, {});
  const auto scores = oracle_scores(graph.network());
  for (auto strategy : {PathStrategy::kDfs, PathStrategy::kBfs, PathStrategy::kAdjustedBfs,
                        PathStrategy::kGuided}) {
    const auto result = segment(graph, SolveOptions{strategy, &scores, {}});
    for (int y = 0; y < 16; ++y) {
      for (int x = 0; x < 16; ++x) {
        ASSERT_EQ(result.mask.is_foreground(x, y), x < 8) << to_string(strategy) << " " << x << "," << y;
      }
    }
    EXPECT_EQ(result.cut.capacity, 16);
  }
}

TEST(SegmentProperty, TerminalEdgesNeverCut) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const auto grid = random_grid_instance(10, 8, 60, rng());
    SeedMask seeds(10, 8);
    std::uniform_int_distribution<int> px(0, 79);
    for (int k = 0; k < 6; ++k) {
      seeds.labels[static_cast<std::size_t>(px(rng))] =
          k % 2 ? SeedLabel::kSink : SeedLabel::kSource;
    }
    bool has_source = false;
    bool has_sink = false;
    for (auto l : seeds.labels) {
      has_source |= l == SeedLabel::kSource;
      has_sink |= l == SeedLabel::kSink;
    }
    if (!has_source || !has_sink) continue;
    const auto graph = build_grid_graph(grid.image, seeds, {});
    const auto result = segment(graph, SolveOptions{});
    for (EdgeId e : result.cut.cut_edges) ASSERT_FALSE(graph.is_terminal_edge(e));
    for (int i = 0; i < 80; ++i) {
      if (seeds.labels[static_cast<std::size_t>(i)] == SeedLabel::kSource) {
        ASSERT_TRUE(result.mask.foreground[static_cast<std::size_t>(i)]);
      }
      if (seeds.labels[static_cast<std::size_t>(i)] == SeedLabel::kSink) {
        ASSERT_FALSE(result.mask.foreground[static_cast<std::size_t>(i)]);
      }
    }
  }
}

TEST(Segment, MaskImageUses0And255) {
  SegmentationMask mask{2, 1, {1, 0}};
  EXPECT_EQ(mask.to_image().pixels, (std::vector<std::uint8_t>{255, 0}));
}

}  // namespace
