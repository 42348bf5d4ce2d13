#include "flowpred/generators.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "flowpred/error.hpp"

namespace flowpred {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  // splitmix64 finalizer over the combined words.
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

FlowNetwork diamond_network() {
  return FlowNetwork::build(4, {{0, 1, 3}, {0, 2, 2}, {1, 2, 1}, {1, 3, 2}, {2, 3, 3}}, 0, 3);
}

FlowNetwork random_diamond(std::uint64_t seed, Capacity cap_max) {
  if (cap_max < 1) throw ContractError("cap_max must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Capacity> cap(1, cap_max);
  std::vector<Edge> edges{{0, 1, 0}, {0, 2, 0}, {1, 2, 0}, {1, 3, 0}, {2, 3, 0}};
  for (auto& e : edges) e.capacity = cap(rng);
  return FlowNetwork::build(4, std::move(edges), 0, 3);
}

FlowNetwork random_network(VertexId n, std::int64_t m, Capacity cap_max, std::uint64_t seed) {
  if (n < 2) throw ContractError("random_network needs n >= 2");
  const std::int64_t pairs = static_cast<std::int64_t>(n) * (n - 1);
  if (m < 0 || m > pairs) {
    throw ContractError("random_network: m = " + std::to_string(m) + " outside [0, n(n-1)]");
  }
  if (cap_max < 1) throw ContractError("cap_max must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> pick(0, pairs - 1);
  std::uniform_int_distribution<Capacity> cap(1, cap_max);

  // Pair index k maps to (k / (n-1), skip-self column).
  auto to_edge = [&](std::int64_t k) {
    const auto u = static_cast<VertexId>(k / (n - 1));
    auto v = static_cast<VertexId>(k % (n - 1));
    if (v >= u) ++v;
    return Edge{u, v, 0};
  };
  std::vector<std::int64_t> chosen;
  if (2 * m > pairs) {
    std::vector<std::int64_t> all(static_cast<std::size_t>(pairs));
    for (std::int64_t k = 0; k < pairs; ++k) all[static_cast<std::size_t>(k)] = k;
    std::shuffle(all.begin(), all.end(), rng);
    chosen.assign(all.begin(), all.begin() + m);
  } else {
    std::set<std::int64_t> used;
    while (static_cast<std::int64_t>(chosen.size()) < m) {
      const auto k = pick(rng);
      if (used.insert(k).second) chosen.push_back(k);
    }
  }
  std::vector<Edge> edges;
  edges.reserve(chosen.size());
  for (auto k : chosen) {
    Edge e = to_edge(k);
    e.capacity = cap(rng);
    edges.push_back(e);
  }
  return FlowNetwork::build(n, std::move(edges), 0, n - 1);
}

GrayImage two_region_image(int width, int height, std::uint8_t left, std::uint8_t right) {
  GrayImage image(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) image.at(x, y) = x < width / 2 ? left : right;
  }
  return image;
}

GridInstance random_grid_instance(int width, int height, int contrast, std::uint64_t seed) {
  if (width < 3 || height < 3) throw ContractError("grid instances need at least 3x3 pixels");
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  // Rectangle strictly inside the frame so the background is never empty.
  const int x0 = uniform(1, width / 2 - (width > 3 ? 1 : 0));
  const int y0 = uniform(1, height / 2 - (height > 3 ? 1 : 0));
  const int x1 = uniform(x0, width - 2);
  const int y1 = uniform(y0, height - 2);
  auto inside = [&](int x, int y) { return x >= x0 && x <= x1 && y >= y0 && y <= y1; };

  const int half = std::clamp(contrast, 0, 255) / 2;
  GridInstance instance{GrayImage(width, height), SeedMask(width, height)};
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const int base = inside(x, y) ? 128 + half : 128 - half;
      instance.image.at(x, y) = static_cast<std::uint8_t>(std::clamp(base + uniform(-8, 8), 0, 255));
    }
  }
  instance.seeds.at(uniform(x0, x1), uniform(y0, y1)) = SeedLabel::kSource;
  while (true) {
    const int x = uniform(0, width - 1);
    const int y = uniform(0, height - 1);
    if (!inside(x, y)) {
      instance.seeds.at(x, y) = SeedLabel::kSink;
      break;
    }
  }
  return instance;
}

}  // namespace flowpred
