#pragma once

#include <cstdint>

#include "flowpred/imageflow.hpp"
#include "flowpred/network.hpp"

namespace flowpred {

/// s=0, a=1, b=2, t=3 with edges s->a(3), s->b(2), a->b(1), a->t(2), b->t(3).
FlowNetwork diamond_network();

/// Diamond topology with capacities uniform in [1, cap_max].
FlowNetwork random_diamond(std::uint64_t seed, Capacity cap_max = 10);

/// `m` distinct ordered pairs (u, v), u != v, sampled uniformly; capacities
/// uniform in [1, cap_max]; s = 0, t = n - 1. The sink may be unreachable.
FlowNetwork random_network(VertexId n, std::int64_t m, Capacity cap_max, std::uint64_t seed);

/// Left half `left`, right half `right` (the extra column of an odd width
/// goes right).
GrayImage two_region_image(int width, int height, std::uint8_t left = 0, std::uint8_t right = 255);

struct GridInstance {
  GrayImage image;
  SeedMask seeds;
};

/// Bright rectangle on a dark background (intensities 128 -/+ contrast/2
/// with +-8 noise), one source seed inside the rectangle and one sink seed
/// outside it.
GridInstance random_grid_instance(int width, int height, int contrast, std::uint64_t seed);

/// Mixes a base seed with an index into an independent stream seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace flowpred
