#pragma once

#include <cstdint>

#include "opmcs/graph.hpp"

namespace opmcs {

// Seeded random connected outerplanar graph.
//   n          vertex count, >= 1
//   ratio      target edge/vertex ratio, 0 < ratio < 2
//   avg_block  target mean vertex count over the blocks and bridges of the
//              decomposition (a bridge counts as a two-vertex node), >= 2
//   labels     alphabet size >= 1; vertex and edge labels are uniform over
//              0..labels-1
//   seed       same seed, same graph; the stream is platform independent
//
// The edge count is dithered around ratio*n and hit exactly, so sample means
// converge to the targets. The block size target is met whenever the pair
// (ratio, avg_block) is structurally reachable; the edge target always wins.
// Throws std::invalid_argument when a parameter is out of range, when no
// connected outerplanar graph has an edge count adjacent to ratio*n, or when
// avg_block exceeds n.
LabeledGraph gen_outerplanar(int n, double ratio, double avg_block, int labels,
                             std::uint64_t seed);

}  // namespace opmcs
