#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "opmcs/graph.hpp"

namespace opmcs::testing {

using EdgeList = std::vector<std::tuple<int, int, int>>;

inline LabeledGraph make(int n, const EdgeList& edges, const std::vector<int>& vlabels = {}) {
    std::vector<int> vl = vlabels.empty() ? std::vector<int>(n, 0) : vlabels;
    return LabeledGraph(std::move(vl), edges);
}

inline LabeledGraph triangle() { return make(3, {{0, 1, 0}, {1, 2, 0}, {0, 2, 0}}); }

inline LabeledGraph path(int n) {
    EdgeList e;
    for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, 0});
    return make(n, e);
}

inline LabeledGraph cycle(int n) {
    EdgeList e;
    for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n, 0});
    return make(n, e);
}

inline LabeledGraph square_chord() {
    return make(4, {{0, 1, 0}, {1, 2, 0}, {2, 3, 0}, {0, 3, 0}, {0, 2, 0}});
}

inline LabeledGraph k4() {
    return make(4, {{0, 1, 0}, {0, 2, 0}, {0, 3, 0}, {1, 2, 0}, {1, 3, 0}, {2, 3, 0}});
}

inline LabeledGraph k23() {
    return make(5, {{0, 2, 0}, {0, 3, 0}, {0, 4, 0}, {1, 2, 0}, {1, 3, 0}, {1, 4, 0}});
}

// One biconnected component: outer cycle 0-1-3-4-5-6-7-2 with chords (1,2),
// (3,6) and (3,7); inner faces of lengths 3, 4, 4, 3.
inline LabeledGraph two_quads_graph() {
    return make(8, {{0, 1, 0},
                    {0, 2, 0},
                    {1, 2, 0},
                    {1, 3, 0},
                    {2, 7, 0},
                    {3, 7, 0},
                    {3, 4, 0},
                    {3, 6, 0},
                    {4, 5, 0},
                    {5, 6, 0},
                    {6, 7, 0}});
}

// Four blocks and two bridges: two fused 4-cycles with chords, a bridge to a
// triangle, a second bridge to another triangle; 13 vertices, 18 edges.
inline LabeledGraph chain_graph() {
    return make(13, {{0, 1, 0},
                     {0, 2, 0},
                     {1, 2, 0},
                     {1, 3, 0},
                     {2, 3, 0},
                     {3, 4, 0},
                     {3, 6, 0},
                     {4, 5, 0},
                     {5, 6, 0},
                     {6, 7, 0},
                     {7, 8, 0},
                     {7, 9, 0},
                     {8, 9, 0},
                     {7, 10, 0},
                     {10, 11, 0},
                     {10, 12, 0},
                     {11, 12, 0},
                     {3, 5, 0}});
}

// Small connected outerplanar graphs covering bridges, blocks, labels and a
// disconnected entry at the end.
inline std::vector<LabeledGraph> zoo() {
    std::vector<LabeledGraph> z;
    z.push_back(path(3));
    z.push_back(triangle());
    z.push_back(cycle(4));
    z.push_back(square_chord());
    z.push_back(make(5, {{0, 1, 0}, {1, 2, 0}, {0, 2, 0}, {2, 3, 0}, {3, 4, 0}, {2, 4, 0}}));
    z.push_back(make(4, {{0, 1, 0}, {1, 2, 0}, {0, 2, 0}, {2, 3, 0}}));
    z.push_back(make(9, {{0, 1, 0},
                         {1, 2, 0},
                         {2, 3, 0},
                         {0, 3, 0},
                         {3, 4, 0},
                         {4, 5, 0},
                         {5, 6, 0},
                         {6, 7, 0},
                         {7, 8, 0},
                         {5, 8, 0}}));
    z.push_back(make(4, {{0, 1, 0}, {0, 2, 0}, {0, 3, 0}}));
    z.push_back(make(5, {{0, 1, 0}, {1, 2, 0}, {2, 3, 0}, {3, 4, 0}}, {0, 1, 0, 1, 0}));
    z.push_back(make(3, {{0, 1, 1}, {1, 2, 2}, {0, 2, 3}}, {0, 1, 2}));
    z.push_back(make(6,
                     {{0, 1, 0}, {1, 2, 0}, {2, 3, 0}, {3, 4, 0}, {4, 5, 0}, {0, 5, 0},
                      {0, 2, 0}, {2, 4, 0}},
                     {0, 0, 1, 1, 0, 0}));
    z.push_back(make(4, {{0, 1, 0}, {0, 2, 0}, {1, 2, 0}}, {0, 0, 0, 1}));
    return z;
}

// Deterministic 64-bit stream for test-local choices.
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed + 0x9E3779B97F4A7C15ULL) {}
    std::uint64_t next() {
        std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    int below(int k) { return static_cast<int>(next() % static_cast<std::uint64_t>(k)); }
};

}  // namespace opmcs::testing
