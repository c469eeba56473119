#pragma once

#include <utility>
#include <vector>

namespace opmcs {

// Bipartite graph on index sets [0, left_size) x [0, right_size).
// Absent pairs are unmatchable; stored weights must be nonnegative.
struct BipartiteWeightedGraph {
    int left_size = 0;
    int right_size = 0;
    std::vector<std::tuple<int, int, double>> edges;

    BipartiteWeightedGraph() = default;
    BipartiteWeightedGraph(int l, int r) : left_size(l), right_size(r) {}
    void add_edge(int l, int r, double w);
};

struct Matching {
    std::vector<std::pair<int, int>> pairs;  // sorted ascending
    double total = 0.0;
};

// Maximum weight matching (not necessarily perfect). Among maximum weight
// matchings returns the one whose sorted pair list is lexicographically
// smallest, so equal inputs give identical outputs everywhere.
Matching max_weight_matching(const BipartiteWeightedGraph& bg);

}  // namespace opmcs
