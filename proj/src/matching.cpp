#include "opmcs/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace opmcs {

namespace {

constexpr double kEps = 1e-9;

// Scratch buffers reused across calls. Nothing below calls back into the
// solver, so per thread reuse is safe.
struct Workspace {
    std::vector<std::tuple<int, int, double>> edges;
    std::vector<double> cost, weight;  // s x s, row major
    std::vector<double> u, v, minv;    // potentials and row scratch, 1 based
    std::vector<int> p, way, col_match;
    std::vector<char> used, seen, row_used, col_used;
    std::vector<std::vector<int>> adj;
};
thread_local Workspace ws;

// Hungarian method with potentials on an s x s cost matrix (cost = -weight,
// absent and padding cells cost 0). Minimizing cost maximizes weight because
// all weights are nonnegative and unmatched rows can rest on 0 cells. Leaves
// the optimal potentials in ws.u, ws.v and returns the maximum weight.
double solve_square(int s) {
    const double inf = std::numeric_limits<double>::infinity();
    ws.u.assign(s + 1, 0.0);
    ws.v.assign(s + 1, 0.0);
    ws.p.assign(s + 1, 0);
    ws.way.assign(s + 1, 0);
    for (int i = 1; i <= s; ++i) {
        ws.p[0] = i;
        int j0 = 0;
        ws.minv.assign(s + 1, inf);
        ws.used.assign(s + 1, 0);
        do {
            ws.used[j0] = 1;
            int i0 = ws.p[j0], j1 = -1;
            double delta = inf;
            for (int j = 1; j <= s; ++j) {
                if (ws.used[j]) continue;
                double cur = ws.cost[(i0 - 1) * s + (j - 1)] - ws.u[i0] - ws.v[j];
                if (cur < ws.minv[j]) {
                    ws.minv[j] = cur;
                    ws.way[j] = j0;
                }
                if (ws.minv[j] < delta) {
                    delta = ws.minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= s; ++j) {
                if (ws.used[j]) {
                    ws.u[ws.p[j]] += delta;
                    ws.v[j] -= delta;
                } else {
                    ws.minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (ws.p[j0] != 0);
        do {
            int j1 = ws.way[j0];
            ws.p[j0] = ws.p[j1];
            j0 = j1;
        } while (j0);
    }
    double best = 0.0;
    for (int j = 1; j <= s; ++j)
        if (ws.p[j]) best -= ws.cost[(ws.p[j] - 1) * s + (j - 1)];
    return best;
}

// Augmenting path search for the completion test.
bool try_augment(int r, const std::vector<std::vector<int>>& adj, std::vector<char>& seen,
                 std::vector<int>& col_match) {
    for (int c : adj[r]) {
        if (seen[c]) continue;
        seen[c] = 1;
        if (col_match[c] < 0 || try_augment(col_match[c], adj, seen, col_match)) {
            col_match[c] = r;
            return true;
        }
    }
    return false;
}

}  // namespace

void BipartiteWeightedGraph::add_edge(int l, int r, double w) {
    if (l < 0 || l >= left_size || r < 0 || r >= right_size)
        throw std::invalid_argument("matching: endpoint out of range");
    if (w < 0.0) throw std::invalid_argument("matching: negative weight");
    edges.emplace_back(l, r, w);
}

Matching max_weight_matching(const BipartiteWeightedGraph& bg) {
    Matching out;
    if (bg.edges.empty() || bg.left_size == 0 || bg.right_size == 0) return out;

    // Deduplicate, keeping the heaviest copy of each pair.
    ws.edges.assign(bg.edges.begin(), bg.edges.end());
    auto& edges = ws.edges;
    std::sort(edges.begin(), edges.end());
    size_t k = 0;
    for (size_t i = 0; i < edges.size(); ++i) {
        if (k > 0 && std::get<0>(edges[k - 1]) == std::get<0>(edges[i]) &&
            std::get<1>(edges[k - 1]) == std::get<1>(edges[i]))
            std::get<2>(edges[k - 1]) = std::max(std::get<2>(edges[k - 1]), std::get<2>(edges[i]));
        else
            edges[k++] = edges[i];
    }
    edges.resize(k);

    const int s = std::max(bg.left_size, bg.right_size);
    ws.cost.assign(static_cast<size_t>(s) * s, 0.0);
    ws.weight.assign(static_cast<size_t>(s) * s, -1.0);
    for (auto& [l, r, w] : edges) {
        double& cell = ws.weight[static_cast<size_t>(l) * s + r];
        cell = std::max(cell, w);
        ws.cost[static_cast<size_t>(l) * s + r] = -cell;
    }
    const double target = solve_square(s);
    if (target < kEps) return out;  // lexicographically smallest optimum is empty

    // Every maximum weight matching extends to an optimal assignment; optimal
    // assignments use only cells tight under the optimal potentials. The
    // lexicographically smallest optimum is built greedily: append the
    // smallest pair that still completes to the target through later pairs.
    auto tight = [&](int i, int j) {
        return ws.cost[static_cast<size_t>(i) * s + j] - ws.u[i + 1] - ws.v[j + 1] <= kEps;
    };

    ws.row_used.assign(s, 0);
    ws.col_used.assign(s, 0);
    std::pair<int, int> last{-1, -1};
    double base = 0.0;
    ws.col_match.assign(s, 0);
    ws.seen.assign(s, 0);
    if (static_cast<int>(ws.adj.size()) < s) ws.adj.resize(s);

    auto completes = [&](int pl, int pr) {
        // Perfect completion of the free rows onto free columns through
        // tight cells, skipping positive cells at or below the new pair.
        for (int i = 0; i < s; ++i) ws.adj[i].clear();
        for (int i = 0; i < s; ++i) {
            if (ws.row_used[i] || i == pl) continue;
            for (int j = 0; j < s; ++j) {
                if (ws.col_used[j] || j == pr || !tight(i, j)) continue;
                if (ws.weight[static_cast<size_t>(i) * s + j] > kEps &&
                    std::make_pair(i, j) <= std::make_pair(pl, pr))
                    continue;
                ws.adj[i].push_back(j);
            }
        }
        std::fill(ws.col_match.begin(), ws.col_match.end(), -1);
        for (int i = 0; i < s; ++i) {
            if (ws.row_used[i] || i == pl) continue;
            std::fill(ws.seen.begin(), ws.seen.end(), 0);
            if (!try_augment(i, ws.adj, ws.seen, ws.col_match)) return false;
        }
        return true;
    };

    while (base < target - kEps) {
        bool appended = false;
        for (auto& [l, r, w] : edges) {
            if (std::make_pair(l, r) <= last || ws.row_used[l] || ws.col_used[r]) continue;
            if (!tight(l, r)) continue;
            if (!completes(l, r)) continue;
            out.pairs.emplace_back(l, r);
            base += w;
            ws.row_used[l] = 1;
            ws.col_used[r] = 1;
            last = {l, r};
            appended = true;
            break;
        }
        if (!appended) break;  // numeric guard; the loop invariant makes this unreachable
    }
    out.total = base;
    return out;
}

}  // namespace opmcs
