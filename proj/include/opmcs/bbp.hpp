#pragma once

#include <cstddef>
#include <deque>
#include <functional>
#include <optional>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "opmcs/graph.hpp"
#include "opmcs/mcis2.hpp"
#include "opmcs/outerplanar.hpp"
#include "opmcs/weights.hpp"

namespace opmcs {

// A common connected induced subgraph isomorphism. The mapped subgraph is
// block and bridge preserving on both sides: bridges map to bridges and no
// two mapped blocks share a block of either host graph.
struct Isomorphism {
    std::vector<std::pair<Vertex, Vertex>> vertex_map;  // sorted by source
    double weight = 0.0;
    bool empty() const { return vertex_map.empty(); }
};

struct BbpStats {
    Mcis2Stats mcis2;
    uint64_t edge_calls = 0;
    uint64_t single_calls = 0;
    uint64_t matchings = 0;
    uint64_t memo_hits = 0;
};

// Solves one pair of connected graphs, each with at least one edge. Embeds
// every block up front (throws NotOuterplanarError) and memoizes the
// recursive subproblems, so one instance must not be shared across threads.
// Keeps references: the graphs and the weight function must outlive it.
//
// The three public recursion entry points mirror the solver's internal call
// pattern: exclusions take effect inside V(b), and recursive calls derive
// their own exclusion sets the way the recursion does, where excluded
// vertices never lie beyond the B-nodes adjacent to b.
class BbpSolver {
public:
    BbpSolver(const LabeledGraph& g, const LabeledGraph& h, const WeightFn& w);

    // Maximum weight BBP isomorphism between the two graphs.
    Isomorphism solve();

    // Maximum isomorphism within the component of V(G)\X that meets V(b):
    // best over mapping an edge of b, a single vertex of b, or no vertex of
    // b (recursing into the B-nodes behind each unexcluded cutvertex).
    Isomorphism set_sx(int b, const std::vector<Vertex>& excluded);

    // Maximum isomorphism mapping at least one edge of b into bbar, avoiding
    // excluded vertices and containing the fixed pair when given. Empty when
    // exactly one of b, bbar is a block.
    Isomorphism bbp_edge(int b, int bbar, const std::vector<Vertex>& excluded,
                         std::optional<std::pair<Vertex, Vertex>> fixed = std::nullopt);

    // Maximum isomorphism mapping v as the only vertex of V(b), expanded
    // through the other B-nodes at v. Requires an admissible pair (v, vbar).
    Isomorphism bbp_single_vertex(int b, Vertex v, Vertex vbar);

    const BCTree& g_tree() const { return tg_; }
    const BCTree& h_tree() const { return th_; }
    const BbpStats& stats() const { return stats_; }

private:
    const LabeledGraph& g_;
    const LabeledGraph& h_;
    const WeightFn& w_;
    BCTree tg_, th_;
    std::vector<std::optional<EmbeddedBlock>> embg_, embh_;  // block B-nodes only

    struct KeyHash {
        static std::size_t mix(std::size_t h, std::size_t v) {
            return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
        }
        std::size_t operator()(const std::pair<int, int>& p) const {
            return mix(std::hash<int>{}(p.first), std::hash<int>{}(p.second));
        }
        template <class... Ts>
        std::size_t operator()(const std::tuple<Ts...>& t) const {
            std::size_t h = 0;
            std::apply([&](const Ts&... vs) { ((h = mix(h, std::hash<Ts>{}(vs))), ...); }, t);
            return h;
        }
    };

    // all split pieces of every maximal iso, per block pair; variants with an
    // excluded vertex are resplit from the base list on demand
    std::unordered_map<std::pair<int, int>, std::vector<BiconIso>, KeyHash> pieces_;
    std::unordered_map<std::tuple<int, int, Vertex>, std::vector<BiconIso>, KeyHash> pieces_excl_;

    // (b, bbar, excl or -1)
    std::unordered_map<std::tuple<int, int, int>, Isomorphism, KeyHash> memo_plain_;
    std::unordered_map<std::tuple<int, int, Vertex, Vertex>, Isomorphism, KeyHash> memo_anchor_;

    // per recursion depth snapshot buffers; a deque keeps slots stable while
    // deeper frames append
    std::deque<std::vector<std::pair<Vertex, Vertex>>> snap_pool_;
    int snap_depth_ = 0;

    BbpStats stats_;

    Isomorphism set_sx_in(int b, const std::vector<Vertex>& excl_in_b);
    Isomorphism edge_max(int b, int bbar, const std::vector<Vertex>& excl_in_b,
                         std::optional<std::pair<Vertex, Vertex>> fixed);
    // memoized entry points; returned references stay valid for the solver's
    // lifetime (the node based maps never move or erase entries)
    const Isomorphism& edge_max_plain(int b, int bbar, Vertex excl);  // excl < 0: none
    const Isomorphism& edge_max_anchored(int b, int bbar, Vertex c, Vertex cbar);
    Isomorphism compute_edge_max(int b, int bbar, const Vertex* excl, std::size_t nexcl,
                                 std::optional<std::pair<Vertex, Vertex>> fixed);
    Isomorphism single_vertex_in(int b, Vertex v, Vertex vbar);
    void extend_at_cutvertices(Isomorphism& iso, int b, int bbar,
                               std::optional<std::pair<Vertex, Vertex>> fixed);
    void match_branches(Isomorphism& iso, Vertex c, Vertex cbar, double wcc, int skip_b,
                        int skip_bbar);
    const std::vector<BiconIso>& block_pieces(int b, int bbar, const Vertex* excl,
                                              std::size_t nexcl);
};

// Maximum weight BBP common connected induced subgraph isomorphism over all
// pairs of connected components; the empty mapping when no admissible
// nonempty isomorphism exists. Throws NotOuterplanarError.
Isomorphism bbp_mcis(const LabeledGraph& g, const LabeledGraph& h, const WeightFn& w,
                     BbpStats* stats = nullptr);

}  // namespace opmcs
