#include "opmcs/bbp.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "opmcs/matching.hpp"

namespace opmcs {

namespace {

constexpr double kEps = 1e-9;

const Isomorphism kEmptyIso{};

// strictly heavier, or first nonempty witness at equal weight
bool better(const Isomorphism& a, const Isomorphism& b) {
    if (a.weight > b.weight + kEps) return true;
    return b.empty() && !a.empty() && a.weight > b.weight - kEps;
}

bool maps_pair(const std::vector<std::pair<Vertex, Vertex>>& m, Vertex v, Vertex vbar) {
    auto it = std::lower_bound(m.begin(), m.end(), std::make_pair(v, vbar));
    return it != m.end() && *it == std::make_pair(v, vbar);
}

bool maps_source(const std::vector<std::pair<Vertex, Vertex>>& m, Vertex v) {
    auto it = std::lower_bound(
        m.begin(), m.end(), std::make_pair(v, Vertex{0}),
        [](const auto& a, const auto& b) { return a.first < b.first; });
    return it != m.end() && it->first == v;
}

// set union of two maps sharing only identical pairs (the merge anchors)
void merge_map(std::vector<std::pair<Vertex, Vertex>>& dst,
               const std::vector<std::pair<Vertex, Vertex>>& src) {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(dst.size() + src.size());
    auto a = dst.cbegin();
    auto b = src.cbegin();
    while (a != dst.cend() || b != src.cend()) {
        if (b == src.cend() || (a != dst.cend() && a->first < b->first)) {
            out.push_back(*a++);
        } else if (a == dst.cend() || b->first < a->first) {
            out.push_back(*b++);
        } else {
            assert(a->second == b->second);
            out.push_back(*a++);
            ++b;
        }
    }
    dst = std::move(out);
}

std::vector<Vertex> sorted_intersection(const std::vector<Vertex>& sorted_universe,
                                        const std::vector<Vertex>& verts) {
    std::vector<Vertex> out;
    for (Vertex v : verts)
        if (std::binary_search(sorted_universe.begin(), sorted_universe.end(), v))
            out.push_back(v);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

BbpSolver::BbpSolver(const LabeledGraph& g, const LabeledGraph& h, const WeightFn& w)
    : g_(g), h_(h), w_(w), tg_(build_bc_tree(g)), th_(build_bc_tree(h)) {
    embg_.resize(tg_.b_nodes.size());
    for (size_t i = 0; i < tg_.b_nodes.size(); ++i)
        if (tg_.b_nodes[i].is_block) embg_[i] = embed_block(g_, tg_.b_nodes[i]);
    embh_.resize(th_.b_nodes.size());
    for (size_t i = 0; i < th_.b_nodes.size(); ++i)
        if (th_.b_nodes[i].is_block) embh_[i] = embed_block(h_, th_.b_nodes[i]);
    const size_t cells =
        std::min<size_t>(tg_.b_nodes.size() * th_.b_nodes.size(), size_t{1} << 15);
    pieces_.reserve(cells);
    memo_plain_.reserve(cells);
    memo_anchor_.reserve(2 * cells);
}

Isomorphism BbpSolver::solve() {
    if (tg_.b_nodes.empty() || th_.b_nodes.empty()) return {};
    return set_sx_in(0, {});
}

Isomorphism BbpSolver::set_sx(int b, const std::vector<Vertex>& excluded) {
    return set_sx_in(b, sorted_intersection(tg_.b_nodes[b].vertices, excluded));
}

Isomorphism BbpSolver::bbp_edge(int b, int bbar, const std::vector<Vertex>& excluded,
                                std::optional<std::pair<Vertex, Vertex>> fixed) {
    return edge_max(b, bbar, sorted_intersection(tg_.b_nodes[b].vertices, excluded), fixed);
}

Isomorphism BbpSolver::bbp_single_vertex(int b, Vertex v, Vertex vbar) {
    if (!w_.vertex(g_.vertex_label(v), h_.vertex_label(vbar)))
        throw std::invalid_argument("bbp_single_vertex: forbidden vertex pair");
    return single_vertex_in(b, v, vbar);
}

Isomorphism BbpSolver::set_sx_in(int b, const std::vector<Vertex>& excl_in_b) {
    Isomorphism best;

    if (excl_in_b.size() <= 1) {
        Vertex ex = excl_in_b.empty() ? -1 : excl_in_b[0];
        for (size_t bbar = 0; bbar < th_.b_nodes.size(); ++bbar) {
            if (th_.b_nodes[bbar].is_block != tg_.b_nodes[b].is_block) continue;
            const Isomorphism& cand = edge_max_plain(b, static_cast<int>(bbar), ex);
            if (better(cand, best)) best = cand;
        }
    } else {
        for (size_t bbar = 0; bbar < th_.b_nodes.size(); ++bbar) {
            if (th_.b_nodes[bbar].is_block != tg_.b_nodes[b].is_block) continue;
            Isomorphism cand = edge_max(b, static_cast<int>(bbar), excl_in_b, std::nullopt);
            if (better(cand, best)) best = std::move(cand);
        }
    }

    for (Vertex v : tg_.b_nodes[b].vertices) {
        if (std::binary_search(excl_in_b.begin(), excl_in_b.end(), v)) continue;
        for (Vertex vbar = 0; vbar < h_.order(); ++vbar) {
            if (!w_.vertex(g_.vertex_label(v), h_.vertex_label(vbar))) continue;
            Isomorphism cand = single_vertex_in(b, v, vbar);
            if (better(cand, best)) best = std::move(cand);
        }
    }

    for (int cn : tg_.b_to_c[b]) {
        Vertex c = tg_.cutvertices[cn];
        if (std::binary_search(excl_in_b.begin(), excl_in_b.end(), c)) continue;
        for (int b2 : tg_.c_to_b[cn]) {
            if (b2 == b) continue;
            // no vertex of b is mapped: the exclusion set becomes V(b)
            Isomorphism cand = set_sx_in(b2, sorted_intersection(tg_.b_nodes[b2].vertices,
                                                                 tg_.b_nodes[b].vertices));
            if (better(cand, best)) best = std::move(cand);
        }
    }
    return best;
}

const std::vector<BiconIso>& BbpSolver::block_pieces(int b, int bbar, const Vertex* excl,
                                                     std::size_t nexcl) {
    auto base_key = std::make_pair(b, bbar);
    auto bit = pieces_.find(base_key);
    if (bit == pieces_.end()) {
        std::vector<BiconIso> list;
        Mcis2Stats st = scan_block_pair(*embg_[b], *embh_[bbar], w_,
                                        [&](const BiconIso& p) { list.push_back(p); });
        stats_.mcis2.absorb(st);
        bit = pieces_.emplace(base_key, std::move(list)).first;
    }
    if (nexcl == 0) return bit->second;

    auto resplit = [&](std::vector<BiconIso>& out) {
        std::vector<Vertex> ev(excl, excl + nexcl);
        for (const BiconIso& p : bit->second) {
            bool touched = false;
            for (Vertex v : ev) touched = touched || maps_source(p.vertex_map, v);
            if (!touched) {
                out.push_back(p);
                continue;
            }
            auto parts = split_iso(*embg_[b], *embh_[bbar], p, w_, &ev);
            for (auto& q : parts) out.push_back(std::move(q));
        }
    };

    if (nexcl == 1) {
        auto key = std::make_tuple(b, bbar, excl[0]);
        auto it = pieces_excl_.find(key);
        if (it == pieces_excl_.end()) {
            std::vector<BiconIso> list;
            resplit(list);
            it = pieces_excl_.emplace(key, std::move(list)).first;
        }
        return it->second;
    }
    // only the outermost frame can carry several exclusions, so the recursion
    // below this call never reuses the scratch list while it is iterated
    static thread_local std::vector<BiconIso> scratch;
    scratch.clear();
    resplit(scratch);
    return scratch;
}

Isomorphism BbpSolver::edge_max(int b, int bbar, const std::vector<Vertex>& excl_in_b,
                                std::optional<std::pair<Vertex, Vertex>> fixed) {
    if (!fixed && excl_in_b.size() <= 1)
        return edge_max_plain(b, bbar, excl_in_b.empty() ? -1 : excl_in_b[0]);
    if (fixed && excl_in_b.empty())
        return edge_max_anchored(b, bbar, fixed->first, fixed->second);
    ++stats_.edge_calls;
    if (tg_.b_nodes[b].is_block != th_.b_nodes[bbar].is_block) return {};
    return compute_edge_max(b, bbar, excl_in_b.data(), excl_in_b.size(), fixed);
}

const Isomorphism& BbpSolver::edge_max_plain(int b, int bbar, Vertex excl) {
    ++stats_.edge_calls;
    if (tg_.b_nodes[b].is_block != th_.b_nodes[bbar].is_block) return kEmptyIso;
    auto key = std::make_tuple(b, bbar, excl < 0 ? -1 : static_cast<int>(excl));
    auto it = memo_plain_.find(key);
    if (it != memo_plain_.end()) {
        ++stats_.memo_hits;
        return it->second;
    }
    Isomorphism val = excl < 0 ? compute_edge_max(b, bbar, nullptr, 0, std::nullopt)
                               : compute_edge_max(b, bbar, &excl, 1, std::nullopt);
    return memo_plain_.emplace(key, std::move(val)).first->second;
}

const Isomorphism& BbpSolver::edge_max_anchored(int b, int bbar, Vertex c, Vertex cbar) {
    ++stats_.edge_calls;
    if (tg_.b_nodes[b].is_block != th_.b_nodes[bbar].is_block) return kEmptyIso;
    auto key = std::make_tuple(b, bbar, c, cbar);
    auto it = memo_anchor_.find(key);
    if (it != memo_anchor_.end()) {
        ++stats_.memo_hits;
        return it->second;
    }
    Isomorphism val = compute_edge_max(b, bbar, nullptr, 0, std::make_pair(c, cbar));
    return memo_anchor_.emplace(key, std::move(val)).first->second;
}

// Callers guarantee that b and bbar are both blocks or both bridges and that
// the exclusion list is sorted. No memo interaction of its own, so the same
// key is never entered twice concurrently along a recursion path.
Isomorphism BbpSolver::compute_edge_max(int b, int bbar, const Vertex* excl, std::size_t nexcl,
                                        std::optional<std::pair<Vertex, Vertex>> fixed) {
    const BNode& nb = tg_.b_nodes[b];
    const BNode& nbar = th_.b_nodes[bbar];
    auto excluded = [&](Vertex v) {
        for (std::size_t k = 0; k < nexcl; ++k)
            if (excl[k] == v) return true;
        return false;
    };

    Isomorphism best;
    auto consider_candidate = [&](std::vector<std::pair<Vertex, Vertex>> map, double weight) {
        Isomorphism cand{std::move(map), weight};
        extend_at_cutvertices(cand, b, bbar, fixed);
        if (better(cand, best)) best = std::move(cand);
    };

    if (!nb.is_block) {
        // bridge onto bridge: both endpoint assignments
        auto [u, x] = g_.edge(nb.edges[0]);
        auto [ub, xb] = h_.edge(nbar.edges[0]);
        Score es = w_.edge(g_.edge_label(nb.edges[0]), h_.edge_label(nbar.edges[0]));
        if (!excluded(u) && !excluded(x) && es) {
            for (int flip = 0; flip < 2; ++flip) {
                Vertex tu = flip ? xb : ub;
                Vertex tx = flip ? ub : xb;
                if (fixed && !(u == fixed->first && tu == fixed->second) &&
                    !(x == fixed->first && tx == fixed->second))
                    continue;
                Score su = w_.vertex(g_.vertex_label(u), h_.vertex_label(tu));
                Score sx = w_.vertex(g_.vertex_label(x), h_.vertex_label(tx));
                if (!su || !sx) continue;
                std::vector<std::pair<Vertex, Vertex>> m{{u, tu}, {x, tx}};
                if (m[0].first > m[1].first) std::swap(m[0], m[1]);
                consider_candidate(std::move(m), *su + *sx + *es);
            }
        }
    } else {
        for (const BiconIso& p : block_pieces(b, bbar, excl, nexcl)) {
            if (fixed && !maps_pair(p.vertex_map, fixed->first, fixed->second)) continue;
            consider_candidate(p.vertex_map, p.weight);
        }
    }
    return best;
}

// Extends iso (whose map lies in b x bbar so far) at every mapped cutvertex
// pair other than the fixed anchor, by a maximum weight matching between the
// sibling B-nodes on each side.
void BbpSolver::extend_at_cutvertices(Isomorphism& iso, int b, int bbar,
                                      std::optional<std::pair<Vertex, Vertex>> fixed) {
    if (static_cast<int>(snap_pool_.size()) <= snap_depth_) snap_pool_.emplace_back();
    auto& base_pairs = snap_pool_[snap_depth_++];
    base_pairs.assign(iso.vertex_map.begin(), iso.vertex_map.end());  // extensions change it
    for (auto [c, cbar] : base_pairs) {
        if (!tg_.is_cutvertex(c) || !th_.is_cutvertex(cbar)) continue;
        if (fixed && fixed->first == c && fixed->second == cbar) continue;
        double wcc = *w_.vertex(g_.vertex_label(c), h_.vertex_label(cbar));
        match_branches(iso, c, cbar, wcc, b, bbar);
    }
    --snap_depth_;
}

// Merges into iso the best matching of the B-node branches at c (minus
// skip_b) against those at cbar (minus skip_bbar; -1 keeps all), each branch
// pair scored by its anchored maximum. Matched sub-isomorphisms share exactly
// the anchor pair with iso and with each other, so their weights are merged
// with one anchor score correction apiece.
void BbpSolver::match_branches(Isomorphism& iso, Vertex c, Vertex cbar, double wcc, int skip_b,
                               int skip_bbar) {
    const std::vector<int>& gl = tg_.bnodes_of_vertex[c];
    const std::vector<int>& hr = th_.bnodes_of_vertex[cbar];
    int nl = 0, nr = 0;
    for (int bi : gl) nl += bi != skip_b;
    for (int bj : hr) nr += bj != skip_bbar;
    if (nl == 0 || nr == 0) return;

    // memo references stay valid across the later anchored calls
    const Isomorphism* fixed_subs[64];
    std::vector<const Isomorphism*> heap_subs;
    const Isomorphism** subs = fixed_subs;
    if (nl * nr > 64) {
        heap_subs.resize(static_cast<std::size_t>(nl) * nr);
        subs = heap_subs.data();
    }
    std::fill(subs, subs + static_cast<std::size_t>(nl) * nr, nullptr);

    bool any = false;
    int i = 0;
    for (int bi : gl) {
        if (bi == skip_b) continue;
        int j = 0;
        for (int bj : hr) {
            if (bj == skip_bbar) continue;
            const Isomorphism& sub = edge_max_anchored(bi, bj, c, cbar);
            if (!sub.empty()) {
                subs[static_cast<std::size_t>(i) * nr + j] = &sub;
                any = true;
            }
            ++j;
        }
        ++i;
    }
    if (!any) return;
    ++stats_.matchings;
    if (nl == 1 || nr == 1) {
        // one side has a single branch, so the matching is one pair: the
        // lexicographically first cell within kEps of the best gain, exactly
        // as the general solver breaks ties, and none when nothing gains
        double top = 0.0;
        for (int k = 0; k < nl * nr; ++k)
            if (subs[k]) top = std::max(top, std::max(0.0, subs[k]->weight - wcc));
        if (top < kEps) return;
        for (int k = 0; k < nl * nr; ++k) {
            if (!subs[k]) continue;
            if (std::max(0.0, subs[k]->weight - wcc) < top - kEps) continue;
            merge_map(iso.vertex_map, subs[k]->vertex_map);
            iso.weight += subs[k]->weight - wcc;
            return;
        }
        return;
    }
    BipartiteWeightedGraph bip(nl, nr);
    for (int k = 0; k < nl * nr; ++k)
        if (subs[k]) bip.add_edge(k / nr, k % nr, std::max(0.0, subs[k]->weight - wcc));
    Matching m = max_weight_matching(bip);
    for (auto [mi, mj] : m.pairs) {
        const Isomorphism& sub = *subs[static_cast<std::size_t>(mi) * nr + mj];
        merge_map(iso.vertex_map, sub.vertex_map);
        iso.weight += sub.weight - wcc;
    }
}

Isomorphism BbpSolver::single_vertex_in(int b, Vertex v, Vertex vbar) {
    ++stats_.single_calls;
    Isomorphism base{{{v, vbar}}, *w_.vertex(g_.vertex_label(v), h_.vertex_label(vbar))};
    if (!tg_.is_cutvertex(v)) return base;

    const std::vector<int>& gl = tg_.bnodes_of_vertex[v];
    bool any_left = false;
    for (int bi : gl) any_left = any_left || bi != b;
    if (!any_left) return base;

    if (th_.is_cutvertex(vbar)) {
        // every B-node containing vbar is available on the right
        match_branches(base, v, vbar, base.weight, b, -1);
        return base;
    }

    // vbar inside a single B-node: only one branch of v can join it
    if (th_.bnodes_of_vertex[vbar].empty()) return base;
    int bbar = th_.bnodes_of_vertex[vbar][0];
    Isomorphism best = std::move(base);
    for (int bi : gl) {
        if (bi == b) continue;
        const Isomorphism& sub = edge_max_anchored(bi, bbar, v, vbar);
        if (better(sub, best)) best = sub;
    }
    return best;
}

Isomorphism bbp_mcis(const LabeledGraph& g, const LabeledGraph& h, const WeightFn& w,
                     BbpStats* stats) {
    if (!is_outerplanar(g)) throw NotOuterplanarError("first input graph is not outerplanar");
    if (!is_outerplanar(h)) throw NotOuterplanarError("second input graph is not outerplanar");

    BbpStats total;
    Isomorphism best;
    auto comps_g = connected_components(g);
    auto comps_h = connected_components(h);
    const bool whole = comps_g.size() == 1 && comps_h.size() == 1;

    for (const auto& cg : comps_g) {
        for (const auto& ch : comps_h) {
            Isomorphism cand;
            bool cg_has_edge = cg.size() > 1;
            bool ch_has_edge = ch.size() > 1;
            if (!cg_has_edge || !ch_has_edge) {
                // a single-vertex side caps the pair at one vertex mapping
                for (Vertex v : cg) {
                    for (Vertex vb : ch) {
                        Score s = w.vertex(g.vertex_label(v), h.vertex_label(vb));
                        if (!s) continue;
                        Isomorphism one{{{v, vb}}, *s};
                        if (better(one, cand)) cand = std::move(one);
                    }
                }
            } else if (whole) {
                BbpSolver solver(g, h, w);
                cand = solver.solve();
                total = solver.stats();
            } else {
                Subgraph sg = induced_subgraph(g, cg);
                Subgraph sh = induced_subgraph(h, ch);
                BbpSolver solver(sg.graph, sh.graph, w);
                Isomorphism local = solver.solve();
                const BbpStats& st = solver.stats();
                total.mcis2.absorb(st.mcis2);
                total.edge_calls += st.edge_calls;
                total.single_calls += st.single_calls;
                total.matchings += st.matchings;
                total.memo_hits += st.memo_hits;
                cand.weight = local.weight;
                cand.vertex_map.reserve(local.vertex_map.size());
                for (auto [x, y] : local.vertex_map)
                    cand.vertex_map.emplace_back(sg.to_parent[x], sh.to_parent[y]);
                std::sort(cand.vertex_map.begin(), cand.vertex_map.end());
            }
            if (better(cand, best)) best = std::move(cand);
        }
    }
    if (stats) *stats = total;
    return best;
}

}  // namespace opmcs
