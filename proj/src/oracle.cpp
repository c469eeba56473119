#include "opmcs/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "opmcs/outerplanar.hpp"

namespace opmcs {

namespace {

constexpr double kEps = 1e-9;

// Block id per edge of the host graph, -1 for bridges. Ids are unique across
// the whole graph, so equality means "same block".
std::vector<int> host_block_ids(const LabeledGraph& g) {
    std::vector<int> id(g.size(), -1);
    int next = 0;
    for (const auto& comp : connected_components(g)) {
        Subgraph s = induced_subgraph(g, comp);
        if (s.graph.size() == 0) continue;
        Decomposition d = decompose(s.graph);
        for (const BNode& b : d.blocks) {
            for (EdgeId le : b.edges) {
                auto [lu, lv] = s.graph.edge(le);
                id[*g.edge_id(s.to_parent[lu], s.to_parent[lv])] = next;
            }
            ++next;
        }
    }
    return id;
}

// Block and bridge preservation of the induced subgraph on verts:
// (i) every bridge of the subgraph is a bridge of the host,
// (ii) distinct blocks of the subgraph lie in distinct blocks of the host.
bool side_bbp(const LabeledGraph& host, const std::vector<int>& host_ids,
              const std::vector<Vertex>& verts) {
    Subgraph s = induced_subgraph(host, verts);
    if (s.graph.size() == 0) return true;
    std::vector<int> seen_blocks;
    for (const auto& comp : connected_components(s.graph)) {
        Subgraph c = induced_subgraph(s.graph, comp);
        if (c.graph.size() == 0) continue;
        Decomposition d = decompose(c.graph);
        auto host_edge = [&](EdgeId le) {
            auto [lu, lv] = c.graph.edge(le);
            return *host.edge_id(s.to_parent[c.to_parent[lu]], s.to_parent[c.to_parent[lv]]);
        };
        for (const BNode& b : d.bridges)
            if (host_ids[host_edge(b.edges[0])] != -1) return false;
        for (const BNode& b : d.blocks) {
            int hid = host_ids[host_edge(b.edges[0])];
            for (EdgeId le : b.edges)
                if (host_ids[host_edge(le)] != hid) return false;
            if (hid == -1) return false;
            seen_blocks.push_back(hid);
        }
    }
    std::sort(seen_blocks.begin(), seen_blocks.end());
    return std::adjacent_find(seen_blocks.begin(), seen_blocks.end()) == seen_blocks.end();
}

bool sources_connected(const LabeledGraph& g, const std::vector<Vertex>& verts) {
    if (verts.empty()) return false;
    std::vector<char> in(g.order(), 0), vis(g.order(), 0);
    for (Vertex v : verts) in[v] = 1;
    std::vector<Vertex> stack{verts[0]};
    vis[verts[0]] = 1;
    size_t reached = 0;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        ++reached;
        for (auto [u, e] : g.adj(v)) {
            (void)e;
            if (in[u] && !vis[u]) {
                vis[u] = 1;
                stack.push_back(u);
            }
        }
    }
    return reached == verts.size();
}

struct Enumeration {
    const LabeledGraph& g;
    const LabeledGraph& h;
    const WeightFn& w;
    bool require_biconnected = false;  // biconnected common subgraph instead of BBP
    std::vector<int> gids, hids;
    std::vector<signed char> h_bbp_memo;  // lazily filled per target vertex mask

    double best = -1.0;
    bool found = false;
    std::vector<std::vector<std::pair<Vertex, Vertex>>> witnesses;

    // Backtracking state for one source set.
    std::vector<Vertex> ord;                    // connected expansion order
    std::vector<std::vector<int>> adj_prev;     // earlier positions adjacent in g
    std::vector<std::vector<int>> nonadj_prev;  // earlier positions not adjacent
    std::vector<Vertex> img;
    std::vector<char> used;

    Enumeration(const LabeledGraph& gg, const LabeledGraph& hh, const WeightFn& ww)
        : g(gg), h(hh), w(ww) {}

    bool target_bbp(uint32_t mask) {
        if (h_bbp_memo.empty()) h_bbp_memo.assign(size_t{1} << h.order(), -1);
        signed char& m = h_bbp_memo[mask];
        if (m < 0) {
            std::vector<Vertex> t;
            for (Vertex v = 0; v < h.order(); ++v)
                if (mask >> v & 1) t.push_back(v);
            m = side_bbp(h, hids, t) ? 1 : 0;
        }
        return m == 1;
    }

    void record() {
        double total = 0.0;
        for (size_t i = 0; i < ord.size(); ++i) {
            auto ws = w.vertex(g.vertex_label(ord[i]), h.vertex_label(img[i]));
            total += *ws;
            for (int j : adj_prev[i]) {
                auto we = w.edge(g.edge_label(*g.edge_id(ord[i], ord[j])),
                                 h.edge_label(*h.edge_id(img[i], img[j])));
                total += *we;
            }
        }
        if (!require_biconnected) {
            uint32_t mask = 0;
            for (size_t i = 0; i < ord.size(); ++i) mask |= uint32_t{1} << img[i];
            if (!target_bbp(mask)) return;
        }
        if (!found || total > best + kEps) {
            best = total;
            found = true;
            witnesses.clear();
        } else if (total < best - kEps) {
            return;
        }
        std::vector<std::pair<Vertex, Vertex>> wit;
        for (size_t i = 0; i < ord.size(); ++i) wit.emplace_back(ord[i], img[i]);
        std::sort(wit.begin(), wit.end());
        witnesses.push_back(std::move(wit));
    }

    void extend(size_t i) {
        if (i == ord.size()) {
            record();
            return;
        }
        for (Vertex cand = 0; cand < h.order(); ++cand) {
            if (used[cand]) continue;
            if (!w.vertex(g.vertex_label(ord[i]), h.vertex_label(cand))) continue;
            bool fits = true;
            for (int j : adj_prev[i]) {
                auto eh = h.edge_id(img[j], cand);
                if (!eh || !w.edge(g.edge_label(*g.edge_id(ord[i], ord[j])), h.edge_label(*eh))) {
                    fits = false;
                    break;
                }
            }
            if (fits)
                for (int j : nonadj_prev[i])
                    if (h.has_edge(img[j], cand)) {
                        fits = false;
                        break;
                    }
            if (!fits) continue;
            img[i] = cand;
            used[cand] = 1;
            extend(i + 1);
            used[cand] = 0;
        }
    }

    void run_source_set(const std::vector<Vertex>& verts) {
        // Expansion order keeps every prefix connected, so adjacency pruning bites early.
        ord.clear();
        std::vector<char> taken(verts.size(), 0);
        ord.push_back(verts[0]);
        taken[0] = 1;
        while (ord.size() < verts.size()) {
            bool grew = false;
            for (size_t i = 0; i < verts.size() && !grew; ++i) {
                if (taken[i]) continue;
                for (Vertex u : ord)
                    if (g.has_edge(u, verts[i])) {
                        ord.push_back(verts[i]);
                        taken[i] = 1;
                        grew = true;
                        break;
                    }
            }
            if (!grew) return;  // not connected; caller filters, belt and braces
        }
        adj_prev.assign(ord.size(), {});
        nonadj_prev.assign(ord.size(), {});
        for (size_t i = 0; i < ord.size(); ++i)
            for (size_t j = 0; j < i; ++j)
                (g.has_edge(ord[i], ord[j]) ? adj_prev : nonadj_prev)[i].push_back(
                    static_cast<int>(j));
        img.assign(ord.size(), -1);
        used.assign(h.order(), 0);
        extend(0);
    }

    BruteResult finish() {
        BruteResult res;
        if (found) {
            res.weight = best;
            std::sort(witnesses.begin(), witnesses.end());
            witnesses.erase(std::unique(witnesses.begin(), witnesses.end()), witnesses.end());
            res.witnesses = std::move(witnesses);
        }
        return res;
    }
};

}  // namespace

IsoReport check_iso(const LabeledGraph& g, const LabeledGraph& h,
                    const std::vector<std::pair<Vertex, Vertex>>& phi, const WeightFn& w) {
    IsoReport r;
    for (auto [u, v] : phi)
        if (u < 0 || u >= g.order() || v < 0 || v >= h.order())
            throw std::invalid_argument("check_iso: vertex out of range");
    std::vector<Vertex> src, dst;
    for (auto [u, v] : phi) {
        src.push_back(u);
        dst.push_back(v);
    }
    auto has_dup = [](std::vector<Vertex> v) {
        std::sort(v.begin(), v.end());
        return std::adjacent_find(v.begin(), v.end()) != v.end();
    };
    r.injective = !has_dup(src) && !has_dup(dst);
    if (!r.injective) return r;

    r.induced = true;
    r.admissible = true;
    double total = 0.0;
    for (size_t i = 0; i < phi.size(); ++i) {
        auto ws = w.vertex(g.vertex_label(phi[i].first), h.vertex_label(phi[i].second));
        if (ws)
            total += *ws;
        else
            r.admissible = false;
        for (size_t j = 0; j < i; ++j) {
            auto eg = g.edge_id(phi[i].first, phi[j].first);
            auto eh = h.edge_id(phi[i].second, phi[j].second);
            if (eg.has_value() != eh.has_value()) r.induced = false;
            if (eg && eh) {
                auto we = w.edge(g.edge_label(*eg), h.edge_label(*eh));
                if (we)
                    total += *we;
                else
                    r.admissible = false;
            }
        }
    }
    r.weight = r.admissible ? total : 0.0;
    r.connected = sources_connected(g, src);
    r.bbp = side_bbp(g, host_block_ids(g), src) && side_bbp(h, host_block_ids(h), dst);
    return r;
}

BruteResult brute_bbp_mcis(const LabeledGraph& g, const LabeledGraph& h, const WeightFn& w) {
    if (g.order() > 10 || h.order() > 10)
        throw std::invalid_argument("brute_bbp_mcis: guarded to 10 vertices");
    Enumeration en(g, h, w);
    en.gids = host_block_ids(g);
    en.hids = host_block_ids(h);
    const uint32_t full = uint32_t{1} << g.order();
    for (uint32_t mask = 1; mask < full; ++mask) {
        std::vector<Vertex> verts;
        for (Vertex v = 0; v < g.order(); ++v)
            if (mask >> v & 1) verts.push_back(v);
        if (!sources_connected(g, verts)) continue;
        if (!side_bbp(g, en.gids, verts)) continue;
        en.run_source_set(verts);
    }
    return en.finish();
}

BruteResult brute_2mcis(const LabeledGraph& bg, const LabeledGraph& bh, const WeightFn& w) {
    if (bg.order() > 8 || bh.order() > 8)
        throw std::invalid_argument("brute_2mcis: guarded to 8 vertices");
    Enumeration en(bg, bh, w);
    en.require_biconnected = true;
    const uint32_t full = uint32_t{1} << bg.order();
    for (uint32_t mask = 1; mask < full; ++mask) {
        std::vector<Vertex> verts;
        for (Vertex v = 0; v < bg.order(); ++v)
            if (mask >> v & 1) verts.push_back(v);
        if (verts.size() < 3) continue;
        if (!sources_connected(bg, verts)) continue;
        Subgraph s = induced_subgraph(bg, verts);
        Decomposition d = decompose(s.graph);
        if (!d.bridges.empty() || !d.cutvertices.empty()) continue;
        en.run_source_set(verts);
    }
    return en.finish();
}

}  // namespace opmcs
