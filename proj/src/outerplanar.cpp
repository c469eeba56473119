#include "opmcs/outerplanar.hpp"

#include <algorithm>

namespace opmcs {

namespace {

[[noreturn]] void fail(const char* msg) { throw NotOuterplanarError(msg); }

// In a biconnected outerplanar graph an edge lies on the outer cycle iff
// removing both endpoints leaves the block connected; crossing chords and
// K4/K2,3-like structures misclassify and are caught by the degree check.
std::vector<char> hull_edges(const LabeledGraph& g, const std::vector<Vertex>& verts,
                             const std::vector<EdgeId>& edges,
                             const std::unordered_map<Vertex, int>& vlocal) {
    const int n = static_cast<int>(verts.size());
    std::vector<char> hull(edges.size(), 0);
    std::vector<int> seen(n, -1);
    std::vector<int> stack;
    for (size_t ei = 0; ei < edges.size(); ++ei) {
        auto [eu, ev] = g.edge(edges[ei]);
        int banned_a = vlocal.at(eu), banned_b = vlocal.at(ev);
        int start = -1;
        for (int i = 0; i < n; ++i)
            if (i != banned_a && i != banned_b) {
                start = i;
                break;
            }
        if (start < 0) {  // n == 2 cannot happen for blocks
            hull[ei] = 1;
            continue;
        }
        int mark = static_cast<int>(ei);
        int reached = 0;
        seen[start] = mark;
        stack.push_back(start);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            ++reached;
            for (auto [w, e] : g.adj(verts[v])) {
                (void)e;
                auto it = vlocal.find(w);
                if (it == vlocal.end()) continue;
                int wl = it->second;
                if (wl == banned_a || wl == banned_b || seen[wl] == mark) continue;
                seen[wl] = mark;
                stack.push_back(wl);
            }
        }
        hull[ei] = (reached == n - 2);
    }
    return hull;
}

}  // namespace

EmbeddedBlock embed_block(const LabeledGraph& g, const BNode& block) {
    EmbeddedBlock emb;
    emb.g = &g;
    emb.vertices = block.vertices;
    emb.edges = block.edges;
    const int n = emb.order();
    const int m = emb.size();
    if (n < 3 || !block.is_block)
        throw std::invalid_argument("embed_block: not a block");
    if (m > 2 * n - 3) fail("block has more than 2n-3 edges");
    for (int i = 0; i < n; ++i) emb.vlocal.emplace(emb.vertices[i], i);
    for (int i = 0; i < m; ++i) emb.elocal.emplace(emb.edges[i], i);

    std::vector<char> hull = hull_edges(g, emb.vertices, emb.edges, emb.vlocal);

    // The hull edges must induce degree exactly 2 everywhere.
    std::vector<std::vector<Vertex>> hull_adj(n);
    int hull_count = 0;
    for (int ei = 0; ei < m; ++ei) {
        if (!hull[ei]) continue;
        ++hull_count;
        auto [u, v] = g.edge(emb.edges[ei]);
        hull_adj[emb.vlocal.at(u)].push_back(v);
        hull_adj[emb.vlocal.at(v)].push_back(u);
    }
    if (hull_count != n) fail("outer cycle is not a Hamiltonian cycle");
    for (int i = 0; i < n; ++i)
        if (hull_adj[i].size() != 2) fail("vertex not on exactly two outer edges");

    // Walk the outer cycle; canonical start and direction fix the mirror.
    std::vector<Vertex> cycle;
    cycle.reserve(n);
    Vertex start = emb.vertices[0];
    Vertex second = std::min(hull_adj[emb.vlocal.at(start)][0], hull_adj[emb.vlocal.at(start)][1]);
    cycle.push_back(start);
    cycle.push_back(second);
    while (static_cast<int>(cycle.size()) < n) {
        Vertex prev = cycle[cycle.size() - 2], cur = cycle.back();
        const auto& nb = hull_adj[emb.vlocal.at(cur)];
        Vertex nxt = (nb[0] == prev) ? nb[1] : nb[0];
        if (nxt == start) fail("outer edges form more than one cycle");
        cycle.push_back(nxt);
    }
    {
        Vertex last = cycle.back();
        const auto& nb = hull_adj[emb.vlocal.at(last)];
        if (nb[0] != start && nb[1] != start) fail("outer cycle does not close");
    }
    emb.outer_cycle = cycle;

    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[emb.vlocal.at(cycle[i])] = i;

    // Rotation at v: neighbors ordered by cyclic distance along the outer
    // cycle. For vertices in convex position this is the angular order, so
    // face orbits of the dart successor rule are the faces of the embedding.
    std::vector<std::vector<std::pair<int, int>>> rot(n);  // (neighbor local, local edge)
    for (int ei = 0; ei < m; ++ei) {
        auto [u, v] = g.edge(emb.edges[ei]);
        int ul = emb.vlocal.at(u), vl = emb.vlocal.at(v);
        rot[ul].emplace_back(vl, ei);
        rot[vl].emplace_back(ul, ei);
    }
    for (int v = 0; v < n; ++v)
        std::sort(rot[v].begin(), rot[v].end(), [&](const auto& a, const auto& b) {
            return (pos[a.first] - pos[v] + n) % n < (pos[b.first] - pos[v] + n) % n;
        });

    // Darts: 2*e is low->high endpoint of local edge e, 2*e+1 the reverse.
    std::vector<int> elo(m), ehi(m);
    for (int ei = 0; ei < m; ++ei) {
        auto [u, v] = g.edge(emb.edges[ei]);
        elo[ei] = emb.vlocal.at(u);
        ehi[ei] = emb.vlocal.at(v);
    }
    auto dart_tail = [&](int d) { return d & 1 ? ehi[d >> 1] : elo[d >> 1]; };
    std::vector<int> next(2 * m, -1);
    for (int v = 0; v < n; ++v) {
        const int deg = static_cast<int>(rot[v].size());
        for (int i = 0; i < deg; ++i) {
            auto [w, e] = rot[v][i];
            // Dart arriving at v from w continues to the successor of w.
            int arriving = 2 * e + (ehi[e] == v ? 0 : 1);
            auto [w2, e2] = rot[v][(i + 1) % deg];
            (void)w2;
            next[arriving] = 2 * e2 + (elo[e2] == v ? 0 : 1);
        }
    }

    std::vector<int> orbit_of(2 * m, -1);
    std::vector<std::vector<int>> orbits;
    for (int d0 = 0; d0 < 2 * m; ++d0) {
        if (orbit_of[d0] >= 0) continue;
        int id = static_cast<int>(orbits.size());
        orbits.emplace_back();
        int d = d0;
        do {
            orbit_of[d] = id;
            orbits[id].push_back(d);
            d = next[d];
        } while (d != d0);
    }
    if (static_cast<int>(orbits.size()) != m - n + 2) fail("face count mismatch");

    // The orbit through the first forward outer dart must be the outer face.
    int e01 = emb.local_edge(*g.edge_id(cycle[0], cycle[1]));
    int d01 = 2 * e01 + (elo[e01] == emb.vlocal.at(cycle[0]) ? 0 : 1);
    int outer_orbit = orbit_of[d01];
    if (static_cast<int>(orbits[outer_orbit].size()) != n) fail("outer face boundary mismatch");
    for (int d : orbits[outer_orbit])
        if (!hull[d >> 1]) fail("outer face crosses a chord");

    // Inner faces, in orbit discovery order, each rotated to its minimum vertex.
    std::vector<int> face_id_of_orbit(orbits.size(), kOuterFace);
    for (size_t oi = 0; oi < orbits.size(); ++oi) {
        if (static_cast<int>(oi) == outer_orbit) continue;
        const auto& orbit = orbits[oi];
        std::vector<Vertex> fverts;
        std::vector<int> fedges;
        fverts.reserve(orbit.size());
        fedges.reserve(orbit.size());
        for (int d : orbit) {
            fverts.push_back(emb.vertices[dart_tail(d)]);
            fedges.push_back(d >> 1);
        }
        size_t best = std::min_element(fverts.begin(), fverts.end()) - fverts.begin();
        std::rotate(fverts.begin(), fverts.begin() + best, fverts.end());
        std::rotate(fedges.begin(), fedges.begin() + best, fedges.end());
        std::vector<char> dup(n, 0);
        for (Vertex v : fverts) {
            if (dup[emb.vlocal.at(v)]) fail("face boundary revisits a vertex");
            dup[emb.vlocal.at(v)] = 1;
        }
        face_id_of_orbit[oi] = static_cast<int>(emb.faces.size());
        emb.faces.push_back(std::move(fverts));
        emb.face_edges.push_back(std::move(fedges));
    }

    emb.edge_faces.assign(m, {kOuterFace, kOuterFace});
    for (int ei = 0; ei < m; ++ei) {
        int fa = face_id_of_orbit[orbit_of[2 * ei]];
        int fb = face_id_of_orbit[orbit_of[2 * ei + 1]];
        emb.edge_faces[ei] = {fa, fb};
    }

    // Canonical slot order, then the weak dual from the chords.
    auto face_key = [&](int f) {
        std::vector<Vertex> s = emb.faces[f];
        std::sort(s.begin(), s.end());
        return std::make_pair(emb.faces[f].size(), std::move(s));
    };
    emb.dual_adj.assign(emb.faces.size(), {});
    int chords = 0;
    for (int ei = 0; ei < m; ++ei) {
        auto& [fa, fb] = emb.edge_faces[ei];
        if (fa == kOuterFace) std::swap(fa, fb);
        if (fb == kOuterFace) continue;
        if (fa == fb) fail("edge with the same face on both sides");
        if (face_key(fb) < face_key(fa)) std::swap(fa, fb);
        emb.dual_adj[fa].emplace_back(fb, ei);
        emb.dual_adj[fb].emplace_back(fa, ei);
        ++chords;
    }
    if (chords != m - n) fail("chord count mismatch");
    return emb;
}

std::pair<int, int> canonical_face_pair(const EmbeddedBlock& emb, int local_edge) {
    return emb.edge_faces.at(local_edge);
}

Subgraph induced_subgraph(const LabeledGraph& g, const std::vector<Vertex>& verts) {
    Subgraph s;
    s.to_parent = verts;
    std::sort(s.to_parent.begin(), s.to_parent.end());
    std::unordered_map<Vertex, int> local;
    std::vector<int> labels;
    labels.reserve(s.to_parent.size());
    for (size_t i = 0; i < s.to_parent.size(); ++i) {
        local.emplace(s.to_parent[i], static_cast<int>(i));
        labels.push_back(g.vertex_label(s.to_parent[i]));
    }
    std::vector<std::tuple<int, int, int>> edges;
    for (Vertex v : s.to_parent)
        for (auto [w, e] : g.adj(v)) {
            if (w < v) continue;
            auto it = local.find(w);
            if (it == local.end()) continue;
            edges.emplace_back(local.at(v), it->second, g.edge_label(e));
        }
    s.graph = LabeledGraph(std::move(labels), edges);
    return s;
}

bool is_outerplanar(const LabeledGraph& g) {
    for (const auto& comp : connected_components(g)) {
        Subgraph sub = induced_subgraph(g, comp);
        if (sub.graph.size() == 0) continue;
        if (sub.graph.size() > 2 * sub.graph.order() - 3) return false;
        Decomposition d = decompose(sub.graph);
        for (const BNode& b : d.blocks) {
            try {
                embed_block(sub.graph, b);
            } catch (const NotOuterplanarError&) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace opmcs
