#include "opmcs/mcis2.hpp"

#include <algorithm>
#include <cassert>

namespace opmcs {

namespace {

constexpr double kEps = 1e-9;

// Scratch state for repeated maximal-iso walks over one block pair. Per-call
// arrays are epoch stamped so a new walk needs no clearing.
struct Workspace {
    const EmbeddedBlock& A;
    const EmbeddedBlock& B;

    // face boundaries and edge endpoints as local vertex ids
    std::vector<std::vector<int>> afl, bfl;
    std::vector<std::pair<int, int>> ael, bel;  // endpoints, host-lo first

    uint32_t ep = 0;
    std::vector<int> gmap;  // A-local vertex -> B-local vertex
    std::vector<uint32_t> gmap_ep;
    std::vector<int> hmap;  // B-local vertex -> A-local vertex
    std::vector<uint32_t> hmap_ep;
    std::vector<int> fimg;  // A face -> B face
    std::vector<uint32_t> fimg_ep;
    std::vector<uint32_t> fused_ep;  // B faces already used
    std::vector<uint32_t> eseen_ep;  // A edges already typed this walk

    std::vector<std::pair<int, int>> region;  // mapped face pairs in BFS pop order
    std::vector<std::pair<int, int>> bfs;
    struct EdgeRec {
        int eg, eh, t;
    };
    std::vector<EdgeRec> erecs;
    std::vector<std::pair<int, int>> tent;

    // split scratch
    std::vector<uint32_t> intact_ep;  // A faces surviving the cut
    std::vector<int> cluster_of;      // A face -> piece index
    std::vector<uint32_t> cluster_ep;
    std::vector<int> piece_of_edge;  // A edge -> piece index for current region
    std::vector<uint32_t> poe_ep;
    std::vector<int> fstack;

    Mcis2Stats stats;

    Workspace(const EmbeddedBlock& a, const EmbeddedBlock& b) : A(a), B(b) {
        afl.resize(A.faces.size());
        for (size_t f = 0; f < A.faces.size(); ++f) {
            afl[f].reserve(A.faces[f].size());
            for (Vertex v : A.faces[f]) afl[f].push_back(A.local_vertex(v));
        }
        bfl.resize(B.faces.size());
        for (size_t f = 0; f < B.faces.size(); ++f) {
            bfl[f].reserve(B.faces[f].size());
            for (Vertex v : B.faces[f]) bfl[f].push_back(B.local_vertex(v));
        }
        ael.resize(A.edges.size());
        for (size_t e = 0; e < A.edges.size(); ++e) {
            auto [u, v] = A.g->edge(A.edges[e]);
            ael[e] = {A.local_vertex(u), A.local_vertex(v)};
        }
        bel.resize(B.edges.size());
        for (size_t e = 0; e < B.edges.size(); ++e) {
            auto [u, v] = B.g->edge(B.edges[e]);
            bel[e] = {B.local_vertex(u), B.local_vertex(v)};
        }
        gmap.assign(A.order(), -1);
        gmap_ep.assign(A.order(), 0);
        hmap.assign(B.order(), -1);
        hmap_ep.assign(B.order(), 0);
        fimg.assign(A.faces.size(), -1);
        fimg_ep.assign(A.faces.size(), 0);
        fused_ep.assign(B.faces.size(), 0);
        eseen_ep.assign(A.edges.size(), 0);
        intact_ep.assign(A.faces.size(), 0);
        cluster_of.assign(A.faces.size(), -1);
        cluster_ep.assign(A.faces.size(), 0);
        piece_of_edge.assign(A.edges.size(), -1);
        poe_ep.assign(A.edges.size(), 0);
    }

    bool g_set(int va) const { return gmap_ep[va] == ep; }
    bool h_set(int vb) const { return hmap_ep[vb] == ep; }
    void map_pair(int va, int vb) {
        gmap[va] = vb;
        gmap_ep[va] = ep;
        hmap[vb] = va;
        hmap_ep[vb] = ep;
    }

    // local B edge the A edge d maps to; endpoints of d must be mapped
    int image_edge(int d) const {
        Vertex p = B.vertices[gmap[ael[d].first]];
        Vertex q = B.vertices[gmap[ael[d].second]];
        auto id = B.g->edge_id(p, q);
        assert(id.has_value());
        return B.local_edge(*id);
    }

    int edge_type(int d, int d2, int fA, int fB) const {
        Vertex p = B.vertices[gmap[ael[d].first]];
        Vertex q = B.vertices[gmap[ael[d].second]];
        int eswap = p > q ? 1 : 0;
        int slot_a = (A.edge_faces[d].first == fA) ? 0 : 1;
        int slot_b = (B.edge_faces[d2].first == fB) ? 0 : 1;
        int fswap = (slot_a != slot_b) ? 1 : 0;
        return 1 + eswap + 2 * fswap;
    }

    // Extends the mapping across face pair (fA2, fB2) sharing already mapped
    // edge d -> d2. Returns false and commits nothing on any conflict.
    bool walk(int fA2, int fB2, int d, int d2) {
        const auto& fa = afl[fA2];
        const auto& fb = bfl[fB2];
        const int k = static_cast<int>(fa.size());
        stats.walk_steps += static_cast<uint64_t>(k);

        const auto& fea = A.face_edges[fA2];
        const auto& feb = B.face_edges[fB2];
        int j = 0;
        while (fea[j] != d) ++j;
        int j2 = 0;
        while (feb[j2] != d2) ++j2;

        // boundary edge i joins boundary vertices i and i+1; orient both
        // walks to start at the lower endpoint of d and its image
        int xa = ael[d].first;
        bool fwd_a = fa[j] == xa;
        int xb = gmap[xa];
        bool fwd_b = fb[j2] == xb;
        auto seq_a = [&](int i) { return fwd_a ? fa[(j + i) % k] : fa[(j + 1 - i + k) % k]; };
        auto seq_b = [&](int i) { return fwd_b ? fb[(j2 + i) % k] : fb[(j2 + 1 - i + k) % k]; };

        tent.clear();
        for (int i = 2; i < k; ++i) {
            int za = seq_a(i);
            int zb = seq_b(i);
            if (g_set(za)) {
                if (gmap[za] != zb) return false;
            } else {
                if (h_set(zb)) return false;
                tent.emplace_back(za, zb);
            }
        }
        for (auto [za, zb] : tent) map_pair(za, zb);
        fimg[fA2] = fB2;
        fimg_ep[fA2] = ep;
        fused_ep[fB2] = ep;
        bfs.emplace_back(fA2, fB2);
        return true;
    }

    // Builds the unique maximal iso seeded by eg -> eh with type t into the
    // stamped arrays, region and erecs. Requires type_valid.
    void maximal_from_seed(int eg, int eh, MappingType t) {
        ++ep;
        region.clear();
        bfs.clear();
        erecs.clear();
        ++stats.maximal_calls;

        auto [alo, ahi] = ael[eg];
        auto [blo, bhi] = bel[eh];
        map_pair(alo, t.endpoint_swap ? bhi : blo);
        map_pair(ahi, t.endpoint_swap ? blo : bhi);

        auto [fa, fb] = A.edge_faces[eg];
        auto [fa2, fb2] = B.edge_faces[eh];
        std::pair<int, int> slots[2];
        if (!t.face_swap) {
            slots[0] = {fa, fa2};
            slots[1] = {fb, fb2};
        } else {
            slots[0] = {fa, fb2};
            slots[1] = {fb, fa2};
        }
        for (auto [F, F2] : slots) {
            if (F == kOuterFace || F2 == kOuterFace) continue;
            if (afl[F].size() != bfl[F2].size()) continue;
            // the two faces of an edge share only its endpoints, so seed
            // walks never conflict
            bool ok = walk(F, F2, eg, eh);
            assert(ok);
            (void)ok;
        }

        for (size_t qi = 0; qi < bfs.size(); ++qi) {
            auto [fA, fB] = bfs[qi];
            region.emplace_back(fA, fB);
            const auto& fea = A.face_edges[fA];
            for (size_t i = 0; i < fea.size(); ++i) {
                int d = fea[i];
                int d2 = image_edge(d);
                if (eseen_ep[d] != ep) {
                    eseen_ep[d] = ep;
                    erecs.push_back({d, d2, edge_type(d, d2, fA, fB)});
                }
                int oA =
                    A.edge_faces[d].first == fA ? A.edge_faces[d].second : A.edge_faces[d].first;
                if (oA == kOuterFace || fimg_ep[oA] == ep) continue;
                int oB =
                    B.edge_faces[d2].first == fB ? B.edge_faces[d2].second : B.edge_faces[d2].first;
                if (oB == kOuterFace || fused_ep[oB] == ep) continue;
                if (afl[oA].size() != bfl[oB].size()) continue;
                walk(oA, oB, d, d2);
            }
        }
    }

    // Loads an externally built phi into the stamped arrays so it can be
    // split. The face pairs listed in phi drive the region.
    void load_phi(const BiconIso& phi) {
        ++ep;
        region.clear();
        for (auto [gv, hv] : phi.vertex_map) map_pair(A.local_vertex(gv), B.local_vertex(hv));
        for (auto [fA, fB] : phi.faces) {
            fimg[fA] = fB;
            fimg_ep[fA] = ep;
            fused_ep[fB] = ep;
            region.emplace_back(fA, fB);
        }
    }

    // Cuts the current region at forbidden pairs and excluded vertices and
    // collects the surviving pieces: connected clusters of intact faces in
    // the weak dual. piece_of_edge is stamped for edges landing in a piece.
    void split_current(const WeightFn& w, const std::vector<char>* excluded,
                       std::vector<BiconIso>& out) {
        for (auto [fA, fB] : region) {
            (void)fB;
            ++stats.split_steps;
            const auto& fa = afl[fA];
            const auto& fea = A.face_edges[fA];
            bool ok = true;
            for (size_t i = 0; ok && i < fa.size(); ++i) {
                int va = fa[i];
                if (excluded && (*excluded)[va]) {
                    ok = false;
                    break;
                }
                if (!w.vertex(A.g->vertex_label(A.vertices[va]),
                              B.g->vertex_label(B.vertices[gmap[va]]))) {
                    ok = false;
                    break;
                }
                int d = fea[i];
                if (!w.edge(A.g->edge_label(A.edges[d]), B.g->edge_label(B.edges[image_edge(d)])))
                    ok = false;
            }
            intact_ep[fA] = ok ? ep : 0;
        }

        int npieces = 0;
        std::vector<std::pair<int, int>> pverts;
        for (auto [f0, f0b] : region) {
            (void)f0b;
            if (intact_ep[f0] != ep || cluster_ep[f0] == ep) continue;
            int pid = npieces++;
            cluster_of[f0] = pid;
            cluster_ep[f0] = ep;
            fstack.assign(1, f0);
            BiconIso piece;
            pverts.clear();
            while (!fstack.empty()) {
                int fA = fstack.back();
                fstack.pop_back();
                ++stats.split_steps;
                piece.faces.emplace_back(fA, fimg[fA]);
                const auto& fa = afl[fA];
                const auto& fea = A.face_edges[fA];
                for (size_t i = 0; i < fa.size(); ++i) {
                    pverts.emplace_back(fa[i], gmap[fa[i]]);
                    int d = fea[i];
                    if (poe_ep[d] != ep) {
                        poe_ep[d] = ep;
                        piece_of_edge[d] = pid;
                        int d2 = image_edge(d);
                        piece.edge_types.emplace_back(A.edges[d], B.edges[d2],
                                                      edge_type(d, d2, fA, fimg[fA]));
                    }
                }
                for (auto [of, via] : A.dual_adj[fA]) {
                    (void)via;
                    if (fimg_ep[of] != ep || intact_ep[of] != ep || cluster_ep[of] == ep) continue;
                    cluster_of[of] = pid;
                    cluster_ep[of] = ep;
                    fstack.push_back(of);
                }
            }
            std::sort(pverts.begin(), pverts.end());
            pverts.erase(std::unique(pverts.begin(), pverts.end()), pverts.end());
            piece.vertex_map.reserve(pverts.size());
            double wt = 0.0;
            for (auto [va, vb] : pverts) {
                Vertex gv = A.vertices[va];
                Vertex hv = B.vertices[vb];
                piece.vertex_map.emplace_back(gv, hv);
                wt += *w.vertex(A.g->vertex_label(gv), B.g->vertex_label(hv));
            }
            for (const auto& [ge, he, tt] : piece.edge_types) {
                (void)tt;
                wt += *w.edge(A.g->edge_label(ge), B.g->edge_label(he));
            }
            piece.weight = wt;
            std::sort(piece.edge_types.begin(), piece.edge_types.end());
            std::sort(piece.faces.begin(), piece.faces.end());
            out.push_back(std::move(piece));
        }
        // edges of dead faces stay unstamped; their table cells get -inf
    }

    BiconIso export_structure() const {
        BiconIso out;
        for (int va = 0; va < A.order(); ++va) {
            if (gmap_ep[va] == ep)
                out.vertex_map.emplace_back(A.vertices[va], B.vertices[gmap[va]]);
        }
        for (const auto& rec : erecs)
            out.edge_types.emplace_back(A.edges[rec.eg], B.edges[rec.eh], rec.t);
        std::sort(out.edge_types.begin(), out.edge_types.end());
        out.faces = region;
        std::sort(out.faces.begin(), out.faces.end());
        return out;
    }
};

}  // namespace

void Mcis2Stats::absorb(const Mcis2Stats& o) {
    seeds += o.seeds;
    maximal_calls += o.maximal_calls;
    walk_steps += o.walk_steps;
    split_steps += o.split_steps;
    table_writes += o.table_writes;
    cells_defined += o.cells_defined;
    repeated_writes += o.repeated_writes;
}

bool type_valid(const EmbeddedBlock& bg, const EmbeddedBlock& bh, int eg, int eh, MappingType t) {
    auto [fa, fb] = bg.edge_faces[eg];
    auto [fa2, fb2] = bh.edge_faces[eh];
    std::pair<int, int> slots[2];
    if (!t.face_swap) {
        slots[0] = {fa, fa2};
        slots[1] = {fb, fb2};
    } else {
        slots[0] = {fa, fb2};
        slots[1] = {fb, fa2};
    }
    for (auto [F, F2] : slots) {
        if (F == kOuterFace || F2 == kOuterFace) continue;
        if (bg.face_size(F) == bh.face_size(F2)) return true;
    }
    return false;
}

BiconIso maximal_iso(const EmbeddedBlock& bg, const EmbeddedBlock& bh, int eg, int eh,
                     MappingType t) {
    Workspace ws(bg, bh);
    ws.maximal_from_seed(eg, eh, t);
    return ws.export_structure();
}

std::vector<BiconIso> split_iso(const EmbeddedBlock& bg, const EmbeddedBlock& bh,
                                const BiconIso& phi, const WeightFn& w,
                                const std::vector<Vertex>* exclude_g) {
    Workspace ws(bg, bh);
    ws.load_phi(phi);
    std::vector<BiconIso> out;
    if (!exclude_g || exclude_g->empty()) {
        ws.split_current(w, nullptr, out);
        return out;
    }
    std::vector<char> flags(bg.order(), 0);
    for (Vertex v : *exclude_g) flags[bg.local_vertex(v)] = 1;
    ws.split_current(w, &flags, out);
    return out;
}

Mcis2Stats scan_block_pair(const EmbeddedBlock& bg, const EmbeddedBlock& bh, const WeightFn& w,
                           const std::function<void(const BiconIso&)>& visit) {
    Workspace ws(bg, bh);
    const int ma = bg.size();
    const int mb = bh.size();
    // cell (eg, eh, t) at ((eg*mb)+eh)*4 + t-1; 0 undefined, 1 value, 2 -inf
    std::vector<signed char> state(static_cast<size_t>(ma) * mb * 4, 0);
    std::vector<double> value(static_cast<size_t>(ma) * mb * 4, 0.0);
    std::vector<BiconIso> pieces;
    for (int eg = 0; eg < ma; ++eg) {
        for (int eh = 0; eh < mb; ++eh) {
            for (int tv = 1; tv <= 4; ++tv) {
                ++ws.stats.seeds;
                const size_t cell0 = (static_cast<size_t>(eg) * mb + eh) * 4 + (tv - 1);
                if (state[cell0] != 0) continue;
                MappingType t = MappingType::from_value(tv);
                if (!type_valid(bg, bh, eg, eh, t)) continue;
                ws.maximal_from_seed(eg, eh, t);
                pieces.clear();
                ws.split_current(w, nullptr, pieces);
                for (const auto& rec : ws.erecs) {
                    const size_t cell = (static_cast<size_t>(rec.eg) * mb + rec.eh) * 4 + (rec.t - 1);
                    if (state[cell] != 0) {
                        ++ws.stats.repeated_writes;
                        continue;
                    }
                    ++ws.stats.table_writes;
                    if (ws.poe_ep[rec.eg] == ws.ep) {
                        state[cell] = 1;
                        value[cell] = pieces[ws.piece_of_edge[rec.eg]].weight;
                        ++ws.stats.cells_defined;
                    } else {
                        state[cell] = 2;
                    }
                }
                for (const auto& p : pieces) visit(p);
            }
        }
    }
    return ws.stats;
}

Mcis2Result mcis2_weight(const EmbeddedBlock& bg, const EmbeddedBlock& bh, const WeightFn& w,
                         std::optional<std::pair<Vertex, Vertex>> fixed) {
    Mcis2Result res;
    bool found = false;
    auto maps_fixed = [&](const BiconIso& p) {
        auto it = std::lower_bound(
            p.vertex_map.begin(), p.vertex_map.end(), std::make_pair(fixed->first, Vertex{0}),
            [](const auto& a, const auto& b) { return a.first < b.first; });
        return it != p.vertex_map.end() && it->first == fixed->first &&
               it->second == fixed->second;
    };
    res.stats = scan_block_pair(bg, bh, w, [&](const BiconIso& p) {
        if (fixed && !maps_fixed(p)) return;
        if (!found || p.weight > res.weight + kEps) {
            found = true;
            res.weight = p.weight;
            res.witness = p;
        }
    });
    if (!found) res.weight = 0.0;
    return res;
}

Mcis2Stats mcis2_enumerate(const EmbeddedBlock& bg, const EmbeddedBlock& bh, const WeightFn& w,
                           const std::function<void(const BiconIso&)>& emit) {
    double wmax = 0.0;
    bool found = false;
    Mcis2Stats stats = scan_block_pair(bg, bh, w, [&](const BiconIso& p) {
        if (!found || p.weight > wmax) {
            found = true;
            wmax = p.weight;
        }
    });
    if (!found) return stats;
    Mcis2Stats pass2 = scan_block_pair(bg, bh, w, [&](const BiconIso& p) {
        if (p.weight >= wmax - kEps) emit(p);
    });
    stats.absorb(pass2);
    return stats;
}

}  // namespace opmcs
