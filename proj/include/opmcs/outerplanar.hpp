#pragma once

#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "opmcs/graph.hpp"

namespace opmcs {

struct NotOuterplanarError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Face id of the unbounded face.
inline constexpr int kOuterFace = -1;

// Combinatorial embedding of a biconnected outerplanar block: the Hamiltonian
// outer cycle, the inner faces (each an induced cycle), the two incident faces
// of every edge, and the weak dual, which is a tree.
//
// The embedding is unique up to mirroring; the outer cycle is canonicalized to
// start at the smallest vertex with its smaller cycle neighbor second, which
// fixes the mirror image. Faces and vertices keep the ids of the host graph.
struct EmbeddedBlock {
    const LabeledGraph* g = nullptr;
    std::vector<Vertex> vertices;  // sorted global vertex ids
    std::vector<EdgeId> edges;     // sorted global edge ids; local index = position

    std::vector<Vertex> outer_cycle;                // canonical orientation
    std::vector<std::vector<Vertex>> faces;         // inner faces, cyclic order
    std::vector<std::vector<int>> face_edges;       // face_edges[f][k] joins faces[f][k], faces[f][k+1]
    std::vector<std::pair<int, int>> edge_faces;    // per local edge, canonical (A, B)
    std::vector<std::vector<std::pair<int, int>>> dual_adj;  // face -> (face, local edge)

    std::unordered_map<Vertex, int> vlocal;
    std::unordered_map<EdgeId, int> elocal;

    int local_vertex(Vertex v) const { return vlocal.at(v); }
    int local_edge(EdgeId e) const { return elocal.at(e); }
    int order() const { return static_cast<int>(vertices.size()); }
    int size() const { return static_cast<int>(edges.size()); }
    int face_size(int f) const {
        return f == kOuterFace ? static_cast<int>(outer_cycle.size())
                               : static_cast<int>(faces[f].size());
    }
};

// Embeds one block of g (vertex and edge sets as produced by decompose).
// Throws NotOuterplanarError when the block has no outerplanar embedding.
// Runs in O(|V_b| * |E_b|).
EmbeddedBlock embed_block(const LabeledGraph& g, const BNode& block);

// True iff every block of every component embeds.
bool is_outerplanar(const LabeledGraph& g);

// Canonical face pair of a local edge: slot A is the incident face with the
// lexicographically smaller (boundary length, sorted boundary vertices) key;
// the outer face always takes slot B.
std::pair<int, int> canonical_face_pair(const EmbeddedBlock& emb, int local_edge);

// Induced subgraph on the given vertices; to_parent maps local ids back.
struct Subgraph {
    LabeledGraph graph;
    std::vector<Vertex> to_parent;
};
Subgraph induced_subgraph(const LabeledGraph& g, const std::vector<Vertex>& verts);

}  // namespace opmcs
