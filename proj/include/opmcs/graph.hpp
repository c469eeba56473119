#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace opmcs {

using Vertex = int;
using EdgeId = int;

// Interns label strings to dense ids so score lookups are cheap.
class LabelInterner {
public:
    int id(const std::string& name);
    std::optional<int> find(const std::string& name) const;
    const std::string& name(int id) const;
    int size() const { return static_cast<int>(names_.size()); }
    // Pre-registers labels "0".."count-1" (generator output uses numeric labels).
    void ensure_numeric(int count);

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> ids_;
};

// Simple undirected graph with integer labels on vertices and edges.
// Vertices are 0..n-1, edges get dense ids in insertion order with u < v.
// Immutable after construction.
class LabeledGraph {
public:
    LabeledGraph() = default;
    // edges as (u, v, label); throws std::invalid_argument on self loops,
    // duplicate edges or out-of-range ids.
    LabeledGraph(std::vector<int> vertex_labels,
                 const std::vector<std::tuple<int, int, int>>& edges);

    int order() const { return static_cast<int>(vlabel_.size()); }
    int size() const { return static_cast<int>(edges_.size()); }

    int vertex_label(Vertex v) const { return vlabel_[v]; }
    int edge_label(EdgeId e) const { return elabel_[e]; }
    std::pair<Vertex, Vertex> edge(EdgeId e) const { return edges_[e]; }

    std::optional<EdgeId> edge_id(Vertex u, Vertex v) const;
    bool has_edge(Vertex u, Vertex v) const { return edge_id(u, v).has_value(); }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
    // Neighbors sorted ascending, each with the id of the connecting edge.
    const std::vector<std::pair<Vertex, EdgeId>>& adj(Vertex v) const { return adj_[v]; }

private:
    std::vector<int> vlabel_;
    std::vector<std::pair<Vertex, Vertex>> edges_;
    std::vector<int> elabel_;
    std::vector<std::vector<std::pair<Vertex, EdgeId>>> adj_;
};

// Connected components as sorted vertex lists, ordered by smallest vertex.
std::vector<std::vector<Vertex>> connected_components(const LabeledGraph& g);

bool is_connected(const LabeledGraph& g);

// One node of the block/bridge decomposition: a bridge (single edge) or a
// block (maximal biconnected subgraph, >= 3 vertices).
struct BNode {
    bool is_block = false;
    std::vector<Vertex> vertices;  // sorted
    std::vector<EdgeId> edges;     // sorted
};

struct Decomposition {
    std::vector<BNode> blocks;    // is_block == true
    std::vector<BNode> bridges;   // is_block == false
    std::vector<Vertex> cutvertices;  // sorted
};

// Block/bridge/cutvertex decomposition of a connected graph with >= 1 edge.
// Throws std::invalid_argument if g is disconnected.
Decomposition decompose(const LabeledGraph& g);

// BC-tree: B-nodes are blocks and bridges, C-nodes are cutvertices,
// with an edge (b, c) whenever c is a vertex of b.
struct BCTree {
    std::vector<BNode> b_nodes;                    // deterministic order
    std::vector<Vertex> cutvertices;               // sorted; c-node i is cutvertices[i]
    std::vector<std::vector<int>> b_to_c;          // b-node -> c-node indices
    std::vector<std::vector<int>> c_to_b;          // c-node -> b-node indices
    std::vector<int> cnode_of_vertex;              // vertex -> c-node index or -1
    std::vector<std::vector<int>> bnodes_of_vertex;  // vertex -> b-node indices
    std::vector<int> bnode_of_edge;                // edge -> b-node index
    int max_c_degree = 0;

    bool is_cutvertex(Vertex v) const { return cnode_of_vertex[v] >= 0; }
};

BCTree build_bc_tree(const LabeledGraph& g);

// The connected component of g[keep] that intersects anchor.
// Throws std::invalid_argument if no component or more than one component
// intersects anchor (the component must be unambiguous).
std::vector<Vertex> cc_of(const LabeledGraph& g, const std::vector<Vertex>& keep,
                          const std::vector<Vertex>& anchor);

}  // namespace opmcs
