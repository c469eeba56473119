#include "opmcs/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace opmcs {

int LabelInterner::id(const std::string& name) {
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    int fresh = static_cast<int>(names_.size());
    names_.push_back(name);
    ids_.emplace(name, fresh);
    return fresh;
}

std::optional<int> LabelInterner::find(const std::string& name) const {
    auto it = ids_.find(name);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

const std::string& LabelInterner::name(int id) const { return names_.at(id); }

void LabelInterner::ensure_numeric(int count) {
    for (int i = 0; i < count; ++i) id(std::to_string(i));
}

LabeledGraph::LabeledGraph(std::vector<int> vertex_labels,
                           const std::vector<std::tuple<int, int, int>>& edges)
    : vlabel_(std::move(vertex_labels)) {
    const int n = order();
    adj_.resize(n);
    edges_.reserve(edges.size());
    elabel_.reserve(edges.size());
    for (const auto& [a, b, label] : edges) {
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw std::invalid_argument("edge endpoint out of range");
        if (a == b) throw std::invalid_argument("self loop");
        Vertex u = std::min(a, b), v = std::max(a, b);
        EdgeId id = static_cast<EdgeId>(edges_.size());
        edges_.emplace_back(u, v);
        elabel_.push_back(label);
        adj_[u].emplace_back(v, id);
        adj_[v].emplace_back(u, id);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
    for (int v = 0; v < n; ++v)
        for (size_t i = 1; i < adj_[v].size(); ++i)
            if (adj_[v][i].first == adj_[v][i - 1].first)
                throw std::invalid_argument("duplicate edge");
}

std::optional<EdgeId> LabeledGraph::edge_id(Vertex u, Vertex v) const {
    if (u < 0 || u >= order() || v < 0 || v >= order()) return std::nullopt;
    const auto& nb = adj_[u];
    auto it = std::lower_bound(nb.begin(), nb.end(), std::make_pair(v, 0));
    if (it != nb.end() && it->first == v) return it->second;
    return std::nullopt;
}

std::vector<std::vector<Vertex>> connected_components(const LabeledGraph& g) {
    const int n = g.order();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        int id = static_cast<int>(out.size());
        out.emplace_back();
        comp[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            out[id].push_back(v);
            for (auto [w, e] : g.adj(v)) {
                (void)e;
                if (comp[w] < 0) {
                    comp[w] = id;
                    stack.push_back(w);
                }
            }
        }
        std::sort(out[id].begin(), out[id].end());
    }
    return out;
}

bool is_connected(const LabeledGraph& g) {
    return g.order() == 0 || connected_components(g).size() == 1;
}

namespace {

// Iterative lowpoint DFS producing biconnected components (as edge sets)
// and cutvertices. Components with one edge are bridges.
struct BiconnState {
    const LabeledGraph& g;
    std::vector<int> disc, low;
    std::vector<bool> is_cut;
    std::vector<EdgeId> edge_stack;
    std::vector<std::vector<EdgeId>> components;
    int timer = 0;

    explicit BiconnState(const LabeledGraph& gr)
        : g(gr), disc(gr.order(), -1), low(gr.order(), 0), is_cut(gr.order(), false) {}

    void pop_component(EdgeId until_edge) {
        std::vector<EdgeId> comp;
        while (true) {
            EdgeId e = edge_stack.back();
            edge_stack.pop_back();
            comp.push_back(e);
            if (e == until_edge) break;
        }
        components.push_back(std::move(comp));
    }

    void run(Vertex root) {
        struct Frame {
            Vertex v;
            Vertex parent;
            size_t next = 0;
            int tree_children = 0;
        };
        std::vector<Frame> stack;
        disc[root] = low[root] = timer++;
        stack.push_back({root, -1});
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next < g.adj(f.v).size()) {
                auto [w, e] = g.adj(f.v)[f.next++];
                if (disc[w] < 0) {
                    edge_stack.push_back(e);
                    f.tree_children++;
                    disc[w] = low[w] = timer++;
                    stack.push_back({w, f.v});
                } else if (w != f.parent && disc[w] < disc[f.v]) {
                    edge_stack.push_back(e);
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
            } else {
                Frame done = f;
                stack.pop_back();
                if (!stack.empty()) {
                    Frame& p = stack.back();
                    low[p.v] = std::min(low[p.v], low[done.v]);
                    if (low[done.v] >= disc[p.v]) {
                        // A component ends at the tree edge (p.v, done.v).
                        pop_component(*g.edge_id(p.v, done.v));
                        if (p.parent != -1) is_cut[p.v] = true;
                    }
                } else if (done.tree_children > 1) {
                    // Root is a cutvertex iff it has >= 2 tree children.
                    is_cut[done.v] = true;
                }
            }
        }
    }
};

}  // namespace

Decomposition decompose(const LabeledGraph& g) {
    if (!is_connected(g)) throw std::invalid_argument("decompose: graph is disconnected");
    Decomposition d;
    if (g.order() == 0 || g.size() == 0) return d;

    BiconnState st(g);
    st.run(0);

    for (auto& comp : st.components) {
        BNode node;
        std::sort(comp.begin(), comp.end());
        node.edges = comp;
        std::vector<Vertex> verts;
        for (EdgeId e : comp) {
            auto [u, v] = g.edge(e);
            verts.push_back(u);
            verts.push_back(v);
        }
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        node.vertices = std::move(verts);
        node.is_block = node.edges.size() > 1;
        if (node.is_block)
            d.blocks.push_back(std::move(node));
        else
            d.bridges.push_back(std::move(node));
    }
    // Deterministic order: by smallest edge id.
    auto by_first_edge = [](const BNode& a, const BNode& b) { return a.edges[0] < b.edges[0]; };
    std::sort(d.blocks.begin(), d.blocks.end(), by_first_edge);
    std::sort(d.bridges.begin(), d.bridges.end(), by_first_edge);

    for (Vertex v = 0; v < g.order(); ++v)
        if (st.is_cut[v]) d.cutvertices.push_back(v);
    return d;
}

BCTree build_bc_tree(const LabeledGraph& g) {
    Decomposition d = decompose(g);
    BCTree t;
    t.b_nodes.reserve(d.blocks.size() + d.bridges.size());
    for (auto& b : d.blocks) t.b_nodes.push_back(std::move(b));
    for (auto& b : d.bridges) t.b_nodes.push_back(std::move(b));
    std::sort(t.b_nodes.begin(), t.b_nodes.end(),
              [](const BNode& a, const BNode& b) { return a.edges[0] < b.edges[0]; });

    t.cutvertices = d.cutvertices;
    t.cnode_of_vertex.assign(g.order(), -1);
    for (int i = 0; i < static_cast<int>(t.cutvertices.size()); ++i)
        t.cnode_of_vertex[t.cutvertices[i]] = i;

    t.bnodes_of_vertex.assign(g.order(), {});
    t.bnode_of_edge.assign(g.size(), -1);
    t.b_to_c.assign(t.b_nodes.size(), {});
    t.c_to_b.assign(t.cutvertices.size(), {});
    for (int bi = 0; bi < static_cast<int>(t.b_nodes.size()); ++bi) {
        const BNode& b = t.b_nodes[bi];
        for (EdgeId e : b.edges) t.bnode_of_edge[e] = bi;
        for (Vertex v : b.vertices) {
            t.bnodes_of_vertex[v].push_back(bi);
            int c = t.cnode_of_vertex[v];
            if (c >= 0) {
                t.b_to_c[bi].push_back(c);
                t.c_to_b[c].push_back(bi);
            }
        }
    }
    for (auto& v : t.c_to_b)
        t.max_c_degree = std::max(t.max_c_degree, static_cast<int>(v.size()));
    return t;
}

std::vector<Vertex> cc_of(const LabeledGraph& g, const std::vector<Vertex>& keep,
                          const std::vector<Vertex>& anchor) {
    std::vector<char> in_keep(g.order(), 0);
    for (Vertex v : keep) in_keep[v] = 1;
    std::vector<int> comp(g.order(), -1);
    int ncomp = 0;
    std::vector<Vertex> stack;
    for (Vertex s : keep) {
        if (comp[s] >= 0) continue;
        int id = ncomp++;
        comp[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (auto [w, e] : g.adj(v)) {
                (void)e;
                if (in_keep[w] && comp[w] < 0) {
                    comp[w] = id;
                    stack.push_back(w);
                }
            }
        }
    }
    int hit = -1;
    for (Vertex a : anchor) {
        if (a < 0 || a >= g.order() || !in_keep[a] || comp[a] < 0) continue;
        if (hit < 0)
            hit = comp[a];
        else if (hit != comp[a])
            throw std::invalid_argument("cc_of: anchor intersects more than one component");
    }
    if (hit < 0) throw std::invalid_argument("cc_of: anchor does not intersect kept vertices");
    std::vector<Vertex> out;
    for (Vertex v : keep)
        if (comp[v] == hit) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace opmcs
