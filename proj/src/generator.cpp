#include "opmcs/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace opmcs {

namespace {

// Bounded draws on top of the standardized mt19937_64 stream; the modulo bias
// is irrelevant at these ranges and keeps the output platform independent.
int draw_below(std::mt19937_64& rng, std::size_t k) {
    return static_cast<int>(rng() % static_cast<std::uint64_t>(k));
}

bool draw_bernoulli(std::mt19937_64& rng, double p) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

// Rounds x to an adjacent integer with expectation x.
long dither(std::mt19937_64& rng, double x) {
    double f = std::floor(x);
    return static_cast<long>(f) + (draw_bernoulli(rng, x - f) ? 1 : 0);
}

// Diagonals of a random triangulation of the polygon piece lo..hi (closed by
// the chord or boundary edge hi-lo); s-gon calls collect exactly s-3 pairs.
void triangulate(std::mt19937_64& rng, int lo, int hi, std::vector<std::pair<int, int>>& out) {
    if (hi - lo < 2) return;
    int k = lo + 1 + draw_below(rng, static_cast<std::size_t>(hi - lo - 1));
    if (k - lo >= 2) out.emplace_back(lo, k);
    if (hi - k >= 2) out.emplace_back(k, hi);
    triangulate(rng, lo, k, out);
    triangulate(rng, k, hi, out);
}

}  // namespace

LabeledGraph gen_outerplanar(int n, double ratio, double avg_block, int labels,
                             std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_outerplanar: n must be >= 1");
    if (!(ratio > 0.0 && ratio < 2.0))
        throw std::invalid_argument("gen_outerplanar: ratio must lie in (0, 2)");
    if (!(avg_block >= 2.0))
        throw std::invalid_argument("gen_outerplanar: avg_block must be >= 2");
    if (labels < 1) throw std::invalid_argument("gen_outerplanar: labels must be >= 1");

    std::mt19937_64 rng(seed);
    if (n == 1) return LabeledGraph({draw_below(rng, labels)}, {});

    if (avg_block > static_cast<double>(n))
        throw std::invalid_argument("gen_outerplanar: avg_block exceeds the graph order");

    const long m_lo = n - 1;
    const long m_hi = 2L * n - 3;
    const double m_target = ratio * n;
    if (std::ceil(m_target) < static_cast<double>(m_lo) ||
        std::floor(m_target) > static_cast<double>(m_hi))
        throw std::invalid_argument(
            "gen_outerplanar: no connected outerplanar graph matches this ratio at this order");
    const long m = std::clamp(dither(rng, m_target), m_lo, m_hi);

    // Independent cycles to realize: one per block plus one per chord.
    const long delta = m - (n - 1);

    // A tree of k B-nodes glued at single cutvertices has mean node order
    // 1 + (n-1)/k whatever the block/bridge mix, so k alone steers the block
    // size average. k <= n-1-delta keeps enough chord capacity; with no
    // cycles every node is a bridge and k is forced to n-1.
    long k, kb;
    if (delta == 0) {
        k = n - 1;
        kb = 0;
    } else {
        const long k_cap = std::min<long>(n - 1, (n - 1) - delta);
        k = std::clamp(dither(rng, (n - 1) / (avg_block - 1.0)), 1L, k_cap);
        // Block share of the k nodes, matching how often a node drawn around
        // the target mean would reach three vertices.
        const double q = 1.0 - std::exp(-(avg_block - 2.0));
        kb = std::clamp(dither(rng, q * static_cast<double>(k)), 1L,
                        std::min({delta, k, (n - 1) - k}));
    }
    const long r = k - kb;  // bridge nodes

    // Block orders: each block starts as a triangle, the remaining vertex
    // budget lands uniformly.
    std::vector<int> bsize(static_cast<std::size_t>(kb), 3);
    if (kb > 0) {
        long spare = (n - 1 - r) - 2 * kb;
        for (long i = 0; i < spare; ++i) bsize[draw_below(rng, bsize.size())] += 1;
    }

    // Chords land uniformly over the free diagonal slots of all blocks.
    std::vector<int> chords(static_cast<std::size_t>(kb), 0);
    {
        std::vector<int> slots;
        for (std::size_t j = 0; j < bsize.size(); ++j)
            for (int s = 0; s < bsize[j] - 3; ++s) slots.push_back(static_cast<int>(j));
        long want = delta - kb;
        for (long i = 0; i < want; ++i) {
            std::size_t pick = static_cast<std::size_t>(i) +
                               static_cast<std::size_t>(draw_below(rng, slots.size() - i));
            std::swap(slots[static_cast<std::size_t>(i)], slots[pick]);
            chords[slots[static_cast<std::size_t>(i)]] += 1;
        }
    }

    // Attach the shuffled nodes one by one at uniformly random glue vertices.
    struct Node {
        int size;
        int chords;
    };
    std::vector<Node> nodes;
    nodes.reserve(static_cast<std::size_t>(k));
    for (std::size_t j = 0; j < bsize.size(); ++j) nodes.push_back({bsize[j], chords[j]});
    for (long j = 0; j < r; ++j) nodes.push_back({2, 0});
    for (std::size_t i = nodes.size(); i > 1; --i)
        std::swap(nodes[i - 1], nodes[draw_below(rng, i)]);

    std::vector<int> vlabel;
    vlabel.reserve(static_cast<std::size_t>(n));
    std::vector<std::tuple<int, int, int>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    auto new_vertex = [&] {
        vlabel.push_back(draw_below(rng, labels));
        return static_cast<int>(vlabel.size()) - 1;
    };

    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Node& nd = nodes[i];
        const int glue = i == 0 ? -1 : draw_below(rng, vlabel.size());
        if (nd.size == 2) {
            int a = glue < 0 ? new_vertex() : glue;
            edges.emplace_back(a, new_vertex(), draw_below(rng, labels));
            continue;
        }
        std::vector<int> ring(static_cast<std::size_t>(nd.size));
        const int gpos = glue < 0 ? -1 : draw_below(rng, ring.size());
        for (std::size_t p = 0; p < ring.size(); ++p)
            ring[p] = static_cast<int>(p) == gpos ? glue : new_vertex();
        for (std::size_t p = 0; p < ring.size(); ++p)
            edges.emplace_back(ring[p], ring[(p + 1) % ring.size()], draw_below(rng, labels));
        std::vector<std::pair<int, int>> diag;
        triangulate(rng, 0, nd.size - 1, diag);
        for (int c = 0; c < nd.chords; ++c) {
            std::size_t pick = static_cast<std::size_t>(c) +
                               static_cast<std::size_t>(draw_below(rng, diag.size() - c));
            std::swap(diag[static_cast<std::size_t>(c)], diag[pick]);
            auto [a, b] = diag[static_cast<std::size_t>(c)];
            edges.emplace_back(ring[static_cast<std::size_t>(a)],
                               ring[static_cast<std::size_t>(b)], draw_below(rng, labels));
        }
    }

    return LabeledGraph(std::move(vlabel), edges);
}

}  // namespace opmcs
