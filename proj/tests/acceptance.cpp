// Acceptance gate: one PASS/FAIL line per criterion, exit code = failures.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "opmcs/bbp.hpp"
#include "opmcs/bench.hpp"
#include "opmcs/generator.hpp"
#include "opmcs/mcis2.hpp"
#include "opmcs/oracle.hpp"
#include "opmcs/outerplanar.hpp"

using namespace opmcs;

namespace {

using clock_type = std::chrono::steady_clock;
using Phi = std::vector<std::pair<Vertex, Vertex>>;

// check_iso tally shared by the criteria that produce isomorphisms
struct InvariantTally {
    long checked = 0;
    long failed = 0;
    void count(const LabeledGraph& a, const LabeledGraph& b, const Phi& phi, const WeightFn& w,
               double claimed) {
        ++checked;
        if (phi.empty()) {
            if (claimed != 0.0) ++failed;
            return;
        }
        IsoReport rep = check_iso(a, b, phi, w);
        if (!rep.ok() || rep.weight != claimed) ++failed;
    }
};

InvariantTally tally;

// connected outerplanar graph with n vertices and exactly m edges on average
LabeledGraph draw_graph(std::mt19937_64& rng, int n_lo, int n_hi, int labels,
                        std::uint64_t seed) {
    int n = n_lo + static_cast<int>(rng() % static_cast<std::uint64_t>(n_hi - n_lo + 1));
    if (n == 1) return gen_outerplanar(1, 1.0, 2.0, labels, seed);
    int m_hi = std::max(n - 1, 2 * n - 3);
    int m = n - 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(m_hi - (n - 1) + 1));
    double avg_block = 2.0 + static_cast<double>(rng() % static_cast<std::uint64_t>(n - 1));
    return gen_outerplanar(n, static_cast<double>(m) / n, avg_block, labels, seed);
}

// biconnected graph: a single block of order s (>= 3) with m in [s, 2s-3]
LabeledGraph draw_block(std::mt19937_64& rng, int s_lo, int s_hi, int labels,
                        std::uint64_t seed) {
    int s = s_lo + static_cast<int>(rng() % static_cast<std::uint64_t>(s_hi - s_lo + 1));
    int m = s + static_cast<int>(rng() % static_cast<std::uint64_t>(s - 2));
    m = std::min(m, 2 * s - 3);
    for (int attempt = 0; attempt < 50; ++attempt, seed += 1000003) {
        auto g = gen_outerplanar(s, static_cast<double>(m) / s, static_cast<double>(s), labels,
                                 seed);
        auto d = decompose(g);
        if (d.blocks.size() == 1 && d.bridges.empty()) return g;
    }
    throw std::runtime_error("draw_block: no biconnected sample");
}

bool criterion1(std::string& detail) {
    std::mt19937_64 rng(101);
    auto wu = WeightFn::uniform();
    auto wl = WeightFn::label_equality();
    long mismatches = 0;
    const int pairs = 1000;
    for (int i = 0; i < pairs; ++i) {
        auto a = draw_graph(rng, 2, 9, 2, 50000 + 2 * i);
        auto b = draw_graph(rng, 2, 9, 2, 50001 + 2 * i);
        const WeightFn& w = i % 2 ? wu : wl;
        auto iso = bbp_mcis(a, b, w);
        auto ref = brute_bbp_mcis(a, b, w);
        if (iso.weight != ref.weight) ++mismatches;
        tally.count(a, b, iso.vertex_map, w, iso.weight);
        if (!iso.empty() &&
            !std::binary_search(ref.witnesses.begin(), ref.witnesses.end(), iso.vertex_map))
            ++mismatches;
    }
    detail = std::to_string(pairs) + " pairs <=9 vertices, 2 labels, " +
             std::to_string(mismatches) + " mismatches vs exhaustive search";
    return mismatches == 0;
}

bool criterion2(std::string& detail) {
    std::mt19937_64 rng(202);
    auto wu = WeightFn::uniform();
    auto wl = WeightFn::label_equality();
    long mismatches = 0;
    const int pairs = 500;
    for (int i = 0; i < pairs; ++i) {
        auto a = draw_block(rng, 3, 7, 2, 90000 + 2 * i);
        auto b = draw_block(rng, 3, 7, 2, 90001 + 2 * i);
        auto da = decompose(a);
        auto db = decompose(b);
        auto ea = embed_block(a, da.blocks[0]);
        auto eb = embed_block(b, db.blocks[0]);
        const WeightFn& w = i % 2 ? wu : wl;

        auto ref = brute_2mcis(a, b, w);
        auto res = mcis2_weight(ea, eb, w);
        if (res.weight != ref.weight) ++mismatches;

        std::vector<Phi> got;
        mcis2_enumerate(ea, eb, w, [&](const BiconIso& p) {
            got.push_back(p.vertex_map);
            tally.count(a, b, p.vertex_map, w, p.weight);
        });
        std::sort(got.begin(), got.end());
        if (got != ref.witnesses) ++mismatches;
    }
    detail = std::to_string(pairs) + " biconnected pairs <=7 vertices, " +
             std::to_string(mismatches) +
             " weight or witness-set mismatches vs exhaustive search";
    return mismatches == 0;
}

std::string fmt(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

bool criterion3(std::string& detail) {
    auto rows = run_bench({10, 20, 40, 80, 160}, 1.24, 8.0, 100, 1);
    bool ok = true;
    detail = "means(ms)";
    for (const auto& r : rows) detail += " " + std::to_string(r.size) + ":" + fmt(r.mean_ms);
    detail += ", adjacent ratios";
    for (std::size_t i = 1; i < rows.size(); ++i) {
        double ratio = rows[i].mean_ms / rows[i - 1].mean_ms;
        detail += " " + fmt(ratio);
        if (!(ratio >= 2.5 && ratio <= 6.0)) ok = false;
    }
    detail += " (want each in [2.5, 6.0])";
    return ok;
}

bool criterion4(std::string& detail) {
    auto small = run_bench({40}, 1.24, 3.0, 100, 2);
    auto large = run_bench({40}, 1.24, 40.0, 100, 2);
    double factor = small[0].mean_ms / large[0].mean_ms;
    detail = "n=40 mean ms: block size 3 -> " + fmt(small[0].mean_ms) + ", block size 40 -> " +
             fmt(large[0].mean_ms) + ", factor " + fmt(factor) + " (want >= 1.5)";
    return factor >= 1.5;
}

bool criterion5(std::string& detail) {
    auto sparse = run_bench({40}, 0.98, 8.0, 100, 3);
    auto dense = run_bench({40}, 1.78, 8.0, 100, 3);
    double factor = dense[0].mean_ms / sparse[0].mean_ms;
    detail = "n=40 mean ms: ratio 0.98 -> " + fmt(sparse[0].mean_ms) + ", ratio 1.78 -> " +
             fmt(dense[0].mean_ms) + ", factor " + fmt(factor) + " (want >= 5)";
    return factor >= 5.0;
}

bool criterion6(std::string& detail) {
    auto w = WeightFn::label_equality();
    const int pairs = 1000;
    double total_ms = 0.0, max_ms = 0.0;
    for (int i = 0; i < pairs; ++i) {
        auto a = gen_outerplanar(22, 1.1, 6.0, 8, 700000 + 2 * i);
        auto b = gen_outerplanar(22, 1.1, 6.0, 8, 700001 + 2 * i);
        auto t0 = clock_type::now();
        auto iso = bbp_mcis(a, b, w);
        double ms = std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
        total_ms += ms;
        max_ms = std::max(max_ms, ms);
        tally.count(a, b, iso.vertex_map, w, iso.weight);
    }
    detail = "molecule-like regime (n=22, 8 labels): mean " + fmt(total_ms / pairs) +
             " ms, max " + fmt(max_ms) + " ms over " + std::to_string(pairs) +
             " pairs (soft target < 50 ms per pair" +
             (max_ms < 50.0 ? ", met)" : ", MISSED; logged, not asserted)");
    return true;  // soft criterion, logged only
}

bool criterion7(std::string& detail) {
    std::mt19937_64 rng(707);
    auto wu = WeightFn::uniform();
    auto wl = WeightFn::label_equality();
    long write_violations = 0, lemma_violations = 0, piece_failures = 0;
    const int pairs = 200;
    for (int i = 0; i < pairs; ++i) {
        auto a = draw_block(rng, 4, 12, 2, 400000 + 2 * i);
        auto b = draw_block(rng, 4, 12, 2, 400001 + 2 * i);
        auto ea = embed_block(a, decompose(a).blocks[0]);
        auto eb = embed_block(b, decompose(b).blocks[0]);
        const WeightFn& w = i % 2 ? wu : wl;

        auto stats = scan_block_pair(ea, eb, w, [&](const BiconIso& p) {
            IsoReport rep = check_iso(a, b, p.vertex_map, w);
            if (!rep.ok() || rep.weight != p.weight) ++piece_failures;
        });
        if (stats.repeated_writes != 0) ++write_violations;

        // every committed edge of a maximal isomorphism reseeds exactly it
        for (int eg = 0; eg < ea.size(); ++eg)
            for (int eh = 0; eh < eb.size(); ++eh)
                for (int tv = 1; tv <= 4; ++tv) {
                    MappingType t = MappingType::from_value(tv);
                    if (!type_valid(ea, eb, eg, eh, t)) continue;
                    BiconIso phi = maximal_iso(ea, eb, eg, eh, t);
                    for (auto [src, img, ty] : phi.edge_types) {
                        BiconIso psi = maximal_iso(ea, eb, ea.local_edge(src),
                                                   eb.local_edge(img), MappingType::from_value(ty));
                        if (psi.vertex_map != phi.vertex_map || psi.edge_types != phi.edge_types)
                            ++lemma_violations;
                    }
                }
    }
    bool ok = write_violations == 0 && lemma_violations == 0 && piece_failures == 0 &&
              tally.failed == 0;
    detail = std::to_string(pairs) + " block pairs: " + std::to_string(write_violations) +
             " table rewrite violations, " + std::to_string(lemma_violations) +
             " seed determinism violations, " + std::to_string(piece_failures) +
             " invalid pieces; " + std::to_string(tally.checked) +
             " isomorphisms checked across criteria, " + std::to_string(tally.failed) +
             " failed";
    return ok;
}

bool criterion8(std::string& detail) {
    std::mt19937_64 rng(808);
    long failures = 0;
    const int graphs = 100;
    for (int i = 0; i < graphs; ++i) {
        auto g = draw_graph(rng, 2, 40, 3, 600000 + i);
        auto iso = bbp_mcis(g, g, WeightFn::uniform());
        if (iso.weight != static_cast<double>(g.order() + g.size())) ++failures;
    }
    detail = std::to_string(graphs) + " connected graphs, " + std::to_string(failures) +
             " with self-map weight != |V|+|E|";
    return failures == 0;
}

}  // namespace

int main() {
    struct Criterion {
        int index;
        bool (*run)(std::string&);
    };
    const Criterion all[] = {{1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
                             {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8}};
    int failures = 0;
    for (const auto& c : all) {
        std::string detail;
        bool pass = false;
        auto t0 = clock_type::now();
        try {
            pass = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
        std::printf("%s criterion %d: %s [%.1fs]\n", pass ? "PASS" : "FAIL", c.index,
                    detail.c_str(), secs);
        std::fflush(stdout);
        if (!pass) ++failures;
    }
    return failures;
}
