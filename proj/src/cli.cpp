#include "opmcs/cli.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <thread>

#include "CLI11.hpp"
#include "opmcs/bbp.hpp"
#include "opmcs/bench.hpp"
#include "opmcs/generator.hpp"
#include "opmcs/io.hpp"
#include "opmcs/mcis2.hpp"
#include "opmcs/oracle.hpp"

namespace opmcs {

namespace {

using clock_type = std::chrono::steady_clock;

std::int64_t us_between(clock_type::time_point a, clock_type::time_point b) {
    return std::chrono::duration_cast<std::chrono::microseconds>(b - a).count();
}

WeightFn make_weights(const std::string& spec, LabelInterner& labels) {
    if (spec == "uniform") return WeightFn::uniform();
    if (spec == "label-eq") return WeightFn::label_equality();
    return parse_weight_file(read_file(spec), labels);
}

ResultRecord make_record(const std::string& pa, const std::string& pb, const LabeledGraph& a,
                         const LabeledGraph& b,
                         const std::vector<std::pair<Vertex, Vertex>>& phi, double weight,
                         std::int64_t elapsed_us, const WeightFn& w) {
    ResultRecord r;
    r.a = pa;
    r.b = pb;
    r.weight = weight;
    r.vertex_map = phi;
    r.elapsed_us = elapsed_us;
    for (EdgeId e = 0; e < a.size(); ++e) {
        auto [u, v] = a.edge(e);
        bool mu = false, mv = false;
        for (auto [gs, hs] : phi) {
            (void)hs;
            mu = mu || gs == u;
            mv = mv || gs == v;
        }
        if (mu && mv) ++r.mapped_edges;
    }
    if (phi.empty()) {
        r.valid = true;
        r.weight_match = weight == 0.0;
    } else {
        IsoReport rep = check_iso(a, b, phi, w);
        r.valid = rep.ok();
        r.weight_match = std::abs(rep.weight - weight) <= 1e-6;
    }
    return r;
}

void print_records(const std::vector<ResultRecord>& recs, bool json) {
    for (const ResultRecord& r : recs) std::cout << (json ? to_json(r) : to_text(r)) << '\n';
}

struct CompareArgs {
    std::string a, b;
    std::string weights = "label-eq";
    bool enumerate2 = false;
    bool json = false;
};

struct BatchArgs {
    std::string pairs;
    std::string weights = "label-eq";
    bool json = false;
    int jobs = 1;
};

struct GenArgs {
    int n = 40;
    double ratio = 1.24;
    double block_size = 8.0;
    int labels = 1;
    std::uint64_t seed = 1;
    int count = 1;
    std::string out;
};

struct BenchArgs {
    std::string sizes = "10,20,40,80,160";
    double ratio = 1.24;
    double block_size = 8.0;
    int reps = 100;
    std::uint64_t seed = 1;
    std::string csv;
};

struct CheckArgs {
    std::string a, b;
    std::string weights = "label-eq";
};

int run_compare(const CompareArgs& o) {
    LabelInterner labels;
    LabeledGraph a = load_graph_file(o.a, labels);
    LabeledGraph b = load_graph_file(o.b, labels);
    WeightFn w = make_weights(o.weights, labels);
    std::vector<ResultRecord> recs;
    if (o.enumerate2) {
        Decomposition da, db;
        try {
            da = decompose(a);
            db = decompose(b);
        } catch (const std::invalid_argument&) {
            std::cerr << "opmcs: --enumerate-2mcis wants connected biconnected graphs\n";
            return 64;
        }
        if (da.blocks.size() != 1 || !da.bridges.empty() || db.blocks.size() != 1 ||
            !db.bridges.empty()) {
            std::cerr << "opmcs: --enumerate-2mcis wants biconnected graphs (one block, "
                         "no bridges)\n";
            return 64;
        }
        EmbeddedBlock ea = embed_block(a, da.blocks[0]);
        EmbeddedBlock eb = embed_block(b, db.blocks[0]);
        auto t0 = clock_type::now();
        std::vector<BiconIso> pieces;
        mcis2_enumerate(ea, eb, w, [&](const BiconIso& p) { pieces.push_back(p); });
        std::int64_t us = us_between(t0, clock_type::now());
        for (const BiconIso& p : pieces)
            recs.push_back(make_record(o.a, o.b, a, b, p.vertex_map, p.weight, us, w));
    } else {
        auto t0 = clock_type::now();
        Isomorphism iso = bbp_mcis(a, b, w);
        std::int64_t us = us_between(t0, clock_type::now());
        recs.push_back(make_record(o.a, o.b, a, b, iso.vertex_map, iso.weight, us, w));
    }
    print_records(recs, o.json);
    return 0;
}

int run_batch(const BatchArgs& o) {
    std::string text = read_file(o.pairs);
    std::vector<std::pair<std::string, std::string>> pairs;
    {
        std::istringstream is(text);
        std::string line;
        int lineno = 0;
        while (std::getline(is, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            std::string stripped = line;
            auto first = stripped.find_first_not_of(" \t");
            if (first == std::string::npos || stripped[first] == '#') continue;
            std::istringstream ls(line);
            std::string pa, pb, extra;
            if (!(ls >> pa >> pb) || (ls >> extra))
                throw ParseError(lineno, "want two paths per line");
            pairs.emplace_back(std::move(pa), std::move(pb));
        }
    }
    LabelInterner labels;
    std::map<std::string, LabeledGraph> graphs;
    for (const auto& [pa, pb] : pairs) {
        if (!graphs.count(pa)) graphs.emplace(pa, load_graph_file(pa, labels));
        if (!graphs.count(pb)) graphs.emplace(pb, load_graph_file(pb, labels));
    }
    WeightFn w = make_weights(o.weights, labels);
    std::vector<ResultRecord> recs(pairs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < pairs.size(); i = next.fetch_add(1)) {
            const LabeledGraph& a = graphs.at(pairs[i].first);
            const LabeledGraph& b = graphs.at(pairs[i].second);
            try {
                auto t0 = clock_type::now();
                Isomorphism iso = bbp_mcis(a, b, w);
                std::int64_t us = us_between(t0, clock_type::now());
                recs[i] = make_record(pairs[i].first, pairs[i].second, a, b, iso.vertex_map,
                                      iso.weight, us, w);
            } catch (const NotOuterplanarError& e) {
                recs[i].a = pairs[i].first;
                recs[i].b = pairs[i].second;
                recs[i].error = e.what();
            }
        }
    };
    const int jobs = std::max(1, std::min<int>(o.jobs, static_cast<int>(pairs.size())));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    print_records(recs, o.json);
    return 0;
}

int run_gen(const GenArgs& o) {
    std::filesystem::create_directories(o.out);
    LabelInterner labels;
    labels.ensure_numeric(o.labels);
    for (int i = 0; i < o.count; ++i) {
        LabeledGraph g =
            gen_outerplanar(o.n, o.ratio, o.block_size, o.labels, o.seed + static_cast<std::uint64_t>(i));
        char name[32];
        std::snprintf(name, sizeof name, "g_%03d.graph", i);
        std::string path = (std::filesystem::path(o.out) / name).string();
        write_file(path, write_graph(g, labels));
        std::cout << path << '\n';
    }
    return 0;
}

int run_bench_cmd(const BenchArgs& o) {
    std::vector<int> sizes;
    {
        std::istringstream is(o.sizes);
        std::string part;
        while (std::getline(is, part, ',')) {
            char* end = nullptr;
            long v = std::strtol(part.c_str(), &end, 10);
            if (end == part.c_str() || *end != '\0' || v < 1) {
                std::cerr << "opmcs: bad --sizes entry '" << part << "'\n";
                return 64;
            }
            sizes.push_back(static_cast<int>(v));
        }
        if (sizes.empty()) {
            std::cerr << "opmcs: --sizes is empty\n";
            return 64;
        }
    }
    std::vector<BenchRow> rows = run_bench(sizes, o.ratio, o.block_size, o.reps, o.seed);
    std::string csv = bench_csv(rows);
    if (o.csv.empty())
        std::cout << csv;
    else
        write_file(o.csv, csv);
    return 0;
}

int run_check(const CheckArgs& o) {
    LabelInterner labels;
    LabeledGraph a = load_graph_file(o.a, labels);
    LabeledGraph b = load_graph_file(o.b, labels);
    if (a.order() > 10 || b.order() > 10) {
        std::cerr << "opmcs: check is guarded to 10 vertices per graph\n";
        return 64;
    }
    WeightFn w = make_weights(o.weights, labels);
    Isomorphism iso = bbp_mcis(a, b, w);
    BruteResult ref = brute_bbp_mcis(a, b, w);
    bool agree = std::abs(iso.weight - ref.weight) <= 1e-9;
    if (agree && !iso.vertex_map.empty()) {
        agree = check_iso(a, b, iso.vertex_map, w).ok() &&
                std::binary_search(ref.witnesses.begin(), ref.witnesses.end(), iso.vertex_map);
    }
    char wa[64], wb[64];
    std::snprintf(wa, sizeof wa, "%.10g", iso.weight);
    std::snprintf(wb, sizeof wb, "%.10g", ref.weight);
    std::cout << "weight=" << wa << " oracle=" << wb << ' ' << (agree ? "agree" : "MISMATCH")
              << '\n';
    return agree ? 0 : 1;
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
    CLI::App app{"maximum common substructures of outerplanar graphs"};
    app.require_subcommand(1);

    CompareArgs cmp;
    CLI::App* c_cmp = app.add_subcommand("compare", "best common substructure of two graphs");
    c_cmp->add_option("A", cmp.a, "first graph file")->required();
    c_cmp->add_option("B", cmp.b, "second graph file")->required();
    c_cmp->add_option("--weights", cmp.weights, "uniform|label-eq|FILE");
    c_cmp->add_flag("--enumerate-2mcis", cmp.enumerate2,
                    "emit every maximum biconnected piece (biconnected inputs only)");
    c_cmp->add_flag("--json", cmp.json, "JSON records");

    BatchArgs bat;
    CLI::App* c_bat = app.add_subcommand("batch", "compare many pairs from a TSV file");
    c_bat->add_option("pairs", bat.pairs, "file with two graph paths per line")->required();
    c_bat->add_option("--weights", bat.weights, "uniform|label-eq|FILE");
    c_bat->add_flag("--json", bat.json, "JSON records");
    c_bat->add_option("--jobs", bat.jobs, "worker threads")->check(CLI::PositiveNumber);

    GenArgs gen;
    CLI::App* c_gen = app.add_subcommand("gen", "write random connected outerplanar graphs");
    c_gen->add_option("--n", gen.n, "vertex count")->required();
    c_gen->add_option("--ratio", gen.ratio, "edge/vertex ratio")->required();
    c_gen->add_option("--block-size", gen.block_size, "mean block size")->required();
    c_gen->add_option("--labels", gen.labels, "alphabet size");
    c_gen->add_option("--seed", gen.seed, "base seed")->required();
    c_gen->add_option("--count", gen.count, "number of graphs")->check(CLI::PositiveNumber);
    c_gen->add_option("--out", gen.out, "output directory")->required();

    BenchArgs ben;
    CLI::App* c_ben = app.add_subcommand("bench", "runtime scaling over generated pairs");
    c_ben->add_option("--sizes", ben.sizes, "comma separated vertex counts");
    c_ben->add_option("--ratio", ben.ratio, "edge/vertex ratio");
    c_ben->add_option("--block-size", ben.block_size, "mean block size");
    c_ben->add_option("--reps", ben.reps, "pairs per size")->check(CLI::PositiveNumber);
    c_ben->add_option("--seed", ben.seed, "base seed");
    c_ben->add_option("--csv", ben.csv, "write CSV here instead of stdout");

    CheckArgs chk;
    CLI::App* c_chk = app.add_subcommand("check", "cross-check against the exhaustive solver");
    c_chk->add_option("A", chk.a, "first graph file")->required();
    c_chk->add_option("B", chk.b, "second graph file")->required();
    c_chk->add_option("--weights", chk.weights, "uniform|label-eq|FILE");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(std::move(rev));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        if (c_cmp->parsed()) return run_compare(cmp);
        if (c_bat->parsed()) return run_batch(bat);
        if (c_gen->parsed()) return run_gen(gen);
        if (c_ben->parsed()) return run_bench_cmd(ben);
        if (c_chk->parsed()) return run_check(chk);
    } catch (const NotOuterplanarError& e) {
        std::cerr << "opmcs: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "opmcs: " << e.what() << '\n';
        return 65;
    } catch (const std::invalid_argument& e) {
        std::cerr << "opmcs: " << e.what() << '\n';
        return 64;
    } catch (const std::runtime_error& e) {
        std::cerr << "opmcs: " << e.what() << '\n';
        return 65;
    }
    return 64;
}

}  // namespace opmcs
