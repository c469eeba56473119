#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "opmcs/cli.hpp"
#include "opmcs/generator.hpp"
#include "opmcs/io.hpp"
#include "opmcs/outerplanar.hpp"
#include "support.hpp"

using namespace opmcs;
using namespace opmcs::testing;
namespace fs = std::filesystem;

namespace {

const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "opmcs_io_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string file(const std::string& name, const std::string& content) {
    std::string path = (work_dir() / name).string();
    write_file(path, content);
    return path;
}

std::string graph_file(const std::string& name, const LabeledGraph& g) {
    LabelInterner labels;
    labels.ensure_numeric(8);
    return file(name, write_graph(g, labels));
}

// cli_main with captured streams
int run_cli(const std::vector<std::string>& args, std::string* out = nullptr,
            std::string* err = nullptr) {
    std::ostringstream o, e;
    auto* ob = std::cout.rdbuf(o.rdbuf());
    auto* eb = std::cerr.rdbuf(e.rdbuf());
    int rc = -1;
    try {
        rc = cli_main(args);
    } catch (...) {
        std::cout.rdbuf(ob);
        std::cerr.rdbuf(eb);
        throw;
    }
    std::cout.rdbuf(ob);
    std::cerr.rdbuf(eb);
    if (out) *out = o.str();
    if (err) *err = e.str();
    return rc;
}

void expect_parse_error(const std::string& text, int line, const std::string& needle) {
    LabelInterner labels;
    try {
        parse_graph(text, labels);
        FAIL("no exception for: " << needle);
    } catch (const ParseError& e) {
        CHECK(e.line() == line);
        CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
}

const char* kTriangleText =
    "# a triangle with two carbons and a nitrogen\n"
    "g 3 3\n"
    "v 0 C\n"
    "v 1 C\n"
    "v 2 N\n"
    "\n"
    "e 0 1 s\n"
    "e 1 2 s\n"
    "e 0 2 d\n";

}  // namespace

TEST_CASE("graph text parses with interned labels") {
    LabelInterner labels;
    auto g = parse_graph(kTriangleText, labels);
    CHECK(g.order() == 3);
    CHECK(g.size() == 3);
    CHECK(labels.name(g.vertex_label(0)) == "C");
    CHECK(labels.name(g.vertex_label(2)) == "N");
    CHECK(g.vertex_label(0) == g.vertex_label(1));
    CHECK(labels.name(g.edge_label(*g.edge_id(0, 2))) == "d");
    CHECK(labels.name(g.edge_label(*g.edge_id(0, 1))) == "s");
}

TEST_CASE("graph text failures carry the line number") {
    expect_parse_error("g 2 1\ng 2 1\n", 2, "repeated g");
    expect_parse_error("v 0 C\n", 1, "before g");
    expect_parse_error("e 0 1 s\n", 1, "before g");
    expect_parse_error("g 2\n", 1, "g line wants");
    expect_parse_error("g 2 x\n", 1, "edge count");
    expect_parse_error("g -2 1\n", 1, "negative");
    expect_parse_error("g 2 0\nv 5 C\n", 2, "out of range");
    expect_parse_error("g 2 0\nv 0 C\nv 0 C\n", 3, "repeated vertex");
    expect_parse_error("g 2 0\nv 0 C\nv 1 C\nq\n", 4, "unknown directive 'q'");
    expect_parse_error("g 2 1\nv 0 C\nv 1 C\ne 0 2 s\n", 4, "out of range");
    expect_parse_error("g 2 1\nv 0 C\nv 1 C\ne 1 1 s\n", 4, "self loop");
    expect_parse_error("g 3 3\nv 0 C\nv 1 C\nv 2 C\ne 0 1 s\ne 1 0 s\n", 6, "duplicate edge");
    expect_parse_error("g 3 3\nv 0 C\nv 1 C\nv 2 C\ne 0 1 s\n# done\n", 6, "expected 3 e lines");
    expect_parse_error("g 3 0\nv 0 C\nv 1 C\n", 3, "expected 3 v lines");
    expect_parse_error("", 0, "missing g line");
}

TEST_CASE("writing and reparsing preserves the graph including label names") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        auto g = gen_outerplanar(25, 1.2, 4.0, 3, 800 + seed);
        LabelInterner la;
        la.ensure_numeric(3);
        std::string text = write_graph(g, la);
        LabelInterner lb;
        auto h = parse_graph(text, lb);
        REQUIRE(h.order() == g.order());
        REQUIRE(h.size() == g.size());
        for (Vertex v = 0; v < g.order(); ++v)
            CHECK(lb.name(h.vertex_label(v)) == la.name(g.vertex_label(v)));
        for (EdgeId e = 0; e < g.size(); ++e) {
            CHECK(h.edge(e) == g.edge(e));
            CHECK(lb.name(h.edge_label(e)) == la.name(g.edge_label(e)));
        }
    }
}

namespace {

std::string mol_atom_line(const char* sym) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%10.4f%10.4f%10.4f %-3s 0  0  0  0  0  0  0  0  0  0  0  0",
                  0.0, 0.0, 0.0, sym);
    return buf;
}

std::string water_mol() {
    std::ostringstream os;
    os << "water\n  manual\n\n";
    os << "  3  2  0  0  0  0  0  0  0  0999 V2000\n";
    os << mol_atom_line("O") << "\n" << mol_atom_line("H") << "\n" << mol_atom_line("H") << "\n";
    os << "  1  2  1  0\n  1  3  1  0\n";
    os << "M  END\n";
    return os.str();
}

std::string benzene_mol() {
    std::ostringstream os;
    os << "benzene\n  manual\n\n";
    os << "  6  6  0  0  0  0  0  0  0  0999 V2000\n";
    for (int i = 0; i < 6; ++i) os << mol_atom_line("C") << "\n";
    for (int i = 1; i <= 6; ++i) {
        int j = i % 6 + 1;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%3d%3d%3d  0", i, j, i % 2 ? 1 : 2);
        os << buf << "\n";
    }
    os << "M  END\n";
    return os.str();
}

}  // namespace

TEST_CASE("mol files map atoms to vertex labels and bond orders to edge labels") {
    LabelInterner labels;
    auto w = parse_molfile(water_mol(), labels);
    CHECK(w.order() == 3);
    CHECK(w.size() == 2);
    CHECK(labels.name(w.vertex_label(0)) == "O");
    CHECK(labels.name(w.vertex_label(1)) == "H");
    CHECK(w.has_edge(0, 1));
    CHECK(w.has_edge(0, 2));
    CHECK(labels.name(w.edge_label(0)) == "1");

    auto b = parse_molfile(benzene_mol(), labels);
    CHECK(b.order() == 6);
    CHECK(b.size() == 6);
    CHECK(is_outerplanar(b));
    for (Vertex v = 0; v < 6; ++v) CHECK(labels.name(b.vertex_label(v)) == "C");
    CHECK(labels.name(b.edge_label(*b.edge_id(0, 1))) == "1");
    CHECK(labels.name(b.edge_label(*b.edge_id(1, 2))) == "2");
    CHECK(labels.name(b.edge_label(*b.edge_id(0, 5))) == "2");
}

TEST_CASE("mol file failures") {
    LabelInterner labels;
    CHECK_THROWS_AS(parse_molfile("just\ntwo\n", labels), ParseError);
    // counts line with garbage
    CHECK_THROWS_AS(parse_molfile("t\nt\n\n  x  2  0999 V2000\n", labels), ParseError);
    // atom block shorter than the count claims
    std::string trunc = "t\nt\n\n  2  1  0999 V2000\n" + mol_atom_line("C") + "\n";
    CHECK_THROWS_AS(parse_molfile(trunc, labels), ParseError);
    std::string base = "t\nt\n\n  2  1  0999 V2000\n" + mol_atom_line("C") + "\n" +
                       mol_atom_line("C") + "\n";
    CHECK_THROWS_AS(parse_molfile(base + "  1  3  1  0\n", labels), ParseError);  // range
    CHECK_THROWS_AS(parse_molfile(base + "  1  1  1  0\n", labels), ParseError);  // self bond
    std::string dup = "t\nt\n\n  2  2  0999 V2000\n" + mol_atom_line("C") + "\n" +
                      mol_atom_line("C") + "\n  1  2  1  0\n  2  1  1  0\n";
    CHECK_THROWS_AS(parse_molfile(dup, labels), ParseError);
    // atom line too short to hold a symbol
    CHECK_THROWS_AS(parse_molfile("t\nt\n\n  1  0  0999 V2000\n   0.0 C\n", labels), ParseError);
}

TEST_CASE("weight tables from text") {
    LabelInterner labels;
    int C = labels.id("C"), N = labels.id("N"), O = labels.id("O");
    int s = labels.id("s");

    SUBCASE("pairs apply to both orders and omissions forbid") {
        auto w = parse_weight_file("v C C 2\nv C N 1.5\ne s s 1\n", labels);
        CHECK(w.vertex(C, C) == Score{2.0});
        CHECK(w.vertex(C, N) == Score{1.5});
        CHECK(w.vertex(N, C) == Score{1.5});
        CHECK_FALSE(w.vertex(N, N).has_value());
        CHECK_FALSE(w.vertex(C, O).has_value());
        CHECK(w.edge(s, s) == Score{1.0});
        CHECK_FALSE(w.edge(s, labels.id("d")).has_value());
    }

    SUBCASE("later lines win and x erases both orders") {
        auto w = parse_weight_file("v C N 1\nv N C 3\nv C C 5\nv C C x\n", labels);
        CHECK(w.vertex(C, N) == Score{3.0});
        CHECK(w.vertex(N, C) == Score{3.0});
        CHECK_FALSE(w.vertex(C, C).has_value());
    }

    SUBCASE("comments and blanks are skipped") {
        auto w = parse_weight_file("# header\n\nv C C 1\n", labels);
        CHECK(w.vertex(C, C) == Score{1.0});
    }

    SUBCASE("rejects bad lines") {
        CHECK_THROWS_AS(parse_weight_file("w C C 1\n", labels), ParseError);
        CHECK_THROWS_AS(parse_weight_file("v C C\n", labels), ParseError);
        CHECK_THROWS_AS(parse_weight_file("v C C -2\n", labels), ParseError);
        CHECK_THROWS_AS(parse_weight_file("v C C abc\n", labels), ParseError);
        try {
            parse_weight_file("v C C 1\ne s s oops\n", labels);
            FAIL("no exception");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
        }
    }
}

TEST_CASE("result records serialize to one line of text or json") {
    ResultRecord r;
    r.a = "x.graph";
    r.b = "y.graph";
    r.weight = 6.0;
    r.vertex_map = {{0, 0}, {1, 2}, {2, 1}};
    r.mapped_edges = 3;
    r.elapsed_us = 12;
    r.valid = true;
    r.weight_match = true;
    CHECK(to_text(r) ==
          "a=x.graph b=y.graph weight=6 vertices=3 mapped_edges=3 elapsed_us=12 valid=1 "
          "weight_match=1");

    auto j = nlohmann::json::parse(to_json(r));
    CHECK(j["a"] == "x.graph");
    CHECK(j["weight"] == 6.0);
    CHECK(j["vertices"] == 3);
    CHECK(j["vertex_map"] == nlohmann::json::parse("[[0,0],[1,2],[2,1]]"));
    CHECK(j["mapped_edges"] == 3);
    CHECK(j["valid"] == true);
    CHECK(j["weight_match"] == true);

    ResultRecord bad;
    bad.a = "x";
    bad.b = "y";
    bad.error = "first input graph is not outerplanar";
    CHECK(to_text(bad) == "a=x b=y error=first input graph is not outerplanar");
    auto je = nlohmann::json::parse(to_json(bad));
    CHECK(je.size() == 3);
    CHECK(je["error"] == "first input graph is not outerplanar");
}

TEST_CASE("file helpers throw on unusable paths") {
    CHECK_THROWS_AS(read_file((work_dir() / "absent.graph").string()), std::runtime_error);
    CHECK_THROWS_AS(write_file((work_dir() / "no_dir" / "x").string(), "hi"), std::runtime_error);
    std::string p = file("echo.txt", "hello\n");
    CHECK(read_file(p) == "hello\n");
}

TEST_CASE("compare command") {
    std::string tri = file("tri.graph", kTriangleText);

    std::string out;
    CHECK(run_cli({"compare", tri, tri}, &out) == 0);
    CHECK(out.find("weight=6 vertices=3 mapped_edges=3") != std::string::npos);
    CHECK(out.find("valid=1 weight_match=1") != std::string::npos);

    SUBCASE("uniform weights ignore the labels") {
        // under label-eq the best map fixes N; uniform allows any rotation
        CHECK(run_cli({"compare", tri, tri, "--weights", "uniform"}, &out) == 0);
        CHECK(out.find("weight=6 ") != std::string::npos);
    }

    SUBCASE("weight files override scores") {
        std::string wf = file("scores.txt", "v C C 4\nv N N 4\nv C N 4\ne s s 1\ne d d 1\ne s d 1\n");
        CHECK(run_cli({"compare", tri, tri, "--weights", wf}, &out) == 0);
        CHECK(out.find("weight=15 ") != std::string::npos);  // 3*4 + 3*1
    }

    SUBCASE("json output") {
        CHECK(run_cli({"compare", tri, tri, "--json"}, &out) == 0);
        auto j = nlohmann::json::parse(out);
        CHECK(j["weight"] == 6.0);
        CHECK(j["valid"] == true);
        CHECK(j["vertex_map"].size() == 3);
    }

    SUBCASE("exit codes") {
        std::string k4f = graph_file("k4.graph", k4());
        std::string bad = file("bad.graph", "g 1 0\nv 0 C\nv 0 C\n");
        std::string err;
        CHECK(run_cli({"compare", tri, k4f}, &out, &err) == 2);
        CHECK(err.find("not outerplanar") != std::string::npos);
        CHECK(run_cli({"compare", tri, bad}, &out, &err) == 65);
        CHECK(run_cli({"compare", tri, (work_dir() / "nope.graph").string()}, &out, &err) == 65);
        CHECK(run_cli({"compare", tri}, &out, &err) == 64);
        CHECK(run_cli({"frobnicate", tri, tri}, &out, &err) == 64);
        CHECK(run_cli({}, &out, &err) == 64);
        CHECK(run_cli({"compare", tri, tri, "--weights", "no_such_mode_or_file"}, &out, &err) ==
              65);
        CHECK(run_cli({"--help"}, &out, &err) == 0);
    }
}

TEST_CASE("enumerate-2mcis lists every maximum biconnected piece") {
    std::string tri = file("tri2.graph", kTriangleText);
    std::string out;
    CHECK(run_cli({"compare", tri, tri, "--enumerate-2mcis", "--weights", "uniform"}, &out) == 0);
    std::istringstream lines(out);
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
        CHECK(line.find("weight=6 vertices=3") != std::string::npos);
        CHECK(line.find("valid=1 weight_match=1") != std::string::npos);
        ++count;
    }
    CHECK(count == 6);  // the automorphisms of a triangle

    std::string p3 = graph_file("p3.graph", path(3));
    std::string err;
    CHECK(run_cli({"compare", p3, tri, "--enumerate-2mcis"}, &out, &err) == 64);
    CHECK(err.find("biconnected") != std::string::npos);
    auto two = make(5, {{0, 1, 0}, {1, 2, 0}, {0, 2, 0}, {3, 4, 0}});
    std::string twof = graph_file("two_comp.graph", two);
    CHECK(run_cli({"compare", twof, tri, "--enumerate-2mcis"}, &out, &err) == 64);
}

TEST_CASE("check command cross-checks the solver") {
    std::string tri = file("tri3.graph", kTriangleText);
    std::string p4 = graph_file("p4.graph", path(4));
    std::string out;
    CHECK(run_cli({"check", tri, tri}, &out) == 0);
    CHECK(out.find("weight=6 oracle=6 agree") != std::string::npos);
    CHECK(run_cli({"check", tri, p4, "--weights", "uniform"}, &out) == 0);
    CHECK(out.find("agree") != std::string::npos);

    std::string big = graph_file("p11.graph", path(11));
    std::string err;
    CHECK(run_cli({"check", big, tri}, &out, &err) == 64);
    CHECK(err.find("guarded") != std::string::npos);
}

TEST_CASE("gen command writes reproducible parseable graphs") {
    std::string dir = (work_dir() / "gen_out").string();
    std::string out;
    CHECK(run_cli({"gen", "--n", "12", "--ratio", "1.2", "--block-size", "3", "--labels", "2",
                   "--seed", "9", "--count", "3", "--out", dir},
                  &out) == 0);
    std::istringstream lines(out);
    std::string line;
    int i = 0;
    while (std::getline(lines, line)) {
        CHECK(fs::exists(line));
        LabelInterner labels;
        auto g = parse_graph(read_file(line), labels);
        auto direct = gen_outerplanar(12, 1.2, 3.0, 2, 9 + static_cast<std::uint64_t>(i));
        REQUIRE(g.order() == direct.order());
        REQUIRE(g.size() == direct.size());
        for (EdgeId e = 0; e < g.size(); ++e) CHECK(g.edge(e) == direct.edge(e));
        for (Vertex v = 0; v < g.order(); ++v)
            CHECK(labels.name(g.vertex_label(v)) == std::to_string(direct.vertex_label(v)));
        ++i;
    }
    CHECK(i == 3);

    std::string err;
    CHECK(run_cli({"gen", "--n", "10", "--ratio", "1.9", "--block-size", "4", "--seed", "1",
                   "--out", dir},
                  &out, &err) == 64);
    CHECK(run_cli({"gen", "--n", "10", "--ratio", "1.2", "--out", dir}, &out, &err) == 64);
}

TEST_CASE("bench command produces the scaling table") {
    std::string csv = (work_dir() / "bench.csv").string();
    std::string out;
    CHECK(run_cli({"bench", "--sizes", "6,8", "--block-size", "3", "--reps", "2", "--seed", "5",
                   "--csv", csv},
                  &out) == 0);
    std::string content = read_file(csv);
    std::istringstream lines(content);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "size,ratio,block_size,reps,mean_ms,sd_ms");
    int rows = 0;
    while (std::getline(lines, line)) {
        CHECK(line.find("1.24,3,2,") != std::string::npos);
        ++rows;
    }
    CHECK(rows == 2);

    CHECK(run_cli({"bench", "--sizes", "6,8", "--block-size", "3", "--reps", "2", "--seed", "5"},
                  &out) == 0);
    CHECK(out.find("size,ratio") == 0);

    std::string err;
    CHECK(run_cli({"bench", "--sizes", "6,x"}, &out, &err) == 64);
    CHECK(run_cli({"bench", "--sizes", ""}, &out, &err) == 64);
}

TEST_CASE("batch command keeps input order at any thread count") {
    std::string tri = file("tri4.graph", kTriangleText);
    std::string sq = graph_file("sq.graph", square_chord());
    std::string k4f = graph_file("k4b.graph", k4());
    std::string pairs = file("pairs.tsv", "# header comment\n" + tri + "\t" + tri + "\n" + tri +
                                              " " + k4f + "\n\n" + sq + "\t" + tri + "\n");

    auto strip_timing = [](std::string s) {
        for (auto pos = s.find(" elapsed_us="); pos != std::string::npos;
             pos = s.find(" elapsed_us=", pos)) {
            auto end = s.find(' ', pos + 1);
            s.erase(pos, end - pos);
        }
        return s;
    };
    std::string out1, out3;
    CHECK(run_cli({"batch", pairs, "--weights", "uniform"}, &out1) == 0);
    CHECK(run_cli({"batch", pairs, "--weights", "uniform", "--jobs", "3"}, &out3) == 0);
    CHECK(strip_timing(out1) == strip_timing(out3));

    std::vector<std::string> lines;
    std::istringstream is(out1);
    std::string line;
    while (std::getline(is, line)) lines.push_back(line);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0].find("weight=6 ") != std::string::npos);
    CHECK(lines[1].find("error=") != std::string::npos);
    CHECK(lines[2].find("weight=") != std::string::npos);
    CHECK(lines[2].find(sq) == 2);  // a=<sq path>

    std::string badpairs = file("badpairs.tsv", tri + " " + tri + " extra\n");
    std::string err;
    CHECK(run_cli({"batch", badpairs}, &out1, &err) == 65);
    CHECK(run_cli({"batch", (work_dir() / "missing.tsv").string()}, &out1, &err) == 65);
}
