#include "opmcs/io.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace opmcs {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

int parse_int(const std::string& t, int line, const char* what) {
    char* end = nullptr;
    long v = std::strtol(t.c_str(), &end, 10);
    if (end == t.c_str() || *end != '\0' || v < -1000000000L || v > 1000000000L)
        throw ParseError(line, std::string("bad ") + what + " '" + t + "'");
    return static_cast<int>(v);
}

double parse_score(const std::string& t, int line) {
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0')
        throw ParseError(line, "bad score '" + t + "'");
    if (!(v >= 0.0)) throw ParseError(line, "scores must be >= 0, got '" + t + "'");
    return v;
}

// Fixed-column integer field of a MOL line, [pos, pos+3).
int mol_field(const std::string& line, std::size_t pos, int lineno, const char* what) {
    if (line.size() < pos + 1) throw ParseError(lineno, std::string("missing ") + what);
    std::string f = trim(line.substr(pos, 3));
    if (f.empty()) throw ParseError(lineno, std::string("missing ") + what);
    return parse_int(f, lineno, what);
}

}  // namespace

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

LabeledGraph parse_graph(const std::string& text, LabelInterner& labels) {
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    int n = -1, m = -1;
    std::vector<int> vlabel;
    std::vector<char> vseen;
    std::vector<std::tuple<int, int, int>> edges;
    std::set<std::pair<int, int>> eseen;
    int vcount = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto tok = tokens(t);
        if (tok[0] == "g") {
            if (n >= 0) throw ParseError(lineno, "repeated g line");
            if (tok.size() != 3) throw ParseError(lineno, "g line wants 'g <n> <m>'");
            n = parse_int(tok[1], lineno, "vertex count");
            m = parse_int(tok[2], lineno, "edge count");
            if (n < 0 || m < 0) throw ParseError(lineno, "negative counts");
            vlabel.assign(n, 0);
            vseen.assign(n, 0);
        } else if (tok[0] == "v") {
            if (n < 0) throw ParseError(lineno, "v line before g line");
            if (tok.size() != 3) throw ParseError(lineno, "v line wants 'v <id> <label>'");
            int id = parse_int(tok[1], lineno, "vertex id");
            if (id < 0 || id >= n) throw ParseError(lineno, "vertex id out of range");
            if (vseen[id]) throw ParseError(lineno, "repeated vertex id");
            vseen[id] = 1;
            vlabel[id] = labels.id(tok[2]);
            ++vcount;
        } else if (tok[0] == "e") {
            if (n < 0) throw ParseError(lineno, "e line before g line");
            if (tok.size() != 4) throw ParseError(lineno, "e line wants 'e <u> <v> <label>'");
            int u = parse_int(tok[1], lineno, "endpoint");
            int v = parse_int(tok[2], lineno, "endpoint");
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw ParseError(lineno, "edge endpoint out of range");
            if (u == v) throw ParseError(lineno, "self loop");
            auto key = std::minmax(u, v);
            if (!eseen.insert(key).second) throw ParseError(lineno, "duplicate edge");
            edges.emplace_back(u, v, labels.id(tok[3]));
        } else {
            throw ParseError(lineno, "unknown directive '" + tok[0] + "'");
        }
    }
    if (n < 0) throw ParseError(lineno, "missing g line");
    if (vcount != n)
        throw ParseError(lineno, "expected " + std::to_string(n) + " v lines, got " +
                                     std::to_string(vcount));
    if (static_cast<int>(edges.size()) != m)
        throw ParseError(lineno, "expected " + std::to_string(m) + " e lines, got " +
                                     std::to_string(edges.size()));
    return LabeledGraph(std::move(vlabel), edges);
}

std::string write_graph(const LabeledGraph& g, const LabelInterner& labels) {
    std::ostringstream os;
    os << "g " << g.order() << ' ' << g.size() << '\n';
    for (Vertex v = 0; v < g.order(); ++v)
        os << "v " << v << ' ' << labels.name(g.vertex_label(v)) << '\n';
    for (EdgeId e = 0; e < g.size(); ++e) {
        auto [u, v] = g.edge(e);
        os << "e " << u << ' ' << v << ' ' << labels.name(g.edge_label(e)) << '\n';
    }
    return os.str();
}

LabeledGraph parse_molfile(const std::string& text, LabelInterner& labels) {
    std::vector<std::string> lines;
    {
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            lines.push_back(line);
        }
    }
    if (lines.size() < 4) throw ParseError(static_cast<int>(lines.size()), "truncated header");
    const int counts_line = 4;
    int natoms = mol_field(lines[3], 0, counts_line, "atom count");
    int nbonds = mol_field(lines[3], 3, counts_line, "bond count");
    if (natoms < 0 || nbonds < 0) throw ParseError(counts_line, "negative counts");
    if (lines.size() < static_cast<std::size_t>(4 + natoms + nbonds))
        throw ParseError(static_cast<int>(lines.size()), "truncated atom or bond block");
    std::vector<int> vlabel(natoms);
    for (int i = 0; i < natoms; ++i) {
        const std::string& line = lines[4 + i];
        const int lineno = 5 + i;
        if (line.size() < 32) throw ParseError(lineno, "atom line too short");
        std::string sym = trim(line.substr(31, 3));
        if (sym.empty()) throw ParseError(lineno, "missing element symbol");
        vlabel[i] = labels.id(sym);
    }
    std::vector<std::tuple<int, int, int>> edges;
    edges.reserve(nbonds);
    std::set<std::pair<int, int>> eseen;
    for (int i = 0; i < nbonds; ++i) {
        const std::string& line = lines[4 + natoms + i];
        const int lineno = 5 + natoms + i;
        int a = mol_field(line, 0, lineno, "bond atom");
        int b = mol_field(line, 3, lineno, "bond atom");
        int t = mol_field(line, 6, lineno, "bond type");
        if (a < 1 || a > natoms || b < 1 || b > natoms)
            throw ParseError(lineno, "bond atom out of range");
        if (a == b) throw ParseError(lineno, "bond joins an atom to itself");
        auto key = std::minmax(a, b);
        if (!eseen.insert(key).second) throw ParseError(lineno, "duplicate bond");
        edges.emplace_back(a - 1, b - 1, labels.id(std::to_string(t)));
    }
    return LabeledGraph(std::move(vlabel), edges);
}

LabeledGraph load_graph_file(const std::string& path, LabelInterner& labels) {
    std::string text = read_file(path);
    auto dot = path.rfind('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot);
    if (ext == ".mol" || ext == ".sdf") return parse_molfile(text, labels);
    return parse_graph(text, labels);
}

WeightFn parse_weight_file(const std::string& text, LabelInterner& labels) {
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    std::unordered_map<std::uint64_t, double> vtab, etab;
    while (std::getline(is, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto tok = tokens(t);
        if (tok.size() != 4 || (tok[0] != "v" && tok[0] != "e"))
            throw ParseError(lineno, "want 'v|e <labelA> <labelB> <score|x>'");
        auto& tab = tok[0] == "v" ? vtab : etab;
        int la = labels.id(tok[1]);
        int lb = labels.id(tok[2]);
        if (tok[3] == "x") {
            tab.erase(WeightFn::key(la, lb));
            tab.erase(WeightFn::key(lb, la));
        } else {
            double s = parse_score(tok[3], lineno);
            tab[WeightFn::key(la, lb)] = s;
            tab[WeightFn::key(lb, la)] = s;
        }
    }
    return WeightFn::table(std::move(vtab), std::move(etab));
}

std::string to_text(const ResultRecord& r) {
    char num[64];
    std::snprintf(num, sizeof num, "%.10g", r.weight);
    std::ostringstream os;
    os << "a=" << r.a << " b=" << r.b;
    if (!r.error.empty()) {
        os << " error=" << r.error;
        return os.str();
    }
    os << " weight=" << num << " vertices=" << r.vertex_map.size()
       << " mapped_edges=" << r.mapped_edges << " elapsed_us=" << r.elapsed_us
       << " valid=" << (r.valid ? 1 : 0) << " weight_match=" << (r.weight_match ? 1 : 0);
    return os.str();
}

std::string to_json(const ResultRecord& r) {
    nlohmann::json j;
    j["a"] = r.a;
    j["b"] = r.b;
    if (!r.error.empty()) {
        j["error"] = r.error;
        return j.dump();
    }
    j["weight"] = r.weight;
    j["vertices"] = r.vertex_map.size();
    nlohmann::json vm = nlohmann::json::array();
    for (auto [gv, hv] : r.vertex_map) vm.push_back({gv, hv});
    j["vertex_map"] = std::move(vm);
    j["mapped_edges"] = r.mapped_edges;
    j["elapsed_us"] = r.elapsed_us;
    j["valid"] = r.valid;
    j["weight_match"] = r.weight_match;
    return j.dump();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + path);
}

}  // namespace opmcs
