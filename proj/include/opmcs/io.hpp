#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "opmcs/graph.hpp"
#include "opmcs/weights.hpp"

namespace opmcs {

// Parse failure carrying the 1-based input line.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message);
    int line() const { return line_; }

private:
    int line_;
};

// Text graph format, one record per file:
//   g <n> <m>
//   v <id> <label>      exactly n lines, ids 0..n-1, each once
//   e <u> <v> <label>   exactly m lines, no duplicates or self loops
// Blank lines and lines starting with # are ignored. Labels are arbitrary
// non-whitespace tokens, interned into labels.
LabeledGraph parse_graph(const std::string& text, LabelInterner& labels);
std::string write_graph(const LabeledGraph& g, const LabelInterner& labels);

// MOL V2000 subset: three header lines, fixed-column counts line, atom block
// (element symbol becomes the vertex label), bond block (bond order digit
// becomes the edge label). Hydrogens are kept as written.
LabeledGraph parse_molfile(const std::string& text, LabelInterner& labels);

// Reads path and parses it; .mol and .sdf use parse_molfile, anything else
// the text graph format. Throws std::runtime_error when unreadable.
LabeledGraph load_graph_file(const std::string& path, LabelInterner& labels);

// Weight table text:
//   v <labelA> <labelB> <score|x>
//   e <labelA> <labelB> <score|x>
// Scores are reals >= 0; x forbids the pair. Every line applies to both
// orders of the pair; later lines win; unlisted pairs are forbidden.
WeightFn parse_weight_file(const std::string& text, LabelInterner& labels);

// One comparison outcome, serialized by to_text or to_json (one line each).
struct ResultRecord {
    std::string a, b;  // input ids, normally the file paths
    double weight = 0.0;
    std::vector<std::pair<Vertex, Vertex>> vertex_map;
    int mapped_edges = 0;
    std::int64_t elapsed_us = 0;
    bool valid = false;         // checker accepted the mapping
    bool weight_match = false;  // checker recomputed the same weight
    std::string error;          // nonempty when the pair failed entirely
};

std::string to_text(const ResultRecord& r);
std::string to_json(const ResultRecord& r);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace opmcs
