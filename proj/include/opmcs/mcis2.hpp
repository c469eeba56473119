#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "opmcs/outerplanar.hpp"
#include "opmcs/weights.hpp"

namespace opmcs {

// How an edge mapping relates the two canonical face slots and the two
// endpoints: 1=(keep,keep), 2=(swap,keep), 3=(keep,swap), 4=(swap,swap).
struct MappingType {
    bool endpoint_swap = false;
    bool face_swap = false;
    int value() const { return 1 + (endpoint_swap ? 1 : 0) + (face_swap ? 2 : 0); }
    static MappingType from_value(int t) { return {(t - 1) % 2 == 1, (t - 1) / 2 == 1}; }
    bool operator==(const MappingType& o) const {
        return endpoint_swap == o.endpoint_swap && face_swap == o.face_swap;
    }
};

// A common biconnected induced subgraph isomorphism between two embedded
// blocks. Vertices and edges are host graph ids; faces are local face ids.
struct BiconIso {
    std::vector<std::pair<Vertex, Vertex>> vertex_map;        // sorted by source
    std::vector<std::tuple<EdgeId, EdgeId, int>> edge_types;  // (source, image, type)
    std::vector<std::pair<int, int>> faces;                   // mapped inner face pairs
    double weight = 0.0;
    bool empty() const { return vertex_map.empty(); }
};

struct Mcis2Stats {
    uint64_t seeds = 0;
    uint64_t maximal_calls = 0;
    uint64_t walk_steps = 0;
    uint64_t split_steps = 0;
    uint64_t table_writes = 0;
    uint64_t cells_defined = 0;
    uint64_t repeated_writes = 0;  // writes into an already defined cell; stays 0
    uint64_t ops() const { return seeds + walk_steps + split_steps; }
    void absorb(const Mcis2Stats& o);
};

struct Mcis2Result {
    double weight = 0.0;
    std::optional<BiconIso> witness;
    Mcis2Stats stats;
};

// True iff the type pairs at least one inner face of local edge eg with an
// inner face of local edge eh of equal boundary length.
bool type_valid(const EmbeddedBlock& bg, const EmbeddedBlock& bh, int eg, int eh, MappingType t);

// The unique maximal common biconnected isomorphism seeded by mapping local
// edge eg to eh with type t. Purely structural; weights are not consulted.
// Requires type_valid(bg, bh, eg, eh, t).
BiconIso maximal_iso(const EmbeddedBlock& bg, const EmbeddedBlock& bh, int eg, int eh,
                     MappingType t);

// Splits phi at forbidden vertex pairs, edge pairs and excluded vertices into
// the maximal pieces that are again biconnected induced isomorphisms with
// nonnegative weight. exclude_g lists host vertex ids of bg to treat as
// forbidden regardless of the weight function.
std::vector<BiconIso> split_iso(const EmbeddedBlock& bg, const EmbeddedBlock& bh,
                                const BiconIso& phi, const WeightFn& w,
                                const std::vector<Vertex>* exclude_g = nullptr);

// One full table sweep over all seed triples; visit sees every split piece of
// every maximal isomorphism exactly once.
Mcis2Stats scan_block_pair(const EmbeddedBlock& bg, const EmbeddedBlock& bh, const WeightFn& w,
                           const std::function<void(const BiconIso&)>& visit);

// Maximum weight over all biconnected common induced subgraph isomorphisms,
// with a witness; weight 0 and no witness when none exists. When fixed is
// given only pieces mapping fixed.first to fixed.second compete.
Mcis2Result mcis2_weight(const EmbeddedBlock& bg, const EmbeddedBlock& bh, const WeightFn& w,
                         std::optional<std::pair<Vertex, Vertex>> fixed = std::nullopt);

// Two sweeps: the first finds the maximum weight, the second emits every
// maximum piece as soon as it is found. Returns combined stats.
Mcis2Stats mcis2_enumerate(const EmbeddedBlock& bg, const EmbeddedBlock& bh, const WeightFn& w,
                           const std::function<void(const BiconIso&)>& emit);

}  // namespace opmcs
