#pragma once

#include <utility>
#include <vector>

#include "opmcs/graph.hpp"
#include "opmcs/weights.hpp"

namespace opmcs {

struct IsoReport {
    bool injective = false;
    bool induced = false;
    bool connected = false;
    bool bbp = false;
    bool admissible = false;
    double weight = 0.0;
    bool ok() const { return injective && induced && connected && bbp && admissible; }
};

// Validates a partial vertex mapping as a common induced subgraph isomorphism:
// injectivity, edge-for-edge agreement between the induced subgraphs,
// connectivity, block and bridge preservation on both sides, and weight.
IsoReport check_iso(const LabeledGraph& g, const LabeledGraph& h,
                    const std::vector<std::pair<Vertex, Vertex>>& phi, const WeightFn& w);

struct BruteResult {
    double weight = 0.0;
    // All maximum witnesses, each sorted by source vertex, list sorted and deduplicated.
    std::vector<std::vector<std::pair<Vertex, Vertex>>> witnesses;
};

// Exhaustive reference solvers, guarded to desk scale (throws beyond it).
BruteResult brute_bbp_mcis(const LabeledGraph& g, const LabeledGraph& h, const WeightFn& w);
BruteResult brute_2mcis(const LabeledGraph& bg, const LabeledGraph& bh, const WeightFn& w);

}  // namespace opmcs
