#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>

namespace opmcs {

// Score of a vertex or edge pair. An empty optional means the pair is
// forbidden (may never be mapped); there is no numeric sentinel.
using Score = std::optional<double>;

// Weight function over label pairs. Scores are >= 0 or forbidden.
class WeightFn {
public:
    // Every pair scores 1, regardless of labels.
    static WeightFn uniform();
    // 1 when the labels are equal, forbidden otherwise.
    static WeightFn label_equality();
    // Explicit tables; pairs absent from a table are forbidden.
    static WeightFn table(std::unordered_map<std::uint64_t, double> vertex_scores,
                          std::unordered_map<std::uint64_t, double> edge_scores);

    static std::uint64_t key(int label_a, int label_b) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(label_a)) << 32) |
               static_cast<std::uint32_t>(label_b);
    }

    Score vertex(int label_g, int label_h) const { return look(vtab_, label_g, label_h); }
    Score edge(int label_g, int label_h) const { return look(etab_, label_g, label_h); }

    // Same scores with the argument order flipped (w transposed).
    WeightFn transposed() const;

private:
    enum class Kind { Uniform, LabelEquality, Table };
    Kind kind_ = Kind::Uniform;
    bool flipped_ = false;
    std::unordered_map<std::uint64_t, double> vtab_, etab_;

    Score look(const std::unordered_map<std::uint64_t, double>& tab, int lg, int lh) const;
};

}  // namespace opmcs
