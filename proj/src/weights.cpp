#include "opmcs/weights.hpp"

namespace opmcs {

WeightFn WeightFn::uniform() { return WeightFn{}; }

WeightFn WeightFn::label_equality() {
    WeightFn w;
    w.kind_ = Kind::LabelEquality;
    return w;
}

WeightFn WeightFn::table(std::unordered_map<std::uint64_t, double> vertex_scores,
                         std::unordered_map<std::uint64_t, double> edge_scores) {
    WeightFn w;
    w.kind_ = Kind::Table;
    w.vtab_ = std::move(vertex_scores);
    w.etab_ = std::move(edge_scores);
    return w;
}

WeightFn WeightFn::transposed() const {
    WeightFn w = *this;
    w.flipped_ = !w.flipped_;
    return w;
}

Score WeightFn::look(const std::unordered_map<std::uint64_t, double>& tab, int lg,
                     int lh) const {
    if (flipped_) std::swap(lg, lh);
    switch (kind_) {
        case Kind::Uniform:
            return 1.0;
        case Kind::LabelEquality:
            if (lg == lh) return 1.0;
            return std::nullopt;
        case Kind::Table: {
            auto it = tab.find(key(lg, lh));
            if (it == tab.end()) return std::nullopt;
            return it->second;
        }
    }
    return std::nullopt;
}

}  // namespace opmcs
