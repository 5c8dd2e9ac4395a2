#include "fairseq/figures.hpp"

#include <cmath>

#include "fairseq/errors.hpp"

namespace fairseq {

namespace {

FrequencyVector nudged(double a1, double a2) { return FrequencyVector{a1, a2, 1.0 - a1 - a2}; }

}  // namespace

const std::vector<FigureParams>& figure_presets() {
    static const std::vector<FigureParams> presets = [] {
        const double e1 = (std::sqrt(2.0) - 1.0) / 100.0;
        const double e2 = (std::sqrt(3.0) - 1.0) / 100.0;
        return std::vector<FigureParams>{
            {"f2", nudged(0.5 + e1, 0.3 + e2), 0.75, 0.75},
            {"f3ter", nudged(0.5 + e1, 0.45 + e2 / 2.0), 0.75, 0.9},
            {"f3bis", nudged(0.5 + e1, 0.45 + e2 / 2.0), 0.75, 0.75},
        };
    }();
    return presets;
}

const FigureParams& figure_preset(std::string_view name) {
    for (const auto& f : figure_presets())
        if (f.name == name) return f;
    throw InvalidArgument("unknown figure preset '" + std::string(name) + "'");
}

}  // namespace fairseq
