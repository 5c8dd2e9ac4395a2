#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fairseq/sequences.hpp"

namespace fairseq {

// Named d = 3 parameter sets for the partition figures: "f2", "f3ter", "f3bis".
// The frequencies are the rational caption values nudged by small irrational offsets.
struct FigureParams {
    std::string name;
    FrequencyVector alpha;
    double C;
    double C_prime;

    TijdemanParams params() const { return TijdemanParams(alpha, C, C_prime, SumZeroVector::zero(3)); }
};

const std::vector<FigureParams>& figure_presets();

// Throws InvalidArgument for an unknown name.
const FigureParams& figure_preset(std::string_view name);

}  // namespace fairseq
