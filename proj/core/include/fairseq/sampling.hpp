#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "fairseq/vectors.hpp"

namespace fairseq {

// Uniform point of the open simplex from sorted uniform gaps. Entries below
// min_entry are rejected and redrawn.
FrequencyVector random_frequency(std::size_t d, std::mt19937_64& rng, double min_entry = 1e-3);

// Deterministic child seed for sweep item `index`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace fairseq
