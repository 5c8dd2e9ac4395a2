#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace fairseq {

// Letter frequencies alpha in (0,1)^d summing to one.
class FrequencyVector {
public:
    static constexpr double kSumTolerance = 1e-12;

    // Throws InvalidArgument unless d >= 2, every entry lies in (0,1) and the
    // entries sum to 1 within kSumTolerance.
    explicit FrequencyVector(std::vector<double> alphas);
    FrequencyVector(std::initializer_list<double> alphas)
        : FrequencyVector(std::vector<double>(alphas)) {}

    // Rescales positive weights onto the simplex. The last entry is set to
    // 1 - (sum of the others) so the unit-sum invariant holds to rounding.
    static FrequencyVector from_weights(std::span<const double> weights);

    std::size_t dim() const noexcept { return alphas_.size(); }
    double operator[](std::size_t i) const noexcept { return alphas_[i]; }
    std::span<const double> values() const noexcept { return alphas_; }

    double min() const noexcept;
    double max() const noexcept;
    // Smallest index attaining the maximum (0-based).
    std::size_t argmax() const noexcept;

    bool operator==(const FrequencyVector&) const = default;

private:
    std::vector<double> alphas_;
};

// A point of the hyperplane 1^perp (coordinates summing to zero).
class SumZeroVector {
public:
    static constexpr double kSumTolerance = 1e-9;

    SumZeroVector() = default;
    // Throws InvalidArgument if |sum| exceeds kSumTolerance.
    explicit SumZeroVector(std::vector<double> coords);
    SumZeroVector(std::initializer_list<double> coords)
        : SumZeroVector(std::vector<double>(coords)) {}

    static SumZeroVector zero(std::size_t d) { return SumZeroVector(std::vector<double>(d, 0.0)); }

    std::size_t dim() const noexcept { return coords_.size(); }
    double operator[](std::size_t i) const noexcept { return coords_[i]; }
    std::span<const double> values() const noexcept { return coords_; }

    double norm_inf() const noexcept;

    bool operator==(const SumZeroVector&) const = default;

private:
    std::vector<double> coords_;
};

double distance_inf(std::span<const double> a, std::span<const double> b) noexcept;

}  // namespace fairseq
