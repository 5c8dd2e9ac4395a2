#include "fairseq/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fairseq/errors.hpp"

namespace fairseq::complexity {

namespace {

constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();

// Class ids of the length-n windows, refined one letter at a time. Two windows
// share an id iff they are equal, so the number of ids is p(n).
class WindowClasses {
public:
    explicit WindowClasses(const LetterSequence& word) : w_(word.letters()), d_(word.alphabet_size()) {
        ids_.resize(w_.size());
        std::vector<std::uint32_t> relabel(d_ + 1, kUnset);
        for (std::size_t k = 0; k < w_.size(); ++k) {
            auto& r = relabel[w_[k]];
            if (r == kUnset) r = static_cast<std::uint32_t>(count_++);
            ids_[k] = r;
        }
        n_ = 1;
    }

    std::size_t n() const noexcept { return n_; }
    std::size_t count() const noexcept { return count_; }

    // Extends every window by its next letter; the last window drops out.
    void extend() {
        const std::size_t windows = w_.size() - n_;
        table_.assign(count_ * d_, kUnset);
        std::size_t next = 0;
        for (std::size_t k = 0; k < windows; ++k) {
            auto& r = table_[ids_[k] * d_ + (w_[k + n_] - 1u)];
            if (r == kUnset) r = static_cast<std::uint32_t>(next++);
            ids_[k] = r;
        }
        ids_.resize(windows);
        count_ = next;
        ++n_;
    }

private:
    std::span<const Letter> w_;
    std::size_t d_;
    std::vector<std::uint32_t> ids_;
    std::vector<std::uint32_t> table_;
    std::size_t count_ = 0;
    std::size_t n_ = 0;
};

}  // namespace

std::size_t factor_complexity(const LetterSequence& word, std::size_t n) {
    if (n < 1 || n > word.size()) throw InvalidArgument("factor length must lie in 1..|word|");
    WindowClasses classes(word);
    while (classes.n() < n) classes.extend();
    return classes.count();
}

ComplexityProfile complexity_profile(const LetterSequence& word, std::size_t n_max) {
    if (n_max < 1 || n_max > word.size() / 10)
        throw InvalidArgument("complexity profile needs 1 <= n_max <= |word|/10");
    ComplexityProfile prof;
    prof.prefix_length = word.size();
    prof.d = word.alphabet_size();
    WindowClasses classes(word);
    prof.counts.push_back(classes.count());
    while (classes.n() < n_max) {
        classes.extend();
        prof.counts.push_back(classes.count());
    }
    for (std::size_t n = 1; n < n_max; ++n)
        if (prof.counts[n] < prof.counts[n - 1]) prof.monotonicity_violations.push_back(n);
    prof.saturation_warning =
        static_cast<double>(prof.counts.back()) > static_cast<double>(word.size() - n_max) / 10.0;
    return prof;
}

double exponent_fit(const ComplexityProfile& profile, std::size_t n_lo, std::size_t n_hi) {
    if (n_lo < 2 || n_hi <= n_lo || n_hi > profile.n_max())
        throw InvalidArgument("fit range must satisfy 2 <= n_lo < n_hi <= n_max");
    if (n_hi - n_lo + 1 < 5) throw DegenerateFit("exponent fit needs at least 5 points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double m = static_cast<double>(n_hi - n_lo + 1);
    for (std::size_t n = n_lo; n <= n_hi; ++n) {
        if (profile.at(n) == 0) throw DegenerateFit("exponent fit needs positive counts");
        const double x = std::log(static_cast<double>(n));
        const double y = std::log(static_cast<double>(profile.at(n)));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

std::uint64_t arrangement_region_bound(std::uint64_t n, std::uint64_t dim) {
    if (dim < 1) throw InvalidArgument("arrangement dimension must be >= 1");
    if (n > 60) throw Overflow("arrangement_region_bound supports n <= 60");
    std::uint64_t binom = 1, sum = 1;
    for (std::uint64_t k = 0; k < std::min(n, dim); ++k) {
        binom = binom * (n - k) / (k + 1);
        sum += binom;
    }
    return sum;
}

namespace {

bool same_line(const geometry::HalfPlane& a, const geometry::HalfPlane& b) {
    const auto na = a.normal(), nb = b.normal();
    if (std::abs(geometry::cross(na, nb)) > 1e-12) return false;
    const double s = geometry::dot(na, nb) > 0.0 ? 1.0 : -1.0;
    return std::abs(a.offset() - s * b.offset()) <= 1e-12;
}

std::size_t count_with_offset(const std::vector<geometry::HalfPlane>& lines, double factor) {
    using geometry::Vec2;
    std::vector<std::vector<bool>> signs;
    auto record = [&](Vec2 p) {
        std::vector<bool> s(lines.size());
        for (std::size_t i = 0; i < lines.size(); ++i) s[i] = lines[i].signed_distance(p) > 0.0;
        signs.push_back(std::move(s));
    };
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const Vec2 nrm = lines[i].normal();
        const Vec2 dir{-nrm.y, nrm.x};
        const Vec2 base = lines[i].offset() * nrm;
        std::vector<double> ts;
        for (std::size_t j = 0; j < lines.size(); ++j) {
            if (j == i) continue;
            const double den = geometry::dot(lines[j].normal(), dir);
            if (std::abs(den) < 1e-12) continue;
            ts.push_back(-lines[j].signed_distance(base) / den);
        }
        std::sort(ts.begin(), ts.end());
        std::vector<double> mids;
        if (ts.empty()) {
            mids.push_back(0.0);
        } else {
            mids.push_back(ts.front() - 1.0);
            for (std::size_t k = 0; k + 1 < ts.size(); ++k)
                if (ts[k + 1] - ts[k] > 1e-12) mids.push_back(0.5 * (ts[k] + ts[k + 1]));
            mids.push_back(ts.back() + 1.0);
        }
        for (double t : mids) {
            const Vec2 p = base + t * dir;
            double gap = 1.0;
            for (std::size_t j = 0; j < lines.size(); ++j)
                if (j != i) gap = std::min(gap, std::abs(lines[j].signed_distance(p)));
            const double delta = factor * gap;
            record(p + delta * nrm);
            record(p - delta * nrm);
        }
    }
    std::sort(signs.begin(), signs.end());
    return static_cast<std::size_t>(std::unique(signs.begin(), signs.end()) - signs.begin());
}

}  // namespace

RegionCount count_regions_2d(std::span<const geometry::HalfPlane> input) {
    if (input.size() > kMaxArrangementLines) throw InvalidArgument("count_regions_2d supports at most 12 lines");
    RegionCount out;
    std::vector<geometry::HalfPlane> lines;
    for (const auto& h : input) {
        bool dup = false;
        for (const auto& l : lines) dup = dup || same_line(h, l);
        if (dup) out.degeneracy_warning = true;
        else lines.push_back(h);
    }
    if (lines.empty()) {
        out.regions = 1;
        return out;
    }
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            const auto ni = lines[i].normal(), nj = lines[j].normal();
            const double det = geometry::cross(ni, nj);
            if (std::abs(det) < 1e-12) {
                out.degeneracy_warning = true;
                continue;
            }
            const geometry::Vec2 p{(lines[i].offset() * nj.y - lines[j].offset() * ni.y) / det,
                                   (ni.x * lines[j].offset() - nj.x * lines[i].offset()) / det};
            for (std::size_t k = j + 1; k < lines.size(); ++k)
                if (std::abs(lines[k].signed_distance(p)) <= 1e-9) out.degeneracy_warning = true;
        }
    // Halve the offset until the count is stable.
    double factor = 0.25;
    std::size_t prev = count_with_offset(lines, factor);
    for (int round = 0; round < 20; ++round) {
        factor *= 0.5;
        const std::size_t cur = count_with_offset(lines, factor);
        if (cur == prev) break;
        prev = cur;
    }
    out.regions = prev;
    return out;
}

}  // namespace fairseq::complexity
