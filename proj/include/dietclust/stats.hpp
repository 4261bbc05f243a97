#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "dietclust/errors.hpp"

namespace dietclust {

template <typename S>
S mean(const std::vector<S>& xs) {
    if (xs.empty()) throw EmptyInput("mean of zero values");
    S sum = S(0);
    for (const S& x : xs) sum += x;
    return sum / static_cast<S>(xs.size());
}

/// Sample standard deviation, divisor n-1. NaN for fewer than two values.
template <typename S>
S sample_std(const std::vector<S>& xs) {
    if (xs.size() < 2) return std::numeric_limits<S>::quiet_NaN();
    const S m = mean(xs);
    S ssq = S(0);
    for (const S& x : xs) ssq += (x - m) * (x - m);
    return std::sqrt(ssq / static_cast<S>(xs.size() - 1));
}

/// Quantile by linear interpolation between order statistics (the "type 7"
/// rule: h = (n-1)q, interpolate between floor(h) and floor(h)+1).
template <typename S>
S quantile(std::vector<S> xs, double q) {
    if (xs.empty()) throw EmptyInput("quantile of zero values");
    if (!(q >= 0.0 && q <= 1.0)) throw InvalidConfig("quantile level must lie in [0, 1]");
    std::sort(xs.begin(), xs.end());
    const double h = static_cast<double>(xs.size() - 1) * q;
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= xs.size()) return xs.back();
    const S g = static_cast<S>(h - static_cast<double>(lo));
    return xs[lo] + g * (xs[lo + 1] - xs[lo]);
}

} // namespace dietclust
