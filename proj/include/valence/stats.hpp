/// @file stats.hpp
/// @brief Pearson correlation, midranks and Spearman rank correlation.
///
/// Correlations return std::nullopt when either series is constant; the
/// coefficient is undefined there, and callers report the gap instead of a 0.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace valence {

using Correlation = std::optional<double>;

namespace detail {

inline void check_pair(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size())
        throw std::invalid_argument("paired series differ in length (" + std::to_string(x.size()) + " vs " +
                                    std::to_string(y.size()) + ")");
    if (x.size() < 2)
        throw std::invalid_argument("correlation needs at least two pairs");
}

inline bool is_constant(std::span<const double> v)
{
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *lo == *hi;
}

} // namespace detail

/// Product-moment correlation, computed on centered values.
inline Correlation pearson(std::span<const double> x, std::span<const double> y)
{
    detail::check_pair(x, y);
    if (detail::is_constant(x) || detail::is_constant(y))
        return std::nullopt;
    const auto n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        return std::nullopt;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

/// 1-based ranks; tied values share the mean of the positions they occupy.
inline std::vector<double> midranks(std::span<const double> v)
{
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });

    std::vector<double> ranks(v.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i + 1;
        while (j < order.size() && v[order[j]] == v[order[i]])
            ++j;
        // positions i+1 .. j share the average rank
        const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k)
            ranks[order[k]] = rank;
        i = j;
    }
    return ranks;
}

/// Pearson correlation of the midranks, valid under ties.
inline Correlation spearman(std::span<const double> x, std::span<const double> y)
{
    detail::check_pair(x, y);
    const auto rx = midranks(x);
    const auto ry = midranks(y);
    return pearson(rx, ry);
}

} // namespace valence
