#pragma once

#include "esplab/errors.hpp"

#include <cmath>
#include <limits>
#include <span>

namespace esplab {

inline constexpr double inf_norm = std::numeric_limits<double>::infinity();

/// p-norm distance between two equal-length vectors, p >= 1 (inf allowed).
/// Coordinates are accumulated in index order so distances are reproducible
/// bit for bit across call sites.
inline double p_distance(std::span<const double> a, std::span<const double> b, double p = 2.0) {
    if (a.size() != b.size()) throw dimension_error("p_distance: size mismatch");
    if (p == 2.0) {
        double acc = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double d = a[i] - b[i];
            acc += d * d;
        }
        return std::sqrt(acc);
    }
    if (p == 1.0) {
        double acc = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) acc += std::fabs(a[i] - b[i]);
        return acc;
    }
    if (p == inf_norm) {
        double m = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
        return m;
    }
    if (!(p >= 1.0)) throw domain_error("p_distance: norm order must be >= 1");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::pow(std::fabs(a[i] - b[i]), p);
    return std::pow(acc, 1.0 / p);
}

inline double norm_2(std::span<const double> a) {
    double acc = 0.0;
    for (double v : a) acc += v * v;
    return std::sqrt(acc);
}

} // namespace esplab
