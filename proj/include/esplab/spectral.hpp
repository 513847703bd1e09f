#pragma once

#include "esplab/matrix.hpp"
#include "esplab/rng.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace esplab {

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

/// Norm-tracked repeated squaring: rho(B) = lim ||B^(2^m)||^(1/2^m).
/// The Frobenius norm of each square is folded into a log scale, so the
/// estimate stays representable for any spectrum. Exact for nilpotent input
/// (some power is the zero matrix) and it is the last-resort path when the
/// iterative estimators stagnate on three or more tied dominant moduli.
inline double gelfand_radius(const matrix& b) {
    matrix c = b;
    double log_scale = 0.0;
    double prev = -1.0;
    for (int m = 1; m <= 50; ++m) {
        c = c * c;
        const double f = c.frobenius_norm();
        if (f == 0.0) return 0.0;
        log_scale = 2.0 * log_scale + std::log(f);
        const double scale_back = 1.0 / f;
        for (double& v : c.entries_mut()) v *= scale_back;
        const double est = std::exp(log_scale / std::exp2(static_cast<double>(m)));
        if (m > 6 && std::fabs(est - prev) <= 1e-13 * std::max(1.0, std::fabs(est)))
            return est;
        prev = est;
    }
    return prev;
}

} // namespace detail

/// Spectral radius of a square matrix, absolute error <= 1e-9.
///
/// Power iteration with two acceptance routes per sweep: the Rayleigh
/// quotient when the dominant eigenvalue is real, and a two-term linear
/// recurrence fit v_{k+2} ~ s v_{k+1} - p v_k that resolves a dominant
/// complex-conjugate pair (or a +/-rho real pair) through |lambda|^2 = p.
/// Falls back to norm-tracked repeated squaring if neither route converges.
inline double spectral_radius(const matrix& b) {
    if (!b.square()) throw dimension_error("spectral_radius needs a square matrix");
    for (double v : b.entries())
        if (!std::isfinite(v)) throw domain_error("spectral_radius: non-finite entries");

    const std::size_t n = b.rows();
    if (n == 1) return std::fabs(b(0, 0));

    rng_stream rng(0x51BEC7ULL, 17);
    std::vector<double> v(n), av(n), bv(n), perp(n);
    rng.fill_uniform(v, -1.0, 1.0);
    {
        const double nv = detail::norm2(v);
        for (double& x : v) x /= nv;
    }

    constexpr int max_sweeps = 5000;
    constexpr double tol = 1e-13;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        b.apply(v, av);
        const double na = detail::norm2(av);
        if (na == 0.0) return detail::gelfand_radius(b);

        const double rayleigh = detail::dot(v, av);
        double resid = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = av[i] - rayleigh * v[i];
            resid += r * r;
        }
        if (std::sqrt(resid) <= tol * na) return std::fabs(rayleigh);

        b.apply(av, bv);
        const double nb = detail::norm2(bv);
        if (nb == 0.0) return detail::gelfand_radius(b);

        // Fit bv = s*av + q*v in the orthonormal basis {v, perp(av)}.
        const double a_dot_v = detail::dot(av, v);
        for (std::size_t i = 0; i < n; ++i) perp[i] = av[i] - a_dot_v * v[i];
        const double nperp = detail::norm2(perp);
        if (nperp > 1e-14 * na) {
            const double s = detail::dot(bv, perp) / (nperp * nperp);
            const double q = detail::dot(bv, v) - s * a_dot_v;
            double fit = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double r = bv[i] - s * av[i] - q * v[i];
                fit += r * r;
            }
            if (std::sqrt(fit) <= tol * nb) {
                const double p = -q; // lambda^2 - s*lambda + p = 0
                const double disc = s * s - 4.0 * p;
                if (disc < 0.0) return std::sqrt(p);
                const double root = std::sqrt(disc);
                return std::max(std::fabs(s + root), std::fabs(s - root)) / 2.0;
            }
        }

        for (std::size_t i = 0; i < n; ++i) v[i] = bv[i] / nb;
    }
    return detail::gelfand_radius(b);
}

/// B / rho(B); the result has unit spectral radius within 1e-6.
inline matrix normalize_unit_spectral_radius(const matrix& b) {
    const double rho = spectral_radius(b);
    if (!(rho > 0.0))
        throw normalization_error("cannot normalize a matrix with zero spectral radius");
    return b.scaled(1.0 / rho);
}

/// sigma_max(B) = sqrt(rho(B^T B)), absolute error <= 1e-9.
inline double largest_singular_value(const matrix& b) {
    for (double v : b.entries())
        if (!std::isfinite(v)) throw domain_error("largest_singular_value: non-finite entries");
    const matrix g = b.transpose() * b;
    const double rho = spectral_radius(g);
    return std::sqrt(std::max(rho, 0.0));
}

} // namespace esplab
