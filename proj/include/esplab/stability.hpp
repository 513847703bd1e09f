#pragma once

#include "esplab/driven_system.hpp"
#include "esplab/ensemble.hpp"
#include "esplab/hausdorff.hpp"
#include "esplab/input_segment.hpp"
#include "esplab/parallel.hpp"
#include "esplab/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace esplab {

struct grid_spec {
    double lo = 0.7;
    double hi = 1.5;
    double spacing = 0.005;
};

/// Equally spaced points lo = a_1 < ... < a_l = hi. The span must be an
/// integer multiple of the spacing (1e-9 relative slack), and the constructed
/// grid keeps constant spacing exactly: a_k = lo + k * spacing.
inline std::vector<double> make_grid(const grid_spec& g) {
    if (!(g.spacing > 0.0)) throw domain_error("grid spacing must be > 0");
    if (!(g.lo < g.hi)) throw domain_error("grid needs lo < hi");
    const double raw = (g.hi - g.lo) / g.spacing;
    const double rounded = std::round(raw);
    if (std::fabs(raw - rounded) > 1e-9 * std::max(1.0, std::fabs(raw)))
        throw domain_error("grid span is not a multiple of the spacing");
    const std::size_t intervals = static_cast<std::size_t>(rounded);
    if (intervals < 1) throw domain_error("grid needs at least one interval");
    std::vector<double> alphas(intervals + 1);
    for (std::size_t k = 0; k <= intervals; ++k)
        alphas[k] = g.lo + static_cast<double>(k) * g.spacing;
    return alphas;
}

struct stability_metadata {
    std::size_t horizon = 0;  // n
    std::size_t samples = 0;  // M
    std::size_t shift = 0;    // j
    std::string input_id;
    double spacing = 0.0;
};

/// The parameter-stability plot data: gammas[k-1] = d_H(Y_n(a_k), Y_n(a_{k-1})).
struct stability_profile {
    std::vector<double> alphas;  // l points
    std::vector<double> gammas;  // l-1 values, gammas[i] belongs to alphas[i+1]
    stability_metadata meta;
};

struct threshold_rule {
    double tau_abs = 1e-4;  // absolute floor for "conspicuously positive"
    double kappa = 20.0;    // multiple of the quiet-region baseline
    std::size_t window = 3; // consecutive exceedances required after the hit
};

struct threshold_report {
    enum class kind_t { hard, none_detected };

    std::optional<double> alpha_t;
    kind_t kind = kind_t::none_detected;
    std::vector<unsigned char> exceed; // per-gamma decision gamma > tau
    double baseline = 0.0;             // median gamma over the lowest grid quartile
    double tau = 0.0;
};

namespace detail {

inline double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size();
    return (m % 2 == 1) ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

} // namespace detail

/// Steps 1-3 of the plot procedure: one ensemble per grid point from the SAME
/// M initial conditions and the same last-n input values, then consecutive
/// Hausdorff gaps. Deterministic for a given rng regardless of worker count.
inline stability_profile compute_stability_profile(const driven_system& sys,
                                                   const input_segment& input,
                                                   const grid_spec& grid, std::size_t m,
                                                   std::size_t n, sample_mode mode,
                                                   rng_stream rng, double p = 2.0,
                                                   int workers = 1) {
    const std::vector<double> alphas = make_grid(grid);
    const param_interval ps = sys.parameter_space();
    if (!ps.contains(grid.lo) || !ps.contains(grid.hi))
        throw parameter_error("stability grid outside the parameter space");
    if (n == 0 || n > input.length())
        throw length_error("horizon n must be in [1, input length]");

    const state_ensemble initial = sample_states(m, sys.state_dim(), mode, std::move(rng));
    const input_segment tail = input.last(n);

    std::vector<state_ensemble> ensembles(alphas.size(), state_ensemble(sys.state_dim(), m));
    parallel_for(alphas.size(), workers, [&](std::size_t k) {
        ensembles[k] = propagate_ensemble(sys, alphas[k], tail, initial);
    });

    stability_profile prof;
    prof.alphas = alphas;
    prof.gammas.resize(alphas.size() - 1);
    parallel_for(prof.gammas.size(), workers, [&](std::size_t i) {
        prof.gammas[i] = hausdorff_distance(ensembles[i + 1], ensembles[i], p);
    });
    for (std::size_t i = 0; i < prof.gammas.size(); ++i)
        if (!std::isfinite(prof.gammas[i]))
            throw numeric_error("non-finite gamma at alpha = " +
                                std::to_string(prof.alphas[i + 1]));
    prof.meta = {n, m, 0, input.id(), grid.spacing};
    return prof;
}

/// Step 4: the smallest grid point where the plot turns conspicuously
/// positive. tau = max(tau_abs, kappa * median of the lowest-quartile gammas);
/// a hit needs `window` further consecutive exceedances to count.
inline threshold_report detect_threshold(const stability_profile& prof,
                                         const threshold_rule& rule = {}) {
    const std::size_t lg = prof.gammas.size();
    if (lg == 0) throw domain_error("profile has no gamma values");
    if (prof.alphas.size() != lg + 1)
        throw dimension_error("malformed profile: |alphas| != |gammas| + 1");

    threshold_report rep;
    const std::size_t quart = std::max<std::size_t>(1, lg / 4);
    rep.baseline = detail::median_of(
        std::vector<double>(prof.gammas.begin(), prof.gammas.begin() + quart));
    rep.tau = std::max(rule.tau_abs, rule.kappa * rep.baseline);

    rep.exceed.resize(lg);
    for (std::size_t i = 0; i < lg; ++i) rep.exceed[i] = prof.gammas[i] > rep.tau ? 1 : 0;

    for (std::size_t i = 0; i + rule.window < lg; ++i) {
        bool run = rep.exceed[i] != 0;
        for (std::size_t w = 1; run && w <= rule.window; ++w)
            run = rep.exceed[i + w] != 0;
        if (run) {
            rep.alpha_t = prof.alphas[i + 1];
            rep.kind = threshold_report::kind_t::hard;
            break;
        }
    }
    return rep;
}

/// One profile per shift j: input sigma^j(u) of length (input length - j),
/// all sharing the initial-state sample (the rng is copied per shift).
inline std::vector<stability_profile> shifted_profiles(
    const driven_system& sys, const input_segment& input, const grid_spec& grid,
    std::size_t m, const std::vector<std::size_t>& shifts, sample_mode mode,
    rng_stream rng, double p = 2.0, int workers = 1) {
    std::vector<stability_profile> out;
    out.reserve(shifts.size());
    for (std::size_t j : shifts) {
        if (j >= input.length())
            throw length_error("shift must be smaller than the input length");
        const input_segment shifted = input.shifted(j);
        stability_profile prof = compute_stability_profile(
            sys, shifted, grid, m, shifted.length(), mode, rng, p, workers);
        prof.meta.shift = j;
        out.push_back(std::move(prof));
    }
    return out;
}

/// Clean-vs-noisy trajectory comparison from one initial state.
struct noise_report {
    double sup_state_gap = 0.0;   // sup_k ||x_k - x'_k||_2
    double sup_readout_gap = 0.0; // sup_k |y_k - y'_k| (0 if no read-out)
    trajectory clean;
    trajectory noisy;
};

inline noise_report noise_sensitivity(const driven_system& sys, double alpha,
                                      const input_segment& input, double eps,
                                      std::span<const double> x0,
                                      std::span<const double> readout_w, rng_stream rng) {
    noise_report rep;
    rep.clean = run_trajectory(sys, alpha, input, x0, readout_w);
    rep.noisy = run_trajectory(sys, alpha, input.with_noise(eps, std::move(rng)), x0,
                               readout_w);
    const std::size_t steps = rep.clean.steps();
    std::vector<double> diff(sys.state_dim());
    for (std::size_t k = 0; k <= steps; ++k) {
        auto a = rep.clean.state(k);
        auto b = rep.noisy.state(k);
        for (std::size_t j = 0; j < diff.size(); ++j) diff[j] = a[j] - b[j];
        rep.sup_state_gap = std::max(rep.sup_state_gap, norm_2(diff));
        if (!rep.clean.readout.empty())
            rep.sup_readout_gap = std::max(
                rep.sup_readout_gap, std::fabs(rep.clean.readout[k] - rep.noisy.readout[k]));
    }
    return rep;
}

/// d_H(E_n(alpha+delta, u), E_n(alpha, u)) tabulated over horizons x offsets,
/// from one shared initial sample. Equicontinuity at alpha shows as gaps
/// shrinking uniformly in n as delta -> 0.
struct equicontinuity_table {
    std::vector<std::size_t> horizons; // n values, one row each
    std::vector<double> offsets;       // delta values, one column each
    std::vector<double> gaps;          // row-major horizons x offsets

    double at(std::size_t i, std::size_t j) const { return gaps[i * offsets.size() + j]; }
};

inline equicontinuity_table equicontinuity_diagnostic(
    const driven_system& sys, const input_segment& input, double alpha,
    const std::vector<std::size_t>& horizons, const std::vector<double>& offsets,
    std::size_t m, sample_mode mode, rng_stream rng, double p = 2.0, int workers = 1) {
    sys.check_alpha(alpha);
    for (double d : offsets) sys.check_alpha(alpha + d);
    for (std::size_t n : horizons)
        if (n == 0 || n > input.length())
            throw length_error("horizon n must be in [1, input length]");

    const state_ensemble initial = sample_states(m, sys.state_dim(), mode, std::move(rng));

    equicontinuity_table table;
    table.horizons = horizons;
    table.offsets = offsets;
    table.gaps.resize(horizons.size() * offsets.size());
    parallel_for(horizons.size(), workers, [&](std::size_t i) {
        const input_segment tail = input.last(horizons[i]);
        const state_ensemble base = propagate_ensemble(sys, alpha, tail, initial);
        for (std::size_t j = 0; j < offsets.size(); ++j) {
            const state_ensemble other =
                propagate_ensemble(sys, alpha + offsets[j], tail, initial);
            table.gaps[i * offsets.size() + j] = hausdorff_distance(other, base, p);
        }
    });
    return table;
}

} // namespace esplab
