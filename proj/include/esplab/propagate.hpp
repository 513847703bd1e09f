#pragma once

#include "esplab/driven_system.hpp"
#include "esplab/ensemble.hpp"
#include "esplab/input_segment.hpp"
#include "esplab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace esplab {

/// Y_n from Y_0: applies the step rule with u_{-n}, ..., u_{-1} in order to
/// every point of the initial ensemble. Point order is preserved, so the
/// result is independent of the worker count.
inline state_ensemble propagate_ensemble(const driven_system& sys, double alpha,
                                         const input_segment& input,
                                         const state_ensemble& initial, int workers = 1) {
    sys.check_alpha(alpha);
    if (initial.dim() != sys.state_dim())
        throw dimension_error("propagate_ensemble: ensemble/state dimension mismatch");
    if (input.dim() != sys.input_dim())
        throw dimension_error("propagate_ensemble: input dimension mismatch");

    const std::size_t n_steps = input.length();
    const std::size_t dim = initial.dim();
    const std::size_t m = initial.count();

    state_ensemble out(dim, m);
    parallel_for(m, workers, [&](std::size_t i) {
        std::vector<double> cur(initial.point(i).begin(), initial.point(i).end());
        std::vector<double> next(dim);
        for (std::size_t k = 0; k < n_steps; ++k) {
            sys.step_raw(alpha, input.value(k), cur, next);
            cur.swap(next);
        }
        auto slot = out.point_mut(i);
        for (std::size_t j = 0; j < dim; ++j) slot[j] = cur[j];
    });
    out.validate_box();
    out.set_origin({alpha, input.id(), n_steps});
    return out;
}

/// Samples M initial states and pushes them through the whole segment:
/// the finite-ensemble approximation of the encoding set E_n(alpha, u).
inline state_ensemble encoding_approximation(const driven_system& sys, double alpha,
                                             const input_segment& input, std::size_t m,
                                             sample_mode mode, rng_stream rng,
                                             int workers = 1) {
    const state_ensemble initial = sample_states(m, sys.state_dim(), mode, std::move(rng));
    return propagate_ensemble(sys, alpha, input, initial, workers);
}

/// Finite forward solution x_0..x_T with an optional linear read-out.
struct trajectory {
    std::size_t dim = 0;
    std::vector<double> states;  // (T+1) x dim, row-major
    std::vector<double> readout; // empty or T+1 scalars

    std::size_t steps() const { return states.size() / dim - 1; }
    std::span<const double> state(std::size_t k) const {
        return {states.data() + k * dim, dim};
    }
};

/// Runs the system from x0 through the whole input segment. If readout
/// weights are given, y_k = <w, x_k> is recorded alongside.
inline trajectory run_trajectory(const driven_system& sys, double alpha,
                                 const input_segment& input, std::span<const double> x0,
                                 std::span<const double> readout_w = {}) {
    sys.check_alpha(alpha);
    if (x0.size() != sys.state_dim())
        throw dimension_error("run_trajectory: x0 dimension mismatch");
    if (input.dim() != sys.input_dim())
        throw dimension_error("run_trajectory: input dimension mismatch");
    if (!readout_w.empty() && readout_w.size() != sys.state_dim())
        throw dimension_error("run_trajectory: readout dimension mismatch");
    for (double v : x0)
        if (!std::isfinite(v) || std::fabs(v) > 1.0)
            throw domain_error("run_trajectory: x0 outside [-1,1]^N");

    const std::size_t dim = sys.state_dim();
    const std::size_t n = input.length();

    trajectory tr;
    tr.dim = dim;
    tr.states.resize((n + 1) * dim);
    std::copy(x0.begin(), x0.end(), tr.states.begin());
    for (std::size_t k = 0; k < n; ++k) {
        std::span<const double> cur{tr.states.data() + k * dim, dim};
        std::span<double> next{tr.states.data() + (k + 1) * dim, dim};
        sys.step_raw(alpha, input.value(k), cur, next);
    }
    if (!readout_w.empty()) {
        tr.readout.resize(n + 1);
        for (std::size_t k = 0; k <= n; ++k) {
            double acc = 0.0;
            auto xk = tr.state(k);
            for (std::size_t j = 0; j < dim; ++j) acc += readout_w[j] * xk[j];
            tr.readout[k] = acc;
        }
    }
    return tr;
}

} // namespace esplab
