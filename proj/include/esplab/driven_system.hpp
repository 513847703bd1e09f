#pragma once

#include "esplab/errors.hpp"
#include "esplab/matrix.hpp"
#include "esplab/rng.hpp"
#include "esplab/spectral.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace esplab {

struct param_interval {
    double lo = 0.05;
    double hi = 2.0;

    bool contains(double a) const { return a >= lo && a <= hi; }
};

/// A parametric driven system: the step rule x' = g(alpha, u, x) on the state
/// box [-1,1]^N, with a scalar parameter interval and fixed input dimension.
class driven_system {
public:
    virtual ~driven_system() = default;

    virtual std::size_t state_dim() const = 0;
    virtual std::size_t input_dim() const = 0;
    virtual param_interval parameter_space() const = 0;

    /// Unvalidated step rule; out has state_dim entries.
    virtual void step_raw(double alpha, std::span<const double> u, std::span<const double> x,
                          std::span<double> out) const = 0;

    /// Validated step: alpha in the parameter space, dimensions matching,
    /// x in the state box.
    void step(double alpha, std::span<const double> u, std::span<const double> x,
              std::span<double> out) const {
        check_alpha(alpha);
        if (u.size() != input_dim() || x.size() != state_dim() || out.size() != state_dim())
            throw dimension_error("step: dimension mismatch");
        step_raw(alpha, u, x, out);
    }

    std::vector<double> step(double alpha, std::span<const double> u,
                             std::span<const double> x) const {
        std::vector<double> out(state_dim());
        step(alpha, u, x, out);
        return out;
    }

    void check_alpha(double alpha) const {
        const param_interval ps = parameter_space();
        if (!std::isfinite(alpha) || !ps.contains(alpha))
            throw parameter_error("alpha outside the parameter space");
    }
};

/// tanh RNN reservoir: g(alpha, u, x) = tanh(A u + alpha B x), with B held at
/// unit spectral radius.
class reservoir_system final : public driven_system {
public:
    reservoir_system(matrix a, matrix b, param_interval ps = {})
        : a_(std::move(a)), b_(std::move(b)), ps_(ps) {
        if (!b_.square()) throw dimension_error("reservoir matrix B must be square");
        if (a_.rows() != b_.rows())
            throw dimension_error("input matrix A must have N rows");
        const double rho = spectral_radius(b_);
        if (std::fabs(rho - 1.0) > 1e-6)
            throw domain_error("reservoir matrix B must have unit spectral radius");
    }

    /// A with i.i.d. uniform [-1,1] entries, B likewise then normalized to
    /// unit spectral radius. Streams 1 and 2 of the seed feed A and B.
    static reservoir_system random(std::size_t n, std::size_t d, std::uint64_t seed,
                                   param_interval ps = {}) {
        rng_stream rng_a(seed, 1), rng_b(seed, 2);
        matrix a(n, d);
        rng_a.fill_uniform(a.entries_mut(), -1.0, 1.0);
        matrix b(n, n);
        rng_b.fill_uniform(b.entries_mut(), -1.0, 1.0);
        return reservoir_system(std::move(a), normalize_unit_spectral_radius(b), ps);
    }

    std::size_t state_dim() const override { return b_.rows(); }
    std::size_t input_dim() const override { return a_.cols(); }
    param_interval parameter_space() const override { return ps_; }

    void step_raw(double alpha, std::span<const double> u, std::span<const double> x,
                  std::span<double> out) const override {
        const std::size_t n = b_.rows();
        const std::size_t d = a_.cols();
        for (std::size_t i = 0; i < n; ++i) {
            const double* ar = a_.entries().data() + i * d;
            double acc = 0.0;
            for (std::size_t j = 0; j < d; ++j) acc += ar[j] * u[j];
            const double* br = b_.entries().data() + i * n;
            double bx = 0.0;
            for (std::size_t j = 0; j < n; ++j) bx += br[j] * x[j];
            out[i] = std::tanh(acc + alpha * bx);
        }
    }

    const matrix& input_weights() const { return a_; }
    const matrix& reservoir_weights() const { return b_; }

private:
    matrix a_;
    matrix b_;
    param_interval ps_;
};

/// g(alpha, u, x) = x. Non-contractible; its encoding set is all of X.
class identity_system final : public driven_system {
public:
    identity_system(std::size_t n, std::size_t d, param_interval ps = {})
        : n_(n), d_(d), ps_(ps) {}

    std::size_t state_dim() const override { return n_; }
    std::size_t input_dim() const override { return d_; }
    param_interval parameter_space() const override { return ps_; }

    void step_raw(double, std::span<const double>, std::span<const double> x,
                  std::span<double> out) const override {
        for (std::size_t i = 0; i < n_; ++i) out[i] = x[i];
    }

private:
    std::size_t n_;
    std::size_t d_;
    param_interval ps_;
};

/// g(alpha, u, x) = tanh(A u): alpha- and state-independent. Every ensemble
/// collapses in one step, and parameter sweeps are exactly flat.
class input_map_system final : public driven_system {
public:
    input_map_system(matrix a, param_interval ps = {}) : a_(std::move(a)), ps_(ps) {}

    static input_map_system random(std::size_t n, std::size_t d, std::uint64_t seed,
                                   param_interval ps = {}) {
        rng_stream rng(seed, 1);
        matrix a(n, d);
        rng.fill_uniform(a.entries_mut(), -1.0, 1.0);
        return input_map_system(std::move(a), ps);
    }

    std::size_t state_dim() const override { return a_.rows(); }
    std::size_t input_dim() const override { return a_.cols(); }
    param_interval parameter_space() const override { return ps_; }

    void step_raw(double, std::span<const double> u, std::span<const double>,
                  std::span<double> out) const override {
        const std::size_t n = a_.rows();
        const std::size_t d = a_.cols();
        for (std::size_t i = 0; i < n; ++i) {
            const double* ar = a_.entries().data() + i * d;
            double acc = 0.0;
            for (std::size_t j = 0; j < d; ++j) acc += ar[j] * u[j];
            out[i] = std::tanh(acc);
        }
    }

private:
    matrix a_;
    param_interval ps_;
};

} // namespace esplab
