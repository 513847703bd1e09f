#pragma once

#include "esplab/errors.hpp"
#include "esplab/rng.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace esplab {

/// Finite temporal input (u_{-n}, ..., u_{-1}).
/// values()[k] holds the input at time -n+k, so the last entry is u_{-1}.
class input_segment {
public:
    input_segment(std::size_t dim, std::vector<double> flat, std::string id = "input")
        : dim_(dim), vals_(std::move(flat)), id_(std::move(id)) {
        if (dim == 0) throw dimension_error("input dimension must be positive");
        if (vals_.empty() || vals_.size() % dim != 0)
            throw dimension_error("input data does not match its dimension");
        for (double v : vals_)
            if (!std::isfinite(v)) throw domain_error("input values must be finite");
    }

    std::size_t dim() const { return dim_; }
    std::size_t length() const { return vals_.size() / dim_; }
    const std::string& id() const { return id_; }

    /// Input vector at position k (time -n+k).
    std::span<const double> value(std::size_t k) const {
        return {vals_.data() + k * dim_, dim_};
    }

    std::span<const double> flat() const { return vals_; }

    /// sigma^j applied to the left-infinite extension, then truncated: the
    /// last j values drop, leaving (u_{-n}, ..., u_{-1-j}) of length n-j.
    input_segment shifted(std::size_t j) const {
        const std::size_t n = length();
        if (j >= n) throw length_error("shift must be smaller than the segment length");
        std::vector<double> head(vals_.begin(), vals_.begin() + (n - j) * dim_);
        return input_segment(dim_, std::move(head),
                             j == 0 ? id_ : id_ + "<<" + std::to_string(j));
    }

    /// The m most recent values (u_{-m}, ..., u_{-1}).
    input_segment last(std::size_t m) const {
        const std::size_t n = length();
        if (m == 0 || m > n) throw length_error("suffix length must be in [1, n]");
        std::vector<double> tail(vals_.begin() + (n - m) * dim_, vals_.end());
        return input_segment(dim_, std::move(tail), id_);
    }

    /// Adds i.i.d. uniform noise in [-eps, eps] per coordinate. Draws are a
    /// unit shape scaled by eps, so the same rng yields proportional
    /// perturbations across amplitudes.
    input_segment with_noise(double eps, rng_stream rng) const {
        if (!(eps >= 0.0)) throw domain_error("noise amplitude must be >= 0");
        std::vector<double> noisy(vals_.size());
        for (std::size_t i = 0; i < vals_.size(); ++i)
            noisy[i] = vals_[i] + eps * rng.uniform(-1.0, 1.0);
        return input_segment(dim_, std::move(noisy), id_ + "+noise");
    }

private:
    std::size_t dim_;
    std::vector<double> vals_;
    std::string id_;
};

/// u_k = amplitude * sin(2 pi k / period) at times k = -n..-1, replicated
/// across all input coordinates.
inline input_segment make_sinusoid(std::size_t n, std::size_t d, double amplitude,
                                   double period) {
    if (n == 0) throw length_error("sinusoid length must be >= 1");
    if (!(period > 0.0)) throw domain_error("sinusoid period must be > 0");
    std::vector<double> vals(n * d);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) - static_cast<double>(n);
        const double u = amplitude * std::sin(2.0 * std::numbers::pi * t / period);
        for (std::size_t j = 0; j < d; ++j) vals[k * d + j] = u;
    }
    return input_segment(d, std::move(vals), "sinusoid");
}

/// i.i.d. values uniform in [-amplitude, amplitude]^d.
inline input_segment make_uniform_random(std::size_t n, std::size_t d, double amplitude,
                                         rng_stream rng) {
    if (n == 0) throw length_error("input length must be >= 1");
    std::vector<double> vals(n * d);
    for (double& v : vals) v = amplitude * rng.uniform(-1.0, 1.0);
    return input_segment(d, std::move(vals), "uniform-random");
}

} // namespace esplab
