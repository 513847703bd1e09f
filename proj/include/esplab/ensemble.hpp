#pragma once

#include "esplab/errors.hpp"
#include "esplab/norms.hpp"
#include "esplab/rng.hpp"

#include <charconv>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace esplab {

/// Where an ensemble came from: the parameter it was propagated at, a short
/// label for the driving input, and how many input values were consumed.
struct provenance {
    double alpha = 0.0;
    std::string input_id = "initial";
    std::size_t steps_consumed = 0;
};

enum class sample_mode { interior, boundary };

/// Finite set of state vectors in [-1,1]^N approximating one encoding set.
/// Point order is part of the identity: it is deterministic given seeds.
class state_ensemble {
public:
    state_ensemble(std::size_t dim, std::size_t count)
        : dim_(dim), pts_(dim * count) {
        if (dim == 0) throw dimension_error("ensemble dimension must be positive");
        if (count == 0) throw domain_error("ensemble must hold at least one point");
    }

    state_ensemble(std::size_t dim, std::vector<double> flat, provenance prov = {})
        : dim_(dim), pts_(std::move(flat)), prov_(std::move(prov)) {
        if (dim == 0) throw dimension_error("ensemble dimension must be positive");
        if (pts_.empty() || pts_.size() % dim != 0)
            throw dimension_error("ensemble data does not match its dimension");
        validate_box();
    }

    std::size_t dim() const { return dim_; }
    std::size_t count() const { return pts_.size() / dim_; }

    std::span<const double> point(std::size_t i) const {
        return {pts_.data() + i * dim_, dim_};
    }
    std::span<double> point_mut(std::size_t i) { return {pts_.data() + i * dim_, dim_}; }

    std::span<const double> flat() const { return pts_; }

    const provenance& origin() const { return prov_; }
    void set_origin(provenance p) { prov_ = std::move(p); }

    /// All points inside the closed box [-1,1]^N.
    void validate_box() const {
        for (double v : pts_) {
            if (!std::isfinite(v) || std::fabs(v) > 1.0)
                throw domain_error("ensemble point outside [-1,1]^N");
        }
    }

    /// One point per line; provenance as a '#' comment header.
    std::string to_csv() const {
        std::string out = "# alpha=";
        char buf[32];
        auto put = [&](double v) {
            auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
            (void)ec;
            out.append(buf, p);
        };
        put(prov_.alpha);
        out += " input=" + prov_.input_id + " steps=";
        put(static_cast<double>(prov_.steps_consumed));
        out += "\n";
        const std::size_t m = count();
        for (std::size_t i = 0; i < m; ++i) {
            auto pt = point(i);
            for (std::size_t j = 0; j < dim_; ++j) {
                put(pt[j]);
                out.push_back(j + 1 == dim_ ? '\n' : ',');
            }
        }
        return out;
    }

    friend bool operator==(const state_ensemble& a, const state_ensemble& b) {
        return a.dim_ == b.dim_ && a.pts_ == b.pts_;
    }

private:
    std::size_t dim_;
    std::vector<double> pts_;
    provenance prov_;
};

/// Seeded sampling of initial states in the box [-1,1]^dim.
///
/// interior: every coordinate uniform in [-1,1].
/// boundary: per point, one coordinate index is drawn uniformly and pinned to
/// +/-1 (sign drawn uniformly); the remaining coordinates are uniform in
/// [-1,1], filled in index order.
inline state_ensemble sample_states(std::size_t count, std::size_t dim, sample_mode mode,
                                    rng_stream rng) {
    if (count == 0) throw domain_error("sample_states: count must be >= 1");
    if (dim == 0) throw dimension_error("sample_states: dim must be >= 1");
    std::vector<double> pts(count * dim);
    if (mode == sample_mode::interior) {
        rng.fill_uniform(pts, -1.0, 1.0);
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t pin = static_cast<std::size_t>(rng.next_below(dim));
            const double sign = (rng.next_u64() & 1ULL) ? 1.0 : -1.0;
            double* pt = pts.data() + i * dim;
            for (std::size_t j = 0; j < dim; ++j)
                pt[j] = (j == pin) ? sign : rng.uniform(-1.0, 1.0);
        }
    }
    return state_ensemble(dim, std::move(pts));
}

/// Max pairwise p-norm distance; 0 for a singleton. Exact O(M^2) scan.
inline double ensemble_diameter(const state_ensemble& s, double p = 2.0) {
    const std::size_t m = s.count();
    double best = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            best = std::max(best, p_distance(s.point(i), s.point(j), p));
    return best;
}

/// Numerical ESP indicator: the ensemble is "a single highly clustered set of
/// points" when its 2-norm diameter is below eps.
inline bool esp_indicator(const state_ensemble& s, double eps) {
    if (!(eps > 0.0)) throw domain_error("esp_indicator: eps must be > 0");
    return ensemble_diameter(s, 2.0) < eps;
}

} // namespace esplab
