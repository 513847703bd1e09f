#pragma once

#include "esplab/driven_system.hpp"
#include "esplab/ensemble.hpp"
#include "esplab/hausdorff.hpp"
#include "esplab/input_segment.hpp"
#include "esplab/propagate.hpp"
#include "esplab/spectral.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace esplab {

/// Quick built-in invariant suite backing the `check` CLI verb. Each entry is
/// (description, passed). Runs in a couple of seconds.
inline std::vector<std::pair<std::string, bool>> run_selfcheck() {
    std::vector<std::pair<std::string, bool>> results;
    auto record = [&](const std::string& name, bool ok) { results.emplace_back(name, ok); };

    // rng determinism
    {
        rng_stream a(42, 7), b(42, 7);
        bool same = true;
        for (int i = 0; i < 1000; ++i) same = same && a.next_u64() == b.next_u64();
        record("rng: identical (seed, stream) reproduce identical sequences", same);
    }

    // spectral radius homogeneity and singular-value bound
    {
        rng_stream rng(5, 1);
        matrix m(12, 12);
        rng.fill_uniform(m.entries_mut(), -1.0, 1.0);
        const double rho = spectral_radius(m);
        const double rho3 = spectral_radius(m.scaled(-3.0));
        const double sig = largest_singular_value(m);
        record("spectral: rho(-3B) = 3 rho(B)",
               std::fabs(rho3 - 3.0 * rho) <= 1e-8 * std::max(1.0, rho3));
        record("spectral: rho(B) <= sigma_max(B)", rho <= sig + 1e-9);
    }

    // hausdorff metric axioms on seeded random sets
    {
        rng_stream rng(9, 2);
        auto rand_set = [&](std::size_t m) {
            std::vector<double> pts(m * 3);
            rng.fill_uniform(pts, -1.0, 1.0);
            return state_ensemble(3, std::move(pts));
        };
        bool sym = true, tri = true, ident = true;
        for (int rep = 0; rep < 50; ++rep) {
            const auto a = rand_set(8), b = rand_set(11), c = rand_set(5);
            const double ab = hausdorff_distance(a, b);
            const double ba = hausdorff_distance(b, a);
            const double ac = hausdorff_distance(a, c);
            const double bc = hausdorff_distance(b, c);
            sym = sym && ab == ba;
            tri = tri && ac <= ab + bc + 1e-12;
            ident = ident && hausdorff_distance(a, a) == 0.0;
        }
        record("hausdorff: symmetry", sym);
        record("hausdorff: triangle inequality", tri);
        record("hausdorff: d_H(A,A) = 0", ident);
    }

    // shift composition and alpha=0-style collapse
    {
        const input_segment u = make_uniform_random(60, 2, 1.0, rng_stream(3, 3));
        const input_segment s1 = u.shifted(4).shifted(9);
        const input_segment s2 = u.shifted(13);
        bool same = s1.length() == s2.length();
        for (std::size_t k = 0; same && k < s1.length(); ++k)
            for (std::size_t j = 0; j < 2; ++j) same = same && s1.value(k)[j] == s2.value(k)[j];
        record("input: shift(i) then shift(j) equals shift(i+j)", same);
    }
    {
        const reservoir_system sys = reservoir_system::random(6, 1, 77, {0.0, 2.0});
        const input_segment u = make_sinusoid(5, 1, 0.5, 50.0);
        const state_ensemble init = sample_states(12, 6, sample_mode::interior,
                                                  rng_stream(8, 1));
        const state_ensemble out = propagate_ensemble(sys, 0.0, u, init);
        record("reservoir: alpha=0 collapses the ensemble in one step",
               ensemble_diameter(out, 2.0) == 0.0);
    }

    // range closure under random stepping
    {
        const reservoir_system sys = reservoir_system::random(4, 2, 11);
        rng_stream rng(21, 9);
        bool inside = true;
        std::vector<double> u(2), x(4), y(4);
        for (int i = 0; i < 2000 && inside; ++i) {
            rng.fill_uniform(u, -2.0, 2.0);
            rng.fill_uniform(x, -1.0, 1.0);
            const double alpha = rng.uniform(0.05, 2.0);
            sys.step(alpha, u, x, y);
            for (double v : y) inside = inside && std::fabs(v) <= 1.0;
        }
        record("reservoir: step stays inside [-1,1]^N", inside);
    }

    return results;
}

} // namespace esplab
