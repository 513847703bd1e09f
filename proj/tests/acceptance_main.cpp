// Acceptance suite: one line per criterion, hard pass/fail, wall-clock
// budgets enforced where stated. Exits non-zero if any criterion fails.

#include "esplab/esplab.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

using namespace esplab;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

struct criterion_timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(const std::string& id, bool ok, const std::string& detail, double seconds,
            double budget_s = 0.0) {
    const bool in_budget = budget_s <= 0.0 || seconds <= budget_s;
    if (!in_budget) ok = false;
    std::printf("[%s] %s %s (%.2f s%s)\n", ok ? "PASS" : "FAIL", id.c_str(), detail.c_str(),
                seconds, budget_s > 0.0 ? (", budget " + format_number(budget_s) + " s").c_str() : "");
    if (!ok) ++g_failures;
}

int hw_workers() { return 8; }

// --- C1: optimized Hausdorff equals the naive double loop, bitwise ---------
void criterion_1() {
    criterion_timer timer;
    rng_stream rng(0xACC1, 1);
    const double orders[] = {1.0, 2.0, inf_norm};
    std::size_t checked = 0;
    bool ok = true;
    for (int rep = 0; rep < 500 && ok; ++rep) {
        const std::size_t dim = 1 + rng.next_below(16);
        const std::size_t m1 = 1 + rng.next_below(128);
        const std::size_t m2 = 1 + rng.next_below(128);
        std::vector<double> p1(m1 * dim), p2(m2 * dim);
        rng.fill_uniform(p1, -1.0, 1.0);
        rng.fill_uniform(p2, -1.0, 1.0);
        const state_ensemble s1(dim, std::move(p1)), s2(dim, std::move(p2));
        const double p = orders[rep % 3];
        ok = ok && hausdorff_distance(s1, s2, p) == oracle::naive_hausdorff(s1, s2, p);
        ok = ok && directed_distance(s1, s2, p) == oracle::naive_directed(s1, s2, p);
        ++checked;
    }
    report("C1 hausdorff-oracle-equivalence", ok,
           "500 random pairs, dims 1-16, sizes 1-128, p in {1,2,inf}, bitwise equal",
           timer.seconds(), 10.0);
}

// --- C2: metric axioms ------------------------------------------------------
void criterion_2() {
    criterion_timer timer;
    rng_stream rng(0xACC2, 1);
    bool ok = true;
    for (int rep = 0; rep < 1000 && ok; ++rep) {
        const std::size_t dim = 1 + rng.next_below(4);
        auto make = [&](std::size_t m) {
            std::vector<double> pts(m * dim);
            rng.fill_uniform(pts, -1.0, 1.0);
            return state_ensemble(dim, std::move(pts));
        };
        const auto a = make(1 + rng.next_below(12));
        const auto b = make(1 + rng.next_below(12));
        const auto c = make(1 + rng.next_below(12));
        const double ab = hausdorff_distance(a, b, 2.0);
        ok = ok && ab == hausdorff_distance(b, a, 2.0);
        ok = ok && hausdorff_distance(a, a, 2.0) == 0.0;
        ok = ok && hausdorff_distance(a, c, 2.0) <= ab + hausdorff_distance(b, c, 2.0) + 1e-12;
    }
    report("C2 hausdorff-metric-axioms", ok,
           "symmetry, identity, triangle inequality over 1000 random triples (slack 1e-12)",
           timer.seconds());
}

// --- C3: contraction-regime ESP --------------------------------------------
//
// The geometric bound diam0 * 0.9^500 ~ 1e-22 is only observable when states
// decay toward the origin, where doubles keep absolute resolution. The zero
// input is a bona-fide input of the theory (the contraction condition
// guarantees ESP w.r.t. every input, the zero one included), and with it the
// whole 500-step contraction is float-verifiable. With O(1) inputs the
// computed diameter floors at machine noise (~1e-16) instead.
void criterion_3() {
    criterion_timer timer;
    const auto sys = reservoir_system::random(50, 1, 303, {0.0, 2.0});
    const double sigma = largest_singular_value(sys.reservoir_weights());
    const double alpha = 0.9 / sigma;
    const auto input = make_uniform_random(500, 1, 0.0, rng_stream(304, 1)); // zero input
    const auto initial = sample_states(50, 50, sample_mode::interior, rng_stream(305, 1));
    const double diam0 = ensemble_diameter(initial, 2.0);

    const auto final_set = propagate_ensemble(sys, alpha, input, initial, hw_workers());
    const double diam = ensemble_diameter(final_set, 2.0);
    const double bound = diam0 * std::pow(0.9, 500.0);
    const bool ok = diam <= bound && esp_indicator(final_set, 1e-6);
    report("C3 contraction-regime-esp", ok,
           "N=50, alpha*sigma_max(B)=0.9, M=50, n=500, zero input: diameter " +
               format_number(diam) + " <= " + format_number(bound) +
               " and esp_indicator @1e-6",
           timer.seconds(), 5.0);
}

// --- C4: nested image sets ---------------------------------------------------
void criterion_4() {
    criterion_timer timer;
    const reservoir_system sys(matrix{{1.0}}, matrix{{1.0}}, {0.0, 2.0});
    const double alpha = 0.95; // Lipschitz rate alpha * sigma_max(B) = 0.95
    const auto u = make_uniform_random(51, 1, 1.0, rng_stream(404, 1));

    const std::size_t g = 10000;
    std::vector<double> grid(g);
    for (std::size_t i = 0; i < g; ++i)
        grid[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(g - 1);
    const state_ensemble y0(1, std::move(grid));
    const double resolution = 2.0 / static_cast<double>(g - 1);

    bool ok = true;
    double worst_margin = 0.0;
    state_ensemble prev = propagate_ensemble(sys, alpha, u.last(1), y0);
    for (std::size_t n = 1; n <= 50 && ok; ++n) {
        const state_ensemble next = propagate_ensemble(sys, alpha, u.last(n + 1), y0);
        const double tol = resolution * std::pow(alpha, static_cast<double>(n)) + 1e-9;
        const double d = directed_distance(next, prev, 2.0);
        worst_margin = std::max(worst_margin, d / tol);
        ok = ok && d <= tol;
        prev = next;
    }
    report("C4 nesting-of-image-sets", ok,
           "1-D, 10^4-point grid, directed d(Y_{n+1}, Y_n) within grid-propagated "
           "tolerance for n=1..50 (worst ratio " +
               format_number(worst_margin) + ")",
           timer.seconds());
}

// --- C5: parameter-continuity flatness in the contraction regime ------------
void criterion_5() {
    criterion_timer timer;
    const auto sys = reservoir_system::random(20, 1, 505, {0.0, 2.0});
    const double sigma = largest_singular_value(sys.reservoir_weights());
    const double spacing = 0.005;
    const double hi = std::floor((0.9 / sigma) / spacing) * spacing;
    const auto input = make_uniform_random(500, 1, 0.05, rng_stream(506, 1));

    const auto prof = compute_stability_profile(sys, input, {0.05, hi, spacing}, 20, 500,
                                                sample_mode::interior, rng_stream(507, 1),
                                                2.0, hw_workers());
    double worst = 0.0;
    for (double gamma : prof.gammas) worst = std::max(worst, gamma);
    const bool ok = worst <= 1e-3;
    report("C5 contraction-flatness", ok,
           "gamma_500 <= 1e-3 on the alpha*sigma<=0.9 sub-grid [0.05, " +
               format_number(hi) + "], spacing 0.005 (max gamma " + format_number(worst) +
               ")",
           timer.seconds());
}

// --- C6: shift robustness of the detected threshold --------------------------
void criterion_6() {
    criterion_timer timer;
    const auto sys = reservoir_system::random(50, 1, 15, {0.05, 2.0});
    const auto input = make_uniform_random(500, 1, 0.05, rng_stream(16, 1));
    const std::vector<std::size_t> shifts{0, 10, 20, 30, 40, 50, 60, 70, 80};

    const auto profiles = shifted_profiles(sys, input, {0.7, 1.5, 0.005}, 50, shifts,
                                           sample_mode::interior, rng_stream(17, 1), 2.0,
                                           hw_workers());
    double lo = 0.0, hi = 0.0;
    bool all_detected = true;
    std::string detail = "alpha_t per shift:";
    for (const auto& prof : profiles) {
        const auto rep = detect_threshold(prof);
        if (!rep.alpha_t.has_value()) {
            all_detected = false;
            detail += " none";
            continue;
        }
        detail += " " + format_number(*rep.alpha_t);
        if (lo == 0.0 || *rep.alpha_t < lo) lo = *rep.alpha_t;
        if (*rep.alpha_t > hi) hi = *rep.alpha_t;
    }
    const bool ok = all_detected && (hi - lo) <= 0.005 + 1e-12;
    report("C6 shift-robust-threshold", ok,
           detail + " (spread " + format_number(hi - lo) + ", allowed 0.005)",
           timer.seconds(), 180.0);
}

// --- C7: noise input-to-state bound and linear scaling -----------------------
void criterion_7() {
    criterion_timer timer;
    const auto sys = reservoir_system::random(30, 1, 707, {0.0, 2.0});
    const double sigma_b = largest_singular_value(sys.reservoir_weights());
    const double sigma_a = largest_singular_value(sys.input_weights());
    const double alpha = 0.9 / sigma_b;
    const auto input = make_sinusoid(500, 1, 0.1, 50.0);
    const std::vector<double> x0(30, 0.0);
    rng_stream wseed(708, 1);
    std::vector<double> w(30);
    wseed.fill_uniform(w, -1.0, 1.0);

    const double d_sqrt = 1.0; // input dimension 1
    const double denom = 1.0 - alpha * sigma_b;

    bool bound_ok = true;
    std::vector<double> slopes;
    for (double eps : {1e-4, 1e-3, 1e-2}) {
        const auto rep = noise_sensitivity(sys, alpha, input, eps, x0, w,
                                           rng_stream(709, 1));
        const double bound = norm_2(w) * sigma_a * d_sqrt * eps / denom;
        if (eps == 1e-3) bound_ok = rep.sup_readout_gap <= bound;
        slopes.push_back(rep.sup_readout_gap / eps);
    }
    double smin = slopes[0], smax = slopes[0];
    for (double s : slopes) {
        smin = std::min(smin, s);
        smax = std::max(smax, s);
    }
    const bool linear_ok = smax / smin <= 1.1;
    report("C7 noise-iss-bound", bound_ok && linear_ok,
           "sup read-out gap within ||w|| sigma_max(A) sqrt(d) eps/(1-alpha sigma_max(B)); "
           "gap/eps spread " +
               format_number(smax / smin) + " over eps in {1e-4,1e-3,1e-2} (<= 1.1)",
           timer.seconds());
}

// --- C8: encoding-scatter qualitative reproduction ---------------------------
void criterion_8() {
    criterion_timer timer;
    const auto sys = reservoir_system::random(2, 1, 809, {0.05, 2.0});
    const auto input = make_uniform_random(500, 1, 1.0, rng_stream(810, 1));
    const double alpha_small = 0.1, alpha_large = 1.5;

    const auto small_set = encoding_approximation(sys, alpha_small, input, 1000,
                                                  sample_mode::boundary,
                                                  rng_stream(811, 1), hw_workers());
    const auto large_set = encoding_approximation(sys, alpha_large, input, 1000,
                                                  sample_mode::boundary,
                                                  rng_stream(811, 1), hw_workers());
    const double d_small = ensemble_diameter(small_set, 2.0);
    const double d_large = ensemble_diameter(large_set, 2.0);
    // d_large >= 0.01 guards against a vacuous 0-vs-0 comparison: the top of
    // the sweep must genuinely be multi-valued.
    const bool ok = d_small < 1e-6 && d_large >= 0.01 && d_small * 100.0 <= d_large;
    report("C8 encoding-scatter-contrast", ok,
           "2 neurons, 1000 boundary samples: diameter " + format_number(d_small) +
               " at alpha=0.1 vs " + format_number(d_large) + " at alpha=1.5",
           timer.seconds());
}

// --- C9: determinism of the run pipeline -------------------------------------
void criterion_9() {
    criterion_timer timer;
    const auto parsed = validate_config(R"({
        "kind": "stability-plot",
        "name": "det",
        "system": {"neurons": 8, "input_dim": 1, "seed": 909},
        "input": {"kind": "uniform-random", "length": 120, "amplitude": 1.0, "seed": 910},
        "grid": {"lo": 0.2, "hi": 1.4, "spacing": 0.05},
        "samples": 16,
        "horizon": 120,
        "shifts": [0, 10]
    })");
    bool ok = parsed.ok();
    std::string detail;
    if (ok) {
        const fs::path base = fs::temp_directory_path() / "esplab_acceptance_det";
        fs::remove_all(base);
        experiment_config cfg = *parsed.config;
        std::vector<run_manifest> mans;
        int run_id = 0;
        for (int workers : {1, 1, 8}) {
            cfg.workers = workers;
            cfg.output_dir = (base / ("run" + std::to_string(run_id++))).string();
            mans.push_back(run_experiment(cfg));
        }
        std::size_t files = 0;
        for (std::size_t i = 1; i < mans.size() && ok; ++i) {
            ok = mans[i].outputs.size() == mans[0].outputs.size();
            for (std::size_t f = 0; ok && f < mans[0].outputs.size(); ++f) {
                ok = mans[i].outputs[f] == mans[0].outputs[f] &&
                     read_file(mans[i].root / mans[i].outputs[f].first) ==
                         read_file(mans[0].root / mans[0].outputs[f].first);
                ++files;
            }
        }
        detail = "repeat run and workers 1 vs 8: " + std::to_string(files) +
                 " file comparisons byte-identical";
        if (ok) fs::remove_all(base);
    } else {
        detail = "config did not validate";
    }
    report("C9 run-determinism", ok, detail, timer.seconds());
}

// --- C10: equicontinuity diagnostic sanity ------------------------------------
void criterion_10() {
    criterion_timer timer;
    bool ok = true;
    std::string detail;

    // alpha-independent toy: the whole table is exactly zero
    {
        const auto toy = input_map_system::random(3, 1, 1001, {0.05, 2.0});
        const auto u = make_uniform_random(200, 1, 1.0, rng_stream(1002, 1));
        const auto table = equicontinuity_diagnostic(toy, u, 0.5, {10, 50, 200},
                                                     {0.0, 0.005, 0.01}, 10,
                                                     sample_mode::interior,
                                                     rng_stream(1003, 1));
        for (double g : table.gaps) ok = ok && g == 0.0;
        detail = "toy table all-zero";
    }

    // contraction-regime reservoir: gaps shrink monotonically in n at
    // delta=0.005 (non-increasing within float dust once the transient has
    // decayed into the delta-asymptote) and sit below 1e-3 from n=200 on.
    {
        const reservoir_system sys(matrix{{1.0}}, matrix{{1.0}}, {0.05, 2.0});
        const auto u = make_sinusoid(600, 1, 0.002, 50.0);
        const std::vector<std::size_t> horizons{50, 100, 200, 400, 600};
        const auto table = equicontinuity_diagnostic(sys, u, 0.9, horizons, {0.005}, 25,
                                                     sample_mode::interior,
                                                     rng_stream(1004, 1), 2.0,
                                                     hw_workers());
        detail += "; contraction gaps:";
        for (std::size_t i = 0; i < horizons.size(); ++i) {
            detail += " " + format_number(table.at(i, 0));
            if (i > 0) ok = ok && table.at(i, 0) <= table.at(i - 1, 0) * (1.0 + 1e-3) + 1e-12;
            if (horizons[i] >= 200) ok = ok && table.at(i, 0) < 1e-3;
        }
    }
    report("C10 equicontinuity-sanity", ok, detail, timer.seconds());
}

} // namespace

int main() {
    std::printf("esplab acceptance suite (version %s)\n", version_string);
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (g_failures == 0) {
        std::printf("all 10 acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", g_failures);
    return 1;
}
