#pragma once

#include "esplab/config.hpp"
#include "esplab/csv.hpp"
#include "esplab/driven_system.hpp"
#include "esplab/ensemble.hpp"
#include "esplab/fsio.hpp"
#include "esplab/input_segment.hpp"
#include "esplab/parallel.hpp"
#include "esplab/propagate.hpp"
#include "esplab/stability.hpp"
#include "esplab/svg.hpp"
#include "esplab/version.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace esplab {

/// Record of one completed run: the effective config, provenance, and the
/// digest of every written data/plot file.
struct run_manifest {
    experiment_config config;
    std::string version;
    double wall_seconds = 0.0;
    std::vector<std::pair<std::string, std::string>> outputs; // rel path -> digest
    std::vector<std::string> notes; // human-readable result summary lines
    std::filesystem::path root;
};

namespace detail {

/// In-memory artifact set, written in one deterministic pass at the end.
struct artifact_sink {
    std::vector<std::pair<std::string, std::string>> files; // rel path -> bytes

    void add(std::string rel_path, std::string bytes) {
        files.emplace_back(std::move(rel_path), std::move(bytes));
    }
};

inline reservoir_system build_system(const system_config& sc) {
    const param_interval ps{sc.parameter_lo, sc.parameter_hi};
    matrix a(1, 1), b(1, 1);
    try {
        if (!sc.a_csv.empty()) {
            a = matrix::from_csv_file(sc.a_csv);
        } else {
            rng_stream rng(sc.seed, 1);
            a = matrix(sc.neurons, sc.input_dim);
            rng.fill_uniform(a.entries_mut(), -1.0, 1.0);
        }
        if (!sc.b_csv.empty()) {
            b = normalize_unit_spectral_radius(matrix::from_csv_file(sc.b_csv));
        } else {
            rng_stream rng(sc.seed, 2);
            matrix raw(sc.neurons, sc.neurons);
            rng.fill_uniform(raw.entries_mut(), -1.0, 1.0);
            b = normalize_unit_spectral_radius(raw);
        }
    } catch (const error& e) {
        throw config_error(std::string("system: ") + e.what());
    }
    if (a.rows() != sc.neurons || a.cols() != sc.input_dim)
        throw config_error("system.a_csv: matrix shape must be neurons x input_dim");
    if (b.rows() != sc.neurons || !b.square())
        throw config_error("system.b_csv: matrix must be neurons x neurons");
    return reservoir_system(std::move(a), std::move(b), ps);
}

inline input_segment build_input(const input_config& ic, std::size_t d) {
    if (ic.kind == "sinusoid")
        return make_sinusoid(ic.length, d, ic.amplitude, ic.period);
    return make_uniform_random(ic.length, d, ic.amplitude, rng_stream(ic.seed, 3));
}

inline std::vector<double> build_readout(std::size_t n, std::uint64_t seed) {
    rng_stream rng(seed, 4);
    std::vector<double> w(n);
    rng.fill_uniform(w, -1.0, 1.0);
    return w;
}

inline void run_trajectory_compare(const experiment_config& cfg, const reservoir_system& sys,
                                   const input_segment& input, artifact_sink& sink,
                                   std::vector<std::string>& notes) {
    const std::vector<double> w = build_readout(sys.state_dim(), cfg.readout_seed);
    const std::vector<double> x0(sys.state_dim(), 0.0);
    const std::size_t c0 = cfg.coordinates[0];

    std::vector<trajectory> trs(cfg.alphas.size());
    parallel_for(cfg.alphas.size(), cfg.workers,
                 [&](std::size_t i) { trs[i] = run_trajectory(sys, cfg.alphas[i], input, x0, w); });

    std::vector<plot_series> state_series, readout_series;
    {
        plot_series in_series{"input", {}, false};
        for (std::size_t k = 0; k < input.length(); ++k)
            in_series.points.emplace_back(static_cast<double>(k), input.value(k)[0]);
        state_series.push_back(std::move(in_series));
    }

    csv_writer readout_csv([&] {
        std::string h = "t";
        for (double a : cfg.alphas) h += ",y_alpha_" + format_number(a);
        return h;
    }());

    for (std::size_t i = 0; i < cfg.alphas.size(); ++i) {
        const trajectory& tr = trs[i];
        std::string header = "t";
        for (std::size_t c : cfg.coordinates) header += ",x" + std::to_string(c);
        header += ",y";
        csv_writer csv(header);
        for (std::size_t k = 0; k <= tr.steps(); ++k) {
            std::string line;
            append_number(line, static_cast<double>(k));
            for (std::size_t c : cfg.coordinates) {
                line.push_back(',');
                append_number(line, tr.state(k)[c]);
            }
            line.push_back(',');
            append_number(line, tr.readout[k]);
            csv.row(line);
        }
        sink.add("data/trajectory_alpha_" + format_number(cfg.alphas[i]) + ".csv", csv.str());

        plot_series s{"alpha=" + format_number(cfg.alphas[i]), {}, false};
        for (std::size_t k = 0; k <= tr.steps(); ++k)
            s.points.emplace_back(static_cast<double>(k), tr.state(k)[c0]);
        state_series.push_back(std::move(s));

        plot_series r{"alpha=" + format_number(cfg.alphas[i]), {}, false};
        for (std::size_t k = 0; k <= tr.steps(); ++k)
            r.points.emplace_back(static_cast<double>(k), tr.readout[k]);
        readout_series.push_back(std::move(r));
    }

    for (std::size_t k = 0; k <= trs[0].steps(); ++k) {
        std::string line;
        append_number(line, static_cast<double>(k));
        for (const auto& tr : trs) {
            line.push_back(',');
            append_number(line, tr.readout[k]);
        }
        readout_csv.row(line);
    }
    sink.add("data/readout.csv", readout_csv.str());

    csv_writer input_csv("t,u0");
    for (std::size_t k = 0; k < input.length(); ++k)
        input_csv.row(static_cast<double>(k), input.value(k)[0]);
    sink.add("data/input.csv", input_csv.str());

    sink.add("plots/trajectories.svg",
             render_svg_plot(state_series, {"state coordinate x" + std::to_string(c0) +
                                                " vs time",
                                            "n", "x", false}));
    sink.add("plots/readout.svg",
             render_svg_plot(readout_series, {"linear read-out vs time", "n", "y", false}));
    notes.push_back("trajectories for " + std::to_string(cfg.alphas.size()) +
                    " parameter values over " + std::to_string(input.length()) + " steps");
}

inline void run_noise_sensitivity(const experiment_config& cfg, const reservoir_system& sys,
                                  const input_segment& input, artifact_sink& sink,
                                  std::vector<std::string>& notes) {
    const std::vector<double> w = build_readout(sys.state_dim(), cfg.readout_seed);
    const std::vector<double> x0(sys.state_dim(), 0.0);
    const std::size_t c0 = cfg.coordinates[0];
    const rng_stream noise_rng(cfg.noise.seed, 5); // same realization for every alpha

    std::vector<noise_report> reps(cfg.alphas.size());
    parallel_for(cfg.alphas.size(), cfg.workers, [&](std::size_t i) {
        reps[i] = noise_sensitivity(sys, cfg.alphas[i], input, cfg.noise.epsilon, x0, w,
                                    noise_rng);
    });

    csv_writer gaps("alpha,epsilon,sup_state_gap,sup_readout_gap");
    std::vector<plot_series> diff_series, sol_series;
    for (std::size_t i = 0; i < cfg.alphas.size(); ++i) {
        const noise_report& rep = reps[i];
        const std::string alpha_txt = format_number(cfg.alphas[i]);
        gaps.row(cfg.alphas[i], cfg.noise.epsilon, rep.sup_state_gap, rep.sup_readout_gap);

        csv_writer sol("t,x_clean,x_noisy,y_clean,y_noisy");
        csv_writer diff("t,readout_diff");
        plot_series ds{"alpha=" + alpha_txt, {}, false};
        for (std::size_t k = 0; k <= rep.clean.steps(); ++k) {
            sol.row(static_cast<double>(k), rep.clean.state(k)[c0], rep.noisy.state(k)[c0],
                    rep.clean.readout[k], rep.noisy.readout[k]);
            const double dy = rep.clean.readout[k] - rep.noisy.readout[k];
            diff.row(static_cast<double>(k), dy);
            ds.points.emplace_back(static_cast<double>(k), dy);
        }
        sink.add("data/solutions_alpha_" + alpha_txt + ".csv", sol.str());
        sink.add("data/readout_diff_alpha_" + alpha_txt + ".csv", diff.str());
        diff_series.push_back(std::move(ds));

        plot_series clean_s{"alpha=" + alpha_txt + " clean", {}, false};
        plot_series noisy_s{"alpha=" + alpha_txt + " noisy", {}, false};
        for (std::size_t k = 0; k <= rep.clean.steps(); ++k) {
            clean_s.points.emplace_back(static_cast<double>(k), rep.clean.state(k)[c0]);
            noisy_s.points.emplace_back(static_cast<double>(k), rep.noisy.state(k)[c0]);
        }
        sol_series.push_back(std::move(clean_s));
        sol_series.push_back(std::move(noisy_s));

        notes.push_back("alpha=" + alpha_txt + ": sup state gap " +
                        format_number(rep.sup_state_gap) + ", sup read-out gap " +
                        format_number(rep.sup_readout_gap));
    }
    sink.add("data/gaps.csv", gaps.str());
    sink.add("plots/readout_diff.svg",
             render_svg_plot(diff_series,
                             {"read-out difference, clean vs noisy input", "n", "dy", false}));
    sink.add("plots/solutions.svg",
             render_svg_plot(sol_series, {"state coordinate x" + std::to_string(c0) +
                                              ", clean vs noisy input",
                                          "n", "x", false}));
}

inline void run_encoding_scatter(const experiment_config& cfg, const reservoir_system& sys,
                                 const input_segment& input, artifact_sink& sink,
                                 std::vector<std::string>& notes) {
    const std::vector<double> alphas = make_grid(
        {cfg.grid.lo, cfg.grid.hi, cfg.grid.spacing});
    const sample_mode mode =
        cfg.sample_mode == "boundary" ? sample_mode::boundary : sample_mode::interior;
    const state_ensemble initial =
        sample_states(cfg.samples, sys.state_dim(), mode, rng_stream(cfg.ensemble_seed, 6));
    const input_segment tail = input.last(cfg.horizon);

    std::vector<state_ensemble> ens(alphas.size(), state_ensemble(sys.state_dim(), 1));
    parallel_for(alphas.size(), cfg.workers,
                 [&](std::size_t k) { ens[k] = propagate_ensemble(sys, alphas[k], tail, initial); });

    std::string scatter_header = "alpha";
    for (std::size_t c : cfg.coordinates) scatter_header += ",x" + std::to_string(c);
    csv_writer scatter(scatter_header);
    csv_writer diam("alpha,diameter,esp");
    std::vector<plot_series> coord_series(cfg.coordinates.size());
    for (std::size_t c = 0; c < cfg.coordinates.size(); ++c)
        coord_series[c] = {"x" + std::to_string(cfg.coordinates[c]), {}, true};
    plot_series diam_series{"diameter", {}, false};

    for (std::size_t k = 0; k < alphas.size(); ++k) {
        for (std::size_t i = 0; i < ens[k].count(); ++i) {
            std::string line;
            append_number(line, alphas[k]);
            for (std::size_t ci = 0; ci < cfg.coordinates.size(); ++ci) {
                line.push_back(',');
                const double v = ens[k].point(i)[cfg.coordinates[ci]];
                append_number(line, v);
                coord_series[ci].points.emplace_back(alphas[k], v);
            }
            scatter.row(line);
        }
        const double d = ensemble_diameter(ens[k], cfg.norm_order);
        diam.row(alphas[k], d, static_cast<std::size_t>(esp_indicator(ens[k], cfg.esp_epsilon)));
        diam_series.points.emplace_back(alphas[k], d);
    }
    sink.add("data/scatter.csv", scatter.str());
    sink.add("data/diameter.csv", diam.str());
    sink.add("data/ensemble_alpha_" + format_number(alphas.front()) + ".csv",
             ens.front().to_csv());
    sink.add("data/ensemble_alpha_" + format_number(alphas.back()) + ".csv",
             ens.back().to_csv());
    for (std::size_t ci = 0; ci < cfg.coordinates.size(); ++ci)
        sink.add("plots/scatter_x" + std::to_string(cfg.coordinates[ci]) + ".svg",
                 render_svg_plot({coord_series[ci]},
                                 {"parameter-encoding scatter", "alpha",
                                  "x" + std::to_string(cfg.coordinates[ci]), false}));
    sink.add("plots/diameter.svg",
             render_svg_plot({diam_series},
                             {"ensemble diameter vs alpha", "alpha", "diameter", true}));
    notes.push_back("scatter over " + std::to_string(alphas.size()) + " grid points, " +
                    std::to_string(cfg.samples) + " samples, diameter range [" +
                    format_number(diam_series.points.front().second) + ", " +
                    format_number(diam_series.points.back().second) + "]");
}

inline void run_stability_plot(const experiment_config& cfg, const reservoir_system& sys,
                               const input_segment& input, artifact_sink& sink,
                               std::vector<std::string>& notes) {
    const sample_mode mode =
        cfg.sample_mode == "boundary" ? sample_mode::boundary : sample_mode::interior;
    const grid_spec grid{cfg.grid.lo, cfg.grid.hi, cfg.grid.spacing};
    const threshold_rule rule{cfg.threshold.tau_abs, cfg.threshold.kappa,
                              cfg.threshold.window};
    const input_segment effective = input.last(cfg.horizon);

    const std::vector<stability_profile> profiles =
        shifted_profiles(sys, effective, grid, cfg.samples, cfg.shifts, mode,
                         rng_stream(cfg.ensemble_seed, 6), cfg.norm_order, cfg.workers);

    csv_writer thresholds("shift,n,detected,alpha_t,tau,baseline");
    std::vector<plot_series> gamma_series;
    for (const stability_profile& prof : profiles) {
        const threshold_report rep = detect_threshold(prof, rule);
        csv_writer pcsv("alpha,gamma,decision");
        plot_series s{"shift " + std::to_string(prof.meta.shift), {}, false};
        for (std::size_t i = 0; i < prof.gammas.size(); ++i) {
            pcsv.row(prof.alphas[i + 1], prof.gammas[i],
                     static_cast<std::size_t>(rep.exceed[i]));
            s.points.emplace_back(prof.alphas[i + 1], prof.gammas[i]);
        }
        sink.add("data/profile_shift_" + std::to_string(prof.meta.shift) + ".csv",
                 pcsv.str());
        gamma_series.push_back(std::move(s));

        const bool hit = rep.alpha_t.has_value();
        thresholds.row(prof.meta.shift, prof.meta.horizon,
                       static_cast<std::size_t>(hit),
                       hit ? *rep.alpha_t : std::nan(""), rep.tau, rep.baseline);
        notes.push_back("shift " + std::to_string(prof.meta.shift) + " (n=" +
                        std::to_string(prof.meta.horizon) + "): " +
                        (hit ? "hard-ESP threshold alpha_t = " + format_number(*rep.alpha_t)
                             : "no threshold detected") +
                        " (tau=" + format_number(rep.tau) + ")");
    }
    sink.add("data/thresholds.csv", thresholds.str());
    sink.add("plots/stability.svg",
             render_svg_plot(gamma_series, {"parameter-stability plot", "alpha", "gamma",
                                            cfg.log_scale}));
}

inline void run_equicontinuity(const experiment_config& cfg, const reservoir_system& sys,
                               const input_segment& input, artifact_sink& sink,
                               std::vector<std::string>& notes) {
    const sample_mode mode =
        cfg.sample_mode == "boundary" ? sample_mode::boundary : sample_mode::interior;
    const equicontinuity_table table = equicontinuity_diagnostic(
        sys, input, cfg.alpha, cfg.horizons, cfg.offsets, cfg.samples, mode,
        rng_stream(cfg.ensemble_seed, 6), cfg.norm_order, cfg.workers);

    csv_writer csv("n,delta,gap");
    std::vector<plot_series> series(table.offsets.size());
    for (std::size_t j = 0; j < table.offsets.size(); ++j)
        series[j] = {"delta=" + format_number(table.offsets[j]), {}, false};
    for (std::size_t i = 0; i < table.horizons.size(); ++i)
        for (std::size_t j = 0; j < table.offsets.size(); ++j) {
            csv.row(table.horizons[i], table.offsets[j], table.at(i, j));
            series[j].points.emplace_back(static_cast<double>(table.horizons[i]),
                                          table.at(i, j));
        }
    sink.add("data/equicontinuity.csv", csv.str());
    sink.add("plots/equicontinuity.svg",
             render_svg_plot(series, {"equicontinuity diagnostic at alpha=" +
                                          format_number(cfg.alpha),
                                      "n", "hausdorff gap", true}));
    for (std::size_t j = 0; j < table.offsets.size(); ++j) {
        double worst = 0.0;
        for (std::size_t i = 0; i < table.horizons.size(); ++i)
            worst = std::max(worst, table.at(i, j));
        notes.push_back("delta=" + format_number(table.offsets[j]) +
                        ": max gap over n is " + format_number(worst));
    }
}

} // namespace detail

inline std::filesystem::path resolve_output_root(const experiment_config& cfg) {
    std::string outdir = cfg.output_dir;
    if (outdir.empty()) {
        if (const char* env = std::getenv("ESPLAB_OUTDIR")) outdir = env;
        if (outdir.empty()) outdir = "out";
    }
    return std::filesystem::path(outdir) / cfg.name;
}

inline nlohmann::json manifest_to_json(const run_manifest& man) {
    nlohmann::json j;
    j["artifact"] = "esplab";
    j["version"] = man.version;
    j["wall_seconds"] = man.wall_seconds;
    j["config"] = config_to_json(man.config);
    nlohmann::json outs = nlohmann::json::array();
    for (const auto& [path, digest] : man.outputs)
        outs.push_back({{"path", path}, {"digest", digest}});
    j["outputs"] = outs;
    j["notes"] = man.notes;
    return j;
}

/// Runs one experiment into an explicit root directory (<root>/data,
/// <root>/plots, <root>/manifest.json), writing every file atomically.
inline run_manifest run_experiment_at(const experiment_config& cfg,
                                      const std::filesystem::path& root) {
    const auto t0 = std::chrono::steady_clock::now();

    const reservoir_system sys = detail::build_system(cfg.system);
    const input_segment input = detail::build_input(cfg.input, cfg.system.input_dim);

    detail::artifact_sink sink;
    std::vector<std::string> notes;
    switch (cfg.kind) {
    case experiment_kind::trajectory_compare:
        detail::run_trajectory_compare(cfg, sys, input, sink, notes);
        break;
    case experiment_kind::noise_sensitivity:
        detail::run_noise_sensitivity(cfg, sys, input, sink, notes);
        break;
    case experiment_kind::encoding_scatter:
        detail::run_encoding_scatter(cfg, sys, input, sink, notes);
        break;
    case experiment_kind::stability_plot:
        detail::run_stability_plot(cfg, sys, input, sink, notes);
        break;
    case experiment_kind::equicontinuity:
        detail::run_equicontinuity(cfg, sys, input, sink, notes);
        break;
    }

    run_manifest man;
    man.config = cfg;
    man.version = version_string;
    man.notes = std::move(notes);
    man.root = root;
    for (auto& [rel, bytes] : sink.files) {
        write_file_atomic(root / rel, bytes);
        man.outputs.emplace_back(rel, fnv1a64_hex(bytes));
    }
    man.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_file_atomic(root / "manifest.json", manifest_to_json(man).dump(2) + "\n");
    return man;
}

inline run_manifest run_experiment(const experiment_config& cfg) {
    return run_experiment_at(cfg, resolve_output_root(cfg));
}

struct replay_outcome {
    bool ok = false;
    std::vector<std::string> mismatches;
    std::filesystem::path replay_root;
};

/// Re-runs a manifest's config snapshot into <manifest dir>/.replay and
/// compares CSV/SVG digests. The replay tree is removed when everything
/// matches and kept for inspection otherwise.
inline replay_outcome replay_manifest(const std::filesystem::path& manifest_path) {
    nlohmann::json j = nlohmann::json::parse(read_file(manifest_path), nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("config") ||
        !j.contains("outputs"))
        throw config_error("manifest: not a valid esplab manifest");

    const parse_result parsed = validate_config(j["config"].dump());
    if (!parsed.ok()) {
        std::string msg = "manifest config invalid:";
        for (const auto& e : parsed.errors) msg += "\n  " + e;
        throw config_error(msg);
    }

    replay_outcome out;
    out.replay_root = manifest_path.parent_path() / ".replay";
    std::filesystem::remove_all(out.replay_root);
    const run_manifest rerun = run_experiment_at(*parsed.config, out.replay_root);

    for (const auto& entry : j["outputs"]) {
        const std::string path = entry.at("path").get<std::string>();
        const std::string want = entry.at("digest").get<std::string>();
        std::string got = "<missing>";
        for (const auto& [rel, digest] : rerun.outputs)
            if (rel == path) got = digest;
        if (got != want)
            out.mismatches.push_back(path + ": recorded " + want + ", replay " + got);
    }
    out.ok = out.mismatches.empty();
    if (out.ok) std::filesystem::remove_all(out.replay_root);
    return out;
}

} // namespace esplab
