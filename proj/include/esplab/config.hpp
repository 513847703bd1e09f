#pragma once

#include "esplab/errors.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace esplab {

enum class experiment_kind {
    trajectory_compare,
    noise_sensitivity,
    encoding_scatter,
    stability_plot,
    equicontinuity,
};

inline const char* kind_name(experiment_kind k) {
    switch (k) {
    case experiment_kind::trajectory_compare: return "trajectory-compare";
    case experiment_kind::noise_sensitivity: return "noise-sensitivity";
    case experiment_kind::encoding_scatter: return "encoding-scatter";
    case experiment_kind::stability_plot: return "stability-plot";
    case experiment_kind::equicontinuity: return "equicontinuity";
    }
    return "?";
}

inline std::optional<experiment_kind> kind_from_name(const std::string& s) {
    for (experiment_kind k :
         {experiment_kind::trajectory_compare, experiment_kind::noise_sensitivity,
          experiment_kind::encoding_scatter, experiment_kind::stability_plot,
          experiment_kind::equicontinuity})
        if (s == kind_name(k)) return k;
    return std::nullopt;
}

struct system_config {
    std::size_t neurons = 50;
    std::size_t input_dim = 1;
    std::uint64_t seed = 1;
    std::string a_csv;  // optional explicit input matrix
    std::string b_csv;  // optional explicit reservoir matrix (normalized on load)
    double parameter_lo = 0.05;
    double parameter_hi = 2.0;

    bool operator==(const system_config&) const = default;
};

struct input_config {
    std::string kind = "sinusoid"; // sinusoid | uniform-random
    std::size_t length = 500;
    double amplitude = 0.5;
    double period = 50.0;
    std::uint64_t seed = 2;

    bool operator==(const input_config&) const = default;
};

struct grid_config {
    double lo = 0.7;
    double hi = 1.5;
    double spacing = 0.005;

    bool operator==(const grid_config&) const = default;
};

struct noise_cfg {
    double epsilon = 1e-3;
    std::uint64_t seed = 3;

    bool operator==(const noise_cfg&) const = default;
};

struct threshold_cfg {
    double tau_abs = 1e-4;
    double kappa = 20.0;
    std::size_t window = 3;

    bool operator==(const threshold_cfg&) const = default;
};

/// Reproducible description of one experiment. Every field has a documented
/// default; all randomness flows from the seeds recorded here.
struct experiment_config {
    experiment_kind kind = experiment_kind::stability_plot;
    std::string name; // defaults to the kind string
    system_config system;
    input_config input;
    grid_config grid;
    std::size_t samples = 50; // M
    std::size_t horizon = 500; // n
    std::vector<std::size_t> shifts = {0};
    std::vector<double> alphas = {1.02, 1.05};
    double alpha = 0.4; // equicontinuity base point
    noise_cfg noise;
    threshold_cfg threshold;
    std::string sample_mode = "interior"; // interior | boundary
    std::uint64_t ensemble_seed = 4;
    std::uint64_t readout_seed = 5;
    std::vector<std::size_t> coordinates = {0};
    std::vector<std::size_t> horizons = {50, 100, 200, 400};
    std::vector<double> offsets = {0.0, 0.0025, 0.005};
    double esp_epsilon = 1e-6;
    double norm_order = 2.0;
    int workers = 1;
    std::string output_dir; // empty: $ESPLAB_OUTDIR, then "out"
    bool log_scale = true;

    bool operator==(const experiment_config&) const = default;
};

struct parse_result {
    std::optional<experiment_config> config;
    std::vector<std::string> errors;

    bool ok() const { return config.has_value() && errors.empty(); }
};

namespace detail {

using njson = nlohmann::json;

/// Strict field access: every read marks its key, unknown keys are rejected,
/// and every violation is reported with the offending key path.
class object_reader {
public:
    object_reader(const njson& obj, std::string prefix, std::vector<std::string>& errs)
        : obj_(obj), prefix_(std::move(prefix)), errs_(errs) {}

    bool has(const char* key) const { return obj_.contains(key); }

    void number(const char* key, double& out) {
        seen_.insert(key);
        if (!obj_.contains(key)) return;
        const njson& v = obj_.at(key);
        if (!v.is_number()) {
            fail(key, "must be a number");
            return;
        }
        out = v.get<double>();
    }

    static bool non_negative_integer(const njson& v) {
        return v.is_number_unsigned() ||
               (v.is_number_integer() && v.get<long long>() >= 0);
    }

    void count(const char* key, std::size_t& out) {
        seen_.insert(key);
        if (!obj_.contains(key)) return;
        const njson& v = obj_.at(key);
        if (!non_negative_integer(v)) {
            fail(key, "must be a non-negative integer");
            return;
        }
        out = v.get<std::size_t>();
    }

    void seed(const char* key, std::uint64_t& out) {
        seen_.insert(key);
        if (!obj_.contains(key)) return;
        const njson& v = obj_.at(key);
        if (!non_negative_integer(v)) {
            fail(key, "must be a non-negative integer");
            return;
        }
        out = v.get<std::uint64_t>();
    }

    void integer(const char* key, int& out) {
        seen_.insert(key);
        if (!obj_.contains(key)) return;
        const njson& v = obj_.at(key);
        if (!v.is_number_integer()) {
            fail(key, "must be an integer");
            return;
        }
        out = v.get<int>();
    }

    void text(const char* key, std::string& out) {
        seen_.insert(key);
        if (!obj_.contains(key)) return;
        const njson& v = obj_.at(key);
        if (!v.is_string()) {
            fail(key, "must be a string");
            return;
        }
        out = v.get<std::string>();
    }

    void flag(const char* key, bool& out) {
        seen_.insert(key);
        if (!obj_.contains(key)) return;
        const njson& v = obj_.at(key);
        if (!v.is_boolean()) {
            fail(key, "must be a boolean");
            return;
        }
        out = v.get<bool>();
    }

    void number_list(const char* key, std::vector<double>& out) {
        seen_.insert(key);
        if (!obj_.contains(key)) return;
        const njson& v = obj_.at(key);
        if (!v.is_array()) {
            fail(key, "must be an array of numbers");
            return;
        }
        std::vector<double> vals;
        for (const auto& e : v) {
            if (!e.is_number()) {
                fail(key, "must be an array of numbers");
                return;
            }
            vals.push_back(e.get<double>());
        }
        out = std::move(vals);
    }

    void count_list(const char* key, std::vector<std::size_t>& out) {
        seen_.insert(key);
        if (!obj_.contains(key)) return;
        const njson& v = obj_.at(key);
        if (!v.is_array()) {
            fail(key, "must be an array of non-negative integers");
            return;
        }
        std::vector<std::size_t> vals;
        for (const auto& e : v) {
            if (!non_negative_integer(e)) {
                fail(key, "must be an array of non-negative integers");
                return;
            }
            vals.push_back(e.get<std::size_t>());
        }
        out = std::move(vals);
    }

    /// Nested object; returns nullptr when absent.
    const njson* object(const char* key) {
        seen_.insert(key);
        if (!obj_.contains(key)) return nullptr;
        const njson& v = obj_.at(key);
        if (!v.is_object()) {
            fail(key, "must be an object");
            return nullptr;
        }
        return &v;
    }

    void fail(const char* key, const std::string& why) {
        errs_.push_back(prefix_ + key + ": " + why);
    }

    void reject_unknown() {
        for (const auto& item : obj_.items())
            if (!seen_.count(item.key()))
                errs_.push_back(prefix_ + item.key() + ": unknown key");
    }

private:
    const njson& obj_;
    std::string prefix_;
    std::vector<std::string>& errs_;
    std::set<std::string> seen_;
};

} // namespace detail

using param_check_list = std::vector<std::pair<std::string, double>>;

/// Parameter values the chosen experiment kind will visit; all must lie in
/// the system's parameter space.
inline param_check_list gather_param_checks(const experiment_config& cfg) {
    param_check_list checks;
    switch (cfg.kind) {
    case experiment_kind::stability_plot:
    case experiment_kind::encoding_scatter:
        checks.emplace_back("grid.lo", cfg.grid.lo);
        checks.emplace_back("grid.hi", cfg.grid.hi);
        break;
    case experiment_kind::trajectory_compare:
    case experiment_kind::noise_sensitivity:
        for (std::size_t i = 0; i < cfg.alphas.size(); ++i)
            checks.emplace_back("alphas[" + std::to_string(i) + "]", cfg.alphas[i]);
        break;
    case experiment_kind::equicontinuity:
        checks.emplace_back("alpha", cfg.alpha);
        for (std::size_t i = 0; i < cfg.offsets.size(); ++i)
            checks.emplace_back("alpha+offsets[" + std::to_string(i) + "]",
                                cfg.alpha + cfg.offsets[i]);
        break;
    }
    return checks;
}

/// Strict parse of a JSON experiment config: unknown keys are rejected,
/// every constraint violation names the offending key, and malformed input
/// never falls back to silent defaults.
inline parse_result validate_config(const std::string& text) {
    using detail::njson;
    parse_result res;
    auto& errs = res.errors;

    std::string trimmed = text;
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r\n"));
    njson root;
    if (trimmed.empty()) {
        root = njson::object();
    } else {
        root = njson::parse(text, nullptr, false);
        if (root.is_discarded()) {
            errs.push_back("config: not valid JSON");
            return res;
        }
        if (!root.is_object()) {
            errs.push_back("config: top level must be a JSON object");
            return res;
        }
    }

    experiment_config cfg;
    detail::object_reader r(root, "", errs);

    std::string kind_text;
    r.text("kind", kind_text);
    if (kind_text.empty()) {
        r.fail("kind", "experiment-kind required (one of trajectory-compare, "
                       "noise-sensitivity, encoding-scatter, stability-plot, "
                       "equicontinuity)");
    } else if (auto k = kind_from_name(kind_text)) {
        cfg.kind = *k;
    } else {
        r.fail("kind", "unknown experiment-kind '" + kind_text + "'");
    }

    r.text("name", cfg.name);

    if (const auto* o = r.object("system")) {
        detail::object_reader s(*o, "system.", errs);
        s.count("neurons", cfg.system.neurons);
        s.count("input_dim", cfg.system.input_dim);
        s.seed("seed", cfg.system.seed);
        s.text("a_csv", cfg.system.a_csv);
        s.text("b_csv", cfg.system.b_csv);
        s.number("parameter_lo", cfg.system.parameter_lo);
        s.number("parameter_hi", cfg.system.parameter_hi);
        s.reject_unknown();
        if (cfg.system.neurons == 0) s.fail("neurons", "must be >= 1");
        if (cfg.system.input_dim == 0) s.fail("input_dim", "must be >= 1");
        if (!(cfg.system.parameter_lo < cfg.system.parameter_hi))
            s.fail("parameter_lo", "parameter interval must satisfy lo < hi");
    }

    if (const auto* o = r.object("input")) {
        detail::object_reader s(*o, "input.", errs);
        s.text("kind", cfg.input.kind);
        s.count("length", cfg.input.length);
        s.number("amplitude", cfg.input.amplitude);
        s.number("period", cfg.input.period);
        s.seed("seed", cfg.input.seed);
        s.reject_unknown();
        if (cfg.input.kind != "sinusoid" && cfg.input.kind != "uniform-random")
            s.fail("kind", "must be 'sinusoid' or 'uniform-random'");
        if (cfg.input.length == 0) s.fail("length", "must be >= 1");
        if (!(cfg.input.amplitude >= 0.0)) s.fail("amplitude", "must be >= 0");
        if (!(cfg.input.period > 0.0)) s.fail("period", "must be > 0");
    }

    if (const auto* o = r.object("grid")) {
        detail::object_reader s(*o, "grid.", errs);
        s.number("lo", cfg.grid.lo);
        s.number("hi", cfg.grid.hi);
        s.number("spacing", cfg.grid.spacing);
        s.reject_unknown();
        if (!(cfg.grid.spacing > 0.0)) s.fail("spacing", "grid spacing must be > 0");
        if (!(cfg.grid.lo < cfg.grid.hi)) s.fail("lo", "grid needs lo < hi");
    }

    if (const auto* o = r.object("noise")) {
        detail::object_reader s(*o, "noise.", errs);
        s.number("epsilon", cfg.noise.epsilon);
        s.seed("seed", cfg.noise.seed);
        s.reject_unknown();
        if (!(cfg.noise.epsilon >= 0.0)) s.fail("epsilon", "must be >= 0");
    }

    if (const auto* o = r.object("threshold")) {
        detail::object_reader s(*o, "threshold.", errs);
        s.number("tau_abs", cfg.threshold.tau_abs);
        s.number("kappa", cfg.threshold.kappa);
        s.count("window", cfg.threshold.window);
        s.reject_unknown();
        if (!(cfg.threshold.tau_abs > 0.0)) s.fail("tau_abs", "must be > 0");
        if (!(cfg.threshold.kappa > 0.0)) s.fail("kappa", "must be > 0");
    }

    r.count("samples", cfg.samples);
    r.count("horizon", cfg.horizon);
    r.count_list("shifts", cfg.shifts);
    r.number_list("alphas", cfg.alphas);
    r.number("alpha", cfg.alpha);
    r.text("sample_mode", cfg.sample_mode);
    r.seed("ensemble_seed", cfg.ensemble_seed);
    r.seed("readout_seed", cfg.readout_seed);
    r.count_list("coordinates", cfg.coordinates);
    r.count_list("horizons", cfg.horizons);
    r.number_list("offsets", cfg.offsets);
    r.number("esp_epsilon", cfg.esp_epsilon);
    r.number("norm_order", cfg.norm_order);
    r.integer("workers", cfg.workers);
    r.text("output_dir", cfg.output_dir);
    r.flag("log_scale", cfg.log_scale);
    r.reject_unknown();

    // kind-independent constraints
    if (cfg.samples == 0) r.fail("samples", "must be >= 1");
    if (cfg.sample_mode != "interior" && cfg.sample_mode != "boundary")
        r.fail("sample_mode", "must be 'interior' or 'boundary'");
    if (!(cfg.norm_order >= 1.0)) r.fail("norm_order", "must be >= 1");
    if (!(cfg.esp_epsilon > 0.0)) r.fail("esp_epsilon", "must be > 0");
    if (cfg.workers < 1) r.fail("workers", "must be >= 1");
    if (cfg.coordinates.empty()) r.fail("coordinates", "must not be empty");
    for (std::size_t c : cfg.coordinates)
        if (c >= cfg.system.neurons) {
            r.fail("coordinates", "entries must be < system.neurons");
            break;
        }

    // constraints on the fields the chosen kind actually uses
    const bool uses_horizon = cfg.kind == experiment_kind::stability_plot ||
                              cfg.kind == experiment_kind::encoding_scatter;
    if (uses_horizon) {
        if (cfg.horizon == 0) r.fail("horizon", "must be >= 1");
        if (cfg.horizon > cfg.input.length)
            r.fail("horizon", "must not exceed input.length");
    }
    if (cfg.kind == experiment_kind::stability_plot) {
        if (cfg.shifts.empty()) r.fail("shifts", "must not be empty");
        for (std::size_t j : cfg.shifts)
            if (j >= cfg.horizon) {
                r.fail("shifts", "every shift must be smaller than horizon");
                break;
            }
    }
    if (cfg.kind == experiment_kind::trajectory_compare ||
        cfg.kind == experiment_kind::noise_sensitivity) {
        if (cfg.alphas.empty()) r.fail("alphas", "must not be empty");
    }
    if (cfg.kind == experiment_kind::equicontinuity) {
        if (cfg.horizons.empty()) r.fail("horizons", "must not be empty");
        if (cfg.offsets.empty()) r.fail("offsets", "must not be empty");
        for (std::size_t n : cfg.horizons)
            if (n == 0 || n > cfg.input.length) {
                r.fail("horizons", "entries must be in [1, input.length]");
                break;
            }
    }

    const param_check_list to_check = gather_param_checks(cfg);
    for (const auto& [label, value] : to_check)
        if (!(value >= cfg.system.parameter_lo && value <= cfg.system.parameter_hi)) {
            errs.push_back(std::string(label) + ": outside the parameter space [" +
                           std::to_string(cfg.system.parameter_lo) + ", " +
                           std::to_string(cfg.system.parameter_hi) + "]");
        }

    if (cfg.name.empty()) cfg.name = kind_name(cfg.kind);

    if (errs.empty()) res.config = std::move(cfg);
    return res;
}

/// Serializes the full effective config (defaults included) so a manifest
/// snapshot reproduces the run exactly.
inline nlohmann::json config_to_json(const experiment_config& cfg) {
    nlohmann::json j;
    j["kind"] = kind_name(cfg.kind);
    j["name"] = cfg.name;
    j["system"] = {{"neurons", cfg.system.neurons},
                   {"input_dim", cfg.system.input_dim},
                   {"seed", cfg.system.seed},
                   {"a_csv", cfg.system.a_csv},
                   {"b_csv", cfg.system.b_csv},
                   {"parameter_lo", cfg.system.parameter_lo},
                   {"parameter_hi", cfg.system.parameter_hi}};
    j["input"] = {{"kind", cfg.input.kind},
                  {"length", cfg.input.length},
                  {"amplitude", cfg.input.amplitude},
                  {"period", cfg.input.period},
                  {"seed", cfg.input.seed}};
    j["grid"] = {{"lo", cfg.grid.lo}, {"hi", cfg.grid.hi}, {"spacing", cfg.grid.spacing}};
    j["noise"] = {{"epsilon", cfg.noise.epsilon}, {"seed", cfg.noise.seed}};
    j["threshold"] = {{"tau_abs", cfg.threshold.tau_abs},
                      {"kappa", cfg.threshold.kappa},
                      {"window", cfg.threshold.window}};
    j["samples"] = cfg.samples;
    j["horizon"] = cfg.horizon;
    j["shifts"] = cfg.shifts;
    j["alphas"] = cfg.alphas;
    j["alpha"] = cfg.alpha;
    j["sample_mode"] = cfg.sample_mode;
    j["ensemble_seed"] = cfg.ensemble_seed;
    j["readout_seed"] = cfg.readout_seed;
    j["coordinates"] = cfg.coordinates;
    j["horizons"] = cfg.horizons;
    j["offsets"] = cfg.offsets;
    j["esp_epsilon"] = cfg.esp_epsilon;
    j["norm_order"] = cfg.norm_order;
    j["workers"] = cfg.workers;
    j["output_dir"] = cfg.output_dir;
    j["log_scale"] = cfg.log_scale;
    return j;
}

/// Applies one `--key value` override onto raw config JSON using a dotted
/// path ("grid.spacing"). The value is parsed as JSON when possible,
/// otherwise taken as a string.
inline void apply_override(nlohmann::json& root, const std::string& dotted_key,
                           const std::string& value_text) {
    nlohmann::json value = nlohmann::json::parse(value_text, nullptr, false);
    if (value.is_discarded()) value = value_text;
    nlohmann::json* node = &root;
    std::size_t pos = 0;
    while (true) {
        const std::size_t dot = dotted_key.find('.', pos);
        const std::string part = dotted_key.substr(pos, dot - pos);
        if (part.empty()) throw config_error("override key has an empty segment");
        if (dot == std::string::npos) {
            (*node)[part] = value;
            return;
        }
        if (!node->contains(part) || !(*node)[part].is_object())
            (*node)[part] = nlohmann::json::object();
        node = &(*node)[part];
        pos = dot + 1;
    }
}

} // namespace esplab
