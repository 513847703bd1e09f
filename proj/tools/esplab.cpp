// esplab command-line front end.
//
//   esplab run <config.json> [--out DIR] [--key value ...]
//   esplab replay <manifest.json>
//   esplab check
//
// Exit codes: 0 success, 2 config error, 3 numeric/reproducibility error.

#include "esplab/esplab.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_numeric = 3;

int cmd_run(const std::string& config_path, const std::string& out_dir,
            const std::vector<std::string>& extras) {
    std::string text;
    try {
        text = esplab::read_file(config_path);
    } catch (const esplab::error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    }

    nlohmann::json raw = nlohmann::json::parse(text, nullptr, false);
    if (raw.is_discarded()) {
        // Let validate_config report it uniformly (covers the empty-file case).
        raw = nlohmann::json::object();
        if (!text.empty() && text.find_first_not_of(" \t\r\n") != std::string::npos) {
            std::cerr << "config error: " << config_path << " is not valid JSON\n";
            return exit_config;
        }
    }

    // --key value overrides on top of the file.
    for (std::size_t i = 0; i < extras.size(); ++i) {
        const std::string& tok = extras[i];
        if (tok.rfind("--", 0) != 0 || tok.size() <= 2 || i + 1 == extras.size()) {
            std::cerr << "config error: expected --key value overrides, got '" << tok
                      << "'\n";
            return exit_config;
        }
        try {
            esplab::apply_override(raw, tok.substr(2), extras[++i]);
        } catch (const esplab::error& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return exit_config;
        }
    }
    if (!out_dir.empty()) raw["output_dir"] = out_dir;

    const esplab::parse_result parsed = esplab::validate_config(raw.dump());
    if (!parsed.ok()) {
        for (const auto& e : parsed.errors) std::cerr << "config error: " << e << "\n";
        return exit_config;
    }

    try {
        const esplab::run_manifest man = esplab::run_experiment(*parsed.config);
        std::cout << "experiment '" << man.config.name << "' -> " << man.root.string()
                  << " (" << man.outputs.size() << " files, "
                  << esplab::format_number(man.wall_seconds) << " s)\n";
        for (const auto& note : man.notes) std::cout << "  " << note << "\n";
        return exit_ok;
    } catch (const esplab::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const esplab::numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return exit_numeric;
    } catch (const esplab::error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    }
}

int cmd_replay(const std::string& manifest_path) {
    try {
        const esplab::replay_outcome out = esplab::replay_manifest(manifest_path);
        if (out.ok) {
            std::cout << "replay OK: all recorded digests reproduced\n";
            return exit_ok;
        }
        std::cerr << "replay MISMATCH (" << out.mismatches.size() << " files):\n";
        for (const auto& m : out.mismatches) std::cerr << "  " << m << "\n";
        std::cerr << "replay outputs kept under " << out.replay_root.string() << "\n";
        return exit_numeric;
    } catch (const esplab::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const esplab::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numeric;
    }
}

int cmd_check() {
    const auto results = esplab::run_selfcheck();
    bool all_ok = true;
    for (const auto& [name, ok] : results) {
        std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << "\n";
        all_ok = all_ok && ok;
    }
    std::cout << (all_ok ? "all checks passed\n" : "self-check FAILED\n");
    return all_ok ? exit_ok : exit_numeric;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"esplab: driven-system encoding sets, parameter-stability plots, and "
                 "edge-of-criticality detection"};
    app.set_version_flag("--version", esplab::version_string);
    app.require_subcommand(1);

    std::string config_path, manifest_path, out_dir;

    CLI::App* run =
        app.add_subcommand("run", "run an experiment described by a JSON config");
    run->add_option("config", config_path, "path to the experiment config JSON")
        ->required();
    run->add_option("--out", out_dir, "output directory (overrides config/env)");
    run->allow_extras(); // --key value config overrides

    CLI::App* replay =
        app.add_subcommand("replay", "re-run a manifest and verify output digests");
    replay->add_option("manifest", manifest_path, "path to a manifest.json")->required();

    app.add_subcommand("check", "run the built-in invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_config;
    }

    try {
        if (run->parsed()) return cmd_run(config_path, out_dir, run->remaining());
        if (replay->parsed()) return cmd_replay(manifest_path);
        return cmd_check();
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return exit_numeric;
    }
}
