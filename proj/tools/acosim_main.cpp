#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "acosim/io.hpp"
#include "acosim/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"acosim - coverage-optimization loop over a wraparound LTE downlink"};
    app.require_subcommand(1);

    acosim::RunManifest manifest;
    auto* run = app.add_subcommand("run", "simulate rounds and write artifacts");
    run->add_option("--scenario", manifest.scenario_path, "scenario file (omit for defaults)");
    run->add_option("--rounds", manifest.rounds, "optimization rounds")->default_val(2);
    std::uint64_t seed = 0;
    auto* seed_opt = run->add_option("--seed", seed, "override the scenario seed");
    run->add_option("--out", manifest.out_dir, "output directory")->required();
    run->add_flag("--emit-heatmaps", manifest.emit_heatmaps, "write PGM heatmaps and grid CSVs");
    run->add_flag("--emit-maps", manifest.emit_maps, "write per-cell coverage-map CSVs");
    run->add_flag("--emit-spectra", manifest.emit_spectra, "write sample Capon spectra");
    run->add_flag("--lenient", manifest.lenient, "warn instead of failing on unknown scenario keys");

    std::string validate_path;
    bool validate_lenient = false;
    auto* validate = app.add_subcommand("validate", "check a scenario file");
    validate->add_option("--scenario", validate_path, "scenario file")->required();
    validate->add_flag("--lenient", validate_lenient, "warn instead of failing on unknown keys");

    auto* defaults = app.add_subcommand("defaults", "print the default scenario");

    CLI11_PARSE(app, argc, argv);

    if (app.got_subcommand(run)) {
        if (seed_opt->count() > 0) manifest.seed_override = seed;
        return acosim::run_manifest(manifest, std::cout, std::cerr);
    }

    if (app.got_subcommand(validate)) {
        std::ifstream f(validate_path);
        if (!f) {
            std::cerr << "error: cannot read scenario file '" << validate_path << "'\n";
            return 1;
        }
        std::stringstream buf;
        buf << f.rdbuf();
        try {
            std::vector<std::string> warnings;
            acosim::parse_scenario(buf.str(), validate_lenient, &warnings);
            for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
            std::cout << "ok\n";
            return 0;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }

    if (app.got_subcommand(defaults)) {
        std::cout << acosim::serialize_scenario(acosim::default_scenario());
        return 0;
    }
    return 1;
}
