#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "vdp/capi.h"

namespace {

std::string config_stem(const std::string& path) {
    const size_t slash = path.find_last_of("/\\");
    std::string name = (slash == std::string::npos) ? path : path.substr(slash + 1);
    const size_t dot = name.find_last_of('.');
    if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
    return name.empty() ? "run" : name;
}

int fail(vdp_status st) {
    std::fprintf(stderr, "error: %s\n", vdp_last_error());
    return static_cast<int>(st);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Terminal-manifold backstepping toolkit for the forced Van der Pol oscillator"};
    app.require_subcommand(1);

    std::string config, out_dir, grid, run_dir;

    CLI::App* sim = app.add_subcommand("simulate", "Run a scenario configuration");
    sim->add_option("config", config, "scenario JSON file")->required();
    sim->add_option("-o,--out", out_dir, "output directory (default: runs/<config stem>)");

    CLI::App* sweep = app.add_subcommand("sweep", "Run a cross-product parameter sweep");
    sweep->add_option("config", config, "base scenario JSON file")->required();
    sweep->add_option("--grid", grid, "axis spec, e.g. \"mu=0.05,0.1;b1=1.0,1.5\"")->required();
    sweep->add_option("-o,--out", out_dir, "output directory (default: sweeps/<config stem>)");

    app.add_subcommand("verify", "Run the property-check suite");

    CLI::App* render = app.add_subcommand("render", "Re-render portraits of a run directory");
    render->add_option("run_dir", run_dir, "directory produced by simulate")->required();

    CLI11_PARSE(app, argc, argv);

    if (sim->parsed()) {
        vdp_scenario* sc = nullptr;
        vdp_status st = vdp_scenario_create_from_file(config.c_str(), &sc);
        if (st != VDP_OK) return fail(st);
        const std::string dir = out_dir.empty() ? "runs/" + config_stem(config) : out_dir;
        char* metrics = nullptr;
        st = vdp_scenario_run(sc, dir.c_str(), &metrics);
        vdp_scenario_destroy(sc);
        if (st != VDP_OK) return fail(st);
        std::fputs(metrics, stdout);
        vdp_string_free(metrics);
        std::fprintf(stderr, "wrote %s\n", dir.c_str());
        return 0;
    }

    if (sweep->parsed()) {
        vdp_scenario* sc = nullptr;
        vdp_status st = vdp_scenario_create_from_file(config.c_str(), &sc);
        if (st != VDP_OK) return fail(st);
        const std::string dir = out_dir.empty() ? "sweeps/" + config_stem(config) : out_dir;
        char* table = nullptr;
        st = vdp_scenario_sweep(sc, grid.c_str(), dir.c_str(), &table);
        vdp_scenario_destroy(sc);
        if (st != VDP_OK) return fail(st);
        std::fputs(table, stdout);
        vdp_string_free(table);
        std::fprintf(stderr, "wrote %s\n", dir.c_str());
        return 0;
    }

    if (app.get_subcommand("verify")->parsed()) {
        char* report = nullptr;
        const vdp_status st = vdp_verify(&report);
        if (report) {
            std::fputs(report, stdout);
            vdp_string_free(report);
        }
        if (st != VDP_OK && st != VDP_VERIFY_FAILURE) return fail(st);
        return static_cast<int>(st);
    }

    const vdp_status st = vdp_render_run_dir(run_dir.c_str());
    if (st != VDP_OK) return fail(st);
    std::fprintf(stderr, "rendered %s\n", run_dir.c_str());
    return 0;
}
