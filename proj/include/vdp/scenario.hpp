#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "vdp/adaptation.hpp"
#include "vdp/control.hpp"
#include "vdp/integrator.hpp"
#include "vdp/schedule.hpp"

namespace vdp {

using ojson = nlohmann::ordered_json;

// Fully-resolved scenario; every field has the reference-scenario default so an
// empty JSON object is a valid configuration.
struct ScenarioConfig {
    std::string name = "reference";
    std::vector<PolarState> initial_states{{1.0, 0.0}, {2.0, 0.0}, {6.0, 0.0}, {8.0, 0.0}};
    ChiParams gains{0.5, 1.0};
    Schedule schedule{{{0.0, {4.0, 1.5}, 0.1}}};
    ControlBounds bounds{-2.0, 2.0};
    IntegratorConfig integrator{};
    AdaptationConfig adaptation{};
    AdmissibleSets admissible{};
    double convergence_tol = 1e-2;
    std::uint64_t seed = 12345;
};

// Throws ConfigError listing every violation (unknown keys, bad types, bad values).
ScenarioConfig parse_scenario(const ojson& j);
ScenarioConfig load_scenario_file(const std::string& path);
ojson resolved_config_json(const ScenarioConfig& cfg);

struct TrajectoryMetrics {
    int index = 0;
    double r0 = 0.0;
    double theta0 = 0.0;
    std::string status;               // "converged" | "not_converged" | "aborted"
    bool has_convergence_time = false;
    double convergence_time = 0.0;    // earliest t with |v| < tol from there on
    double final_time = 0.0;
    double final_offset = 0.0;
    double max_abs_u = 0.0;
    long clamp_count = 0;             // unclamped -> clamped onsets across samples
    double min_dtheta_dt = 0.0;
    long monitor_violations = 0;
    size_t n_samples = 0;
    double abort_time = 0.0;
    std::string abort_reason;
    std::vector<EpochRecord> epochs;
};

TrajectoryMetrics compute_metrics(const ScenarioConfig& cfg, const Trajectory& traj, int index,
                                  const std::vector<EpochRecord>& epochs);

struct ScenarioResult {
    std::vector<Trajectory> trajectories;
    std::vector<TrajectoryMetrics> metrics;
    ojson metrics_json;
};

// Runs every initial state, writes scenario.json, trajectory_<k>.csv, metrics.json
// and the three SVG portraits into out_dir.
ScenarioResult run_scenario(const ScenarioConfig& cfg, const std::string& out_dir);

struct SweepAxis {
    std::string name;                  // mu | b0 | b1 | a1 | a2 | u_min | u_max
    std::vector<double> values;
};

// Grid spec syntax: "mu=0.05,0.1;b1=1.0,1.5" (axes separated by ';').
std::vector<SweepAxis> parse_grid_spec(const std::string& spec);

// Cross product in row-major axis order; cell_<k> subdirectories plus a summary
// table at <out_dir>/sweep.csv (also returned). Invalid cells are recorded in the
// table and do not stop the sweep.
std::string run_sweep(const ScenarioConfig& base, const std::string& grid_spec,
                      const std::string& out_dir);

} // namespace vdp
