#pragma once
#include <string>
#include <vector>

#include "vdp/integrator.hpp"

namespace vdp {

struct ScenarioConfig; // scenario.hpp

// Writes portrait_polar.svg, portrait_cartesian.svg and control_vs_theta.svg
// into out_dir. One track per trajectory; the manifold of every schedule
// segment is overlaid.
void render_svgs(const ScenarioConfig& cfg, const std::vector<std::vector<Sample>>& tracks,
                 const std::string& out_dir);

// Re-renders the portraits of an existing run directory from scenario.json and
// its trajectory_<k>.csv files.
void render_run_dir(const std::string& run_dir);

} // namespace vdp
