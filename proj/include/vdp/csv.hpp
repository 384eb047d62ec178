#pragma once
#include <array>
#include <string>
#include <vector>

#include "vdp/integrator.hpp"

namespace vdp {

inline constexpr const char* kTrajectoryHeader =
    "t,r,theta,x,y,v,u_raw,u_applied,clamped,b0,b1,mu,a1,a2";

// Row layout matching kTrajectoryHeader; x, y derived from (r, theta).
std::array<double, 14> csv_row(const Sample& s);

// Doubles are written with %.17g so a re-parse reproduces every bit.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);
std::vector<std::array<double, 14>> read_trajectory_csv(const std::string& path);

} // namespace vdp
