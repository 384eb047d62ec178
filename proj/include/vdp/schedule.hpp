#pragma once
#include <vector>

#include "vdp/manifold.hpp"

namespace vdp {

// Piecewise-constant time course of the manifold and system parameters.
struct ScheduleSegment {
    double t_start = 0.0;
    ManifoldParams b;
    double mu = 0.1;
};

struct Schedule {
    std::vector<ScheduleSegment> segments;

    // Last segment with t_start <= t; segments are validated non-empty,
    // strictly increasing, first at t = 0.
    const ScheduleSegment& active_at(double t) const;

    // Interior switch times, ascending.
    std::vector<double> switch_times() const;
};

} // namespace vdp
