#pragma once
#include <functional>
#include <string>
#include <vector>

#include "vdp/control.hpp"
#include "vdp/schedule.hpp"

namespace vdp {

struct IntegratorConfig {
    double h = 0.005;
    double t_end = 100.0;
    int sample_every = 1;
    bool error_monitor = true;
    double r_guard = kDefaultGuardRadius;
};

// One recorded state, carrying the parameters that produced it so emitted rows
// are self-describing. At a schedule switch the boundary sample reflects the
// pre-switch segment; the next step uses the new one.
struct Sample {
    double t = 0.0;
    double r = 0.0;
    double theta = 0.0;
    double v = 0.0;
    double u_raw = 0.0;
    double u_applied = 0.0;
    bool clamped = false;
    double b0 = 0.0, b1 = 0.0, mu = 0.0, a1 = 0.0, a2 = 0.0;
};

enum class EventKind {
    clamp_on,
    clamp_off,
    guard_radius_hit,
    non_finite_derivative,
    non_positive_radius,
    degenerate_manifold,
    singular_denominator,
    schedule_switch,
    adaptation_epoch,
    monitor_violation,
};

const char* event_kind_name(EventKind k);

struct Event {
    double t = 0.0;
    EventKind kind{};
    std::string detail;
};

struct Trajectory {
    std::vector<Sample> samples;
    std::vector<Event> events;
    bool aborted = false;
    double abort_time = 0.0;
    std::string abort_reason;
    int monitor_violations = 0;
};

// Classical 4-stage Runge-Kutta update; every stage derivative must be finite.
template <typename F>
PolarState rk4_step(F&& field, const PolarState& y, double h, double t_for_error = 0.0) {
    auto finite = [&](const Derivatives& d) {
        if (!std::isfinite(d.dr_dt) || !std::isfinite(d.dtheta_dt))
            throw NonFiniteDerivative(t_for_error);
        return d;
    };
    const Derivatives k1 = finite(field(y));
    const Derivatives k2 =
        finite(field({y.r + 0.5 * h * k1.dr_dt, y.theta + 0.5 * h * k1.dtheta_dt}));
    const Derivatives k3 =
        finite(field({y.r + 0.5 * h * k2.dr_dt, y.theta + 0.5 * h * k2.dtheta_dt}));
    const Derivatives k4 = finite(field({y.r + h * k3.dr_dt, y.theta + h * k3.dtheta_dt}));
    return {y.r + h / 6.0 * (k1.dr_dt + 2.0 * k2.dr_dt + 2.0 * k3.dr_dt + k4.dr_dt),
            y.theta + h / 6.0 * (k1.dtheta_dt + 2.0 * k2.dtheta_dt + 2.0 * k3.dtheta_dt +
                                 k4.dtheta_dt)};
}

// Invoked at epoch boundaries; may adjust the active gain parameters and
// append events to the trajectory.
using EpochCallback = std::function<ChiParams(double t, Trajectory& traj, const ChiParams& a)>;

// Fixed-step RK4 over the schedule, splitting steps so switches, epochs and
// t_end are hit exactly. Control/field failures abort the trajectory (recorded
// as an event), never throw out.
Trajectory integrate_closed_loop(const PolarState& ic, const Schedule& sched, const ChiParams& a0,
                                 const ControlBounds& bounds, const IntegratorConfig& cfg,
                                 double epoch_period = 0.0, const EpochCallback& epoch_cb = {});

} // namespace vdp
