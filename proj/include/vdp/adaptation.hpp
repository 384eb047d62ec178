#pragma once
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "vdp/control.hpp"
#include "vdp/integrator.hpp"
#include "vdp/schedule.hpp"

namespace vdp {

struct AdaptationConfig {
    bool enabled = false;
    double epoch_period = 5.0;
    int id_window = 200;
    double v_max = 2.0;
    int grid_n = 128;
    double sigma = 0.0;
    double phi_min = 0.1;
};

// Admissible boxes for the tunable gains and the identified quantities.
struct AdmissibleSets {
    Interval a1{0.0, 2.0};
    Interval a2{0.1, 4.0};
    Interval b0{2.0, 8.0};
    Interval b1{-2.0, 2.0};
    Interval mu{0.0, 0.5};
};

struct WorstCase {
    double lo = 0.0;
    double hi = 0.0;
};

// Least-squares estimate of mu from a sensed sample window via the radial
// regression phi = r cos^2(theta) (1 - r^2 sin^2 theta), y = dr/dt - u cos(theta)
// with central differences for dr/dt. Samples with |phi| < phi_min are excluded;
// fewer than 10 usable samples throws InsufficientExcitation.
double identify_mu(const std::vector<Sample>& window, double phi_min);

// Extremes of the raw control over the grid theta_i = 2*pi*i/grid_n,
// v_j uniform on [-v_max, v_max] with grid_n/4 + 1 points, evaluated at r = v + g.
// Throws DegenerateManifold if any grid state has r <= r_guard or a denominator
// r + b1 sin(theta) <= eps_den * max(r, 1).
WorstCase worst_case_control(const ChiParams& a, const ManifoldParams& b, double mu, double v_max,
                             int grid_n, double r_guard = kDefaultGuardRadius,
                             double eps_den = kDefaultEpsDen);

// Largest s in [0,1] with feasible(s), assuming nothing about shape. Fast paths:
// s=1 if feasible, else bisection when feasible(0) holds (resolution tol), else a
// descending scan over the 1024-point uniform partition (sets *used_scan).
// Throws Infeasible when every probe fails.
double largest_feasible_scale(const std::function<bool(double)>& feasible, double tol,
                              bool* used_scan = nullptr);

struct EpochRecord {
    double t = 0.0;
    std::string status;   // "updated" | "infeasible" | "skipped"
    double s = 0.0;       // adopted gain scale (meaningful only when updated)
    double a1 = 0.0;      // a1 in force after the epoch
    double mu_tilde = 0.0;
    double b0_tilde = 0.0;
    double b1_tilde = 0.0;
    double wc_lo = 0.0;   // certified envelope (meaningful only when updated)
    double wc_hi = 0.0;
    bool fallback_scan = false;
};

// One identification/adjustment pass per epoch; plugs into integrate_closed_loop
// as the epoch callback. Keeps the current gains whenever identification or the
// feasibility search fails, and logs every epoch either way.
class MiacController {
  public:
    MiacController(const AdaptationConfig& cfg, const ChiParams& a_nominal,
                   const AdmissibleSets& sets, const ControlBounds& bounds,
                   const Schedule& schedule, std::uint64_t seed);

    ChiParams epoch(double t, Trajectory& traj, const ChiParams& a_current);
    EpochCallback callback();

    const std::vector<EpochRecord>& log() const { return log_; }

  private:
    AdaptationConfig cfg_;
    ChiParams a_nominal_;
    AdmissibleSets sets_;
    ControlBounds bounds_;
    const Schedule* schedule_;
    std::mt19937_64 rng_;
    std::vector<EpochRecord> log_;
};

} // namespace vdp
