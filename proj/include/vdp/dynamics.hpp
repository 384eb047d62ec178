#pragma once
#include <cmath>
#include <limits>

#include "vdp/errors.hpp"

namespace vdp {

constexpr double kDefaultGuardRadius = 1e-3;

// Phase point of the forced oscillator in polar coordinates. theta is stored
// unwrapped so winding is observable; trig evaluation reduces it implicitly.
struct PolarState {
    double r = 0.0;
    double theta = 0.0;
};

struct CartesianState {
    double x = 0.0;
    double y = 0.0;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double x) const { return x >= lo && x <= hi; }
};

struct SystemParams {
    double mu = 0.1;
    Interval mu_set{0.0, 0.5};
};

struct ControlBounds {
    double u_min = -std::numeric_limits<double>::infinity();
    double u_max = std::numeric_limits<double>::infinity();
    bool unbounded() const { return std::isinf(u_min) && std::isinf(u_max); }
};

struct Derivatives {
    double dr_dt = 0.0;
    double dtheta_dt = 0.0;
};

// Open-loop vector field of the forced Van der Pol oscillator in polar form.
Derivatives vector_field_polar(const PolarState& s, double u, double mu);

CartesianState polar_to_cartesian(const PolarState& s);

// theta normalized to [0, 2*pi).
PolarState cartesian_to_polar(const CartesianState& c);

} // namespace vdp
