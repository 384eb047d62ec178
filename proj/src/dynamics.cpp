#include "vdp/dynamics.hpp"

namespace vdp {

Derivatives vector_field_polar(const PolarState& state, double u, double mu) {
    if (state.r <= 0.0) throw NonPositiveRadius(state.r);
    const double s = std::sin(state.theta);
    const double c = std::cos(state.theta);
    const double damping = 1.0 - state.r * state.r * s * s;
    return {mu * state.r * c * c * damping + u * c,
            1.0 - mu * s * c * damping - (s / state.r) * u};
}

CartesianState polar_to_cartesian(const PolarState& s) {
    return {s.r * std::cos(s.theta), s.r * std::sin(s.theta)};
}

PolarState cartesian_to_polar(const CartesianState& c) {
    if (c.x == 0.0 && c.y == 0.0) throw OriginUndefined();
    double theta = std::atan2(c.y, c.x);
    if (theta < 0.0) theta += 2.0 * M_PI;
    return {std::hypot(c.x, c.y), theta};
}

} // namespace vdp
