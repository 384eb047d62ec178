#include "vdp/manifold.hpp"

#include "vdp/control.hpp"

namespace vdp {

std::optional<double> SinusoidalManifold::cancelled_control(const PolarState& s,
                                                            const ChiParams& a, double mu) const {
    return control_sinusoidal_cancelled(s, a, b_, mu).u_raw;
}

void verify_manifold_contract(const Manifold& m, double r_guard) {
    constexpr int n = 257;
    constexpr double fd_step = 1e-5;
    double gmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double theta = 2.0 * M_PI * i / n - M_PI;
        const double g0 = m.g(theta);
        gmin = std::min(gmin, g0);
        if (std::abs(m.g(theta + 2.0 * M_PI) - g0) > 1e-12)
            throw DegenerateManifold("manifold is not 2*pi-periodic at theta=" +
                                     std::to_string(theta));
        const double fd = (m.g(theta + fd_step) - m.g(theta - fd_step)) / (2.0 * fd_step);
        if (std::abs(fd - m.dg_dtheta(theta)) > 1e-6)
            throw DegenerateManifold("manifold derivative mismatch at theta=" +
                                     std::to_string(theta));
    }
    if (!(gmin > r_guard))
        throw DegenerateManifold("manifold reaches the guard radius (min g = " +
                                 std::to_string(gmin) + ")");
}

OffsetState offset(const PolarState& s, const Manifold& m) {
    if (s.r <= 0.0) throw NonPositiveRadius(s.r);
    return {s.r - m.g(s.theta), s.theta};
}

double implicit_cartesian_residual(const CartesianState& p, const ManifoldParams& b) {
    const double rho2 = p.x * p.x + p.y * p.y;
    const double q = rho2 - b.b1 * p.y;
    return q * q - b.b0 * b.b0 * rho2;
}

} // namespace vdp
