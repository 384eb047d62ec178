#include "vdp/control.hpp"

namespace vdp {

double chi_arctan(double v, double theta, const ChiParams& a) {
    const double c = std::cos(theta);
    return -a.a1 * c * c * std::atan(a.a2 * v);
}

double ArctanChi::eval(double v, double theta, const ChiParams& a) const {
    return chi_arctan(v, theta, a);
}

void verify_chi_contract(const ChiFunction& chi, const ChiParams& a) {
    constexpr int n = 64;
    const double vs[] = {-1e6, -10.0, -1.0, -0.1, 0.0, 0.1, 1.0, 10.0, 1e6};
    const double bound = a.a1 * M_PI / 2.0 + 1e-15;
    for (int i = 0; i < n; ++i) {
        const double theta = 2.0 * M_PI * i / n;
        if (chi.eval(0.0, theta, a) != 0.0)
            throw Error(Status::runtime_error, "chi contract violated: chi(0) != 0");
        for (double v : vs) {
            const double x = chi.eval(v, theta, a);
            if (v * x > 0.0)
                throw Error(Status::runtime_error, "chi contract violated: sign opposition");
            if (std::abs(x) > bound)
                throw Error(Status::runtime_error, "chi contract violated: magnitude bound");
        }
    }
}

double transformed_field_P(double v, double theta, double u, double mu, const Manifold& m) {
    const double g = m.g(theta);
    const double dg = m.dg_dtheta(theta);
    const double r = v + g;
    if (r <= 0.0) throw NonPositiveRadius(r);
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double damping = 1.0 - r * r * s * s;
    return u * (c + dg * s / r) + mu * c * c * r * damping + mu * s * c * dg * damping - dg;
}

namespace {

double generic_raw_at(const PolarState& s, const ChiParams& a, double mu, const Manifold& m,
                      double* den_out) {
    const double g = m.g(s.theta);
    const double dg = m.dg_dtheta(s.theta);
    const double sn = std::sin(s.theta);
    const double cs = std::cos(s.theta);
    const double gamma1 = 1.0 - s.r * s.r * sn * sn;
    const double gamma2 = s.r * cs + sn * dg;
    const double den = cs + dg * sn / s.r;
    *den_out = den;
    return (chi_arctan(s.r - g, s.theta, a) - mu * cs * gamma1 * gamma2 + dg) / den;
}

} // namespace

ControlEvaluation control_generic(const PolarState& s, const ChiParams& a, double mu,
                                  const Manifold& m, double eps_den) {
    if (s.r <= 0.0) throw NonPositiveRadius(s.r);
    double den = 0.0;
    double u = generic_raw_at(s, a, mu, m, &den);
    if (std::abs(den) >= eps_den) return {u, u, false, false};
    if (auto exact = m.cancelled_control(s, a, mu)) return {*exact, *exact, false, true};
    for (double nudge : {eps_den, -eps_den}) {
        u = generic_raw_at({s.r, s.theta + nudge}, a, mu, m, &den);
        if (std::abs(den) >= eps_den) return {u, u, false, true};
    }
    throw SingularDenominator("control denominator below " + std::to_string(eps_den) +
                              " at theta=" + std::to_string(s.theta) +
                              " and angle nudging failed to escape");
}

ControlEvaluation control_sinusoidal_cancelled(const PolarState& s, const ChiParams& a,
                                               const ManifoldParams& b, double mu) {
    if (s.r <= 0.0) throw NonPositiveRadius(s.r);
    const double sn = std::sin(s.theta);
    const double cs = std::cos(s.theta);
    const double den = s.r + b.b1 * sn;
    if (den <= kDefaultEpsDen * s.r)
        throw DegenerateManifold("cancelled-form denominator r + b1*sin(theta) = " +
                                 std::to_string(den) + " at r=" + std::to_string(s.r) +
                                 ", theta=" + std::to_string(s.theta));
    const double v = s.r - (b.b0 + b.b1 * sn);
    const double damping = 1.0 - s.r * s.r * sn * sn;
    const double u =
        s.r * (b.b1 - a.a1 * cs * std::atan(a.a2 * v) - mu * cs * damping * den) / den;
    return {u, u, false, false};
}

ControlEvaluation saturate(double u_raw, const ControlBounds& bounds) {
    const double u = std::min(std::max(u_raw, bounds.u_min), bounds.u_max);
    return {u_raw, u, u != u_raw, false};
}

ClosedLoopResult closed_loop_field(const PolarState& s, const ChiParams& a,
                                   const ManifoldParams& b, double mu,
                                   const ControlBounds& bounds) {
    ControlEvaluation eval = control_sinusoidal_cancelled(s, a, b, mu);
    const ControlEvaluation sat = saturate(eval.u_raw, bounds);
    eval.u_applied = sat.u_applied;
    eval.clamped = sat.clamped;
    return {vector_field_polar(s, eval.u_applied, mu), eval};
}

double backstepping_residual(double v, double theta, const ChiParams& a, const ManifoldParams& b,
                             double mu, double eps_den) {
    const SinusoidalManifold m(b);
    const double r = v + m.g(theta);
    if (r <= 0.0) throw NonPositiveRadius(r);
    double den = 0.0;
    const double u = generic_raw_at({r, theta}, a, mu, m, &den);
    if (std::abs(den) < eps_den)
        throw SingularDenominator("residual sampled on the singular set at theta=" +
                                  std::to_string(theta));
    return transformed_field_P(v, theta, u, mu, m) - chi_arctan(v, theta, a);
}

} // namespace vdp
