#pragma once
#include "vdp/dynamics.hpp"
#include "vdp/manifold.hpp"

namespace vdp {

constexpr double kDefaultEpsDen = 1e-8;

struct ChiParams {
    double a1 = 0.5; // gain, >= 0
    double a2 = 1.0; // arctan slope, > 0
};

// Prescribed offset dynamics dv/dt = chi(v, theta). Any implementation must
// vanish at v = 0 and oppose the sign of v; that is checked at registration.
class ChiFunction {
  public:
    virtual ~ChiFunction() = default;
    virtual double eval(double v, double theta, const ChiParams& a) const = 0;
};

class ArctanChi final : public ChiFunction {
  public:
    double eval(double v, double theta, const ChiParams& a) const override;
};

// Grid check of the chi contract: chi(0,theta)=0, v*chi <= 0, |chi| <= a1*pi/2.
void verify_chi_contract(const ChiFunction& chi, const ChiParams& a);

double chi_arctan(double v, double theta, const ChiParams& a);

struct ControlEvaluation {
    double u_raw = 0.0;
    double u_applied = 0.0;
    bool clamped = false;
    bool near_singular = false;
};

// Offset dynamics dv/dt under a control u: equals dr/dt - g'*dtheta/dt of the
// open-loop field evaluated at r = v + g(theta).
double transformed_field_P(double v, double theta, double u, double mu, const Manifold& m);

// Synthesized feedback for an arbitrary manifold contract. Near the
// denominator singularity it falls back to the manifold's cancelled form if
// available, else to evaluation at a nudged angle.
ControlEvaluation control_generic(const PolarState& s, const ChiParams& a, double mu,
                                  const Manifold& m, double eps_den = kDefaultEpsDen);

// Closed form for the sinusoidal family: the common cos(theta) factor is
// cancelled analytically, so the evaluation is finite at cos(theta) = 0.
ControlEvaluation control_sinusoidal_cancelled(const PolarState& s, const ChiParams& a,
                                               const ManifoldParams& b, double mu);

ControlEvaluation saturate(double u_raw, const ControlBounds& bounds);

struct ClosedLoopResult {
    Derivatives d;
    ControlEvaluation u;
};

// Control (cancelled form), saturation, then the open-loop field.
ClosedLoopResult closed_loop_field(const PolarState& s, const ChiParams& a,
                                   const ManifoldParams& b, double mu,
                                   const ControlBounds& bounds);

// P(v, theta, u_raw, mu) - chi(v, theta): ~0 identically when the synthesized
// control is correct; the central self-verification oracle of the module.
double backstepping_residual(double v, double theta, const ChiParams& a, const ManifoldParams& b,
                             double mu, double eps_den = kDefaultEpsDen);

} // namespace vdp
