#pragma once
#include <memory>
#include <optional>

#include "vdp/dynamics.hpp"

namespace vdp {

struct ChiParams; // control.hpp

struct ManifoldParams {
    double b0 = 4.0;
    double b1 = 1.5;
};

struct OffsetState {
    double v = 0.0;
    double theta = 0.0;
};

// Target closed curve M = {r = g(theta)}, 2*pi-periodic and bounded away from
// the origin. Implementations may supply an analytic control form that stays
// finite where the generic synthesis denominator vanishes.
class Manifold {
  public:
    virtual ~Manifold() = default;
    virtual double g(double theta) const = 0;
    virtual double dg_dtheta(double theta) const = 0;
    virtual std::optional<double> cancelled_control(const PolarState& s, const ChiParams& a,
                                                    double mu) const {
        (void)s;
        (void)a;
        (void)mu;
        return std::nullopt;
    }
};

class SinusoidalManifold final : public Manifold {
  public:
    explicit SinusoidalManifold(ManifoldParams b) : b_(b) {}
    double g(double theta) const override { return b_.b0 + b_.b1 * std::sin(theta); }
    double dg_dtheta(double theta) const override { return b_.b1 * std::cos(theta); }
    std::optional<double> cancelled_control(const PolarState& s, const ChiParams& a,
                                            double mu) const override;
    const ManifoldParams& params() const { return b_; }

  private:
    ManifoldParams b_;
};

// Registration-time contract check: periodicity, derivative consistency with a
// central difference, and clearance above the guard radius. Throws
// DegenerateManifold on violation.
void verify_manifold_contract(const Manifold& m, double r_guard = kDefaultGuardRadius);

OffsetState offset(const PolarState& s, const Manifold& m);

// (x^2 + y^2 - b1*y)^2 - b0^2*(x^2 + y^2); zero exactly on the sinusoidal manifold.
double implicit_cartesian_residual(const CartesianState& p, const ManifoldParams& b);

} // namespace vdp
