#include "vdp/verify.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "vdp/control.hpp"
#include "vdp/dynamics.hpp"
#include "vdp/integrator.hpp"
#include "vdp/manifold.hpp"
#include "vdp/schedule.hpp"

namespace vdp {

namespace {

std::string fmtg(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

struct SampledState {
    double v, theta, mu;
    ChiParams a;
    ManifoldParams b;
    double r;
};

// Random admissible states away from both synthesis singularities (the
// generic denominator and the cancelled-form denominator); fixed seed.
struct StateSampler {
    std::mt19937_64 rng{0x76647073u};
    std::uniform_real_distribution<double> uv{-2.0, 2.0};
    std::uniform_real_distribution<double> utheta{0.0, 2.0 * M_PI};
    std::uniform_real_distribution<double> ua1{0.0, 2.0};
    std::uniform_real_distribution<double> ua2{0.1, 4.0};
    std::uniform_real_distribution<double> ub0{2.0, 8.0};
    std::uniform_real_distribution<double> ub1{-2.0, 2.0};
    std::uniform_real_distribution<double> umu{0.01, 0.3};

    SampledState next() {
        for (;;) {
            SampledState s{uv(rng), utheta(rng), umu(rng),
                           {ua1(rng), ua2(rng)}, {ub0(rng), ub1(rng)}, 0.0};
            s.r = s.v + s.b.b0 + s.b.b1 * std::sin(s.theta);
            if (s.r < 0.05) continue;
            if (s.r + s.b.b1 * std::sin(s.theta) < 0.05) continue;
            const double den = std::cos(s.theta) +
                               s.b.b1 * std::cos(s.theta) * std::sin(s.theta) / s.r;
            if (std::abs(den) < 0.05) continue;
            return s;
        }
    }
};

} // namespace

bool VerifyReport::all_passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

std::string VerifyReport::text() const {
    std::string out;
    for (const auto& c : checks)
        out += std::string(c.passed ? "PASS" : "FAIL") + "  " + c.name +
               (c.detail.empty() ? "" : "  (" + c.detail + ")") + "\n";
    out += all_passed() ? "verification passed\n" : "verification FAILED\n";
    return out;
}

VerifyReport run_verification() {
    VerifyReport report;
    auto check = [&](const char* name, const std::function<std::string()>& body) {
        VerifyCheck c;
        c.name = name;
        try {
            c.detail = body();
            c.passed = true;
        } catch (const std::exception& e) {
            c.passed = false;
            c.detail = e.what();
        }
        report.checks.push_back(std::move(c));
    };
    auto expect = [](bool ok, const std::string& msg) {
        if (!ok) throw std::runtime_error(msg);
    };

    check("backstepping residual vanishes on admissible states", [&] {
        StateSampler sampler;
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const SampledState s = sampler.next();
            worst = std::max(worst,
                             std::abs(backstepping_residual(s.v, s.theta, s.a, s.b, s.mu)));
        }
        expect(worst <= 1e-9, "max residual " + fmtg(worst));
        return "max residual " + fmtg(worst);
    });

    check("chi contract: zero at v=0, sign opposition, arctan bound", [&] {
        const ArctanChi chi;
        for (const ChiParams a : {ChiParams{0.5, 1.0}, ChiParams{2.0, 4.0}, ChiParams{0.0, 0.1}})
            verify_chi_contract(chi, a);
        return std::string("3 parameter sets");
    });

    check("cancelled sinusoidal control matches generic synthesis", [&] {
        StateSampler sampler;
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const SampledState s = sampler.next();
            const SinusoidalManifold m(s.b);
            const double ug = control_generic({s.r, s.theta}, s.a, s.mu, m).u_raw;
            const double uc = control_sinusoidal_cancelled({s.r, s.theta}, s.a, s.b, s.mu).u_raw;
            worst = std::max(worst, std::abs(ug - uc) / std::max(1.0, std::abs(uc)));
        }
        expect(worst <= 1e-9, "max relative gap " + fmtg(worst));
        for (const double theta : {M_PI / 2.0, 3.0 * M_PI / 2.0}) {
            const ManifoldParams b{4.0, 1.5};
            const double r = b.b0 + b.b1 * std::sin(theta) + 0.3;
            const double u =
                control_sinusoidal_cancelled({r, theta}, {0.5, 1.0}, b, 0.1).u_raw;
            expect(std::isfinite(u), "non-finite at cos(theta)=0");
        }
        return "max relative gap " + fmtg(worst);
    });

    check("coordinate transforms round-trip", [&] {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> ur(0.01, 10.0);
        std::uniform_real_distribution<double> uth(0.0, 2.0 * M_PI);
        double worst = 0.0;
        for (int i = 0; i < 2000; ++i) {
            const PolarState p{ur(rng), uth(rng)};
            const PolarState q = cartesian_to_polar(polar_to_cartesian(p));
            worst = std::max(worst, std::abs(q.r - p.r) / p.r);
            double dth = std::abs(q.theta - p.theta);
            dth = std::min(dth, 2.0 * M_PI - dth);
            worst = std::max(worst, dth);
        }
        expect(worst <= 1e-12, "max round-trip error " + fmtg(worst));
        return "max round-trip error " + fmtg(worst);
    });

    check("transformed field agrees with the chain rule", [&] {
        StateSampler sampler;
        std::uniform_real_distribution<double> uu(-5.0, 5.0);
        double worst = 0.0;
        for (int i = 0; i < 5000; ++i) {
            const SampledState s = sampler.next();
            const double u = uu(sampler.rng);
            const SinusoidalManifold m(s.b);
            const double p = transformed_field_P(s.v, s.theta, u, s.mu, m);
            const Derivatives d = vector_field_polar({s.r, s.theta}, u, s.mu);
            const double direct = d.dr_dt - m.dg_dtheta(s.theta) * d.dtheta_dt;
            worst = std::max(worst, std::abs(p - direct) / std::max(1.0, std::abs(direct)));
        }
        expect(worst <= 1e-12, "max gap " + fmtg(worst));
        return "max gap " + fmtg(worst);
    });

    check("transformed field is affine in the control", [&] {
        StateSampler sampler;
        double worst = 0.0;
        for (int i = 0; i < 5000; ++i) {
            const SampledState s = sampler.next();
            const SinusoidalManifold m(s.b);
            const double p0 = transformed_field_P(s.v, s.theta, -1.0, s.mu, m);
            const double p1 = transformed_field_P(s.v, s.theta, 0.0, s.mu, m);
            const double p2 = transformed_field_P(s.v, s.theta, 1.0, s.mu, m);
            const double scale = std::max({1.0, std::abs(p0), std::abs(p2)});
            worst = std::max(worst, std::abs(p1 - 0.5 * (p0 + p2)) / scale);
        }
        expect(worst <= 1e-12, "max midpoint defect " + fmtg(worst));
        return "max midpoint defect " + fmtg(worst);
    });

    check("pure rotation integrates exactly", [&] {
        auto field = [](const PolarState& s) { return vector_field_polar(s, 0.0, 0.0); };
        PolarState y{3.0, 0.25};
        const double h = 0.01;
        for (int i = 0; i < 1000; ++i) y = rk4_step(field, y, h);
        const double r_err = std::abs(y.r - 3.0);
        const double th_err = std::abs(y.theta - (0.25 + 10.0));
        expect(r_err <= 1e-12 && th_err <= 1e-10,
               "r error " + fmtg(r_err) + ", theta error " + fmtg(th_err));
        return "r error " + fmtg(r_err) + ", theta error " + fmtg(th_err);
    });

    check("saturation clamps exactly at the bounds", [&] {
        const ControlBounds box{-2.0, 2.0};
        expect(saturate(3.0, box).u_applied == 2.0 && saturate(3.0, box).clamped, "upper clamp");
        expect(saturate(-9.0, box).u_applied == -2.0 && saturate(-9.0, box).clamped,
               "lower clamp");
        expect(saturate(1.5, box).u_applied == 1.5 && !saturate(1.5, box).clamped, "interior");
        const ControlBounds open{};
        expect(saturate(1e9, open).u_applied == 1e9 && !saturate(1e9, open).clamped,
               "unbounded pass-through");
        return std::string("4 cases");
    });

    check("sinusoidal manifold meets the manifold contract", [&] {
        for (const ManifoldParams b : {ManifoldParams{4.0, 1.5}, ManifoldParams{2.0, -1.9},
                                       ManifoldParams{8.0, 0.0}})
            verify_manifold_contract(SinusoidalManifold(b));
        return std::string("3 parameter sets");
    });

    check("implicit cartesian residual vanishes on the manifold", [&] {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> uth(0.0, 2.0 * M_PI);
        std::uniform_real_distribution<double> ub0(2.0, 8.0);
        std::uniform_real_distribution<double> ub1(-2.0, 2.0);
        double worst = 0.0;
        for (int i = 0; i < 2000; ++i) {
            const ManifoldParams b{ub0(rng), ub1(rng)};
            const double th = uth(rng);
            const double g = b.b0 + b.b1 * std::sin(th);
            const double res = implicit_cartesian_residual(polar_to_cartesian({g, th}), b);
            worst = std::max(worst, std::abs(res) / std::pow(b.b0, 4));
        }
        expect(worst <= 1e-9, "max scaled residual " + fmtg(worst));
        return "max scaled residual " + fmtg(worst);
    });

    check("schedule lookup picks the latest started segment", [&] {
        const Schedule sched{{{0.0, {4.0, 1.5}, 0.1}, {50.0, {4.0, 1.0}, 0.2}}};
        expect(sched.active_at(0.0).mu == 0.1, "t=0");
        expect(sched.active_at(49.999).mu == 0.1, "t<switch");
        expect(sched.active_at(50.0).mu == 0.2, "t=switch");
        expect(sched.active_at(1e9).mu == 0.2, "t>switch");
        const auto sw = sched.switch_times();
        expect(sw.size() == 1 && sw[0] == 50.0, "switch times");
        return std::string("5 cases");
    });

    return report;
}

} // namespace vdp
