#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vdp/integrator.hpp"

using namespace vdp;

namespace {

const Schedule kReference{{{0.0, {4.0, 1.5}, 0.1}}};
const ChiParams kGains{0.5, 1.0};
const ControlBounds kOpen{};

} // namespace

TEST_CASE("rk4 reproduces the forced-rotation closed form at fourth order") {
    // mu = 0, u = 1: in cartesian form xdot = 1 - y, ydot = x, a circle about (0,1).
    // From (r, theta) = (4, 0): x(t) + i(y(t) - 1) = (4 - i) e^{it}.
    auto field = [](const PolarState& s) { return vector_field_polar(s, 1.0, 0.0); };
    const double cs = std::cos(10.0), sn = std::sin(10.0);
    const double x = 4.0 * cs + sn;
    const double y = 1.0 + 4.0 * sn - cs;
    const double theta_exact = std::atan2(y, x) + 4.0 * M_PI; // two windings by t = 10
    const double r_exact = std::hypot(x, y);

    double prev_err = 0.0;
    for (const double h : {0.04, 0.02, 0.01}) {
        PolarState p{4.0, 0.0};
        const long n = std::lround(10.0 / h);
        for (long i = 0; i < n; ++i) p = rk4_step(field, p, h);
        const double err = std::abs(p.theta - theta_exact);
        CHECK(std::abs(p.r - r_exact) < 1e-8);
        if (prev_err > 0.0) {
            const double ratio = prev_err / err;
            CHECK(ratio > 12.0);
            CHECK(ratio < 20.0);
        }
        prev_err = err;
    }
}

TEST_CASE("rk4 integrates pure rotation to roundoff") {
    auto field = [](const PolarState& s) { return vector_field_polar(s, 0.0, 0.0); };
    PolarState p{3.0, 0.25};
    for (int i = 0; i < 1000; ++i) p = rk4_step(field, p, 0.01);
    CHECK(std::abs(p.r - 3.0) <= 1e-12);
    CHECK(std::abs(p.theta - 10.25) <= 1e-10);
}

TEST_CASE("rk4 rejects non-finite stage derivatives") {
    auto field = [](const PolarState&) {
        return Derivatives{std::numeric_limits<double>::infinity(), 1.0};
    };
    CHECK_THROWS_AS(rk4_step(field, {1.0, 0.0}, 0.01, 3.25), NonFiniteDerivative);
    try {
        rk4_step(field, {1.0, 0.0}, 0.01, 3.25);
    } catch (const NonFiniteDerivative& e) {
        CHECK(e.t == 3.25);
    }
}

TEST_CASE("reference trajectory from r0=2 matches frozen states") {
    const Trajectory t = integrate_closed_loop({2.0, 0.0}, kReference, kGains, kOpen, {});
    REQUIRE(t.samples.size() == 20001);
    CHECK_FALSE(t.aborted);
    CHECK(t.monitor_violations == 40);
    const Sample& s10 = t.samples[2000];
    CHECK(s10.t == 10.0);
    CHECK(s10.r == doctest::Approx(2.7326780804298054).epsilon(1e-12));
    CHECK(s10.theta == doctest::Approx(10.193780794331627).epsilon(1e-12));
    CHECK(s10.v == doctest::Approx(-0.22419339523552884).epsilon(1e-9));
    const Sample& end = t.samples.back();
    CHECK(end.t == 100.0);
    CHECK(std::abs(end.v) < 1e-10);
}

TEST_CASE("offset magnitude never grows along unclamped steps") {
    const Trajectory t = integrate_closed_loop({6.0, 0.0}, kReference, kGains, kOpen, {});
    for (size_t i = 1; i < t.samples.size(); ++i)
        CHECK(std::abs(t.samples[i].v) <= std::abs(t.samples[i - 1].v) + 1e-6);
}

TEST_CASE("trajectory crossing the singular set aborts with a recorded event") {
    const Trajectory t = integrate_closed_loop({1.0, 0.0}, kReference, kGains, kOpen, {});
    CHECK(t.aborted);
    CHECK(t.abort_time == 4.875);
    REQUIRE_FALSE(t.events.empty());
    CHECK(t.events.back().kind == EventKind::degenerate_manifold);
    CHECK(t.abort_reason.find("denominator") != std::string::npos);
    // the arrival sample at 4.875 is recorded before the next step throws
    CHECK(t.samples.back().t == doctest::Approx(4.875).epsilon(1e-12));
}

TEST_CASE("falling below the guard radius aborts the trajectory") {
    const Schedule sched{{{0.0, {4.0, 1.5}, 0.0}}};
    IntegratorConfig ic;
    ic.r_guard = 2.0;
    ic.t_end = 5.0;
    const Trajectory t = integrate_closed_loop({2.5, 0.0}, sched, kGains, {-8.5, -8.0}, ic);
    CHECK(t.aborted);
    CHECK(t.abort_time == doctest::Approx(0.065).epsilon(1e-12));
    CHECK(t.events.back().kind == EventKind::guard_radius_hit);
    CHECK(t.samples.back().r > 2.0);
}

TEST_CASE("schedule switches land on exact step boundaries") {
    const Schedule sched{{{0.0, {4.0, 1.5}, 0.1}, {0.5003, {4.0, 1.0}, 0.2}}};
    IntegratorConfig ic;
    ic.t_end = 1.0;
    ic.h = 0.01;
    const Trajectory t = integrate_closed_loop({4.0, 0.0}, sched, kGains, kOpen, ic);
    size_t hit = t.samples.size();
    for (size_t i = 0; i < t.samples.size(); ++i)
        if (t.samples[i].t == 0.5003) hit = i;
    REQUIRE(hit < t.samples.size());
    // boundary sample carries the pre-switch parameters; the next one switches
    CHECK(t.samples[hit].b1 == 1.5);
    CHECK(t.samples[hit].mu == 0.1);
    CHECK(t.samples[hit + 1].b1 == 1.0);
    CHECK(t.samples[hit + 1].mu == 0.2);
    bool saw_switch = false;
    for (const auto& e : t.events)
        if (e.kind == EventKind::schedule_switch && e.t == 0.5003) saw_switch = true;
    CHECK(saw_switch);
}

TEST_CASE("epoch callback fires at exact multiples and retunes the gains") {
    IntegratorConfig ic;
    ic.t_end = 1.0;
    ic.h = 0.01;
    ic.sample_every = 10;
    std::vector<double> epoch_ts;
    const Trajectory t = integrate_closed_loop(
        {4.0, 0.0}, kReference, kGains, kOpen, ic, 0.25,
        [&](double tt, Trajectory& tr, const ChiParams& a) {
            epoch_ts.push_back(tt);
            tr.events.push_back({tt, EventKind::adaptation_epoch, "test"});
            return ChiParams{a.a1 + 0.1, a.a2};
        });
    REQUIRE(epoch_ts.size() == 4);
    CHECK(epoch_ts[0] == 0.25);
    CHECK(epoch_ts[1] == 0.5);
    CHECK(epoch_ts[2] == 0.75);
    CHECK(epoch_ts[3] == 1.0);
    // decimation keeps every 10th step plus epoch/terminal boundaries
    CHECK(t.samples.size() == 13);
    for (const Sample& s : t.samples) {
        const double expect = s.t <= 0.25 ? 0.5 : s.t <= 0.5 ? 0.6 : s.t <= 0.75 ? 0.7 : 0.8;
        CHECK(s.a1 == doctest::Approx(expect).epsilon(1e-15));
    }
    int epoch_events = 0;
    for (const auto& e : t.events) epoch_events += e.kind == EventKind::adaptation_epoch;
    CHECK(epoch_events == 4);
}

TEST_CASE("clamp transition events mirror the sample stream") {
    IntegratorConfig ic;
    const Trajectory t =
        integrate_closed_loop({6.0, 0.0}, kReference, kGains, {-2.0, 2.0}, ic);
    long onsets = 0, offs = 0;
    bool prev = false;
    for (const Sample& s : t.samples) {
        onsets += s.clamped && !prev;
        offs += !s.clamped && prev;
        prev = s.clamped;
    }
    long on_events = 0, off_events = 0;
    for (const auto& e : t.events) {
        on_events += e.kind == EventKind::clamp_on;
        off_events += e.kind == EventKind::clamp_off;
    }
    CHECK(onsets > 0);
    CHECK(on_events == onsets);
    CHECK(off_events == offs);
}

TEST_CASE("error monitor can be disabled") {
    IntegratorConfig ic;
    ic.error_monitor = false;
    const Trajectory t = integrate_closed_loop({2.0, 0.0}, kReference, kGains, kOpen, ic);
    CHECK(t.monitor_violations == 0);
    for (const auto& e : t.events) CHECK(e.kind != EventKind::monitor_violation);
}

TEST_CASE("same inputs give bitwise identical trajectories") {
    const Trajectory a = integrate_closed_loop({2.0, 0.0}, kReference, kGains, kOpen, {});
    const Trajectory b = integrate_closed_loop({2.0, 0.0}, kReference, kGains, kOpen, {});
    REQUIRE(a.samples.size() == b.samples.size());
    for (size_t i = 0; i < a.samples.size(); ++i) {
        CHECK(a.samples[i].r == b.samples[i].r);
        CHECK(a.samples[i].theta == b.samples[i].theta);
        CHECK(a.samples[i].u_raw == b.samples[i].u_raw);
    }
}
