#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vdp/adaptation.hpp"
#include "vdp/integrator.hpp"

using namespace vdp;

namespace {

const Schedule kReference{{{0.0, {4.0, 1.5}, 0.1}}};
const ChiParams kGains{0.5, 1.0};

std::vector<Sample> reference_tail(int n) {
    static const Trajectory t =
        integrate_closed_loop({2.0, 0.0}, kReference, kGains, ControlBounds{}, {});
    return {t.samples.end() - n, t.samples.end()};
}

} // namespace

TEST_CASE("identify_mu recovers the damping from a noiseless window") {
    const double mu = identify_mu(reference_tail(200), 0.1);
    CHECK(std::abs(mu - 0.1) < 1e-6);
}

TEST_CASE("identify_mu needs enough excited samples") {
    // near theta = pi/2 the regressor phi is tiny and every sample is excluded
    std::vector<Sample> window;
    for (int i = 0; i < 200; ++i) {
        Sample s;
        s.t = 0.005 * i;
        s.r = 5.5;
        s.theta = M_PI / 2.0 + 0.02 * std::sin(0.1 * i);
        s.u_applied = 1.0;
        window.push_back(s);
    }
    CHECK_THROWS_AS(identify_mu(window, 0.1), InsufficientExcitation);
    try {
        identify_mu(window, 0.1);
    } catch (const InsufficientExcitation& e) {
        CHECK(std::string(e.what()).find("0 usable") != std::string::npos);
    }
}

TEST_CASE("identify_mu rejects windows that are too short") {
    CHECK_THROWS_AS(identify_mu(reference_tail(2), 0.1), InsufficientExcitation);
}

TEST_CASE("worst-case envelope matches frozen values") {
    const ManifoldParams b{4.0, 1.5};
    const WorstCase w0 = worst_case_control({0.0, 1.0}, b, 0.1, 0.3, 128);
    CHECK(w0.lo == doctest::Approx(-5.0882124633080004).epsilon(1e-12));
    CHECK(w0.hi == doctest::Approx(7.5266419135705478).epsilon(1e-12));
    const WorstCase w1 = worst_case_control({0.5, 1.0}, b, 0.1, 0.3, 128);
    CHECK(w1.lo == doctest::Approx(-5.0273172647787678).epsilon(1e-12));
    CHECK(w1.hi == doctest::Approx(7.4657467150413153).epsilon(1e-12));
    const WorstCase w2 = worst_case_control({0.5, 1.0}, b, 0.1, 0.5, 128);
    CHECK(w2.lo == doctest::Approx(-5.7064106398346981).epsilon(1e-12));
    CHECK(w2.hi == doctest::Approx(8.1607189476088227).epsilon(1e-12));
}

TEST_CASE("larger chi gain shrinks the worst-case envelope") {
    // the prescribed offset dynamics oppose the offset at the binding extremes,
    // so raising a1 tightens both envelope ends rather than widening them
    const ManifoldParams b{4.0, 1.5};
    const WorstCase w0 = worst_case_control({0.0, 1.0}, b, 0.1, 0.3, 128);
    const WorstCase w1 = worst_case_control({0.5, 1.0}, b, 0.1, 0.3, 128);
    const WorstCase w2 = worst_case_control({2.0, 1.0}, b, 0.1, 0.3, 128);
    CHECK(w1.lo > w0.lo);
    CHECK(w1.hi < w0.hi);
    CHECK(w2.lo > w1.lo);
    CHECK(w2.hi < w1.hi);
}

TEST_CASE("worst-case envelope is symmetric for a flat manifold without chi") {
    const WorstCase w = worst_case_control({0.0, 1.0}, {4.0, 0.0}, 0.1, 0.5, 128);
    CHECK(w.lo == doctest::Approx(-3.2500032991575702).epsilon(1e-12));
    CHECK(w.hi == doctest::Approx(3.2500032991575702).epsilon(1e-12));
    CHECK(w.lo == doctest::Approx(-w.hi).epsilon(1e-13));
}

TEST_CASE("worst-case envelope is stable under grid refinement") {
    const WorstCase a = worst_case_control({0.5, 1.0}, {4.0, 1.5}, 0.1, 0.3, 128);
    const WorstCase b = worst_case_control({0.5, 1.0}, {4.0, 1.5}, 0.1, 0.3, 256);
    CHECK(a.lo == doctest::Approx(b.lo).epsilon(1e-9));
    CHECK(a.hi == doctest::Approx(b.hi).epsilon(1e-9));
}

TEST_CASE("worst-case grid refuses degenerate offset ranges") {
    // v_max = 2 reaches through the singular set r = -b1 sin(theta)
    CHECK_THROWS_AS(worst_case_control({0.5, 1.0}, {4.0, 1.5}, 0.1, 2.0, 128),
                    DegenerateManifold);
    // b1 = 3 makes the on-manifold denominator itself change sign
    CHECK_THROWS_AS(worst_case_control({0.5, 1.0}, {4.0, 3.0}, 0.1, 0.0, 128),
                    DegenerateManifold);
    // offsets below -min g push the grid radius under the guard
    CHECK_THROWS_AS(worst_case_control({0.5, 1.0}, {2.0, -1.9}, 0.1, 0.2, 128),
                    DegenerateManifold);
}

TEST_CASE("largest_feasible_scale takes the fast path at s=1") {
    bool used_scan = true;
    const double s = largest_feasible_scale([](double) { return true; }, 1e-3, &used_scan);
    CHECK(s == 1.0);
    CHECK_FALSE(used_scan);
}

TEST_CASE("largest_feasible_scale bisects monotone predicates") {
    bool used_scan = true;
    int calls = 0;
    const double s = largest_feasible_scale(
        [&](double x) {
            ++calls;
            return x <= 0.37;
        },
        1e-3, &used_scan);
    CHECK_FALSE(used_scan);
    CHECK(s <= 0.37);
    CHECK(s > 0.37 - 1e-3);
    CHECK(calls < 20);
}

TEST_CASE("largest_feasible_scale falls back to a scan on island predicates") {
    bool used_scan = false;
    const double s = largest_feasible_scale(
        [](double x) { return x >= 0.4 && x <= 0.6; }, 1e-3, &used_scan);
    CHECK(used_scan);
    CHECK(s == 614.0 / 1024.0); // largest partition point inside [0.4, 0.6]
}

TEST_CASE("largest_feasible_scale reports infeasibility") {
    CHECK_THROWS_AS(largest_feasible_scale([](double) { return false; }, 1e-3, nullptr),
                    Infeasible);
}

TEST_CASE("miac keeps gains and logs infeasible epochs under tight bounds") {
    AdaptationConfig ac;
    ac.enabled = true;
    const AdmissibleSets sets;
    const ControlBounds bounds{-2.0, 2.0};
    MiacController miac(ac, kGains, sets, bounds, kReference, 12345);
    IntegratorConfig ic;
    ic.t_end = 20.0;
    Trajectory t = integrate_closed_loop({4.0, 0.0}, kReference, kGains, bounds, ic,
                                         ac.epoch_period, miac.callback());
    REQUIRE(miac.log().size() == 4);
    for (const auto& rec : miac.log()) {
        CHECK(rec.status == "infeasible");
        CHECK(rec.a1 == 0.5);
        CHECK(std::abs(rec.mu_tilde - 0.1) < 1e-3);
        CHECK(rec.b0_tilde == 4.0); // sigma = 0: commanded parameters pass through
        CHECK(rec.b1_tilde == 1.5);
    }
    int epoch_events = 0;
    for (const auto& e : t.events) epoch_events += e.kind == EventKind::adaptation_epoch;
    CHECK(epoch_events == 4);
}

TEST_CASE("miac adopts the nominal gains when the bounds are generous") {
    AdaptationConfig ac;
    ac.enabled = true;
    ac.v_max = 0.5;
    const AdmissibleSets sets;
    const ControlBounds bounds{-20.0, 20.0};
    MiacController miac(ac, kGains, sets, bounds, kReference, 12345);
    IntegratorConfig ic;
    ic.t_end = 10.0;
    integrate_closed_loop({4.0, 0.0}, kReference, kGains, bounds, ic, ac.epoch_period,
                          miac.callback());
    REQUIRE(miac.log().size() == 2);
    for (const auto& rec : miac.log()) {
        CHECK(rec.status == "updated");
        CHECK(rec.s == 1.0);
        CHECK(rec.a1 == 0.5);
        CHECK_FALSE(rec.fallback_scan);
        CHECK(rec.wc_lo >= -20.0);
        CHECK(rec.wc_hi <= 20.0);
    }
}

TEST_CASE("miac identification is deterministic for a fixed seed") {
    AdaptationConfig ac;
    ac.enabled = true;
    ac.sigma = 0.01;
    const AdmissibleSets sets;
    const ControlBounds bounds{-2.0, 2.0};
    IntegratorConfig ic;
    ic.t_end = 15.0;
    auto run = [&] {
        MiacController miac(ac, kGains, sets, bounds, kReference, 777);
        integrate_closed_loop({4.0, 0.0}, kReference, kGains, bounds, ic, ac.epoch_period,
                              miac.callback());
        return miac.log();
    };
    const auto a = run();
    const auto b = run();
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].mu_tilde == b[i].mu_tilde);
        CHECK(a[i].b0_tilde == b[i].b0_tilde);
        CHECK(a[i].b1_tilde == b[i].b1_tilde);
        CHECK(a[i].status == b[i].status);
    }
}
