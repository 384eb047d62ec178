#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vdp/dynamics.hpp"

using namespace vdp;

TEST_CASE("polar field spot value") {
    const Derivatives d = vector_field_polar({2.0, M_PI / 4.0}, 1.0, 0.1);
    CHECK(d.dr_dt == doctest::Approx(0.60710678118654759).epsilon(1e-15));
    CHECK(d.dtheta_dt == doctest::Approx(0.69644660940672631).epsilon(1e-15));
}

TEST_CASE("zero damping and zero control leave pure rotation") {
    for (const PolarState s : {PolarState{0.5, 0.0}, PolarState{3.0, 1.7}, PolarState{9.0, -4.0}}) {
        const Derivatives d = vector_field_polar(s, 0.0, 0.0);
        CHECK(d.dr_dt == 0.0);
        CHECK(d.dtheta_dt == 1.0);
    }
}

TEST_CASE("control enters radially through cos(theta)") {
    // at theta = 0 the control acts on r only; at theta = pi/2 on theta only
    const Derivatives d0 = vector_field_polar({2.0, 0.0}, 3.0, 0.0);
    CHECK(d0.dr_dt == 3.0);
    CHECK(d0.dtheta_dt == 1.0);
    const Derivatives d1 = vector_field_polar({2.0, M_PI / 2.0}, 3.0, 0.0);
    CHECK(d1.dr_dt == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(d1.dtheta_dt == doctest::Approx(1.0 - 3.0 / 2.0).epsilon(1e-15));
}

TEST_CASE("damping factor flips sign across r*sin(theta) = 1") {
    const double mu = 0.2;
    const Derivatives inside = vector_field_polar({0.5, M_PI / 4.0}, 0.0, mu);
    const Derivatives outside = vector_field_polar({4.0, M_PI / 4.0}, 0.0, mu);
    CHECK(inside.dr_dt > 0.0);   // gamma1 > 0: unstable origin pushes out
    CHECK(outside.dr_dt < 0.0);  // gamma1 < 0: large orbits decay
}

TEST_CASE("non-positive radius is rejected") {
    CHECK_THROWS_AS(vector_field_polar({0.0, 1.0}, 0.0, 0.1), NonPositiveRadius);
    CHECK_THROWS_AS(vector_field_polar({-2.0, 1.0}, 0.0, 0.1), NonPositiveRadius);
}

TEST_CASE("polar to cartesian spot values") {
    const CartesianState c = polar_to_cartesian({2.0, M_PI / 2.0});
    CHECK(std::abs(c.x) < 1e-15);
    CHECK(c.y == doctest::Approx(2.0).epsilon(1e-15));
    const CartesianState d = polar_to_cartesian({3.0, M_PI});
    CHECK(d.x == doctest::Approx(-3.0).epsilon(1e-15));
}

TEST_CASE("coordinate round trip normalizes theta to [0, 2pi)") {
    for (double theta : {0.0, 1.0, 3.5, 6.0}) {
        const PolarState p{2.5, theta};
        const PolarState q = cartesian_to_polar(polar_to_cartesian(p));
        CHECK(q.r == doctest::Approx(p.r).epsilon(1e-14));
        CHECK(q.theta == doctest::Approx(theta).epsilon(1e-12));
        CHECK(q.theta >= 0.0);
        CHECK(q.theta < 2.0 * M_PI);
    }
    // negative angles wrap
    const PolarState q = cartesian_to_polar(polar_to_cartesian({1.0, -M_PI / 2.0}));
    CHECK(q.theta == doctest::Approx(3.0 * M_PI / 2.0).epsilon(1e-12));
}

TEST_CASE("origin has no polar angle") {
    CHECK_THROWS_AS(cartesian_to_polar({0.0, 0.0}), OriginUndefined);
}

TEST_CASE("error types carry their exit status") {
    CHECK(static_cast<int>(Status::ok) == 0);
    CHECK(static_cast<int>(Status::config_error) == 2);
    CHECK(static_cast<int>(Status::runtime_error) == 3);
    CHECK(static_cast<int>(Status::verify_failure) == 4);
    try {
        throw ConfigError({"first", "second"});
    } catch (const ConfigError& e) {
        CHECK(e.status == Status::config_error);
        CHECK(e.violations.size() == 2);
        CHECK(std::string(e.what()).find("first") != std::string::npos);
        CHECK(std::string(e.what()).find("second") != std::string::npos);
    }
}
