#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <sis/family.hpp>

using namespace sis;

TEST_CASE("construction and validation") {
    CHECK_NOTHROW(make_family(FamilyKind::TypeD, 0.0, 1.0));
    CHECK_NOTHROW(make_family(FamilyKind::TypeA, eta / 2, 1.0, eta / 2));
    CHECK_NOTHROW(make_family(FamilyKind::TypeC, -3.0 * eta, 2.0));
    CHECK_NOTHROW(make_family(FamilyKind::SelfSimilar, 1.0, 0.0, 0.0, 0.0, 0.0, 0.5, 1.0));

    CHECK_THROWS_AS(make_family(FamilyKind::TypeB, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_family(FamilyKind::TypeE, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_family(FamilyKind::TypeF, 1.0, 1.0), std::invalid_argument);

    // negative rho
    CHECK_THROWS_AS(make_family(FamilyKind::TypeA, -1.0, 1.0, 0.0), std::invalid_argument);
    // beta must be positive
    CHECK_THROWS_AS(make_family(FamilyKind::TypeD, 0.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_family(FamilyKind::TypeC, -1.0, 0.0), std::invalid_argument);
    // scaling family: orbit ratio inside (0,1), positive remainder
    CHECK_THROWS_AS(make_family(FamilyKind::SelfSimilar, 1.0, 0.0, 0.0, 0.0, 0.0, 1.5, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_family(FamilyKind::SelfSimilar, -1.0, 0.0, 0.0, 0.0, 0.0, 0.5, 1.0),
                    std::invalid_argument);
}

TEST_CASE("parameter orbits") {
    auto d = make_family(FamilyKind::TypeD, 0.0, 2.0);
    auto od = parameter_orbit(d, 3);
    CHECK(od.size() == 3);
    CHECK(od[0] == 2.0);
    CHECK(od[1] == 2.0);
    CHECK(od[2] == 2.0);

    auto c = make_family(FamilyKind::TypeC, -3.0 * eta, 2.0);
    auto oc = parameter_orbit(c, 3);
    CHECK(oc[0] == doctest::Approx(-2.1213203435596424).epsilon(1e-15));
    CHECK(oc[1] == doctest::Approx(-2.8284271247461903).epsilon(1e-15));
    CHECK(oc[2] == doctest::Approx(-3.5355339059327378).epsilon(1e-15));

    auto s = make_family(FamilyKind::SelfSimilar, 1.0, 0.0, 0.0, 0.0, 0.0, 0.5, 1.0);
    auto os = parameter_orbit(s, 3);
    CHECK(os[0] == 1.0);
    CHECK(os[1] == 0.5);
    CHECK(os[2] == 0.25);

    // backward step
    auto a = make_family(FamilyKind::TypeA, eta / 2, 1.0, eta / 2);
    CHECK(orbit_point(a, 0) == doctest::Approx(eta / 2 - eta).epsilon(1e-15));
    CHECK(orbit_point(c, 0) == doctest::Approx(-2.0 * eta).epsilon(1e-15));
    CHECK(orbit_point(s, 0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(orbit_point(s, -1), std::invalid_argument);
}

TEST_CASE("remainders") {
    auto d = make_family(FamilyKind::TypeD, 0.0, 1.0 / std::numbers::sqrt2);
    CHECK(remainder_at(d, 7) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gamma_const(d) == doctest::Approx(1.0).epsilon(1e-15));

    auto a = make_family(FamilyKind::TypeA, eta / 2, 1.0, 0.0);
    CHECK(rho_translation(a) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(remainder_at(a, 3) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(remainder_at(a, 1) == doctest::Approx(1.0).epsilon(1e-14));

    auto s = make_family(FamilyKind::SelfSimilar, 1.0, 0.0, 0.0, 0.0, 0.0, 0.5, 1.0);
    CHECK(remainder_at(s, 3) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(remainder_at(s, 1) == doctest::Approx(1.0).epsilon(1e-15));

    // remainder from the formula equals R at the tabulated orbit point
    auto a2 = make_family(FamilyKind::TypeA, 0.3, 1.7, 0.2);
    auto orbit = parameter_orbit(a2, 50);
    for (long k = 1; k <= 50; ++k) {
        double ak = orbit[static_cast<size_t>(k - 1)];
        double direct = a2.beta * a2.beta * eta * (2.0 * (ak + a2.gamma) + eta);
        CHECK(remainder_at(a2, k) == direct);
        CHECK(remainder_at(a2, k) > 0.0);
    }
}

TEST_CASE("prefix sums of remainders") {
    auto a = make_family(FamilyKind::TypeA, 0.4, 1.3, 0.1);
    const double kap = eta * a.beta;
    const double rho = rho_translation(a);
    double acc = 0.0;
    for (long n = 1; n <= 50; ++n) {
        acc += remainder_at(a, n);
        double closed = kap * kap * n * (n + 2.0 * rho);
        CHECK(acc == doctest::Approx(closed).epsilon(1e-12));
    }

    auto s = make_family(FamilyKind::SelfSimilar, 2.0, 0.0, 0.0, 0.0, 0.0, 0.7, 0.4);
    double r1 = remainder_at(s, 1);
    acc = 0.0;
    for (long n = 1; n <= 50; ++n) {
        acc += remainder_at(s, n);
        double closed = r1 * (1.0 - std::pow(s.q, n)) / (1.0 - s.q);
        CHECK(acc == doctest::Approx(closed).epsilon(1e-12));
        CHECK(acc < r1 / (1.0 - s.q));
    }
}

TEST_CASE("superpotentials and partner potentials") {
    auto d = make_family(FamilyKind::TypeD, 0.0, 1.0 / std::numbers::sqrt2);
    CHECK(superpotential(d, 1.0, d.a1) == doctest::Approx(0.70710678118654752).epsilon(1e-15));
    auto [vm0, vp0] = partner_potentials(d, 0.0, d.a1);
    CHECK(vm0 == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(vp0 == doctest::Approx(0.5).epsilon(1e-15));
    auto [vm2, vp2] = partner_potentials(d, 2.0, d.a1);
    CHECK(vp2 - vm2 == doctest::Approx(1.0).epsilon(1e-14));

    auto a = make_family(FamilyKind::TypeA, eta, 1.0, 0.0);  // rho = 1
    CHECK(std::abs(superpotential(a, std::numbers::pi / 2, eta)) < 1e-15);
    // W = eta cot x: V- at pi/2 is eta^2 = 1/2
    auto [vma, vpa] = partner_potentials(a, std::numbers::pi / 2, eta);
    CHECK(vma == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(vpa == doctest::Approx(-0.5).epsilon(1e-14));

    auto c = make_family(FamilyKind::TypeC, 1.0, 2.0);
    CHECK(superpotential(c, 1.0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));

    // out-of-domain positions
    CHECK_THROWS_AS(superpotential(c, -1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(superpotential(a, 4.0, eta), std::domain_error);
    CHECK_THROWS_AS(superpotential(a, 0.0, eta), std::domain_error);

    // the scaling family has no closed-form W
    auto s = make_family(FamilyKind::SelfSimilar, 1.0, 0.0, 0.0, 0.0, 0.0, 0.5, 1.0);
    CHECK_THROWS_AS(superpotential(s, 1.0, 1.0), std::invalid_argument);

    // derivative agrees with a central difference
    for (double x : {0.3, 0.9, 1.7}) {
        double h = 1e-6;
        double num = (superpotential(c, x + h, 1.0) - superpotential(c, x - h, 1.0)) / (2 * h);
        CHECK(superpotential_derivative(c, x, 1.0) == doctest::Approx(num).epsilon(1e-8));
        double numa = (superpotential(a, x + h, eta) - superpotential(a, x - h, eta)) / (2 * h);
        CHECK(superpotential_derivative(a, x, eta) == doctest::Approx(numa).epsilon(1e-8));
    }
}
