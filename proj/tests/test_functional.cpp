#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include <sis/algebra.hpp>
#include <sis/functional.hpp>

using namespace sis;

namespace {

FamilyConfig type_d(double beta = 1.0 / std::numbers::sqrt2) {
    return make_family(FamilyKind::TypeD, 0.0, beta);
}

FamilyConfig type_c() { return make_family(FamilyKind::TypeC, -3.0 * eta, 2.0); }

FamilyConfig type_a_nu1() { return make_family(FamilyKind::TypeA, eta / 2, 1.0, eta / 2); }

FamilyConfig self_similar(double a1 = 1.0, double q = 0.5, double r = 1.0) {
    return make_family(FamilyKind::SelfSimilar, a1, 0.0, 0.0, 0.0, 0.0, q, r);
}

}  // namespace

TEST_CASE("auxiliary affine map") {
    CHECK(g_aux(2.0, {3.0, 1.0}) == 7.0);
    CHECK(g_aux(0.0, {5.0, 0.0}) == 0.0);
    CHECK(g_aux(-2.1213203435596424, {-2.0, 1.0}) ==
          doctest::Approx(5.242640687119285).epsilon(1e-15));
}

TEST_CASE("construction and pairing") {
    CHECK_THROWS_AS(make_zspec(ZVariant::Const, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_zspec(ZVariant::SS_Ramanujan, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_zspec(ZVariant::TypeA_Whittaker, 0.0, 0.0, 2.0), std::invalid_argument);

    CHECK_NOTHROW(validate_pairing(make_zspec(ZVariant::Const, 0.0, 2.0), type_d()));
    CHECK_NOTHROW(validate_pairing(make_zspec(ZVariant::Const, 0.0, 2.0), self_similar()));
    CHECK_NOTHROW(validate_pairing(make_zspec(ZVariant::TypeC_G), type_c()));
    CHECK_NOTHROW(validate_pairing(make_zspec(ZVariant::TypeA_PT1), type_a_nu1()));
    CHECK_NOTHROW(validate_pairing(make_zspec(ZVariant::SS_R), self_similar()));

    // variant bound to the wrong family
    CHECK_THROWS_AS(validate_pairing(make_zspec(ZVariant::TypeC_G), type_d()),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate_pairing(make_zspec(ZVariant::SS_R), type_a_nu1()),
                    std::invalid_argument);
    // TypeC_G needs a negative initial parameter
    CHECK_THROWS_AS(validate_pairing(make_zspec(ZVariant::TypeC_G),
                                     make_family(FamilyKind::TypeC, 1.0, 2.0)),
                    std::invalid_argument);
    // PT1/BG closed forms assume gamma = eta/2
    CHECK_THROWS_AS(validate_pairing(make_zspec(ZVariant::TypeA_PT1),
                                     make_family(FamilyKind::TypeA, eta, 1.0, 0.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate_pairing(make_zspec(ZVariant::TypeA_BG),
                                     make_family(FamilyKind::TypeA, eta, 1.0, 0.0)),
                    std::invalid_argument);
}

TEST_CASE("single-orbit values") {
    auto cd = type_d();
    auto unit = make_zspec(ZVariant::Const, 0.0, 1.0);
    auto v = eval_z(unit, cd, 5).value();
    CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(v.imag()) < 1e-15);

    auto cs = self_similar();
    auto zr = make_zspec(ZVariant::SS_R);
    CHECK(eval_z(zr, cs, 1).value().real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(eval_z(zr, cs, 2).value().real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(eval_z(zr, cs, 0).value().real() == doctest::Approx(2.0).epsilon(1e-14));

    auto cc = type_c();
    auto zg = make_zspec(ZVariant::TypeC_G);
    CHECK(eval_z(zg, cc, 1).value().real() ==
          doctest::Approx(std::sqrt(3.0 * gamma_const(cc))).epsilon(1e-14));

    // backward step can leave the variant's domain: a0 = a1 + eta > 0 here
    auto shallow = make_family(FamilyKind::TypeC, -0.5 * eta, 2.0);
    CHECK_NOTHROW(eval_z(zg, shallow, 1));
    CHECK_THROWS_AS(eval_z(zg, shallow, 0), std::domain_error);

    // alpha rotates each step by -alpha R(a_j)
    auto za = make_zspec(ZVariant::Const, 0.7, 1.0);
    auto w = eval_z(za, cd, 3);
    CHECK(w.phase == doctest::Approx(-0.7 * remainder_at(cd, 3)).epsilon(1e-15));
}

TEST_CASE("running products") {
    auto cd = type_d();
    auto c2 = make_zspec(ZVariant::Const, 0.0, 2.0);
    CHECK(z_product_direct(c2, cd, 0).value().real() == 1.0);
    CHECK(z_product_direct(c2, cd, 4).value().real() == doctest::Approx(16.0).epsilon(1e-14));
    CHECK(std::exp(z_product_direct(c2, cd, 25).log_mod) ==
          doctest::Approx(std::pow(2.0, 25)).epsilon(1e-14));

    auto cs = self_similar();
    auto zr = make_zspec(ZVariant::SS_R);
    CHECK(z_product_direct(zr, cs, 3).value().real() ==
          doctest::Approx(0.125).epsilon(1e-14));

    auto ca = type_a_nu1();
    auto pt1 = make_zspec(ZVariant::TypeA_PT1);
    CHECK(std::exp(z_product_closed(pt1, ca, 2).log_mod) ==
          doctest::Approx(0.5 * std::sqrt(120.0)).epsilon(1e-13));

    auto bg = make_zspec(ZVariant::TypeA_BG);
    CHECK(std::exp(z_product_closed(bg, ca, 2).log_mod) ==
          doctest::Approx(0.5 * std::sqrt(120.0) / 6.0).epsilon(1e-13));
}

TEST_CASE("closed products match direct products") {
    auto agree = [](const ZSpec& zs, const FamilyConfig& cfg, long nmax) {
        for (long n = 0; n <= nmax; ++n) {
            auto d = z_product_direct(zs, cfg, n);
            auto c = z_product_closed(zs, cfg, n);
            if (n == 0) {
                CHECK(d.log_mod == 0.0);
                CHECK(c.log_mod == 0.0);
                continue;
            }
            CHECK(d.log_mod == doctest::Approx(c.log_mod).epsilon(1e-10));
            CHECK(std::abs(wrap_phase(d.phase - c.phase)) < 1e-10);
        }
    };

    agree(make_zspec(ZVariant::Const, 0.3, 2.0), type_d(), 30);
    agree(make_zspec(ZVariant::Const, 0.0, 0.3), type_c(), 30);
    agree(make_zspec(ZVariant::TypeC_G, 0.5), type_c(), 30);
    agree(make_zspec(ZVariant::TypeA_PT1, 0.2), type_a_nu1(), 30);
    agree(make_zspec(ZVariant::TypeA_BG, 0.0), type_a_nu1(), 30);
    agree(make_zspec(ZVariant::TypeA_Whittaker, 0.1, 0.0, 0.5), type_a_nu1(), 30);
    agree(make_zspec(ZVariant::TypeA_Whittaker, 0.0, 0.0, -0.3),
          make_family(FamilyKind::TypeA, 0.4, 1.3, 0.1), 30);
    agree(make_zspec(ZVariant::SS_R, 0.4), self_similar(), 30);
    agree(make_zspec(ZVariant::SS_R, 0.0), self_similar(2.0, 0.7, 0.4), 30);
    agree(make_zspec(ZVariant::SS_Ramanujan, 0.0, 0.1), self_similar(1.0, 0.9, 1.0), 20);
}

TEST_CASE("phase law") {
    auto check_phase = [](ZSpec zs, const FamilyConfig& cfg, long nmax) {
        const double alpha = 0.7;
        ZSpec with = zs, without = zs;
        with.alpha = alpha;
        without.alpha = 0.0;
        for (long n = 1; n <= nmax; ++n) {
            double dphi = z_product_direct(with, cfg, n).phase -
                          z_product_direct(without, cfg, n).phase;
            double expected = -alpha * energy_level(cfg, n);
            CHECK(std::abs(wrap_phase(dphi - expected)) < 1e-12);
        }
    };
    check_phase(make_zspec(ZVariant::Const, 0.0, 1.5), type_d(), 20);
    check_phase(make_zspec(ZVariant::TypeC_G), type_c(), 20);
    check_phase(make_zspec(ZVariant::TypeA_PT1), type_a_nu1(), 20);
    check_phase(make_zspec(ZVariant::SS_R), self_similar(), 20);
}

TEST_CASE("Ramanujan deformation") {
    auto cs = self_similar();

    // c = 0 collapses onto the plain scaling functional
    auto plain = make_zspec(ZVariant::SS_R);
    auto zero = make_zspec(ZVariant::SS_Ramanujan, 0.0, 0.0);
    for (long n = 0; n <= 20; ++n) {
        auto a = z_product_direct(plain, cs, n);
        auto b = z_product_direct(zero, cs, n);
        CHECK(a.log_mod == doctest::Approx(b.log_mod).epsilon(1e-14));
        auto ac = z_product_closed(plain, cs, n);
        auto bc = z_product_closed(zero, cs, n);
        CHECK(ac.log_mod == doctest::Approx(bc.log_mod).epsilon(1e-14));
    }

    // outside c < q^n the modulus argument goes negative
    auto hot = make_zspec(ZVariant::SS_Ramanujan, 0.0, 0.3);
    CHECK_NOTHROW(eval_z(hot, cs, 1));
    CHECK_THROWS_AS(eval_z(hot, cs, 2), std::domain_error);
    CHECK_THROWS_AS(z_product_closed(hot, cs, 2), std::domain_error);
    CHECK_NOTHROW(z_product_closed(hot, cs, 1));
}
