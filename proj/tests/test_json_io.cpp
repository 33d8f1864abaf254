#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include <sis/coherent.hpp>
#include <sis/json_io.hpp>

using namespace sis;

TEST_CASE("minimal config fills defaults") {
    const auto rc = parse_run_config(
        R"({"family":{"kind":"typeD","beta":0.5}})");
    CHECK(rc.family.kind == FamilyKind::TypeD);
    CHECK(rc.family.beta == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rc.zspec.variant == ZVariant::Const);
    // omitted functional defaults to the constant-gap choice sqrt(gamma)
    CHECK(rc.zspec.c ==
          doctest::Approx(std::sqrt(std::sqrt(2.0) * 0.5)).epsilon(1e-15));
    CHECK(rc.zspec.alpha == 0.0);
    CHECK(rc.z == std::complex<double>{0.0, 0.0});
    CHECK(rc.nmax == 64);
    CHECK(rc.tol == 1e-8);
    CHECK(rc.output == "json");
    CHECK(rc.out_path.empty());
}

TEST_CASE("scaling families default to the scaling functional") {
    const auto rc = parse_run_config(
        R"({"family":{"kind":"selfSimilar","a1":1.0,"q":0.5,"rscale":1.0}})");
    CHECK(rc.zspec.variant == ZVariant::SS_R);
}

TEST_CASE("full config parses every field") {
    const auto rc = parse_run_config(R"({
        "family": {"kind":"typeA","a1":0.35355339059327373,"beta":1.0,
                   "gamma":0.35355339059327373,"delta":0.0,"lambda":0.0},
        "zspec": {"variant":"typeA_BG"},
        "alpha": 0.5,
        "z": [0.3, -0.4],
        "nmax": 12,
        "tol": 1e-10,
        "output": "csv",
        "out_path": "dump.csv"
    })");
    CHECK(rc.family.kind == FamilyKind::TypeA);
    CHECK(rc.zspec.variant == ZVariant::TypeA_BG);
    CHECK(rc.zspec.alpha == 0.5);
    CHECK(rc.z == std::complex<double>{0.3, -0.4});
    CHECK(rc.nmax == 12);
    CHECK(rc.tol == 1e-10);
    CHECK(rc.output == "csv");
    CHECK(rc.out_path == "dump.csv");
}

TEST_CASE("serialization round-trips byte for byte") {
    const char* src = R"({
        "family": {"kind":"selfSimilar","a1":1.0,"q":0.5,"rscale":1.0},
        "zspec": {"variant":"ss_Ramanujan","c":1e-4},
        "z": [0.2, 0.1],
        "nmax": 20
    })";
    const auto once = serialize_run_config(parse_run_config(src));
    const auto twice = serialize_run_config(parse_run_config(once));
    CHECK(once == twice);
    const auto rc = parse_run_config(once);
    CHECK(rc.family.q == 0.5);
    CHECK(rc.zspec.c == 1e-4);
}

TEST_CASE("unknown keys are rejected at every level") {
    CHECK_THROWS_AS(parse_run_config(
                        R"({"family":{"kind":"typeD","beta":0.5},"bogus":1})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        parse_run_config(R"({"family":{"kind":"typeD","beta":0.5,"x0":1}})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        parse_run_config(
            R"({"family":{"kind":"typeD","beta":0.5},"zspec":{"variant":"const","c":1,"w":2}})"),
        std::invalid_argument);
}

TEST_CASE("malformed configs name the offence") {
    CHECK_THROWS_AS(parse_run_config("not json"), std::invalid_argument);
    CHECK_THROWS_AS(parse_run_config("[1,2]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_run_config(R"({"z":[0,0]})"), std::invalid_argument);
    CHECK_THROWS_AS(
        parse_run_config(R"({"family":{"kind":"typeX","beta":0.5}})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        parse_run_config(R"({"family":{"kind":"typeB","beta":0.5}})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        parse_run_config(
            R"({"family":{"kind":"typeD","beta":0.5},"zspec":{"variant":"nope"}})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        parse_run_config(
            R"({"family":{"kind":"typeD","beta":0.5},"nmax":0})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        parse_run_config(
            R"({"family":{"kind":"typeD","beta":0.5},"nmax":2.5})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        parse_run_config(
            R"({"family":{"kind":"typeD","beta":0.5},"tol":0})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        parse_run_config(
            R"({"family":{"kind":"typeD","beta":0.5},"output":"xml"})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        parse_run_config(R"({"family":{"kind":"typeD","beta":0.5},"z":[1]})"),
        std::invalid_argument);
}

TEST_CASE("pairing mismatches surface on parse") {
    CHECK_THROWS_AS(
        parse_run_config(
            R"({"family":{"kind":"typeD","beta":0.5},"zspec":{"variant":"typeA_BG"}})"),
        std::invalid_argument);
}

TEST_CASE("state dumps re-ingest as configs") {
    const auto cfg =
        make_family(FamilyKind::TypeD, 0.0, 1.0 / std::sqrt(2.0));
    const auto zs = make_zspec(ZVariant::Const, 0.25, 1.0);
    const auto s = build_state(cfg, zs, {0.3, 0.2}, 24);

    RunConfig rc;
    rc.family = cfg;
    rc.zspec = zs;
    rc.z = s.z;
    rc.nmax = s.nmax;
    const auto dump = serialize_state(s, rc);

    const auto back = parse_run_config(dump);
    CHECK(back.family.kind == FamilyKind::TypeD);
    CHECK(back.zspec.alpha == 0.25);
    CHECK(back.z == s.z);
    CHECK(back.nmax == 24);
    // the payload keys ride along without tripping the schema check
    CHECK(dump.find("\"coefficients\"") != std::string::npos);
    CHECK(dump.find("\"norm_factor\"") != std::string::npos);
    CHECK(dump.find("\"tail\"") != std::string::npos);
}
