#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

RunResult run(const std::string& args) {
    static int counter = 0;
    const std::string path = "/tmp/siscs_cli_" + std::to_string(::getpid()) +
                             "_" + std::to_string(counter++);
    const std::string cmd =
        std::string(SISCS_BINARY) + " " + args + " > " + path + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(status);
    r.out = slurp(path);
    std::remove(path.c_str());
    return r;
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string line;
    while (std::getline(ss, line)) out.push_back(line);
    return out;
}

std::vector<double> csv_fields(const std::string& line) {
    std::vector<double> out;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

const std::string osc_flags = "--family typeD --beta 0.7071067811865476";

}  // namespace

TEST_CASE("spectrum table") {
    const auto r =
        run("spectrum --family typeD --beta 0.70711 --nmax 3 --output csv");
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "n,R,e,P");
    const double expected[3][4] = {
        {1, 1, 1, 1}, {2, 1, 2, 2}, {3, 1, 3, 6}};
    for (int i = 0; i < 3; ++i) {
        const auto f = csv_fields(lines[i + 1]);
        REQUIRE(f.size() == 4);
        for (int j = 0; j < 4; ++j)
            CHECK(f[j] == doctest::Approx(expected[i][j]).epsilon(1e-4));
    }
}

TEST_CASE("vacuum state collapses to one row") {
    const auto r = run("state " + osc_flags + " --z 0,0 --output csv");
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "n,re,im,abs2");
    CHECK(lines[1] == "0,1,0,1");
}

TEST_CASE("overlap against the closed oscillator kernel") {
    const auto r =
        run("overlap " + osc_flags + " --z 0.3,0 --z2 0.7,0 --output csv");
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    const auto f = csv_fields(lines[1]);
    // exp(-(0.09+0.49)/2 + 0.21)
    CHECK(f[2] == doctest::Approx(0.92311634638663631).epsilon(1e-12));
}

TEST_CASE("measure verification passes and fails by design") {
    CHECK(run("verify-measure --case hoflat --nmoments 6 --tol 1e-6")
              .exit_code == 0);
    const auto r = run("verify-measure --case hoflat --nmoments 6 --tol 1e-18");
    CHECK(r.exit_code == 3);  // unreachable tolerance: every row fails
    CHECK(run("verify-measure --case nonsense").exit_code == 1);
}

TEST_CASE("report subsets and fault injection") {
    const auto sub = run("report --only measures");
    REQUIRE(sub.exit_code == 0);
    CHECK(sub.out.find("\"criterion\": 4") != std::string::npos);
    CHECK(sub.out.find("\"criterion\": 5") != std::string::npos);
    CHECK(sub.out.find("\"criterion\": 1,") == std::string::npos);
    CHECK(sub.out.find("\"pass\": true") != std::string::npos);
    CHECK(sub.out.find("\"meta\"") != std::string::npos);

    const auto fault = run("report --only 4 --inject-fault");
    CHECK(fault.exit_code == 3);
    CHECK(fault.out.find("injected wrong measure constant") !=
          std::string::npos);
    CHECK(fault.out.find("moment n=") != std::string::npos);
    CHECK(fault.out.find("\"status\": \"fail\"") != std::string::npos);
}

TEST_CASE("identical configs produce byte-identical output") {
    const std::string args = "state " + osc_flags + " --z 0.3,0.2 --nmax 24";
    const auto a = run(args);
    const auto b = run(args);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
}

TEST_CASE("state dumps re-ingest as a fixed point") {
    const std::string dump = "/tmp/siscs_cli_dump_" +
                             std::to_string(::getpid()) + ".json";
    REQUIRE(run("state " + osc_flags + " --z 0.3,0.2 --nmax 24 --out " + dump)
                .exit_code == 0);
    const auto again = run("state --config " + dump);
    CHECK(again.exit_code == 0);
    CHECK(again.out == slurp(dump));
    std::remove(dump.c_str());
}

TEST_CASE("config file overrides flags") {
    const std::string path =
        "/tmp/siscs_cli_cfg_" + std::to_string(::getpid()) + ".json";
    {
        std::ofstream f(path);
        f << R"({"z": [0.0, 0.0]})";
    }
    const auto r = run("state " + osc_flags +
                       " --z 0.9,0.9 --output csv --config " + path);
    REQUIRE(r.exit_code == 0);
    CHECK(lines_of(r.out).size() == 2);  // config z=0 wins over the flag
    std::remove(path.c_str());
}

TEST_CASE("exit codes separate usage, convergence, verification") {
    CHECK(run("state --bogus-flag").exit_code == 1);
    CHECK(run("state " + osc_flags + " --z 1,2,3").exit_code == 1);
    CHECK(run("state --family typeB --beta 1 --z 0,0").exit_code == 1);
    CHECK(run("spectrum").exit_code == 1);  // family block required
    // level 9 on the default grid: the ladder residual check refuses
    CHECK(run("wavefunction " + osc_flags + " --n 9").exit_code == 2);
    CHECK(run("--help").exit_code == 0);
    CHECK(run("report --help").exit_code == 0);
}

TEST_CASE("grid subcommands emit position tables") {
    const auto r =
        run("wavefunction " + osc_flags + " --n 0 --grid -6:6:301");
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 302);
    CHECK(lines[0] == "x,re,im,abs2");
    // peak of the ground Gaussian pi^{-1/2} at x = 0
    const auto mid = csv_fields(lines[151]);
    CHECK(mid[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(mid[3] == doctest::Approx(0.5641895835477563).epsilon(1e-6));

    const auto e = run("evolve-grid " + osc_flags +
                       " --z 0.5,0 --t 0.1 --dt 0.001 --grid -6:6:301");
    REQUIRE(e.exit_code == 0);
    CHECK(lines_of(e.out).size() == 302);
    CHECK(run("evolve-grid " + osc_flags + " --z 0.5,0 --t 0.0015 --dt 0.001")
              .exit_code == 1);
}
