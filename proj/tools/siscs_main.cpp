#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <chrono>
#include <complex>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <sis/acceptance.hpp>
#include <sis/algebra.hpp>
#include <sis/coherent.hpp>
#include <sis/json_io.hpp>
#include <sis/measure.hpp>
#include <sis/position.hpp>

namespace {

using nlohmann::json;
using namespace sis;

// ---------------------------------------------------------------- logging

int log_threshold() {
    const char* v = std::getenv("SIS_LOG");
    if (v == nullptr) return 1;
    const std::string s(v);
    if (s == "error") return 0;
    if (s == "warn") return 1;
    if (s == "info") return 2;
    if (s == "debug") return 3;
    return 1;
}

void logmsg(int level, const std::string& msg) {
    static const int threshold = log_threshold();
    static const char* tag[] = {"error", "warn", "info", "debug"};
    if (level <= threshold)
        std::fprintf(stderr, "siscs %s: %s\n", tag[level], msg.c_str());
}

// ------------------------------------------------------------- formatting

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void emit(const std::string& data, const std::string& out_path) {
    if (out_path.empty()) {
        std::fwrite(data.data(), 1, data.size(), stdout);
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file " + out_path);
    f << data;
    logmsg(2, "wrote " + out_path);
}

std::complex<double> parse_complex_lit(const std::string& s) {
    const auto bad = [&] {
        return std::invalid_argument("complex literal must be re,im (got \"" +
                                     s + "\")");
    };
    const auto comma = s.find(',');
    if (comma == std::string::npos ||
        s.find(',', comma + 1) != std::string::npos)
        throw bad();
    try {
        std::size_t p1 = 0, p2 = 0;
        const std::string re_s = s.substr(0, comma), im_s = s.substr(comma + 1);
        const double re = std::stod(re_s, &p1);
        const double im = std::stod(im_s, &p2);
        if (p1 != re_s.size() || p2 != im_s.size()) throw bad();
        return {re, im};
    } catch (const std::logic_error&) {
        throw bad();
    }
}

Grid parse_grid_lit(const std::string& s) {
    const auto bad = [&] {
        return std::invalid_argument("grid must be xmin:xmax:npts (got \"" +
                                     s + "\")");
    };
    const auto c1 = s.find(':');
    const auto c2 = c1 == std::string::npos ? c1 : s.find(':', c1 + 1);
    if (c2 == std::string::npos || s.find(':', c2 + 1) != std::string::npos)
        throw bad();
    try {
        const double xmin = std::stod(s.substr(0, c1));
        const double xmax = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
        const long npts = std::stol(s.substr(c2 + 1));
        return make_grid(xmin, xmax, npts);
    } catch (const std::invalid_argument&) {
        throw bad();
    } catch (const std::out_of_range&) {
        throw bad();
    }
}

// ------------------------------------------------------- config assembly

struct Flags {
    std::string family, zfunc, z_lit, output, config_path, out_path;
    double a1 = 0, beta = 0, gamma = 0, delta = 0, lambda = 0, q = 0,
           rscale = 0;
    double zconst = 0, sigma = 0, cram = 0, alpha = 0, tol = 1e-8;
    long nmax = 64;
    // subcommand extras
    std::string z2_lit, grid_lit, mcase;
    double t = 0, dt = 1e-3;
    long n = 0, nmoments = 8;
    bool inject_fault = false;
    std::vector<std::string> only;
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--family", f.family,
                    "family kind: typeA|typeC|typeD|selfSimilar");
    sub->add_option("--a1", f.a1, "first orbit point");
    sub->add_option("--beta", f.beta, "superpotential slope");
    sub->add_option("--gamma", f.gamma, "typeA offset");
    sub->add_option("--delta", f.delta, "superpotential shift");
    sub->add_option("--lambda", f.lambda, "typeA translation");
    sub->add_option("--q", f.q, "scaling ratio");
    sub->add_option("--rscale", f.rscale, "scaling gap factor");
    sub->add_option("--zfunc", f.zfunc,
                    "functional variant: const|typeC_G|typeA_PT1|typeA_BG|"
                    "typeA_Whittaker|ss_R|ss_Ramanujan");
    sub->add_option("--zconst", f.zconst, "constant functional value");
    sub->add_option("--sigma", f.sigma, "Whittaker functional index");
    sub->add_option("--cram", f.cram, "scaling deformation constant");
    sub->add_option("--alpha", f.alpha, "phase-evolution parameter");
    sub->add_option("--z", f.z_lit, "coherent label as re,im");
    sub->add_option("--nmax", f.nmax, "series truncation order");
    sub->add_option("--tol", f.tol, "numerical tolerance");
    sub->add_option("--output", f.output, "output format: json|csv");
    sub->add_option("--config", f.config_path,
                    "JSON config file; overrides flags");
    sub->add_option("--out", f.out_path, "write data here instead of stdout");
}

void deep_merge(json& base, const json& over) {
    if (!base.is_object() || !over.is_object()) {
        base = over;
        return;
    }
    for (const auto& item : over.items()) {
        if (base.contains(item.key()))
            deep_merge(base[item.key()], item.value());
        else
            base[item.key()] = item.value();
    }
}

RunConfig assemble_config(const CLI::App* sub, const Flags& f) {
    json j = json::object();
    json fam = json::object();
    if (sub->count("--family")) fam["kind"] = f.family;
    if (sub->count("--a1")) fam["a1"] = f.a1;
    if (sub->count("--beta")) fam["beta"] = f.beta;
    if (sub->count("--gamma")) fam["gamma"] = f.gamma;
    if (sub->count("--delta")) fam["delta"] = f.delta;
    if (sub->count("--lambda")) fam["lambda"] = f.lambda;
    if (sub->count("--q")) fam["q"] = f.q;
    if (sub->count("--rscale")) fam["rscale"] = f.rscale;
    if (!fam.empty()) j["family"] = fam;

    json zs = json::object();
    if (sub->count("--zfunc")) zs["variant"] = f.zfunc;
    if (sub->count("--zconst") && sub->count("--cram"))
        throw std::invalid_argument(
            "--zconst and --cram both set the functional constant; "
            "give one of them");
    if (sub->count("--zconst")) zs["c"] = f.zconst;
    if (sub->count("--cram")) zs["c"] = f.cram;
    if (sub->count("--sigma")) zs["sigma"] = f.sigma;
    if (!zs.empty()) j["zspec"] = zs;

    if (sub->count("--alpha")) j["alpha"] = f.alpha;
    if (sub->count("--z")) {
        const auto z = parse_complex_lit(f.z_lit);
        j["z"] = json::array({z.real(), z.imag()});
    }
    if (sub->count("--nmax")) j["nmax"] = f.nmax;
    if (sub->count("--tol")) j["tol"] = f.tol;
    if (sub->count("--output")) j["output"] = f.output;
    if (sub->count("--out")) j["out_path"] = f.out_path;

    if (sub->count("--config")) {
        std::ifstream in(f.config_path);
        if (!in)
            throw std::invalid_argument("cannot read config file " +
                                        f.config_path);
        std::stringstream ss;
        ss << in.rdbuf();
        json file_j;
        try {
            file_j = json::parse(ss.str());
        } catch (const json::parse_error& e) {
            throw std::invalid_argument(std::string("config file: ") +
                                        e.what());
        }
        deep_merge(j, file_j);
    }
    logmsg(3, "effective config " + j.dump());
    return parse_run_config(j.dump());
}

// Did the user ask for a format explicitly (flag or config file)?  The
// position subcommands default to CSV regardless of the global default.
bool output_explicit(const CLI::App* sub, const RunConfig& rc) {
    return sub->count("--output") > 0 ||
           (sub->count("--config") > 0 && rc.output != "json");
}

// ------------------------------------------------------------ subcommands

int cmd_spectrum(const RunConfig& rc) {
    const auto table = build_spectral_table(rc.family, rc.nmax);
    std::string data;
    if (rc.output == "json") {
        json rows = json::array();
        for (long n = 1; n <= rc.nmax; ++n)
            rows.push_back({{"n", n},
                            {"R", table.r_seq[n - 1]},
                            {"e", table.e[n]},
                            {"P", nested_product(table, n)}});
        data = json({{"rows", rows}}).dump(2) + "\n";
    } else {
        data = "n,R,e,P\n";
        for (long n = 1; n <= rc.nmax; ++n)
            data += std::to_string(n) + "," + fmt17(table.r_seq[n - 1]) + "," +
                    fmt17(table.e[n]) + "," + fmt17(nested_product(table, n)) +
                    "\n";
    }
    emit(data, rc.out_path);
    return 0;
}

int cmd_coeffs(const RunConfig& rc) {
    const auto s = build_state(rc.family, rc.zspec, rc.z, rc.nmax);
    std::string data;
    if (rc.output == "json") {
        json rows = json::array();
        for (long n = 0; n <= s.nmax; ++n)
            rows.push_back(
                {{"n", n},
                 {"c", json::array({s.c[n].real(), s.c[n].imag()})},
                 {"abs2", std::norm(s.c[n])},
                 {"h_abs", std::exp(hn_log(rc.family, rc.zspec, n).log_mod)},
                 {"e", energy_level(rc.family, n)}});
        data = json({{"rows", rows}}).dump(2) + "\n";
    } else {
        data = "n,c_re,c_im,abs2,h_abs,e\n";
        for (long n = 0; n <= s.nmax; ++n)
            data += std::to_string(n) + "," + fmt17(s.c[n].real()) + "," +
                    fmt17(s.c[n].imag()) + "," + fmt17(std::norm(s.c[n])) +
                    "," +
                    fmt17(std::exp(hn_log(rc.family, rc.zspec, n).log_mod)) +
                    "," + fmt17(energy_level(rc.family, n)) + "\n";
    }
    emit(data, rc.out_path);
    return 0;
}

std::string state_csv(const CoherentState& s) {
    long last = 0;
    for (long n = 0; n <= s.nmax; ++n)
        if (s.c[n] != std::complex<double>{0.0, 0.0}) last = n;
    std::string data = "n,re,im,abs2\n";
    for (long n = 0; n <= last; ++n)
        data += std::to_string(n) + "," + fmt17(s.c[n].real()) + "," +
                fmt17(s.c[n].imag()) + "," + fmt17(std::norm(s.c[n])) + "\n";
    return data;
}

int cmd_state(const RunConfig& rc) {
    const auto s = build_state(rc.family, rc.zspec, rc.z, rc.nmax);
    logmsg(2, "state built: nmax " + std::to_string(s.nmax) + ", tail " +
                  fmt17(s.tail));
    RunConfig echo = rc;
    echo.out_path.clear();  // the dump describes the state, not the routing
    emit(rc.output == "json" ? serialize_state(s, echo) : state_csv(s),
         rc.out_path);
    return 0;
}

int cmd_overlap(const RunConfig& rc, const std::string& z2_lit) {
    const auto z2 = parse_complex_lit(z2_lit);
    const auto s1 = build_state(rc.family, rc.zspec, rc.z, rc.nmax);
    const auto s2 = build_state(rc.family, rc.zspec, z2, rc.nmax);
    const auto ov = overlap(s1, s2);
    std::string data;
    if (rc.output == "json") {
        data = json({{"z", json::array({rc.z.real(), rc.z.imag()})},
                     {"z2", json::array({z2.real(), z2.imag()})},
                     {"overlap", json::array({ov.real(), ov.imag()})},
                     {"abs", std::abs(ov)}})
                   .dump(2) +
               "\n";
    } else {
        data = "re,im,abs\n" + fmt17(ov.real()) + "," + fmt17(ov.imag()) +
               "," + fmt17(std::abs(ov)) + "\n";
    }
    emit(data, rc.out_path);
    return 0;
}

int cmd_evolve(const RunConfig& rc, double t) {
    const auto s = evolve(build_state(rc.family, rc.zspec, rc.z, rc.nmax), t);
    RunConfig echo = rc;
    echo.zspec = s.zs;  // evolution advances the phase parameter
    echo.out_path.clear();
    emit(rc.output == "json" ? serialize_state(s, echo) : state_csv(s),
         rc.out_path);
    return 0;
}

int cmd_action(const RunConfig& rc) {
    const auto s = build_state(rc.family, rc.zspec, rc.z, rc.nmax);
    const auto ee = energy_expectation(s);
    const double j_var = action_variable(s);
    std::string data;
    if (rc.output == "json") {
        json out = {{"energy_series", ee.series}, {"action", j_var}};
        out["energy_closed"] =
            ee.closed.has_value() ? json(*ee.closed) : json(nullptr);
        data = out.dump(2) + "\n";
    } else {
        data = "energy_series,action\n" + fmt17(ee.series) + "," +
               fmt17(j_var) + "\n";
    }
    emit(data, rc.out_path);
    return 0;
}

int cmd_verify_measure(const Flags& f) {
    const std::string& case_tok = f.mcase;
    if (!f.output.empty() && f.output != "json" && f.output != "csv")
        throw std::invalid_argument("output must be json or csv");
    const MeasureKind kinds[] = {
        MeasureKind::HOFlat,      MeasureKind::DiskTypeC,
        MeasureKind::SechTypeA,   MeasureKind::BesselBG,
        MeasureKind::WhittakerPT, MeasureKind::RamanujanQ,
        MeasureKind::RamanujanGeneralQ};
    const MeasureKind* kind = nullptr;
    for (const auto& k : kinds)
        if (case_tok == measure_kind_name(k)) kind = &k;
    if (kind == nullptr)
        throw std::invalid_argument(
            "unknown measure case \"" + case_tok +
            "\" (choose hoflat, disk, sech, bessel, whittaker, ramanujan, "
            "ramanujan-general)");

    const auto [cfg, zs] = reference_pairing(*kind);
    const auto mc = make_measure_case(cfg, zs);
    const auto rep = verify_moments(mc, cfg, zs, f.nmoments, f.tol);

    std::string data;
    if (f.output != "csv") {
        json rows = json::array();
        for (const auto& r : rep.rows)
            rows.push_back({{"n", r.n},
                            {"moment", r.moment},
                            {"target", r.target},
                            {"rel_err", r.rel_err},
                            {"pass", r.pass}});
        data = json({{"case", case_tok}, {"rows", rows}, {"pass", rep.pass}})
                   .dump(2) +
               "\n";
    } else {
        data = "n,moment,target,rel_err,pass\n";
        for (const auto& r : rep.rows)
            data += std::to_string(r.n) + "," + fmt17(r.moment) + "," +
                    fmt17(r.target) + "," + fmt17(r.rel_err) + "," +
                    (r.pass ? "1" : "0") + "\n";
    }
    emit(data, f.out_path);
    if (!rep.pass) {
        for (const auto& r : rep.rows)
            if (!r.pass)
                logmsg(0, "moment check failed: " + case_tok + " n=" +
                              std::to_string(r.n) + " rel_err " +
                              fmt17(r.rel_err));
        return 3;
    }
    return 0;
}

std::string gridfn_rows(const GridFn& f, bool as_json) {
    if (as_json) {
        json rows = json::array();
        for (long i = 0; i < f.grid.npoints; ++i)
            rows.push_back({{"x", f.grid.x(i)},
                            {"re", f.values[i].real()},
                            {"im", f.values[i].imag()},
                            {"abs2", std::norm(f.values[i])}});
        return json({{"rows", rows}}).dump(2) + "\n";
    }
    std::string data = "x,re,im,abs2\n";
    for (long i = 0; i < f.grid.npoints; ++i)
        data += fmt17(f.grid.x(i)) + "," + fmt17(f.values[i].real()) + "," +
                fmt17(f.values[i].imag()) + "," +
                fmt17(std::norm(f.values[i])) + "\n";
    return data;
}

int cmd_wavefunction(const RunConfig& rc, const std::string& grid_lit, long n,
                     bool json_requested) {
    const Grid grid =
        grid_lit.empty() ? default_grid(rc.family) : parse_grid_lit(grid_lit);
    const GridFn f = excited_state(rc.family, grid, n);
    emit(gridfn_rows(f, json_requested), rc.out_path);
    return 0;
}

int cmd_evolve_grid(const RunConfig& rc, const std::string& grid_lit, double t,
                    double dt, bool json_requested) {
    const Grid grid =
        grid_lit.empty() ? default_grid(rc.family) : parse_grid_lit(grid_lit);
    const auto s = build_state(rc.family, rc.zspec, rc.z, rc.nmax);
    const GridFn w = wavepacket(s, grid);
    const GridFn wt = evolve_grid(rc.family, w, t, dt);
    emit(gridfn_rows(wt, json_requested), rc.out_path);
    return 0;
}

int cmd_report(const Flags& f) {
    const auto t0 = std::chrono::steady_clock::now();
    FaultInjection fault;
    fault.wrong_measure_constant = f.inject_fault;
    const auto results = run_acceptance(f.only, fault);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();

    bool all_pass = !results.empty();
    json rows = json::array();
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        rows.push_back({{"criterion", r.id},
                        {"name", r.name},
                        {"status", r.pass ? "pass" : "fail"},
                        {"metric", r.metric},
                        {"threshold", r.threshold},
                        {"detail", r.detail}});
        if (!r.pass)
            logmsg(0, "criterion " + std::to_string(r.id) + " (" + r.name +
                          ") failed: " + r.detail);
    }

    std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%FT%TZ", std::gmtime(&now));
    json out = {{"criteria", rows},
                {"pass", all_pass},
                {"meta", {{"generated_utc", stamp},
                          {"elapsed_seconds", elapsed}}}};
    emit(out.dump(2) + "\n", f.out_path);
    return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "coherent-state toolkit for shape-invariant ladders: spectra, "
        "coefficient tables, overlaps, measures, wavefunctions, and the "
        "built-in verification report"};
    app.require_subcommand(1);

    Flags f;
    CLI::App* spectrum = app.add_subcommand(
        "spectrum", "gap sequence, energy levels, nested products");
    CLI::App* coeffs = app.add_subcommand(
        "coeffs", "coefficient table of the coherent state");
    CLI::App* state =
        app.add_subcommand("state", "full state dump (re-ingestable JSON)");
    CLI::App* ovl =
        app.add_subcommand("overlap", "inner product of two labels");
    CLI::App* evo =
        app.add_subcommand("evolve", "phase evolution in the eigenbasis");
    CLI::App* act =
        app.add_subcommand("action", "energy expectation and action variable");
    CLI::App* vm = app.add_subcommand(
        "verify-measure", "moment checks of a reference resolution measure");
    CLI::App* wf = app.add_subcommand(
        "wavefunction", "ladder eigenfunction on a grid (CSV x,re,im,abs2)");
    CLI::App* eg = app.add_subcommand(
        "evolve-grid",
        "Crank-Nicolson evolution of the wavepacket (CSV x,re,im,abs2)");
    CLI::App* rep = app.add_subcommand(
        "report", "run the acceptance suite, JSON summary");

    for (CLI::App* sub :
         {spectrum, coeffs, state, ovl, evo, act, vm, wf, eg, rep})
        add_common(sub, f);

    ovl->add_option("--z2", f.z2_lit, "second label as re,im")->required();
    evo->add_option("--t", f.t, "evolution time")->required();
    vm->add_option("--case", f.mcase, "measure case token")->required();
    vm->add_option("--nmoments", f.nmoments, "check moments n = 0..N");
    wf->add_option("--n", f.n, "ladder level");
    wf->add_option("--grid", f.grid_lit, "grid as xmin:xmax:npts");
    eg->add_option("--t", f.t, "evolution time")->required();
    eg->add_option("--dt", f.dt, "Crank-Nicolson step");
    eg->add_option("--grid", f.grid_lit, "grid as xmin:xmax:npts");
    rep->add_option("--only", f.only,
                    "criteria subset: group tokens or numbers");
    rep->add_flag("--inject-fault", f.inject_fault,
                  "corrupt a measure constant to prove the suite catches it");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        if (sub == rep) return cmd_report(f);
        if (sub == vm) return cmd_verify_measure(f);
        const RunConfig rc = assemble_config(sub, f);
        if (sub == spectrum) return cmd_spectrum(rc);
        if (sub == coeffs) return cmd_coeffs(rc);
        if (sub == state) return cmd_state(rc);
        if (sub == ovl) return cmd_overlap(rc, f.z2_lit);
        if (sub == evo) return cmd_evolve(rc, f.t);
        if (sub == act) return cmd_action(rc);
        const bool json_req = output_explicit(sub, rc) && rc.output == "json";
        if (sub == wf) return cmd_wavefunction(rc, f.grid_lit, f.n, json_req);
        if (sub == eg)
            return cmd_evolve_grid(rc, f.grid_lit, f.t, f.dt, json_req);
        throw std::logic_error("unhandled subcommand");
    } catch (const std::runtime_error& e) {
        logmsg(0, e.what());
        return 2;
    } catch (const std::logic_error& e) {
        logmsg(0, e.what());
        return 1;
    }
}
