#include "sis/coherent.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace sis {

namespace {

constexpr double kTailTol = 1e-12;
constexpr long kStateCap = 4096;
constexpr long kSeriesCap = 8192;

// ln|h_n| and arg(h_n) for n = 0..nmax, sharing one spectral table.
struct HSeq {
    SpectralTable table;
    std::vector<double> ln_mod;  // ln|h_n|
    std::vector<double> phase;   // arg h_n = +alpha e_n
};

HSeq build_hseq(const FamilyConfig& cfg, const ZSpec& zs, long nmax) {
    validate_pairing(zs, cfg);
    HSeq h;
    h.table = build_spectral_table(cfg, nmax);
    h.ln_mod.resize(nmax + 1);
    h.phase.resize(nmax + 1);
    double zlog = 0.0, zphase = 0.0;
    h.ln_mod[0] = 0.0;
    h.phase[0] = 0.0;
    for (long n = 1; n <= nmax; ++n) {
        LogComplex zn = eval_z(zs, cfg, n);
        zlog += zn.log_mod;
        zphase += zn.phase;
        h.ln_mod[n] = 0.5 * h.table.lnP[n] - zlog;
        h.phase[n] = -zphase;
    }
    return h;
}

struct SeriesResult {
    double ln_sum = 0.0;  // ln sum_n x^n/|h_n|^2
    long used = 0;        // index of the last term included
    double last_ln_term = -std::numeric_limits<double>::infinity();
    double prev_ln_term = -std::numeric_limits<double>::infinity();
};

// Accumulates sum x^n/|h_n|^2 in log space with term count growing until the
// tail is negligible; diverging term sequences are reported as such.
SeriesResult normalization_series(const FamilyConfig& cfg, const ZSpec& zs,
                                  double x, long cap = kSeriesCap) {
    if (x < 0.0) throw std::domain_error("normalization: x must be >= 0");
    SeriesResult out;
    if (x == 0.0) {
        out.ln_sum = 0.0;  // only n = 0 contributes; h_0 = 1
        return out;
    }
    const double lnx = std::log(x);
    long nmax = 64;
    for (;;) {
        HSeq h = build_hseq(cfg, zs, nmax);
        double ln_sum = 0.0;  // n = 0 term
        double prev = 0.0, cur = 0.0;
        int tiny_streak = 0;
        long grow_streak = 0;
        for (long n = 1; n <= nmax; ++n) {
            prev = cur;
            cur = n * lnx - 2.0 * h.ln_mod[n];
            ln_sum = logaddexp(ln_sum, cur);
            // convergent catalog series peak near x in log scale; far beyond
            // that only genuinely divergent term sequences climb
            if (cur > 700.0 + 10.0 * x)
                throw std::domain_error(
                    "normalization: series diverges (|z|^2 at or beyond the "
                    "squared convergence radius)");
            grow_streak = (n > 1 && cur >= prev) ? grow_streak + 1 : 0;
            if (cur < ln_sum - 41.5) {  // term below 1e-18 * sum
                if (++tiny_streak >= 3) {
                    out.ln_sum = ln_sum;
                    out.used = n;
                    out.last_ln_term = cur;
                    out.prev_ln_term = prev;
                    return out;
                }
            } else {
                tiny_streak = 0;
            }
        }
        if (nmax >= cap) {
            // distinguish honest divergence from slow convergence: a term
            // sequence still at/above its midpoint level is not summable
            double mid = (nmax / 2) * lnx - 2.0 * h.ln_mod[nmax / 2];
            if (cur >= mid || grow_streak > 0)
                throw std::domain_error(
                    "normalization: series diverges (|z|^2 at or beyond the "
                    "squared convergence radius)");
            throw std::runtime_error(
                "normalization: series did not converge within the term cap");
        }
        nmax = std::min(cap, nmax * 2);
    }
}

}  // namespace

LogComplex hn_log(const FamilyConfig& cfg, const ZSpec& zs, long n) {
    if (n < 0) throw std::invalid_argument("hn: n must be >= 0");
    if (n == 0) {
        validate_pairing(zs, cfg);
        return LogComplex::from_polar(0.0, 0.0);
    }
    HSeq h = build_hseq(cfg, zs, n);
    return LogComplex::from_polar(h.ln_mod[n], h.phase[n]);
}

std::complex<double> hn(const FamilyConfig& cfg, const ZSpec& zs, long n) {
    return hn_log(cfg, zs, n).value();
}

double normalization(const FamilyConfig& cfg, const ZSpec& zs, double x) {
    validate_pairing(zs, cfg);
    return std::exp(-0.5 * normalization_series(cfg, zs, x).ln_sum);
}

double radius_of_convergence(const FamilyConfig& cfg, const ZSpec& zs,
                             long nprobe) {
    if (nprobe < 16)
        throw std::invalid_argument("radius probe needs nprobe >= 16");
    HSeq h = build_hseq(cfg, zs, nprobe);

    // y_n = ln(|h_n|^2)/n; the radius estimate is exp(sup y) over the
    // trailing quarter, promoted to infinity when y is still climbing.
    auto y = [&](long n) { return 2.0 * h.ln_mod[n] / static_cast<double>(n); };
    const long lo = std::max<long>(1, (3 * nprobe) / 4);
    double sup = -std::numeric_limits<double>::infinity();
    for (long n = lo; n <= nprobe; ++n) sup = std::max(sup, y(n));

    // least-squares slope of y against ln n over the trailing window
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long m = 0;
    for (long n = lo; n <= nprobe; ++n, ++m) {
        double xs = std::log(static_cast<double>(n));
        sx += xs;
        sy += y(n);
        sxx += xs * xs;
        sxy += xs * y(n);
    }
    double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);

    double estimate = std::exp(sup);
    if (slope > 0.5 || estimate > 1e6)
        return std::numeric_limits<double>::infinity();
    return estimate;
}

CoherentState build_state(const FamilyConfig& cfg, const ZSpec& zs,
                          std::complex<double> z, long nmax) {
    validate_pairing(zs, cfg);
    if (nmax < 1) throw std::invalid_argument("build_state: nmax must be >= 1");

    const double x = std::norm(z);
    SeriesResult series = normalization_series(cfg, zs, x);
    const double ln_norm = -0.5 * series.ln_sum;

    long n_used = std::max<long>(nmax, 1);
    double tail;
    HSeq h;
    for (;;) {
        h = build_hseq(cfg, zs, n_used);
        if (x == 0.0) {
            tail = 0.0;
            break;
        }
        const double lnx = std::log(x);
        double t_last = n_used * lnx - 2.0 * h.ln_mod[n_used];
        double t_prev = (n_used - 1) * lnx - 2.0 * h.ln_mod[n_used - 1];
        double r = std::exp(t_last - t_prev);
        if (r < 1.0) {
            // geometric bound on sum_{n > nmax} t_n, relative to the series
            tail = std::exp(t_last - series.ln_sum) * r / (1.0 - r);
            if (tail <= kTailTol) break;
        }
        if (n_used >= kStateCap)
            throw std::runtime_error(
                "build_state: truncated mass stays above tolerance at the "
                "nmax cap; refusing to truncate silently");
        n_used = std::min(kStateCap, n_used * 2);
    }

    CoherentState s;
    s.cfg = cfg;
    s.zs = zs;
    s.z = z;
    s.nmax = n_used;
    s.norm_factor = std::exp(ln_norm);
    s.tail = tail;
    s.c.resize(n_used + 1);
    const double ln_absz = (x == 0.0) ? 0.0 : 0.5 * std::log(x);
    const double arg_z = std::arg(z);
    s.c[0] = std::complex<double>(s.norm_factor, 0.0);
    for (long n = 1; n <= n_used; ++n) {
        if (x == 0.0) {
            s.c[n] = {0.0, 0.0};
            continue;
        }
        double ln_mag = ln_norm + n * ln_absz - h.ln_mod[n];
        double ph = n * arg_z - h.phase[n];
        s.c[n] = std::polar(std::exp(ln_mag), ph);
    }
    return s;
}

std::complex<double> overlap(const CoherentState& s1, const CoherentState& s2) {
    // alpha is exempt: time evolution advances it without leaving the basis
    const bool same_functional = s1.zs.variant == s2.zs.variant &&
                                 s1.zs.c == s2.zs.c && s1.zs.sigma == s2.zs.sigma;
    if (!(s1.cfg == s2.cfg) || !same_functional)
        throw std::invalid_argument(
            "overlap: states must share family and functional labels");
    const long n = std::min(s1.nmax, s2.nmax);
    std::complex<double> acc{0.0, 0.0};
    for (long k = 0; k <= n; ++k) acc += std::conj(s1.c[k]) * s2.c[k];
    return acc;
}

CoherentState evolve(const CoherentState& s, double t, double Omega) {
    ZSpec shifted = s.zs;
    shifted.alpha += Omega * t;
    return build_state(s.cfg, shifted, s.z, s.nmax);
}

bool scalar_exact(const FamilyConfig& cfg, const ZSpec& zs) {
    return (cfg.kind == FamilyKind::TypeC || cfg.kind == FamilyKind::TypeD) &&
           zs.variant == ZVariant::Const;
}

namespace {

// |z Z(a_0)|^2 scaled by the squared ratio of backward-shifted to in-place
// normalization factors.
double shifted_scalar_energy(const CoherentState& s) {
    FamilyConfig back = s.cfg;
    back.a1 = orbit_point(s.cfg, 0);
    const double x = std::norm(s.z);
    double ratio = normalization(back, s.zs, x) /
                   normalization(s.cfg, s.zs, x);
    double zmod2 = std::exp(2.0 * eval_z(s.zs, s.cfg, 0).log_mod);
    return x * zmod2 * ratio * ratio;
}

}  // namespace

EnergyExpectation energy_expectation(const CoherentState& s) {
    EnergyExpectation out;
    double e = 0.0;
    for (long n = 1; n <= s.nmax; ++n) {
        e += remainder_at(s.cfg, n);
        out.series += std::norm(s.c[n]) * e;
    }
    try {
        out.shifted_diagnostic = shifted_scalar_energy(s);
    } catch (const std::exception&) {
        out.shifted_diagnostic = std::numeric_limits<double>::quiet_NaN();
    }
    if (scalar_exact(s.cfg, s.zs)) out.closed = out.shifted_diagnostic;
    return out;
}

double action_variable(const CoherentState& s, double Omega) {
    if (!scalar_exact(s.cfg, s.zs))
        throw std::runtime_error(
            "action_variable: the scalar action identity holds only for "
            "constant-remainder families with the constant functional");
    if (!(Omega > 0.0))
        throw std::invalid_argument("action_variable: Omega must be > 0");
    return energy_expectation(s).series / Omega;
}

double annihilation_check(const CoherentState& s) {
    if (!scalar_exact(s.cfg, s.zs))
        throw std::runtime_error(
            "annihilation_check: the lowering eigenvalue is scalar only for "
            "constant-remainder families with the constant functional");
    const std::complex<double> lambda = s.z * eval_z(s.zs, s.cfg, 0).value();
    double worst = 0.0;
    double e = 0.0;
    for (long n = 0; n + 1 <= s.nmax; ++n) {
        e += remainder_at(s.cfg, n + 1);
        double r = std::abs(std::sqrt(e) * s.c[n + 1] - lambda * s.c[n]);
        worst = std::max(worst, r);
    }
    return worst;
}

}  // namespace sis
