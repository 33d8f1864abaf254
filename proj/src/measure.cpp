#include <sis/measure.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include <sis/quadrature.hpp>
#include <sis/specfun.hpp>

namespace sis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool near_integer(double x, double tol = 1e-9) {
    return std::abs(x - std::round(x)) <= tol;
}

// ln K_nu(x) through the catalog's full nu range (integer orders included);
// beyond the underflow point the leading asymptotic term is enough, since
// those nodes contribute e^{-x} of nothing.
double ln_bessel_k(double nu, double x) {
    if (x > 680.0)
        return 0.5 * std::log(std::numbers::pi / (2.0 * x)) - x;
    return std::log(std::cyl_bessel_k(nu, x));
}

double ramanujan_prefactor(double r1, double q) {
    return r1 * (1.0 - q) / (q * std::log(1.0 / q));
}

void require_rho(const MeasureCase& mc, double rho) {
    if (rho < 0.0)
        throw std::domain_error("distribution_W: rho below the support");
    if (mc.kind == MeasureKind::DiskTypeC && rho >= 1.0)
        throw std::domain_error(
            "distribution_W: the disk entry is supported on [0, 1)");
}

// shared tail: integral over [0, inf) of exp(n ln rho + ln W), computed by
// locating the log-space peak and splitting there (double-exponential nodes
// concentrate poorly on sharply peaked integrands).
std::pair<double, bool> semiinf_moment(const MeasureCase& mc, long n) {
    const double lo = std::log(1e-6), hi = std::log(1e8);
    const int npts = 281;
    double best = -kInf, rho_star = 1e-6;
    for (int i = 0; i < npts; ++i) {
        double rho = std::exp(lo + (hi - lo) * i / (npts - 1));
        double L = n * std::log(rho) + ln_distribution_W(mc, rho);
        if (std::isfinite(L) && L > best) {
            best = L;
            rho_star = rho;
        }
    }
    if (!std::isfinite(best)) return {kNaN, false};
    const double scale = best;
    auto ln_integrand = [&](double rho) {
        return n * std::log(rho) + ln_distribution_W(mc, rho) - scale;
    };
    auto left = quad_finite([&](double rho) { return std::exp(ln_integrand(rho)); },
                            0.0, rho_star);
    auto right = quad_semiinf(
        [&](double u) { return std::exp(ln_integrand(rho_star + u)); });
    double value = (left.value + right.value) * std::exp(scale);
    return {value, left.converged && right.converged};
}

std::pair<double, bool> disk_moment(const MeasureCase& mc, long n) {
    const double amp = -(mc.rho_c + 1.0);
    const double expo = -mc.rho_c - 2.0;
    auto q = quad_finite(
        [&](double rho, double gap) {
            return std::pow(rho, static_cast<double>(n)) * amp *
                   std::pow(gap, expo);
        },
        0.0, 1.0);
    return {q.value, q.converged};
}

}  // namespace

const char* measure_kind_name(MeasureKind k) {
    switch (k) {
        case MeasureKind::HOFlat: return "hoflat";
        case MeasureKind::DiskTypeC: return "disk";
        case MeasureKind::SechTypeA: return "sech";
        case MeasureKind::BesselBG: return "bessel";
        case MeasureKind::WhittakerPT: return "whittaker";
        case MeasureKind::RamanujanQ: return "ramanujan";
        case MeasureKind::RamanujanGeneralQ: return "ramanujan-general";
    }
    return "unknown";
}

bool operator==(const MeasureCase& a, const MeasureCase& b) {
    return a.kind == b.kind && a.gamma_c == b.gamma_c && a.c == b.c &&
           a.rho_c == b.rho_c && a.nu == b.nu && a.sigma == b.sigma &&
           a.r1 == b.r1 && a.q == b.q;
}

MeasureCase make_measure_case(const FamilyConfig& cfg, const ZSpec& zs) {
    validate_pairing(zs, cfg);
    MeasureCase mc;
    switch (zs.variant) {
        case ZVariant::Const:
            if (cfg.kind == FamilyKind::TypeA) {
                // sech entry: pinned to the half-index orbit with c = kappa
                double rho = rho_translation(cfg);
                double kappa = eta * cfg.beta;
                if (std::abs(rho - 0.5) > 1e-12)
                    throw std::invalid_argument(
                        "make_measure_case: the sech entry requires the "
                        "half-index orbit (a1 + gamma = eta/2)");
                if (std::abs(zs.c - kappa) > 1e-12 * std::max(1.0, kappa))
                    throw std::invalid_argument(
                        "make_measure_case: the sech entry requires the "
                        "ladder constant c = eta*beta");
                mc.kind = MeasureKind::SechTypeA;
                return mc;
            }
            mc.kind = MeasureKind::HOFlat;
            mc.gamma_c = gamma_const(cfg);
            mc.c = zs.c;
            if (std::abs(zs.c * zs.c - mc.gamma_c) >
                1e-12 * std::max(1.0, mc.gamma_c))
                throw std::invalid_argument(
                    "make_measure_case: the flat-gap moment identity requires "
                    "c^2 = gamma");
            return mc;
        case ZVariant::TypeC_G:
            mc.kind = MeasureKind::DiskTypeC;
            mc.rho_c = cfg.a1 / eta;
            if (mc.rho_c >= -1.0)
                throw std::invalid_argument(
                    "make_measure_case: the disk entry requires a1/eta < -1 "
                    "for finite moments");
            return mc;
        case ZVariant::TypeA_BG:
            mc.kind = MeasureKind::BesselBG;
            mc.nu = 2.0 * cfg.a1 / eta;
            if (mc.nu <= -1.0)
                throw std::invalid_argument(
                    "make_measure_case: the Bessel entry requires nu > -1");
            return mc;
        case ZVariant::TypeA_Whittaker:
            mc.kind = MeasureKind::WhittakerPT;
            mc.sigma = zs.sigma;
            if (near_integer(zs.sigma))
                throw std::invalid_argument(
                    "make_measure_case: the Whittaker entry requires "
                    "non-integer sigma");
            return mc;
        case ZVariant::SS_R:
            mc.kind = MeasureKind::RamanujanQ;
            mc.r1 = cfg.r_scale * cfg.a1;
            mc.q = cfg.q;
            return mc;
        case ZVariant::SS_Ramanujan:
            mc.kind = MeasureKind::RamanujanGeneralQ;
            mc.r1 = cfg.r_scale * cfg.a1;
            mc.q = cfg.q;
            mc.c = zs.c;
            return mc;
        default:
            throw std::invalid_argument(
                "make_measure_case: no catalog entry for this functional");
    }
}

double domain_sup(const MeasureCase& mc) {
    return mc.kind == MeasureKind::DiskTypeC ? 1.0 : kInf;
}

double distribution_W(const MeasureCase& mc, double rho) {
    require_rho(mc, rho);
    switch (mc.kind) {
        case MeasureKind::HOFlat:
            return std::exp(-mc.c * mc.c * rho / mc.gamma_c);
        case MeasureKind::DiskTypeC:
            return -(mc.rho_c + 1.0) * std::pow(1.0 - rho, -mc.rho_c - 2.0);
        case MeasureKind::SechTypeA:
            return std::exp(-std::sqrt(rho)) / (2.0 * std::sqrt(rho));
        case MeasureKind::BesselBG:
            if (rho == 0.0)
                return mc.nu > 0.0 ? specfun::ln_gamma(mc.nu).value() : kInf;
            return 2.0 * std::pow(rho, 0.5 * mc.nu) *
                   std::cyl_bessel_k(mc.nu, 2.0 * std::sqrt(rho));
        case MeasureKind::WhittakerPT:
            if (rho == 0.0) return 1.0 - mc.sigma;  // Gamma(2-s)/Gamma(1-s)
            return specfun::ln_gamma(2.0 - mc.sigma).value() *
                   std::exp(-0.5 * rho) *
                   specfun::whittaker_w(mc.sigma, 0.5, rho);
        case MeasureKind::RamanujanQ: {
            double s = rho * mc.r1 * (1.0 - mc.q);
            return ramanujan_prefactor(mc.r1, mc.q) /
                   specfun::q_poch_inf(-s / mc.q, mc.q);
        }
        case MeasureKind::RamanujanGeneralQ: {
            double s = rho * mc.r1 * (1.0 - mc.q);
            return ramanujan_prefactor(mc.r1, mc.q) * (1.0 - mc.c) *
                   specfun::q_poch_inf(-mc.c * s, mc.q) /
                   specfun::q_poch_inf(-s / mc.q, mc.q);
        }
    }
    return kNaN;
}

double ln_distribution_W(const MeasureCase& mc, double rho) {
    require_rho(mc, rho);
    switch (mc.kind) {
        case MeasureKind::HOFlat:
            return -mc.c * mc.c * rho / mc.gamma_c;
        case MeasureKind::DiskTypeC:
            return std::log(-(mc.rho_c + 1.0)) +
                   (-mc.rho_c - 2.0) * std::log1p(-rho);
        case MeasureKind::SechTypeA:
            return -std::sqrt(rho) - std::numbers::ln2 - 0.5 * std::log(rho);
        case MeasureKind::BesselBG:
            return std::numbers::ln2 + 0.5 * mc.nu * std::log(rho) +
                   ln_bessel_k(mc.nu, 2.0 * std::sqrt(rho));
        case MeasureKind::WhittakerPT:
            return specfun::ln_gamma(2.0 - mc.sigma).log_abs - 0.5 * rho +
                   specfun::whittaker_w_ln(mc.sigma, 0.5, rho);
        case MeasureKind::RamanujanQ: {
            double s = rho * mc.r1 * (1.0 - mc.q);
            return std::log(ramanujan_prefactor(mc.r1, mc.q)) -
                   specfun::q_poch_inf_ln(-s / mc.q, mc.q);
        }
        case MeasureKind::RamanujanGeneralQ: {
            double s = rho * mc.r1 * (1.0 - mc.q);
            return std::log(ramanujan_prefactor(mc.r1, mc.q) * (1.0 - mc.c)) +
                   specfun::q_poch_inf_ln(-mc.c * s, mc.q) -
                   specfun::q_poch_inf_ln(-s / mc.q, mc.q);
        }
    }
    return kNaN;
}

double weight_w(const MeasureCase& mc, double rho, double n_sq) {
    return distribution_W(mc, rho) / (std::numbers::pi * n_sq);
}

double ho_phi_reconstruct(double gamma_c, double c, double rho) {
    if (gamma_c <= 0.0 || c == 0.0)
        throw std::domain_error(
            "ho_phi_reconstruct: requires gamma > 0 and c != 0");
    return std::exp(-c * c * rho / gamma_c);
}

MomentReport verify_moments(const MeasureCase& mc, const FamilyConfig& cfg,
                            const ZSpec& zs, long n_max, double tol) {
    if (!(mc == make_measure_case(cfg, zs)))
        throw std::invalid_argument(
            "verify_moments: the measure entry does not match the "
            "(family, functional) pairing");
    if (n_max < 0)
        throw std::invalid_argument("verify_moments: n_max must be >= 0");

    // the Bessel entry's standard form carries an extra Gamma(nu+1)
    const double scale = mc.kind == MeasureKind::BesselBG
                             ? specfun::ln_gamma(mc.nu + 1.0).value()
                             : 1.0;

    MomentReport report;
    report.mc = mc;
    report.pass = true;
    for (long n = 0; n <= n_max; ++n) {
        MomentRow row;
        row.n = n;
        // deformed q-rows exist only below c < q^n; at or beyond, the moment
        // integral diverges and the ladder coefficient has no real value
        if (mc.kind == MeasureKind::RamanujanGeneralQ &&
            mc.c >= std::pow(mc.q, static_cast<double>(n))) {
            row.moment = kNaN;
            row.target = kNaN;
            row.rel_err = kInf;
            row.pass = false;
            report.pass = false;
            report.rows.push_back(row);
            continue;
        }
        row.target = scale * std::exp(2.0 * hn_log(cfg, zs, n).log_mod);
        auto [moment, ok] = mc.kind == MeasureKind::DiskTypeC
                                ? disk_moment(mc, n)
                                : semiinf_moment(mc, n);
        row.moment = moment;
        row.rel_err = std::abs(moment - row.target) / std::abs(row.target);
        row.pass = ok && row.rel_err <= tol;
        report.pass = report.pass && row.pass;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace sis
