#include "sis/functional.hpp"

#include <cmath>
#include <stdexcept>

#include <sis/algebra.hpp>
#include <sis/specfun.hpp>

namespace sis {

namespace {

double kappa_of(const FamilyConfig& cfg) { return eta * cfg.beta; }

double nu_of(const FamilyConfig& cfg) { return 2.0 * cfg.a1 / eta; }

double rho_c_of(const FamilyConfig& cfg) { return cfg.a1 / eta; }

double r1_of(const FamilyConfig& cfg) { return cfg.r_scale * cfg.a1; }

bool gamma_is_half_eta(const FamilyConfig& cfg) {
    return std::abs(cfg.gamma - 0.5 * eta) <= 1e-12 * std::max(1.0, std::abs(cfg.gamma));
}

[[noreturn]] void negative_modulus(ZVariant v, long j) {
    throw std::domain_error("eval_z: " + z_variant_name(v) +
                            " modulus argument is negative at orbit index " +
                            std::to_string(j));
}

}  // namespace

std::string z_variant_name(ZVariant v) {
    switch (v) {
        case ZVariant::Const: return "Const";
        case ZVariant::TypeC_G: return "TypeC_G";
        case ZVariant::TypeA_PT1: return "TypeA_PT1";
        case ZVariant::TypeA_BG: return "TypeA_BG";
        case ZVariant::TypeA_Whittaker: return "TypeA_Whittaker";
        case ZVariant::SS_R: return "SS_R";
        case ZVariant::SS_Ramanujan: return "SS_Ramanujan";
    }
    return "Unknown";
}

ZSpec make_zspec(ZVariant variant, double alpha, double c, double sigma) {
    ZSpec zs;
    zs.variant = variant;
    zs.alpha = alpha;
    zs.c = c;
    zs.sigma = sigma;
    if (variant == ZVariant::Const && !(c > 0.0))
        throw std::invalid_argument("Const functional requires c > 0");
    if (variant == ZVariant::SS_Ramanujan && !(c >= 0.0 && c < 1.0))
        throw std::invalid_argument("SS_Ramanujan requires c in [0, 1)");
    if (variant == ZVariant::TypeA_Whittaker && !(sigma < 2.0))
        throw std::invalid_argument("TypeA_Whittaker requires sigma < 2");
    return zs;
}

void validate_pairing(const ZSpec& zs, const FamilyConfig& cfg) {
    validate_family(cfg);
    auto require_kind = [&](FamilyKind k) {
        if (cfg.kind != k)
            throw std::invalid_argument(z_variant_name(zs.variant) +
                                        " pairs with " + family_kind_name(k) +
                                        ", not " + family_kind_name(cfg.kind));
    };
    switch (zs.variant) {
        case ZVariant::Const:
            if (!(zs.c > 0.0))
                throw std::invalid_argument("Const functional requires c > 0");
            break;
        case ZVariant::TypeC_G:
            require_kind(FamilyKind::TypeC);
            if (!(rho_c_of(cfg) < 0.0))
                throw std::invalid_argument(
                    "TypeC_G requires a1/eta < 0 so the modulus stays real");
            break;
        case ZVariant::TypeA_PT1:
        case ZVariant::TypeA_BG:
            require_kind(FamilyKind::TypeA);
            // the closed coefficient forms in nu = 2 a1/eta assume
            // 2 rho = nu + 1, i.e. gamma = eta/2
            if (!gamma_is_half_eta(cfg))
                throw std::invalid_argument(z_variant_name(zs.variant) +
                                            " requires gamma = eta/2");
            break;
        case ZVariant::TypeA_Whittaker:
            require_kind(FamilyKind::TypeA);
            if (!(zs.sigma < 2.0))
                throw std::invalid_argument(
                    "TypeA_Whittaker requires sigma < 2");
            break;
        case ZVariant::SS_R:
            require_kind(FamilyKind::SelfSimilar);
            break;
        case ZVariant::SS_Ramanujan:
            require_kind(FamilyKind::SelfSimilar);
            if (!(zs.c >= 0.0 && zs.c < 1.0))
                throw std::invalid_argument("SS_Ramanujan requires c in [0, 1)");
            break;
    }
}

bool operator==(const ZSpec& a, const ZSpec& b) {
    return a.variant == b.variant && a.alpha == b.alpha && a.c == b.c &&
           a.sigma == b.sigma;
}

double g_aux(double a, const GFunction& g) { return g.c * a + g.d; }

LogComplex eval_z(const ZSpec& zs, const FamilyConfig& cfg, long j) {
    if (j < 0) throw std::invalid_argument("eval_z: orbit index must be >= 0");
    const double phase = -zs.alpha * remainder_at(cfg, j);

    switch (zs.variant) {
        case ZVariant::Const:
            return LogComplex::from_polar(std::log(zs.c), phase);
        case ZVariant::TypeC_G: {
            const double arg = -gamma_const(cfg) * orbit_point(cfg, j) / eta;
            if (arg < 0.0) negative_modulus(zs.variant, j);
            if (arg == 0.0) return LogComplex{};
            return LogComplex::from_polar(0.5 * std::log(arg), phase);
        }
        case ZVariant::TypeA_PT1: {
            const double nuj = 2.0 * orbit_point(cfg, j) / eta;
            const double arg = (nuj + 1.0) * (nuj + 2.0);
            if (arg < 0.0) negative_modulus(zs.variant, j);
            if (arg == 0.0) return LogComplex{};
            return LogComplex::from_polar(
                std::log(kappa_of(cfg)) + 0.5 * std::log(arg), phase);
        }
        case ZVariant::TypeA_BG: {
            const double nuj = 2.0 * orbit_point(cfg, j) / eta;
            const double arg = (nuj + 1.0) * (nuj + 2.0);
            const double den = nu_of(cfg) + static_cast<double>(j);
            if (arg < 0.0 || !(den > 0.0)) negative_modulus(zs.variant, j);
            if (arg == 0.0) return LogComplex{};
            return LogComplex::from_polar(std::log(kappa_of(cfg)) +
                                              0.5 * std::log(arg) -
                                              std::log(den),
                                          phase);
        }
        case ZVariant::TypeA_Whittaker: {
            const double rho = rho_translation(cfg);
            const double rhoj = rho + static_cast<double>(j) - 1.0;
            const double kap = kappa_of(cfg);
            const double arg = kap * kap * 2.0 * rhoj * (2.0 * rhoj + 1.0) *
                               (static_cast<double>(j) + 1.0 - zs.sigma) /
                               ((rho + rhoj) * (static_cast<double>(j) + 1.0));
            if (arg < 0.0) negative_modulus(zs.variant, j);
            if (arg == 0.0) return LogComplex{};
            return LogComplex::from_polar(0.5 * std::log(arg), phase);
        }
        case ZVariant::SS_R:
            return LogComplex::from_polar(
                std::log(r1_of(cfg)) +
                    (static_cast<double>(j) - 1.0) * std::log(cfg.q),
                phase);
        case ZVariant::SS_Ramanujan: {
            const double dampen =
                1.0 - zs.c * std::pow(cfg.q, -static_cast<double>(j));
            if (dampen < 0.0) negative_modulus(zs.variant, j);
            if (dampen == 0.0) return LogComplex{};
            return LogComplex::from_polar(
                std::log(r1_of(cfg)) +
                    (static_cast<double>(j) - 1.0) * std::log(cfg.q) +
                    0.5 * std::log(dampen),
                phase);
        }
    }
    throw std::logic_error("unreachable functional variant");
}

LogComplex z_product_direct(const ZSpec& zs, const FamilyConfig& cfg, long n) {
    if (n < 0) throw std::invalid_argument("product length must be >= 0");
    LogComplex acc = LogComplex::from_polar(0.0, 0.0);
    for (long j = 1; j <= n; ++j) acc = acc * eval_z(zs, cfg, j);
    return acc;
}

LogComplex z_product_closed(const ZSpec& zs, const FamilyConfig& cfg, long n) {
    if (n < 0) throw std::invalid_argument("product length must be >= 0");
    const double phase = -zs.alpha * energy_level(cfg, n);
    if (n == 0) return LogComplex::from_polar(0.0, 0.0);

    auto lg = [](double x) { return specfun::ln_gamma(x).log_abs; };

    switch (zs.variant) {
        case ZVariant::Const:
            return LogComplex::from_polar(n * std::log(zs.c), phase);
        case ZVariant::TypeC_G: {
            const double rho_c = rho_c_of(cfg);
            const double ln_mod =
                0.5 * (n * std::log(gamma_const(cfg)) + lg(n - rho_c) -
                       lg(-rho_c));
            return LogComplex::from_polar(ln_mod, phase);
        }
        case ZVariant::TypeA_PT1: {
            const double nu = nu_of(cfg);
            const double ln_mod = n * std::log(kappa_of(cfg)) +
                                  0.5 * (lg(nu + 2.0 * n + 1.0) - lg(nu + 1.0));
            return LogComplex::from_polar(ln_mod, phase);
        }
        case ZVariant::TypeA_BG: {
            const double nu = nu_of(cfg);
            const double ln_mod =
                n * std::log(kappa_of(cfg)) +
                0.5 * (lg(nu + 2.0 * n + 1.0) + lg(nu + 1.0)) -
                lg(nu + n + 1.0);
            return LogComplex::from_polar(ln_mod, phase);
        }
        case ZVariant::TypeA_Whittaker: {
            const double rho = rho_translation(cfg);
            const double s = zs.sigma;
            if (2.0 - s + n <= 0.0 || 2.0 - s <= 0.0)
                throw std::domain_error(
                    "z_product_closed: Gamma pole in the Whittaker ratio");
            const double ln_mod =
                n * std::log(kappa_of(cfg)) +
                0.5 * (lg(2.0 * rho + 2.0 * n) + lg(n + 2.0 - s) -
                       lg(2.0 - s) - lg(2.0 * rho + n) - lg(n + 2.0));
            return LogComplex::from_polar(ln_mod, phase);
        }
        case ZVariant::SS_R: {
            const double ln_mod = n * std::log(r1_of(cfg)) +
                                  0.5 * n * (n - 1.0) * std::log(cfg.q);
            return LogComplex::from_polar(ln_mod, phase);
        }
        case ZVariant::SS_Ramanujan: {
            double extra = 0.0;
            for (long i = 1; i <= n; ++i) {
                const double factor =
                    1.0 - zs.c * std::pow(cfg.q, -static_cast<double>(i));
                if (factor < 0.0)
                    throw std::domain_error(
                        "z_product_closed: SS_Ramanujan closed form requires "
                        "c < q^n; violated at factor index " +
                        std::to_string(i));
                extra += std::log(factor);
            }
            const double ln_mod = n * std::log(r1_of(cfg)) +
                                  0.5 * n * (n - 1.0) * std::log(cfg.q) +
                                  0.5 * extra;
            return LogComplex::from_polar(ln_mod, phase);
        }
    }
    throw std::logic_error("unreachable functional variant");
}

}  // namespace sis
