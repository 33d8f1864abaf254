#include "sis/algebra.hpp"

#include <cmath>
#include <stdexcept>

#include <sis/specfun.hpp>

namespace sis {

SpectralTable build_spectral_table(const FamilyConfig& cfg, long nmax) {
    if (nmax < 1) throw std::invalid_argument("nmax must be >= 1");
    validate_family(cfg);

    SpectralTable t;
    t.cfg = cfg;
    t.nmax = nmax;
    t.r_seq.resize(nmax);
    t.e.resize(nmax + 1);
    t.lnP.resize(nmax + 1);

    for (long k = 1; k <= nmax; ++k) t.r_seq[k - 1] = remainder_at(cfg, k);

    t.e[0] = 0.0;
    for (long n = 1; n <= nmax; ++n) t.e[n] = t.e[n - 1] + t.r_seq[n - 1];

    // ln P_n = sum_{k=1}^{n} ln S_{k,n} with S_{k,n} = sum_{s=k}^{n} R(a_s),
    // accumulated as a suffix sum so the small gaps of scaling orbits are
    // formed from positive additions, never by cancelling prefix sums.
    t.lnP[0] = 0.0;
    for (long n = 1; n <= nmax; ++n) {
        double suffix = 0.0;
        double acc = 0.0;
        for (long k = n; k >= 1; --k) {
            suffix += t.r_seq[k - 1];
            acc += std::log(suffix);
        }
        t.lnP[n] = acc;
    }
    return t;
}

double ln_nested_product(const SpectralTable& table, long n) {
    if (n < 0 || n > table.nmax)
        throw std::out_of_range("nested product index out of range");
    return table.lnP[n];
}

double nested_product(const SpectralTable& table, long n) {
    return std::exp(ln_nested_product(table, n));
}

double ln_closed_form_nested_product(const FamilyConfig& cfg, long n) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    if (n == 0) return 0.0;
    switch (cfg.kind) {
        case FamilyKind::TypeC:
        case FamilyKind::TypeD: {
            const double g = gamma_const(cfg);
            return n * std::log(g) + std::lgamma(n + 1.0);
        }
        case FamilyKind::TypeA: {
            const double kap = eta * cfg.beta;
            const double rho = rho_translation(cfg);
            return 2.0 * n * std::log(kap) + std::lgamma(n + 1.0) +
                   std::lgamma(2.0 * rho + 2.0 * n) -
                   std::lgamma(2.0 * rho + n);
        }
        case FamilyKind::SelfSimilar: {
            const double r1 = cfg.r_scale * cfg.a1;
            return n * std::log(r1 / (1.0 - cfg.q)) +
                   0.5 * n * (n - 1.0) * std::log(cfg.q) +
                   std::log(specfun::q_poch(cfg.q, cfg.q, static_cast<int>(n)));
        }
        default:
            throw std::invalid_argument("no closed product for " +
                                        family_kind_name(cfg.kind));
    }
}

double closed_form_nested_product(const FamilyConfig& cfg, long n) {
    return std::exp(ln_closed_form_nested_product(cfg, n));
}

double cn_normalizer(const SpectralTable& table, long n) {
    return std::exp(-0.5 * ln_nested_product(table, n));
}

double energy_level(const FamilyConfig& cfg, long n) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    double acc = 0.0;
    for (long k = 1; k <= n; ++k) acc += remainder_at(cfg, k);
    return acc;
}

}  // namespace sis
