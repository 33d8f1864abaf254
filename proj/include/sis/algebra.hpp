#pragma once

#include <Eigen/Dense>

#include <sis/family.hpp>

namespace sis {

// Spectral data of the ladder: remainder sequence, energy levels (prefix
// sums), and the nested products P_n = prod_{k=1}^{n} sum_{s=k}^{n} R(a_s)
// kept in log space (P_n grows like gamma^n n!).
struct SpectralTable {
    FamilyConfig cfg;
    long nmax = 0;
    Eigen::ArrayXd r_seq;  // R(a_1) ... R(a_nmax)
    Eigen::ArrayXd e;      // e_0 = 0, e_1 ... e_nmax
    Eigen::ArrayXd lnP;    // ln P_0 = 0 ... ln P_nmax
};

SpectralTable build_spectral_table(const FamilyConfig& cfg, long nmax);

// P_n; the inner sums telescope to e_n - e_k, so this equals
// prod_{k=0}^{n-1} (e_n - e_k).
double nested_product(const SpectralTable& table, long n);
double ln_nested_product(const SpectralTable& table, long n);

// Family closed forms: gamma^n n! (constant gap), kappa^{2n} n!
// Gamma(2 rho + 2n)/Gamma(2 rho + n) (trigonometric), and
// [R1/(1-q)]^n q^{n(n-1)/2} (q;q)_n (scaling).
double closed_form_nested_product(const FamilyConfig& cfg, long n);
double ln_closed_form_nested_product(const FamilyConfig& cfg, long n);

// Ladder normalizer C_n = P_n^{-1/2}.
double cn_normalizer(const SpectralTable& table, long n);

// e_n = sum_{k=1}^{n} R(a_k) without building a table.
double energy_level(const FamilyConfig& cfg, long n);

}  // namespace sis
