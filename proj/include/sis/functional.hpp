#pragma once

#include <string>

#include <sis/family.hpp>
#include <sis/log.hpp>

namespace sis {

// Orbit functionals Z_j whose running products divide the nested-product
// square roots in the expansion coefficients.  Each variant belongs to one
// family (Const works with any) and carries the phase constant alpha used
// for temporal stability: Z_j picks up e^{-i alpha R(a_j)}.
enum class ZVariant {
    Const,            // Z_j = c (c > 0)
    TypeC_G,          // |Z_j|^2 = -gamma_const * a_j / eta  (needs a1 < 0)
    TypeA_PT1,        // |Z_j| = kappa sqrt((nu_j+1)(nu_j+2)), nu_j = 2 a_j/eta
    TypeA_BG,         // PT1 modulus divided by (nu + j)
    TypeA_Whittaker,  // |Z_j|^2 = kappa^2 2rho_j(2rho_j+1)(j+1-sigma)/((rho+rho_j)(j+1))
    SS_R,             // Z_j = R(a_j) on the scaling orbit
    SS_Ramanujan      // SS_R times sqrt(1 - c q^{-j})
};

std::string z_variant_name(ZVariant v);

struct ZSpec {
    ZVariant variant = ZVariant::Const;
    double alpha = 0.0;
    double c = 0.0;      // Const value, or the SS_Ramanujan deformation in [0,1)
    double sigma = 0.0;  // TypeA_Whittaker index (< 2)
};

ZSpec make_zspec(ZVariant variant, double alpha = 0.0, double c = 0.0,
                 double sigma = 0.0);

// Full compatibility check of a functional against a family config; throws
// std::invalid_argument with a diagnostic on mismatch.
void validate_pairing(const ZSpec& zs, const FamilyConfig& cfg);

bool operator==(const ZSpec& a, const ZSpec& b);

// Affine auxiliary map g(a; c, d) = c*a + d used by the functional catalog.
struct GFunction {
    double c = 0.0;
    double d = 0.0;
};

double g_aux(double a, const GFunction& g);

// Z_j at orbit index j >= 0 (j = 0 is the backward orbit step a_0).
// Throws std::domain_error naming the orbit index when a variant's modulus
// argument goes negative there.
LogComplex eval_z(const ZSpec& zs, const FamilyConfig& cfg, long j);

// prod_{j=1}^{n} Z_j, multiplied out term by term in log-polar form.
LogComplex z_product_direct(const ZSpec& zs, const FamilyConfig& cfg, long n);

// Same product through the variant's closed form (Gamma and q-Pochhammer
// ratios), phase -alpha * e_n.
LogComplex z_product_closed(const ZSpec& zs, const FamilyConfig& cfg, long n);

}  // namespace sis
