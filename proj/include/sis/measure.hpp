#pragma once

#include <vector>

#include <sis/coherent.hpp>
#include <sis/family.hpp>
#include <sis/functional.hpp>

namespace sis {

// Closed-form solutions W(rho) of the moment problem
// integral rho^n W(rho) drho = |h_n|^2 over the support.
enum class MeasureKind {
    HOFlat,             // e^{-c^2 rho/gamma} on [0, inf)
    DiskTypeC,          // -(rho_c+1)(1-rho)^{-rho_c-2} on [0, 1)
    SechTypeA,          // e^{-sqrt rho}/(2 sqrt rho)
    BesselBG,           // 2 rho^{nu/2} K_nu(2 sqrt rho)
    WhittakerPT,        // Gamma(2-sigma) e^{-rho/2} W_{sigma,1/2}(rho)
    RamanujanQ,         // [R1(1-q)/(q ln(1/q))] / (-s/q; q)_inf, s = rho R1(1-q)
    RamanujanGeneralQ,  // the same times (1-c)(-c s; q)_inf
};

const char* measure_kind_name(MeasureKind k);

struct MeasureCase {
    MeasureKind kind = MeasureKind::HOFlat;
    double gamma_c = 0.0;  // HOFlat gap
    double c = 0.0;        // HOFlat ladder constant; RamanujanGeneralQ deformation
    double rho_c = 0.0;    // DiskTypeC exponent (< -1 for finite moments)
    double nu = 0.0;       // BesselBG order (> -1)
    double sigma = 0.0;    // WhittakerPT parameter (< 2, non-integer)
    double r1 = 0.0;       // first gap, Ramanujan entries
    double q = 0.0;        // scaling ratio, Ramanujan entries
};

bool operator==(const MeasureCase& a, const MeasureCase& b);

// Catalog entry matching a (family, functional) pairing.  Throws
// std::invalid_argument when no entry exists for the pairing or an entry's
// parameter restrictions are violated.
MeasureCase make_measure_case(const FamilyConfig& cfg, const ZSpec& zs);

// Upper end of the support: 1 for the disk entry, +infinity otherwise.
double domain_sup(const MeasureCase& mc);

// W(rho), and its log for wide-dynamic-range integrands (rho interior).
double distribution_W(const MeasureCase& mc, double rho);
double ln_distribution_W(const MeasureCase& mc, double rho);

// w = W/(pi N^2) with the squared normalization supplied by the caller.
double weight_w(const MeasureCase& mc, double rho, double n_sq);

// Fourier-route inversion for the flat-gap entry: the residue at the
// geometric-series pole gives back e^{-c^2 rho/gamma}.
double ho_phi_reconstruct(double gamma_c, double c, double rho);

struct MomentRow {
    long n = 0;
    double moment = 0.0;
    double target = 0.0;
    double rel_err = 0.0;
    bool pass = false;
};

struct MomentReport {
    MeasureCase mc;
    std::vector<MomentRow> rows;
    bool pass = false;
};

// Quadrature check of integral rho^n W = |h_n|^2 (times Gamma(nu+1) for the
// Bessel entry) for n = 0..n_max.  A row fails, without aborting the report,
// when quadrature does not converge or when a deformed q-row sits at or
// beyond its c < q^n existence boundary (where the integral diverges).
MomentReport verify_moments(const MeasureCase& mc, const FamilyConfig& cfg,
                            const ZSpec& zs, long n_max, double tol);

}  // namespace sis
