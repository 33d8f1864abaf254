#pragma once

#include <complex>
#include <optional>

#include <Eigen/Dense>

#include <sis/algebra.hpp>
#include <sis/family.hpp>
#include <sis/functional.hpp>
#include <sis/log.hpp>

namespace sis {

// Coherent state in the energy eigenbasis: |z> = N sum_n z^n e^{-i alpha e_n}
// / |h_n| |n>, with h_n = sqrt(P_n)/prod Z.
struct CoherentState {
    FamilyConfig cfg;
    ZSpec zs;
    std::complex<double> z{0.0, 0.0};
    long nmax = 0;
    Eigen::VectorXcd c;         // coefficients, n = 0..nmax
    double norm_factor = 1.0;   // N
    double tail = 0.0;          // estimated probability mass beyond nmax
};

// h_n = sqrt(nested product) / (running functional product); h_0 = 1.
// Carries phase +alpha*e_n (the inverse of the product's phase).
LogComplex hn_log(const FamilyConfig& cfg, const ZSpec& zs, long n);
std::complex<double> hn(const FamilyConfig& cfg, const ZSpec& zs, long n);

// N(x) = [sum_n x^n / |h_n|^2]^{-1/2}; adaptive term count.  Throws
// std::domain_error when x sits at or beyond the squared convergence radius.
double normalization(const FamilyConfig& cfg, const ZSpec& zs, double x);

// Finite-probe estimate of lim (|h_n|^2)^{1/n}: the supremum over a trailing
// window, promoted to +infinity when the probe sequence is still climbing
// (positive log-log slope) or exceeds 1e6.
double radius_of_convergence(const FamilyConfig& cfg, const ZSpec& zs,
                             long nprobe);

// Assemble the state; nmax auto-extends (doubling, capped at 4096) until the
// truncated mass is <= 1e-12, else throws instead of truncating silently.
CoherentState build_state(const FamilyConfig& cfg, const ZSpec& zs,
                          std::complex<double> z, long nmax = 64);

// <s1|s2> = sum conj(c1_n) c2_n; requires identical cfg and zs labels.
std::complex<double> overlap(const CoherentState& s1, const CoherentState& s2);

// Time evolution is the label shift alpha -> alpha + Omega*t.
CoherentState evolve(const CoherentState& s, double t, double Omega = 1.0);

struct EnergyExpectation {
    double series = 0.0;             // sum |c_n|^2 e_n
    std::optional<double> closed;    // |z Z_0|^2 (N ratio), scalar-exact only
    double shifted_diagnostic = 0.0; // the same expression evaluated anyway
};

EnergyExpectation energy_expectation(const CoherentState& s);

// J = <H>/Omega; only defined where the scalar eigenvalue relation is exact
// (constant remainder and constant functional), else throws.
double action_variable(const CoherentState& s, double Omega = 1.0);

// max_n |sqrt(e_{n+1}) c_{n+1} - lambda c_n| with lambda = z * Z(a_0);
// same domain restriction as action_variable.
double annihilation_check(const CoherentState& s);

// True for configurations where the lowering eigenvalue is a scalar:
// constant-gap families paired with the constant functional.
bool scalar_exact(const FamilyConfig& cfg, const ZSpec& zs);

}  // namespace sis
