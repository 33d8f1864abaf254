#pragma once

#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace sis {

// Natural units hbar = m = Omega = 1 throughout; eta = sqrt(hbar/(2 m Omega)).
inline constexpr double eta = 1.0 / std::numbers::sqrt2;

enum class FamilyKind { TypeA, TypeB, TypeC, TypeD, TypeE, TypeF, SelfSimilar };

std::string family_kind_name(FamilyKind kind);

// A shape-invariant potential family: the initial parameter a1, the family
// constants, and (for the scaling family) the orbit ratio q and the remainder
// coefficient r_scale with R(a1) = r_scale * a1.
struct FamilyConfig {
    FamilyKind kind = FamilyKind::TypeD;
    double a1 = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
    double lambda = 0.0;
    double q = 0.0;
    double r_scale = 0.0;
};

// Validated constructor; throws std::invalid_argument with a diagnostic for
// out-of-catalog kinds (B, E, F) and for constants violating the family
// invariants.
FamilyConfig make_family(FamilyKind kind, double a1, double beta,
                         double gamma = 0.0, double delta = 0.0,
                         double lambda = 0.0, double q = 0.0,
                         double r_scale = 0.0);

void validate_family(const FamilyConfig& cfg);  // same checks, in-place form

bool operator==(const FamilyConfig& a, const FamilyConfig& b);

// Constant remainder gamma_const = sqrt(2) beta shared by the constant-gap
// families (C and D).
double gamma_const(const FamilyConfig& cfg);

// rho = (a1 + gamma)/eta for the trigonometric family (positive by invariant).
double rho_translation(const FamilyConfig& cfg);

// k-th orbit point, 1-based (a_1 = cfg.a1); k = 0 is the single backward
// step (a1 -+ eta, or a1/q) needed by the eigenvalue and action identities.
double orbit_point(const FamilyConfig& cfg, long k);

// a_1 ... a_count.
std::vector<double> parameter_orbit(const FamilyConfig& cfg, long count);

// R(a_k); k = 0 addresses the backward orbit step.
double remainder_at(const FamilyConfig& cfg, long k);

// W(x, a) for the translation families (the scaling family has no closed W).
double superpotential(const FamilyConfig& cfg, double x, double a);

// Analytic dW/dx.
double superpotential_derivative(const FamilyConfig& cfg, double x, double a);

// (V-, V+) = W^2 -+ eta dW/dx.
std::pair<double, double> partner_potentials(const FamilyConfig& cfg, double x,
                                             double a);

}  // namespace sis
