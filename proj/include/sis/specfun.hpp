#pragma once

#include <sis/log.hpp>

namespace sis::specfun {

// log|Gamma(x)| with sign; throws std::domain_error at the poles
// (non-positive integers).
SignedLog ln_gamma(double x);

// 1/Gamma(x) as a signed-log; exactly zero at the poles instead of throwing.
SignedLog rgamma_signed(double x);

// psi(x) for any non-pole real x (reflection used for x < 0).
double digamma(double x);

// Confluent hypergeometric 1F1(a; b; x) by direct series.  b must not be a
// non-positive integer.  Stops once three consecutive terms drop below
// 1e-16 * |partial sum|.
double confluent_1f1(double a, double b, double x);

// Modified Bessel I_nu(x) by ascending power series, x >= 0
// (x > 0 required when nu < 0 and non-integer).
double bessel_i(double nu, double x);

// Modified Bessel K_nu(x), x > 0.  Orders within 1e-6 of an integer are
// rejected (the reflection route is singular there).  Reflection formula
// for x <= 10, large-argument asymptotic series beyond.
double bessel_k(double nu, double x);

// ln K_nu(x); usable far into the exponential tail where K underflows.
double bessel_k_ln(double nu, double x);

// Whittaker W_{sigma,mu}(x), x > 0.  Three evaluation routes:
// large-argument asymptotic for x >= 18; a two-term Kummer combination for
// non-integer 2*mu; a logarithmic series for 2*mu in {0, 1} (where the
// Kummer combination degenerates).  For the logarithmic route,
// a = 1/2 + mu - sigma must not be a non-positive integer.
double whittaker_w(double sigma, double mu, double x);

// ln W_{sigma,mu}(x); requires W > 0 at the evaluation point.
double whittaker_w_ln(double sigma, double mu, double x);

// Finite q-Pochhammer (a; q)_n = prod_{j=0}^{n-1} (1 - a q^j).  Any real q.
double q_poch(double a, double q, int n);

// (a; q)_inf for |q| < 1; factors beyond |a q^j| < 1e-17 are dropped.
double q_poch_inf(double a, double q);

// ln (a; q)_inf for a <= 0, 0 < q < 1 (all factors positive); stable for
// |a| up to ~1e300.
double q_poch_inf_ln(double a, double q);

// q-exponential E_q^{(mu)}(x) = sum_{n>=0} q^{mu n^2} x^n / (q;q)_n by
// direct series; mu > 0 converges for all x, mu <= 0 only inside a finite
// radius (divergence raises std::domain_error).
double q_exp(double mu, double q, double x);

// Symmetric case mu = 1/2, computed via its product representation
// (-sqrt(q) x; q)_inf.  Requires 0 < q < 1.
double q_exp_half(double q, double x);
double q_exp_half_ln(double q, double x);

}  // namespace sis::specfun
