#include <sis/specfun.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace sis::specfun {

namespace {

constexpr double kEps = 1e-17;

bool near_integer(double x, double tol = 1e-9) {
    return std::abs(x - std::round(x)) <= tol;
}

bool is_nonpositive_integer(double x, double tol = 1e-12) {
    return x <= 0.5 && std::abs(x - std::round(x)) <= tol;
}

// Sign of Gamma on the negative axis: alternates between consecutive poles.
int gamma_sign(double x) {
    if (x > 0.0) return 1;
    return (static_cast<long long>(std::floor(-x)) % 2 == 0) ? -1 : 1;
}

}  // namespace

SignedLog ln_gamma(double x) {
    if (is_nonpositive_integer(x))
        throw std::domain_error("ln_gamma: pole at x = " + std::to_string(x));
    return {std::lgamma(x), gamma_sign(x)};
}

SignedLog rgamma_signed(double x) {
    if (is_nonpositive_integer(x)) return {};  // 1/Gamma = 0 at the poles
    return {-std::lgamma(x), gamma_sign(x)};
}

double digamma(double x) {
    if (is_nonpositive_integer(x))
        throw std::domain_error("digamma: pole at x = " + std::to_string(x));
    if (x < 0.0) {
        // psi(x) = psi(1-x) - pi * cot(pi x)
        return digamma(1.0 - x) - std::numbers::pi / std::tan(std::numbers::pi * x);
    }
    double s = 0.0;
    while (x < 10.0) {
        s -= 1.0 / x;
        x += 1.0;
    }
    double inv = 1.0 / x, inv2 = inv * inv;
    // asymptotic tail: ln x - 1/(2x) - sum B_{2n}/(2n x^{2n})
    double tail = -inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 -
                  inv2 * (1.0 / 240 - inv2 * (1.0 / 132 - inv2 * 691.0 / 32760)))));
    return s + std::log(x) - 0.5 * inv + tail;
}

double confluent_1f1(double a, double b, double x) {
    if (is_nonpositive_integer(b))
        throw std::domain_error("confluent_1f1: b is a non-positive integer");
    double sum = 1.0, term = 1.0;
    int small_streak = 0;
    for (int n = 0; n < 1000000; ++n) {
        term *= (a + n) / (b + n) * x / (n + 1);
        sum += term;
        if (std::abs(term) < 1e-16 * std::abs(sum)) {
            if (++small_streak >= 3) return sum;
        } else {
            small_streak = 0;
        }
    }
    throw std::runtime_error("confluent_1f1: series did not converge");
}

double bessel_i(double nu, double x) {
    if (x < 0.0) throw std::domain_error("bessel_i: x must be >= 0");
    if (nu < 0.0 && near_integer(nu)) nu = -nu;  // I_{-n} = I_n
    if (x == 0.0) {
        if (nu == 0.0) return 1.0;
        if (nu > 0.0) return 0.0;
        throw std::domain_error("bessel_i: x = 0 with negative non-integer order");
    }
    double half = 0.5 * x;
    double t = std::pow(half, nu) / std::tgamma(nu + 1.0);
    double q = half * half;
    double sum = t;
    int small_streak = 0;
    for (int k = 0; k < 600; ++k) {
        t *= q / ((k + 1) * (nu + k + 1));
        sum += t;
        if (std::abs(t) < kEps * std::abs(sum)) {
            if (++small_streak >= 2) return sum;
        } else {
            small_streak = 0;
        }
    }
    throw std::runtime_error("bessel_i: series did not converge");
}

namespace {

// Asymptotic series sum for K: S = sum_k t_k, t_k = t_{k-1}(4nu^2-(2k-1)^2)/(8kx).
double bessel_k_asym_sum(double nu, double x) {
    double four_nu2 = 4.0 * nu * nu;
    double t = 1.0, sum = 1.0;
    for (int k = 1; k <= 60; ++k) {
        double odd = 2.0 * k - 1.0;
        double next = t * (four_nu2 - odd * odd) / (8.0 * k * x);
        if (std::abs(next) >= std::abs(t)) break;  // optimal truncation
        t = next;
        sum += t;
        if (std::abs(t) < kEps * std::abs(sum)) break;
    }
    return sum;
}

}  // namespace

double bessel_k(double nu, double x) {
    if (x <= 0.0) throw std::domain_error("bessel_k: x must be > 0");
    nu = std::abs(nu);
    if (std::abs(nu - std::round(nu)) <= 1e-6)
        throw std::domain_error("bessel_k: order too close to an integer");
    if (x <= 10.0) {
        double s = std::sin(std::numbers::pi * nu);
        return std::numbers::pi * (bessel_i(-nu, x) - bessel_i(nu, x)) / (2.0 * s);
    }
    return std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) *
           bessel_k_asym_sum(nu, x);
}

double bessel_k_ln(double nu, double x) {
    if (x <= 0.0) throw std::domain_error("bessel_k_ln: x must be > 0");
    nu = std::abs(nu);
    if (std::abs(nu - std::round(nu)) <= 1e-6)
        throw std::domain_error("bessel_k_ln: order too close to an integer");
    if (x <= 10.0) return std::log(bessel_k(nu, x));
    double s = bessel_k_asym_sum(nu, x);
    return 0.5 * std::log(std::numbers::pi / (2.0 * x)) - x + std::log(s);
}

namespace {

// Large-argument series for W: S = sum_s t_s,
// t_s = t_{s-1} (s-1/2+mu-sigma)(s-1/2-mu-sigma)/(-s x).
double whittaker_asym_sum(double sigma, double mu, double x) {
    double t = 1.0, sum = 1.0;
    for (int s = 1; s <= 80; ++s) {
        double next = t * (s - 0.5 + mu - sigma) * (s - 0.5 - mu - sigma) /
                      (-static_cast<double>(s) * x);
        if (std::abs(next) >= std::abs(t)) break;
        t = next;
        sum += t;
        if (std::abs(t) < kEps * std::abs(sum)) break;
    }
    return sum;
}

// M_{sigma,mu}(x) = e^{-x/2} x^{1/2+mu} 1F1(1/2+mu-sigma; 1+2mu; x).
double whittaker_m(double sigma, double mu, double x) {
    return std::exp(-0.5 * x + (0.5 + mu) * std::log(x)) *
           confluent_1f1(0.5 + mu - sigma, 1.0 + 2.0 * mu, x);
}

// Kummer U(a, n+1, z) for n in {0, 1} via the logarithmic series.
double kummer_u_log_series(double a, int n, double z) {
    if (is_nonpositive_integer(a))
        throw std::domain_error("whittaker_w: logarithmic route needs "
                                "1/2 + mu - sigma away from non-positive integers");
    double lnz = std::log(z);
    SignedLog lead = rgamma_signed(a - n);
    double first = 0.0;
    if (lead.sign != 0) {
        // (-1)^{n+1} / (n! Gamma(a-n)); n! = 1 for n in {0, 1}
        double coef = ((n % 2 == 0) ? -1.0 : 1.0) * lead.sign *
                      std::exp(lead.log_abs);
        // sum_k (a)_k z^k / ((n+1)_k k!) * [ln z + psi(a+k) - psi(1+k) - psi(n+1+k)]
        double term = 1.0;  // (a)_k z^k / ((n+1)_k k!) at k = 0
        double sum = 0.0;
        int small_streak = 0;
        for (int k = 0; k < 5000; ++k) {
            double bracket = lnz + digamma(a + k) - digamma(1.0 + k) -
                             digamma(n + 1.0 + k);
            double contrib = term * bracket;
            sum += contrib;
            if (std::abs(contrib) < kEps * (std::abs(sum) + 1e-300)) {
                if (++small_streak >= 3) break;
            } else {
                small_streak = 0;
            }
            term *= (a + k) * z / ((n + 1.0 + k) * (k + 1.0));
        }
        first = coef * sum;
    }
    double second = 0.0;
    if (n == 1) {
        SignedLog ra = rgamma_signed(a);
        if (ra.sign != 0) second = ra.sign * std::exp(ra.log_abs) / z;
    }
    return first + second;
}

}  // namespace

double whittaker_w(double sigma, double mu, double x) {
    if (x <= 0.0) throw std::domain_error("whittaker_w: x must be > 0");
    mu = std::abs(mu);
    if (x >= 18.0) {
        return std::exp(-0.5 * x + sigma * std::log(x)) *
               whittaker_asym_sum(sigma, mu, x);
    }
    double two_mu = 2.0 * mu;
    if (near_integer(two_mu)) {
        int n = static_cast<int>(std::round(two_mu));
        if (n > 1)
            throw std::domain_error(
                "whittaker_w: logarithmic route implemented for 2*mu in {0, 1}");
        double a = 0.5 + mu - sigma;
        return std::exp(-0.5 * x + (0.5 + mu) * std::log(x)) *
               kummer_u_log_series(a, n, x);
    }
    // W = G(-2mu)/G(1/2-mu-k) M_{k,mu} + G(2mu)/G(1/2+mu-k) M_{k,-mu}
    double result = 0.0;
    {
        SignedLog num = ln_gamma(-two_mu);
        SignedLog den = rgamma_signed(0.5 - mu - sigma);
        SignedLog c = num * den;
        if (c.sign != 0)
            result += c.sign * std::exp(c.log_abs) * whittaker_m(sigma, mu, x);
    }
    {
        SignedLog num = ln_gamma(two_mu);
        SignedLog den = rgamma_signed(0.5 + mu - sigma);
        SignedLog c = num * den;
        if (c.sign != 0)
            result += c.sign * std::exp(c.log_abs) * whittaker_m(sigma, -mu, x);
    }
    return result;
}

double whittaker_w_ln(double sigma, double mu, double x) {
    if (x >= 18.0) {
        double s = whittaker_asym_sum(sigma, std::abs(mu), x);
        if (s <= 0.0)
            throw std::domain_error("whittaker_w_ln: W is not positive here");
        return -0.5 * x + sigma * std::log(x) + std::log(s);
    }
    double w = whittaker_w(sigma, mu, x);
    if (w <= 0.0)
        throw std::domain_error("whittaker_w_ln: W is not positive here");
    return std::log(w);
}

double q_poch(double a, double q, int n) {
    if (n < 0) throw std::domain_error("q_poch: n must be >= 0");
    double prod = 1.0, p = 1.0;
    for (int j = 0; j < n; ++j) {
        prod *= 1.0 - a * p;
        p *= q;
    }
    return prod;
}

double q_poch_inf(double a, double q) {
    if (std::abs(q) >= 1.0)
        throw std::domain_error("q_poch_inf: requires |q| < 1");
    double prod = 1.0, p = 1.0;
    for (int j = 0; j < 100000; ++j) {
        if (std::abs(a) * std::abs(p) < kEps) return prod;
        prod *= 1.0 - a * p;
        p *= q;
    }
    return prod;
}

double q_poch_inf_ln(double a, double q) {
    if (a > 0.0)
        throw std::domain_error("q_poch_inf_ln: requires a <= 0");
    if (q <= 0.0 || q >= 1.0)
        throw std::domain_error("q_poch_inf_ln: requires 0 < q < 1");
    double s = 0.0, p = 1.0;
    for (int j = 0; j < 100000; ++j) {
        double term = -a * p;
        if (term < kEps) return s;
        s += std::log1p(term);
        p *= q;
    }
    return s;
}

double q_exp(double mu, double q, double x) {
    if (q <= 0.0 || q >= 1.0)
        throw std::domain_error("q_exp: requires 0 < q < 1");
    // term ratio: t_{n+1}/t_n = q^{mu(2n+1)} x / (1 - q^{n+1})
    double sum = 1.0, term = 1.0;
    int small_streak = 0;
    for (int n = 0; n < 100000; ++n) {
        term *= std::pow(q, mu * (2.0 * n + 1.0)) * x /
                (1.0 - std::pow(q, n + 1.0));
        sum += term;
        if (!std::isfinite(term) || std::abs(term) > 1e80)
            throw std::domain_error(
                "q_exp: series diverges (mu <= 0 outside its radius)");
        if (std::abs(term) < 1e-16 * std::abs(sum)) {
            if (++small_streak >= 3) return sum;
        } else {
            small_streak = 0;
        }
    }
    throw std::domain_error("q_exp: series did not converge");
}

double q_exp_half(double q, double x) {
    if (q <= 0.0 || q >= 1.0)
        throw std::domain_error("q_exp_half: requires 0 < q < 1");
    return q_poch_inf(-std::sqrt(q) * x, q);
}

double q_exp_half_ln(double q, double x) {
    if (q <= 0.0 || q >= 1.0)
        throw std::domain_error("q_exp_half_ln: requires 0 < q < 1");
    if (x < 0.0) throw std::domain_error("q_exp_half_ln: requires x >= 0");
    return q_poch_inf_ln(-std::sqrt(q) * x, q);
}

}  // namespace sis::specfun
