#include <sis/position.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sis {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

double trapezoid_norm_sq(const GridFn& f) {
    const long n = f.grid.npoints;
    const double dx = f.grid.dx();
    double acc = 0.5 * (std::norm(f.values[0]) + std::norm(f.values[n - 1]));
    for (long i = 1; i + 1 < n; ++i) acc += std::norm(f.values[i]);
    return acc * dx;
}

void renormalize(GridFn& f) {
    const double nrm = std::sqrt(trapezoid_norm_sq(f));
    if (!(nrm > 0.0) || !std::isfinite(nrm))
        throw std::domain_error("position: cannot normalize a vanishing or "
                                "non-finite grid sample");
    f.values /= nrm;
}

// Position-convention superpotential: the trigonometric family flips sign so
// exp(-sqrt(2) int W~) is the branch vanishing at both walls.
double w_sign(const FamilyConfig& cfg) {
    return cfg.kind == FamilyKind::TypeA ? -1.0 : 1.0;
}

double w_tilde(const FamilyConfig& cfg, double x) {
    return w_sign(cfg) * superpotential(cfg, x, cfg.a1);
}

// ln of the unnormalized ground profile exp(-sqrt(2) int W~ dx).
double ln_ground_profile(const FamilyConfig& cfg, double x) {
    const double s2 = std::numbers::sqrt2;
    switch (cfg.kind) {
        case FamilyKind::TypeD:
            return -s2 * (0.5 * cfg.beta * x * x + cfg.delta * x);
        case FamilyKind::TypeC:
            return -s2 * ((cfg.a1 + cfg.delta) * std::log(x) +
                          0.25 * cfg.beta * x * x);
        case FamilyKind::TypeA: {
            const double u = cfg.beta * (x + cfg.lambda);
            double acc = (cfg.a1 + cfg.gamma) * std::log(std::sin(u));
            if (cfg.delta != 0.0)
                acc += (cfg.delta / cfg.beta) * std::log(std::tan(0.5 * u));
            return s2 * acc;
        }
        default:
            throw std::invalid_argument(
                "position: " + family_kind_name(cfg.kind) +
                " has no closed superpotential to integrate");
    }
}

// Five-point first derivative; one-sided five-point stencils at the edges
// keep fourth order there too (hard-wall profiles like x^rho need it).
Eigen::VectorXcd deriv5(const Eigen::VectorXcd& f, double dx) {
    const long n = f.size();
    Eigen::VectorXcd d(n);
    d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] -
            3.0 * f[4]) /
           (12.0 * dx);
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) /
           (12.0 * dx);
    for (long i = 2; i + 2 < n; ++i)
        d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) /
               (12.0 * dx);
    d[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] +
                6.0 * f[n - 4] - f[n - 5]) /
               (12.0 * dx);
    d[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] -
                16.0 * f[n - 4] + 3.0 * f[n - 5]) /
               (12.0 * dx);
    return d;
}

// Five-point second derivative at an interior index (i >= 2, i <= n-3).
std::complex<double> lap5_at(const Eigen::VectorXcd& f, long i, double dx) {
    return (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] -
            f[i + 2]) /
           (12.0 * dx * dx);
}

void check_same_grid(const Grid& a, const Grid& b, const char* who) {
    if (a.xmin != b.xmin || a.xmax != b.xmax || a.npoints != b.npoints)
        throw std::invalid_argument(std::string(who) +
                                    ": grid mismatch between operands");
}

FamilyConfig shifted_config(const FamilyConfig& cfg, long k) {
    FamilyConfig out = cfg;
    out.a1 = orbit_point(cfg, k);
    return out;
}

}  // namespace

Grid make_grid(double xmin, double xmax, long npoints) {
    if (!(xmax > xmin) || !std::isfinite(xmin) || !std::isfinite(xmax))
        throw std::invalid_argument("make_grid: need finite xmax > xmin");
    if (npoints < 64)
        throw std::invalid_argument("make_grid: need at least 64 points");
    return Grid{xmin, xmax, npoints};
}

Grid default_grid(const FamilyConfig& cfg) {
    switch (cfg.kind) {
        case FamilyKind::TypeD:
            return Grid{-8.0, 8.0, 1024};
        case FamilyKind::TypeC:
            return Grid{0.01, 8.0, 1024};
        case FamilyKind::TypeA: {
            const double margin = 0.01;
            return Grid{margin / cfg.beta - cfg.lambda,
                        (std::numbers::pi - margin) / cfg.beta - cfg.lambda,
                        1024};
        }
        default:
            throw std::invalid_argument(
                "default_grid: " + family_kind_name(cfg.kind) +
                " has no closed superpotential, hence no position grid");
    }
}

std::complex<double> overlap_grid(const GridFn& a, const GridFn& b) {
    check_same_grid(a.grid, b.grid, "overlap_grid");
    std::complex<double> acc{0.0, 0.0};
    for (long i = 0; i < a.grid.npoints; ++i)
        acc += std::conj(a.values[i]) * b.values[i];
    return acc * a.grid.dx();
}

double v_minus_position(const FamilyConfig& cfg, double x) {
    const double s = w_sign(cfg);
    const double w = superpotential(cfg, x, cfg.a1);
    const double wp = superpotential_derivative(cfg, x, cfg.a1);
    return w * w - eta * s * wp;
}

GridFn ground_state(const FamilyConfig& cfg, const Grid& grid) {
    // Trip the family domain checks before touching the closed profile.
    superpotential(cfg, grid.xmin, cfg.a1);
    superpotential(cfg, grid.xmax, cfg.a1);

    const long n = grid.npoints;
    Eigen::VectorXd lnp(n);
    double peak = -std::numeric_limits<double>::infinity();
    for (long i = 0; i < n; ++i) {
        lnp[i] = ln_ground_profile(cfg, grid.x(i));
        if (std::isnan(lnp[i]))
            throw std::domain_error(
                "ground_state: profile undefined inside the grid");
        peak = std::max(peak, lnp[i]);
    }
    if (!std::isfinite(peak))
        throw std::domain_error("ground_state: profile has no finite peak "
                                "on this grid");

    GridFn f{grid, Eigen::VectorXcd(n)};
    for (long i = 0; i < n; ++i)
        f.values[i] = std::exp(lnp[i] - peak);

    const double edge =
        std::max(std::abs(f.values[0]), std::abs(f.values[n - 1]));
    if (edge > 0.9)
        throw std::domain_error(
            "ground_state: profile does not decay toward the grid boundary; "
            "non-normalizable parameter branch or ill-chosen grid");

    renormalize(f);
    return f;
}

namespace {

// Raising chain without the quality gate; used by both public builders.
GridFn ladder_state(const FamilyConfig& cfg, const Grid& grid, long n) {
    if (n == 0) return ground_state(cfg, grid);

    GridFn f = ground_state(shifted_config(cfg, n + 1), grid);
    const double dx = grid.dx();
    for (long k = n; k >= 1; --k) {
        const FamilyConfig at = shifted_config(cfg, k);
        const long level = n - k + 1;  // level produced at this orbit point
        const double e = energy_level(at, level);
        const Eigen::VectorXcd d = deriv5(f.values, dx);
        const double pref = 1.0 / std::sqrt(e);
        for (long i = 0; i < grid.npoints; ++i)
            f.values[i] =
                pref * (w_tilde(at, grid.x(i)) * f.values[i] - eta * d[i]);
    }
    renormalize(f);
    return f;
}

}  // namespace

GridFn excited_state(const FamilyConfig& cfg, const Grid& grid, long n) {
    if (n < 0) throw std::invalid_argument("excited_state: negative level");
    GridFn f = ladder_state(cfg, grid, n);
    const double resid = hamiltonian_residual(cfg, f, energy_level(cfg, n));
    if (!(resid <= 1e-3))
        throw std::runtime_error(
            "excited_state: ladder residual " + std::to_string(resid) +
            " at level " + std::to_string(n) +
            "; the grid is too coarse for this state");
    return f;
}

double hamiltonian_residual(const FamilyConfig& cfg, const GridFn& f,
                            double energy) {
    const long n = f.grid.npoints;
    if (n < 5)
        throw std::invalid_argument("hamiltonian_residual: grid too small");
    const double dx = f.grid.dx();
    double racc = 0.0;
    for (long i = 2; i + 2 < n; ++i) {
        const double v = v_minus_position(cfg, f.grid.x(i));
        const std::complex<double> r =
            -0.5 * lap5_at(f.values, i, dx) + (v - energy) * f.values[i];
        racc += std::norm(r);
    }
    return std::sqrt(racc * dx / trapezoid_norm_sq(f));
}

double rayleigh_energy(const FamilyConfig& cfg, const GridFn& f) {
    const long n = f.grid.npoints;
    if (n < 5) throw std::invalid_argument("rayleigh_energy: grid too small");
    const double dx = f.grid.dx();
    std::complex<double> acc{0.0, 0.0};
    for (long i = 2; i + 2 < n; ++i) {
        const double v = v_minus_position(cfg, f.grid.x(i));
        acc += std::conj(f.values[i]) *
               (-0.5 * lap5_at(f.values, i, dx) + v * f.values[i]);
    }
    return std::real(acc) * dx / trapezoid_norm_sq(f);
}

Eigen::MatrixXcd gram_matrix(const std::vector<GridFn>& fns) {
    const long m = static_cast<long>(fns.size());
    Eigen::MatrixXcd g(m, m);
    for (long i = 0; i < m; ++i)
        for (long j = 0; j < m; ++j) {
            check_same_grid(fns[i].grid, fns[j].grid, "gram_matrix");
            std::complex<double> acc{0.0, 0.0};
            for (long k = 0; k < fns[i].grid.npoints; ++k)
                acc += std::conj(fns[i].values[k]) * fns[j].values[k];
            g(i, j) = acc * fns[i].grid.dx();
        }
    return g;
}

GridFn wavepacket(const CoherentState& s, const Grid& grid) {
    if (!(s.tail <= 1e-10))
        throw std::invalid_argument(
            "wavepacket: state truncation tail exceeds 1e-10; rebuild with a "
            "larger nmax");
    double cmax = 0.0;
    for (long n = 0; n <= s.nmax; ++n)
        cmax = std::max(cmax, std::abs(s.c[n]));

    // The raising chain degrades with the level; a residual r at level n is a
    // junk amplitude of only r / (e_grid_top - e_n), so levels stay usable
    // well past the strict single-state gate.  Sum while the residual is
    // moderate, stop at the first blow-up, and refuse only when the dropped
    // coefficient mass would actually distort the packet.
    GridFn out{grid, Eigen::VectorXcd::Zero(grid.npoints)};
    long stop = s.nmax + 1;
    for (long n = 0; n <= s.nmax; ++n) {
        if (std::abs(s.c[n]) < 1e-12 * cmax) continue;
        const GridFn psi = ladder_state(s.cfg, grid, n);
        if (hamiltonian_residual(s.cfg, psi, energy_level(s.cfg, n)) > 1.0) {
            stop = n;
            break;
        }
        out.values += s.c[n] * psi.values;
    }
    double dropped = 0.0;
    for (long n = stop; n <= s.nmax; ++n) dropped += std::norm(s.c[n]);
    if (dropped > 1e-4)
        throw std::runtime_error(
            "wavepacket: the grid cannot carry " + std::to_string(dropped) +
            " of coefficient mass above level " + std::to_string(stop) +
            "; refine the grid");
    return out;
}

UncertaintyResult uncertainty(const GridFn& f) {
    const long n = f.grid.npoints;
    const double dx = f.grid.dx();
    const double nsq = trapezoid_norm_sq(f);
    const Eigen::VectorXcd d = deriv5(f.values, dx);

    double ex = 0.0, ex2 = 0.0, ep2 = 0.0;
    std::complex<double> ep{0.0, 0.0};
    for (long i = 0; i < n; ++i) {
        const double x = f.grid.x(i);
        const double w = std::norm(f.values[i]);
        ex += x * w;
        ex2 += x * x * w;
        ep += std::conj(f.values[i]) * (-kI * d[i]);
        ep2 += std::norm(d[i]);
    }
    ex *= dx / nsq;
    ex2 *= dx / nsq;
    const double pmean = std::real(ep) * dx / nsq;
    ep2 *= dx / nsq;

    UncertaintyResult u;
    u.dx = std::sqrt(std::max(0.0, ex2 - ex * ex));
    u.dp = std::sqrt(std::max(0.0, ep2 - pmean * pmean));
    u.product = u.dx * u.dp;
    return u;
}

GridFn evolve_grid(const FamilyConfig& cfg, const GridFn& f, double t,
                   double dt) {
    if (!(dt > 0.0))
        throw std::invalid_argument("evolve_grid: need dt > 0");
    if (t < 0.0)
        throw std::invalid_argument("evolve_grid: negative time");
    const long long nsteps = std::llround(t / dt);
    if (std::abs(static_cast<double>(nsteps) * dt - t) >
        1e-9 * std::max(1.0, std::abs(t)))
        throw std::invalid_argument(
            "evolve_grid: t must be an integer multiple of dt");

    GridFn out = f;
    if (nsteps == 0) return out;

    const long n = f.grid.npoints;
    const double dx = f.grid.dx();
    const std::complex<double> theta = kI * (0.5 * dt);
    const std::complex<double> off_a = -theta * (0.5 / (dx * dx));
    const std::complex<double> off_b = -off_a;

    Eigen::VectorXcd diag_a(n), diag_b(n);
    for (long i = 0; i < n; ++i) {
        const double h = 1.0 / (dx * dx) + v_minus_position(cfg, f.grid.x(i));
        diag_a[i] = 1.0 + theta * h;
        diag_b[i] = 1.0 - theta * h;
    }

    const double norm0 = trapezoid_norm_sq(out);
    Eigen::VectorXcd rhs(n), cp(n), dp(n);
    for (long long step = 0; step < nsteps; ++step) {
        // rhs = B psi with Dirichlet zeros outside the grid
        for (long i = 0; i < n; ++i) {
            std::complex<double> acc = diag_b[i] * out.values[i];
            if (i > 0) acc += off_b * out.values[i - 1];
            if (i + 1 < n) acc += off_b * out.values[i + 1];
            rhs[i] = acc;
        }
        // Thomas solve A psi' = rhs
        cp[0] = off_a / diag_a[0];
        dp[0] = rhs[0] / diag_a[0];
        for (long i = 1; i < n; ++i) {
            const std::complex<double> m = diag_a[i] - off_a * cp[i - 1];
            cp[i] = off_a / m;
            dp[i] = (rhs[i] - off_a * dp[i - 1]) / m;
        }
        out.values[n - 1] = dp[n - 1];
        for (long i = n - 2; i >= 0; --i)
            out.values[i] = dp[i] - cp[i] * out.values[i + 1];

        if (step % 100 == 99 || step + 1 == nsteps) {
            const double nrm = trapezoid_norm_sq(out);
            if (std::abs(nrm - norm0) > 1e-6 * std::max(1.0, norm0))
                throw std::runtime_error(
                    "evolve_grid: norm drift detected; propagation unstable "
                    "on this grid/step combination");
        }
    }
    return out;
}

}  // namespace sis
