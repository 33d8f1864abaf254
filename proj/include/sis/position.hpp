#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include <sis/coherent.hpp>
#include <sis/family.hpp>

namespace sis {

// Uniform spatial grid; values live on the npoints nodes including both ends.
struct Grid {
    double xmin = -8.0;
    double xmax = 8.0;
    long npoints = 1024;

    double dx() const { return (xmax - xmin) / static_cast<double>(npoints - 1); }
    double x(long i) const { return xmin + dx() * static_cast<double>(i); }
};

// Throws std::invalid_argument for npoints < 64 or a degenerate interval.
Grid make_grid(double xmin, double xmax, long npoints);

// Family-appropriate window: the full line for the linear family, the open
// box (0, pi/beta) - lambda with a small margin for the trigonometric one,
// the positive half line for the radial one.  The scaling family has no
// closed superpotential, so no grid either (throws).
Grid default_grid(const FamilyConfig& cfg);

// A complex-valued function sampled on a grid.
struct GridFn {
    Grid grid;
    Eigen::VectorXcd values;
};

// sum conj(a) b dx; grids must match.
std::complex<double> overlap_grid(const GridFn& a, const GridFn& b);

// The potential the sampled eigenstates solve: W~^2 - eta dW~/dx with the
// position-convention superpotential W~ (sign-flipped for the trigonometric
// family so that the node-free ground state is the normalizable branch).
double v_minus_position(const FamilyConfig& cfg, double x);

// Ground state from the closed antiderivative of W~, trapezoid-normalized.
// Throws std::domain_error when the profile does not decay toward the grid
// boundary (non-normalizable parameter branch, or a grid that misses the
// support).
GridFn ground_state(const FamilyConfig& cfg, const Grid& grid);

// n-th bound state via the raising ladder: start from the ground state of
// the n-step shifted orbit and apply [W~(x, a_k) - eta d/dx] / sqrt(e_m)
// walking back to a_1; five-point derivative, renormalized on the grid.
// Throws std::runtime_error when the ladder residual signals a grid too
// coarse for the requested level.
GridFn excited_state(const FamilyConfig& cfg, const Grid& grid, long n);

// || (-1/2 d^2/dx^2 + V- - energy) f || / || f ||, five-point interior
// Laplacian; boundary rows are excluded.
double hamiltonian_residual(const FamilyConfig& cfg, const GridFn& f,
                            double energy);

// <f| -1/2 d^2/dx^2 + V- |f> for a normalized sample.
double rayleigh_energy(const FamilyConfig& cfg, const GridFn& f);

// G_ij = sum conj(f_i) f_j dx; all functions must share one grid.
Eigen::MatrixXcd gram_matrix(const std::vector<GridFn>& fns);

// sum_n c_n Psi_n(x) for a built coherent state; requires the truncation
// tail <= 1e-10.  Coefficients below 1e-12 of the largest are skipped, and
// the sum stops at the first level the grid cannot resolve (ladder residual
// above 1); if the coefficient mass dropped that way exceeds 1e-4 the packet
// is not representable and std::runtime_error is thrown.
GridFn wavepacket(const CoherentState& s, const Grid& grid);

struct UncertaintyResult {
    double dx = 0.0;       // sqrt(<x^2> - <x>^2)
    double dp = 0.0;       // sqrt(<p^2> - <p>^2)
    double product = 0.0;  // dx * dp
};

// Moments from the grid sample: derivatives via the five-point stencil,
// <p^2> = sum |f'|^2 dx.
UncertaintyResult uncertainty(const GridFn& f);

// Crank-Nicolson propagation under -1/2 d^2/dx^2 + V- with Dirichlet ends;
// t must be an integer multiple of dt.  The Cayley form is unitary, and a
// norm drift beyond 1e-6 aborts with std::runtime_error.
GridFn evolve_grid(const FamilyConfig& cfg, const GridFn& f, double t,
                   double dt);

}  // namespace sis
