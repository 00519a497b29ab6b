#pragma once

#include "subdiff/grid.hpp"
#include "subdiff/spectral.hpp"

#include <vector>

namespace subdiff {

enum class Smoothness { C0, C1 };

// Scalar time factor g of the separable source f g(t), sampled on the solver
// grid.  C1 profiles carry derivative samples on the same nodes; the
// quadrature only ever sees the values, the derivative backs order claims.
struct SourceProfile {
    TimeGrid grid;
    std::vector<double> values;
    Smoothness smoothness = Smoothness::C0;
    std::vector<double> derivative;

    SourceProfile(TimeGrid grid_, std::vector<double> values_,
                  Smoothness smoothness_ = Smoothness::C0,
                  std::vector<double> derivative_ = {});

    double max_abs() const;
    // piecewise-linear interpolation between the samples
    double at(double t) const;
};

/*
 * b(t) = int_0^t (t-s)^{rho-1} E_{rho,rho}(-lambda (t-s)^rho) g(s) ds.
 *
 * The kernel is integrably singular at s = t, so each subinterval is handled
 * with its exact moments: the antiderivative of eta^{rho-1} E_{rho,rho}
 * (-lambda eta^rho) is eta^rho E_{rho,rho+1}(-lambda eta^rho), and the first
 * moment has a matching closed form.  Against piecewise-linear g this gives
 * O(dt^2) for C^1 profiles and is exact for constant g.  The kernel is never
 * sampled pointwise.
 */
double b_coeff(double lambda, double rho, double t, const SourceProfile& g);

// b at every grid node; node m of the result is b(t_m).  Shares the cell
// weights across nodes, so the full sweep costs O(M^2) and matches b_coeff
// at the nodes.
std::vector<double> b_trajectory(double lambda, double rho, const SourceProfile& g);

// Per-mode trajectories of the non-local problem; modes[k][m] = u_{k+1}(t_m).
// Holds a copy of the eigenvalues so it outlives the operator it came from.
struct ForwardSolution {
    TimeGrid grid;
    std::vector<double> lambda;
    CoefVector f;
    std::vector<std::vector<double>> modes;
};

/*
 * Mode-by-mode solution of  D^rho u + A u = f g(t),  u(0) = u(T):
 *
 *   u_k(t) = f_k [ b_k(t) + b_k(T) E_rho(-lambda_k t^rho)
 *                              / (1 - E_rho(-lambda_k T^rho)) ].
 *
 * The denominator is evaluated as a deficit, never as 1 minus a rounded
 * value, so u(0) = u(T) holds to the Mittag-Leffler tolerance.  Throws
 * DegenerateError if the deficit underflows (possible only for absurdly
 * small lambda T^rho).
 */
ForwardSolution solve_forward(const SpectralOperator& op, const CoefVector& f,
                              const SourceProfile& g, double rho, const TimeGrid& grid);

struct ResidualReport {
    double pde_residual;          // max over modes and nodes >= 1 of |D^rho u_k + lambda_k u_k - f_k g|
    double pde_residual_interior; // same maximum restricted to nodes with t_m >= T/4
    double nonlocal_defect;       // max over modes of |u_k(0) - u_k(T)|
};

/*
 * Diagnostic: checks the solution against the equation it claims to solve,
 * with the time-stepping L1 derivative as the independent yardstick.
 *
 * Solutions of the non-local problem generically behave like t^rho near
 * t = 0, where the L1 stencil loses its order; the residual at the first few
 * nodes then stays O(1) no matter how fine the grid.  That is a property of
 * the yardstick, not of the solution, so the report carries both the full
 * maximum and the maximum over t >= T/4, which converges (empirically at
 * order min(2-rho, 1+rho)) for any C^1 source.  For solutions smooth at
 * t = 0 the two agree.
 */
ResidualReport residual_check(const ForwardSolution& sol, const CoefVector& f,
                              const SourceProfile& g, double rho);

} // namespace subdiff
