#pragma once

#include "subdiff/grid.hpp"

namespace subdiff {

// Caputo power rule: D^rho[t^p] = Gamma(p+1)/Gamma(p+1-rho) t^{p-rho}.
// Requires p > 0, rho in (0,1], t >= 0.  rho = 1 reduces to p t^{p-1}.
double caputo_power(double p, double rho, double t);

/*
 * L1 discretization of the Caputo derivative of order rho in (0,1),
 *
 *   (D^rho h)(t_n) ~ dt^{-rho}/Gamma(2-rho)
 *                    * sum_{j=1..n} (h_j - h_{j-1}) [(n-j+1)^{1-rho} - (n-j)^{1-rho}],
 *
 * i.e. exact fractional integration of the piecewise-linear interpolant.
 * Order 2-rho for smooth input.  Node 0 has no derivative and is NaN in the
 * result.  rho = 1 falls back to second-order finite differences (central in
 * the interior, one-sided at node M), which needs M >= 2.
 */
GridFunction caputo_l1(const GridFunction& h, double rho);

} // namespace subdiff
