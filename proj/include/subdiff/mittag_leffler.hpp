#pragma once

namespace subdiff {

// Which evaluation strategy produced an MLValue.
enum class MLRegime { series, midrange, asymptotic };

const char* to_string(MLRegime r);

// Request for E_{rho,mu}(-x): the two-parameter Mittag-Leffler function on the
// negative real axis.  Domain: rho in (0,1], mu in (0,80], x in [0,1e6].
struct MLQuery {
    double rho;
    double mu;
    double x;
};

struct MLValue {
    double value;
    MLRegime regime;
    double est_abs_error; // bound on |value - E_{rho,mu}(-x)|, <= 1e-10
};

/*
 * E_{rho,mu}(-x) = sum_{k>=0} (-x)^k / Gamma(rho k + mu)
 *
 * Three regimes:
 *   x <= 1          direct Taylor sum in double, compensated
 *   large x         asymptotic tail  sum_{j>=1} (-1)^{j+1} x^{-j} / Gamma(mu - rho j),
 *                   truncated at the smallest term; accepted only when that
 *                   truncation bound is <= 1e-11
 *   in between      Taylor sum in 50-digit floats (the partial sums grow to
 *                   ~e^{x^{1/rho}} before cancelling, which double cannot survive)
 */
MLValue ml(const MLQuery& q);

// E_rho(-x) = E_{rho,1}(-x).  Strictly decreasing in x, range (0,1].
// rho = 1 reduces to exp(-x) exactly.
double ml_classical(double rho, double x);

// 1 - E_rho(-x) without cancellation, via x * E_{rho,rho+1}(-x)
// (and -expm1(-x) at rho = 1).  Relative accuracy holds even for x << 1.
double ml_deficit(double rho, double x);

} // namespace subdiff
