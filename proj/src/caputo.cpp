#include "subdiff/caputo.hpp"

#include "subdiff/errors.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace subdiff {

double caputo_power(double p, double rho, double t) {
    if (!(p > 0.0))
        throw DomainError("caputo_power: exponent must be positive");
    if (!(rho > 0.0) || !(rho <= 1.0))
        throw DomainError("caputo_power: order must lie in (0, 1]");
    if (!(t >= 0.0))
        throw DomainError("caputo_power: time must be nonnegative");
    if (t == 0.0)
        return p > rho ? 0.0 : (p == rho ? std::tgamma(p + 1.0)
                                         : std::numeric_limits<double>::infinity());
    // Gamma ratio in log space so large p cannot overflow; both arguments
    // are positive, no sign bookkeeping needed.
    double ratio = std::exp(std::lgamma(p + 1.0) - std::lgamma(p + 1.0 - rho));
    return ratio * std::pow(t, p - rho);
}

namespace {

// (i+1)^q - i^q without cancellation: i^q expm1(q log1p(1/i)).
double power_gap(int i, double q) {
    if (i == 0)
        return 1.0;
    return std::pow(double(i), q) * std::expm1(q * std::log1p(1.0 / double(i)));
}

GridFunction central_diff(const GridFunction& h) {
    const int M = h.grid.M;
    if (M < 2)
        throw DomainError("caputo_l1: classical derivative needs at least 2 steps");
    const double dt = h.grid.dt();
    GridFunction out{h.grid, std::vector<double>(size_t(M) + 1, 0.0)};
    out.values[0] = std::numeric_limits<double>::quiet_NaN();
    for (int n = 1; n < M; ++n)
        out.values[size_t(n)] = (h.values[size_t(n) + 1] - h.values[size_t(n) - 1]) / (2.0 * dt);
    out.values[size_t(M)] = (3.0 * h.values[size_t(M)] - 4.0 * h.values[size_t(M) - 1]
                             + h.values[size_t(M) - 2])
                            / (2.0 * dt);
    return out;
}

} // namespace

GridFunction caputo_l1(const GridFunction& h, double rho) {
    if (!(rho > 0.0) || !(rho <= 1.0))
        throw DomainError("caputo_l1: order must lie in (0, 1]");
    if (rho == 1.0)
        return central_diff(h);

    const int M = h.grid.M;
    const double dt = h.grid.dt();
    const double q = 1.0 - rho;
    const double scale = std::pow(dt, -rho) / std::tgamma(2.0 - rho);

    std::vector<double> gap(static_cast<size_t>(M));
    for (int i = 0; i < M; ++i)
        gap[size_t(i)] = power_gap(i, q);

    GridFunction out{h.grid, std::vector<double>(size_t(M) + 1, 0.0)};
    out.values[0] = std::numeric_limits<double>::quiet_NaN();
    for (int n = 1; n <= M; ++n) {
        double acc = 0.0;
        double comp = 0.0; // Kahan: increments alternate in sign for smooth h
        for (int j = 1; j <= n; ++j) {
            double term = (h.values[size_t(j)] - h.values[size_t(j) - 1]) * gap[size_t(n - j)];
            double y = term - comp;
            double s = acc + y;
            comp = (s - acc) - y;
            acc = s;
        }
        out.values[size_t(n)] = scale * acc;
    }
    return out;
}

} // namespace subdiff
