#pragma once

// Test-side reference implementations, deliberately independent of the library
// code paths they are used to check.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

// exp(x^2) erfc(x): closed form of E_{1/2,1}(-x).  Both factors stay in range
// for x <= 25; callers must respect that.
inline double erfcx(double x) {
    if (x > 25.0) throw std::invalid_argument("erfcx oracle: x too large");
    return std::exp(x * x) * std::erfc(x);
}

namespace detail {
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adapt(const std::function<double(double)>& f, double a, double b,
                    double fa, double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(f, a, m, fa, flm, fm);
    double right = simpson(f, m, b, fm, frm, fb);
    if (depth <= 0) return left + right;
    if (std::fabs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adapt(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adapt(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}
} // namespace detail

// Adaptive Simpson on [a, b]; f must be finite on the closed interval.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10) {
    if (a == b) return 0.0;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = detail::simpson(f, a, b, fa, fm, fb);
    return detail::adapt(f, a, b, fa, fm, fb, whole, tol, 40);
}

// Backward-Euler march for the scalar problem u' + lam*u = f*g(t) with the
// matching condition u(0) = u(T).  First-order reference for rho = 1.
inline std::vector<double> backward_euler_periodic(double lam, double f,
                                                   const std::vector<double>& g,
                                                   double T) {
    int M = static_cast<int>(g.size()) - 1;
    double dt = T / M;
    // u_m = a_m * u_0 + c_m  by linearity of the recurrence
    double a = 1.0, c = 0.0;
    std::vector<double> av(M + 1), cv(M + 1);
    av[0] = 1.0;
    cv[0] = 0.0;
    for (int m = 1; m <= M; ++m) {
        a = a / (1.0 + lam * dt);
        c = (c + dt * f * g[m]) / (1.0 + lam * dt);
        av[m] = a;
        cv[m] = c;
    }
    double u0 = cv[M] / (1.0 - av[M]);
    std::vector<double> u(M + 1);
    for (int m = 0; m <= M; ++m) u[m] = av[m] * u0 + cv[m];
    return u;
}

} // namespace oracle
