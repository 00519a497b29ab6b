#include "subdiff/forward.hpp"

#include "subdiff/caputo.hpp"
#include "subdiff/errors.hpp"
#include "subdiff/mittag_leffler.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace subdiff {

SourceProfile::SourceProfile(TimeGrid grid_, std::vector<double> values_,
                             Smoothness smoothness_, std::vector<double> derivative_)
    : grid(grid_), values(std::move(values_)), smoothness(smoothness_),
      derivative(std::move(derivative_)) {
    if (values.size() != size_t(grid.M) + 1)
        throw ShapeError("SourceProfile: need one sample per grid node");
    for (double v : values)
        if (!std::isfinite(v))
            throw DomainError("SourceProfile: samples must be finite");
    if (smoothness == Smoothness::C1) {
        if (derivative.size() != values.size())
            throw ShapeError("SourceProfile: C1 profile needs derivative samples");
        for (double v : derivative)
            if (!std::isfinite(v))
                throw DomainError("SourceProfile: derivative samples must be finite");
    } else if (!derivative.empty()) {
        throw ShapeError("SourceProfile: derivative samples only make sense for C1");
    }
}

double SourceProfile::max_abs() const {
    double m = 0.0;
    for (double v : values)
        m = std::max(m, std::abs(v));
    return m;
}

double SourceProfile::at(double t) const {
    if (!(t >= 0.0) || !(t <= grid.T))
        throw DomainError("SourceProfile: time outside [0, T]");
    double pos = t / grid.dt();
    int cell = std::min(int(pos), grid.M - 1);
    double frac = pos - cell;
    return values[size_t(cell)] * (1.0 - frac) + values[size_t(cell) + 1] * frac;
}

namespace {

// Exact integrals of the kernel over [0, eta]:
//   B0 = int_0^eta s^{rho-1} E_{rho,rho}(-lambda s^rho) ds
//      = eta^rho E_{rho,rho+1}(-lambda eta^rho)
//   B1 = int_0^eta s^rho E_{rho,rho}(-lambda s^rho) ds
//      = eta^{rho+1} [E_{rho,rho+1} - E_{rho,rho+2}](-lambda eta^rho)
// B0 goes through the deficit form to stay accurate for small arguments.
struct KernelMoments {
    double b0 = 0.0;
    double b1 = 0.0;
};

KernelMoments kernel_moments(double lambda, double rho, double eta) {
    if (eta <= 0.0)
        return {};
    double x = lambda * std::pow(eta, rho);
    KernelMoments m;
    m.b0 = ml_deficit(rho, x) / lambda;
    double e1 = ml({rho, rho + 1.0, x}).value;
    double e2 = ml({rho, rho + 2.0, x}).value;
    m.b1 = std::pow(eta, rho + 1.0) * (e1 - e2);
    return m;
}

// One cell [a, b] of the eta integral with g(t - eta) linear between
// ga = g(t - a) and gb = g(t - b).
double cell_contribution(double a, double b, const KernelMoments& ma, const KernelMoments& mb,
                         double ga, double gb) {
    double db0 = mb.b0 - ma.b0;
    double db1 = mb.b1 - ma.b1;
    double width = b - a;
    return (ga * (b * db0 - db1) + gb * (db1 - a * db0)) / width;
}

void check_b_args(double lambda, double rho) {
    if (!(lambda > 0.0))
        throw DomainError("b_coeff: lambda must be positive");
    if (!(rho > 0.0) || !(rho <= 1.0))
        throw DomainError("b_coeff: order must lie in (0, 1]");
}

} // namespace

double b_coeff(double lambda, double rho, double t, const SourceProfile& g) {
    check_b_args(lambda, rho);
    if (!(t >= 0.0) || !(t <= g.grid.T))
        throw DomainError("b_coeff: time outside [0, T]");
    if (t == 0.0)
        return 0.0;

    // Cell boundaries in s: every grid node below t, then t itself, so each
    // eta cell maps into a single interval of the g samples.
    std::vector<double> s_nodes;
    for (int i = 0; i < g.grid.M && g.grid.node(i) < t; ++i)
        s_nodes.push_back(g.grid.node(i));
    s_nodes.push_back(t);

    double acc = 0.0;
    KernelMoments right = kernel_moments(lambda, rho, t); // eta = t - s_0 = t
    for (size_t i = 0; i + 1 < s_nodes.size(); ++i) {
        double a = t - s_nodes[i + 1];
        double b = t - s_nodes[i];
        KernelMoments left = kernel_moments(lambda, rho, a);
        double ga = g.at(s_nodes[i + 1]);
        double gb = g.at(s_nodes[i]);
        acc += cell_contribution(a, b, left, right, ga, gb);
        right = left;
    }
    return acc;
}

std::vector<double> b_trajectory(double lambda, double rho, const SourceProfile& g) {
    check_b_args(lambda, rho);
    const int M = g.grid.M;
    const double dt = g.grid.dt();

    std::vector<KernelMoments> mom(size_t(M) + 1);
    for (int j = 0; j <= M; ++j)
        mom[size_t(j)] = kernel_moments(lambda, rho, g.grid.node(j));

    // Cell weights do not depend on the output node, so the O(M^2) sweep
    // reuses them: cell j contributes w0[j] g_{m-j+1} + w1[j] g_{m-j}.
    std::vector<double> w0(size_t(M) + 1, 0.0), w1(size_t(M) + 1, 0.0);
    for (int j = 1; j <= M; ++j) {
        double a = g.grid.node(j - 1);
        double b = g.grid.node(j);
        double db0 = mom[size_t(j)].b0 - mom[size_t(j) - 1].b0;
        double db1 = mom[size_t(j)].b1 - mom[size_t(j) - 1].b1;
        w0[size_t(j)] = (b * db0 - db1) / dt;
        w1[size_t(j)] = (db1 - a * db0) / dt;
    }

    std::vector<double> out(size_t(M) + 1, 0.0);
    for (int m = 1; m <= M; ++m) {
        double acc = 0.0;
        for (int j = 1; j <= m; ++j)
            acc += w0[size_t(j)] * g.values[size_t(m - j) + 1]
                   + w1[size_t(j)] * g.values[size_t(m - j)];
        out[size_t(m)] = acc;
    }
    return out;
}

ForwardSolution solve_forward(const SpectralOperator& op, const CoefVector& f,
                              const SourceProfile& g, double rho, const TimeGrid& grid) {
    if (int(f.size()) != op.N())
        throw ShapeError("solve_forward: coefficient count does not match operator");
    if (!(g.grid == grid))
        throw ShapeError("solve_forward: source profile must live on the solver grid");
    if (!(rho > 0.0) || !(rho <= 1.0))
        throw DomainError("solve_forward: order must lie in (0, 1]");

    const int M = grid.M;
    ForwardSolution sol;
    sol.grid = grid;
    sol.lambda = op.eigenvalues();
    sol.f = f;
    sol.modes.assign(f.size(), std::vector<double>(size_t(M) + 1, 0.0));

    for (size_t k = 0; k < f.size(); ++k) {
        double lam = sol.lambda[k];
        std::vector<double> b = b_trajectory(lam, rho, g);
        double deficit = ml_deficit(rho, lam * std::pow(grid.T, rho));
        if (deficit < 1e-300)
            throw DegenerateError("solve_forward: 1 - E_rho(-lambda T^rho) underflows");
        double ratio = b[size_t(M)] / deficit;
        for (int m = 0; m <= M; ++m) {
            double e_t = ml_classical(rho, lam * std::pow(grid.node(m), rho));
            sol.modes[k][size_t(m)] = f[k] * (b[size_t(m)] + ratio * e_t);
        }
    }
    return sol;
}

ResidualReport residual_check(const ForwardSolution& sol, const CoefVector& f,
                              const SourceProfile& g, double rho) {
    if (f.size() != sol.modes.size())
        throw ShapeError("residual_check: coefficient count does not match solution");
    if (!(g.grid == sol.grid))
        throw ShapeError("residual_check: source profile grid does not match solution");

    ResidualReport rep{0.0, 0.0, 0.0};
    const int M = sol.grid.M;
    const int first_interior = (M + 3) / 4; // smallest m with t_m >= T/4
    for (size_t k = 0; k < sol.modes.size(); ++k) {
        GridFunction traj{sol.grid, sol.modes[k]};
        GridFunction d = caputo_l1(traj, rho);
        for (int m = 1; m <= M; ++m) {
            double r = std::abs(d.values[size_t(m)] + sol.lambda[k] * sol.modes[k][size_t(m)]
                                - f[k] * g.values[size_t(m)]);
            rep.pde_residual = std::max(rep.pde_residual, r);
            if (m >= first_interior)
                rep.pde_residual_interior = std::max(rep.pde_residual_interior, r);
        }
        rep.nonlocal_defect = std::max(rep.nonlocal_defect,
                                       std::abs(sol.modes[k][0] - sol.modes[k][size_t(M)]));
    }
    return rep;
}

} // namespace subdiff
