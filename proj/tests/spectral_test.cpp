#include "subdiff/spectral.hpp"

#include "subdiff/errors.hpp"
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

using namespace subdiff;

namespace {

double gram_deviation(const SpectralOperator& op) {
    double worst = 0.0;
    for (int i = 0; i < op.N(); ++i) {
        for (int j = 0; j < op.N(); ++j) {
            double g = 0.0;
            for (int p = 0; p <= op.P(); ++p)
                g += op.weights()[size_t(p)] * op.eigenfunction(i)[size_t(p)]
                     * op.eigenfunction(j)[size_t(p)];
            worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
    }
    return worst;
}

} // namespace

TEST_CASE("dirichlet eigensystem has the k^2 law and normalized amplitude") {
    SpectralOperator op = dirichlet_laplacian_1d(3, 64);
    CHECK(op.eigenvalues() == std::vector<double>{1.0, 4.0, 9.0});
    // midpoint of the grid is x = pi/2 for even P
    double mid = op.eigenfunction(0)[32];
    CHECK(std::abs(mid - std::sqrt(2.0 / M_PI)) <= 1e-12);
    CHECK(op.eigenfunction(0).front() == 0.0);
    CHECK(op.eigenfunction(0).back() == 0.0);

    double dot = 0.0;
    for (int p = 0; p <= op.P(); ++p)
        dot += op.weights()[size_t(p)] * op.eigenfunction(0)[size_t(p)]
               * op.eigenfunction(1)[size_t(p)];
    CHECK(std::abs(dot) <= 1e-10);
}

TEST_CASE("orthonormality holds up to N = 64") {
    CHECK(gram_deviation(dirichlet_laplacian_1d(8, 64)) <= 1e-8);
    CHECK(gram_deviation(dirichlet_laplacian_1d(64, 512)) <= 1e-8);
}

TEST_CASE("project recovers basis coefficients") {
    SpectralOperator op = dirichlet_laplacian_1d(4, 64);

    CoefVector c = op.project(op.eigenfunction(1));
    CHECK(std::abs(c[0]) <= 1e-10);
    CHECK(std::abs(c[1] - 1.0) <= 1e-10);
    CHECK(std::abs(c[2]) <= 1e-10);
    CHECK(std::abs(c[3]) <= 1e-10);

    std::vector<double> zero(size_t(op.P()) + 1, 0.0);
    for (double ck : op.project(zero))
        CHECK(ck == 0.0);
}

TEST_CASE("project of sin x against one normalized mode gives sqrt(pi/2)") {
    SpectralOperator op = dirichlet_laplacian_1d(1, 64);
    std::vector<double> h(size_t(op.P()) + 1);
    for (int p = 0; p <= op.P(); ++p)
        h[size_t(p)] = std::sin(op.grid_point(p));
    CoefVector c = op.project(h);
    CHECK(std::abs(c[0] - 1.25331413731550025121) <= 1e-8);
}

TEST_CASE("synthesize inverts project on coefficient space") {
    SpectralOperator op = dirichlet_laplacian_1d(16, 128);

    CoefVector e1(16, 0.0);
    e1[0] = 1.0;
    std::vector<double> field = op.synthesize(e1);
    for (int p = 0; p <= op.P(); ++p)
        CHECK(std::abs(field[size_t(p)] - op.eigenfunction(0)[size_t(p)]) <= 1e-15);

    std::mt19937_64 rng(20260823u);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    CoefVector c(16);
    for (double& ck : c)
        ck = unif(rng);
    CoefVector back = op.project(op.synthesize(c));
    for (size_t k = 0; k < c.size(); ++k)
        CHECK(std::abs(back[k] - c[k]) <= 1e-8);
}

TEST_CASE("Parseval: grid norm of a synthesis equals the coefficient norm") {
    SpectralOperator op = dirichlet_laplacian_1d(12, 128);
    std::mt19937_64 rng(7u);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    CoefVector c(12);
    double csq = 0.0;
    for (double& ck : c) {
        ck = unif(rng);
        csq += ck * ck;
    }
    std::vector<double> field = op.synthesize(c);
    double fsq = 0.0;
    for (int p = 0; p <= op.P(); ++p)
        fsq += op.weights()[size_t(p)] * field[size_t(p)] * field[size_t(p)];
    CHECK(std::abs(fsq - csq) <= 1e-6 * csq);
}

TEST_CASE("second differences reproduce lambda_k v_k at O(P^-2)") {
    for (int P : {128, 256}) {
        SpectralOperator op = dirichlet_laplacian_1d(4, P);
        double h = M_PI / P;
        for (int k = 1; k <= 4; ++k) {
            const auto& v = op.eigenfunction(k - 1);
            double worst = 0.0;
            for (int p = 1; p < P; ++p) {
                double av = -(v[size_t(p) + 1] - 2.0 * v[size_t(p)] + v[size_t(p) - 1]) / (h * h);
                worst = std::max(worst, std::abs(av - op.eigenvalues()[size_t(k) - 1] * v[size_t(p)]));
            }
            // (2 - 2 cos kh)/h^2 = k^2 (1 - (kh)^2/12 + ...)
            CHECK(worst <= 0.2 * std::pow(double(k), 4.0) * h * h);
        }
    }
}

TEST_CASE("construction rejects malformed eigensystems") {
    CHECK_THROWS_AS(dirichlet_laplacian_1d(8, 63), DomainError);
    CHECK_THROWS_AS(dirichlet_laplacian_1d(0, 64), DomainError);

    // orthonormal two-mode system on [0, 2] as a valid custom baseline
    auto make_modes = [](double amp0, double amp1) {
        int P = 32;
        std::vector<std::vector<double>> m(2, std::vector<double>(size_t(P) + 1));
        for (int p = 0; p <= P; ++p) {
            double x = 2.0 * p / P;
            m[0][size_t(p)] = amp0 * std::sin(M_PI * x / 2.0);
            m[1][size_t(p)] = amp1 * std::sin(M_PI * x);
        }
        return m;
    };
    double amp = 1.0; // sqrt(2/L) with L = 2
    CHECK_NOTHROW(SpectralOperator(2.0, {1.0, 1.0}, make_modes(amp, amp)));
    // equal eigenvalues allowed, decreasing not
    CHECK_THROWS_AS(SpectralOperator(2.0, {2.0, 1.0}, make_modes(amp, amp)), DomainError);
    CHECK_THROWS_AS(SpectralOperator(2.0, {-1.0, 1.0}, make_modes(amp, amp)), DomainError);
    // unnormalized basis must be rejected by the Gram gate
    CHECK_THROWS_AS(SpectralOperator(2.0, {1.0, 1.0}, make_modes(1.3, amp)), DomainError);

    auto ragged = make_modes(amp, amp);
    ragged[1].pop_back();
    CHECK_THROWS_AS(SpectralOperator(2.0, {1.0, 1.0}, ragged), ShapeError);

    SpectralOperator op = dirichlet_laplacian_1d(2, 32);
    CHECK_THROWS_AS(op.project(std::vector<double>(10, 0.0)), ShapeError);
    CHECK_THROWS_AS(op.synthesize(CoefVector{1.0}), ShapeError);
}
