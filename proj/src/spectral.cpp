#include "subdiff/spectral.hpp"

#include "subdiff/errors.hpp"

#include <cmath>
#include <string>

namespace subdiff {

SpectralOperator::SpectralOperator(double length, std::vector<double> eigenvalues,
                                   std::vector<std::vector<double>> eigenfunctions)
    : length_(length), lambda_(std::move(eigenvalues)), modes_(std::move(eigenfunctions)) {
    if (!(length_ > 0.0))
        throw DomainError("SpectralOperator: domain length must be positive");
    if (lambda_.empty())
        throw DomainError("SpectralOperator: need at least one mode");
    if (modes_.size() != lambda_.size())
        throw ShapeError("SpectralOperator: eigenvalue/eigenfunction count mismatch");
    for (size_t i = 0; i < lambda_.size(); ++i) {
        if (!(lambda_[i] > 0.0))
            throw DomainError("SpectralOperator: eigenvalues must be positive");
        if (i > 0 && lambda_[i] < lambda_[i - 1])
            throw DomainError("SpectralOperator: eigenvalues must be non-decreasing");
    }
    size_t pts = modes_[0].size();
    if (pts < 3)
        throw ShapeError("SpectralOperator: eigenfunction grid too short");
    for (const auto& row : modes_)
        if (row.size() != pts)
            throw ShapeError("SpectralOperator: ragged eigenfunction grid");

    double h = length_ / double(pts - 1);
    weights_.assign(pts, h);
    weights_.front() = h / 2.0;
    weights_.back() = h / 2.0;

    // Orthonormality gate: a basis that fails it would silently corrupt every
    // Fourier coefficient downstream, so reject here.
    const size_t n = lambda_.size();
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i; j < n; ++j) {
            double g = 0.0;
            for (size_t p = 0; p < pts; ++p)
                g += weights_[p] * modes_[i][p] * modes_[j][p];
            double want = i == j ? 1.0 : 0.0;
            if (std::abs(g - want) > 1e-8)
                throw DomainError("SpectralOperator: eigenfunctions not orthonormal, Gram("
                                  + std::to_string(i + 1) + "," + std::to_string(j + 1)
                                  + ") off by " + std::to_string(g - want));
        }
    }
}

CoefVector SpectralOperator::project(const std::vector<double>& h) const {
    if (h.size() != weights_.size())
        throw ShapeError("project: sample count does not match operator grid");
    CoefVector c(lambda_.size(), 0.0);
    for (size_t k = 0; k < lambda_.size(); ++k) {
        double acc = 0.0;
        for (size_t p = 0; p < h.size(); ++p)
            acc += weights_[p] * modes_[k][p] * h[p];
        c[k] = acc;
    }
    return c;
}

std::vector<double> SpectralOperator::synthesize(const CoefVector& c) const {
    if (c.size() != lambda_.size())
        throw ShapeError("synthesize: coefficient count does not match operator");
    std::vector<double> out(weights_.size(), 0.0);
    for (size_t k = 0; k < c.size(); ++k)
        for (size_t p = 0; p < out.size(); ++p)
            out[p] += c[k] * modes_[k][p];
    return out;
}

SpectralOperator dirichlet_laplacian_1d(int N, int P) {
    if (N < 1)
        throw DomainError("dirichlet_laplacian_1d: need N >= 1");
    if (P < 8 * N)
        throw DomainError("dirichlet_laplacian_1d: undersampled grid, need P >= 8N");
    const double amp = std::sqrt(2.0 / M_PI);
    std::vector<double> lambda(static_cast<size_t>(N));
    std::vector<std::vector<double>> modes(static_cast<size_t>(N),
                                           std::vector<double>(size_t(P) + 1));
    for (int k = 1; k <= N; ++k) {
        lambda[size_t(k) - 1] = double(k) * double(k);
        for (int p = 0; p <= P; ++p)
            modes[size_t(k) - 1][size_t(p)] = amp * std::sin(k * M_PI * p / double(P));
    }
    // exact zeros at the Dirichlet ends, regardless of sin rounding
    for (auto& row : modes) {
        row.front() = 0.0;
        row.back() = 0.0;
    }
    return SpectralOperator(M_PI, std::move(lambda), std::move(modes));
}

} // namespace subdiff
