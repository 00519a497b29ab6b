#pragma once

#include <vector>

namespace subdiff {

// Fourier coefficients against the stored eigenbasis, index i = mode i+1.
using CoefVector = std::vector<double>;

/*
 * Truncated eigensystem (lambda_k, v_k), k = 1..N, of a self-adjoint positive
 * operator on [0, length].  Eigenfunctions are held as samples on a uniform
 * grid of P+1 points and must be orthonormal under the trapezoid inner
 * product; construction checks the Gram matrix against the identity (1e-8)
 * and rejects non-positive or decreasing eigenvalues.  Immutable afterwards,
 * safe to share across threads.
 */
class SpectralOperator {
public:
    SpectralOperator(double length, std::vector<double> eigenvalues,
                     std::vector<std::vector<double>> eigenfunctions);

    int N() const { return int(lambda_.size()); }
    int P() const { return int(weights_.size()) - 1; }
    double length() const { return length_; }
    const std::vector<double>& eigenvalues() const { return lambda_; }
    const std::vector<double>& eigenfunction(int i) const { return modes_[size_t(i)]; }
    const std::vector<double>& weights() const { return weights_; }
    double grid_point(int i) const { return length_ * i / P(); }

    // c_k = <h, v_k> by trapezoid; h must live on this operator's grid.
    CoefVector project(const std::vector<double>& h) const;
    // pointwise sum c_1 v_1 + ... + c_N v_N on the grid
    std::vector<double> synthesize(const CoefVector& c) const;

private:
    double length_;
    std::vector<double> lambda_;
    std::vector<std::vector<double>> modes_;
    std::vector<double> weights_;
};

// lambda_k = k^2, v_k = sqrt(2/pi) sin(k x) on [0, pi], P+1 uniform points.
// P >= 8N keeps products of basis sines alias-free under the trapezoid rule.
SpectralOperator dirichlet_laplacian_1d(int N, int P);

} // namespace subdiff
