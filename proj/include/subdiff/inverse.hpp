#pragma once

#include "subdiff/forward.hpp"
#include "subdiff/spectral.hpp"

#include <map>
#include <string>
#include <vector>

namespace subdiff {

// Degeneracy threshold factor: mode k counts as degenerate when
// lambda_k |delta_k| <= tau ||g||_inf max(1, T^rho).  The scaled quantity is
// bounded below by O(1) constants for sign-definite g and sits at quadrature
// noise (~1e-8) for genuinely degenerate modes, so 1e-6 separates the two
// regimes with two decades of margin on each side.
inline constexpr double kDefaultDegeneracyTau = 1e-6;

// Per-mode ingredients of the reconstruction denominator
//   delta = (1 - E_rho(-lambda T^rho)) b(t0) + E_rho(-lambda t0^rho) b(T).
struct DeltaRecord {
    int k = 0; // 1-based mode number; delta() leaves it 0, mode sweeps fill it
    double lambda = 0.0;
    double b_t0 = 0.0;
    double b_T = 0.0;
    double one_minus_E_T = 0.0; // in (0,1), computed as a deficit
    double E_t0 = 0.0;          // in (0,1]
    double delta = 0.0;
    double scaled = 0.0; // lambda * |delta|, the scale-free degeneracy measure
};

// Requires 0 < t0 < T and T equal to the profile's horizon.  b values come
// from the point quadrature at t0 and T, deterministic given the g grid.
DeltaRecord delta(double lambda, double rho, double t0, double T, const SourceProfile& g);

struct ModePartition {
    std::vector<int> K_rho;          // modes with a usable denominator
    std::vector<int> K0_rho;         // modes classified degenerate
    std::vector<int> flagged;        // in K_rho but within 10x of the threshold
    double threshold = 0.0;          // absolute cut applied to scaled
    std::vector<DeltaRecord> records; // one per mode, k = 1..N
};

ModePartition classify_modes(const SpectralOperator& op, const SourceProfile& g, double rho,
                             double t0, double T, double tau = kDefaultDegeneracyTau);

// Diagnostic sweep of the per-mode lower bound lambda_k |delta_k|.
struct ScanReport {
    std::vector<DeltaRecord> records;
    double min_scaled = 0.0;
    int argmin_k = 0;
    bool sign_definite_g = false;
    // min_scaled doubles as the empirical constant of the lower bound when g
    // is sign-definite; meaningless (near zero) otherwise
    double empirical_constant = 0.0;
};

ScanReport lower_bound_scan(const SpectralOperator& op, const SourceProfile& g, double rho,
                            double t0, double T);

enum class InverseVerdict { Unique, NonUniqueFamily };

struct InverseResult {
    CoefVector f;
    ForwardSolution u;
    ModePartition partition;
    InverseVerdict verdict = InverseVerdict::Unique;
    std::vector<int> free_modes;       // degenerate modes whose f_k was free
    std::vector<double> amplification; // |f_k| / |psi_k|, NaN where psi_k = 0
    std::string verdict_basis;
};

/*
 * Source recovery from the snapshot u(t0) = psi:
 *
 *   f_k = psi_k (1 - E_rho(-lambda_k T^rho)) / delta_k   for usable modes,
 *   f_k = free_values[k] (default 0)                      for degenerate ones,
 *
 * then u is re-assembled by the forward solver.  Degenerate modes demand
 * psi_k = 0 up to 1e-6 ||psi||; otherwise no solution exists and
 * NonOrthogonalData reports the offending mode.  A free value supplied for a
 * non-degenerate mode is a caller error (DomainError).
 */
InverseResult solve_inverse(const SpectralOperator& op, const SourceProfile& g, double rho,
                            double t0, double T, const CoefVector& psi,
                            const std::map<int, double>& free_values = {},
                            double tau = kDefaultDegeneracyTau);

// One scored snapshot-time candidate; ranking prefers large min_scaled and
// pushes flagged candidates below every clean one.
struct T0Candidate {
    double t0 = 0.0;
    double min_scaled = 0.0;
    int K0_count = 0;
    bool sign_flag = false;       // order 1 only: g(t0) g(T) <= 0
    bool degenerate_flag = false; // K0 non-empty at this t0
};

std::vector<T0Candidate> pick_t0(const SpectralOperator& op, const SourceProfile& g, double rho,
                                 double T, const std::vector<double>& candidates,
                                 double tau = kDefaultDegeneracyTau);

} // namespace subdiff
