#include "subdiff/inverse.hpp"

#include "subdiff/errors.hpp"
#include "subdiff/mittag_leffler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace subdiff {

namespace {

void check_times(double t0, double T, const SourceProfile& g) {
    if (!(T > 0.0) || T != g.grid.T)
        throw DomainError("inverse: horizon T must match the source profile");
    if (!(t0 > 0.0) || !(t0 < T))
        throw DomainError("inverse: snapshot time t0 must lie strictly inside (0, T)");
}

bool sign_definite(const SourceProfile& g) {
    bool pos = true, neg = true;
    for (double v : g.values) {
        pos = pos && v > 0.0;
        neg = neg && v < 0.0;
    }
    return pos || neg;
}

} // namespace

DeltaRecord delta(double lambda, double rho, double t0, double T, const SourceProfile& g) {
    check_times(t0, T, g);
    DeltaRecord r;
    r.lambda = lambda;
    r.b_t0 = b_coeff(lambda, rho, t0, g);
    r.b_T = b_coeff(lambda, rho, T, g);
    r.one_minus_E_T = ml_deficit(rho, lambda * std::pow(T, rho));
    r.E_t0 = ml_classical(rho, lambda * std::pow(t0, rho));
    r.delta = r.one_minus_E_T * r.b_t0 + r.E_t0 * r.b_T;
    r.scaled = lambda * std::abs(r.delta);
    return r;
}

ScanReport lower_bound_scan(const SpectralOperator& op, const SourceProfile& g, double rho,
                            double t0, double T) {
    check_times(t0, T, g);
    ScanReport rep;
    rep.records.reserve(size_t(op.N()));
    rep.min_scaled = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= op.N(); ++k) {
        DeltaRecord r = delta(op.eigenvalues()[size_t(k) - 1], rho, t0, T, g);
        r.k = k;
        if (r.scaled < rep.min_scaled) {
            rep.min_scaled = r.scaled;
            rep.argmin_k = k;
        }
        rep.records.push_back(r);
    }
    rep.sign_definite_g = sign_definite(g);
    rep.empirical_constant = rep.min_scaled;
    return rep;
}

ModePartition classify_modes(const SpectralOperator& op, const SourceProfile& g, double rho,
                             double t0, double T, double tau) {
    if (!(tau > 0.0))
        throw DomainError("classify_modes: threshold factor must be positive");
    ScanReport scan = lower_bound_scan(op, g, rho, t0, T);
    ModePartition part;
    part.records = std::move(scan.records);
    part.threshold = tau * g.max_abs() * std::max(1.0, std::pow(T, rho));
    for (const DeltaRecord& r : part.records) {
        if (r.scaled <= part.threshold) {
            part.K0_rho.push_back(r.k);
        } else {
            part.K_rho.push_back(r.k);
            if (r.scaled <= 10.0 * part.threshold)
                part.flagged.push_back(r.k);
        }
    }
    return part;
}

InverseResult solve_inverse(const SpectralOperator& op, const SourceProfile& g, double rho,
                            double t0, double T, const CoefVector& psi,
                            const std::map<int, double>& free_values, double tau) {
    if (int(psi.size()) != op.N())
        throw ShapeError("solve_inverse: snapshot coefficient count does not match operator");

    InverseResult res;
    res.partition = classify_modes(op, g, rho, t0, T, tau);

    for (const auto& [k, v] : free_values) {
        (void)v;
        if (!std::binary_search(res.partition.K0_rho.begin(), res.partition.K0_rho.end(), k))
            throw DomainError("solve_inverse: free value supplied for non-degenerate mode "
                              + std::to_string(k));
    }

    double psi_norm = 0.0;
    for (double p : psi)
        psi_norm += p * p;
    psi_norm = std::sqrt(psi_norm);
    const double ortho_tol = 1e-6 * psi_norm;

    res.f.assign(psi.size(), 0.0);
    res.amplification.assign(psi.size(), std::numeric_limits<double>::quiet_NaN());

    for (const DeltaRecord& r : res.partition.records) {
        size_t i = size_t(r.k) - 1;
        bool degenerate = std::binary_search(res.partition.K0_rho.begin(),
                                             res.partition.K0_rho.end(), r.k);
        if (degenerate) {
            // solvability demands the data contain nothing along this mode
            if (std::abs(psi[i]) > ortho_tol)
                throw NonOrthogonalData(r.k, psi[i],
                                        "solve_inverse: snapshot has weight on degenerate mode "
                                        + std::to_string(r.k));
            auto it = free_values.find(r.k);
            res.f[i] = it == free_values.end() ? 0.0 : it->second;
        } else {
            res.f[i] = psi[i] * r.one_minus_E_T / r.delta;
        }
        if (psi[i] != 0.0)
            res.amplification[i] = std::abs(res.f[i]) / std::abs(psi[i]);
    }

    res.free_modes = res.partition.K0_rho;
    res.verdict = res.partition.K0_rho.empty() ? InverseVerdict::Unique
                                               : InverseVerdict::NonUniqueFamily;
    res.verdict_basis = sign_definite(g)
                            ? "sign-definite g: degenerate denominators ruled out"
                            : "empirical: threshold classification of the denominators";
    res.u = solve_forward(op, res.f, g, rho, g.grid);
    return res;
}

std::vector<T0Candidate> pick_t0(const SpectralOperator& op, const SourceProfile& g, double rho,
                                 double T, const std::vector<double>& candidates, double tau) {
    if (candidates.empty())
        throw EmptyCandidates("pick_t0: no snapshot-time candidates given");

    std::vector<T0Candidate> scored;
    scored.reserve(candidates.size());
    for (double t0 : candidates) {
        check_times(t0, T, g); // throws before any scoring on a bad candidate
        ModePartition part = classify_modes(op, g, rho, t0, T, tau);
        T0Candidate c;
        c.t0 = t0;
        c.min_scaled = std::numeric_limits<double>::infinity();
        for (const DeltaRecord& r : part.records)
            c.min_scaled = std::min(c.min_scaled, r.scaled);
        c.K0_count = int(part.K0_rho.size());
        c.degenerate_flag = c.K0_count > 0;
        // the sign criterion backs uniqueness only in the classical limit
        c.sign_flag = rho == 1.0 && g.at(t0) * g.at(T) <= 0.0;
        scored.push_back(c);
    }

    std::stable_sort(scored.begin(), scored.end(), [](const T0Candidate& a, const T0Candidate& b) {
        bool a_flagged = a.sign_flag || a.degenerate_flag;
        bool b_flagged = b.sign_flag || b.degenerate_flag;
        if (a_flagged != b_flagged)
            return !a_flagged;
        return a.min_scaled > b.min_scaled;
    });
    return scored;
}

} // namespace subdiff
