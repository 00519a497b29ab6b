#include "subdiff/mittag_leffler.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "subdiff/errors.hpp"

namespace subdiff {

namespace {

using Float50 = boost::multiprecision::cpp_bin_float_50;

constexpr double kTargetAbsError = 1e-10;
constexpr double kAsymptoticAccept = 1e-11; // tail truncation bound, one decade under target
constexpr double kMaxX = 1e6;
constexpr double kMaxMu = 80.0;

// sin(pi z) with exact integer splitting; plain sin(M_PI*z) loses the zeros.
double sinpi(double z) {
    double n = std::nearbyint(z);
    double r = z - n; // |r| <= 0.5
    double s = std::sin(M_PI * r);
    bool odd = std::fmod(std::fabs(n), 2.0) == 1.0;
    return odd ? -s : s;
}

// Reciprocal gamma table for one (rho, mu): c_k = 1/Gamma(rho k + mu), kept in
// both double and 50-digit form.  Grown on demand, shared via copy-on-write so
// concurrent ml() calls never see a table under construction.
struct CoefTable {
    std::vector<double> inv_gamma_d;
    std::vector<Float50> inv_gamma_mp;
};

std::shared_ptr<const CoefTable> coef_table(double rho, double mu, size_t need) {
    static std::mutex mtx;
    static std::map<std::pair<double, double>, std::shared_ptr<const CoefTable>> cache;

    std::lock_guard<std::mutex> lock(mtx);
    auto& slot = cache[{rho, mu}];
    if (slot && slot->inv_gamma_d.size() >= need) return slot;

    auto next = std::make_shared<CoefTable>(slot ? *slot : CoefTable{});
    size_t target = ((need + 127) / 128) * 128;
    next->inv_gamma_d.reserve(target);
    next->inv_gamma_mp.reserve(target);
    for (size_t k = next->inv_gamma_d.size(); k < target; ++k) {
        Float50 g = boost::math::tgamma(Float50(rho) * k + Float50(mu));
        Float50 inv = 1 / g;
        next->inv_gamma_mp.push_back(inv);
        next->inv_gamma_d.push_back(static_cast<double>(inv));
    }
    slot = next;
    return slot;
}

struct KahanSum {
    double s = 0.0, c = 0.0;
    void add(double t) {
        double y = t - c;
        double u = s + y;
        c = (u - s) - y;
        s = u;
    }
};

// Direct Taylor sum in double; only called for x <= 1 where the partial sums
// never grow, so compensation is all that is needed.
MLValue taylor_series(double rho, double mu, double x) {
    auto tab = coef_table(rho, mu, 64);
    KahanSum sum;
    double abs_sum = 0.0;
    double p = 1.0; // (-x)^k
    size_t k = 0;
    double term = 0.0;
    for (;; ++k) {
        if (k >= tab->inv_gamma_d.size()) tab = coef_table(rho, mu, k + 64);
        term = p * tab->inv_gamma_d[k];
        sum.add(term);
        abs_sum += std::fabs(term);
        p *= -x;
        if (k > 4 && std::fabs(term) < 1e-18 * std::max(1.0, std::fabs(sum.s))) break;
        if (k > 4000) break;
    }
    double est = std::fabs(term) + std::numeric_limits<double>::epsilon() * abs_sum;
    return {sum.s, MLRegime::series, est};
}

// Taylor sum carried in 50-digit floats.  Covers the cancellation band between
// the double series and the asymptotic tail; by the regime selection below the
// cancellation never exceeds ~e^{85}, well inside 50 digits.
MLValue midrange_series(double rho, double mu, double x) {
    auto tab = coef_table(rho, mu, 128);
    Float50 sum = 0;
    Float50 p = 1; // (-x)^k
    Float50 max_term = 0;
    const Float50 mx(-x);
    size_t k = 0;
    for (;; ++k) {
        if (k >= tab->inv_gamma_mp.size()) tab = coef_table(rho, mu, k + 128);
        Float50 term = p * tab->inv_gamma_mp[k];
        sum += term;
        Float50 a = abs(term);
        if (a > max_term) max_term = a;
        p *= mx;
        if (k > 8 && a < max_term * Float50(1e-56)) break;
        if (k > 200000) throw DegenerateError("ml: midrange series failed to converge");
    }
    double value = static_cast<double>(sum);
    // rounding of ~k accumulations at 50 digits, amplified by the largest term
    double est = static_cast<double>(max_term) * 1e-50 * static_cast<double>(k) +
                 std::numeric_limits<double>::epsilon() * std::fabs(value);
    return {value, MLRegime::midrange, est};
}

/*
 * Asymptotic tail.  Truncation is controlled by the sign-free envelope
 *   env_j = x^{-j} * Gamma(1-z)/pi      (z = mu - rho j < 1/2)
 *         = x^{-j} / Gamma(z)           (z >= 1/2)
 * which bounds |term_j| and moves smoothly in j, whereas the true term carries
 * sin(pi z) and collapses at Gamma poles - a collapsed term must be skipped,
 * not read as convergence.  Work in logs so over/underflow just ends the loop.
 */
bool asymptotic_series(double rho, double mu, double x, MLValue& out) {
    const double log_x = std::log(x);
    KahanSum sum;
    double abs_sum = 0.0;
    double prev_lenv = std::numeric_limits<double>::infinity();
    double omitted_env = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= 600; ++j) {
        double z = mu - rho * j;
        double lenv, term;
        if (z >= 0.5) {
            lenv = -j * log_x - std::lgamma(z);
            term = (j % 2 ? 1.0 : -1.0) * std::exp(lenv);
        } else {
            if (1.0 - z > 170.0) { omitted_env = std::exp(std::min(prev_lenv, 700.0)); break; }
            lenv = -j * log_x + std::lgamma(1.0 - z) - std::log(M_PI);
            term = (j % 2 ? 1.0 : -1.0) * sinpi(z) * std::exp(lenv);
        }
        if (lenv >= prev_lenv) { // past the optimal truncation point
            omitted_env = std::exp(std::min(lenv, 700.0));
            break;
        }
        sum.add(term);
        abs_sum += std::fabs(term);
        prev_lenv = lenv;
        if (lenv < std::log(1e-18)) {
            omitted_env = std::exp(lenv);
            break;
        }
    }
    double est = 4.0 * omitted_env + std::numeric_limits<double>::epsilon() * abs_sum;
    if (!(est <= kAsymptoticAccept)) return false;
    out = {sum.s, MLRegime::asymptotic, est};
    return true;
}

} // namespace

const char* to_string(MLRegime r) {
    switch (r) {
        case MLRegime::series: return "series";
        case MLRegime::midrange: return "midrange";
        case MLRegime::asymptotic: return "asymptotic";
    }
    return "unknown";
}

MLValue ml(const MLQuery& q) {
    const double rho = q.rho, mu = q.mu, x = q.x;
    if (!(rho > 0.0) || !(rho <= 1.0))
        throw DomainError("ml: rho must lie in (0, 1]");
    if (!(mu > 0.0) || !(mu <= kMaxMu))
        throw DomainError("ml: mu must lie in (0, 80]");
    if (!(x >= 0.0) || !(x <= kMaxX))
        throw DomainError("ml: x must lie in [0, 1e6]");

    if (x <= 1.0) return taylor_series(rho, mu, x);

    // The tail is only trustworthy once x^{1/rho} is large enough that the
    // smallest term undercuts the target; for large mu the first terms also
    // grow before they shrink, so demand x past that hump as well.
    bool tail_plausible = x >= std::pow(26.0, rho) &&
                          (mu <= 20.0 || x >= std::pow(mu + 2.0, rho));
    if (tail_plausible) {
        MLValue out;
        if (asymptotic_series(rho, mu, x, out)) return out;
    }
    return midrange_series(rho, mu, x);
}

double ml_classical(double rho, double x) {
    if (rho == 1.0) {
        if (!(x >= 0.0) || !(x <= kMaxX))
            throw DomainError("ml_classical: x must lie in [0, 1e6]");
        return std::exp(-x);
    }
    return ml({rho, 1.0, x}).value;
}

double ml_deficit(double rho, double x) {
    if (rho == 1.0) {
        if (!(x >= 0.0) || !(x <= kMaxX))
            throw DomainError("ml_deficit: x must lie in [0, 1e6]");
        return -std::expm1(-x);
    }
    return x * ml({rho, rho + 1.0, x}).value;
}

} // namespace subdiff
