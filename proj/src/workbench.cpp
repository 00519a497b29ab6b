#include "subdiff/workbench.hpp"

#include "subdiff/caputo.hpp"
#include "subdiff/errors.hpp"
#include "subdiff/mittag_leffler.hpp"
#include "subdiff/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

namespace subdiff {

using nlohmann::json;

void RunConfig::validate() const {
    if (!(rho > 0.0 && rho <= 1.0)) throw ConfigError("rho: must lie in (0, 1]");
    if (!(T > 0.0)) throw ConfigError("T: must be positive");
    if (!(t0 > 0.0 && t0 < T)) throw ConfigError("t0: must lie strictly inside (0, T)");
    if (M < 256) throw ConfigError("M: at least 256 time steps");
    if (N < 1) throw ConfigError("N: at least one mode");
    if (P < 8 * N) throw ConfigError("P: spatial grid must resolve the modes (P >= 8N)");
    if (!(tau > 0.0)) throw ConfigError("tau: must be positive");
    if (operator_spec.empty()) throw ConfigError("operator: must name a builtin or a file");
    if (g_spec.empty()) throw ConfigError("g: must name a builtin or a file");
}

namespace {

double cfg_number(const json& j, const char* key) {
    const json& v = j.at(key);
    if (!v.is_number()) throw ConfigError(std::string(key) + ": must be a number");
    return v.get<double>();
}

int cfg_int(const json& j, const char* key) {
    const json& v = j.at(key);
    if (!v.is_number_integer()) throw ConfigError(std::string(key) + ": must be an integer");
    return v.get<int>();
}

std::string cfg_string(const json& j, const char* key) {
    const json& v = j.at(key);
    if (!v.is_string()) throw ConfigError(std::string(key) + ": must be a string");
    return v.get<std::string>();
}

} // namespace

RunConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    static const char* known[] = {"rho", "T",   "t0",  "M",    "N",  "P",
                                  "operator", "g", "tau", "seed", "out"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw ConfigError("config: unknown field '" + it.key() + "'");
    }
    RunConfig c;
    if (j.contains("rho")) c.rho = cfg_number(j, "rho");
    if (j.contains("T")) c.T = cfg_number(j, "T");
    if (j.contains("t0")) c.t0 = cfg_number(j, "t0");
    if (j.contains("M")) c.M = cfg_int(j, "M");
    if (j.contains("N")) c.N = cfg_int(j, "N");
    if (j.contains("P")) c.P = cfg_int(j, "P");
    if (j.contains("operator")) c.operator_spec = cfg_string(j, "operator");
    if (j.contains("g")) c.g_spec = cfg_string(j, "g");
    if (j.contains("tau")) c.tau = cfg_number(j, "tau");
    if (j.contains("seed")) {
        const json& v = j.at("seed");
        if (!v.is_number_unsigned()) throw ConfigError("seed: must be a non-negative integer");
        c.seed = v.get<unsigned long long>();
    }
    if (j.contains("out")) c.out_path = cfg_string(j, "out");
    return c;
}

double example1_consistent_g(double rho, double t) {
    const double d = t - 0.5;
    return caputo_power(2.0, rho, t) - caputo_power(1.0, rho, t) + d * d;
}

double example1_endpoint_g(double rho, double t) {
    const double d = t - 0.5;
    return 0.5 * caputo_power(2.0, rho, t) - caputo_power(1.0, rho, t) + d * d;
}

bool is_builtin_source(const std::string& name) {
    return name == "const" || name == "sin2pi" || name == "ramp" || name == "t-0.3" ||
           name == "example1";
}

SourceProfile builtin_source(const std::string& name, const TimeGrid& grid, double rho) {
    const size_t n = size_t(grid.M) + 1;
    std::vector<double> v(n), d(n);
    if (name == "const") {
        std::fill(v.begin(), v.end(), 1.0);
        std::fill(d.begin(), d.end(), 0.0);
    } else if (name == "sin2pi") {
        for (size_t m = 0; m < n; ++m) {
            double t = grid.node(int(m));
            v[m] = 2.0 + std::sin(2.0 * M_PI * t);
            d[m] = 2.0 * M_PI * std::cos(2.0 * M_PI * t);
        }
    } else if (name == "ramp") {
        for (size_t m = 0; m < n; ++m) {
            v[m] = 1.0 + grid.node(int(m));
            d[m] = 1.0;
        }
    } else if (name == "t-0.3") {
        for (size_t m = 0; m < n; ++m) {
            v[m] = grid.node(int(m)) - 0.3;
            d[m] = 1.0;
        }
    } else if (name == "example1") {
        for (size_t m = 0; m < n; ++m) v[m] = example1_consistent_g(rho, grid.node(int(m)));
        return SourceProfile(grid, std::move(v), Smoothness::C0);
    } else {
        throw DomainError("builtin_source: unknown profile '" + name + "'");
    }
    return SourceProfile(grid, std::move(v), Smoothness::C1, std::move(d));
}

SpectralOperator make_operator(const std::string& spec, int N, int P) {
    if (spec == "dirichlet1d") return dirichlet_laplacian_1d(N, P);
    return operator_from_json(load_json(spec));
}

SourceProfile make_source(const std::string& spec, const TimeGrid& grid, double rho) {
    if (is_builtin_source(spec)) return builtin_source(spec, grid, rho);
    SourceProfile g = source_from_json(load_json(spec));
    if (!(g.grid == grid))
        throw ConfigError("g: the profile's grid does not match the run configuration");
    return g;
}

bool ScenarioReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const ScenarioCheck& c) { return c.pass; });
}

namespace {

void push_check(ScenarioReport& rep, std::string name, double tol, double measured, bool pass) {
    rep.checks.push_back(ScenarioCheck{std::move(name), tol, measured, pass});
}

double target_omega(double t) {
    const double d = t - 0.5;
    return d * d;
}

} // namespace

ScenarioReport scenario_example1(double rho, int M, int N, int P) {
    if (!(rho > 0.0 && rho <= 1.0)) throw DomainError("scenario_example1: rho must lie in (0, 1]");
    if (M < 256) throw DomainError("scenario_example1: M must be >= 256");
    const double T = 1.0, t0 = 0.5;
    ScenarioReport rep;
    rep.scenario = "example1";

    TimeGrid grid(T, M);
    SourceProfile g = builtin_source("example1", grid, rho);
    SpectralOperator op = make_operator("dirichlet1d", N, P);

    const double ge0 = example1_endpoint_g(rho, 0.0);
    const double ge1 = example1_endpoint_g(rho, 1.0);
    rep.tables["g_endpoint_form"] = {ge0, ge1};
    rep.tables["g_consistent"] = {example1_consistent_g(rho, 0.0), example1_consistent_g(rho, 1.0)};

    if (rho < 1.0) {
        // Both power terms of g_e vanish at t = 0 for rho < 1, so the value
        // is the exact double 1/4, not merely close to it.
        push_check(rep, "endpoint factor: g(0) = 1/4 exactly", 0.0, std::fabs(ge0 - 0.25),
                   ge0 == 0.25);
        double expected1;
        if (rho == 0.5)
            expected1 = -0.126126389031837524632; // (3 sqrt(pi) - 8) / (12 sqrt(pi))
        else
            expected1 = 1.0 / std::tgamma(3.0 - rho) - 1.0 / std::tgamma(2.0 - rho) + 0.25;
        double dev1 = std::fabs(ge1 - expected1);
        push_check(rep, "endpoint factor: g(1) matches the closed form", 1e-10, dev1,
                   dev1 <= 1e-10);
        if (rho == 0.5)
            push_check(rep, "endpoint factor: g(1) < 0 (sign change on [0,1])", 0.0, ge1,
                       ge1 < 0.0);
    }
    double omega_gap = std::fabs(target_omega(0.0) - target_omega(T));
    push_check(rep, "target factor: omega(0) = omega(T)", 0.0, omega_gap, omega_gap == 0.0);

    ModePartition part = classify_modes(op, g, rho, t0, T);
    std::vector<double> modes_col, scaled_col;
    for (const auto& r : part.records) {
        modes_col.push_back(double(r.k));
        scaled_col.push_back(r.scaled);
    }
    rep.tables["mode"] = modes_col;
    rep.tables["scaled_indicator"] = scaled_col;
    rep.tables["threshold"] = {part.threshold};

    push_check(rep, "mode 1 degeneracy indicator below 1e-5", 1e-5, part.records[0].scaled,
               part.records[0].scaled <= 1e-5);
    if (N >= 2) {
        double worst = std::numeric_limits<double>::infinity();
        for (int k = 2; k <= std::min(8, N); ++k)
            worst = std::min(worst, part.records[size_t(k) - 1].scaled);
        push_check(rep, "competitor modes keep indicator >= 0.01", 0.01, worst, worst >= 0.01);
    }
    bool k0_is_1 = part.K0_rho.size() == 1 && part.K0_rho[0] == 1;
    push_check(rep, "degenerate set is exactly {1}", 1.0, double(part.K0_rho.size()), k0_is_1);

    CoefVector psi(size_t(N), 0.0);
    InverseResult base = solve_inverse(op, g, rho, t0, T, psi);
    double fmax = 0.0, umax = 0.0;
    for (double v : base.f) fmax = std::max(fmax, std::fabs(v));
    for (const auto& traj : base.u.modes)
        for (double v : traj) umax = std::max(umax, std::fabs(v));
    push_check(rep, "zero snapshot: non-unique verdict, vanishing representative", 0.0,
               std::max(fmax, umax),
               base.verdict == InverseVerdict::NonUniqueFamily && fmax == 0.0 && umax == 0.0);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    bool mode1_free = std::binary_search(part.K0_rho.begin(), part.K0_rho.end(), 1);
    if (mode1_free) {
        // amp scales the family member so the physical field is omega(t) sin x
        const double amp = std::sqrt(M_PI / 2.0);
        InverseResult member = solve_inverse(op, g, rho, t0, T, psi, {{1, amp}});
        double dev = 0.0;
        for (int m = 0; m <= M; ++m)
            dev = std::max(dev,
                           std::fabs(member.u.modes[0][size_t(m)] - amp * target_omega(grid.node(m))));
        bool member_ok = member.verdict == InverseVerdict::NonUniqueFamily &&
                         member.free_modes == std::vector<int>{1} && dev <= 5e-4;
        push_check(rep, "family member follows amp * omega(t) on mode 1", 5e-4, dev, member_ok);

        ResidualReport res = residual_check(member.u, member.f, g, rho);
        push_check(rep, "manufactured pair: equation residual", 5e-3, res.pde_residual,
                   res.pde_residual <= 5e-3);
        push_check(rep, "manufactured pair: non-local defect", 1e-8, res.nonlocal_defect,
                   res.nonlocal_defect <= 1e-8);
    } else {
        // without mode 1 degenerate there is no family to exhibit
        push_check(rep, "family member follows amp * omega(t) on mode 1", 5e-4, nan, false);
        push_check(rep, "manufactured pair: equation residual", 5e-3, nan, false);
        push_check(rep, "manufactured pair: non-local defect", 1e-8, nan, false);
    }
    return rep;
}

ScenarioReport scenario_roundtrip(const RunConfig& config) {
    config.validate();
    bool sign_definite = config.g_spec == "const" || config.g_spec == "sin2pi" ||
                         config.g_spec == "ramp";
    if (!sign_definite)
        throw ConfigError(
            "g: the round-trip study needs a sign-definite builtin factor (const, sin2pi, ramp)");
    if (config.M < 512) throw ConfigError("M: the grid study starts at M = 512");

    ScenarioReport rep;
    rep.scenario = "roundtrip";
    SpectralOperator op = make_operator(config.operator_spec, config.N, config.P);
    const int N = op.N();

    std::mt19937_64 rng(config.seed);
    CoefVector f_star(static_cast<size_t>(N));
    for (int k = 1; k <= N; ++k) {
        double sign = (rng() & 1u) ? 1.0 : -1.0;
        f_star[size_t(k) - 1] = sign / (double(k) * k * k);
    }

    auto interp = [](const std::vector<double>& traj, const TimeGrid& grid, double t) {
        double pos = t / grid.dt();
        int cell = std::min(int(pos), grid.M - 1);
        double frac = pos - cell;
        return traj[size_t(cell)] * (1.0 - frac) + traj[size_t(cell) + 1] * frac;
    };
    auto recovery_error = [&](int M, const std::string& g_name, const CoefVector& f_true) {
        TimeGrid grid(config.T, M);
        SourceProfile g = builtin_source(g_name, grid, config.rho);
        ForwardSolution fwd = solve_forward(op, f_true, g, config.rho, grid);
        CoefVector psi(static_cast<size_t>(N));
        for (size_t i = 0; i < psi.size(); ++i) psi[i] = interp(fwd.modes[i], grid, config.t0);
        InverseResult inv =
            solve_inverse(op, g, config.rho, config.t0, config.T, psi, {}, config.tau);
        double worst = 0.0;
        for (size_t i = 0; i < psi.size(); ++i)
            worst = std::max(worst, std::fabs(inv.f[i] - f_true[i]));
        return worst;
    };

    std::vector<double> Ms, errs;
    for (int M = 512; M <= config.M; M *= 2) {
        Ms.push_back(double(M));
        errs.push_back(recovery_error(M, config.g_spec, f_star));
    }
    rep.tables["M"] = Ms;
    rep.tables["recovery_error"] = errs;

    push_check(rep, "planted source recovered at the finest grid", 1e-5, errs.back(),
               errs.back() <= 1e-5);
    double worst_ratio = 0.0;
    bool monotone = true;
    for (size_t i = 1; i < errs.size(); ++i) {
        if (!(errs[i] < errs[i - 1])) monotone = false;
        if (errs[i - 1] > 0.0) worst_ratio = std::max(worst_ratio, errs[i] / errs[i - 1]);
    }
    // an exactly representable snapshot time keeps every error at rounding
    // level; monotonicity is then vacuous, not violated
    bool mono_ok = monotone || errs.back() <= 1e-10;
    push_check(rep, "recovery error shrinks under refinement", 1.0, worst_ratio, mono_ok);

    double cerr = recovery_error(512, "const", f_star);
    push_check(rep, "constant-factor control run", 1e-8, cerr, cerr <= 1e-8);

    CoefVector zero(size_t(N), 0.0);
    double zerr = recovery_error(512, config.g_spec, zero);
    push_check(rep, "zero source round-trips to zero", 0.0, zerr, zerr == 0.0);
    return rep;
}

ScenarioReport scenario_lemma_suite(const std::vector<double>& rho_list) {
    if (rho_list.empty()) throw DomainError("scenario_lemma_suite: need at least one rho");
    for (double rho : rho_list)
        if (!(rho > 0.0 && rho <= 1.0))
            throw DomainError("scenario_lemma_suite: rho must lie in (0, 1]");

    ScenarioReport rep;
    rep.scenario = "lemma-suite";

    double min_gap = std::numeric_limits<double>::infinity();
    for (double rho : rho_list) {
        // cap x for rho = 1 where exp(-x) underflows and gaps degenerate
        const double xmax = (rho == 1.0) ? 300.0 : 1e6;
        const int n = 60;
        double prev = ml_classical(rho, 0.0);
        for (int i = 0; i <= n; ++i) {
            double x = 1e-3 * std::pow(xmax / 1e-3, double(i) / n);
            double cur = ml_classical(rho, x);
            min_gap = std::min(min_gap, prev - cur);
            prev = cur;
        }
    }
    push_check(rep, "relaxation strictly decreasing in x", 0.0, min_gap, min_gap > 0.0);

    struct Pair {
        double rho, mu;
    };
    const Pair pairs[] = {{0.3, 1.0}, {0.5, 1.0}, {0.75, 1.5}};
    double sup = 0.0;
    for (const Pair& p : pairs) {
        const int n = 40;
        for (int i = 0; i <= n; ++i) {
            double x = 10.0 * std::pow(1e4 / 10.0, double(i) / n);
            double lead = 1.0 / (x * std::tgamma(p.mu - p.rho));
            double dev = x * x * std::fabs(ml({p.rho, p.mu, x}).value - lead);
            sup = std::max(sup, dev);
        }
    }
    push_check(rep, "far tail follows the leading algebraic term", 2.0, sup, sup <= 2.0);

    SpectralOperator op = dirichlet_laplacian_1d(64, 512);
    std::vector<double> mins, expects;
    for (double rho : rho_list) {
        TimeGrid grid(1.0, 256);
        SourceProfile g = builtin_source("const", grid, rho);
        ScanReport scan = lower_bound_scan(op, g, rho, 0.5, 1.0);
        double expected = ml_deficit(rho, op.eigenvalues()[0]); // lambda_1 T^rho = 1
        mins.push_back(scan.min_scaled);
        expects.push_back(expected);
        double dev = std::fabs(scan.min_scaled - expected);
        char name[80];
        std::snprintf(name, sizeof name, "constant factor: scan floor identity at rho = %g", rho);
        push_check(rep, name, 1e-8, dev, dev <= 1e-8 && scan.min_scaled > 0.0);
    }
    rep.tables["rho"] = rho_list;
    rep.tables["scan_min"] = mins;
    rep.tables["scan_expected"] = expects;

    {
        TimeGrid grid(1.0, 4096);
        SourceProfile g = builtin_source("example1", grid, 0.5);
        ModePartition part = classify_modes(op, g, 0.5, 0.5, 1.0);
        bool ok = part.K0_rho == std::vector<int>{1};
        push_check(rep, "degenerate set stays {1} at N = 64", 1.0, double(part.K0_rho.size()),
                   ok);
    }
    return rep;
}

json report_to_json(const ScenarioReport& rep) {
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back(json{{"name", c.name},
                              {"tolerance", c.tolerance},
                              {"measured", c.measured},
                              {"pass", c.pass}});
    json tables = json::object();
    for (const auto& [key, column] : rep.tables) tables[key] = column;
    return json{{"scenario", rep.scenario},
                {"checks", std::move(checks)},
                {"tables", std::move(tables)},
                {"all_pass", rep.all_pass()}};
}

std::string format_report(const ScenarioReport& rep) {
    std::ostringstream out;
    out << "scenario " << rep.scenario << "\n";
    for (const auto& c : rep.checks) {
        char line[160];
        std::snprintf(line, sizeof line, "[%s] %-52s measured %-12.6g bound %g\n",
                      c.pass ? "PASS" : "FAIL", c.name.c_str(), c.measured, c.tolerance);
        out << line;
    }
    out << "overall " << (rep.all_pass() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

void emit_report_json(const ScenarioReport& rep, const std::string& path) {
    save_json(report_to_json(rep), path);
}

} // namespace subdiff
