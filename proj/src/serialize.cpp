#include "subdiff/serialize.hpp"

#include "subdiff/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace subdiff {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key))
        throw IOError(std::string(what) + ": missing field '" + key + "'");
    return j.at(key);
}

double as_number(const json& j, const char* what) {
    if (!j.is_number()) throw IOError(std::string(what) + ": expected a number");
    return j.get<double>();
}

int as_int(const json& j, const char* what) {
    if (!j.is_number_integer()) throw IOError(std::string(what) + ": expected an integer");
    return j.get<int>();
}

std::vector<double> as_doubles(const json& j, const char* what) {
    if (!j.is_array()) throw IOError(std::string(what) + ": expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(as_number(e, what));
    return out;
}

TimeGrid grid_from_json(const json& j, const char* what) {
    return TimeGrid(as_number(require(j, "T", what), what), as_int(require(j, "M", what), what));
}

json grid_to_json(const TimeGrid& grid) {
    return json{{"T", grid.T}, {"M", grid.M}};
}

} // namespace

json operator_to_json(const SpectralOperator& op) {
    json grid = json::array();
    for (int i = 0; i < op.N(); ++i) grid.push_back(op.eigenfunction(i));
    return json{{"L", op.length()},
                {"lambda", op.eigenvalues()},
                {"eigenfunction_grid", std::move(grid)}};
}

SpectralOperator operator_from_json(const json& j) {
    const char* what = "operator";
    double L = as_number(require(j, "L", what), what);
    std::vector<double> lambda = as_doubles(require(j, "lambda", what), what);
    const json& rows = require(j, "eigenfunction_grid", what);
    if (!rows.is_array()) throw IOError("operator: 'eigenfunction_grid' must be an array");
    std::vector<std::vector<double>> modes;
    modes.reserve(rows.size());
    for (const auto& row : rows) modes.push_back(as_doubles(row, what));
    return SpectralOperator(L, std::move(lambda), std::move(modes));
}

json source_to_json(const SourceProfile& g) {
    json j{{"grid", grid_to_json(g.grid)},
           {"values", g.values},
           {"smoothness", g.smoothness == Smoothness::C1 ? "C1" : "C0"}};
    if (!g.derivative.empty()) j["derivative"] = g.derivative;
    return j;
}

SourceProfile source_from_json(const json& j) {
    const char* what = "source profile";
    TimeGrid grid = grid_from_json(require(j, "grid", what), what);
    std::vector<double> values = as_doubles(require(j, "values", what), what);
    Smoothness s = Smoothness::C0;
    if (j.contains("smoothness")) {
        const json& tag = j.at("smoothness");
        if (tag == "C0")
            s = Smoothness::C0;
        else if (tag == "C1")
            s = Smoothness::C1;
        else
            throw IOError("source profile: 'smoothness' must be \"C0\" or \"C1\"");
    }
    std::vector<double> deriv;
    if (j.contains("derivative")) deriv = as_doubles(j.at("derivative"), what);
    return SourceProfile(grid, std::move(values), s, std::move(deriv));
}

json solution_to_json(const ForwardSolution& sol) {
    json modes = json::array();
    for (size_t i = 0; i < sol.modes.size(); ++i)
        modes.push_back(json{{"k", int(i) + 1}, {"lambda", sol.lambda[i]}, {"u", sol.modes[i]}});
    return json{{"grid", grid_to_json(sol.grid)}, {"f", sol.f}, {"modes", std::move(modes)}};
}

ForwardSolution solution_from_json(const json& j) {
    const char* what = "solution";
    ForwardSolution sol;
    sol.grid = grid_from_json(require(j, "grid", what), what);
    sol.f = as_doubles(require(j, "f", what), what);
    const json& modes = require(j, "modes", what);
    if (!modes.is_array()) throw IOError("solution: 'modes' must be an array");
    for (const auto& entry : modes) {
        sol.lambda.push_back(as_number(require(entry, "lambda", what), what));
        std::vector<double> u = as_doubles(require(entry, "u", what), what);
        if (u.size() != size_t(sol.grid.M) + 1)
            throw IOError("solution: mode trajectory length does not match the grid");
        sol.modes.push_back(std::move(u));
    }
    if (sol.f.size() != sol.modes.size())
        throw IOError("solution: 'f' and 'modes' disagree on the mode count");
    return sol;
}

json record_to_json(const DeltaRecord& r) {
    return json{{"k", r.k},
                {"lambda", r.lambda},
                {"b_t0", r.b_t0},
                {"b_T", r.b_T},
                {"one_minus_E_T", r.one_minus_E_T},
                {"E_t0", r.E_t0},
                {"delta", r.delta},
                {"scaled", r.scaled}};
}

json partition_to_json(const ModePartition& p) {
    json records = json::array();
    for (const auto& r : p.records) records.push_back(record_to_json(r));
    return json{{"K", p.K_rho},
                {"K0", p.K0_rho},
                {"flagged", p.flagged},
                {"threshold", p.threshold},
                {"records", std::move(records)}};
}

json scan_to_json(const ScanReport& rep) {
    json records = json::array();
    for (const auto& r : rep.records) records.push_back(record_to_json(r));
    return json{{"records", std::move(records)},
                {"min_scaled", rep.min_scaled},
                {"argmin_k", rep.argmin_k},
                {"sign_definite_g", rep.sign_definite_g},
                {"empirical_constant", rep.empirical_constant}};
}

json inverse_to_json(const InverseResult& res) {
    return json{{"f", res.f},
                {"verdict", res.verdict == InverseVerdict::Unique ? "Unique" : "NonUniqueFamily"},
                {"verdict_basis", res.verdict_basis},
                {"free_modes", res.free_modes},
                {"amplification", res.amplification}, // NaN -> null
                {"partition", partition_to_json(res.partition)},
                {"solution", solution_to_json(res.u)}};
}

json ml_to_json(const MLQuery& q, const MLValue& v) {
    return json{{"rho", q.rho},        {"mu", q.mu},
                {"x", q.x},            {"value", v.value},
                {"regime", to_string(v.regime)}, {"est_abs_error", v.est_abs_error}};
}

CoefVector coef_from_json(const json& j, const std::string& key) {
    if (j.is_array()) return as_doubles(j, key.c_str());
    if (j.is_object() && j.contains(key)) return as_doubles(j.at(key), key.c_str());
    throw IOError("coefficient vector: expected an array or an object with '" + key + "'");
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IOError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw IOError("parse error in " + path + ": " + e.what());
    }
}

void save_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IOError("cannot write " + path);
    out << j.dump(2) << '\n';
    if (!out) throw IOError("write failed for " + path);
}

void save_text(const std::string& text, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IOError("cannot write " + path);
    out << text;
    if (!out) throw IOError("write failed for " + path);
}

std::string csv_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void emit_solution_csv(const ForwardSolution& sol, const SpectralOperator& op,
                       const std::string& path) {
    if (sol.modes.size() != size_t(op.N()))
        throw ShapeError("emit_solution_csv: solution and operator disagree on the mode count");
    std::ostringstream out;
    out << "# physical-space trajectory of the non-local solution\n";
    out << "# T=" << csv_double(sol.grid.T) << " M=" << sol.grid.M << " N=" << op.N()
        << " P=" << op.P() << "\n";
    out << "# columns: t";
    for (int i = 0; i <= op.P(); ++i) out << ", u(t,x" << i << ")";
    out << "\n";
    CoefVector c(sol.modes.size());
    for (int m = 0; m <= sol.grid.M; ++m) {
        for (size_t i = 0; i < sol.modes.size(); ++i) c[i] = sol.modes[i][size_t(m)];
        std::vector<double> phys = op.synthesize(c);
        out << csv_double(sol.grid.node(m));
        for (double v : phys) out << ',' << csv_double(v);
        out << '\n';
    }
    save_text(out.str(), path);
}

void emit_scan_csv(const ScanReport& rep, const std::string& path) {
    std::ostringstream out;
    out << "# per-mode degeneracy scan, min_scaled=" << csv_double(rep.min_scaled)
        << " at k=" << rep.argmin_k << "\n";
    out << "# columns: k, lambda, b_t0, b_T, one_minus_E_T, E_t0, delta, scaled\n";
    for (const auto& r : rep.records) {
        out << r.k << ',' << csv_double(r.lambda) << ',' << csv_double(r.b_t0) << ','
            << csv_double(r.b_T) << ',' << csv_double(r.one_minus_E_T) << ','
            << csv_double(r.E_t0) << ',' << csv_double(r.delta) << ',' << csv_double(r.scaled)
            << '\n';
    }
    save_text(out.str(), path);
}

} // namespace subdiff
