#pragma once

#include "subdiff/forward.hpp"
#include "subdiff/inverse.hpp"
#include "subdiff/mittag_leffler.hpp"
#include "subdiff/spectral.hpp"

#include <json.hpp>

#include <string>

namespace subdiff {

/*
 * JSON schemas.  All of them round-trip through the corresponding
 * *_from_json, and every emitter is deterministic: the same inputs produce
 * byte-identical output.  NaN serializes as null (amplification entries for
 * zero data).
 *
 *   operator  {"L": 3.14.., "lambda": [..], "eigenfunction_grid": [[..], ..]}
 *   source    {"grid": {"T":, "M":}, "values": [..], "smoothness": "C0"|"C1",
 *              "derivative": [..]?}
 *   solution  {"grid": {"T":, "M":}, "f": [..],
 *              "modes": [{"k":, "lambda":, "u": [..]}, ..]}
 */
nlohmann::json operator_to_json(const SpectralOperator& op);
SpectralOperator operator_from_json(const nlohmann::json& j);

nlohmann::json source_to_json(const SourceProfile& g);
SourceProfile source_from_json(const nlohmann::json& j);

nlohmann::json solution_to_json(const ForwardSolution& sol);
ForwardSolution solution_from_json(const nlohmann::json& j);

nlohmann::json record_to_json(const DeltaRecord& r);
nlohmann::json partition_to_json(const ModePartition& p);
nlohmann::json scan_to_json(const ScanReport& rep);
nlohmann::json inverse_to_json(const InverseResult& res);
nlohmann::json ml_to_json(const MLQuery& q, const MLValue& v);

// Coefficient vectors are accepted either as a bare array or wrapped in an
// object under the given key ("f" or "psi").
CoefVector coef_from_json(const nlohmann::json& j, const std::string& key);

// File layer; every failure (open, parse, write) surfaces as IOError with
// the path in the message.
nlohmann::json load_json(const std::string& path);
void save_json(const nlohmann::json& j, const std::string& path);
void save_text(const std::string& text, const std::string& path);

// round-trip exact decimal (17 significant digits) for CSV cells
std::string csv_double(double v);

// Physical-space trajectory: one row per time node, columns t then u(t, x_i)
// on the operator grid.  Lines starting with '#' describe the layout.
void emit_solution_csv(const ForwardSolution& sol, const SpectralOperator& op,
                       const std::string& path);
// One row per mode: k, lambda, b_t0, b_T, one_minus_E_T, E_t0, delta, scaled.
void emit_scan_csv(const ScanReport& rep, const std::string& path);

} // namespace subdiff
