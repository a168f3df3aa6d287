#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "psbound/hermitian.hpp"
#include "psbound/report.hpp"
#include "psbound/scalar_function.hpp"

namespace psbound {

/// Matrix JSON format: {"dim": n, "entries": [[[re, im], ...], ...]} row-major.
nlohmann::json matrix_to_json(const HermitianMatrix& A);

/// Rejects non-square input and relative asymmetry beyond 1e-8.
HermitianMatrix matrix_from_json(const nlohmann::json& j);

HermitianMatrix load_matrix_file(const std::string& path);
void save_matrix_file(const HermitianMatrix& A, const std::string& path);

nlohmann::json check_to_json(const CheckReport& r);

/// CSV row with columns label,lhs,rhs,margin,tolerance,passed,status,seed.
std::string check_csv_header();
std::string check_to_csv(const CheckReport& r);

/// Function spec JSON: {"kind": "power", "s": 0.5}, {"kind": "lambert_w"},
/// {"kind": "algebraic_example"}, {"kind": "measure", "monotone": true,
/// "alpha": 0, "beta": 1, "atoms": [[1.0, 1.0]]}, plus the other catalog
/// kinds by name.
ScalarFunction function_from_json(const nlohmann::json& j);

/// Compact CLI form: "power:0.5", "lambert_w", "algebraic_example",
/// "constant:2", "measure_mon:<alpha>:<beta>[:l,w]*", "measure_dec:<alpha>[:l,w]*",
/// and the named kinds (identity, sqrt, reciprocal, log, neg_log1p).
ScalarFunction function_from_string(const std::string& text);

/// Writes per-point CSV "x,f,g" samples of f and its companion g (fields are
/// "nan" where an endpoint convention does not apply).
void write_curve_csv(const ScalarFunction& f, const std::string& path, double x_max = 6.0,
                     int points = 301);

std::string sanitize_for_filename(const std::string& name);

} // namespace psbound
