#include "psbound/report_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace psbound {

const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::PreconditionUnmet: return "precondition-unmet";
        case CheckStatus::Inconclusive: return "inconclusive";
        case CheckStatus::Informative: return "informative";
    }
    return "?";
}

CheckReport make_check(std::string label, double lhs, double rhs, double tolerance) {
    CheckReport r;
    r.label = std::move(label);
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = rhs - lhs;
    r.tolerance = tolerance;
    r.passed = r.margin >= -tolerance;
    r.status = r.passed ? CheckStatus::Pass : CheckStatus::Fail;
    return r;
}

nlohmann::json matrix_to_json(const HermitianMatrix& A) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < A.dim(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < A.dim(); ++j)
            row.push_back({A(i, j).real(), A(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return {{"dim", A.dim()}, {"entries", std::move(rows)}};
}

HermitianMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
        throw SpecError("matrix JSON must carry \"dim\" and \"entries\"");
    const int n = j.at("dim").get<int>();
    if (n < 1) throw SpecError("matrix JSON: dim must be >= 1");
    const auto& rows = j.at("entries");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw SpecError("matrix JSON: entries are not square");

    std::vector<Complex> e(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        const auto& row = rows.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw SpecError("matrix JSON: entries are not square");
        for (int jj = 0; jj < n; ++jj) {
            const auto& cell = row.at(jj);
            if (!cell.is_array() || cell.size() != 2)
                throw SpecError("matrix JSON: each entry must be [re, im]");
            e[static_cast<size_t>(i) * n + jj] =
                Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
        }
    }

    double max_abs = 0.0, max_asym = 0.0;
    for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj) {
            max_abs = std::max(max_abs, std::abs(e[static_cast<size_t>(i) * n + jj]));
            max_asym = std::max(max_asym, std::abs(e[static_cast<size_t>(i) * n + jj] -
                                                   std::conj(e[static_cast<size_t>(jj) * n + i])));
        }
    if (max_asym > 1e-8 * (1.0 + max_abs))
        throw SpecError("matrix JSON: input is not Hermitian (relative asymmetry beyond 1e-8)");

    return HermitianMatrix(n, std::move(e));
}

HermitianMatrix load_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open matrix file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SpecError("cannot parse matrix file " + path + ": " + e.what());
    }
    return matrix_from_json(j);
}

void save_matrix_file(const HermitianMatrix& A, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw SpecError("cannot write matrix file: " + path);
    out << matrix_to_json(A).dump(2) << "\n";
}

nlohmann::json check_to_json(const CheckReport& r) {
    nlohmann::json j{{"label", r.label},
                     {"lhs", r.lhs},
                     {"rhs", r.rhs},
                     {"margin", r.margin},
                     {"tolerance", r.tolerance},
                     {"passed", r.passed},
                     {"status", to_string(r.status)}};
    if (r.seed) j["seed"] = *r.seed;
    if (!r.witness.empty()) {
        nlohmann::json w;
        for (const auto& [name, m] : r.witness) w[name] = matrix_to_json(m);
        j["witness"] = std::move(w);
    }
    return j;
}

namespace {

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace

std::string check_csv_header() { return "label,lhs,rhs,margin,tolerance,passed,status,seed"; }

std::string check_to_csv(const CheckReport& r) {
    std::ostringstream s;
    s << '"' << r.label << "\"," << fmt_double(r.lhs) << ',' << fmt_double(r.rhs) << ','
      << fmt_double(r.margin) << ',' << fmt_double(r.tolerance) << ','
      << (r.passed ? "true" : "false") << ',' << to_string(r.status) << ',';
    if (r.seed) s << *r.seed;
    return s.str();
}

namespace {

DiscreteMeasureSpec measure_from_json(const nlohmann::json& j) {
    DiscreteMeasureSpec spec;
    spec.alpha = j.value("alpha", 0.0);
    spec.beta = j.value("beta", 0.0);
    if (j.contains("atoms"))
        for (const auto& atom : j.at("atoms"))
            spec.atoms.emplace_back(atom.at(0).get<double>(), atom.at(1).get<double>());
    return spec;
}

} // namespace

ScalarFunction function_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw SpecError("function JSON must carry \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "power") return ScalarFunction::power(j.at("s").get<double>());
    if (kind == "lambert_w") return ScalarFunction::lambert_w();
    if (kind == "algebraic_example") return ScalarFunction::algebraic_example();
    if (kind == "identity") return ScalarFunction::identity();
    if (kind == "constant") return ScalarFunction::constant(j.at("c").get<double>());
    if (kind == "log") return ScalarFunction::log();
    if (kind == "neg_log1p") return ScalarFunction::neg_log1p();
    if (kind == "reciprocal") return ScalarFunction::reciprocal();
    if (kind == "sqrt") return ScalarFunction::sqrt();
    if (kind == "measure") {
        const bool monotone = j.value("monotone", true);
        return from_discrete_measure(monotone ? MeasureKind::Monotone : MeasureKind::Decreasing,
                                     measure_from_json(j));
    }
    throw SpecError("function JSON: unknown kind \"" + kind + "\"");
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw SpecError("cannot parse " + what + ": \"" + s + "\"");
    }
}

DiscreteMeasureSpec measure_from_tokens(const std::vector<std::string>& parts, size_t first_atom,
                                        double alpha, double beta) {
    DiscreteMeasureSpec spec;
    spec.alpha = alpha;
    spec.beta = beta;
    for (size_t i = first_atom; i < parts.size(); ++i) {
        const auto lw = split(parts[i], ',');
        if (lw.size() != 2) throw SpecError("measure atom must look like \"lambda,weight\"");
        spec.atoms.emplace_back(parse_double(lw[0], "atom lambda"),
                                parse_double(lw[1], "atom weight"));
    }
    return spec;
}

} // namespace

ScalarFunction function_from_string(const std::string& text) {
    const auto parts = split(text, ':');
    const std::string& kind = parts[0];
    if (kind == "power" && parts.size() == 2)
        return ScalarFunction::power(parse_double(parts[1], "power exponent"));
    if (kind == "constant" && parts.size() == 2)
        return ScalarFunction::constant(parse_double(parts[1], "constant value"));
    if (parts.size() == 1) {
        if (kind == "lambert_w") return ScalarFunction::lambert_w();
        if (kind == "algebraic_example") return ScalarFunction::algebraic_example();
        if (kind == "identity") return ScalarFunction::identity();
        if (kind == "log") return ScalarFunction::log();
        if (kind == "neg_log1p") return ScalarFunction::neg_log1p();
        if (kind == "reciprocal") return ScalarFunction::reciprocal();
        if (kind == "sqrt") return ScalarFunction::sqrt();
    }
    if (kind == "measure_mon" && parts.size() >= 3)
        return from_discrete_measure(
            MeasureKind::Monotone,
            measure_from_tokens(parts, 3, parse_double(parts[1], "measure alpha"),
                                parse_double(parts[2], "measure beta")));
    if (kind == "measure_dec" && parts.size() >= 2)
        return from_discrete_measure(
            MeasureKind::Decreasing,
            measure_from_tokens(parts, 2, parse_double(parts[1], "measure alpha"), 0.0));
    throw SpecError("unknown function spec \"" + text + "\"");
}

void write_curve_csv(const ScalarFunction& f, const std::string& path, double x_max, int points) {
    std::ofstream out(path);
    if (!out) throw SpecError("cannot write curve file: " + path);
    out << "x,f,g\n";

    bool have_g = true;
    ScalarFunction g = ScalarFunction::identity();
    try {
        g = companion_g(f);
    } catch (const Error&) {
        have_g = false;
    }

    for (int i = 0; i < points; ++i) {
        const double x = x_max * i / (points - 1);
        out << fmt_double(x) << ',';
        try {
            out << fmt_double(f.eval(x));
        } catch (const Error&) {
            out << "nan";
        }
        out << ',';
        if (have_g) {
            try {
                out << fmt_double(g.eval(x));
            } catch (const Error&) {
                out << "nan";
            }
        } else {
            out << "nan";
        }
        out << '\n';
    }
}

std::string sanitize_for_filename(const std::string& name) {
    std::string out;
    for (char c : name) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_')
            out += c;
        else
            out += '_';
    }
    return out;
}

} // namespace psbound
