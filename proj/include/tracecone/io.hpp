#pragma once

// Instance and report documents. Both are JSON; matrices are row-major lists
// of rows and each complex entry is a two-element [re, im] array.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tracecone/algebra.hpp"
#include "tracecone/geometry.hpp"
#include "tracecone/unitarization.hpp"

namespace tracecone {

using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

enum class Role { generator, point, candidate };

inline std::string_view to_string(Role role) noexcept {
    switch (role) {
        case Role::generator: return "generator";
        case Role::point: return "point";
        case Role::candidate: return "candidate";
    }
    return "point";
}

inline Role parse_role(const std::string& text) {
    if (text == "generator") return Role::generator;
    if (text == "point") return Role::point;
    if (text == "candidate") return Role::candidate;
    throw Error(Errc::parse_error, "unknown role '" + text + "'");
}

struct NamedElement {
    std::string name;
    Role role = Role::point;
    AlgebraElement value;
};

struct Instance {
    AlgebraPtr algebra;
    std::vector<NamedElement> elements;

    const NamedElement& get(const std::string& name) const {
        for (const auto& e : elements) {
            if (e.name == name) return e;
        }
        throw Error(Errc::invalid_argument, "no element named '" + name + "'");
    }

    std::vector<AlgebraElement> with_role(Role role) const {
        std::vector<AlgebraElement> out;
        for (const auto& e : elements) {
            if (e.role == role) out.push_back(e.value);
        }
        return out;
    }
};

inline Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json element_to_json(const AlgebraElement& x) {
    Json blocks = Json::array();
    for (const auto& m : x.blocks()) blocks.push_back(matrix_to_json(m));
    return blocks;
}

inline Json algebra_to_json(const BlockAlgebra& algebra) {
    Json blocks = Json::array();
    for (std::size_t i = 0; i < algebra.block_count(); ++i) {
        blocks.push_back({{"dim", algebra.dim(i)}, {"weight", algebra.weight(i)}});
    }
    return {{"blocks", std::move(blocks)}};
}

namespace detail {

inline double json_number(const Json& value, const std::string& where) {
    if (!value.is_number()) throw Error(Errc::parse_error, where + ": expected a number");
    return value.get<double>();
}

inline Matrix matrix_from_json(const Json& rows, Index n, const std::string& where) {
    if (!rows.is_array() || static_cast<Index>(rows.size()) != n) {
        throw Error(Errc::parse_error, where + ": expected " + std::to_string(n) + " rows");
    }
    Matrix m(n, n);
    for (Index i = 0; i < n; ++i) {
        const Json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != n) {
            throw Error(Errc::parse_error, where + ": row " + std::to_string(i) + " needs " + std::to_string(n) + " entries");
        }
        for (Index j = 0; j < n; ++j) {
            const Json& entry = row[static_cast<std::size_t>(j)];
            if (!entry.is_array() || entry.size() != 2) {
                throw Error(Errc::parse_error, where + ": entries must be [re, im] pairs");
            }
            m(i, j) = Complex(json_number(entry[0], where), json_number(entry[1], where));
        }
    }
    return m;
}

}  // namespace detail

inline AlgebraElement element_from_json(const AlgebraPtr& algebra, const Json& blocks, const std::string& where) {
    if (!blocks.is_array() || blocks.size() != algebra->block_count()) {
        throw Error(Errc::parse_error, where + ": expected " + std::to_string(algebra->block_count()) + " blocks");
    }
    std::vector<Matrix> out;
    for (std::size_t b = 0; b < algebra->block_count(); ++b) {
        out.push_back(detail::matrix_from_json(blocks[b], algebra->dim(b), where + " block " + std::to_string(b)));
    }
    return {algebra, std::move(out)};
}

/// Weights must be positive and sum to 1 within 1e-9; they are then rescaled
/// to sum to 1 exactly.
inline AlgebraPtr algebra_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("blocks") || !doc["blocks"].is_array() || doc["blocks"].empty()) {
        throw Error(Errc::parse_error, "algebra needs a non-empty 'blocks' array");
    }
    std::vector<Index> dims;
    std::vector<double> weights;
    double total = 0.0;
    for (const auto& block : doc["blocks"]) {
        if (!block.is_object() || !block.contains("dim") || !block.contains("weight") ||
            !block["dim"].is_number_integer()) {
            throw Error(Errc::parse_error, "each block needs an integer 'dim' and a 'weight'");
        }
        dims.push_back(block["dim"].get<Index>());
        weights.push_back(detail::json_number(block["weight"], "block weight"));
        if (!(weights.back() > 0.0)) throw Error(Errc::invalid_algebra, "trace weights must be positive");
        total += weights.back();
    }
    if (!(std::abs(total - 1.0) <= 1e-9)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "trace not normalized: weights sum to " << total;
        throw Error(Errc::invalid_algebra, msg.str());
    }
    for (auto& w : weights) w /= total;
    return BlockAlgebra::make(std::move(dims), std::move(weights));
}

inline Json instance_to_json(const Instance& instance) {
    Json elements = Json::object();
    for (const auto& e : instance.elements) {
        elements[e.name] = {{"role", std::string(to_string(e.role))}, {"blocks", element_to_json(e.value)}};
    }
    return {{"schema", schema_version}, {"algebra", algebra_to_json(*instance.algebra)}, {"elements", elements}};
}

inline Instance instance_from_json(const Json& doc) {
    if (!doc.is_object()) throw Error(Errc::parse_error, "instance must be a JSON object");
    if (doc.contains("schema") && doc["schema"] != schema_version) {
        throw Error(Errc::parse_error, "unsupported instance schema");
    }
    if (!doc.contains("algebra")) throw Error(Errc::parse_error, "instance has no 'algebra'");
    Instance instance{algebra_from_json(doc["algebra"]), {}};
    if (doc.contains("elements")) {
        if (!doc["elements"].is_object()) throw Error(Errc::parse_error, "'elements' must be an object");
        for (const auto& item : doc["elements"].items()) {
            const std::string& name = item.key();
            const Json& body = item.value();
            if (!body.is_object() || !body.contains("blocks")) {
                throw Error(Errc::parse_error, "element '" + name + "' needs 'blocks'");
            }
            const Role role = body.contains("role") ? parse_role(body["role"].get<std::string>()) : Role::point;
            instance.elements.push_back({name, role, element_from_json(instance.algebra, body["blocks"], name)});
        }
    }
    return instance;
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::parse_error, "cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::parse_error, path + ": " + e.what());
    }
}

inline void write_json_file(const std::string& path, const Json& doc) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::invalid_argument, "cannot write '" + path + "'");
    out << doc.dump(2) << '\n';
}

inline Instance read_instance(const std::string& path) { return instance_from_json(read_json_file(path)); }

inline void write_instance(const std::string& path, const Instance& instance) {
    write_json_file(path, instance_to_json(instance));
}

enum class CheckStatus { pass, fail, warn };

inline std::string_view to_string(CheckStatus status) noexcept {
    switch (status) {
        case CheckStatus::pass: return "PASS";
        case CheckStatus::fail: return "FAIL";
        case CheckStatus::warn: return "WARN";
    }
    return "FAIL";
}

struct CheckRecord {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    double measured = 0.0;
    /// Absent for informational records.
    std::optional<double> tolerance;
};

/// Records with measured <= tolerance pass.
inline CheckRecord make_check(std::string name, double measured, double tolerance) {
    const bool ok = std::isfinite(measured) && measured <= tolerance;
    return {std::move(name), ok ? CheckStatus::pass : CheckStatus::fail, measured, tolerance};
}

/// Informational record: passes when finite, warns otherwise.
inline CheckRecord make_info(std::string name, double measured) {
    return {std::move(name), std::isfinite(measured) ? CheckStatus::pass : CheckStatus::warn, measured, std::nullopt};
}

inline Json number_or_null(double value) { return std::isfinite(value) ? Json(value) : Json(nullptr); }

inline Json check_to_json(const CheckRecord& check) {
    return {{"name", check.name},
            {"status", std::string(to_string(check.status))},
            {"measured", number_or_null(check.measured)},
            {"tolerance", check.tolerance ? number_or_null(*check.tolerance) : Json(nullptr)}};
}

inline Json certificate_to_json(const UnitarizationCertificate& cert) {
    return {{"method", std::string(to_string(cert.method))},
            {"converged", cert.converged},
            {"group_order", cert.group_order},
            {"orbit_size", cert.orbit_size},
            {"iterations", cert.iterations},
            {"band", Json::array({cert.band.c1, cert.band.c2})},
            {"residual_unitarity", cert.residual_unitarity},
            {"residual_fixed_point", cert.residual_fixed_point},
            {"orbit_band_ok", cert.orbit_band_ok},
            {"unitarizer_band_ok", cert.unitarizer_band_ok},
            {"center", element_to_json(cert.center.element())},
            {"unitarizer", element_to_json(cert.unitarizer)}};
}

struct Report {
    std::string command;
    Json options = Json::object();
    std::optional<std::uint64_t> seed;
    std::vector<CheckRecord> checks;
    std::optional<Json> certificate;
    Json payload = Json::object();
    double seconds = 0.0;

    bool all_pass() const {
        return std::none_of(checks.begin(), checks.end(),
                            [](const CheckRecord& c) { return c.status == CheckStatus::fail; });
    }

    Json to_json() const {
        Json doc{{"schema", schema_version}, {"command", command}, {"options", options}};
        doc["seed"] = seed ? Json(*seed) : Json(nullptr);
        Json list = Json::array();
        for (const auto& c : checks) list.push_back(check_to_json(c));
        doc["checks"] = std::move(list);
        if (certificate) doc["certificate"] = *certificate;
        if (!payload.empty()) doc["result"] = payload;
        doc["timing"] = {{"seconds", seconds}};
        return doc;
    }
};

/// Human-readable block listing with 12 significant digits; imaginary parts
/// are shown only for blocks that have any.
inline void print_element(std::ostream& out, const AlgebraElement& x) {
    const auto old_precision = out.precision(12);
    for (std::size_t b = 0; b < x.block_count(); ++b) {
        const Matrix& m = x.block(b);
        const bool complex_block = m.imag().cwiseAbs().maxCoeff() > 0.0;
        out << "block " << b << " (" << m.rows() << "x" << m.cols() << "):\n";
        for (Index i = 0; i < m.rows(); ++i) {
            out << " ";
            for (Index j = 0; j < m.cols(); ++j) {
                out << ' ';
                if (complex_block) {
                    out << '(' << m(i, j).real() << ", " << m(i, j).imag() << ')';
                } else {
                    out << m(i, j).real();
                }
            }
            out << '\n';
        }
    }
    out.precision(old_precision);
}

}  // namespace tracecone
