#pragma once

// JSON encodings: bound reports, bundle descriptor files, bundle point pairs.

#include <nlohmann/json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "paramtc/bounds.hpp"
#include "paramtc/bundle.hpp"
#include "paramtc/errors.hpp"
#include "paramtc/planner.hpp"

namespace paramtc {

using Json = nlohmann::ordered_json;

/// Malformed or unsupported input document.
struct FormatError : Error {
    using Error::Error;
};

namespace detail {
inline void require_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw FormatError(where + ": expected an object");
    for (const auto& [k, v] : j.items())
        if (!allowed.contains(k)) throw FormatError(where + ": unknown key '" + k + "'");
}

template <class T>
T get_as(const Json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) throw FormatError(where + ": missing key '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(where + "." + key + ": " + e.what());
    }
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Reports

inline Json to_json(const TCReport& r) {
    Json j;
    j["quantity"] = to_string(r.quantity);
    j["lower"] = r.lower;
    j["upper"] = r.upper ? Json(*r.upper) : Json(nullptr);
    j["exact"] = r.exact();
    j["sharper_than_published"] = r.sharper_than_published;
    Json prov = Json::array();
    for (const auto& p : r.provenance) {
        Json e;
        e["rule"] = p.rule;
        e["citation"] = p.citation;
        e["contribution"] = p.contribution;
        e["side"] = to_string(p.side);
        e["value"] = p.value;
        prov.push_back(std::move(e));
    }
    j["provenance"] = std::move(prov);
    j["notes"] = r.notes;
    return j;
}

inline TCReport report_from_json(const Json& j) {
    const std::string where = "report";
    detail::require_keys(j, {"quantity", "lower", "upper", "exact", "sharper_than_published", "provenance", "notes"},
                         where);
    TCReport r;
    auto q = quantity_from_string(detail::get_as<std::string>(j, "quantity", where));
    if (!q) throw FormatError("report: unknown quantity");
    r.quantity = *q;
    r.lower = detail::get_as<int>(j, "lower", where);
    if (!j.contains("upper")) throw FormatError("report: missing key 'upper'");
    if (!j.at("upper").is_null()) r.upper = detail::get_as<int>(j, "upper", where);
    r.sharper_than_published = detail::get_as<bool>(j, "sharper_than_published", where);
    for (const auto& e : j.at("provenance")) {
        detail::require_keys(e, {"rule", "citation", "contribution", "side", "value"}, "provenance entry");
        auto side = bound_side_from_string(detail::get_as<std::string>(e, "side", "provenance entry"));
        if (!side) throw FormatError("provenance entry: unknown side");
        r.provenance.push_back({detail::get_as<std::string>(e, "rule", "provenance entry"),
                                detail::get_as<std::string>(e, "citation", "provenance entry"),
                                detail::get_as<std::string>(e, "contribution", "provenance entry"), *side,
                                detail::get_as<int>(e, "value", "provenance entry")});
    }
    r.notes = detail::get_as<std::vector<std::string>>(j, "notes", where);
    if (detail::get_as<bool>(j, "exact", where) != r.exact()) throw FormatError("report: inconsistent exact flag");
    return r;
}

// ---------------------------------------------------------------------------
// Bundle descriptor documents
//
//   {"base": {"family": "CP", "n": 2},
//    "construction": {"sum": [{"canonical": {}}, {"trivial": 1}]},
//    "flags": {"complex_structure": false, "independent_sections": 0}}

inline BaseSpace base_from_json(const Json& j) {
    detail::require_keys(j, {"family", "n", "dims"}, "base");
    const auto family = detail::get_as<std::string>(j, "family", "base");
    if (family == "point") {
        if (j.contains("n") || j.contains("dims")) throw FormatError("base: point takes no parameters");
        return BaseSpace::point();
    }
    if (family == "CP") {
        if (j.contains("dims")) throw FormatError("base: CP takes 'n', not 'dims'");
        const int n = detail::get_as<int>(j, "n", "base");
        if (n < 1) throw FormatError("base: CP needs n >= 1");
        return BaseSpace::projective_space(n);
    }
    if (family == "CP-product") {
        if (j.contains("n")) throw FormatError("base: CP-product takes 'dims', not 'n'");
        auto dims = detail::get_as<std::vector<int>>(j, "dims", "base");
        for (int d : dims)
            if (d < 1) throw FormatError("base: CP-product factors need n >= 1");
        if (dims.empty()) throw FormatError("base: CP-product needs at least one factor");
        return BaseSpace::projective_product(dims);
    }
    throw FormatError("base: unknown family '" + family + "'");
}

inline BundleDescriptor construction_from_json(const Json& j, const BaseSpace& base) {
    if (!j.is_object() || j.size() != 1)
        throw FormatError("construction node must be an object with exactly one key");
    const auto& [kind, body] = *j.items().begin();
    if (kind == "canonical") {
        if (body.is_null()) return BundleDescriptor::canonical_line(base);
        detail::require_keys(body, {"factor"}, "canonical");
        const int factor = body.contains("factor") ? detail::get_as<int>(body, "factor", "canonical") : 0;
        if (factor < 0 || static_cast<std::size_t>(factor) >= base.ring().size())
            throw FormatError("canonical: factor out of range");
        return BundleDescriptor::canonical_line(base, static_cast<std::size_t>(factor));
    }
    if (kind == "trivial") {
        if (!body.is_number_integer() || body.get<int>() < 1)
            throw FormatError("trivial: rank must be a positive integer");
        return trivial_bundle(base, body.get<int>());
    }
    if (kind == "sum") {
        if (!body.is_array() || body.empty()) throw FormatError("sum: expected a non-empty array");
        BundleDescriptor acc = construction_from_json(body.front(), base);
        for (std::size_t i = 1; i < body.size(); ++i) acc = whitney_sum(acc, construction_from_json(body[i], base));
        return acc;
    }
    throw FormatError("construction: unknown node '" + kind + "'");
}

inline BundleDescriptor bundle_from_json(const Json& j) {
    detail::require_keys(j, {"base", "construction", "flags"}, "descriptor");
    if (!j.contains("base") || !j.contains("construction"))
        throw FormatError("descriptor: needs 'base' and 'construction'");
    const BaseSpace base = base_from_json(j.at("base"));
    BundleDescriptor b = construction_from_json(j.at("construction"), base);
    if (j.contains("flags")) {
        const auto& f = j.at("flags");
        detail::require_keys(f, {"complex_structure", "independent_sections"}, "flags");
        const bool cs = f.contains("complex_structure") && detail::get_as<bool>(f, "complex_structure", "flags");
        const int secs = f.contains("independent_sections") ? detail::get_as<int>(f, "independent_sections", "flags") : 0;
        try {
            b = b.with_declared(cs, secs);
        } catch (const DomainError& e) {
            throw FormatError(std::string("flags: ") + e.what());
        }
    }
    return b;
}

inline Json read_json_argument(const std::string& inline_or_path) {
    std::string text = inline_or_path;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || text[first] != '{') {
        std::ifstream in(inline_or_path);
        if (!in) throw FormatError("cannot read '" + inline_or_path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Bundle points: complex vectors are arrays of [re, im] pairs.

inline CVector complex_vector_from_json(const Json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw FormatError(where + ": expected a non-empty array of [re, im]");
    CVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& c = j[i];
        if (c.is_number()) {
            v[i] = Complex(c.get<double>(), 0.0);
        } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
            v[i] = Complex(c[0].get<double>(), c[1].get<double>());
        } else {
            throw FormatError(where + "[" + std::to_string(i) + "]: expected [re, im]");
        }
    }
    return v;
}

inline Json to_json(const CVector& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back({v[i].real(), v[i].imag()});
    return a;
}

inline BundlePoint bundle_point_from_json(const Json& j, const std::string& where) {
    detail::require_keys(j, {"z", "w", "s"}, where);
    for (const char* k : {"z", "w", "s"})
        if (!j.contains(k)) throw FormatError(where + ": missing key '" + k + "'");
    try {
        ProjectiveRep z(complex_vector_from_json(j.at("z"), where + ".z"));
        return BundlePoint(z, complex_vector_from_json(j.at("w"), where + ".w"), detail::get_as<double>(j, "s", where));
    } catch (const DomainError& e) {
        throw FormatError(where + ": " + e.what());
    }
}

inline std::pair<BundlePoint, BundlePoint> bundle_pair_from_json(const Json& j) {
    detail::require_keys(j, {"x", "y"}, "pair");
    if (!j.contains("x") || !j.contains("y")) throw FormatError("pair: needs 'x' and 'y'");
    return {bundle_point_from_json(j.at("x"), "x"), bundle_point_from_json(j.at("y"), "y")};
}

/// Hopf pairs: {"x": {"z": [...]}, "y": {"z": [...]}} with unit vectors of C^{n+1}.
inline std::pair<CVector, CVector> hopf_pair_from_json(const Json& j) {
    detail::require_keys(j, {"x", "y"}, "pair");
    if (!j.contains("x") || !j.contains("y")) throw FormatError("pair: needs 'x' and 'y'");
    auto read = [](const Json& p, const std::string& where) {
        detail::require_keys(p, {"z"}, where);
        if (!p.contains("z")) throw FormatError(where + ": missing key 'z'");
        return complex_vector_from_json(p.at("z"), where + ".z");
    };
    return {read(j.at("x"), "x"), read(j.at("y"), "y")};
}

inline Json to_json(const BundlePoint& p) {
    Json j;
    j["z"] = to_json(p.base().z());
    j["w"] = to_json(p.w());
    j["s"] = p.s();
    return j;
}

inline Json to_json(const FiberVector& v) {
    Json j;
    j["w"] = to_json(v.w);
    j["s"] = v.s;
    return j;
}

}  // namespace paramtc
