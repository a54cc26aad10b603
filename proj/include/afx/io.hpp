#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "afx/criticality.hpp"
#include "afx/extremals.hpp"
#include "afx/toric.hpp"

namespace afx {

// Insertion-ordered JSON keeps report keys in the documented order, making
// emission byte-deterministic.
using Json = nlohmann::ordered_json;

// Rationals cross the interface as exact strings "p" or "p/q"; integer JSON
// numbers are accepted on input. Floats never parse.
inline Rational rational_from_json(const Json& j, std::vector<std::string>* warnings = nullptr) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_number()) throw input_error("floating point numbers are not accepted: " + j.dump());
    if (!j.is_string()) throw input_error("expected an integer or a rational string, got " + j.dump());
    const auto s = j.get<std::string>();
    Rational r = parse_rational(s);
    if (warnings && !is_canonical_literal(s))
        warnings->push_back("normalized \"" + s + "\" to \"" + emit_rational(r) + "\"");
    return r;
}

inline Json rational_to_json(const Rational& r) {
    Integer num = boost::multiprecision::numerator(r);
    if (boost::multiprecision::denominator(r) == 1 &&
        num >= std::numeric_limits<std::int64_t>::min() &&
        num <= std::numeric_limits<std::int64_t>::max())
        return Json(num.convert_to<std::int64_t>());
    return Json(emit_rational(r));
}

inline Json rational_string(const Rational& r) { return Json(emit_rational(r)); }

inline Json vector_to_json(const RatVector& v) {
    Json a = Json::array();
    for (const auto& c : v) a.push_back(rational_to_json(c));
    return a;
}

inline Json vector_strings(const RatVector& v) {
    Json a = Json::array();
    for (const auto& c : v) a.push_back(rational_string(c));
    return a;
}

inline Json int_vector_to_json(const IntVector& v) {
    Json a = Json::array();
    for (const auto& c : v) a.push_back(rational_to_json(Rational(c)));
    return a;
}

inline VPolytope polytope_from_json(const Json& j, std::vector<std::string>* warnings = nullptr) {
    if (!j.is_object() || !j.contains("ambient_dim") || !j.contains("points"))
        throw input_error("polytope: expected {\"ambient_dim\": n, \"points\": [[..],..]}");
    if (!j["ambient_dim"].is_number_integer() || j["ambient_dim"].get<std::int64_t>() <= 0)
        throw input_error("polytope: ambient_dim must be a positive integer");
    const auto n = j["ambient_dim"].get<std::size_t>();
    if (!j["points"].is_array() || j["points"].empty())
        throw input_error("polytope: points must be a nonempty array");
    std::vector<RatVector> pts;
    for (const auto& row : j["points"]) {
        if (!row.is_array() || row.size() != n)
            throw input_error("polytope: each point needs exactly " + std::to_string(n) +
                              " coordinates");
        RatVector p;
        for (const auto& c : row) p.push_back(rational_from_json(c, warnings));
        pts.push_back(std::move(p));
    }
    return VPolytope(n, std::move(pts));
}

// Canonical form: the sorted vertex set. Emission after a parse is therefore
// stable under re-parsing.
inline Json polytope_to_json(const VPolytope& p) {
    Json j;
    j["ambient_dim"] = p.ambient_dim();
    Json pts = Json::array();
    for (const auto& v : canonical_vertices(p)) pts.push_back(vector_to_json(v));
    j["points"] = std::move(pts);
    return j;
}

inline std::vector<VPolytope> polytope_list_from_json(const Json& j,
                                                      std::vector<std::string>* warnings,
                                                      const char* field) {
    if (!j.is_array()) throw input_error(std::string(field) + " must be an array of polytopes");
    std::vector<VPolytope> out;
    for (const auto& e : j) out.push_back(polytope_from_json(e, warnings));
    return out;
}

inline Collection collection_from_json(const Json& j,
                                       std::vector<std::string>* warnings = nullptr) {
    if (!j.is_object() || !j.contains("ambient_dim") || !j.contains("polytopes"))
        throw input_error("collection: expected {\"ambient_dim\": n, \"polytopes\": [..]}");
    if (!j["ambient_dim"].is_number_integer() || j["ambient_dim"].get<std::int64_t>() < 2)
        throw input_error("collection: ambient_dim must be an integer >= 2");
    return Collection(j["ambient_dim"].get<std::size_t>(),
                      polytope_list_from_json(j["polytopes"], warnings, "collection.polytopes"));
}

struct ToricInstance {
    VPolytope q;
    Collection collection;
};

inline ToricInstance toric_instance_from_json(const Json& j,
                                              std::vector<std::string>* warnings = nullptr) {
    if (!j.is_object() || !j.contains("Q") || !j.contains("collection"))
        throw input_error("toric instance: expected {\"Q\": <polytope>, \"collection\": [..]}");
    VPolytope q = polytope_from_json(j["Q"], warnings);
    auto polys = polytope_list_from_json(j["collection"], warnings, "collection");
    return ToricInstance{std::move(q), Collection(q.ambient_dim(), std::move(polys))};
}

inline Json subset_to_json(const std::vector<std::size_t>& subset) {
    Json a = Json::array();
    for (auto i : subset) a.push_back(i);
    return a;
}

inline Json supercritical_to_json(const SupercriticalReport& rep) {
    Json j;
    j["ok"] = rep.ok;
    Json table = Json::array();
    for (const auto& row : rep.table) {
        Json r;
        r["subset"] = subset_to_json(row.subset);
        r["dim"] = row.dim;
        r["required"] = row.required();
        r["ok"] = row.ok();
        table.push_back(std::move(r));
    }
    j["table"] = std::move(table);
    return j;
}

inline Json extreme_report_to_json(const ExtremeReport& rep) {
    Json j;
    j["direction"] = int_vector_to_json(rep.direction);
    j["extreme"] = rep.is_extreme;
    j["witness"] = rep.witness ? subset_to_json(*rep.witness) : Json(nullptr);
    return j;
}

// af-check verdict. The equality shape is exactly {"status","a","v"}.
inline Json verdict_to_json(const AFVerdict& v) {
    Json j;
    switch (v.status) {
        case AFStatus::equality:
            j["status"] = "equality";
            j["a"] = rational_string(v.certificate->a);
            j["v"] = vector_strings(v.certificate->v);
            break;
        case AFStatus::strict_inequality:
            j["status"] = "strict";
            j["slack"] = rational_string(v.slack);
            j["v_mn"] = rational_string(v.v_mn);
            j["v_mm"] = rational_string(v.v_mm);
            j["v_nn"] = rational_string(v.v_nn);
            if (v.violated_direction) j["violated_direction"] = int_vector_to_json(*v.violated_direction);
            break;
        case AFStatus::degenerate:
            j["status"] = "degenerate";
            j["v_mn"] = rational_string(v.v_mn);
            j["note"] = "equality automatic";
            break;
    }
    return j;
}

inline Json kt_report_to_json(const KTReport& rep) {
    Json j;
    Json seq = Json::array();
    for (const auto& v : rep.sequence) seq.push_back(rational_string(v));
    j["sequence"] = std::move(seq);
    Json slacks = Json::array();
    for (const auto& s : rep.slacks) slacks.push_back(rational_string(s));
    j["slacks"] = std::move(slacks);
    if (rep.checked_k) {
        j["checked_k"] = *rep.checked_k;
        if (!rep.degeneracy_causes.empty()) j["degeneracy_causes"] = rep.degeneracy_causes;
        if (rep.equality_analysis) j["analysis"] = verdict_to_json(*rep.equality_analysis);
    }
    return j;
}

// Default shape is exactly {"kernel_dim","eff_indices","equal"}; verbose adds
// the matrix and the quotient kernel basis.
inline Json kernel_report_to_json(const KernelReport& rep, bool verbose = false) {
    Json j;
    j["kernel_dim"] = rep.kernel_dim;
    Json eff = Json::array();
    for (auto i : rep.eff_indices) eff.push_back(i);
    j["eff_indices"] = std::move(eff);
    j["equal"] = rep.equal;
    if (verbose) {
        Json rows = Json::array();
        for (std::size_t i = 0; i < rep.lefschetz.rows(); ++i)
            rows.push_back(vector_strings(rep.lefschetz.row(i)));
        j["lefschetz_matrix"] = std::move(rows);
        Json basis = Json::array();
        for (const auto& k : rep.kernel_in_classes) basis.push_back(vector_strings(k));
        j["kernel_basis"] = std::move(basis);
    }
    return j;
}

}  // namespace afx
