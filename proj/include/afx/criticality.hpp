#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "afx/polytope.hpp"

namespace afx {

// The n-2 fixed bodies of an Alexandrov-Fenchel instance in R^n. Empty is
// legal exactly when n = 2.
class Collection {
public:
    Collection(std::size_t ambient_dim, std::vector<VPolytope> polytopes)
        : n_(ambient_dim), polys_(std::move(polytopes)) {
        if (n_ < 2) throw input_error("collection: ambient dimension must be at least 2");
        if (polys_.size() + 2 != n_)
            throw input_error("collection: expected " + std::to_string(n_ - 2) +
                              " polytopes, got " + std::to_string(polys_.size()));
        for (const auto& p : polys_)
            if (p.ambient_dim() != n_) throw input_error("collection: ambient dimension mismatch");
    }

    std::size_t ambient_dim() const { return n_; }
    const std::vector<VPolytope>& polytopes() const { return polys_; }
    std::size_t size() const { return polys_.size(); }

private:
    std::size_t n_;
    std::vector<VPolytope> polys_;
};

namespace detail {

// Nonempty subsets of {0..m-1} ordered by size, then lexicographically.
// Visits f(subset) until f returns true; returns whether any call did.
template <class F>
bool scan_subsets(std::size_t m, F&& f) {
    for (std::size_t size = 1; size <= m; ++size) {
        std::vector<std::size_t> idx(size);
        for (std::size_t i = 0; i < size; ++i) idx[i] = i;
        for (;;) {
            if (f(static_cast<const std::vector<std::size_t>&>(idx))) return true;
            std::size_t k = size;
            while (k > 0 && idx[k - 1] == m - size + k - 1) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (std::size_t j = k; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return false;
}

inline std::size_t subset_sum_dim(std::span<const VPolytope> bodies,
                                  const std::vector<std::size_t>& subset) {
    std::vector<VPolytope> parts;
    parts.reserve(subset.size());
    for (auto i : subset) parts.push_back(bodies[i]);
    return poly_dim(sum_of(parts));
}

}  // namespace detail

struct NondegeneracyReport {
    bool ok = false;
    // first failing subset in (size, lex) order; necessarily minimal, since
    // all its proper subsets were scanned earlier and passed
    std::optional<std::vector<std::size_t>> witness;
};

// dim(K_I) >= |I| for every nonempty I, which holds iff the mixed volume of
// the tuple is positive.
inline NondegeneracyReport nondegeneracy(std::span<const VPolytope> bodies) {
    if (bodies.empty()) throw input_error("nondegeneracy: no bodies");
    const std::size_t n = bodies[0].ambient_dim();
    if (bodies.size() != n) throw input_error("nondegeneracy: need exactly n bodies in R^n");
    for (const auto& b : bodies)
        if (b.ambient_dim() != n) throw input_error("nondegeneracy: dimension mismatch");
    NondegeneracyReport rep;
    rep.ok = !detail::scan_subsets(n, [&](const std::vector<std::size_t>& subset) {
        if (detail::subset_sum_dim(bodies, subset) < subset.size()) {
            rep.witness = subset;
            return true;
        }
        return false;
    });
    return rep;
}

struct SupercriticalRow {
    std::vector<std::size_t> subset;
    std::size_t dim = 0;

    std::size_t required() const { return subset.size() + 2; }
    bool ok() const { return dim >= required(); }
};

struct SupercriticalReport {
    bool ok = true;
    std::vector<SupercriticalRow> table;  // all nonempty subsets, (size, lex) order
};

inline SupercriticalReport supercritical(const Collection& c) {
    SupercriticalReport rep;
    detail::scan_subsets(c.size(), [&](const std::vector<std::size_t>& subset) {
        SupercriticalRow row{subset, detail::subset_sum_dim(c.polytopes(), subset)};
        rep.ok = rep.ok && row.ok();
        rep.table.push_back(std::move(row));
        return false;
    });
    return rep;
}

inline std::string format_supercritical_table(const SupercriticalReport& rep) {
    std::string out;
    for (const auto& row : rep.table) {
        out += "  dim(P_I) = " + std::to_string(row.dim) + " (need >= " +
               std::to_string(row.required()) + ") for I = {";
        for (std::size_t k = 0; k < row.subset.size(); ++k)
            out += (k ? "," : "") + std::to_string(row.subset[k]);
        out += row.ok() ? "}\n" : "}  <- FAILS\n";
    }
    return out;
}

struct ExtremeReport {
    IntVector direction;  // primitive representative
    bool is_extreme = false;
    std::optional<std::vector<std::size_t>> witness;  // subset with dim F(P_I,u) < |I|
};

// u is extreme for the collection when dim F(P_I, u) >= |I| for every
// nonempty I. Faces of a sum split as sums of faces, so only the faces of
// the individual bodies are ever formed. Vacuous (extreme) when n = 2.
inline ExtremeReport extreme_direction(const IntVector& u, const Collection& c) {
    if (u.size() != c.ambient_dim()) throw input_error("extreme_direction: dimension mismatch");
    if (is_zero(u)) throw input_error("extreme_direction: zero direction");
    ExtremeReport rep;
    rep.direction = primitive(u);
    std::vector<VPolytope> faces;
    faces.reserve(c.size());
    for (const auto& p : c.polytopes()) faces.push_back(face(p, rep.direction));
    rep.is_extreme = !detail::scan_subsets(c.size(), [&](const std::vector<std::size_t>& subset) {
        if (detail::subset_sum_dim(faces, subset) < subset.size()) {
            rep.witness = subset;
            return true;
        }
        return false;
    });
    return rep;
}

// One report per facet normal of Q, in the hull's deterministic facet order.
inline std::vector<ExtremeReport> extreme_facet_normals(const VPolytope& q, const Collection& c) {
    if (q.ambient_dim() != c.ambient_dim())
        throw input_error("extreme_facet_normals: dimension mismatch");
    std::vector<ExtremeReport> reports;
    for (const auto& f : q.hull().facets) reports.push_back(extreme_direction(f.normal, c));
    return reports;
}

}  // namespace afx
