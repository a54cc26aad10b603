#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "afx/criticality.hpp"
#include "afx/extremals.hpp"
#include "afx/volume.hpp"

namespace afx {

namespace detail {

inline std::string format_point(const RatVector& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + emit_rational(p[i]);
    return s + ")";
}

}  // namespace detail

// Divisor sum a_i D_i over the facet divisors of a fixed model.
struct TDivisor {
    RatVector coeffs;
};

// Smooth projective toric data read off a Delzant polytope: facet normals
// and offsets in the hull's deterministic order, the incident facet set of
// each vertex, and per-vertex inverses of the normal matrices (unimodular by
// the Delzant condition). relations holds the characters: its rowspace in
// R^m is the lattice of principal divisors.
struct ToricModel {
    VPolytope q;
    std::vector<IntVector> normals;
    std::vector<Rational> offsets;
    std::vector<std::vector<std::size_t>> vertex_cones;
    std::vector<RatMatrix> cone_inverse;  // inverse of rows (u_i : i in cone)
    RatMatrix relations{0, 0};            // n x m, column i = u_i

    std::size_t dim() const { return q.ambient_dim(); }
    std::size_t facet_count() const { return normals.size(); }

    // solves m_sigma . u_i = a_i over the rays of one vertex cone
    RatVector cone_functional(std::size_t cone, const RatVector& coeffs) const {
        RatVector rhs(dim());
        for (std::size_t k = 0; k < dim(); ++k) rhs[k] = coeffs[vertex_cones[cone][k]];
        return mul(cone_inverse[cone], rhs);
    }
};

inline ToricModel delzant_check(const VPolytope& q) {
    const std::size_t n = q.ambient_dim();
    if (q.dim() < n) throw precondition_error("delzant_check: polytope not full-dimensional");
    ToricModel t{q};
    const auto& hull = q.hull();
    for (const auto& f : hull.facets) {
        t.normals.push_back(f.normal);
        t.offsets.push_back(f.offset);
    }
    const std::size_t m = t.normals.size();
    t.relations = RatMatrix(n, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < n; ++k) t.relations(k, i) = Rational(t.normals[i][k]);

    for (auto vi : q.vertex_indices()) {
        std::vector<std::size_t> cone;
        for (std::size_t f = 0; f < m; ++f) {
            const auto& inc = hull.facets[f].incident;
            if (std::find(inc.begin(), inc.end(), vi) != inc.end()) cone.push_back(f);
        }
        const std::string where = detail::format_point(q.points()[vi]);
        if (cone.size() != n)
            throw precondition_error("not Delzant: vertex " + where + " lies on " +
                                     std::to_string(cone.size()) + " facets, expected " +
                                     std::to_string(n));
        std::vector<RatVector> rows;
        for (auto f : cone) rows.push_back(to_rational(t.normals[f]));
        RatMatrix nm = RatMatrix::from_rows(rows);
        Rational d = det(nm);
        if (d != 1 && d != -1)
            throw precondition_error("not Delzant: normals at vertex " + where +
                                     " have determinant " + emit_rational(d));
        t.vertex_cones.push_back(std::move(cone));
        t.cone_inverse.push_back(inverse(nm));
    }
    return t;
}

namespace detail {

inline void require_coeffs(const ToricModel& t, const TDivisor& d, const char* who) {
    if (d.coeffs.size() != t.facet_count())
        throw input_error(std::string(who) + ": divisor has " + std::to_string(d.coeffs.size()) +
                          " coefficients, model has " + std::to_string(t.facet_count()) +
                          " facets");
}

}  // namespace detail

// Support-function convexity at every vertex cone: the local functional must
// not exceed the coefficients on any other ray.
inline bool is_nef(const ToricModel& t, const TDivisor& d) {
    detail::require_coeffs(t, d, "is_nef");
    for (std::size_t c = 0; c < t.vertex_cones.size(); ++c) {
        RatVector f = t.cone_functional(c, d.coeffs);
        for (std::size_t j = 0; j < t.facet_count(); ++j)
            if (dot(f, to_rational(t.normals[j])) > d.coeffs[j]) return false;
    }
    return true;
}

// Minimal t >= 0 with D + t L_Q nef; exists since L_Q is ample. Each vertex
// cone and outside ray contribute one affine constraint in t with strictly
// positive slope (the vertex is not on the outside facet), so the threshold
// is a finite max.
inline std::pair<TDivisor, Rational> nef_split(const ToricModel& t, const TDivisor& d) {
    detail::require_coeffs(t, d, "nef_split");
    Rational best(0);
    const auto verts = t.q.vertex_indices();
    for (std::size_t c = 0; c < t.vertex_cones.size(); ++c) {
        RatVector f0 = t.cone_functional(c, d.coeffs);
        const RatVector& vertex = t.q.points()[verts[c]];
        for (std::size_t j = 0; j < t.facet_count(); ++j) {
            if (std::find(t.vertex_cones[c].begin(), t.vertex_cones[c].end(), j) !=
                t.vertex_cones[c].end())
                continue;
            RatVector uj = to_rational(t.normals[j]);
            Rational alpha = dot(f0, uj) - d.coeffs[j];
            Rational beta = t.offsets[j] - dot(vertex, uj);
            if (beta <= 0) throw internal_error("nef_split: vertex touches an outside facet");
            Rational bound = alpha / beta;
            if (bound > best) best = bound;
        }
    }
    TDivisor nef = d;
    for (std::size_t j = 0; j < t.facet_count(); ++j) nef.coeffs[j] += best * t.offsets[j];
    if (!is_nef(t, nef)) throw internal_error("nef_split: split failed the nef check");
    return {std::move(nef), best};
}

// Section polytope {x : x . u_i <= a_i} of a nef divisor.
inline VPolytope polytope_of_nef(const ToricModel& t, const TDivisor& d) {
    detail::require_coeffs(t, d, "polytope_of_nef");
    if (!is_nef(t, d)) throw precondition_error("polytope_of_nef: divisor is not nef");
    std::vector<std::pair<IntVector, Rational>> hs;
    for (std::size_t i = 0; i < t.facet_count(); ++i) hs.push_back({t.normals[i], d.coeffs[i]});
    return vertices(HPolytope(t.dim(), std::move(hs)));
}

// Divisor of a Minkowski summand: coefficients are the support values of P
// at the facet normals. The summand test demands, for each vertex cone, one
// point of P maximizing all n incident normals at once.
inline TDivisor summand_divisor(const ToricModel& t, const VPolytope& p) {
    if (p.ambient_dim() != t.dim()) throw input_error("summand_divisor: dimension mismatch");
    TDivisor d;
    for (const auto& u : t.normals) d.coeffs.push_back(support(p, u));
    const auto verts = t.q.vertex_indices();
    for (std::size_t c = 0; c < t.vertex_cones.size(); ++c) {
        bool found = false;
        for (const auto& x : p.points()) {
            bool all = true;
            for (auto f : t.vertex_cones[c])
                if (dot(x, to_rational(t.normals[f])) != d.coeffs[f]) {
                    all = false;
                    break;
                }
            if (all) {
                found = true;
                break;
            }
        }
        if (!found)
            throw precondition_error(
                "not a Minkowski summand: no point of P maximizes the cone of vertex " +
                detail::format_point(t.q.points()[verts[c]]));
    }
    if (!is_nef(t, d)) throw internal_error("summand_divisor: summand divisor is not nef");
    return d;
}

inline TDivisor indicator_divisor(const ToricModel& t, std::size_t facet) {
    if (facet >= t.facet_count()) throw input_error("indicator_divisor: non-facet index");
    TDivisor d;
    d.coeffs.assign(t.facet_count(), Rational(0));
    d.coeffs[facet] = 1;
    return d;
}

// Intersection number by multilinear expansion over the nef splits
// D_k = N_k - t_k L_Q and BKK on the pure nef products.
inline Rational intersection_number(const ToricModel& t, std::span<const TDivisor> divisors,
                                    VolumeMemo* memo = nullptr) {
    const std::size_t n = t.dim();
    if (divisors.size() != n) throw input_error("intersection_number: need exactly n divisors");
    VolumeMemo local;
    VolumeMemo& vm = memo ? *memo : local;
    std::vector<VPolytope> nef_body;
    std::vector<Rational> ample_weight;
    for (const auto& d : divisors) {
        auto [nef, tk] = nef_split(t, d);
        nef_body.push_back(polytope_of_nef(t, nef));
        ample_weight.push_back(tk);
    }
    Rational total = 0;
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        Rational weight = 1;
        std::vector<VPolytope> tuple;
        for (std::size_t k = 0; k < n; ++k) {
            if (mask >> k & 1) {
                weight *= -ample_weight[k];
                tuple.push_back(t.q);
            } else {
                tuple.push_back(nef_body[k]);
            }
        }
        if (weight == 0) continue;
        total += weight * mixed_volume_polarization(tuple, &vm);
    }
    return total * Rational(detail::factorial(n));
}

struct KernelReport {
    RatMatrix lefschetz{0, 0};                 // m x m pairing on facet divisors
    std::vector<RatVector> kernel_in_classes;  // quotient basis of ker modulo relations
    std::size_t kernel_dim = 0;
    std::vector<std::size_t> eff_indices;      // facets whose matrix row vanishes
    bool equal = false;
};

namespace detail {

// rows of RREF(space) whose pivot column is not a pivot of RREF(sub); these
// project to a canonical basis of space/sub when sub is contained in space
inline std::vector<RatVector> quotient_basis(const std::vector<RatVector>& space,
                                             const std::vector<RatVector>& sub) {
    if (space.empty()) return {};
    auto es = reduced_echelon(RatMatrix::from_rows(space));
    std::vector<std::size_t> sub_pivots;
    if (!sub.empty()) sub_pivots = reduced_echelon(RatMatrix::from_rows(sub)).pivot_cols;
    std::vector<RatVector> out;
    for (std::size_t r = 0; r < es.pivot_cols.size(); ++r) {
        if (std::find(sub_pivots.begin(), sub_pivots.end(), es.pivot_cols[r]) !=
            sub_pivots.end())
            continue;
        out.push_back(es.mat.row(r));
    }
    return out;
}

inline std::vector<RatVector> matrix_rows(const RatMatrix& m) {
    std::vector<RatVector> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    return rows;
}

inline std::size_t stack_rank(std::initializer_list<const std::vector<RatVector>*> parts) {
    std::vector<RatVector> all;
    for (const auto* p : parts) all.insert(all.end(), p->begin(), p->end());
    if (all.empty()) return 0;
    return rank(RatMatrix::from_rows(all));
}

}  // namespace detail

// Pairing matrix (i,j) -> L_{P_1} ... L_{P_{n-2}} D_i D_j. Symmetry and
// annihilation by the character relations are verified exactly.
inline KernelReport lefschetz_matrix(const ToricModel& t, const Collection& c,
                                     VolumeMemo* memo = nullptr) {
    const std::size_t n = t.dim();
    if (c.ambient_dim() != n) throw input_error("lefschetz_matrix: dimension mismatch");
    if (n < 3)
        throw precondition_error(
            "lefschetz_matrix: needs ambient dimension >= 3 (empty collection leaves no "
            "operator in the plane)");
    std::vector<TDivisor> fixed;
    for (const auto& p : c.polytopes()) fixed.push_back(summand_divisor(t, p));

    VolumeMemo local;
    VolumeMemo& vm = memo ? *memo : local;
    const std::size_t m = t.facet_count();
    KernelReport rep;
    rep.lefschetz = RatMatrix(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            std::vector<TDivisor> args = fixed;
            args.push_back(indicator_divisor(t, i));
            args.push_back(indicator_divisor(t, j));
            Rational v = intersection_number(t, args, &vm);
            rep.lefschetz(i, j) = v;
            rep.lefschetz(j, i) = v;
        }

    // character relations annihilate the pairing
    for (std::size_t k = 0; k < n; ++k) {
        RatVector r = t.relations.row(k);
        if (!is_zero(mul(rep.lefschetz, r)))
            throw internal_error("lefschetz_matrix: relations do not annihilate the pairing");
    }
    return rep;
}

// ker L = span of the zero-row divisor classes, the exact kernel statement.
// The two sides are compared by rank; per the theorem the report must come
// back equal on every accepted instance, so inequality aborts.
inline KernelReport kernel_vs_eff(const ToricModel& t, const Collection& c,
                                  VolumeMemo* memo = nullptr) {
    auto sc = supercritical(c);
    if (!sc.ok)
        throw precondition_error("collection is not supercritical:\n" +
                                 format_supercritical_table(sc));
    KernelReport rep = lefschetz_matrix(t, c, memo);
    const std::size_t m = t.facet_count();

    auto relations = detail::matrix_rows(t.relations);
    auto kernel = kernel_basis(rep.lefschetz);
    rep.kernel_in_classes = detail::quotient_basis(kernel, relations);
    rep.kernel_dim = rep.kernel_in_classes.size();

    for (std::size_t i = 0; i < m; ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < m; ++j)
            if (rep.lefschetz(i, j) != 0) {
                zero = false;
                break;
            }
        if (zero) rep.eff_indices.push_back(i);
    }

    std::vector<RatVector> eff;
    for (auto i : rep.eff_indices) {
        RatVector e(m, Rational(0));
        e[i] = 1;
        eff.push_back(std::move(e));
    }
    // both spans live inside ker L + relations; equality is a rank identity
    std::size_t kernel_rank = detail::stack_rank({&relations, &kernel});
    std::size_t eff_rank = detail::stack_rank({&relations, &eff});
    rep.equal = kernel_rank == eff_rank;
    if (!rep.equal)
        throw internal_error("kernel of the Lefschetz pairing is larger than the zero-row span");
    return rep;
}

struct AnnihilationReport {
    std::vector<std::size_t> eff_indices;  // zero rows of the pairing
    std::vector<std::size_t> non_extreme;  // facet normals failing the extremality test
    bool agree = false;
};

// Zero rows of the pairing against the face-dimension test of the same
// normals: the two detections must coincide.
inline AnnihilationReport annihilated_vs_extreme(const ToricModel& t, const Collection& c,
                                                 VolumeMemo* memo = nullptr) {
    AnnihilationReport rep;
    rep.eff_indices = kernel_vs_eff(t, c, memo).eff_indices;
    for (std::size_t i = 0; i < t.facet_count(); ++i)
        if (!extreme_direction(t.normals[i], c).is_extreme) rep.non_extreme.push_back(i);
    rep.agree = rep.eff_indices == rep.non_extreme;
    if (!rep.agree)
        throw internal_error("zero rows of the pairing disagree with the non-extreme normals");
    return rep;
}

// Restriction of a summand divisor to a facet: the coefficients pulled onto
// the facet's own toric model must be the support values of the projected
// face. Each facet of the facet is matched to its second ambient facet by
// incidence; the projected ambient normal must already be the primitive
// facet-model normal (unimodularity of the Delzant chart).
inline bool face_restriction_check(const ToricModel& t, const VPolytope& p, std::size_t facet) {
    if (facet >= t.facet_count()) throw input_error("face_restriction_check: non-facet index");
    TDivisor d = summand_divisor(t, p);
    const IntVector& uf = t.normals[facet];
    const std::size_t n = t.dim();

    RatMatrix chart = detail::lattice_chart_inverse(uf);
    LatticeComplement lc = lattice_complement_basis(uf);

    VPolytope g = pruned(face(t.q, uf));
    const RatVector base = g.points()[0];
    VPolytope g_chart = detail::project_to_chart(g, chart);
    ToricModel facet_model = delzant_check(g_chart);

    VPolytope pf = pruned(face(p, uf));
    const RatVector p_base = pf.points()[0];
    VPolytope pf_chart = detail::project_to_chart(pf, chart);

    for (std::size_t j = 0; j < facet_model.facet_count(); ++j) {
        // pull the facet-of-facet back and find its second ambient facet
        const auto& sub = facet_model.q.hull().facets[j];
        std::optional<std::size_t> ambient;
        for (std::size_t i = 0; i < t.facet_count(); ++i) {
            if (i == facet) continue;
            bool all_on = true;
            for (auto pi : sub.incident) {
                RatVector y = facet_model.q.points()[pi];
                RatVector x = base;
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t l = 0; l + 1 < n; ++l) x[k] += y[l] * Rational(lc.basis[l][k]);
                if (dot(x, to_rational(t.normals[i])) != t.offsets[i]) {
                    all_on = false;
                    break;
                }
            }
            if (all_on) {
                if (ambient) throw internal_error("face_restriction_check: ambiguous facet match");
                ambient = i;
            }
        }
        if (!ambient) throw internal_error("face_restriction_check: unmatched facet of the face");

        // chart projection of the ambient normal must be the model normal
        IntVector projected(n - 1);
        for (std::size_t l = 0; l + 1 < n; ++l) projected[l] = dot(lc.basis[l], t.normals[*ambient]);
        if (projected != sub.normal)
            throw internal_error("face_restriction_check: projected normal is not primitive");

        Rational lhs = support(pf_chart, sub.normal);
        Rational rhs = d.coeffs[*ambient] - dot(p_base, to_rational(t.normals[*ambient]));
        if (lhs != rhs) return false;
    }
    return true;
}

}  // namespace afx
