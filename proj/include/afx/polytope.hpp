#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "afx/linalg.hpp"

namespace afx {

// Facet of a full-dimensional polytope: outward primitive integer normal u,
// rational offset c with max_{x in P} u.x = c, and the indices of the
// generating points lying on the hyperplane.
struct Facet {
    IntVector normal;
    Rational offset;
    std::vector<std::size_t> incident;
};

struct HullData {
    std::vector<Facet> facets;
    std::vector<std::size_t> vertex_indices;
};

namespace detail {

// Affine dimension of a point subset; dim(empty) = -1, dim(point) = 0.
inline std::ptrdiff_t affine_dim_of(const std::vector<RatVector>& pts,
                                    const std::vector<std::size_t>& idx) {
    if (idx.empty()) return -1;
    if (idx.size() == 1) return 0;
    std::vector<RatVector> diffs;
    diffs.reserve(idx.size() - 1);
    for (std::size_t k = 1; k < idx.size(); ++k) diffs.push_back(sub(pts[idx[k]], pts[idx[0]]));
    return static_cast<std::ptrdiff_t>(rank(RatMatrix::from_rows(diffs)));
}

// Primitive normal of the hyperplane spanned by the given points (affine dim
// must be n-1; returns nullopt otherwise). Sign is not yet oriented.
inline std::optional<IntVector> hyperplane_normal(const std::vector<RatVector>& pts,
                                                  const std::vector<std::size_t>& idx,
                                                  std::size_t n) {
    RatMatrix diffs(idx.empty() ? 0 : idx.size() - 1, n);
    for (std::size_t k = 1; k < idx.size(); ++k)
        for (std::size_t j = 0; j < n; ++j) diffs(k - 1, j) = pts[idx[k]][j] - pts[idx[0]][j];
    auto ker = kernel_basis(diffs);
    if (ker.size() != 1) return std::nullopt;
    return primitive_from_rational(ker[0]);
}

inline std::vector<std::size_t> sorted_intersection(const std::vector<std::size_t>& a,
                                                    const std::vector<std::size_t>& b) {
    std::vector<std::size_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Exact incremental convex hull (beneath-beyond with merged facets).
// Precondition: pts are distinct and affinely span R^n. The facet list of the
// intermediate hull is always complete, so a point satisfying every facet
// inequality is inside and the degenerate "coplanar but outside" case cannot
// arise. Incident sets are kept complete during construction; ridge detection
// relies on that.
inline HullData convex_hull(const std::vector<RatVector>& pts, std::size_t n) {
    // greedy affinely independent seed simplex
    std::vector<std::size_t> simplex{0};
    for (std::size_t i = 1; i < pts.size() && simplex.size() < n + 1; ++i) {
        simplex.push_back(i);
        if (affine_dim_of(pts, simplex) != static_cast<std::ptrdiff_t>(simplex.size()) - 1)
            simplex.pop_back();
    }
    if (simplex.size() != n + 1) throw internal_error("convex_hull: input not full-dimensional");

    RatVector ref(n, Rational(0));
    for (auto i : simplex) ref = add(ref, pts[i]);
    ref = scaled(ref, make_rational(1, static_cast<int>(n) + 1));

    auto oriented = [&](IntVector u, const RatVector& on_plane) -> std::pair<IntVector, Rational> {
        Rational c = dot(on_plane, u);
        if (dot(ref, u) > c) {
            u = negated(u);
            c = -c;
        }
        return {std::move(u), std::move(c)};
    };

    using FacetKey = std::pair<IntVector, Rational>;
    std::map<FacetKey, std::vector<std::size_t>> live;  // key -> sorted incident indices

    for (std::size_t k = 0; k < simplex.size(); ++k) {
        std::vector<std::size_t> subset;
        for (std::size_t j = 0; j < simplex.size(); ++j)
            if (j != k) subset.push_back(simplex[j]);
        auto nrm = hyperplane_normal(pts, subset, n);
        if (!nrm) throw internal_error("convex_hull: degenerate simplex face");
        auto [u, c] = oriented(std::move(*nrm), pts[subset[0]]);
        std::sort(subset.begin(), subset.end());
        live[{std::move(u), std::move(c)}] = std::move(subset);
    }

    std::set<std::size_t> in_simplex(simplex.begin(), simplex.end());
    for (std::size_t idx = 0; idx < pts.size(); ++idx) {
        if (in_simplex.count(idx)) continue;
        const RatVector& p = pts[idx];

        std::vector<std::map<FacetKey, std::vector<std::size_t>>::iterator> visible, hidden;
        for (auto it = live.begin(); it != live.end(); ++it) {
            Rational side = dot(p, it->first.first) - it->first.second;
            if (side > 0)
                visible.push_back(it);
            else {
                if (side == 0) {
                    auto& inc = it->second;
                    inc.insert(std::lower_bound(inc.begin(), inc.end(), idx), idx);
                }
                hidden.push_back(it);
            }
        }
        if (visible.empty()) continue;

        std::vector<std::size_t> boundary;
        for (const auto& [key, inc] : live)
            boundary.insert(boundary.end(), inc.begin(), inc.end());
        std::sort(boundary.begin(), boundary.end());
        boundary.erase(std::unique(boundary.begin(), boundary.end()), boundary.end());

        std::map<FacetKey, std::vector<std::size_t>> fresh;
        for (auto& vf : visible) {
            for (auto& hf : hidden) {
                std::vector<std::size_t> ridge = sorted_intersection(vf->second, hf->second);
                if (affine_dim_of(pts, ridge) != static_cast<std::ptrdiff_t>(n) - 2) continue;
                std::vector<std::size_t> span = ridge;
                span.push_back(idx);
                auto nrm = hyperplane_normal(pts, span, n);
                if (!nrm) continue;
                auto [u, c] = oriented(std::move(*nrm), p);
                FacetKey key{std::move(u), std::move(c)};
                if (fresh.count(key) || live.count(key)) continue;
                std::vector<std::size_t> inc{idx};
                for (auto b : boundary)
                    if (dot(pts[b], key.first) == key.second) inc.push_back(b);
                std::sort(inc.begin(), inc.end());
                fresh.emplace(std::move(key), std::move(inc));
            }
        }
        for (auto& vf : visible) live.erase(vf);
        for (auto& [key, inc] : fresh) live.emplace(key, inc);
    }

    HullData out;
    for (auto& [key, inc] : live) {
        Facet f;
        f.normal = key.first;
        f.offset = key.second;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            Rational side = dot(pts[i], f.normal) - f.offset;
            if (side > 0) throw internal_error("convex_hull: one-sidedness validation failed");
            if (side == 0) f.incident.push_back(i);
        }
        if (affine_dim_of(pts, f.incident) != static_cast<std::ptrdiff_t>(n) - 1)
            throw internal_error("convex_hull: facet incident set does not span its hyperplane");
        out.facets.push_back(std::move(f));
    }

    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<RatVector> normals;
        for (const auto& f : out.facets)
            if (std::binary_search(f.incident.begin(), f.incident.end(), i))
                normals.push_back(to_rational(f.normal));
        if (normals.size() >= n && rank(RatMatrix::from_rows(normals)) == n)
            out.vertex_indices.push_back(i);
    }
    return out;
}

}  // namespace detail

// Polytope as the convex hull of a generating point cloud. Points are
// deduplicated but not required to be vertices; operations tolerate redundant
// generators. Facet and vertex data are computed on demand and cached
// (compute-then-publish; instances are not shared across threads).
class VPolytope {
public:
    VPolytope(std::size_t ambient_dim, std::vector<RatVector> points) : dim_(ambient_dim) {
        if (ambient_dim == 0) throw input_error("polytope: ambient dimension must be positive");
        if (points.empty()) throw input_error("polytope: empty point set");
        std::set<RatVector> seen;
        for (auto& p : points) {
            if (p.size() != ambient_dim) throw input_error("polytope: point dimension mismatch");
            if (seen.insert(p).second) points_.push_back(std::move(p));
        }
    }

    std::size_t ambient_dim() const { return dim_; }
    const std::vector<RatVector>& points() const { return points_; }

    // affine dimension of the hull
    std::size_t dim() const {
        if (!dim_cache_) {
            std::vector<std::size_t> all(points_.size());
            for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
            dim_cache_ = static_cast<std::size_t>(detail::affine_dim_of(points_, all));
        }
        return *dim_cache_;
    }

    const HullData& hull() const {
        if (!hull_cache_) {
            if (dim() != dim_) throw precondition_error("degenerate: use face/dim tools");
            hull_cache_ = detail::convex_hull(points_, dim_);
        }
        return *hull_cache_;
    }

    const std::vector<std::size_t>& vertex_indices() const {
        if (!vertex_cache_) {
            if (dim() == dim_) {
                vertex_cache_ = hull().vertex_indices;
            } else if (dim() == 0) {
                vertex_cache_ = std::vector<std::size_t>{0};
            } else {
                vertex_cache_ = lower_dim_vertices();
            }
        }
        return *vertex_cache_;
    }

private:
    // Map to coordinates in an affine basis of the span and take the hull
    // there; vertices are preserved under the affine isomorphism.
    std::vector<std::size_t> lower_dim_vertices() const {
        const std::size_t r = dim();
        std::vector<std::size_t> chosen{0};
        std::vector<RatVector> basis_rows;
        for (std::size_t i = 1; i < points_.size() && basis_rows.size() < r; ++i) {
            basis_rows.push_back(sub(points_[i], points_[0]));
            if (rank(RatMatrix::from_rows(basis_rows)) != basis_rows.size()) basis_rows.pop_back();
        }
        RatMatrix bt = RatMatrix::from_rows(basis_rows).transpose();  // n x r
        std::vector<RatVector> coords;
        coords.reserve(points_.size());
        for (const auto& p : points_) {
            AffineSolution s = solve_affine(bt, sub(p, points_[0]));
            if (!s.feasible) throw internal_error("polytope: point outside its affine span");
            coords.push_back(std::move(s.particular));
        }
        HullData h = detail::convex_hull(coords, r);
        return h.vertex_indices;
    }

    std::size_t dim_;
    std::vector<RatVector> points_;
    mutable std::optional<std::size_t> dim_cache_;
    mutable std::optional<HullData> hull_cache_;
    mutable std::optional<std::vector<std::size_t>> vertex_cache_;
};

inline Rational support(const VPolytope& p, const RatVector& u) {
    if (u.size() != p.ambient_dim()) throw input_error("support: dimension mismatch");
    Rational best = dot(p.points()[0], u);
    for (std::size_t i = 1; i < p.points().size(); ++i) best = std::max(best, dot(p.points()[i], u));
    return best;
}

inline Rational support(const VPolytope& p, const IntVector& u) { return support(p, to_rational(u)); }

// F(P,u): the argmax sub-cloud; its hull is the face of P in direction u.
inline VPolytope face(const VPolytope& p, const RatVector& u) {
    Rational h = support(p, u);
    std::vector<RatVector> pts;
    for (const auto& q : p.points())
        if (dot(q, u) == h) pts.push_back(q);
    return VPolytope(p.ambient_dim(), std::move(pts));
}

inline VPolytope face(const VPolytope& p, const IntVector& u) { return face(p, to_rational(u)); }

inline std::size_t poly_dim(const VPolytope& p) { return p.dim(); }

// Full facet list; refuses degenerate input. Facets come out keyed by
// primitive normal, sorted lexicographically, so the order is canonical.
inline std::vector<Facet> facets(const VPolytope& p) { return p.hull().facets; }

inline VPolytope scale_translate(const VPolytope& p, const Rational& a, const RatVector& v) {
    if (v.size() != p.ambient_dim()) throw input_error("scale_translate: dimension mismatch");
    std::vector<RatVector> pts;
    pts.reserve(p.points().size());
    for (const auto& q : p.points()) pts.push_back(add(scaled(q, a), v));
    return VPolytope(p.ambient_dim(), std::move(pts));
}

inline VPolytope dilate(const VPolytope& p, const Rational& a) {
    return scale_translate(p, a, RatVector(p.ambient_dim(), Rational(0)));
}

// Literal Minkowski sum: the deduplicated cloud of pairwise sums, with
// first-seen order. No pruning here; see pruned()/sum_of for the reduced form.
inline VPolytope minkowski_sum(const VPolytope& p, const VPolytope& q) {
    if (p.ambient_dim() != q.ambient_dim()) throw input_error("minkowski_sum: dimension mismatch");
    std::vector<RatVector> pts;
    pts.reserve(p.points().size() * q.points().size());
    for (const auto& a : p.points())
        for (const auto& b : q.points()) pts.push_back(add(a, b));
    return VPolytope(p.ambient_dim(), std::move(pts));
}

// Same hull, generating set reduced to the vertex set.
inline VPolytope pruned(const VPolytope& p) {
    std::vector<RatVector> pts;
    for (auto i : p.vertex_indices()) pts.push_back(p.points()[i]);
    return VPolytope(p.ambient_dim(), std::move(pts));
}

// Pruned chain sum; keeps intermediate clouds at vertex size. Hull-equal to
// the literal Minkowski sum of the bodies.
inline VPolytope sum_of(std::span<const VPolytope> bodies) {
    if (bodies.empty()) throw input_error("sum_of: no bodies");
    VPolytope acc = pruned(bodies[0]);
    for (std::size_t i = 1; i < bodies.size(); ++i)
        acc = pruned(minkowski_sum(acc, pruned(bodies[i])));
    return acc;
}

// Canonical vertex list (sorted lexicographically): the equality test for
// polytopes given by different generating clouds.
inline std::vector<RatVector> canonical_vertices(const VPolytope& p) {
    std::vector<RatVector> v;
    for (auto i : p.vertex_indices()) v.push_back(p.points()[i]);
    std::sort(v.begin(), v.end());
    return v;
}

inline bool same_polytope(const VPolytope& p, const VPolytope& q) {
    return p.ambient_dim() == q.ambient_dim() && canonical_vertices(p) == canonical_vertices(q);
}

// Intersection of halfspaces u.x <= c with primitive integer normals.
// Normals are normalized (and offsets rescaled) on construction.
class HPolytope {
public:
    HPolytope(std::size_t ambient_dim, std::vector<std::pair<IntVector, Rational>> halfspaces)
        : dim_(ambient_dim) {
        if (ambient_dim == 0) throw input_error("hpolytope: ambient dimension must be positive");
        std::set<std::pair<IntVector, Rational>> seen;
        for (auto& [u, c] : halfspaces) {
            if (u.size() != ambient_dim) throw input_error("hpolytope: normal dimension mismatch");
            Integer g = 0;
            for (const auto& x : u) g = boost::multiprecision::gcd(g, x);
            if (g == 0) throw input_error("hpolytope: zero normal");
            IntVector un(u);
            for (auto& x : un) x /= g;
            Rational cn = c / Rational(g);
            if (seen.insert({un, cn}).second) halfspaces_.push_back({std::move(un), std::move(cn)});
        }
        if (halfspaces_.empty()) throw input_error("hpolytope: no halfspaces");
    }

    std::size_t ambient_dim() const { return dim_; }
    const std::vector<std::pair<IntVector, Rational>>& halfspaces() const { return halfspaces_; }

private:
    std::size_t dim_;
    std::vector<std::pair<IntVector, Rational>> halfspaces_;
};

inline HPolytope to_hpolytope(const VPolytope& p) {
    std::vector<std::pair<IntVector, Rational>> hs;
    for (const auto& f : facets(p)) hs.push_back({f.normal, f.offset});
    return HPolytope(p.ambient_dim(), std::move(hs));
}

// Vertex enumeration for a bounded H-polytope: solve every invertible
// n-subset, keep solutions satisfying all constraints. Boundedness is decided
// first via the recession cone (normals must span, and no extreme-ray
// candidate from an (n-1)-subset may satisfy all inequalities).
inline VPolytope vertices(const HPolytope& h) {
    const std::size_t n = h.ambient_dim();
    const auto& hs = h.halfspaces();
    const std::size_t m = hs.size();

    std::vector<RatVector> normal_rows;
    for (const auto& [u, c] : hs) normal_rows.push_back(to_rational(u));
    RatMatrix nm = RatMatrix::from_rows(normal_rows);
    if (rank(nm) != n) throw precondition_error("hpolytope: unbounded (normals do not span)");

    std::vector<std::size_t> comb;
    auto ray_escapes = [&](const RatVector& d) {
        for (const auto& [u, c] : hs)
            if (dot(d, u) > 0) return false;
        return true;
    };
    std::vector<std::vector<std::size_t>> subsets;
    {
        std::vector<std::size_t> cur;
        auto rec = [&](auto&& self, std::size_t start, std::size_t need) -> void {
            if (need == 0) {
                subsets.push_back(cur);
                return;
            }
            for (std::size_t i = start; i + need <= m + 1 && i < m; ++i) {
                cur.push_back(i);
                self(self, i + 1, need - 1);
                cur.pop_back();
            }
        };
        if (n >= 1) rec(rec, 0, n - 1);
    }
    for (const auto& s : subsets) {
        RatMatrix sm(s.size(), n);
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = 0; j < n; ++j) sm(i, j) = Rational(hs[s[i]].first[j]);
        auto ker = kernel_basis(sm);
        if (ker.size() != 1) continue;
        if (ray_escapes(ker[0]) || ray_escapes(scaled(ker[0], Rational(-1))))
            throw precondition_error("hpolytope: unbounded (recession ray found)");
    }

    std::set<RatVector> verts;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start, std::size_t need) -> void {
        if (need == 0) {
            RatMatrix sm(n, n);
            RatVector rhs(n);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) sm(i, j) = Rational(hs[cur[i]].first[j]);
                rhs[i] = hs[cur[i]].second;
            }
            if (det(sm) == 0) return;
            AffineSolution sol = solve_affine(sm, rhs);
            if (!sol.feasible) throw internal_error("vertices: invertible system infeasible");
            for (const auto& [u, c] : hs)
                if (dot(sol.particular, u) > c) return;
            verts.insert(sol.particular);
            return;
        }
        for (std::size_t i = start; i + need <= m; ++i) {
            cur.push_back(i);
            self(self, i + 1, need - 1);
            cur.pop_back();
        }
    };
    rec(rec, 0, n);
    if (verts.empty()) throw precondition_error("hpolytope: infeasible");
    return VPolytope(n, std::vector<RatVector>(verts.begin(), verts.end()));
}

}  // namespace afx
