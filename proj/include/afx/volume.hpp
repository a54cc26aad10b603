#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "afx/polytope.hpp"

namespace afx {

namespace detail {

// Columns b_1..b_{n-1}, w of a lattice complement of u, inverted. The first
// n-1 coordinates of inv * (q - base) express q - base in the facet lattice
// Z^n intersect u-perp; the last coordinate is zero for points of the face.
inline RatMatrix lattice_chart_inverse(const IntVector& u) {
    const std::size_t n = u.size();
    LatticeComplement lc = lattice_complement_basis(u);
    RatMatrix c(n, n);
    for (std::size_t j = 0; j + 1 < n; ++j)
        for (std::size_t i = 0; i < n; ++i) c(i, j) = Rational(lc.basis[j][i]);
    for (std::size_t i = 0; i < n; ++i) c(i, n - 1) = Rational(lc.completion[i]);
    return inverse(c);
}

// Face parallel to the hyperplane u-perp, rewritten in the facet lattice
// coordinates after translating by its own base point. Output dimension n-1.
inline VPolytope project_to_chart(const VPolytope& f, const RatMatrix& chart_inv) {
    const std::size_t n = f.ambient_dim();
    const RatVector& base = f.points()[0];
    std::vector<RatVector> coords;
    coords.reserve(f.points().size());
    for (const auto& q : f.points()) {
        RatVector y = mul(chart_inv, sub(q, base));
        if (y[n - 1] != 0) throw internal_error("project_to_chart: point off the hyperplane");
        y.pop_back();
        coords.push_back(std::move(y));
    }
    return VPolytope(n - 1, std::move(coords));
}

inline Integer factorial(std::size_t n) {
    Integer f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace detail

// Euclidean volume by the facet recursion vol(P) = (1/n) sum_F c_F relvol(F),
// with facet volumes lattice-normalized so everything stays rational: the
// covolume of the facet lattice cancels against the length of the primitive
// normal. Degenerate input has volume zero.
inline Rational volume(const VPolytope& p) {
    const std::size_t n = p.ambient_dim();
    if (p.dim() < n) return Rational(0);
    Rational total = 0;
    for (const auto& f : p.hull().facets) {
        if (n == 1) {
            total += f.offset;  // relvol of a point is 1
            continue;
        }
        RatMatrix chart = detail::lattice_chart_inverse(f.normal);
        std::vector<RatVector> pts;
        for (auto i : f.incident) pts.push_back(p.points()[i]);
        VPolytope fp = detail::project_to_chart(VPolytope(n, std::move(pts)), chart);
        total += f.offset * volume(fp);
    }
    return total / Rational(n);
}

// Volumes of nonnegative integer combinations sum_i c_i K_i, memoized across
// the inclusion-exclusion of one or several polarization calls. Bodies are
// registered once (identity = canonical vertex set) and stored pruned, so
// repeated bodies collapse and diagonal calls reuse dilate volumes.
class VolumeMemo {
public:
    std::size_t register_body(const VPolytope& b) {
        auto key = canonical_vertices(b);
        for (std::size_t i = 0; i < keys_.size(); ++i)
            if (bodies_[i].ambient_dim() == b.ambient_dim() && keys_[i] == key) return i;
        keys_.push_back(std::move(key));
        bodies_.push_back(pruned(b));
        return bodies_.size() - 1;
    }

    std::size_t size() const { return bodies_.size(); }
    const VPolytope& body(std::size_t i) const { return bodies_[i]; }

    // counts may be shorter than the registry; the map key is the counts
    // vector with trailing zeros trimmed, so cached entries survive later
    // registrations.
    Rational volume_of(std::vector<int> counts) {
        if (counts.size() > bodies_.size()) throw internal_error("VolumeMemo: counts out of range");
        while (!counts.empty() && counts.back() == 0) counts.pop_back();
        if (counts.empty()) throw internal_error("VolumeMemo: empty combination");
        auto it = vols_.find(counts);
        if (it != vols_.end()) return it->second;
        std::vector<VPolytope> parts;
        for (std::size_t i = 0; i < counts.size(); ++i) {
            if (counts[i] < 0) throw internal_error("VolumeMemo: negative count");
            if (counts[i] == 0) continue;
            parts.push_back(counts[i] == 1 ? bodies_[i] : dilate(bodies_[i], counts[i]));
        }
        Rational v = volume(sum_of(parts));
        vols_.emplace(std::move(counts), v);
        return v;
    }

private:
    std::vector<VPolytope> bodies_;
    std::vector<std::vector<RatVector>> keys_;
    std::map<std::vector<int>, Rational> vols_;
};

// V(K_1,...,K_n) = (1/n!) sum_{S nonempty} (-1)^{n-|S|} vol(K_S), the oracle
// of record.
inline Rational mixed_volume_polarization(std::span<const VPolytope> bodies,
                                          VolumeMemo* memo = nullptr) {
    if (bodies.empty()) throw input_error("mixed_volume: no bodies");
    const std::size_t n = bodies[0].ambient_dim();
    if (bodies.size() != n) throw input_error("mixed_volume: need exactly n bodies in R^n");
    for (const auto& b : bodies)
        if (b.ambient_dim() != n) throw input_error("mixed_volume: dimension mismatch");
    VolumeMemo local;
    VolumeMemo& m = memo ? *memo : local;
    std::vector<std::size_t> reg;
    reg.reserve(n);
    for (const auto& b : bodies) reg.push_back(m.register_body(b));
    Rational total = 0;
    for (std::size_t s = 1; s < (std::size_t(1) << n); ++s) {
        std::vector<int> counts(m.size(), 0);
        std::size_t popcount = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (s >> i & 1) {
                ++counts[reg[i]];
                ++popcount;
            }
        Rational v = m.volume_of(std::move(counts));
        total += ((n - popcount) % 2 == 0) ? v : -v;
    }
    return total / Rational(detail::factorial(n));
}

// Surface-measure recursion: V = (1/n) sum_u h_{K_n}(u) V'(F(K_1,u),...,
// F(K_{n-1},u)) over the facet normals u of B = K_1+...+K_{n-1}, with V' the
// lattice-normalized mixed volume inside u-perp. When B is (n-1)-dimensional
// the measure concentrates on the two normals of aff(B) and the sum collapses
// to width(K_n) times the sectional mixed volume; anything flatter gives 0.
inline Rational mixed_volume_recursive(std::span<const VPolytope> bodies) {
    if (bodies.empty()) throw input_error("mixed_volume: no bodies");
    const std::size_t n = bodies[0].ambient_dim();
    if (bodies.size() != n) throw input_error("mixed_volume: need exactly n bodies in R^n");
    for (const auto& b : bodies)
        if (b.ambient_dim() != n) throw input_error("mixed_volume: dimension mismatch");
    if (n == 1) return support(bodies[0], RatVector{1}) + support(bodies[0], RatVector{-1});

    std::vector<VPolytope> front(bodies.begin(), bodies.end() - 1);
    VPolytope b = sum_of(front);
    const std::size_t d = b.dim();
    if (d + 1 < n) return Rational(0);
    const VPolytope& last = bodies[n - 1];

    if (d + 1 == n) {
        std::vector<RatVector> diffs;
        for (std::size_t i = 1; i < b.points().size(); ++i)
            diffs.push_back(sub(b.points()[i], b.points()[0]));
        auto ker = kernel_basis(RatMatrix::from_rows(diffs));
        if (ker.size() != 1) throw internal_error("mixed_volume_recursive: bad hyperplane");
        IntVector u0 = primitive_from_rational(ker[0]);
        Rational width = support(last, u0) + support(last, negated(u0));
        if (width == 0) return Rational(0);
        RatMatrix chart = detail::lattice_chart_inverse(u0);
        std::vector<VPolytope> proj;
        for (const auto& k : front) proj.push_back(detail::project_to_chart(pruned(k), chart));
        return width * mixed_volume_recursive(proj) / Rational(n);
    }

    Rational total = 0;
    for (const auto& f : b.hull().facets) {
        RatMatrix chart = detail::lattice_chart_inverse(f.normal);
        std::vector<VPolytope> proj;
        for (const auto& k : front)
            proj.push_back(detail::project_to_chart(pruned(face(k, f.normal)), chart));
        Rational rel = mixed_volume_recursive(proj);
        if (rel != 0) total += support(last, f.normal) * rel;
    }
    return total / Rational(n);
}

enum class Engine { polarization, recursion, both };

// Dual-route evaluation. Engine::both runs both independent engines and
// treats disagreement as an internal consistency failure.
inline Rational mixed_volume(std::span<const VPolytope> bodies, Engine engine = Engine::both) {
    switch (engine) {
        case Engine::polarization:
            return mixed_volume_polarization(bodies);
        case Engine::recursion:
            return mixed_volume_recursive(bodies);
        case Engine::both: {
            Rational a = mixed_volume_polarization(bodies);
            Rational b = mixed_volume_recursive(bodies);
            if (a != b)
                throw internal_error("mixed volume engines disagree: polarization=" +
                                     emit_rational(a) + " recursion=" + emit_rational(b));
            return a;
        }
    }
    throw input_error("mixed_volume: unknown engine");
}

// Exact permanent by Laplace expansion over rows with a column-mask memo.
inline Rational permanent(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw input_error("permanent: matrix not square");
    const std::size_t n = m.rows();
    std::map<std::size_t, Rational> memo;
    auto rec = [&](auto&& self, std::size_t row, std::size_t used) -> Rational {
        if (row == n) return Rational(1);
        auto it = memo.find(used);
        if (it != memo.end()) return it->second;
        Rational s = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (used >> j & 1) continue;
            if (m(row, j) == 0) continue;
            s += m(row, j) * self(self, row + 1, used | (std::size_t(1) << j));
        }
        memo.emplace(used, s);
        return s;
    };
    return rec(rec, 0, 0);
}

// Independent oracle for boxes: n! V(B_1,...,B_n) = permanent of the edge
// length matrix. Inputs must be axis-aligned boxes (every corner of the
// coordinate bounding box present in the cloud).
inline Rational box_permanent_oracle(std::span<const VPolytope> bodies) {
    if (bodies.empty()) throw input_error("box oracle: no bodies");
    const std::size_t n = bodies[0].ambient_dim();
    if (bodies.size() != n) throw input_error("box oracle: need exactly n bodies in R^n");
    RatMatrix edges(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& b = bodies[i];
        if (b.ambient_dim() != n) throw input_error("box oracle: dimension mismatch");
        RatVector lo = b.points()[0], hi = b.points()[0];
        for (const auto& p : b.points())
            for (std::size_t j = 0; j < n; ++j) {
                lo[j] = std::min(lo[j], p[j]);
                hi[j] = std::max(hi[j], p[j]);
            }
        std::set<RatVector> cloud(b.points().begin(), b.points().end());
        for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
            RatVector corner(n);
            for (std::size_t j = 0; j < n; ++j) corner[j] = (mask >> j & 1) ? hi[j] : lo[j];
            if (!cloud.count(corner)) throw input_error("box oracle: body is not an axis-aligned box");
        }
        for (std::size_t j = 0; j < n; ++j) edges(i, j) = hi[j] - lo[j];
    }
    return permanent(edges) / Rational(detail::factorial(n));
}

// Checks the Minkowski volume polynomial identity vol(sum t_i K_i) =
// sum_alpha (n!/prod alpha_i!) V(K^alpha) t^alpha exactly at the given
// nonnegative sample points.
inline bool minkowski_poly_check(std::span<const VPolytope> bodies,
                                 std::span<const RatVector> samples) {
    if (bodies.empty()) throw input_error("minkowski_poly_check: no bodies");
    const std::size_t n = bodies[0].ambient_dim();
    const std::size_t m = bodies.size();
    for (const auto& b : bodies)
        if (b.ambient_dim() != n) throw input_error("minkowski_poly_check: dimension mismatch");

    VolumeMemo memo;
    std::vector<std::size_t> reg;
    for (const auto& b : bodies) reg.push_back(memo.register_body(b));

    // all multisets alpha of size n over m bodies, with V(K^alpha)
    std::vector<std::pair<std::vector<int>, Rational>> terms;
    std::vector<int> alpha(m, 0);
    auto rec = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
        if (pos + 1 == m) {
            alpha[pos] = static_cast<int>(left);
            std::vector<VPolytope> tuple;
            for (std::size_t i = 0; i < m; ++i)
                for (int k = 0; k < alpha[i]; ++k) tuple.push_back(bodies[i]);
            terms.push_back({alpha, mixed_volume_polarization(tuple, &memo)});
            return;
        }
        for (std::size_t c = 0; c <= left; ++c) {
            alpha[pos] = static_cast<int>(c);
            self(self, pos + 1, left - c);
        }
    };
    rec(rec, 0, n);

    for (const auto& t : samples) {
        if (t.size() != m) throw input_error("minkowski_poly_check: sample length mismatch");
        for (const auto& ti : t)
            if (ti < 0) throw input_error("minkowski_poly_check: negative sample");
        std::vector<VPolytope> parts;
        for (std::size_t i = 0; i < m; ++i)
            if (t[i] != 0) parts.push_back(dilate(bodies[i], t[i]));
        Rational direct = parts.empty() ? Rational(0) : volume(sum_of(parts));
        Rational predicted = 0;
        for (const auto& [a, v] : terms) {
            if (v == 0) continue;
            Rational coef(detail::factorial(n));
            Rational mono = 1;
            for (std::size_t i = 0; i < m; ++i) {
                coef /= Rational(detail::factorial(a[i]));
                for (int k = 0; k < a[i]; ++k) mono *= t[i];
            }
            predicted += coef * v * mono;
        }
        if (direct != predicted) return false;
    }
    return true;
}

}  // namespace afx
