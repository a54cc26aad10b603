#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "afx/rational.hpp"

namespace afx {

using RatVector = std::vector<Rational>;
using IntVector = std::vector<Integer>;

inline RatVector to_rational(const IntVector& v) {
    RatVector r;
    r.reserve(v.size());
    for (const auto& z : v) r.emplace_back(z);
    return r;
}

inline Rational dot(const RatVector& a, const RatVector& b) {
    if (a.size() != b.size()) throw input_error("dot: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rational dot(const RatVector& a, const IntVector& b) {
    if (a.size() != b.size()) throw input_error("dot: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * Rational(b[i]);
    return s;
}

inline Integer dot(const IntVector& a, const IntVector& b) {
    if (a.size() != b.size()) throw input_error("dot: dimension mismatch");
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline bool is_zero(const RatVector& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

inline bool is_zero(const IntVector& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

inline RatVector add(const RatVector& a, const RatVector& b) {
    if (a.size() != b.size()) throw input_error("add: dimension mismatch");
    RatVector r(a);
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

inline RatVector sub(const RatVector& a, const RatVector& b) {
    if (a.size() != b.size()) throw input_error("sub: dimension mismatch");
    RatVector r(a);
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return r;
}

inline RatVector scaled(const RatVector& a, const Rational& c) {
    RatVector r(a);
    for (auto& x : r) x *= c;
    return r;
}

inline IntVector negated(const IntVector& v) {
    IntVector r(v);
    for (auto& x : r) x = -x;
    return r;
}

// Dense row-major rational matrix. Rectangular, no implicit resizing.
class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static RatMatrix from_rows(const std::vector<RatVector>& rows) {
        if (rows.empty()) return RatMatrix();
        RatMatrix m(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw input_error("from_rows: ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static RatMatrix identity(std::size_t n) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    RatVector row(std::size_t i) const {
        return RatVector(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
    }

    RatMatrix transpose() const {
        RatMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool operator==(const RatMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Rational> a_;
};

inline RatVector mul(const RatMatrix& m, const RatVector& v) {
    if (m.cols() != v.size()) throw input_error("mul: dimension mismatch");
    RatVector r(m.rows(), Rational(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
    return r;
}

inline RatMatrix mul(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols() != b.rows()) throw input_error("mul: dimension mismatch");
    RatMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += a(i, k) * b(k, j);
        }
    return r;
}

// Reduced row echelon form. Pivot choice is the first row with a nonzero
// entry, so the result is deterministic. transform * input == mat.
struct Echelon {
    RatMatrix mat;
    std::vector<std::size_t> pivot_cols;
    RatMatrix transform;
};

inline Echelon reduced_echelon(const RatMatrix& input) {
    Echelon e{input, {}, RatMatrix::identity(input.rows())};
    RatMatrix& m = e.mat;
    RatMatrix& t = e.transform;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(p, j));
        if (p != r)
            for (std::size_t j = 0; j < t.cols(); ++j) std::swap(t(r, j), t(p, j));
        Rational inv = 1 / m(r, c);
        for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t j = 0; j < t.cols(); ++j) t(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rational f = m(i, c);
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
            for (std::size_t j = 0; j < t.cols(); ++j) t(i, j) -= f * t(r, j);
        }
        e.pivot_cols.push_back(c);
        ++r;
    }
    return e;
}

inline std::size_t rank(const RatMatrix& m) { return reduced_echelon(m).pivot_cols.size(); }

// Canonical kernel basis: one vector per free column, with a 1 in the free
// coordinate and zeros in the other free coordinates.
inline std::vector<RatVector> kernel_basis(const RatMatrix& m) {
    Echelon e = reduced_echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;
    std::vector<RatVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        RatVector x(m.cols(), Rational(0));
        x[f] = 1;
        for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) x[e.pivot_cols[r]] = -e.mat(r, f);
        basis.push_back(std::move(x));
    }
    return basis;
}

// Affine system M x = b. On infeasibility, farkas is a row combination y with
// y^T M = 0 and y^T b != 0. On feasibility, particular sets free variables to
// zero (the canonical representative).
struct AffineSolution {
    bool feasible = false;
    RatVector particular;
    std::vector<RatVector> null_basis;
    RatVector farkas;
};

inline AffineSolution solve_affine(const RatMatrix& m, const RatVector& b) {
    if (m.rows() != b.size()) throw input_error("solve_affine: dimension mismatch");
    RatMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    Echelon e = reduced_echelon(aug);
    AffineSolution sol;
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) {
        if (e.pivot_cols[r] == m.cols()) {
            sol.feasible = false;
            sol.farkas = e.transform.row(r);
            return sol;
        }
    }
    sol.feasible = true;
    sol.particular.assign(m.cols(), Rational(0));
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
        sol.particular[e.pivot_cols[r]] = e.mat(r, m.cols());
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        RatVector x(m.cols(), Rational(0));
        x[f] = 1;
        for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) x[e.pivot_cols[r]] = -e.mat(r, f);
        sol.null_basis.push_back(std::move(x));
    }
    return sol;
}

inline RatMatrix inverse(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw input_error("inverse: matrix not square");
    Echelon e = reduced_echelon(m);
    if (e.pivot_cols.size() != m.cols()) throw input_error("inverse: singular matrix");
    return e.transform;
}

inline Rational det(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw input_error("det: matrix not square");
    RatMatrix w = m;
    Rational d = 1;
    for (std::size_t c = 0; c < w.cols(); ++c) {
        std::size_t p = c;
        while (p < w.rows() && w(p, c) == 0) ++p;
        if (p == w.rows()) return Rational(0);
        if (p != c) {
            for (std::size_t j = 0; j < w.cols(); ++j) std::swap(w(c, j), w(p, j));
            d = -d;
        }
        d *= w(c, c);
        Rational inv = 1 / w(c, c);
        for (std::size_t i = c + 1; i < w.rows(); ++i) {
            if (w(i, c) == 0) continue;
            Rational f = w(i, c) * inv;
            for (std::size_t j = c; j < w.cols(); ++j) w(i, j) -= f * w(c, j);
        }
    }
    return d;
}

// Inertia (n+, n-, n0) of a symmetric matrix, computed by exact congruence
// reduction; zero-diagonal blocks are handled as hyperbolic pairs.
struct Inertia {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t zero = 0;
    bool operator==(const Inertia&) const = default;
};

inline void require_symmetric(const RatMatrix& s, const char* who) {
    if (s.rows() != s.cols()) throw input_error(std::string(who) + ": matrix not square");
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = i + 1; j < s.cols(); ++j)
            if (s(i, j) != s(j, i)) throw input_error(std::string(who) + ": matrix not symmetric");
}

inline Inertia signature(const RatMatrix& s) {
    require_symmetric(s, "signature");
    RatMatrix w = s;
    std::vector<std::size_t> act(s.rows());
    for (std::size_t i = 0; i < act.size(); ++i) act[i] = i;
    Inertia sig;
    while (!act.empty()) {
        std::size_t di = act.size();
        for (std::size_t k = 0; k < act.size(); ++k)
            if (w(act[k], act[k]) != 0) {
                di = k;
                break;
            }
        if (di < act.size()) {
            std::size_t i = act[di];
            const Rational piv = w(i, i);
            if (piv > 0)
                ++sig.positive;
            else
                ++sig.negative;
            act.erase(act.begin() + di);
            for (auto k : act)
                for (auto l : act) w(k, l) -= w(k, i) * w(i, l) / piv;
        } else {
            std::size_t bi = act.size(), bj = act.size();
            for (std::size_t p = 0; p < act.size() && bi == act.size(); ++p)
                for (std::size_t q = p + 1; q < act.size(); ++q)
                    if (w(act[p], act[q]) != 0) {
                        bi = p;
                        bj = q;
                        break;
                    }
            if (bi == act.size()) {
                sig.zero += act.size();
                break;
            }
            std::size_t i = act[bi], j = act[bj];
            const Rational b = w(i, j);
            ++sig.positive;
            ++sig.negative;
            act.erase(act.begin() + bj);
            act.erase(act.begin() + bi);
            for (auto k : act)
                for (auto l : act) w(k, l) -= (w(k, i) * w(j, l) + w(k, j) * w(i, l)) / b;
        }
    }
    return sig;
}

// Result of the reverse Cauchy-Schwarz witness extraction. When Q*y != 0 the
// images satisfy Q*x == factor * Q*y exactly; when Q*y == 0 the linear form
// of y vanishes and proportionality is trivial.
struct ImageProportionality {
    bool y_image_zero = false;
    bool x_image_zero = false;
    std::optional<Rational> factor;
};

inline ImageProportionality lorentz_proportional(const RatMatrix& q, const RatVector& x,
                                                 const RatVector& y) {
    require_symmetric(q, "lorentz_proportional");
    if (x.size() != q.rows() || y.size() != q.rows())
        throw input_error("lorentz_proportional: dimension mismatch");
    Inertia sig = signature(q);
    if (sig.positive != 1)
        throw precondition_error("lorentz_proportional: form must have exactly one positive eigenvalue, has " +
                                 std::to_string(sig.positive));
    RatVector qx = mul(q, x), qy = mul(q, y);
    Rational xqx = dot(x, qx), yqy = dot(y, qy), xqy = dot(x, qy);
    if (xqx < 0) throw precondition_error("lorentz_proportional: Q(x,x) < 0");
    if (yqy < 0) throw precondition_error("lorentz_proportional: Q(y,y) < 0");
    if (xqy * xqy != xqx * yqy)
        throw precondition_error("lorentz_proportional: Q(x,y)^2 != Q(x,x) Q(y,y)");
    ImageProportionality res;
    if (is_zero(qy)) {
        res.y_image_zero = true;
        res.x_image_zero = is_zero(qx);
        return res;
    }
    std::size_t k = 0;
    while (qy[k] == 0) ++k;
    Rational c = qx[k] / qy[k];
    for (std::size_t i = 0; i < qy.size(); ++i)
        if (qx[i] != c * qy[i])
            throw internal_error("lorentz_proportional: images not proportional under equality case");
    res.factor = c;
    return res;
}

inline IntVector primitive(const IntVector& v) {
    Integer g = 0;
    for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
    if (g == 0) throw input_error("primitive: zero vector");
    IntVector r(v);
    for (auto& x : r) x /= g;
    return r;
}

// Clears denominators and reduces; the result is the unique primitive integer
// vector that is a positive multiple of v.
inline IntVector primitive_from_rational(const RatVector& v) {
    Integer l = 1;
    for (const auto& x : v) l = boost::multiprecision::lcm(l, denominator(x));
    IntVector z;
    z.reserve(v.size());
    for (const auto& x : v) z.push_back(numerator(x) * (l / denominator(x)));
    return primitive(z);
}

// Basis of the saturated sublattice u-perp of Z^n plus a completion vector w
// with w . u = 1; stacking basis rows and w gives a unimodular matrix.
struct LatticeComplement {
    std::vector<IntVector> basis;
    IntVector completion;
};

inline LatticeComplement lattice_complement_basis(const IntVector& u) {
    if (u.empty()) throw input_error("lattice_complement_basis: empty vector");
    {
        Integer g = 0;
        for (const auto& x : u) g = boost::multiprecision::gcd(g, x);
        if (g == 0) throw input_error("lattice_complement_basis: zero vector");
        if (g != 1) throw input_error("lattice_complement_basis: vector not primitive");
    }
    const std::size_t n = u.size();
    std::vector<IntVector> v(n, IntVector(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = 1;
    IntVector vec = u;
    const std::size_t last = n - 1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (vec[i] == 0) continue;
        auto [g, s, t] = extended_gcd(vec[last], vec[i]);
        Integer a = vec[last] / g, b = vec[i] / g;
        IntVector new_last(n), new_i(n);
        for (std::size_t j = 0; j < n; ++j) {
            new_last[j] = s * v[last][j] + t * v[i][j];
            new_i[j] = -b * v[last][j] + a * v[i][j];
        }
        v[last] = std::move(new_last);
        v[i] = std::move(new_i);
        vec[last] = g;
        vec[i] = 0;
    }
    // if no elimination step ran (all leading entries zero), vec[last] is
    // u[last] = +-1 rather than a nonnegative gcd; flip to pair to +1
    if (vec[last] < 0)
        for (auto& x : v[last]) x = -x;
    LatticeComplement lc;
    lc.completion = v[last];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (dot(v[i], u) != 0) throw internal_error("lattice_complement_basis: row not orthogonal");
        lc.basis.push_back(v[i]);
    }
    if (dot(lc.completion, u) != 1)
        throw internal_error("lattice_complement_basis: completion pairing != 1");
    return lc;
}

}  // namespace afx
