#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "afx/criticality.hpp"
#include "afx/volume.hpp"

namespace afx {

enum class AFStatus { degenerate, strict_inequality, equality };

// Witness for the equality case: support(M,u) = a support(N,u) + v.u at
// every extreme facet normal u, with a > 0.
struct Certificate {
    Rational a;
    RatVector v;
};

struct AFVerdict {
    Rational v_mn, v_mm, v_nn;
    Rational slack;  // v_mn^2 - v_mm v_nn, nonnegative by Alexandrov-Fenchel
    AFStatus status = AFStatus::degenerate;
    std::optional<Certificate> certificate;
    std::optional<IntVector> violated_direction;
};

// The three mixed volumes of the instance and their slack. No certificate
// search at this stage.
inline AFVerdict af_triple(const VPolytope& m, const VPolytope& n, const Collection& c,
                           VolumeMemo* memo = nullptr) {
    const std::size_t dim = c.ambient_dim();
    if (m.ambient_dim() != dim || n.ambient_dim() != dim)
        throw input_error("af_triple: dimension mismatch");
    VolumeMemo local;
    VolumeMemo& vm = memo ? *memo : local;
    auto mixed = [&](const VPolytope& x, const VPolytope& y) {
        std::vector<VPolytope> tuple{x, y};
        for (const auto& p : c.polytopes()) tuple.push_back(p);
        return mixed_volume_polarization(tuple, &vm);
    };
    AFVerdict v;
    v.v_mn = mixed(m, n);
    v.v_mm = mixed(m, m);
    v.v_nn = mixed(n, n);
    v.slack = v.v_mn * v.v_mn - v.v_mm * v.v_nn;
    if (v.slack < 0) throw internal_error("Alexandrov-Fenchel slack is negative");
    v.status = v.v_mn == 0    ? AFStatus::degenerate
               : v.slack == 0 ? AFStatus::equality
                              : AFStatus::strict_inequality;
    return v;
}

namespace detail {

// One equation per normal: a h_N(u_i) + v.u_i = h_M(u_i), unknowns (a, v).
inline RatMatrix certificate_rows(std::span<const IntVector> normals,
                                  std::span<const Rational> h_n, std::size_t count) {
    const std::size_t dim = normals[0].size();
    RatMatrix rows(count, dim + 1);
    for (std::size_t i = 0; i < count; ++i) {
        rows(i, 0) = h_n[i];
        for (std::size_t j = 0; j < dim; ++j) rows(i, j + 1) = Rational(normals[i][j]);
    }
    return rows;
}

struct CertificateSearch {
    std::optional<Certificate> certificate;
    std::optional<IntVector> violated_direction;
};

inline std::optional<Certificate> pick_certificate(const AffineSolution& sol, std::size_t dim) {
    RatVector x = sol.particular;
    const RatVector* shift = nullptr;
    for (const auto& d : sol.null_basis)
        if (d[0] != 0) {
            shift = &d;
            break;
        }
    if (shift) {
        // a is free on the solution set: move along the first such null
        // direction to land exactly at a = 1
        Rational t = (1 - x[0]) / (*shift)[0];
        for (std::size_t j = 0; j <= dim; ++j) x[j] += t * (*shift)[j];
    } else if (x[0] <= 0) {
        return std::nullopt;  // a is pinned to a nonpositive value
    }
    Certificate cert;
    cert.a = x[0];
    cert.v.assign(x.begin() + 1, x.end());
    return cert;
}

inline CertificateSearch certificate_search(std::span<const IntVector> normals,
                                            std::span<const Rational> h_m,
                                            std::span<const Rational> h_n) {
    if (normals.size() != h_m.size() || normals.size() != h_n.size())
        throw input_error("certificate_solve: misaligned inputs");
    CertificateSearch out;
    if (normals.empty()) {
        out.certificate = Certificate{Rational(1), {}};
        return out;
    }
    const std::size_t dim = normals[0].size();
    RatVector rhs(h_m.begin(), h_m.end());
    auto full = solve_affine(certificate_rows(normals, h_n, normals.size()), rhs);
    if (full.feasible) {
        out.certificate = pick_certificate(full, dim);
        if (out.certificate) return out;
    }
    // no certificate: locate the first prefix of the system that is either
    // inconsistent or pins a to a nonpositive value
    for (std::size_t k = 1; k <= normals.size(); ++k) {
        RatVector head(h_m.begin(), h_m.begin() + k);
        auto sol = solve_affine(certificate_rows(normals, h_n, k), head);
        bool pinned_bad = false;
        if (sol.feasible) {
            bool a_free = false;
            for (const auto& d : sol.null_basis)
                if (d[0] != 0) a_free = true;
            pinned_bad = !a_free && sol.particular[0] <= 0;
        }
        if (!sol.feasible || pinned_bad) {
            out.violated_direction = normals[k - 1];
            return out;
        }
    }
    throw internal_error("certificate search failed without a violated prefix");
}

}  // namespace detail

// Exact solvability of h_M(u_i) = a h_N(u_i) + v.u_i with a > 0. Canonical
// representative: reduced-echelon particular solution (free unknowns zero),
// then a moved exactly to 1 whenever a is not determined.
inline std::optional<Certificate> certificate_solve(std::span<const IntVector> normals,
                                                    std::span<const Rational> h_m,
                                                    std::span<const Rational> h_n) {
    return detail::certificate_search(normals, h_m, h_n).certificate;
}

// Full equality decision. The two routes (slack of the mixed volumes,
// feasibility of the support certificate at the extreme facet normals of
// Q = M + N + sum P_i) must agree; disagreement aborts the run.
inline AFVerdict af_equality_certificate(const VPolytope& m, const VPolytope& n,
                                         const Collection& c, VolumeMemo* memo = nullptr) {
    auto sc = supercritical(c);
    if (!sc.ok)
        throw precondition_error("collection is not supercritical:\n" +
                                 format_supercritical_table(sc));
    AFVerdict v = af_triple(m, n, c, memo);
    if (v.status == AFStatus::degenerate) return v;  // equality automatic, nothing to certify

    std::vector<VPolytope> parts{m, n};
    for (const auto& p : c.polytopes()) parts.push_back(p);
    VPolytope q = sum_of(parts);

    std::vector<IntVector> normals;
    std::vector<Rational> h_m, h_n;
    for (const auto& rep : extreme_facet_normals(q, c)) {
        if (!rep.is_extreme) continue;
        normals.push_back(rep.direction);
        h_m.push_back(support(m, rep.direction));
        h_n.push_back(support(n, rep.direction));
    }

    auto search = detail::certificate_search(normals, h_m, h_n);
    const bool solvable = search.certificate.has_value();
    if (solvable != (v.slack == 0))
        throw internal_error(std::string("extremal decision mismatch: slack ") +
                             emit_rational(v.slack) + " but certificate " +
                             (solvable ? "found" : "absent"));
    v.certificate = search.certificate;
    v.violated_direction = search.violated_direction;
    return v;
}

struct KTReport {
    std::vector<Rational> sequence;  // V_k = V(A[k], B[n-k]), k = 0..n
    std::vector<Rational> slacks;    // (n! V_k)^2 - (n! V_{k-1})(n! V_{k+1}), k = 1..n-1
    std::optional<std::size_t> checked_k;
    std::optional<AFVerdict> equality_analysis;
    std::vector<std::string> degeneracy_causes;  // set when V_{checked_k} = 0
};

// The full intersection-number sequence of a pair, with log-concavity slacks
// in the n!-scaled normalization.
inline KTReport kt_sequence(const VPolytope& a, const VPolytope& b, VolumeMemo* memo = nullptr) {
    if (a.ambient_dim() != b.ambient_dim()) throw input_error("kt_sequence: dimension mismatch");
    const std::size_t n = a.ambient_dim();
    VolumeMemo local;
    VolumeMemo& vm = memo ? *memo : local;
    KTReport rep;
    for (std::size_t k = 0; k <= n; ++k) {
        std::vector<VPolytope> tuple;
        for (std::size_t i = 0; i < k; ++i) tuple.push_back(a);
        for (std::size_t i = k; i < n; ++i) tuple.push_back(b);
        rep.sequence.push_back(mixed_volume_polarization(tuple, &vm));
    }
    Rational f(detail::factorial(n));
    for (std::size_t k = 1; k + 1 <= n; ++k) {
        Rational mid = f * rep.sequence[k];
        Rational s = mid * mid - (f * rep.sequence[k - 1]) * (f * rep.sequence[k + 1]);
        if (s < 0) throw internal_error("log-concavity slack is negative");
        rep.slacks.push_back(s);
    }
    return rep;
}

// Equality analysis at position k by reduction to the AF instance
// M = A, N = B, collection (A repeated k-1 times, B repeated n-k-1 times).
// k = 0 and k = n are accepted only for the degeneracy diagnosis.
inline KTReport kt_equality(const VPolytope& a, const VPolytope& b, std::size_t k,
                            VolumeMemo* memo = nullptr) {
    const std::size_t n = a.ambient_dim();
    if (k > n) throw input_error("kt_equality: k out of range");
    KTReport rep = kt_sequence(a, b, memo);
    rep.checked_k = k;

    if (rep.sequence[k] == 0) {
        if (poly_dim(a) < k) rep.degeneracy_causes.push_back("dim A < k");
        if (poly_dim(b) < n - k) rep.degeneracy_causes.push_back("dim B < n-k");
        if (poly_dim(minkowski_sum(a, b)) < n) rep.degeneracy_causes.push_back("dim(A+B) < n");
        if (rep.degeneracy_causes.empty())
            throw internal_error("V_k = 0 without a dimensional cause");
        return rep;
    }
    if (k == 0 || k == n)
        throw precondition_error("kt_equality: equality analysis needs 1 <= k <= n-1");
    if (poly_dim(a) < k + 1 || poly_dim(b) < n - k + 1 || poly_dim(minkowski_sum(a, b)) < n) {
        std::string diag = "kt_equality: reduction is not supercritical:";
        if (poly_dim(a) < k + 1) diag += " dim A < k+1;";
        if (poly_dim(b) < n - k + 1) diag += " dim B < n-k+1;";
        if (poly_dim(minkowski_sum(a, b)) < n) diag += " dim(A+B) < n;";
        throw precondition_error(diag);
    }

    std::vector<VPolytope> coll;
    for (std::size_t i = 0; i + 1 < k; ++i) coll.push_back(a);
    for (std::size_t i = 0; i + 1 < n - k; ++i) coll.push_back(b);
    Collection c(n, std::move(coll));
    AFVerdict verdict = af_equality_certificate(a, b, c, memo);

    // the reduction's slack must reproduce the sequence slack at k
    Rational f(detail::factorial(n));
    if (f * f * verdict.slack != rep.slacks[k - 1])
        throw internal_error("kt_equality: reduction slack disagrees with sequence slack");
    rep.equality_analysis = std::move(verdict);
    return rep;
}

}  // namespace afx
