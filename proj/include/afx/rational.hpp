#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <tuple>

#include "afx/errors.hpp"

namespace afx {

// All arithmetic in the library is exact. Rational values are kept in lowest
// terms with positive denominator: GMP canonicalizes after every arithmetic
// operation, but NOT when constructing from a string or an integer pair, so
// construction from raw numerator/denominator must go through make_rational.
using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw input_error("rational with zero denominator");
    Rational r(num, den);
    mpq_canonicalize(r.backend().data());
    return r;
}

// Accepts "p", "p/q", optional leading '-' on either part. The canonical form
// is what emit_rational produces; inputs not in lowest terms are accepted and
// normalized (callers that care report a warning).
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw input_error("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        return make_rational(num, den);
    } catch (const std::runtime_error& e) {
        throw input_error("bad rational literal '" + s + "'");
    }
}

// "p" when the denominator is 1, "p/q" otherwise. Round-trips through
// parse_rational exactly.
inline std::string emit_rational(const Rational& r) {
    return r.str();
}

inline bool is_canonical_literal(const std::string& s) {
    try {
        return emit_rational(parse_rational(s)) == s;
    } catch (const input_error&) {
        return false;
    }
}

// gcd(a,b) together with x,y solving a*x + b*y = g, g >= 0.
inline std::tuple<Integer, Integer, Integer> extended_gcd(Integer a, Integer b) {
    Integer x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        Integer q = a / b;
        Integer t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
    }
    return {a, x0, y0};
}

}  // namespace afx
