#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "rigidity/errors.hpp"

namespace rigidity {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

// Quotient rounded toward minus infinity; cpp_int's operator/ truncates
// toward zero, which breaks canonical coset reduction for negatives.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int gcd_int(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm_int(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

inline bool is_zero_vec(const IntVec& v) {
    for (const Int& x : v)
        if (x != 0) return false;
    return true;
}

inline bool is_zero_vec(const RatVec& v) {
    for (const Rat& x : v)
        if (x != 0) return false;
    return true;
}

inline Int dot(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline IntVec add(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("add: length mismatch");
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline IntVec sub(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("sub: length mismatch");
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline IntVec negate(const IntVec& a) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline IntVec scale(const Int& c, const IntVec& a) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline RatVec to_rational(const IntVec& v) {
    RatVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

// gcd of all entries, nonnegative; 0 for the zero vector
inline Int content(const IntVec& v) {
    Int g = 0;
    for (const Int& x : v) g = gcd_int(g, x);
    return g;
}

// Shortest integer vector on the same rational line, first nonzero entry
// positive. The zero vector maps to itself.
inline IntVec primitive_integer(const RatVec& v) {
    Int den = 1;
    for (const Rat& x : v) den = lcm_int(den, boost::multiprecision::denominator(x));
    IntVec w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rat scaled = v[i] * Rat(den);
        w[i] = boost::multiprecision::numerator(scaled);
    }
    Int g = content(w);
    if (g == 0) return w;
    for (Int& x : w) x /= g;
    for (const Int& x : w) {
        if (x == 0) continue;
        if (x < 0)
            for (Int& y : w) y = -y;
        break;
    }
    return w;
}

inline IntVec primitive_integer(const IntVec& v) { return primitive_integer(to_rational(v)); }

inline double to_double(const Int& a) { return a.convert_to<double>(); }
inline double to_double(const Rat& a) { return a.convert_to<double>(); }

inline std::string vec_str(const IntVec& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << v[i];
    }
    os << ')';
    return os.str();
}

}  // namespace rigidity
