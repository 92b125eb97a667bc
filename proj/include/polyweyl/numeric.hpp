#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace polyweyl {

// Exact arithmetic everywhere. No floating point in this library.
using Int = mpz_class;
using Rat = mpq_class;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// mpq_class(p, q) does not canonicalize; this does
inline Rat frac(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

// g = p*a + q*b
inline Int gcdext(const Int& a, const Int& b, Int& p, Int& q) {
    Int g;
    mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// gcd of all entries, zero for the empty/zero vector
inline Int content(const IntVec& v) {
    Int g = 0;
    for (const Int& x : v) g = gcd(g, x);
    return g;
}

inline bool is_zero(const IntVec& v) {
    for (const Int& x : v)
        if (x != 0) return false;
    return true;
}

// Divide out the content; sign unchanged. Zero vector stays zero.
inline IntVec primitive_part(const IntVec& v) {
    Int g = content(v);
    if (g == 0 || g == 1) return v;
    IntVec w(v.size());
    for (size_t i = 0; i < v.size(); ++i) w[i] = v[i] / g;
    return w;
}

// Scale a rational direction to the primitive integer vector pointing the same way.
inline IntVec primitive_direction(const RatVec& v) {
    Int den = 1;
    for (const Rat& x : v) den = lcm(den, x.get_den());
    IntVec w(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        Rat s = v[i] * den;
        w[i] = s.get_num();
    }
    return primitive_part(w);
}

inline Rat dot(const RatVec& a, const RatVec& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Int dot(const IntVec& a, const IntVec& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rat dot(const RatVec& a, const IntVec& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * Rat(b[i]);
    return s;
}

inline RatVec to_rat(const IntVec& v) {
    RatVec w(v.size());
    for (size_t i = 0; i < v.size(); ++i) w[i] = Rat(v[i]);
    return w;
}

inline IntVec negate(const IntVec& v) {
    IntVec w(v.size());
    for (size_t i = 0; i < v.size(); ++i) w[i] = -v[i];
    return w;
}

// "p" when integral, "p/q" otherwise; canonical form for all serialized rationals.
inline std::string rat_to_string(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::optional<Rat> rat_from_string(const std::string& s);

}  // namespace polyweyl
