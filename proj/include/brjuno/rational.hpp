#pragma once

// Exact rational arithmetic on 64-bit integers, Stern-Brocot / Farey
// structure, and ordered enumeration of reduced fractions.
//
// Conventions:
//  - fractions are always reduced with positive denominator;
//  - the single point at infinity is represented as 1/0 and is a legal
//    Farey endpoint (the right parent of every integer n/1 is 1/0).

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>
#include <algorithm>
#include <cmath>

namespace brjuno {

namespace detail {

inline std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_mul_overflow(x, y, &r))
        throw std::overflow_error("rational: 64-bit product overflow");
    return r;
}

inline std::int64_t checked_add(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_add_overflow(x, y, &r))
        throw std::overflow_error("rational: 64-bit sum overflow");
    return r;
}

} // namespace detail

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;   // den >= 1, or den == 0 for the point at infinity

    bool is_infinity() const { return den == 0; }
    double value() const {
        return den == 0 ? std::numeric_limits<double>::infinity()
                        : static_cast<double>(num) / static_cast<double>(den);
    }
    std::string str() const {
        return std::to_string(num) + "/" + std::to_string(den);
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    // Order as extended rationals; infinity compares greater than everything.
    friend bool operator<(const Rational& a, const Rational& b) {
        if (a.den == 0) return false;
        if (b.den == 0) return true;
        return (__int128)a.num * b.den < (__int128)b.num * a.den;
    }
};

/// Reduced fraction with positive denominator; (n,0) with n != 0 maps to
/// the infinity 1/0, and (0,0) is rejected.
inline Rational reduce(std::int64_t n, std::int64_t d) {
    if (d == 0) {
        if (n == 0) throw std::domain_error("reduce: 0/0 is undefined");
        return Rational{1, 0};
    }
    if (d < 0) { n = -n; d = -d; }
    std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    return Rational{n, d};
}

inline Rational rational_add(const Rational& a, const Rational& b) {
    using detail::checked_add;
    using detail::checked_mul;
    return reduce(checked_add(checked_mul(a.num, b.den), checked_mul(b.num, a.den)),
                  checked_mul(a.den, b.den));
}

struct FareyParents {
    Rational left;    // p'/q'  (smaller neighbour)
    Rational right;   // p''/q'' (larger neighbour; 1/0 when the child is an integer)
};

/// The unique unimodular pair whose mediant is r.  For an integer p/1 the
/// pair is ((p-1)/1, 1/0).
inline FareyParents farey_parents(const Rational& r) {
    if (r.is_infinity())
        throw std::domain_error("farey_parents: input must be finite");
    const std::int64_t p = r.num, q = r.den;
    if (q == 1)
        return FareyParents{Rational{p - 1, 1}, Rational{1, 0}};
    // Solve p''*q - p*q'' = +1 with 0 < q'' < q; then q' + q'' = q and
    // p' + p'' = p.  q'' = q - inverse(p mod q).
    std::int64_t pm = ((p % q) + q) % q;
    // extended gcd for the modular inverse of pm mod q
    std::int64_t r0 = pm, r1 = q, s0 = 1, s1 = 0;
    while (r1 != 0) {
        std::int64_t k = r0 / r1;
        std::int64_t r2 = r0 - k * r1; r0 = r1; r1 = r2;
        std::int64_t s2 = s0 - k * s1; s0 = s1; s1 = s2;
    }
    if (r0 != 1) throw std::domain_error("farey_parents: input not reduced");
    std::int64_t inv = ((s0 % q) + q) % q;   // pm * inv == 1 mod q
    std::int64_t qpp = q - inv;
    std::int64_t ppp = (1 + detail::checked_mul(p, qpp)) / q;
    std::int64_t qp = q - qpp;
    std::int64_t pp = p - ppp;
    return FareyParents{Rational{pp, qp}, Rational{ppp, qpp}};
}

/// All reduced p/q with lo <= p/q <= hi and q <= qmax, sorted by value and
/// then by denominator.  The order is deterministic so that downstream
/// series summation is reproducible.
inline std::vector<Rational> enumerate_rationals(double lo, double hi, std::int64_t qmax) {
    if (!(lo < hi)) throw std::invalid_argument("enumerate_rationals: need lo < hi");
    if (qmax < 1) throw std::invalid_argument("enumerate_rationals: need qmax >= 1");
    std::vector<Rational> out;
    for (std::int64_t q = 1; q <= qmax; ++q) {
        std::int64_t pmin = static_cast<std::int64_t>(std::ceil(lo * static_cast<double>(q)));
        std::int64_t pmax = static_cast<std::int64_t>(std::floor(hi * static_cast<double>(q)));
        for (std::int64_t p = pmin; p <= pmax; ++p) {
            double v = static_cast<double>(p) / static_cast<double>(q);
            if (v < lo || v > hi) continue;
            if (std::gcd(p < 0 ? -p : p, q) != 1) continue;
            out.push_back(Rational{p, q});
        }
    }
    std::sort(out.begin(), out.end(), [](const Rational& a, const Rational& b) {
        __int128 l = (__int128)a.num * b.den, r = (__int128)b.num * a.den;
        if (l != r) return l < r;
        return a.den < b.den;
    });
    return out;
}

} // namespace brjuno
