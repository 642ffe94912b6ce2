#pragma once

// Real continued fractions: Gauss map, convergents, the products
// beta_n = x_0...x_n, and the real Brjuno sum
//
//     B(x) = sum_{j>=0} beta_{j-1}(x) * f(x_j),   f(x) = -log x by default.
//
// Rational inputs run through exact integer Euclid so that the truncated
// sum B_finite(p/q) is reproducible bit-for-bit up to libm; irrational
// inputs iterate the Gauss map in extended precision to postpone the
// unavoidable G^{2n} error amplification of the residue recursion.

#include <cstdint>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace brjuno {

inline constexpr double kGoldenG = 1.6180339887498948482;  // (sqrt5+1)/2
inline constexpr double kGoldenSmall = 0.6180339887498948482;  // 1/G

/// One Gauss-map step on (0,1): returns (a, x') with a = floor(1/x) and
/// x' = 1/x - a in [0,1).
inline std::pair<std::int64_t, double> gauss_map(double x) {
    if (!(x > 0.0 && x < 1.0))
        throw std::domain_error("gauss_map: x must lie in (0,1)");
    double y = 1.0 / x;
    double a = std::floor(y);
    double r = y - a;
    if (r < 0.0) { a -= 1.0; r += 1.0; }
    if (r >= 1.0) { a += 1.0; r -= 1.0; }
    return {static_cast<std::int64_t>(a), r};
}

struct RealCF {
    std::int64_t a0 = 0;                  // integer part of the input
    std::vector<std::int64_t> quotients;  // a_1, a_2, ...
    std::vector<double> residues;         // x_0, x_1, ...  (in (0,1))
    std::vector<std::int64_t> p, q;       // convergents p_j/q_j of x - a0, j >= 0
    std::vector<double> beta;             // beta_j = x_0*...*x_j
    bool terminated = false;              // a residue reached zero (rational input)
};

namespace detail {
// residues below this are indistinguishable from zero in binary64 once the
// beta products are formed
inline constexpr double kResidueFloor = 1e-15;
inline constexpr std::int64_t kDenomCap = std::int64_t(1) << 50;
}

/// Continued fraction of a real number by iterating the Gauss map.
/// Residues below max(tol, 1e-15) terminate the expansion.
inline RealCF expand_cf(double x, int max_terms, double tol = 0.0) {
    if (!std::isfinite(x)) throw std::domain_error("expand_cf: non-finite input");
    if (max_terms < 1) throw std::invalid_argument("expand_cf: max_terms >= 1");
    const long double floor_tol =
        std::max<long double>(tol, detail::kResidueFloor);

    RealCF cf;
    cf.a0 = static_cast<std::int64_t>(std::floor(x));
    long double xi = static_cast<long double>(x) - static_cast<long double>(cf.a0);
    if (xi < floor_tol) { cf.terminated = true; return cf; }
    if (xi > 1.0L - 1e-18L) { cf.a0 += 1; cf.terminated = true; return cf; }

    // convergents of the fractional part: p_{-1}/q_{-1} = 1/0, p_0/q_0 = 0/1
    std::int64_t pm2 = 1, qm2 = 0, pm1 = 0, qm1 = 1;
    cf.p.push_back(pm1); cf.q.push_back(qm1);
    long double betaprod = 1.0L;
    for (int j = 0; j < max_terms; ++j) {
        cf.residues.push_back(static_cast<double>(xi));
        betaprod *= xi;
        cf.beta.push_back(static_cast<double>(betaprod));

        long double y = 1.0L / xi;
        long double a = std::floor(y);
        long double r = y - a;
        if (r < 0.0L) { a -= 1.0L; r += 1.0L; }
        if (r >= 1.0L) { a += 1.0L; r -= 1.0L; }
        std::int64_t ai = static_cast<std::int64_t>(a);
        std::int64_t pj, qj;
        if (__builtin_mul_overflow(ai, pm1, &pj) || __builtin_add_overflow(pj, pm2, &pj) ||
            __builtin_mul_overflow(ai, qm1, &qj) || __builtin_add_overflow(qj, qm2, &qj) ||
            qj > detail::kDenomCap) {
            break;  // convergents exceed anything binary64 can resolve
        }
        cf.quotients.push_back(ai);
        cf.p.push_back(pj); cf.q.push_back(qj);
        pm2 = pm1; pm1 = pj; qm2 = qm1; qm1 = qj;
        if (r < floor_tol) { cf.terminated = true; break; }
        xi = r;
    }
    return cf;
}

/// Exact continued fraction of a rational via the Euclidean algorithm.
/// Returns the remainder sequence r_0 > r_1 > ... > r_L > 0 of (den, num')
/// where num' = num mod den, so x_j = r_{j+1}/r_j and beta_{j-1} = r_j/r_0.
inline std::vector<std::int64_t> euclid_remainders(const Rational& r) {
    if (r.is_infinity()) throw std::domain_error("euclid_remainders: finite input required");
    std::int64_t num = ((r.num % r.den) + r.den) % r.den;
    std::vector<std::int64_t> rem;
    rem.push_back(r.den);
    if (num == 0) return rem;
    rem.push_back(num);
    while (rem.back() != 0) {
        std::int64_t a = rem[rem.size() - 2], b = rem.back();
        rem.push_back(a % b);
    }
    rem.pop_back();  // drop the trailing zero
    return rem;
}

/// Truncated Brjuno sum at a rational, computed from the exact Euclidean
/// remainder sequence and evaluated in binary64 only at the final logs.
inline double brjuno_finite(const Rational& r) {
    const auto rem = euclid_remainders(r);
    const double r0 = static_cast<double>(rem[0]);
    double s = 0.0, comp = 0.0;
    for (std::size_t j = 0; j + 1 < rem.size(); ++j) {
        double term = (static_cast<double>(rem[j]) / r0) *
                      (std::log(static_cast<double>(rem[j])) -
                       std::log(static_cast<double>(rem[j + 1])));
        double t = s + term;                       // Neumaier compensation
        comp += (std::fabs(s) >= std::fabs(term)) ? (s - t) + term : (term - t) + s;
        s = t;
    }
    return s + comp;
}

using BrjunoKernel = std::function<double(double xj, std::int64_t pj, std::int64_t qj)>;

struct BrjunoRealResult {
    double value = 0.0;
    double tail_bound = 0.0;
    int terms_used = 0;
    bool terminated = false;
};

/// The Brjuno series with a pluggable kernel (default f(x) = -log x).
/// The tail bound uses beta_j <= g^j together with log(1/x_j) <= log q_{j+1}
/// + log 2 and worst-case golden growth of the unseen denominators; it is
/// deliberately conservative and only meaningful for the default kernel.
inline BrjunoRealResult brjuno_real(double x, int max_terms = 64, double tol = 0.0,
                                    const BrjunoKernel& kernel = {}) {
    if (!std::isfinite(x)) throw std::domain_error("brjuno_real: non-finite input");
    x -= std::floor(x);  // the function is Z-periodic
    RealCF cf = expand_cf(x + 0.0, max_terms, tol);

    const bool default_kernel = !kernel;
    BrjunoRealResult out;
    out.terminated = cf.terminated;
    double s = 0.0, comp = 0.0;
    double last_term = 0.0;
    for (std::size_t j = 0; j < cf.residues.size(); ++j) {
        double b = (j == 0) ? 1.0 : cf.beta[j - 1];
        double k = default_kernel ? -std::log(cf.residues[j])
                                  : kernel(cf.residues[j], cf.p[j], cf.q[j]);
        double term = b * k;
        last_term = std::fabs(term);
        double t = s + term;
        comp += (std::fabs(s) >= std::fabs(term)) ? (s - t) + term : (term - t) + s;
        s = t;
        ++out.terms_used;
    }
    out.value = s + comp;
    if (!cf.terminated && !cf.residues.empty()) {
        const double g = kGoldenSmall, G = kGoldenG;
        int r = out.terms_used;
        if (default_kernel) {
            double qr = static_cast<double>(cf.q.back());
            out.tail_bound = std::pow(g, r) *
                ((std::log(qr) + std::log(2.0)) / (1.0 - g) + std::log(G) / ((1.0 - g) * (1.0 - g)));
        } else {
            out.tail_bound = last_term * g / (1.0 - g);  // heuristic for custom kernels
        }
    }
    return out;
}

/// Rational overload: exact path, identical to brjuno_finite for the
/// default kernel.
inline BrjunoRealResult brjuno_real(const Rational& r) {
    BrjunoRealResult out;
    out.value = brjuno_finite(r);
    out.terminated = true;
    out.terms_used = static_cast<int>(euclid_remainders(r).size()) - 1;
    return out;
}

} // namespace brjuno
