#pragma once

// Complex continued fraction: the domain decomposition of the plane, the
// iteration z -> 1/z - m restricted to D, its convergents and beta products,
// and the location of the cells H(m_1,...,m_k) that tile the strip
// 0 < Im z <= 1/2.
//
// Domains (closed, tested with tolerance; boundary points may carry several
// labels):
//   D0:   |z+1| <= 1,  Re z >= sqrt(3)/2 - 1
//   D1:   |z| >= 1,    |z - 1/sqrt(3)| <= 1/sqrt(3)
//   D:    |z| <= 1,    |z-i| >= 1, |z+i| >= 1, Re z > 0
//   H0:   |z-i| <= 1,  |z+1| >= 1, Im z <= 1/2      (H0bar = conjugate)
//   Delta = H0 u H0bar u D = { |z| <= 1, |z+1| >= 1, |Im z| <= 1/2 }
//   Dinf: the complement of D0 u Delta u D1

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dilog.hpp"   // Complex alias

namespace brjuno {

enum class DomainLabel { D0, D1, D, H0, H0bar, Delta, Dinf };

namespace detail {
inline constexpr double kDomTol = 1e-12;
inline constexpr double kSqrt3Half = 0.86602540378443864676;
inline constexpr double kInvSqrt3 = 0.57735026918962576451;
}

inline bool in_D0(const Complex& z, double tol = detail::kDomTol) {
    return std::abs(z + 1.0) <= 1.0 + tol && z.real() >= detail::kSqrt3Half - 1.0 - tol;
}
inline bool in_D1(const Complex& z, double tol = detail::kDomTol) {
    return std::abs(z) >= 1.0 - tol &&
           std::abs(z - detail::kInvSqrt3) <= detail::kInvSqrt3 + tol;
}
inline bool in_D(const Complex& z, double tol = detail::kDomTol) {
    return std::abs(z) <= 1.0 + tol && std::abs(z - Complex(0, 1)) >= 1.0 - tol &&
           std::abs(z + Complex(0, 1)) >= 1.0 - tol && z.real() >= -tol;
}
inline bool in_H0(const Complex& z, double tol = detail::kDomTol) {
    return std::abs(z - Complex(0, 1)) <= 1.0 + tol && std::abs(z + 1.0) >= 1.0 - tol &&
           z.imag() <= 0.5 + tol;
}
inline bool in_H0bar(const Complex& z, double tol = detail::kDomTol) {
    return in_H0(std::conj(z), tol);
}
inline bool in_Delta(const Complex& z, double tol = detail::kDomTol) {
    return std::abs(z) <= 1.0 + tol && std::abs(z + 1.0) >= 1.0 - tol &&
           std::fabs(z.imag()) <= 0.5 + tol;
}
inline bool in_Dinf(const Complex& z, double tol = detail::kDomTol) {
    if (std::fabs(z.imag()) >= 0.5 - tol) return true;
    if (z.real() <= detail::kSqrt3Half - 1.0 + tol) return true;
    return z.real() >= detail::kSqrt3Half - tol &&
           std::abs(z - detail::kInvSqrt3) >= detail::kInvSqrt3 - tol;
}

inline std::vector<DomainLabel> classify(const Complex& z) {
    std::vector<DomainLabel> out;
    if (in_D0(z)) out.push_back(DomainLabel::D0);
    if (in_D1(z)) out.push_back(DomainLabel::D1);
    if (in_D(z)) out.push_back(DomainLabel::D);
    if (in_H0(z)) out.push_back(DomainLabel::H0);
    if (in_H0bar(z)) out.push_back(DomainLabel::H0bar);
    if (in_Delta(z)) out.push_back(DomainLabel::Delta);
    if (in_Dinf(z)) out.push_back(DomainLabel::Dinf);
    return out;
}

struct CcfStep {
    std::int64_t m = 0;
    Complex next{};
    bool boundary_tie = false;  // |1/z - m| landed on the unit circle within tolerance
};

/// One step of the complex Gauss algorithm: the unique m >= 1 with
/// 1/z - m in Delta and |1/z - m| < 1.  On the common boundary arc of two
/// tiles the strict inequality resolves the choice; a residue exactly on
/// the unit circle is flagged.
inline CcfStep ccf_step(const Complex& z) {
    constexpr double tol = detail::kDomTol;
    if (!in_D(z)) throw std::domain_error("ccf_step: z must lie in D");
    if (std::abs(z) < 1e-14) throw std::domain_error("ccf_step: z = 0 has no step");
    Complex w = 1.0 / z;
    std::int64_t m0 = static_cast<std::int64_t>(std::floor(w.real()));
    for (std::int64_t m = std::max<std::int64_t>(1, m0 - 1); m <= m0 + 2; ++m) {
        Complex A = w - static_cast<double>(m);
        if (!in_Delta(A, tol)) continue;
        double r = std::abs(A);
        if (r <= 1.0 - tol)
            return CcfStep{m, A, false};
        if (r <= 1.0 + tol)
            return CcfStep{m, A, true};  // on the arc between two tiles
    }
    throw std::logic_error("ccf_step: no admissible branch found");
}

enum class CcfStop { hit_zero, left_D, depth_cap };

struct ComplexCF {
    std::vector<Complex> z;          // z_0, z_1, ..., including the final iterate
    std::vector<std::int64_t> m;     // branch integers m_1, m_2, ...
    std::vector<std::int64_t> p, q;  // convergents, p[i]/q[i] after i letters
    std::vector<Complex> beta;       // beta_i = z_0 z_1 ... z_i
    CcfStop stop = CcfStop::depth_cap;
    bool boundary_tie = false;
};

/// Iterate the complex Gauss algorithm from z0 while the iterate stays in D.
/// Rational inputs reach 0; non-real inputs leave D after finitely many
/// steps with |Im z_i| growing monotonically.
inline ComplexCF ccf_expand(Complex z0, int max_depth) {
    if (max_depth < 1) throw std::invalid_argument("ccf_expand: max_depth >= 1");
    ComplexCF cf;
    cf.z.push_back(z0);
    cf.p.push_back(0); cf.q.push_back(1);  // p_0 = 0, q_0 = 1 (empty word)
    std::int64_t pm2 = 1, qm2 = 0, pm1 = 0, qm1 = 1;
    Complex cur = z0, prod = 1.0;
    for (int i = 0; i < max_depth; ++i) {
        if (std::abs(cur) < 1e-14) { cf.stop = CcfStop::hit_zero; return cf; }
        if (!in_D(cur)) { cf.stop = CcfStop::left_D; return cf; }
        CcfStep st = ccf_step(cur);
        cf.boundary_tie = cf.boundary_tie || st.boundary_tie;
        if (st.boundary_tie) { cf.stop = CcfStop::left_D; return cf; }
        prod *= cur;
        cf.m.push_back(st.m);
        std::int64_t pi, qi;
        if (__builtin_mul_overflow(st.m, pm1, &pi) || __builtin_add_overflow(pi, pm2, &pi) ||
            __builtin_mul_overflow(st.m, qm1, &qi) || __builtin_add_overflow(qi, qm2, &qi)) {
            cf.m.pop_back();
            cf.stop = CcfStop::depth_cap;
            return cf;
        }
        pm2 = pm1; pm1 = pi; qm2 = qm1; qm1 = qi;
        cf.p.push_back(pi); cf.q.push_back(qi);
        cf.beta.push_back(prod);
        cur = st.next;
        cf.z.push_back(cur);
    }
    if (std::abs(cur) < 1e-14) cf.stop = CcfStop::hit_zero;
    else if (!in_D(cur)) cf.stop = CcfStop::left_D;
    else cf.stop = CcfStop::depth_cap;
    return cf;
}

/// True when w lies in H = Delta minus the interior of D, the terminal part
/// of a cell.
inline bool in_H_terminal(const Complex& w, double tol = detail::kDomTol) {
    if (!in_Delta(w, tol)) return false;
    bool interiorD = w.real() > tol && std::abs(w) < 1.0 - tol &&
                     std::abs(w - Complex(0, 1)) > 1.0 + tol &&
                     std::abs(w + Complex(0, 1)) > 1.0 + tol;
    return !interiorD;
}

struct HCell {
    std::int64_t n = 0;                   // integer translate
    std::vector<std::int64_t> word;       // m_1,...,m_k (empty: z - n in H)
    std::vector<Complex> residues;        // z_0 = z - n, ..., z_k in H
    std::vector<std::int64_t> p, q;       // convergents of the word
};

/// Locate the cell H(m_1,...,m_k) + n containing z, 0 < Im z <= 1/2.
inline HCell locate_H_cell(Complex z, int max_k = 64) {
    constexpr double tol = detail::kDomTol;
    if (!(z.imag() > 0.0 && z.imag() <= 0.5 + tol))
        throw std::domain_error("locate_H_cell: need 0 < Im z <= 1/2");
    const double y = std::min(z.imag(), 1.0);
    const double s = std::sqrt(std::max(0.0, 1.0 - y * y));
    std::int64_t n = static_cast<std::int64_t>(std::ceil(z.real() - s - tol));
    // z - n must land in Delta; nudge across boundary ties
    while (!in_Delta(z - static_cast<double>(n), tol) && n < z.real() + 2) ++n;
    if (!in_Delta(z - static_cast<double>(n), tol))
        throw std::logic_error("locate_H_cell: no integer translate into Delta");

    HCell cell;
    cell.n = n;
    Complex cur = z - static_cast<double>(n);
    cell.residues.push_back(cur);
    cell.p.push_back(0); cell.q.push_back(1);
    std::int64_t pm2 = 1, qm2 = 0, pm1 = 0, qm1 = 1;
    for (int k = 0; k < max_k; ++k) {
        if (in_H_terminal(cur, tol)) return cell;
        CcfStep st = ccf_step(cur);
        cell.word.push_back(st.m);
        std::int64_t pi = st.m * pm1 + pm2, qi = st.m * qm1 + qm2;
        pm2 = pm1; pm1 = pi; qm2 = qm1; qm1 = qi;
        cell.p.push_back(pi); cell.q.push_back(qi);
        cur = st.next;
        cell.residues.push_back(cur);
    }
    if (in_H_terminal(cur, tol)) return cell;
    throw std::runtime_error("locate_H_cell: cell deeper than max_k");
}

} // namespace brjuno
