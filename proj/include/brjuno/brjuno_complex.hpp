#pragma once

// The complex Brjuno function B(z) on C \ R, periodic of period 1, computed
// by two independent algorithms:
//
//  * farey:  the sum over rationals p/q of the three-part dilogarithm term
//    built from the Farey parents of p/q.  Layers are grouped by
//    denominator; within a layer only translates near Re z are summed
//    explicitly and the far translates are completed to the full lattice sum
//    with the exact cotangent family, using the asymptotic expansion of the
//    term in 1/(qz-p) through third order.
//
//  * monoid: periodization of phi1 + sum over the monoid of T phi1, i.e.
//    the affine-corrected orbit sum of phi1 evaluated through the operator
//    calculus, with the simple-pole part of the translate sum handled by
//    the logarithmic regularization.
//
// Their agreement (and the agreement of the boundary behaviour with the
// real Brjuno function) is the primary correctness check of the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "cf_complex.hpp"
#include "cf_real.hpp"
#include "dilog.hpp"
#include "operators.hpp"
#include "rational.hpp"

namespace brjuno {

enum class BrjunoMethod { farey, monoid };

struct BrjunoEval {
    Complex value{};
    BrjunoMethod method = BrjunoMethod::farey;
    int truncation = 0;       // qmax (farey) or monoid denominator cap
    double window = 0.0;
    double tail_estimate = 0.0;
    long terms_used = 0;
};

namespace detail {

/// Derivatives of the dilogarithm at a real point x <= 0, k = 1..4.
inline double li2_deriv_real(double x, int k) {
    if (x == 0.0) {
        static const double at0[4] = {1.0, 0.5, 2.0 / 3.0, 1.5};
        return at0[k - 1];
    }
    double l = std::log1p(-x);
    double x2 = x * x, x3 = x2 * x, x4 = x3 * x;
    double omx = 1.0 - x;
    switch (k) {
        case 1: return -l / x;
        case 2: return 1.0 / (omx * x) + l / x2;
        case 3: return -1.0 / x2 + 1.0 / (omx * omx) - 1.0 / (omx * x2) - 2.0 * l / x3;
        case 4:
            return 2.0 / x3 + 2.0 / (omx * omx * omx) - 1.0 / (omx * omx * x2) +
                   4.0 / (omx * x3) + 6.0 * l / x4;
    }
    throw std::invalid_argument("li2_deriv_real: k in 1..4");
}

struct FareyResidue {
    std::int64_t r, pp, qp, ppp, qpp;
    double li2L, li2R, K;     // cached Li2(-q'/q), Li2(-q''/q), log constant
    double g1, g2, g3;        // asymptotic coefficients in powers of 1/(qz-p)
};

struct FareyLayer {
    std::vector<FareyResidue> residues;
};

/// Layer cache: all coprime residues of a denominator with their Farey
/// parents, dilogarithm constants and far-field coefficients.
inline const FareyLayer& farey_layer(std::int64_t q) {
    static std::map<std::int64_t, FareyLayer> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;
    FareyLayer layer;
    for (std::int64_t r = 0; r < std::max<std::int64_t>(q, 1); ++r) {
        if (std::gcd(r, q) != 1 && q > 1) continue;
        if (q == 1 && r != 0) break;
        FareyParents par = farey_parents(Rational{r, q});
        FareyResidue res;
        res.r = r;
        res.pp = par.left.num; res.qp = par.left.den;
        res.ppp = par.right.num; res.qpp = par.right.den;
        double dq = static_cast<double>(q);
        res.li2L = li2(Complex(-static_cast<double>(res.qp) / dq, 0.0)).real();
        res.li2R = li2(Complex(-static_cast<double>(res.qpp) / dq, 0.0)).real();
        res.K = std::log((dq + res.qpp) / (dq + res.qp)) / dq;
        double L1[4], L2[4];
        for (int k = 1; k <= 4; ++k) {
            L1[k - 1] = li2_deriv_real(-static_cast<double>(res.qp) / dq, k);
            L2[k - 1] = li2_deriv_real(-static_cast<double>(res.qpp) / dq, k);
        }
        double q2 = dq * dq, q3 = q2 * dq, q4 = q3 * dq, q5 = q4 * dq;
        res.g1 = (L1[0] + L2[0]) / q2 - (res.qp * L1[1] + res.qpp * L2[1]) / (2.0 * q3);
        res.g2 = (L2[1] - L1[1]) / (2.0 * q3) + (res.qp * L1[2] - res.qpp * L2[2]) / (6.0 * q4);
        res.g3 = (L1[2] + L2[2]) / (6.0 * q4) - (res.qp * L1[3] + res.qpp * L2[3]) / (24.0 * q5);
        layer.residues.push_back(res);
    }
    auto [pos, _] = cache.emplace(q, std::move(layer));
    return pos->second;
}

/// The three-part Farey summand for p/q at z, with the parent data given.
inline Complex farey_term(const FareyResidue& res, std::int64_t q, Complex zn) {
    double dq = static_cast<double>(q);
    Complex u = dq * zn - static_cast<double>(res.r);
    Complex a1 = static_cast<double>(res.pp) - static_cast<double>(res.qp) * zn;
    Complex a2 = static_cast<double>(res.ppp) - static_cast<double>(res.qpp) * zn;
    Complex t1 = a1 * (li2(a1 / u) - res.li2L);
    Complex t2 = a2 * (li2(a2 / u) - res.li2R);
    return t1 + t2 + res.K;
}

} // namespace detail

/// Farey-series evaluation of the complex Brjuno function.  Requires
/// Im z != 0; layers stop early once three consecutive ones are negligible.
///
/// Within each layer only the translates with |qz - p| below a threshold are
/// evaluated through the dilogarithm; every other translate is covered by
/// the third-order completion, whose per-term defect is O(|qz - p|^{-4}).
/// The window parameter scales the explicit region.
inline BrjunoEval brjuno_farey(Complex z, int qmax, double window = 3.0) {
    if (z.imag() == 0.0) throw std::domain_error("brjuno_farey: Im z must be nonzero");
    if (qmax < 1 || window < 2.0)
        throw std::invalid_argument("brjuno_farey: need qmax >= 1 and window >= 2");
    const double x = z.real();
    const double u_explicit = 20.0 * window;   // |qz - p| radius of explicit terms
    Complex total = 0.0;
    long terms = 0;
    int tiny_streak = 0;
    std::vector<double> layer_mag;
    layer_mag.reserve(qmax);
    int qstop = qmax;
    for (int q = 1; q <= qmax; ++q) {
        const auto& layer = detail::farey_layer(q);
        const double rad = u_explicit / (static_cast<double>(q) * q);
        Complex lsum = 0.0;
        for (const auto& res : layer.residues) {
            const double rq = static_cast<double>(res.r) / q;
            Complex w = z - rq;
            std::int64_t nlo = static_cast<std::int64_t>(std::ceil(x - rq - rad));
            std::int64_t nhi = static_cast<std::int64_t>(std::floor(x - rq + rad));
            Complex s1 = 0.0, s2 = 0.0, s3 = 0.0;
            for (std::int64_t n = nlo; n <= nhi; ++n) {
                Complex zn = z - static_cast<double>(n);
                lsum += detail::farey_term(res, q, zn);
                Complex wn = w - static_cast<double>(n);
                Complex iw = 1.0 / wn;
                s1 += iw; s2 += iw * iw; s3 += iw * iw * iw;
                ++terms;
            }
            // complete the translate sum with the exact lattice values
            Complex sz = std::sin(kPi * w), cz = std::cos(kPi * w);
            Complex cot_full = kPi * cz / sz;
            Complex sq_full = kPi * kPi / (sz * sz);
            Complex cb_full = kPi * kPi * kPi * cz / (sz * sz * sz);
            double dq = static_cast<double>(q);
            lsum += (res.g1 / dq) * (cot_full - s1);
            lsum += (res.g2 / (dq * dq)) * (sq_full - s2);
            lsum += (res.g3 / (dq * dq * dq)) * (cb_full - s3);
        }
        total += lsum;
        layer_mag.push_back(std::abs(lsum));
        if (std::abs(lsum) < 1e-12 * std::max(1.0, std::abs(total))) {
            if (++tiny_streak >= 3) { qstop = q; break; }
        } else {
            tiny_streak = 0;
        }
        qstop = q;
    }
    BrjunoEval out;
    out.value = -total / kPi;
    out.method = BrjunoMethod::farey;
    out.truncation = qstop;
    out.window = window;
    out.terms_used = terms;
    // layers decay like c/q^2; estimate c from the tail of the computed run
    double c_est = 0.0;
    int lookback = std::min<int>(8, static_cast<int>(layer_mag.size()));
    for (int i = 0; i < lookback; ++i) {
        int q = qstop - i;
        c_est = std::max(c_est, layer_mag[layer_mag.size() - 1 - i] * q * q);
    }
    out.tail_estimate = c_est / std::max(1, qstop) / kPi +
                        3.0 / (u_explicit * u_explicit * u_explicit);
    return out;
}

namespace detail {

struct MonoidTermTable {
    struct Term {
        double a, b, c, d, eps;
        Complex f_dc, fp_dc;
    };
    std::vector<Term> terms;   // sorted by (c+d, c, a)
    HoloFunction psi;          // phi1 + sum over nontrivial elements of L_g phi1
};

/// Cached table of monoid elements with c + d <= cap acting on phi1.  The
/// map g -> g.1 = (a+b)/(c+d) is a bijection of the monoid onto the
/// rationals in (0,1], so this truncation collects exactly the terms whose
/// underlying rationals have denominator c + d; it is the counterpart of
/// the farey layer cut.
inline const MonoidTermTable& monoid_table(std::int64_t cap) {
    static std::map<std::int64_t, std::shared_ptr<MonoidTermTable>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(cap);
    if (it != cache.end()) return *it->second;
    auto tab = std::make_shared<MonoidTermTable>();
    // enumerate by coprime (c,d), 1 <= c <= d, c + d <= cap, and solve
    // a d - b c = eps for the at most two admissible (a,b) per determinant;
    // equivalent to the word enumeration without exponential-depth recursion
    for (std::int64_t s = 2; s <= cap; ++s) {
        for (std::int64_t c = 1; 2 * c <= s; ++c) {
            std::int64_t d = s - c;
            if (std::gcd(c, d) != 1) continue;
            // d^{-1} mod c by extended Euclid
            std::int64_t r0 = d % c, r1 = c, s0 = 1, s1 = 0;
            while (r1 != 0) {
                std::int64_t k = r0 / r1;
                std::int64_t r2 = r0 - k * r1; r0 = r1; r1 = r2;
                std::int64_t s2 = s0 - k * s1; s0 = s1; s1 = s2;
            }
            std::int64_t dinv = c == 1 ? 0 : ((s0 % c) + c) % c;
            for (int eps = -1; eps <= 1; eps += 2) {
                std::int64_t a0 = c == 1 ? 0 : ((eps * dinv) % c + c) % c;
                for (std::int64_t a : {a0, a0 + c}) {
                    if (a > std::min(c, d)) continue;
                    std::int64_t t = a * d - eps;
                    if (t % c != 0) continue;
                    std::int64_t b = t / c;
                    if (!(d >= b && b >= a)) continue;
                    Mat2Z g{a, b, c, d};
                    if (g.det() != eps || !monoid_member(g) || g.is_identity()) continue;
                    Complex dc(-static_cast<double>(d) / c, 0.0);
                    tab->terms.push_back({static_cast<double>(a), static_cast<double>(b),
                                          static_cast<double>(c), static_cast<double>(d),
                                          static_cast<double>(eps), phi1(dc), phi1_prime(dc)});
                }
            }
        }
    }
    std::sort(tab->terms.begin(), tab->terms.end(), [](const auto& x, const auto& y) {
        if (x.c + x.d != y.c + y.d) return x.c + x.d < y.c + y.d;
        if (x.c != y.c) return x.c < y.c;
        if (x.a != y.a) return x.a < y.a;
        return x.eps < y.eps;
    });
    auto terms = tab;
    HoloFunction psi;
    psi.cut_lo = 0.0; psi.cut_hi = 2.0;
    psi.tag = "phi1+SumM(T phi1)";
    psi.eval = [terms](Complex z, CutSide side) -> Complex {
        Complex sum = phi1(z, side), comp = 0.0;
        for (const auto& t : terms->terms) {
            Complex acz = t.a - t.c * z;
            Complex w = (t.d * z - t.b) / acz;
            CutSide s2 = t.eps > 0 ? side : flip(side);
            Complex term = acz * (phi1(w, s2) - t.f_dc) - t.eps * t.fp_dc / t.c;
            Complex s = sum + term;
            comp += (std::abs(sum) >= std::abs(term)) ? (sum - s) + term : (term - s) + sum;
            sum = s;
        }
        return sum + comp;
    };
    tab->psi = psi;
    auto [pos, _] = cache.emplace(cap, std::move(tab));
    return *pos->second;
}

} // namespace detail

/// Orbit-sum evaluation: periodize(phi1 + sum_M T phi1) at z.  The monoid
/// sum keeps elements with c + d <= m_max + 1 (a single letter g(m) has
/// c + d = m + 1, so m_max keeps its meaning as the largest branch index)
/// and word length <= depth; the length cap only binds while the Fibonacci
/// growth of c + d stays below the cap.
inline BrjunoEval brjuno_monoid(Complex z, int depth, int m_max, int n_max = 20) {
    if (z.imag() == 0.0) throw std::domain_error("brjuno_monoid: Im z must be nonzero");
    if (depth < 1) throw std::invalid_argument("brjuno_monoid: depth >= 1");
    std::int64_t cap = static_cast<std::int64_t>(m_max) + 1;
    std::int64_t f0 = 1, f1 = 2;   // c+d of words of length 0, 1 with letters 1
    for (int i = 1; i < depth && f1 < cap; ++i) { std::int64_t f2 = f0 + f1; f0 = f1; f1 = f2; }
    cap = std::min<std::int64_t>(cap, f1);
    const auto& tab = detail::monoid_table(cap);
    PeriodizeResult pr = periodize_with_tail(tab.psi, z, n_max);
    BrjunoEval out;
    out.value = pr.value;
    out.method = BrjunoMethod::monoid;
    out.truncation = static_cast<int>(cap);
    out.terms_used = static_cast<long>(tab.terms.size() + 1) * (2 * n_max + 1);
    // the missing c + d > cap mass behaves like the farey layer tail
    out.tail_estimate = pr.tail + 0.9 / static_cast<double>(cap);
    return out;
}

// ---------------------------------------------------------------------------
// boundary-behaviour experiments
// ---------------------------------------------------------------------------

struct JumpReport {
    Rational rational{};
    double delta = 0.0;
    double jump_estimate = 0.0;   // left minus right limit of Re B
    double theta_slope = 0.0;     // fitted d(Re B)/d(theta), expected -1/q
};

/// Measure the jump of Re B across the rational r at approach height delta:
/// the left/right difference extrapolated eta -> 0, and the slope of Re B
/// along rays of angle pi/2 - theta.
inline JumpReport measure_jump(const Rational& r, double delta, const std::vector<double>& etas,
                               int qmax, double window = 3.0) {
    if (!(delta > 0.0 && delta <= 0.05))
        throw std::invalid_argument("measure_jump: delta in (0, 0.05]");
    if (etas.empty()) throw std::invalid_argument("measure_jump: eta list empty");
    const double x = r.value();
    // left-right differences, linear fit in eta -> intercept
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double eta : etas) {
        double L = brjuno_farey(Complex(x - eta, delta), qmax, window).value.real();
        double R = brjuno_farey(Complex(x + eta, delta), qmax, window).value.real();
        double dlr = L - R;
        sx += eta; sy += dlr; sxx += eta * eta; sxy += eta * dlr;
    }
    const double n = static_cast<double>(etas.size());
    double jump;
    if (etas.size() >= 2) {
        double denom = n * sxx - sx * sx;
        jump = (sy * sxx - sx * sxy) / denom;   // intercept at eta = 0
    } else {
        jump = sy;
    }
    // ray probe: Re B(r + delta e^{i(pi/2 - theta)}) ~ const - theta/q
    double tx = 0, ty = 0, txx = 0, txy = 0;
    const int nth = 7;
    for (int i = 0; i < nth; ++i) {
        double theta = -1.05 + 2.10 * i / (nth - 1);
        Complex w = std::polar(delta, kPi / 2.0 - theta);
        double v = brjuno_farey(Complex(x, 0.0) + w, qmax, window).value.real();
        tx += theta; ty += v; txx += theta * theta; txy += theta * v;
    }
    double slope = (nth * txy - tx * ty) / (nth * txx - tx * tx);
    return JumpReport{r, delta, jump, slope};
}

struct Theorem510Report {
    HCell cell;
    double b_finite = 0.0;
    double principal = 0.0;
    double remainder = 0.0;
    double bound = 0.0;
    double im_b = 0.0;
    double tail = 0.0;
};

/// Decompose Im B(z0) into the truncated real Brjuno value of the cell's
/// rational, the explicit principal term, and a remainder that the cell
/// geometry bounds by q_k^{-1} |z_k| log(1 + 1/|z_k|).
inline Theorem510Report theorem510_decompose(Complex z0, int qmax = 1200, double window = 3.0) {
    Theorem510Report rep;
    rep.cell = locate_H_cell(z0);
    const std::size_t k = rep.cell.word.size();
    const Complex zk = rep.cell.residues.back();
    const std::int64_t pk = rep.cell.p[k], qk = rep.cell.q[k];
    const std::int64_t pkm1 = (k == 0) ? 1 : rep.cell.p[k - 1];
    const std::int64_t qkm1 = (k == 0) ? 0 : rep.cell.q[k - 1];
    const Complex w = z0 - static_cast<double>(rep.cell.n);

    rep.b_finite = brjuno_finite(reduce(pk, qk));
    rep.principal = (static_cast<double>(pkm1) - static_cast<double>(qkm1) * w.real()) *
                    phi1(zk + 1.0).imag();
    BrjunoEval be = brjuno_farey(z0, qmax, window);
    rep.im_b = be.value.imag();
    rep.tail = be.tail_estimate;
    rep.remainder = rep.im_b - rep.b_finite - rep.principal;
    const double azk = std::abs(zk);
    rep.bound = azk * std::log1p(1.0 / std::max(azk, 1e-300)) / static_cast<double>(qk);
    return rep;
}

enum class PathKind { vertical, W_H, W_tilde_h };

struct BoundaryRow {
    Complex w{};
    double im_b = 0.0;
    double error = 0.0;
};

struct BoundaryReport {
    double b_reference = 0.0;
    std::vector<BoundaryRow> rows;
    int inversions = 0;   // error increases from one height to the next
};

/// Reference value of the real Brjuno function: exact closed forms at the
/// golden and silver fixed points, deep series otherwise.
inline double brjuno_real_reference(double alpha) {
    double frac = alpha - std::floor(alpha);
    const double g = kGoldenSmall;
    if (std::fabs(frac - g) < 1e-12) {
        return std::log(kGoldenG) / (g * g);
    }
    const double s = std::sqrt(2.0) - 1.0;
    if (std::fabs(frac - s) < 1e-12) {
        return std::log(std::sqrt(2.0) + 1.0) / (2.0 - std::sqrt(2.0));
    }
    return brjuno_real(alpha, 72).value;
}

/// Track Im B(alpha + w) along an admissible approach path and compare with
/// B(alpha).
inline BoundaryReport boundary_limit_experiment(double alpha, PathKind kind, double parameter,
                                                const std::vector<double>& heights, int qmax,
                                                double window = 3.0) {
    if (heights.empty()) throw std::invalid_argument("boundary_limit_experiment: no heights");
    BoundaryReport rep;
    rep.b_reference = brjuno_real_reference(alpha);
    for (double h : heights) {
        if (!(h > 0.0)) throw std::invalid_argument("boundary_limit_experiment: heights > 0");
        double re = 0.0;
        switch (kind) {
            case PathKind::vertical: re = 0.0; break;
            case PathKind::W_H: re = 0.95 * std::pow(h, 1.0 / parameter); break;
            case PathKind::W_tilde_h:
                re = 0.95 * std::pow(std::log(1.0 / h), -1.0 / parameter);
                break;
        }
        Complex w(re, h);
        BrjunoEval be = brjuno_farey(Complex(alpha, 0.0) + w, qmax, window);
        BoundaryRow row;
        row.w = w;
        row.im_b = be.value.imag();
        row.error = std::fabs(row.im_b - rep.b_reference);
        rep.rows.push_back(row);
    }
    for (std::size_t i = 0; i + 1 < rep.rows.size(); ++i)
        if (rep.rows[i + 1].error > rep.rows[i].error) ++rep.inversions;
    return rep;
}

} // namespace brjuno
