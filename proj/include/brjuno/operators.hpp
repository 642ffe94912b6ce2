#pragma once

// Operator calculus on holomorphic representatives: the weighted actions
// L_g^{(k)} and the affine-corrected action L_g of the monoid, the transfer
// operator T = sum_m L_{g(m)}, truncated sums over the whole monoid, the
// periodization over integer translates with its logarithmic regularization,
// and the real-level operators (T, T_even, power-iteration contraction
// estimates) on sampled grid functions.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "dilog.hpp"
#include "mobius.hpp"

namespace brjuno {

// ---------------------------------------------------------------------------
// HoloFunction: an evaluable element of O^1(C \ I)
// ---------------------------------------------------------------------------

struct HoloFunction {
    using Eval = std::function<Complex(Complex, CutSide)>;

    Eval eval;
    double cut_lo = 0.0, cut_hi = 1.0;
    Eval deriv1;               // analytic first derivative, if available
    Eval deriv2;               // analytic second derivative, if available
    bool real_symmetric = true;
    std::string tag;

    Complex operator()(Complex z, CutSide side = CutSide::off) const { return eval(z, side); }

    double cut_distance(Complex z) const {
        double dx = 0.0;
        if (z.real() < cut_lo) dx = cut_lo - z.real();
        else if (z.real() > cut_hi) dx = z.real() - cut_hi;
        return std::hypot(dx, z.imag());
    }

    Complex d1(Complex z, CutSide side = CutSide::off) const;
    Complex d2(Complex z, CutSide side = CutSide::off) const;

    // asymptotic coefficients at infinity, fitted once on demand:
    // f(w) ~ a0 log(w/(w-1)) + a2/w^2 + a3/w^3
    struct AsymFit {
        double a0 = 0.0;
        Complex a2{}, a3{};
    };
    const AsymFit& asymptotics() const;

  private:
    struct AsymCache {
        std::once_flag flag;
        AsymFit fit;
    };
    mutable std::shared_ptr<AsymCache> asym_ = std::make_shared<AsymCache>();
};

namespace detail {

/// Derivative of order k via the Cauchy integral on a circle of radius
/// half the distance to the cut, 64-node trapezoid (spectrally accurate).
inline Complex cauchy_derivative(const HoloFunction& f, Complex z, int order) {
    const int n = 64;
    double r = 0.5 * f.cut_distance(z);
    if (!(r > 0.0)) throw std::domain_error("cauchy_derivative: point on the cut");
    Complex sum = 0.0;
    for (int j = 0; j < n; ++j) {
        double th = 2.0 * kPi * j / n;
        Complex e(std::cos(th), std::sin(th));
        Complex w = z + r * e;
        Complex rot(std::cos(order * th), -std::sin(order * th));
        sum += f.eval(w, CutSide::off) * rot;
    }
    double fact = (order == 1) ? 1.0 : 2.0;
    return fact * sum / (static_cast<double>(n) * std::pow(r, order));
}

} // namespace detail

inline Complex HoloFunction::d1(Complex z, CutSide side) const {
    if (deriv1) return deriv1(z, side);
    return detail::cauchy_derivative(*this, z, 1);
}
inline Complex HoloFunction::d2(Complex z, CutSide side) const {
    if (deriv2) return deriv2(z, side);
    return detail::cauchy_derivative(*this, z, 2);
}

inline const HoloFunction::AsymFit& HoloFunction::asymptotics() const {
    std::call_once(asym_->flag, [this]() {
        // fit f(w) = a0 L(w) + a2/w^2 + a3/w^3, L(w) = log(w/(w-1)), at three
        // real points left of the cut; the closest carries the a2/a3 signal
        // above the rounding noise of composite evaluations, the farthest
        // pins a0.  Columns are scaled to O(1) before elimination.
        const double R[3] = {48.0, 192.0, 1024.0};
        const double scale[3] = {R[0], R[0] * R[0], R[0] * R[0] * R[0]};
        Complex M[3][3], rhs[3];
        for (int i = 0; i < 3; ++i) {
            Complex w(-R[i] + cut_lo, 0.0);
            M[i][0] = scale[0] * std::log(w / (w - 1.0));
            M[i][1] = scale[1] / (w * w);
            M[i][2] = scale[2] / (w * w * w);
            rhs[i] = eval(w, CutSide::off);
        }
        // Gaussian elimination, 3x3
        for (int col = 0; col < 3; ++col) {
            int piv = col;
            for (int r2 = col + 1; r2 < 3; ++r2)
                if (std::abs(M[r2][col]) > std::abs(M[piv][col])) piv = r2;
            std::swap(M[piv], M[col]);
            std::swap(rhs[piv], rhs[col]);
            for (int r2 = col + 1; r2 < 3; ++r2) {
                Complex f = M[r2][col] / M[col][col];
                for (int c2 = col; c2 < 3; ++c2) M[r2][c2] -= f * M[col][c2];
                rhs[r2] -= f * rhs[col];
            }
        }
        Complex sol[3];
        for (int r2 = 2; r2 >= 0; --r2) {
            Complex s = rhs[r2];
            for (int c2 = r2 + 1; c2 < 3; ++c2) s -= M[r2][c2] * sol[c2];
            sol[r2] = s / M[r2][r2];
        }
        asym_->fit.a0 = (sol[0] * scale[0]).real();
        asym_->fit.a2 = sol[1] * scale[1];
        asym_->fit.a3 = sol[2] * scale[2];
    });
    return asym_->fit;
}

// ---------------------------------------------------------------------------
// seed functions as HoloFunction values
// ---------------------------------------------------------------------------

inline HoloFunction phi0_holo() {
    HoloFunction f;
    f.eval = [](Complex z, CutSide s) { return phi0(z, s); };
    f.deriv1 = [](Complex z, CutSide s) { return phi0_prime(z, s); };
    f.deriv2 = [](Complex z, CutSide s) { return phi0_second(z, s); };
    f.cut_lo = 0.0; f.cut_hi = 1.0;
    f.tag = "phi0";
    return f;
}

inline HoloFunction phi1_holo() {
    HoloFunction f;
    f.eval = [](Complex z, CutSide s) { return phi1(z, s); };
    f.deriv1 = [](Complex z, CutSide s) { return phi1_prime(z, s); };
    f.deriv2 = [](Complex z, CutSide s) { return phi1_second(z, s); };
    f.cut_lo = 0.5; f.cut_hi = 2.0;
    f.tag = "phi1";
    return f;
}

// ---------------------------------------------------------------------------
// weighted and affine-corrected actions
// ---------------------------------------------------------------------------

/// L_g^{(k)} phi (z) = (a - c z)^{-k} phi((d z - b)/(a - c z)).
inline HoloFunction lgk_apply(const Mat2Z& g, int k, const HoloFunction& phi) {
    // the cut moves by the forward map x -> (a x + b)/(c x + d)
    auto fwd = [g](double x) {
        return (static_cast<double>(g.a) * x + g.b) / (static_cast<double>(g.c) * x + g.d);
    };
    double lo = std::min(fwd(phi.cut_lo), fwd(phi.cut_hi));
    double hi = std::max(fwd(phi.cut_lo), fwd(phi.cut_hi));
    std::int64_t det = g.det();
    HoloFunction out;
    out.cut_lo = lo; out.cut_hi = hi;
    out.real_symmetric = phi.real_symmetric;
    out.tag = "Lk(" + phi.tag + ")";
    auto inner = phi;  // copy shares the eval closure
    out.eval = [g, k, inner, det](Complex z, CutSide side) {
        Complex den = static_cast<double>(g.a) - static_cast<double>(g.c) * z;
        if (std::abs(den) < 1e-300) throw std::domain_error("lgk_apply: pole at a/c");
        Complex w = (static_cast<double>(g.d) * z - static_cast<double>(g.b)) / den;
        CutSide s2 = det > 0 ? side : flip(side);
        return std::pow(den, -k) * inner.eval(w, s2);
    };
    return out;
}

namespace detail {

// 16-point Gauss-Legendre on [0,1]
inline constexpr double kGL16x[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
inline constexpr double kGL16w[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

/// Integral form of the affine-corrected action (Taylor remainder):
///   L_g phi (z) = c^{-2} (a-cz)^{-1} int_0^1 phi''(-d/c + eps t/(c(a-cz))) (1-t) dt
/// valid when the segment from -d/c to (dz-b)/(a-cz) misses the cut.
inline Complex lg_integral(const Mat2Z& g, const HoloFunction& phi, Complex z) {
    const double c = static_cast<double>(g.c), eps = static_cast<double>(g.det());
    Complex acz = static_cast<double>(g.a) - c * z;
    Complex base(-static_cast<double>(g.d) / c, 0.0);
    Complex step = eps / (c * acz);
    Complex sum = 0.0;
    for (int i = 0; i < 8; ++i) {
        double t1 = 0.5 + 0.5 * kGL16x[i], t2 = 0.5 - 0.5 * kGL16x[i];
        sum += 0.5 * kGL16w[i] *
               (phi.d2(base + t1 * step) * (1.0 - t1) + phi.d2(base + t2 * step) * (1.0 - t2));
    }
    return sum / (c * c * acz);
}

/// Does the segment [e1, e2] (e1 real) intersect the real interval [lo,hi]?
inline bool segment_hits_cut(double e1, Complex e2, double lo, double hi) {
    if (std::fabs(e2.imag()) > 1e-14) {
        // crosses the real axis only at the e1 end
        return e1 >= lo && e1 <= hi;
    }
    double a = std::min(e1, e2.real()), b = std::max(e1, e2.real());
    return b >= lo && a <= hi;
}

} // namespace detail

/// Affine-corrected action of a monoid element on O^1: lands in O^1 again.
/// Uses the cancellation-free integral form away from g.[0,+inf], and the
/// explicit three-term form with the derivative correction otherwise.
inline HoloFunction lg_apply(const Mat2Z& g, const HoloFunction& phi) {
    if (!monoid_member(g)) throw std::invalid_argument("lg_apply: g must be a monoid element");
    HoloFunction out;
    out.real_symmetric = phi.real_symmetric;
    out.tag = "L(" + phi.tag + ")";
    const auto inner = phi;
    if (g.c == 0) {          // identity (translations are not monoid members)
        return phi;
    }
    const double a = static_cast<double>(g.a), b = static_cast<double>(g.b),
                 c = static_cast<double>(g.c), d = static_cast<double>(g.d);
    const double eps = static_cast<double>(g.det());
    // image cut: endpoints g.cut_lo, g.cut_hi under w -> (a w + b)/(c w + d)
    auto fwd = [&](double x) { return (a * x + b) / (c * x + d); };
    out.cut_lo = std::min(fwd(phi.cut_lo), fwd(phi.cut_hi));
    out.cut_hi = std::max(fwd(phi.cut_lo), fwd(phi.cut_hi));
    const Complex f_dc = inner.eval(Complex(-d / c, 0.0), CutSide::off);
    const Complex fp_dc = inner.d1(Complex(-d / c, 0.0), CutSide::off);
    Mat2Z gc = g;
    out.eval = [gc, inner, a, b, c, d, eps, f_dc, fp_dc](Complex z, CutSide side) -> Complex {
        Complex acz = a - c * z;
        if (std::abs(acz) < 1e-300) throw std::domain_error("lg_apply: pole at a/c");
        Complex w = (d * z - b) / acz;
        if (!detail::segment_hits_cut(-d / c, w, inner.cut_lo, inner.cut_hi))
            return detail::lg_integral(gc, inner, z);
        CutSide s2 = eps > 0 ? side : flip(side);
        return acz * (inner.eval(w, s2) - f_dc) - eps * fp_dc / c;
    };
    out.deriv2 = [inner, a, b, c, d](Complex z, CutSide side) -> Complex {
        Complex acz = a - c * z;
        Complex w = (d * z - b) / acz;
        return std::pow(acz, -3) * inner.d2(w, side);  // (L_g phi)'' = L_g^{(3)} phi''
    };
    out.deriv1 = [inner, a, b, c, d, eps, f_dc, fp_dc](Complex z, CutSide side) -> Complex {
        Complex acz = a - c * z;
        Complex w = (d * z - b) / acz;
        return -c * (inner.eval(w, side) - f_dc) + eps * inner.d1(w, side) / acz;
    };
    return out;
}

// ---------------------------------------------------------------------------
// transfer operator and monoid sums
// ---------------------------------------------------------------------------

/// T phi = sum_{m=1}^{m_max} L_{g(m)} phi, with the branch values phi(-m),
/// phi'(-m) precomputed.  The attached tail field estimates the discarded
/// m > m_max part from the sampled decay of the second derivative.
struct TransferResult {
    HoloFunction fn;
    std::function<double(Complex)> tail;
};

inline TransferResult t_apply_with_tail(const HoloFunction& phi, int m_max) {
    if (m_max < 1) throw std::invalid_argument("t_apply: m_max >= 1");
    auto vals = std::make_shared<std::vector<std::pair<Complex, Complex>>>();
    vals->reserve(m_max);
    for (int m = 1; m <= m_max; ++m) {
        Complex w(-static_cast<double>(m), 0.0);
        vals->emplace_back(phi.eval(w, CutSide::off), phi.d1(w, CutSide::off));
    }
    const auto inner = phi;
    HoloFunction out;
    out.cut_lo = 0.0;
    out.cut_hi = 1.0 / (1.0 + phi.cut_lo);
    out.real_symmetric = phi.real_symmetric;
    out.tag = "T(" + phi.tag + ")";
    out.eval = [inner, vals, m_max](Complex z, CutSide side) -> Complex {
        if (std::abs(z) < 1e-300) throw std::domain_error("t_apply: evaluation at 0");
        Complex w0 = 1.0 / z;
        Complex sum = 0.0, comp = 0.0;
        for (int m = 1; m <= m_max; ++m) {
            Complex w = w0 - static_cast<double>(m);
            Complex term;
            if (!detail::segment_hits_cut(-static_cast<double>(m), w, inner.cut_lo, inner.cut_hi)) {
                // -z^{-1} int_0^1 phi''(-m + t/z)(1-t) dt
                Complex sumq = 0.0;
                for (int i = 0; i < 8; ++i) {
                    double t1 = 0.5 + 0.5 * detail::kGL16x[i], t2 = 0.5 - 0.5 * detail::kGL16x[i];
                    sumq += 0.5 * detail::kGL16w[i] *
                            (inner.d2(-static_cast<double>(m) + t1 * w0) * (1.0 - t1) +
                             inner.d2(-static_cast<double>(m) + t2 * w0) * (1.0 - t2));
                }
                term = -sumq / z;
            } else {
                CutSide s2 = flip(side);  // det g(m) = -1
                term = -z * (inner.eval(w, s2) - (*vals)[m - 1].first) + (*vals)[m - 1].second;
            }
            Complex t = sum + term;
            comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
            sum = t;
        }
        return sum + comp;
    };
    out.deriv2 = [inner, m_max](Complex z, CutSide side) -> Complex {
        // sum of L^{(3)}_{g(m)} phi'' = -z^{-3} sum phi''(1/z - m)
        Complex w0 = 1.0 / z, sum = 0.0;
        for (int m = 1; m <= m_max; ++m) sum += inner.d2(w0 - static_cast<double>(m), side);
        return -sum / (z * z * z);
    };
    out.deriv1 = [inner, vals, m_max](Complex z, CutSide side) -> Complex {
        Complex w0 = 1.0 / z, sum = 0.0;
        for (int m = 1; m <= m_max; ++m) {
            Complex w = w0 - static_cast<double>(m);
            sum += -(inner.eval(w, side) - (*vals)[m - 1].first) + inner.d1(w, side) / z;
        }
        return sum;
    };
    const double d2edge = std::abs(phi.d2(Complex(-static_cast<double>(m_max) - 1.0, 0.0)));
    auto tail = [d2edge, m_max](Complex z) {
        // |term_m| <= sup|phi''| / (2|z|) with phi'' ~ m^{-3} falloff
        return d2edge * static_cast<double>(m_max) / (2.0 * std::max(0.05, std::abs(z)));
    };
    return TransferResult{out, tail};
}

inline HoloFunction t_apply(const HoloFunction& phi, int m_max) {
    return t_apply_with_tail(phi, m_max).fn;
}

/// sum_{r <= depth} T^r phi restricted to monoid words with every letter
/// <= m_max and matrix entry d <= d_cap (default m_max): the per-element
/// branch constants are evaluated once.  Terms are reduced in the
/// deterministic enumeration order.
inline HoloFunction sum_over_monoid(const HoloFunction& phi, int depth, int m_max,
                                    std::int64_t d_cap = 0) {
    if (depth < 1) throw std::invalid_argument("sum_over_monoid: depth >= 1");
    if (d_cap <= 0) d_cap = m_max;
    struct Term {
        double a, b, c, d, eps;
        Complex f_dc, fp_dc;
    };
    auto terms = std::make_shared<std::vector<Term>>();
    enumerate_monoid(depth, d_cap, [&](const MonoidWord& w, const Mat2Z& g) {
        if (g.is_identity()) return;
        for (std::int64_t m : w.letters)
            if (m > m_max) return;
        Complex dc(-static_cast<double>(g.d) / static_cast<double>(g.c), 0.0);
        terms->push_back(Term{static_cast<double>(g.a), static_cast<double>(g.b),
                              static_cast<double>(g.c), static_cast<double>(g.d),
                              static_cast<double>(g.det()), phi.eval(dc, CutSide::off),
                              phi.d1(dc, CutSide::off)});
    });
    const auto inner = phi;
    HoloFunction out;
    out.cut_lo = std::min(0.0, phi.cut_lo);
    out.cut_hi = std::max(phi.cut_hi, 1.0);
    out.real_symmetric = phi.real_symmetric;
    out.tag = "SumM(" + phi.tag + ")";
    out.eval = [inner, terms](Complex z, CutSide side) -> Complex {
        Complex sum = inner.eval(z, side), comp = 0.0;
        for (const Term& t : *terms) {
            Complex acz = t.a - t.c * z;
            Complex w = (t.d * z - t.b) / acz;
            CutSide s2 = t.eps > 0 ? side : flip(side);
            Complex term = acz * (inner.eval(w, s2) - t.f_dc) - t.eps * t.fp_dc / t.c;
            Complex s = sum + term;
            comp += (std::abs(sum) >= std::abs(term)) ? (sum - s) + term : (term - s) + sum;
            sum = s;
        }
        return sum + comp;
    };
    return out;
}

// ---------------------------------------------------------------------------
// periodization over integer translates
// ---------------------------------------------------------------------------

struct PeriodizeResult {
    Complex value{};
    double tail = 0.0;
};

/// Eisenstein (symmetric) periodization sum_Z phi(z - n).  The simple-pole
/// part a0 log(z/(z-1)) is summed in closed form (it contributes exactly
/// -+ a0 pi i), and the slowly decaying 1/w^2, 1/w^3 parts of the remainder
/// are completed with their exact cotangent-family sums.
inline PeriodizeResult periodize_with_tail(const HoloFunction& phi, Complex z, int n_max) {
    if (z.imag() == 0.0) throw std::domain_error("periodize: Im z must be nonzero");
    if (n_max < 1) throw std::invalid_argument("periodize: n_max >= 1");
    const auto& fit = phi.asymptotics();
    Complex sum = 0.0, comp = 0.0, s2 = 0.0, s3 = 0.0;
    for (int n = -n_max; n <= n_max; ++n) {
        Complex w = z - static_cast<double>(n);
        Complex term = phi.eval(w, CutSide::off);
        Complex t = sum + term;
        comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
        sum = t;
        s2 += 1.0 / (w * w);
        s3 += 1.0 / (w * w * w);
    }
    sum += comp;
    const double N = static_cast<double>(n_max);
    sum -= fit.a0 * std::log((z + N) / (z - N - 1.0));
    sum += Complex(0.0, (z.imag() > 0.0 ? -1.0 : 1.0) * fit.a0 * kPi);
    Complex sz = std::sin(kPi * z), cz = std::cos(kPi * z);
    sum += fit.a2 * (kPi * kPi / (sz * sz) - s2);
    sum += fit.a3 * (kPi * kPi * kPi * cz / (sz * sz * sz) - s3);

    // residual beyond the modeled orders, gauged at the edge of the window
    Complex edge(z.real() - N - 1.0, z.imag());
    Complex model = fit.a0 * std::log(edge / (edge - 1.0)) + fit.a2 / (edge * edge) +
                    fit.a3 / (edge * edge * edge);
    double resid = std::abs(phi.eval(edge, CutSide::off) - model);
    return PeriodizeResult{sum, resid * (2.0 * N + 2.0) / 3.0};
}

inline Complex periodize(const HoloFunction& phi, Complex z, int n_max) {
    return periodize_with_tail(phi, z, n_max).value;
}

// ---------------------------------------------------------------------------
// real-level grid operators
// ---------------------------------------------------------------------------

struct RealGridFn {
    double x0 = 0.0, x1 = 1.0;
    std::vector<double> v;   // samples at x0 + i*(x1-x0)/(N-1)

    static RealGridFn constant(double c, int n, double a = 0.0, double b = 1.0) {
        RealGridFn f;
        f.x0 = a; f.x1 = b;
        f.v.assign(static_cast<std::size_t>(n), c);
        return f;
    }
    int size() const { return static_cast<int>(v.size()); }
    double dx() const { return (x1 - x0) / (size() - 1); }

    /// linear interpolation; zero outside [x0, x1]
    double value(double x) const {
        if (x < x0 || x > x1) return 0.0;
        double t = (x - x0) / dx();
        int i = static_cast<int>(std::floor(t));
        if (i < 0) i = 0;
        if (i >= size() - 1) i = size() - 2;
        double w = t - i;
        return v[i] * (1.0 - w) + v[i + 1] * w;
    }
};

/// (T f)(x) = x f(1/x - m) on (1/(m+1), 1/m]: one branch per point, so the
/// image is x f({1/x}).
inline RealGridFn t_real_apply(const RealGridFn& f) {
    RealGridFn out = f;
    const int n = f.size();
    for (int i = 0; i < n; ++i) {
        double x = f.x0 + i * f.dx();
        if (x <= 0.0) { out.v[i] = 0.0; continue; }
        double y = 1.0 / x;
        double frac = y - std::floor(y);
        out.v[i] = x * f.value(frac);
    }
    return out;
}

/// (T_even f)(x) = sum_{m>=2} x f(1/x - m) + sum_{m>=3} x f(m - 1/x) for f
/// supported on [0,1/2]; only finitely many m meet the support, so the sum
/// is exact.
inline RealGridFn t_even_real_apply(const RealGridFn& f) {
    RealGridFn out = f;
    const int n = f.size();
    for (int i = 0; i < n; ++i) {
        double x = f.x0 + i * f.dx();
        if (x <= 0.0 || x > 0.5) { out.v[i] = 0.0; continue; }
        double y = 1.0 / x;
        double acc = 0.0;
        std::int64_t mlo = static_cast<std::int64_t>(std::floor(y - 0.5));
        for (std::int64_t m = std::max<std::int64_t>(2, mlo); m <= mlo + 2; ++m) {
            double u = y - static_cast<double>(m);
            if (u >= 0.0 && u <= 0.5) acc += x * f.value(u);
        }
        std::int64_t klo = static_cast<std::int64_t>(std::ceil(y));
        for (std::int64_t m = std::max<std::int64_t>(3, klo - 1); m <= klo + 1; ++m) {
            double u = static_cast<double>(m) - y;
            if (u >= 0.0 && u <= 0.5) acc += x * f.value(u);
        }
        out.v[i] = acc;
    }
    return out;
}

enum class GridNorm { L2, weighted };

inline double grid_norm(const RealGridFn& f, GridNorm which) {
    // midpoint rule on the grid cells; the weighted measure dx/(2 sqrt(x(1-x)))
    // is integrable at the endpoints and sampled at cell centers
    const int n = f.size();
    double acc = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        double xm = f.x0 + (i + 0.5) * f.dx();
        double fm = 0.5 * (f.v[i] + f.v[i + 1]);
        double w = 1.0;
        if (which == GridNorm::weighted) w = 0.5 / std::sqrt(std::max(1e-300, xm * (1.0 - xm)));
        acc += w * fm * fm * f.dx();
    }
    return std::sqrt(acc);
}

/// Power-iteration contraction estimate (||T^k f0|| / ||f0||)^{1/k}.
inline double spectral_radius_estimate(const RealGridFn& f0, int k, GridNorm norm) {
    if (k < 2) throw std::invalid_argument("spectral_radius_estimate: k >= 2");
    double n0 = grid_norm(f0, norm);
    if (n0 == 0.0) return 0.0;
    RealGridFn f = f0;
    for (int i = 0; i < k; ++i) f = t_real_apply(f);
    double nk = grid_norm(f, norm);
    return std::pow(nk / n0, 1.0 / static_cast<double>(k));
}

} // namespace brjuno
