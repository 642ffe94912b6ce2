#pragma once

// Complex dilogarithm with the principal branch on C \ [1,+inf), plus the
// two seed functions of the complex Brjuno construction,
//
//   phi0(z) = -(1/pi) Li2(1/z)                       cut [0,1]
//   phi1(z) = (1/pi)[z Li2(z/(1-z)) - Li2(1/(z-1))]
//             + (pi/12) z + (1/pi) log 2             cuts (1/2,1) u (1,2)
//
// and their closed-form first and second derivatives.
//
// Evaluation strategy for Li2: move the argument into a small disk with the
// Euler inversion/reflection identities (their compositions realize the full
// six-element anharmonic group), then sum the defining power series with
// compensated accumulation.  The two fixed points exp(+-i pi/3) of that
// group, where no identity shrinks |z|, fall back to Gauss-Legendre
// quadrature of the defining integral.
//
// Points on a real cut are evaluated with an explicit side (above/below);
// anything within 1e-12 of the axis snaps to the requested side.

#include <cmath>
#include <complex>
#include <stdexcept>

namespace brjuno {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kPi2_6 = 1.64493406684822643647;   // pi^2/6
inline constexpr double kLog2 = 0.69314718055994530942;

enum class CutSide { off, above, below };

inline CutSide flip(CutSide s) {
    if (s == CutSide::above) return CutSide::below;
    if (s == CutSide::below) return CutSide::above;
    return CutSide::off;
}

namespace detail {

inline bool near_axis(const Complex& z) {
    return std::fabs(z.imag()) <= 1e-12 * (1.0 + std::fabs(z.real()));
}

/// Principal log with explicit side selection on the negative real axis.
inline Complex log_side(const Complex& w, CutSide side) {
    if (side != CutSide::off && near_axis(w) && w.real() < 0.0)
        return {std::log(-w.real()), side == CutSide::above ? kPi : -kPi};
    return std::log(w);
}

/// Power series sum_{n>=1} w^n / n^2 for |w| < 1, compensated.
inline Complex li2_series(const Complex& w) {
    const double r = std::abs(w);
    int nmax = 30;
    if (r > 0.1) {
        nmax = static_cast<int>(std::ceil(-37.0 / std::log(r))) + 2;
        if (nmax < 30) nmax = 30;
        if (nmax > 3000) nmax = 3000;
    }
    Complex term = w, sum = w, comp = 0.0;
    for (int n = 2; n <= nmax; ++n) {
        term *= w;
        Complex t = term / static_cast<double>(n * n);
        Complex s = sum + t;
        comp += (std::abs(sum) >= std::abs(t)) ? (sum - s) + t : (t - s) + sum;
        sum = s;
        if (std::abs(t) < 1e-18 * std::abs(sum)) break;
    }
    return sum + comp;
}

// 20-point Gauss-Legendre nodes/weights on [-1,1] (positive half).
inline constexpr double kGL20x[10] = {
    0.0765265211334973, 0.2277858511416451, 0.3737060887154195,
    0.5108670019508271, 0.6360536807265150, 0.7463319064601508,
    0.8391169718222188, 0.9122344282513259, 0.9639719272779138,
    0.9931285991850949};
inline constexpr double kGL20w[10] = {
    0.1527533871307258, 0.1491729864726037, 0.1420961093183820,
    0.1316886384491766, 0.1181945319615184, 0.1019301198172404,
    0.0832767415767048, 0.0626720483341091, 0.0406014298003869,
    0.0176140071391521};

/// Defining integral -int_0^1 log(1 - z t)/t dt on 8 composite GL panels.
/// Used only near the anharmonic fixed points, where the singularity 1/z
/// stays at distance ~0.85 from the path.
inline Complex li2_integral(const Complex& z) {
    auto f = [&z](double t) -> Complex {
        Complex zt = z * t;
        if (std::abs(zt) < 1e-4) {
            return z * (1.0 + zt * (0.5 + zt * (1.0 / 3.0 + zt * 0.25)));
        }
        return -std::log(1.0 - zt) / t;
    };
    Complex sum = 0.0;
    const int panels = 8;
    for (int pnl = 0; pnl < panels; ++pnl) {
        double a = static_cast<double>(pnl) / panels;
        double b = static_cast<double>(pnl + 1) / panels;
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int i = 0; i < 10; ++i) {
            sum += half * kGL20w[i] * (f(mid + half * kGL20x[i]) + f(mid - half * kGL20x[i]));
        }
    }
    return sum;
}

} // namespace detail

/// Complex dilogarithm, principal branch on C \ [1,+inf).  Points on the
/// cut require an explicit side.
inline Complex li2(Complex z, CutSide side = CutSide::off) {
    using namespace detail;
    if (!(std::isfinite(z.real()) && std::isfinite(z.imag())))
        throw std::domain_error("li2: non-finite argument");
    if (z == Complex(0.0, 0.0)) return 0.0;
    if (z == Complex(1.0, 0.0)) return kPi2_6;  // branch point, finite value

    // on-cut handling
    if (near_axis(z) && z.real() > 1.0) {
        if (side == CutSide::off) {
            if (z.imag() == 0.0)
                throw std::domain_error("li2: on-cut evaluation requires a side");
            // tiny but nonzero imaginary part: branch follows its sign
        } else {
            const double t = z.real();
            const double lt = std::log(t);
            // Li2(t +- i0) = -Li2(1/t) - pi^2/6 - (log^2 t - pi^2)/2 +- i pi log t
            Complex inner = li2(Complex(1.0 / t, 0.0));
            double re = -inner.real() - kPi2_6 - 0.5 * (lt * lt - kPi * kPi);
            double im = (side == CutSide::above ? kPi : -kPi) * lt;
            return {re, im};
        }
    }

    Complex acc = 0.0;
    double sgn = 1.0;
    for (int iter = 0; iter < 5; ++iter) {
        double az = std::abs(z);
        if (az <= 0.55) return sgn * li2_series(z) + acc;
        if (az >= 1.8) {  // inversion
            Complex lz = std::log(-z);
            acc += sgn * (-kPi2_6 - 0.5 * lz * lz);
            sgn = -sgn;
            z = 1.0 / z;
            continue;
        }
        Complex omz = 1.0 - z;
        if (std::abs(omz) <= 0.55) {  // reflection
            acc += sgn * (kPi2_6 - std::log(z) * std::log(omz));
            sgn = -sgn;
            z = omz;
            continue;
        }
        if (az > 1.0) {  // inversion into the unit disk
            Complex lz = std::log(-z);
            acc += sgn * (-kPi2_6 - 0.5 * lz * lz);
            sgn = -sgn;
            z = 1.0 / z;
            continue;
        }
        Complex w = z / (z - 1.0);
        if (std::abs(w) <= 0.55) {  // composed inversion+reflection (Landen)
            Complex lomz = std::log(omz);
            acc += sgn * (-0.5 * lomz * lomz);
            sgn = -sgn;
            z = w;
            continue;
        }
        break;
    }
    double az = std::abs(z);
    if (az <= 0.985) return sgn * li2_series(z) + acc;
    return sgn * li2_integral(z) + acc;
}

/// phi0(z) = -(1/pi) Li2(1/z); holomorphic off [0,1], vanishes at infinity.
inline Complex phi0(Complex z, CutSide side = CutSide::off) {
    if (z == Complex(0.0, 0.0)) throw std::domain_error("phi0: pole at z = 0");
    // the inversion maps the cut side above [0,1] to the side below [1,inf)
    return -li2(1.0 / z, flip(side)) / kPi;
}

/// phi0'(z) = -(1/(pi z)) log((z-1)/z)
inline Complex phi0_prime(Complex z, CutSide side = CutSide::off) {
    if (z == Complex(0.0, 0.0)) throw std::domain_error("phi0_prime: pole at z = 0");
    return -detail::log_side((z - 1.0) / z, side) / (kPi * z);
}

inline Complex phi0_second(Complex z, CutSide side = CutSide::off) {
    Complex l = detail::log_side((z - 1.0) / z, side);
    return l / (kPi * z * z) - 1.0 / (kPi * z * z * (z - 1.0));
}

/// phi1 = (L_{[[1,1],[0,1]]} + L_{[[0,1],[1,1]]}) phi0 in closed form.
inline Complex phi1(Complex z, CutSide side = CutSide::off) {
    if (detail::near_axis(z) && std::fabs(z.real() - 1.0) <= 1e-12)
        throw std::domain_error("phi1: logarithmic singularity at z = 1");
    Complex v = li2(z / (1.0 - z), side);           // cut (1/2,1), same side
    Complex h = li2(1.0 / (z - 1.0), flip(side));   // cut (1,2), flipped side
    return (z * v - h) / kPi + (kPi / 12.0) * z + kLog2 / kPi;
}

inline Complex phi1_prime(Complex z, CutSide side = CutSide::off) {
    using detail::log_side;
    Complex v = li2(z / (1.0 - z), side);
    Complex la = log_side((1.0 - 2.0 * z) / (1.0 - z), flip(side));
    Complex lb = log_side((z - 2.0) / (z - 1.0), side);
    return (v - la / (1.0 - z) - lb / (z - 1.0)) / kPi + kPi / 12.0;
}

inline Complex phi1_second(Complex z, CutSide side = CutSide::off) {
    using detail::log_side;
    Complex A = log_side((1.0 - 2.0 * z) / (1.0 - z), flip(side));
    Complex Ap = -2.0 / (1.0 - 2.0 * z) + 1.0 / (1.0 - z);
    Complex B = log_side((z - 2.0) / (z - 1.0), side);
    Complex Bp = 1.0 / (z - 2.0) - 1.0 / (z - 1.0);
    Complex omz = 1.0 - z, zm1 = z - 1.0;
    return (-A / (z * omz) - Ap / omz - A / (omz * omz) - Bp / zm1 + B / (zm1 * zm1)) / kPi;
}

} // namespace brjuno
