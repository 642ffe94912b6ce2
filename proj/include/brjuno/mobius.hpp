#pragma once

// GL(2,Z) matrices and their homographic action, the free monoid generated
// by g(m) = [[0,1],[1,m]] with its unique factorization and bijections onto
// the rationals and the Farey intervals, membership in the even-theory
// submonoid, and the cocycle machinery of the Brjuno functional equation
// over PGL(2,Z) = <S, T>, S(x) = 1/x, T(x) = x + 1.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cf_real.hpp"
#include "rational.hpp"

namespace brjuno {

struct Mat2Z {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    std::int64_t det() const {
        return detail::checked_mul(a, d) - detail::checked_mul(b, c);
    }
    bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }

    friend Mat2Z operator*(const Mat2Z& x, const Mat2Z& y) {
        using detail::checked_add;
        using detail::checked_mul;
        return Mat2Z{checked_add(checked_mul(x.a, y.a), checked_mul(x.b, y.c)),
                     checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.d)),
                     checked_add(checked_mul(x.c, y.a), checked_mul(x.d, y.c)),
                     checked_add(checked_mul(x.c, y.b), checked_mul(x.d, y.d))};
    }
    friend bool operator==(const Mat2Z& x, const Mat2Z& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
};

inline Mat2Z generator(std::int64_t m) { return Mat2Z{0, 1, 1, m}; }

/// Extended complex plane point: value, or infinity.
struct ExtComplex {
    std::complex<double> v{};
    bool inf = false;
    static ExtComplex infinity() { return ExtComplex{{}, true}; }
    static ExtComplex of(std::complex<double> z) { return ExtComplex{z, false}; }
};

/// Homographic action (az+b)/(cz+d) on the extended plane.
inline ExtComplex act(const Mat2Z& g, const ExtComplex& z) {
    if (z.inf) {
        if (g.c == 0) return ExtComplex::infinity();
        return ExtComplex::of({static_cast<double>(g.a) / static_cast<double>(g.c), 0.0});
    }
    std::complex<double> den = static_cast<double>(g.c) * z.v + static_cast<double>(g.d);
    if (std::abs(den) == 0.0) return ExtComplex::infinity();
    return ExtComplex::of((static_cast<double>(g.a) * z.v + static_cast<double>(g.b)) / den);
}

inline std::complex<double> act(const Mat2Z& g, std::complex<double> z) {
    ExtComplex r = act(g, ExtComplex::of(z));
    if (r.inf) throw std::domain_error("act: image is the point at infinity");
    return r.v;
}

/// Exact action on extended rationals.
inline Rational act(const Mat2Z& g, const Rational& r) {
    using detail::checked_add;
    using detail::checked_mul;
    if (r.is_infinity()) return reduce(g.a, g.c);
    return reduce(checked_add(checked_mul(g.a, r.num), checked_mul(g.b, r.den)),
                  checked_add(checked_mul(g.c, r.num), checked_mul(g.d, r.den)));
}

/// Membership in the monoid: the identity, or d >= b >= a >= 0 and
/// d >= c >= a (with det +-1, which the caller should have).
inline bool monoid_member(const Mat2Z& g) {
    std::int64_t dt = g.det();
    if (dt != 1 && dt != -1) throw std::domain_error("monoid_member: determinant must be +-1");
    if (g.is_identity()) return true;
    return g.d >= g.b && g.b >= g.a && g.a >= 0 && g.d >= g.c && g.c >= g.a;
}

struct MonoidWord {
    std::vector<std::int64_t> letters;  // m_i >= 1; empty = identity

    Mat2Z matrix() const {
        Mat2Z g;
        for (std::int64_t m : letters) g = g * generator(m);
        return g;
    }
    friend bool operator==(const MonoidWord& x, const MonoidWord& y) {
        return x.letters == y.letters;
    }
};

/// Unique factorization of a monoid element into generators, by peeling the
/// last letter.  Throws on non-members.
inline MonoidWord factorize(Mat2Z g) {
    if (!monoid_member(g)) throw std::invalid_argument("factorize: not a monoid element");
    MonoidWord w;
    while (!g.is_identity()) {
        std::int64_t m;
        if (g.a == 0) {
            m = g.d;                       // g = g(d)
        } else if (g.a == 1) {
            m = (g.d == g.b * g.c + 1) ? g.b : g.b - 1;
        } else {
            m = g.b / g.a;                 // a does not divide b for members
        }
        if (m < 1) throw std::logic_error("factorize: peeling failed");
        // right-multiply by g(m)^{-1} = [[-m,1],[1,0]]
        Mat2Z next{g.b - m * g.a, g.a, g.d - m * g.c, g.c};
        if (!monoid_member(next)) throw std::logic_error("factorize: peeled outside monoid");
        w.letters.push_back(m);
        g = next;
    }
    std::reverse(w.letters.begin(), w.letters.end());
    return w;
}

/// g . 1 = (a+b)/(c+d): bijection of the monoid onto Q cap (0,1].
inline Rational monoid_to_rational(const MonoidWord& w) {
    Mat2Z g = w.matrix();
    return reduce(detail::checked_add(g.a, g.b), detail::checked_add(g.c, g.d));
}

/// Endpoints g.infinity = a/c and g.0 = b/d of the Farey interval g.[0,inf].
inline std::pair<Rational, Rational> farey_interval_of(const MonoidWord& w) {
    Mat2Z g = w.matrix();
    Rational e1 = (g.c == 0) ? Rational{1, 0} : reduce(g.a, g.c);
    Rational e2 = reduce(g.b, g.d);
    return {e1, e2};
}

/// All words with length <= max_len and matrix entry d <= max_den, in
/// length-then-lexicographic order.
inline void enumerate_monoid(int max_len, std::int64_t max_den,
                             const std::function<void(const MonoidWord&, const Mat2Z&)>& visit) {
    if (max_len < 0) throw std::invalid_argument("enumerate_monoid: max_len >= 0");
    MonoidWord w;
    Mat2Z id;
    visit(w, id);
    // depth-first by levels to keep the documented order
    std::function<void(const MonoidWord&, const Mat2Z&, int)> rec =
        [&](const MonoidWord& word, const Mat2Z& g, int level) {
            if (level == 0) return;
            for (std::int64_t m = 1;; ++m) {
                Mat2Z h{g.b, g.a + m * g.b, g.d, g.c + m * g.d};
                if (h.d > max_den) break;
                MonoidWord next = word;
                next.letters.push_back(m);
                visit(next, h);
                rec(next, h, level - 1);
            }
        };
    // level-by-level would revisit; instead enumerate all under the cap and
    // rely on d growth (strictly increasing along letters) for termination.
    if (max_len > 0) rec(w, id, max_len);
}

inline std::vector<std::pair<MonoidWord, Mat2Z>> enumerate_monoid(int max_len, std::int64_t max_den) {
    std::vector<std::pair<MonoidWord, Mat2Z>> out;
    enumerate_monoid(max_len, max_den,
                     [&](const MonoidWord& w, const Mat2Z& g) { out.emplace_back(w, g); });
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.first.letters.size() != y.first.letters.size())
            return x.first.letters.size() < y.first.letters.size();
        return x.first.letters < y.first.letters;
    });
    return out;
}

/// Membership in the even-theory submonoid: d >= 2b > 0, c >= 2a >= 0 and
/// d >= G c with G the golden ratio, decided in exact integer arithmetic
/// ((2d-c)^2 > 5c^2 with 2d-c > 0; equality is impossible for c != 0).
/// The literal inequalities exclude the identity; pass include_unit to admit
/// it as the monoid unit.
inline bool even_monoid_member(const Mat2Z& g, bool include_unit = false) {
    std::int64_t dt = g.det();
    if (dt != 1 && dt != -1) throw std::domain_error("even_monoid_member: determinant must be +-1");
    if (g.is_identity()) return include_unit;
    if (!(g.d >= 2 * g.b && g.b > 0)) return false;
    if (!(g.c >= 2 * g.a && g.a >= 0)) return false;
    if (g.c == 0) return g.d >= 0;
    std::int64_t t = 2 * g.d - g.c;
    if (t <= 0) return false;
    return (__int128)t * t > (__int128)5 * g.c * g.c;
}

// ---------------------------------------------------------------------------
// PGL(2,Z) words over {S, T, T^-1} attached to an irrational orbit
// ---------------------------------------------------------------------------

enum class PglLetter { S, T, Tinv };

namespace detail {

struct SymLetter {  // working alphabet: S, T^n, U (x -> -x)
    enum Kind { S, Tn, U } kind;
    std::int64_t n = 0;  // exponent for Tn
};

inline double apply_letter(const SymLetter& l, double x) {
    switch (l.kind) {
        case SymLetter::S: return 1.0 / x;
        case SymLetter::Tn: return x + static_cast<double>(l.n);
        case SymLetter::U: return -x;
    }
    return x;
}

inline bool is_irrational_like(double x) {
    RealCF cf = expand_cf(x, 50, 1e-12);
    return !cf.terminated;
}

} // namespace detail

/// Decomposition of g in PGL(2,Z) as g = g_r ... g_1 over {S, T, T^-1},
/// with x_{i-1} > 0 whenever g_i = S and no adjacent inverse pairs; the
/// resulting word is the unique minimal one for the given orbit x0.
/// The returned list is in order of application: front() acts first.
inline std::vector<PglLetter> decompose_word(Mat2Z g, double x0) {
    using detail::SymLetter;
    if (!detail::is_irrational_like(x0))
        throw std::invalid_argument("decompose_word: x0 is rational within tolerance");
    // normalize the projective representative: first nonzero entry of the
    // bottom row positive
    if (g.c < 0 || (g.c == 0 && g.d < 0)) { g.a = -g.a; g.b = -g.b; g.c = -g.c; g.d = -g.d; }
    std::int64_t dt = g.det();
    if (dt != 1 && dt != -1) throw std::domain_error("decompose_word: determinant must be +-1");

    // Z.M.H decomposition: g * h^{-1} = T^n * (monoid word), h in the order-8
    // group of signed permutation matrices.
    static const std::array<Mat2Z, 4> kH = {
        Mat2Z{1, 0, 0, 1},    // id
        Mat2Z{0, 1, 1, 0},    // S
        Mat2Z{-1, 0, 0, 1},   // U : x -> -x
        Mat2Z{0, -1, 1, 0},   // S U : x -> -1/x
    };
    std::vector<SymLetter> word;  // in order of application
    bool found = false;
    for (int hi = 0; hi < 4 && !found; ++hi) {
        const Mat2Z& h = kH[hi];
        // h^{-1}: these four are involutions up to sign in PGL
        Mat2Z k = g * h;  // since h^{-1} = +-h for all four representatives
        if (k.c < 0 || (k.c == 0 && k.d < 0)) { k.a = -k.a; k.b = -k.b; k.c = -k.c; k.d = -k.d; }
        // try to peel k = T^n * monoid
        if (!(k.d >= k.c && k.c >= 0)) continue;
        std::int64_t n;
        if (k.c == 0) {
            if (k.a != 1 || k.d != 1) continue;
            n = k.b;
        } else {
            n = static_cast<std::int64_t>(std::floor(static_cast<double>(k.a) / k.c));
        }
        Mat2Z mono{};
        bool ok = false;
        for (std::int64_t nn = n - 1; nn <= n + 1 && !ok; ++nn) {
            Mat2Z cand{k.a - nn * k.c, k.b - nn * k.d, k.c, k.d};
            if (cand.det() == 1 || cand.det() == -1) {
                if (monoid_member(cand)) { mono = cand; n = nn; ok = true; }
            }
        }
        if (!ok) continue;
        MonoidWord mw = factorize(mono);
        // order of application: h first, then (S T^{m_r}), ..., (S T^{m_1}),
        // then T^n last
        switch (hi) {
            case 0: break;
            case 1: word.push_back({SymLetter::S, 0}); break;
            case 2: word.push_back({SymLetter::U, 0}); break;
            case 3: word.push_back({SymLetter::U, 0});
                    word.push_back({SymLetter::S, 0}); break;
        }
        for (auto it = mw.letters.rbegin(); it != mw.letters.rend(); ++it) {
            word.push_back({SymLetter::Tn, *it});
            word.push_back({SymLetter::S, 0});
        }
        if (n != 0) word.push_back({SymLetter::Tn, n});
        found = true;
    }
    if (!found) throw std::logic_error("decompose_word: Z.M.H decomposition failed");

    // rewrite until: no U letters, every S applied at a positive point,
    // no adjacent cancelling pairs
    auto orbit_point = [&](std::size_t upto) {
        double x = x0;
        for (std::size_t i = 0; i < upto; ++i) x = detail::apply_letter(word[i], x);
        return x;
    };
    for (int guard = 0; guard < 1 << 20; ++guard) {
        bool changed = false;
        // S at a negative point: S = U S U
        for (std::size_t i = 0; i < word.size() && !changed; ++i) {
            if (word[i].kind == SymLetter::S && orbit_point(i) < 0.0) {
                std::vector<SymLetter> repl = {{SymLetter::U, 0}, {SymLetter::S, 0}, {SymLetter::U, 0}};
                word.erase(word.begin() + i);
                word.insert(word.begin() + i, repl.begin(), repl.end());
                changed = true;
            }
        }
        if (changed) continue;
        // expand the first U
        for (std::size_t i = 0; i < word.size() && !changed; ++i) {
            if (word[i].kind != SymLetter::U) continue;
            double y = orbit_point(i);
            std::int64_t n = static_cast<std::int64_t>(std::floor(y));
            std::vector<SymLetter> repl;
            if (n == 0) {
                // on (0,1): U = T^-1 S T S T^-1 S reading right to left
                repl = {{SymLetter::S, 0}, {SymLetter::Tn, -1}, {SymLetter::S, 0},
                        {SymLetter::Tn, 1}, {SymLetter::S, 0}, {SymLetter::Tn, -1}};
            } else {
                // U at y = T^{-n} U T^{-n} applied at y
                repl = {{SymLetter::Tn, -n}, {SymLetter::U, 0}, {SymLetter::Tn, -n}};
            }
            word.erase(word.begin() + i);
            word.insert(word.begin() + i, repl.begin(), repl.end());
            changed = true;
        }
        if (changed) continue;
        // merge adjacent T-powers and drop zero powers / double S
        for (std::size_t i = 0; i + 1 < word.size() && !changed; ++i) {
            if (word[i].kind == SymLetter::Tn && word[i + 1].kind == SymLetter::Tn) {
                word[i].n += word[i + 1].n;
                word.erase(word.begin() + i + 1);
                changed = true;
            } else if (word[i].kind == SymLetter::S && word[i + 1].kind == SymLetter::S) {
                word.erase(word.begin() + i, word.begin() + i + 2);
                changed = true;
            }
        }
        for (std::size_t i = 0; i < word.size() && !changed; ++i) {
            if (word[i].kind == SymLetter::Tn && word[i].n == 0) {
                word.erase(word.begin() + i);
                changed = true;
            }
        }
        if (!changed) break;
    }

    // final expansion of T^n into single steps
    std::vector<PglLetter> out;
    for (const auto& l : word) {
        if (l.kind == SymLetter::S) {
            out.push_back(PglLetter::S);
        } else if (l.kind == SymLetter::Tn) {
            for (std::int64_t k = 0; k < std::llabs(l.n); ++k)
                out.push_back(l.n > 0 ? PglLetter::T : PglLetter::Tinv);
        } else {
            throw std::logic_error("decompose_word: unexpanded reflection");
        }
    }
    // cancel adjacent T T^-1 pairs introduced by the expansion
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < out.size(); ++i) {
            bool inv = (out[i] == PglLetter::T && out[i + 1] == PglLetter::Tinv) ||
                       (out[i] == PglLetter::Tinv && out[i + 1] == PglLetter::T) ||
                       (out[i] == PglLetter::S && out[i + 1] == PglLetter::S);
            if (inv) {
                out.erase(out.begin() + i, out.begin() + i + 2);
                changed = true;
                break;
            }
        }
    }
    // the word must compose back to +-g
    Mat2Z prod;
    for (PglLetter l : out) {
        Mat2Z m = (l == PglLetter::S)   ? Mat2Z{0, 1, 1, 0}
                  : (l == PglLetter::T) ? Mat2Z{1, 1, 0, 1}
                                        : Mat2Z{1, -1, 0, 1};
        prod = m * prod;
    }
    Mat2Z neg{-g.a, -g.b, -g.c, -g.d};
    if (!(prod == g || prod == neg))
        throw std::logic_error("decompose_word: word does not reproduce the matrix");
    return out;
}

inline double apply_pgl(PglLetter l, double x) {
    switch (l) {
        case PglLetter::S: return 1.0 / x;
        case PglLetter::T: return x + 1.0;
        case PglLetter::Tinv: return x - 1.0;
    }
    return x;
}

/// Automorphic factor chi(g, x0) built from the word: chi(T,.) = 1 and
/// chi(S,x) = eps * x^nu on positive x.  Equals |c x0 + d|^nu (eps = +1) or
/// det(g) |c x0 + d|^nu (eps = -1).
inline double automorphic_factor(const Mat2Z& g, double x0, double nu, int eps) {
    if (eps != 1 && eps != -1) throw std::invalid_argument("automorphic_factor: eps must be +-1");
    auto word = decompose_word(g, x0);
    double chi = 1.0, x = x0;
    for (PglLetter l : word) {
        if (l == PglLetter::S) {
            if (!(x > 0.0)) throw std::logic_error("automorphic_factor: inversion at x <= 0");
            chi *= static_cast<double>(eps) * std::pow(x, nu);
        }
        x = apply_pgl(l, x);
    }
    return chi;
}

/// The unique cocycle with c(T,.) = 0 and c(S,x) = f(x) on (0,1), evaluated
/// along the canonical word; chi is taken with eps = +1 and the given nu,
/// the case of the Brjuno functional equation.
inline double cocycle_eval(const std::function<double(double)>& f, const Mat2Z& g, double x0,
                           double nu = 1.0) {
    auto word = decompose_word(g, x0);
    double x = x0;
    double chi_prefix = 1.0;  // chi(g_{i-1}...g_1, x0)
    double total = 0.0;
    for (PglLetter l : word) {
        double contrib = 0.0;
        if (l == PglLetter::S) {
            if (!(x > 0.0)) throw std::logic_error("cocycle_eval: inversion at x <= 0");
            contrib = (x < 1.0) ? f(x) : -std::pow(x, nu) * f(1.0 / x);
        }
        total += contrib * chi_prefix;
        if (l == PglLetter::S) chi_prefix *= std::pow(x, nu);
        x = apply_pgl(l, x);
    }
    return total;
}

} // namespace brjuno
