#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mdtk/fq.hpp"
#include "mdtk/poly.hpp"
#include "mdtk/rat.hpp"

namespace mdtk {

namespace detail {

// ---- arithmetic on integer coefficient vectors modulo m, symmetric lift ----

inline void zm_reduce(std::vector<Int>& a, const Int& m) {
    Int half = m / 2;
    for (auto& v : a) {
        v %= m;
        if (v > half) v -= m;
        else if (v < -half) v += m;
    }
    while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

inline std::vector<Int> zm_mul(const std::vector<Int>& a, const std::vector<Int>& b,
                               const Int& m) {
    if (a.empty() || b.empty()) return {};
    std::vector<Int> r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    zm_reduce(r, m);
    return r;
}

inline std::vector<Int> zm_add(std::vector<Int> a, const std::vector<Int>& b,
                               const Int& m) {
    if (a.size() < b.size()) a.resize(b.size(), Int(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    zm_reduce(a, m);
    return a;
}

inline std::vector<Int> zm_sub(std::vector<Int> a, const std::vector<Int>& b,
                               const Int& m) {
    if (a.size() < b.size()) a.resize(b.size(), Int(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    zm_reduce(a, m);
    return a;
}

// divisor must be monic
inline std::pair<std::vector<Int>, std::vector<Int>> zm_divmod_monic(
    std::vector<Int> a, const std::vector<Int>& b, const Int& m) {
    zm_reduce(a, m);
    if (b.empty() || sgn(b.back() - 1) != 0)
        throw std::domain_error("zm_divmod_monic: divisor not monic");
    if (a.size() < b.size()) return {{}, a};
    std::vector<Int> q(a.size() - b.size() + 1, Int(0));
    while (a.size() >= b.size()) {
        Int c = a.back();
        size_t off = a.size() - b.size();
        q[off] = c;
        for (size_t i = 0; i < b.size(); ++i) a[off + i] -= c * b[i];
        a.pop_back();
        zm_reduce(a, m);
        if (a.size() > off + b.size() - 1) a.resize(off + b.size() - 1);
        while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
    }
    zm_reduce(q, m);
    return {q, a};
}

// quadratic Hensel step: f == g*h (mod m), s*g + t*h == 1 (mod m),
// g, h monic, f monic; lifts everything to mod m^2
struct HenselPair {
    std::vector<Int> g, h, s, t;
};

inline void hensel_step(const std::vector<Int>& f, HenselPair& P, const Int& m) {
    Int m2 = m * m;
    auto& g = P.g;
    auto& h = P.h;
    auto& s = P.s;
    auto& t = P.t;
    std::vector<Int> e = zm_sub(f, zm_mul(g, h, m2), m2);
    auto [q, r] = zm_divmod_monic(zm_mul(s, e, m2), h, m2);
    std::vector<Int> g1 = zm_add(zm_add(g, zm_mul(t, e, m2), m2), zm_mul(q, g, m2), m2);
    std::vector<Int> h1 = zm_add(h, r, m2);
    std::vector<Int> b =
        zm_sub(zm_add(zm_mul(s, g1, m2), zm_mul(t, h1, m2), m2), {Int(1)}, m2);
    auto [c, d] = zm_divmod_monic(zm_mul(s, b, m2), h1, m2);
    std::vector<Int> s1 = zm_sub(s, d, m2);
    std::vector<Int> t1 = zm_sub(zm_sub(t, zm_mul(t, b, m2), m2), zm_mul(c, g1, m2), m2);
    g = std::move(g1);
    h = std::move(h1);
    s = std::move(s1);
    t = std::move(t1);
}

inline std::vector<Int> zvec_of(const Poly<Rat>& f) {
    std::vector<Int> r;
    for (auto& v : f.c) {
        if (den(v) != 1) throw std::domain_error("zvec_of: non-integer coefficient");
        r.push_back(num(v));
    }
    return r;
}

inline Poly<Rat> poly_of(const std::vector<Int>& v) {
    std::vector<Rat> c;
    c.reserve(v.size());
    for (auto& x : v) c.emplace_back(x);
    return Poly<Rat>(std::move(c));
}

// xgcd mod prime p for monic-ish vectors; returns (s, t) with s*a + t*b == 1
inline std::pair<std::vector<Int>, std::vector<Int>> zp_bezout(
    const std::vector<Int>& a, const std::vector<Int>& b, const Int& p) {
    const FqCtx* k = FqCtx::get(p, 1);
    auto lift = [&](const std::vector<Int>& v) {
        std::vector<Fq> c;
        for (auto& x : v) c.emplace_back(k, x);
        return Poly<Fq>(std::move(c));
    };
    auto [g, s, t] = xgcd(lift(a), lift(b));
    if (g.deg() != 0) throw std::logic_error("zp_bezout: inputs not coprime mod p");
    auto down = [&](const Poly<Fq>& f) {
        std::vector<Int> r;
        for (auto& v : f.c) r.push_back(v.lift());
        Int pp = p;
        zm_reduce(r, pp);
        return r;
    };
    return {down(s), down(t)};
}

// lift the factorization f == prod(factors) (mod p) to mod p^(2^levels),
// splitting the factor list as a balanced tree; f monic, factors monic
inline std::vector<std::vector<Int>> hensel_tree(const std::vector<Int>& f,
                                                 std::vector<std::vector<Int>> factors,
                                                 const Int& p, const Int& target) {
    if (factors.size() == 1) {
        std::vector<Int> r = f;
        zm_reduce(r, const_cast<Int&>(target));
        return {r};
    }
    size_t half = factors.size() / 2;
    std::vector<Int> g{Int(1)}, h{Int(1)};
    for (size_t i = 0; i < half; ++i) g = zm_mul(g, factors[i], p);
    for (size_t i = half; i < factors.size(); ++i) h = zm_mul(h, factors[i], p);
    auto [s, t] = zp_bezout(g, h, p);
    HenselPair P{g, h, s, t};
    Int m = p;
    while (m < target) {
        hensel_step(f, P, m);
        m = m * m;
    }
    std::vector<std::vector<Int>> left(factors.begin(),
                                       factors.begin() + static_cast<long>(half));
    std::vector<std::vector<Int>> right(factors.begin() + static_cast<long>(half),
                                        factors.end());
    auto lg = hensel_tree(P.g, std::move(left), p, target);
    auto rh = hensel_tree(P.h, std::move(right), p, target);
    lg.insert(lg.end(), rh.begin(), rh.end());
    return lg;
}

}  // namespace detail

// factor a primitive squarefree monic integer polynomial into monic
// irreducible integer polynomials (Zassenhaus)
inline std::vector<Poly<Rat>> z_factor_monic_squarefree(const Poly<Rat>& F) {
    int n = F.deg();
    if (n <= 1) return {F};
    std::vector<Int> f = detail::zvec_of(F);

    // pick a prime keeping F squarefree with the fewest modular factors
    std::optional<std::pair<Int, std::vector<std::vector<Int>>>> best;
    int tried = 0;
    for (Int p(3); tried < 7; p = p + 2) {
        if (mpz_probab_prime_p(p.get_mpz_t(), 40) == 0) continue;
        const FqCtx* k = FqCtx::get(p, 1);
        std::vector<Fq> fc;
        for (auto& v : f) fc.emplace_back(k, v);
        Poly<Fq> fp(std::move(fc));
        if (fp.deg() != n) continue;  // cannot happen for monic, but be safe
        if (gcd(fp, fp.derivative()).deg() != 0) continue;
        ++tried;
        auto facs = fq_factor(fp);
        std::vector<std::vector<Int>> fl;
        for (auto& [g, m] : facs) {
            std::vector<Int> gv;
            for (auto& c : g.c) gv.push_back(c.lift());
            detail::zm_reduce(gv, const_cast<Int&>(p));
            // restore monic leading 1 possibly trimmed by symmetric reduce
            gv.resize(static_cast<size_t>(g.deg()) + 1, Int(0));
            gv[static_cast<size_t>(g.deg())] = 1;
            fl.push_back(std::move(gv));
        }
        if (!best || fl.size() < best->second.size()) best = {p, fl};
        if (best->second.size() == 1) break;
    }
    if (!best) throw std::logic_error("no usable prime found for factorization");
    auto& [p, modfac] = *best;
    if (modfac.size() == 1) return {F};  // irreducible

    // Landau-Mignotte bound on factor coefficients
    Int H(0);
    for (auto& v : f) {
        Int a = abs(v);
        if (a > H) H = a;
    }
    Int bound = (H + 1) * ipow(Int(2), static_cast<unsigned long>(n + 2)) *
                Int(static_cast<long>(n + 1));
    Int target = p;
    while (target <= 2 * bound) target = target * target;

    auto lifted = detail::hensel_tree(f, modfac, p, target);

    // recombination: subsets of lifted factors whose product divides F in Z[x]
    std::vector<Poly<Rat>> out;
    std::vector<size_t> live(lifted.size());
    for (size_t i = 0; i < live.size(); ++i) live[i] = i;
    Poly<Rat> rem = F;
    auto try_subset = [&](const std::vector<size_t>& idx) -> bool {
        std::vector<Int> prod{Int(1)};
        for (size_t i : idx) prod = detail::zm_mul(prod, lifted[live[i]], target);
        Poly<Rat> g = detail::poly_of(prod);
        auto q = exact_div(rem, g);
        if (!q) return false;
        out.push_back(g);
        rem = *q;
        std::vector<size_t> nl;
        for (size_t i = 0; i < live.size(); ++i)
            if (std::find(idx.begin(), idx.end(), i) == idx.end())
                nl.push_back(live[i]);
        live = std::move(nl);
        return true;
    };
    size_t s = 1;
    while (2 * s <= live.size()) {
        // enumerate size-s index subsets of live
        std::vector<size_t> idx(s);
        for (size_t i = 0; i < s; ++i) idx[i] = i;
        bool advanced = false;
        while (true) {
            if (try_subset(idx)) {
                advanced = true;
                break;
            }
            // next combination
            size_t i = s;
            while (i > 0) {
                --i;
                if (idx[i] != i + live.size() - s) {
                    ++idx[i];
                    for (size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
                    break;
                }
                if (i == 0) {
                    i = SIZE_MAX;
                    break;
                }
            }
            if (i == SIZE_MAX) break;
        }
        if (!advanced) ++s;
    }
    if (rem.deg() > 0) out.push_back(rem);
    std::sort(out.begin(), out.end(), [](const Poly<Rat>& a, const Poly<Rat>& b) {
        if (a.deg() != b.deg()) return a.deg() < b.deg();
        for (int i = a.deg(); i >= 0; --i) {
            int c = cmp(a.coeff(i), b.coeff(i));
            if (c != 0) return c < 0;
        }
        return false;
    });
    return out;
}

// factor a primitive squarefree integer polynomial (any leading coefficient)
inline std::vector<Poly<Rat>> z_factor_squarefree(const Poly<Rat>& f) {
    int n = f.deg();
    if (n <= 0) return {};
    if (n == 1) return {primitive_part(f)};
    Rat L = f.lc();
    if (L == 1) return z_factor_monic_squarefree(f);
    // monicization: G(x) = L^(n-1) * f(x/L) is monic with integer coefficients
    std::vector<Rat> g(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
        g[static_cast<size_t>(i)] = f.coeff(i) * rpow(L, n - 1 - i);
    auto parts = z_factor_monic_squarefree(Poly<Rat>(std::move(g)));
    std::vector<Poly<Rat>> out;
    for (auto& h : parts) {
        std::vector<Rat> back(static_cast<size_t>(h.deg()) + 1);
        for (int i = 0; i <= h.deg(); ++i)
            back[static_cast<size_t>(i)] = h.coeff(i) * rpow(L, i);
        out.push_back(primitive_part(Poly<Rat>(std::move(back))));
    }
    return out;
}

// full factorization over Q: content * prod(factor^mult) with primitive
// integer factors, positive leading coefficients
struct ZFactorization {
    Rat content;
    std::vector<std::pair<Poly<Rat>, int>> factors;
};

inline ZFactorization z_factor(const Poly<Rat>& f_in) {
    ZFactorization out;
    out.content = content(f_in);
    if (f_in.zero()) {
        out.content = Rat(0);
        return out;
    }
    Poly<Rat> f = primitive_part(f_in);
    if (f.deg() == 0) return out;
    // Yun squarefree decomposition over Q
    Poly<Rat> fp = f.derivative();
    Poly<Rat> a = gcd(f, fp);
    // gcd is monic; rescale to primitive
    Poly<Rat> b = f / a, c = fp / a, d = c - b.derivative();
    int i = 1;
    while (b.deg() > 0) {
        Poly<Rat> g = gcd(b, d);
        if (g.deg() > 0) {
            for (auto& irr : z_factor_squarefree(primitive_part(g)))
                out.factors.emplace_back(irr, i);
        }
        b = b / g;
        c = d / g;
        d = c - b.derivative();
        ++i;
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& x, const auto& y) {
                  if (x.first.deg() != y.first.deg())
                      return x.first.deg() < y.first.deg();
                  for (int k = x.first.deg(); k >= 0; --k) {
                      int c2 = cmp(x.first.coeff(k), y.first.coeff(k));
                      if (c2 != 0) return c2 < 0;
                  }
                  return x.second < y.second;
              });
    return out;
}

inline bool z_is_irreducible(const Poly<Rat>& f) {
    if (f.deg() <= 0) return false;
    auto fac = z_factor(f);
    return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

// rational roots of f
inline std::vector<Rat> q_roots(const Poly<Rat>& f) {
    std::vector<Rat> out;
    for (auto& [g, m] : z_factor(f).factors)
        if (g.deg() == 1) out.push_back(-g.coeff(0) / g.coeff(1));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace mdtk
