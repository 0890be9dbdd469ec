#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mdtk/rat.hpp"

namespace mdtk {

// Dense univariate polynomial over a field K.  K must provide +,-,*,
// is_zero, inv, one_like, zero_like (free functions, ADL).
template <class K>
struct Poly {
    std::vector<K> c;  // c[i] is the coefficient of x^i; no trailing zeros

    Poly() = default;
    explicit Poly(std::vector<K> cc) : c(std::move(cc)) { trim(); }
    static Poly constant(const K& v) {
        Poly p;
        if (!is_zero(v)) p.c.push_back(v);
        return p;
    }
    // x^k with coefficient v
    static Poly monomial(const K& v, int k) {
        Poly p;
        if (is_zero(v)) return p;
        p.c.assign(static_cast<size_t>(k) + 1, zero_like(v));
        p.c[static_cast<size_t>(k)] = v;
        return p;
    }

    void trim() {
        while (!c.empty() && is_zero(c.back())) c.pop_back();
    }
    bool zero() const { return c.empty(); }
    int deg() const { return static_cast<int>(c.size()) - 1; }  // deg(0) = -1
    const K& lc() const {
        if (zero()) throw std::domain_error("lc of zero polynomial");
        return c.back();
    }
    K coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c.size()))
            return zero_ex();
        return c[static_cast<size_t>(i)];
    }
    // a zero scalar with the right context, if we have any coefficient to copy from
    K zero_ex() const {
        if (!c.empty()) return zero_like(c.back());
        return K{};
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.c.size() != b.c.size()) return false;
        for (size_t i = 0; i < a.c.size(); ++i)
            if (!(a.c[i] == b.c[i])) return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r;
        r.c.resize(std::max(a.c.size(), b.c.size()));
        for (size_t i = 0; i < r.c.size(); ++i) {
            if (i < a.c.size() && i < b.c.size())
                r.c[i] = a.c[i] + b.c[i];
            else if (i < a.c.size())
                r.c[i] = a.c[i];
            else
                r.c[i] = b.c[i];
        }
        r.trim();
        return r;
    }
    friend Poly operator-(const Poly& a) {
        Poly r = a;
        for (auto& v : r.c) v = -v;
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        if (a.zero() || b.zero()) return r;
        r.c.assign(a.c.size() + b.c.size() - 1, zero_like(a.c[0]));
        for (size_t i = 0; i < a.c.size(); ++i) {
            if (is_zero(a.c[i])) continue;
            for (size_t j = 0; j < b.c.size(); ++j)
                r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
        }
        r.trim();
        return r;
    }
    friend Poly operator*(const Poly& a, const K& s) {
        Poly r;
        if (is_zero(s)) return r;
        r.c = a.c;
        for (auto& v : r.c) v = v * s;
        r.trim();
        return r;
    }
    friend Poly operator*(const K& s, const Poly& a) { return a * s; }

    K eval(const K& x0) const {
        if (zero()) return zero_like(x0);
        K acc = c.back();
        for (int i = deg() - 1; i >= 0; --i) acc = acc * x0 + c[static_cast<size_t>(i)];
        return acc;
    }

    Poly derivative() const {
        Poly r;
        if (deg() < 1) return r;
        r.c.resize(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i)
            r.c[i - 1] = c[i] * from_int_like(c[i], static_cast<long>(i));
        r.trim();
        return r;
    }

    Poly shifted(int k) const {  // multiply by x^k
        if (zero()) return *this;
        Poly r;
        r.c.assign(c.size() + static_cast<size_t>(k), zero_like(c[0]));
        for (size_t i = 0; i < c.size(); ++i) r.c[i + static_cast<size_t>(k)] = c[i];
        return r;
    }
};

template <class K>
std::pair<Poly<K>, Poly<K>> divmod(const Poly<K>& a, const Poly<K>& b) {
    if (b.zero()) throw std::domain_error("polynomial division by zero");
    Poly<K> q, r = a;
    if (a.deg() < b.deg()) return {q, r};
    K linv = inv(b.lc());
    q.c.assign(static_cast<size_t>(a.deg() - b.deg() + 1), zero_like(b.lc()));
    while (!r.zero() && r.deg() >= b.deg()) {
        int k = r.deg() - b.deg();
        K f = r.lc() * linv;
        q.c[static_cast<size_t>(k)] = f;
        // r -= f * x^k * b
        for (int i = 0; i <= b.deg(); ++i) {
            size_t idx = static_cast<size_t>(i + k);
            r.c[idx] = r.c[idx] - f * b.c[static_cast<size_t>(i)];
        }
        r.trim();
    }
    q.trim();
    return {q, r};
}

template <class K>
Poly<K> operator/(const Poly<K>& a, const Poly<K>& b) {
    return divmod(a, b).first;
}
template <class K>
Poly<K> operator%(const Poly<K>& a, const Poly<K>& b) {
    return divmod(a, b).second;
}

template <class K>
std::optional<Poly<K>> exact_div(const Poly<K>& a, const Poly<K>& b) {
    auto [q, r] = divmod(a, b);
    if (!r.zero()) return std::nullopt;
    return q;
}

template <class K>
Poly<K> make_monic(const Poly<K>& a) {
    if (a.zero()) return a;
    return a * inv(a.lc());
}

namespace poly_detail {

// primitive integer coefficient vector of a nonzero rational polynomial
inline std::vector<Int> rat_primitive_ivec(const Poly<Rat>& f) {
    Int L(1);
    for (auto& v : f.c) L = lcm(L, den(v));
    std::vector<Int> a(f.c.size());
    Int g(0);
    for (size_t i = 0; i < a.size(); ++i) {
        a[i] = num(f.c[i]) * (L / den(f.c[i]));
        g = gcd(g, a[i]);
    }
    if (g != 0)
        for (auto& v : a) v /= g;
    return a;
}

inline std::vector<Int> mod_image(const std::vector<Int>& a, const Int& p) {
    std::vector<Int> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] % p;
        if (r[i] < 0) r[i] += p;
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

// monic gcd of two nonzero polynomials over F_p (coefficient vectors)
inline std::vector<Int> mod_poly_gcd(std::vector<Int> x, std::vector<Int> y, const Int& p) {
    auto monic = [&](std::vector<Int> b) {
        Int iv;
        mpz_invert(iv.get_mpz_t(), b.back().get_mpz_t(), p.get_mpz_t());
        for (auto& v : b) v = v * iv % p;
        return b;
    };
    auto rem = [&](std::vector<Int> a, const std::vector<Int>& b) {  // b monic
        while (a.size() >= b.size()) {
            Int f = a.back();
            size_t k = a.size() - b.size();
            for (size_t i = 0; i + 1 < b.size(); ++i) {
                a[k + i] = (a[k + i] - f * b[i]) % p;
                if (a[k + i] < 0) a[k + i] += p;
            }
            a.pop_back();
            while (!a.empty() && a.back() == 0) a.pop_back();
        }
        return a;
    };
    while (!y.empty()) {
        y = monic(std::move(y));
        auto r = rem(std::move(x), y);
        x = std::move(y);
        y = std::move(r);
    }
    return monic(std::move(x));
}

// Modular gcd for Q[x] (Brown): monic gcd images mod large primes, scaled
// by the integer gcd of the leading coefficients, recombined by CRT and
// confirmed by exact division.  Avoids the coefficient explosion of the
// Euclidean remainder sequence over Q.
inline Poly<Rat> rat_gcd_modular(const Poly<Rat>& A, const Poly<Rat>& B) {
    std::vector<Int> a = rat_primitive_ivec(A), b = rat_primitive_ivec(B);
    Int gl = gcd(a.back(), b.back());
    Int p = Int(1) << 62;
    std::vector<Int> acc;
    Int mod(0);
    int best = 1 << 30;
    for (int iter = 0; iter < 256; ++iter) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        if (a.back() % p == 0 || b.back() % p == 0) continue;
        auto h = mod_poly_gcd(mod_image(a, p), mod_image(b, p), p);
        int d = static_cast<int>(h.size()) - 1;
        if (d == 0) return Poly<Rat>::constant(Rat(1));
        if (d > best) continue;  // unlucky prime
        Int glp = gl % p;
        for (auto& v : h) v = v * glp % p;
        if (d < best) {
            best = d;
            acc = h;
            mod = p;
        } else {
            Int minv;
            Int mp = mod % p;
            mpz_invert(minv.get_mpz_t(), mp.get_mpz_t(), p.get_mpz_t());
            for (size_t i = 0; i < acc.size(); ++i) {
                Int r = (h[i] - acc[i]) % p;
                if (r < 0) r += p;
                acc[i] = acc[i] + mod * (r * minv % p);
            }
            mod *= p;
        }
        // symmetric lift, primitive part, and division check
        std::vector<Rat> cand(acc.size());
        Int half = mod / 2, cg(0);
        std::vector<Int> lifted(acc.size());
        for (size_t i = 0; i < acc.size(); ++i) {
            lifted[i] = acc[i] % mod;
            if (lifted[i] > half) lifted[i] -= mod;
            cg = gcd(cg, lifted[i]);
        }
        if (cg > 1)
            for (auto& v : lifted) v /= cg;
        for (size_t i = 0; i < lifted.size(); ++i) cand[i] = Rat(lifted[i]);
        Poly<Rat> C(std::move(cand));
        if (C.zero()) continue;
        if (exact_div(A, C) && exact_div(B, C)) return make_monic(C);
    }
    // certification failed (should not happen); fall back to Euclid
    Poly<Rat> x = A, y = B;
    while (!y.zero()) {
        auto r = x % y;
        x = y;
        y = r;
    }
    return make_monic(x);
}

}  // namespace poly_detail

template <class K>
Poly<K> gcd(const Poly<K>& a, const Poly<K>& b) {
    if constexpr (std::is_same_v<K, Rat>) {
        if (!a.zero() && !b.zero() && a.deg() + b.deg() > 16)
            return poly_detail::rat_gcd_modular(a, b);
    }
    Poly<K> x = a, y = b;
    while (!y.zero()) {
        auto r = x % y;
        x = y;
        y = r;
    }
    if (x.zero()) return x;
    return make_monic(x);
}

// returns (g, u, v) with u*a + v*b = g, g monic
template <class K>
std::tuple<Poly<K>, Poly<K>, Poly<K>> xgcd(const Poly<K>& a, const Poly<K>& b) {
    Poly<K> r0 = a, r1 = b;
    Poly<K> s0 = Poly<K>::constant(one_like(a.zero() ? b.lc() : a.lc())), s1;
    Poly<K> t0, t1 = s0;
    while (!r1.zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = r1; r1 = r;
        Poly<K> s = s0 - q * s1; s0 = s1; s1 = s;
        Poly<K> t = t0 - q * t1; t0 = t1; t1 = t;
    }
    if (r0.zero()) return {r0, s0, t0};
    K li = inv(r0.lc());
    return {r0 * li, s0 * li, t0 * li};
}

template <class K>
Poly<K> poly_pow(const Poly<K>& a, long e) {
    if (e < 0) throw std::domain_error("negative polynomial power");
    Poly<K> r = Poly<K>::constant(one_like(a.zero() ? K{} : a.lc()));
    Poly<K> b = a;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

template <class K>
Poly<K> poly_powmod(Poly<K> a, Int e, const Poly<K>& m) {
    Poly<K> r = Poly<K>::constant(one_like(m.lc()));
    a = a % m;
    while (sgn(e) > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = (r * a) % m;
        a = (a * a) % m;
        e >>= 1;
    }
    return r;
}

// Resultant over a field via the Euclidean PRS with the standard
// correction factors.
template <class K>
K resultant(const Poly<K>& a, const Poly<K>& b) {
    if (a.zero() || b.zero()) return K{};
    K one = one_like(a.lc());
    Poly<K> f = a, g = b;
    K res = one;
    bool neg = false;
    while (g.deg() > 0) {
        auto r = f % g;
        if ((f.deg() & 1) && (g.deg() & 1)) neg = !neg;
        int d = r.zero() ? -1 : r.deg();
        // res *= lc(g)^(deg f - deg r)
        K l = g.lc();
        int e = f.deg() - (d < 0 ? 0 : d);
        for (int i = 0; i < e; ++i) res = res * l;
        if (r.zero()) {
            if (g.deg() > 0) return zero_like(one);
            break;
        }
        f = g;
        g = r;
    }
    if (g.zero()) return f.deg() > 0 ? zero_like(one) : res;
    // g is a nonzero constant
    K l = g.lc();
    for (int i = 0; i < f.deg(); ++i) res = res * l;
    return neg ? -res : res;
}

template <class K>
std::string poly_to_string(const Poly<K>& p, const std::string& var) {
    if (p.zero()) return "0";
    std::string s;
    for (int i = p.deg(); i >= 0; --i) {
        if (is_zero(p.coeff(i))) continue;
        if (!s.empty()) s += " + ";
        s += "(" + to_string(p.coeff(i)) + ")";
        if (i > 0) s += "*" + var + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return s;
}

// ---- rational-coefficient specifics ----

// common denominator of all coefficients
inline Int poly_den(const Poly<Rat>& p) {
    Int d(1);
    for (auto& v : p.c) d = lcm(d, den(v));
    return d;
}

// content = gcd of numerators / lcm of denominators, with the sign of lc
inline Rat content(const Poly<Rat>& p) {
    if (p.zero()) return Rat(0);
    Int g(0), d(1);
    for (auto& v : p.c) {
        g = gcd(g, num(v));
        d = lcm(d, den(v));
    }
    Rat c(g, d);
    c.canonicalize();
    if (sgn(p.lc()) < 0) c = -c;
    return c;
}

inline Poly<Rat> primitive_part(const Poly<Rat>& p) {
    if (p.zero()) return p;
    Rat c = content(p);
    return p * inv(c);
}

}  // namespace mdtk
