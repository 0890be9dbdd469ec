#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdtk/bipoly.hpp"
#include "mdtk/poly.hpp"
#include "mdtk/rat.hpp"

namespace mdtk {

// Finite field F_{p^d} as F_p[a]/(f).  The modulus for each (p, d) is the
// lexicographically least monic irreducible, so contexts built twice agree.
// Odd p only.
struct FqCtx;
struct Fq;

struct FqCtx {
    Int p;
    int d = 1;
    std::vector<Int> f;  // monic modulus coefficients, size d+1; f[d] = 1

    static const FqCtx* get(const Int& p, int d = 1);

    bool prime_field() const { return d == 1; }
    Int order() const { return ipow(p, static_cast<unsigned long>(d)); }
};

struct Fq {
    const FqCtx* ctx = nullptr;  // null means contextless zero
    std::vector<Int> c;          // size ctx->d, entries in [0, p)

    Fq() = default;
    Fq(const FqCtx* k, long v) : ctx(k), c(static_cast<size_t>(k->d), Int(0)) {
        Int r = Int(v) % k->p;
        if (sgn(r) < 0) r += k->p;
        c[0] = r;
    }
    Fq(const FqCtx* k, const Int& v) : ctx(k), c(static_cast<size_t>(k->d), Int(0)) {
        Int r = v % k->p;
        if (sgn(r) < 0) r += k->p;
        c[0] = r;
    }
    static Fq from_coeffs(const FqCtx* k, std::vector<Int> cc) {
        Fq r;
        r.ctx = k;
        cc.resize(static_cast<size_t>(k->d), Int(0));
        for (auto& v : cc) {
            v %= k->p;
            if (sgn(v) < 0) v += k->p;
        }
        r.c = std::move(cc);
        return r;
    }
    static Fq gen(const FqCtx* k) {  // the residue of a (requires d > 1)
        std::vector<Int> cc(static_cast<size_t>(k->d), Int(0));
        if (k->d > 1) cc[1] = 1;
        else throw std::domain_error("generator of prime field modulus");
        return from_coeffs(k, cc);
    }

    bool zero() const {
        for (auto& v : c)
            if (sgn(v) != 0) return false;
        return true;
    }
    // value as an integer, for prime-field elements
    const Int& lift() const {
        if (!ctx || !ctx->prime_field())
            throw std::domain_error("lift: not a prime-field element");
        return c[0];
    }
};

inline bool is_zero(const Fq& a) { return a.ctx == nullptr || a.zero(); }

inline const FqCtx* common_ctx(const Fq& a, const Fq& b) {
    if (a.ctx && b.ctx && a.ctx != b.ctx)
        throw std::domain_error("mixed finite-field contexts");
    return a.ctx ? a.ctx : b.ctx;
}

inline bool operator==(const Fq& a, const Fq& b) {
    if (is_zero(a) || is_zero(b)) return is_zero(a) && is_zero(b);
    common_ctx(a, b);
    return a.c == b.c;
}
inline bool operator!=(const Fq& a, const Fq& b) { return !(a == b); }

inline Fq operator+(const Fq& a, const Fq& b) {
    const FqCtx* k = common_ctx(a, b);
    if (!k) return Fq{};
    if (!a.ctx) return b;
    if (!b.ctx) return a;
    Fq r = a;
    for (size_t i = 0; i < r.c.size(); ++i) {
        r.c[i] += b.c[i];
        if (r.c[i] >= k->p) r.c[i] -= k->p;
    }
    return r;
}
inline Fq operator-(const Fq& a) {
    if (!a.ctx) return a;
    Fq r = a;
    for (auto& v : r.c)
        if (sgn(v) != 0) v = a.ctx->p - v;
    return r;
}
inline Fq operator-(const Fq& a, const Fq& b) { return a + (-b); }

inline Fq operator*(const Fq& a, const Fq& b) {
    const FqCtx* k = common_ctx(a, b);
    if (!k || !a.ctx || !b.ctx) return Fq{};
    size_t d = static_cast<size_t>(k->d);
    if (d == 1) {
        Fq r;
        r.ctx = k;
        r.c.assign(1, (a.c[0] * b.c[0]) % k->p);
        return r;
    }
    std::vector<Int> prod(2 * d - 1, Int(0));
    for (size_t i = 0; i < d; ++i) {
        if (sgn(a.c[i]) == 0) continue;
        for (size_t j = 0; j < d; ++j) prod[i + j] += a.c[i] * b.c[j];
    }
    // reduce mod f (monic) then mod p
    for (size_t i = 2 * d - 2; i >= d; --i) {
        Int q = prod[i] % k->p;
        if (sgn(q) == 0) { prod[i] = 0; if (i == d) break; continue; }
        for (size_t j = 0; j < d; ++j) prod[i - d + j] -= q * k->f[j];
        prod[i] = 0;
        if (i == d) break;
    }
    Fq r;
    r.ctx = k;
    r.c.resize(d);
    for (size_t i = 0; i < d; ++i) {
        r.c[i] = prod[i] % k->p;
        if (sgn(r.c[i]) < 0) r.c[i] += k->p;
    }
    return r;
}

inline Fq one_like(const Fq& x) {
    if (!x.ctx) throw std::domain_error("one_like: contextless element");
    return Fq(x.ctx, 1);
}
inline Fq zero_like(const Fq& x) {
    if (!x.ctx) return Fq{};
    return Fq(x.ctx, 0);
}
inline Fq from_int_like(const Fq& x, long v) {
    if (!x.ctx) throw std::domain_error("from_int_like: contextless element");
    return Fq(x.ctx, v);
}

Fq inv(const Fq& a);

inline Fq fq_pow(const Fq& a, Int e) {
    if (!a.ctx) {
        if (sgn(e) == 0) throw std::domain_error("0^0 without context");
        return a;
    }
    if (sgn(e) < 0) return fq_pow(inv(a), -e);
    Fq r = one_like(a), b = a;
    while (sgn(e) > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

inline std::string to_string(const Fq& a) {
    if (is_zero(a)) return "0";
    if (a.ctx->prime_field()) return a.c[0].get_str();
    std::string s;
    for (int i = a.ctx->d - 1; i >= 0; --i) {
        if (sgn(a.c[static_cast<size_t>(i)]) == 0) continue;
        if (!s.empty()) s += " + ";
        s += a.c[static_cast<size_t>(i)].get_str();
        if (i >= 1) s += "*a";
        if (i > 1) s += "^" + std::to_string(i);
    }
    return s;
}

// total order for use as map keys and for lexicographic minimization
inline bool fq_less(const Fq& a, const Fq& b) {
    bool za = is_zero(a), zb = is_zero(b);
    if (za || zb) return za && !zb;
    for (size_t i = a.c.size(); i-- > 0;) {
        int cm = cmp(a.c[i], b.c[i]);
        if (cm != 0) return cm < 0;
    }
    return false;
}

namespace detail {

// polynomial arithmetic on raw coefficient vectors mod p (monic-divisor
// cases only where needed); used to bootstrap FqCtx before Fq exists
using ZVec = std::vector<Int>;

inline void zv_trim(ZVec& a) {
    while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}
inline ZVec zv_mod(ZVec a, const ZVec& m, const Int& p) {
    // m monic
    zv_trim(a);
    while (a.size() >= m.size()) {
        Int q = a.back() % p;
        size_t off = a.size() - m.size();
        if (sgn(q) != 0)
            for (size_t i = 0; i < m.size(); ++i) a[off + i] -= q * m[i];
        a.pop_back();
        for (auto& v : a) v %= p;
        zv_trim(a);
    }
    for (auto& v : a) {
        v %= p;
        if (sgn(v) < 0) v += p;
    }
    zv_trim(a);
    return a;
}
inline ZVec zv_mul(const ZVec& a, const ZVec& b, const Int& p) {
    if (a.empty() || b.empty()) return {};
    ZVec r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    for (auto& v : r) {
        v %= p;
        if (sgn(v) < 0) v += p;
    }
    zv_trim(r);
    return r;
}
inline ZVec zv_powmod(ZVec a, Int e, const ZVec& m, const Int& p) {
    ZVec r{Int(1)};
    a = zv_mod(std::move(a), m, p);
    while (sgn(e) > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = zv_mod(zv_mul(r, a, p), m, p);
        a = zv_mod(zv_mul(a, a, p), m, p);
        e >>= 1;
    }
    return r;
}
inline ZVec zv_gcd(ZVec a, ZVec b, const Int& p) {
    zv_trim(a);
    zv_trim(b);
    while (!b.empty()) {
        // make b monic
        Int li;
        mpz_invert(li.get_mpz_t(), b.back().get_mpz_t(), p.get_mpz_t());
        ZVec bm = b;
        for (auto& v : bm) {
            v = (v * li) % p;
            if (sgn(v) < 0) v += p;
        }
        ZVec r = zv_mod(a, bm, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Int li;
        mpz_invert(li.get_mpz_t(), a.back().get_mpz_t(), p.get_mpz_t());
        for (auto& v : a) {
            v = (v * li) % p;
            if (sgn(v) < 0) v += p;
        }
    }
    return a;
}

inline bool zv_irreducible(const ZVec& f, const Int& p) {
    // f monic of degree d >= 1: x^(p^(d/r)) - x coprime to f for prime r | d,
    // and x^(p^d) == x (mod f)
    int d = static_cast<int>(f.size()) - 1;
    if (d == 1) return true;
    std::vector<int> prime_divs;
    int dd = d;
    for (int r = 2; r * r <= dd; ++r)
        while (dd % r == 0) {
            if (prime_divs.empty() || prime_divs.back() != r) prime_divs.push_back(r);
            dd /= r;
        }
    if (dd > 1) prime_divs.push_back(dd);
    ZVec x{Int(0), Int(1)};
    for (int r : prime_divs) {
        ZVec xp = zv_powmod(x, ipow(p, static_cast<unsigned long>(d / r)), f, p);
        // xp - x
        ZVec diff = xp;
        if (diff.size() < 2) diff.resize(2, Int(0));
        diff[1] -= 1;
        for (auto& v : diff) {
            v %= p;
            if (sgn(v) < 0) v += p;
        }
        zv_trim(diff);
        ZVec g = zv_gcd(f, diff, p);
        if (g.size() != 1) return false;
    }
    ZVec xq = zv_powmod(x, ipow(p, static_cast<unsigned long>(d)), f, p);
    ZVec diff = xq;
    if (diff.size() < 2) diff.resize(2, Int(0));
    diff[1] -= 1;
    for (auto& v : diff) {
        v %= p;
        if (sgn(v) < 0) v += p;
    }
    zv_trim(diff);
    return diff.empty();
}

}  // namespace detail

// context registry: one canonical FqCtx per (p, d)
inline const FqCtx* FqCtx::get(const Int& p, int d) {
    static std::map<std::pair<Int, int>, std::unique_ptr<FqCtx>> cache;
    if (p < 3 || mpz_probab_prime_p(p.get_mpz_t(), 40) == 0)
        throw std::domain_error("FqCtx: characteristic must be an odd prime");
    if (d < 1) throw std::domain_error("FqCtx: degree must be positive");
    auto key = std::make_pair(p, d);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second.get();

    auto ctx = std::make_unique<FqCtx>();
    ctx->p = p;
    ctx->d = d;
    ctx->f.assign(static_cast<size_t>(d) + 1, Int(0));
    ctx->f[static_cast<size_t>(d)] = 1;
    if (d > 1) {
        // lexicographically least monic irreducible: count through the
        // lower coefficients like digits, most significant last
        std::vector<Int> low(static_cast<size_t>(d), Int(0));
        bool found = false;
        while (!found) {
            for (size_t i = 0; i < low.size(); ++i) ctx->f[i] = low[i];
            if (detail::zv_irreducible(ctx->f, p)) {
                found = true;
                break;
            }
            size_t i = 0;
            while (i < low.size()) {
                low[i] += 1;
                if (low[i] < p) break;
                low[i] = 0;
                ++i;
            }
            if (i == low.size())
                throw std::logic_error("no irreducible polynomial found");
        }
    }
    const FqCtx* raw = ctx.get();
    cache[key] = std::move(ctx);
    return raw;
}

// context with a caller-supplied monic irreducible modulus; contexts built
// from equal moduli are pointer-identical
inline const FqCtx* fqctx_with_modulus(const Int& p, std::vector<Int> f) {
    static std::map<std::pair<Int, std::vector<Int>>, std::unique_ptr<FqCtx>> cache;
    if (f.size() < 2) throw std::domain_error("fqctx_with_modulus: degree must be positive");
    for (auto& v : f) {
        v %= p;
        if (sgn(v) < 0) v += p;
    }
    if (f.back() != 1) throw std::domain_error("fqctx_with_modulus: modulus must be monic");
    if (f.size() == 2)
        throw std::domain_error("fqctx_with_modulus: use the prime field for linear moduli");
    auto key = std::make_pair(p, f);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second.get();
    auto ctx = std::make_unique<FqCtx>();
    ctx->p = p;
    ctx->d = static_cast<int>(f.size()) - 1;
    ctx->f = f;
    const FqCtx* raw = ctx.get();
    cache[key] = std::move(ctx);
    return raw;
}

inline Fq inv(const Fq& a) {
    if (is_zero(a)) throw std::domain_error("inverse of zero");
    const FqCtx* k = a.ctx;
    if (k->prime_field()) {
        Int r;
        if (mpz_invert(r.get_mpz_t(), a.c[0].get_mpz_t(), k->p.get_mpz_t()) == 0)
            throw std::domain_error("not invertible");
        Fq out;
        out.ctx = k;
        out.c.assign(1, r);
        return out;
    }
    // extended Euclid in F_p[x] against the modulus
    using detail::ZVec;
    ZVec r0 = k->f, r1 = a.c;
    detail::zv_trim(r1);
    ZVec s0{}, s1{Int(1)};
    while (!r1.empty()) {
        // monic division r0 = q*r1 + r
        Int li;
        mpz_invert(li.get_mpz_t(), r1.back().get_mpz_t(), k->p.get_mpz_t());
        ZVec r = r0, q(r0.size() > r1.size() - 1 ? r0.size() - r1.size() + 1 : 1,
                       Int(0));
        detail::zv_trim(r);
        while (r.size() >= r1.size()) {
            Int coef = (r.back() * li) % k->p;
            size_t off = r.size() - r1.size();
            q[off] = coef;
            for (size_t i = 0; i < r1.size(); ++i) r[off + i] -= coef * r1[i];
            for (auto& v : r) v %= k->p;
            detail::zv_trim(r);
        }
        detail::zv_trim(q);
        // s = s0 - q*s1
        ZVec qs = detail::zv_mul(q, s1, k->p);
        ZVec s = s0;
        if (s.size() < qs.size()) s.resize(qs.size(), Int(0));
        for (size_t i = 0; i < qs.size(); ++i) {
            s[i] -= qs[i];
            s[i] %= k->p;
            if (sgn(s[i]) < 0) s[i] += k->p;
        }
        detail::zv_trim(s);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r0.size() != 1) throw std::domain_error("not invertible");
    Int li;
    mpz_invert(li.get_mpz_t(), r0[0].get_mpz_t(), k->p.get_mpz_t());
    for (auto& v : s0) {
        v = (v * li) % k->p;
        if (sgn(v) < 0) v += k->p;
    }
    return Fq::from_coeffs(k, std::move(s0));
}

// ---------- factorization over Fq ----------

// squarefree part handling characteristic p (p-th power blocks recurse)
std::vector<std::pair<Poly<Fq>, int>> fq_squarefree_decomposition(const Poly<Fq>& f);

inline Poly<Fq> fq_pth_root(const Poly<Fq>& f) {
    // f = g(x^p) -> g, taking p-th roots of coefficients
    const FqCtx* k = f.lc().ctx;
    Int q = k->order();
    Int e = q;  // a^(q/p) is the p-th root since a^q = a
    mpz_divexact(e.get_mpz_t(), q.get_mpz_t(), k->p.get_mpz_t());
    std::vector<Fq> cc;
    long pl = k->p.get_si();
    for (int i = 0; i <= f.deg(); i += static_cast<int>(pl))
        cc.push_back(fq_pow(f.coeff(i), e));
    return Poly<Fq>(std::move(cc));
}

inline std::vector<std::pair<Poly<Fq>, int>> fq_squarefree_decomposition(
    const Poly<Fq>& f_in) {
    std::vector<std::pair<Poly<Fq>, int>> out;
    Poly<Fq> f = make_monic(f_in);
    if (f.deg() <= 0) return out;
    auto fp = f.derivative();
    if (fp.zero()) {
        // perfect p-th power
        auto sub = fq_squarefree_decomposition(fq_pth_root(f));
        long pl = f.lc().ctx->p.get_si();
        for (auto& [g, m] : sub) out.emplace_back(g, m * static_cast<int>(pl));
        return out;
    }
    Poly<Fq> c = gcd(f, fp);
    Poly<Fq> w = f / c;
    int i = 1;
    while (w.deg() > 0) {
        Poly<Fq> y = gcd(w, c);
        Poly<Fq> fac = w / y;
        if (fac.deg() > 0) out.emplace_back(make_monic(fac), i);
        w = y;
        c = c / y;
        ++i;
    }
    if (c.deg() > 0) {
        auto sub = fq_squarefree_decomposition(fq_pth_root(c));
        long pl = f.lc().ctx->p.get_si();
        for (auto& [g, m] : sub) out.emplace_back(g, m * static_cast<int>(pl));
    }
    return out;
}

// distinct-degree decomposition of a monic squarefree polynomial:
// list of (product of irreducibles of degree d, d)
inline std::vector<std::pair<Poly<Fq>, int>> fq_distinct_degree(const Poly<Fq>& f) {
    std::vector<std::pair<Poly<Fq>, int>> out;
    const FqCtx* k = f.lc().ctx;
    Int q = k->order();
    Poly<Fq> x = Poly<Fq>::monomial(one_like(f.lc()), 1);
    Poly<Fq> h = x;  // x^(q^d) mod f, iteratively
    Poly<Fq> rest = f;
    int d = 0;
    while (rest.deg() > 0) {
        ++d;
        if (2 * d > rest.deg()) {
            out.emplace_back(rest, rest.deg());
            break;
        }
        h = poly_powmod(h, q, rest);
        Poly<Fq> g = gcd(rest, h - x);
        if (g.deg() > 0) {
            out.emplace_back(g, d);
            rest = rest / g;
            h = h % rest;
        }
    }
    return out;
}

// equal-degree splitting (Cantor--Zassenhaus, odd q), deterministic seed
inline void fq_equal_degree(const Poly<Fq>& f, int d, std::mt19937_64& rng,
                            std::vector<Poly<Fq>>& out) {
    if (f.deg() == d) {
        out.push_back(f);
        return;
    }
    const FqCtx* k = f.lc().ctx;
    Int q = k->order();
    Int e = (ipow(q, static_cast<unsigned long>(d)) - 1) / 2;
    while (true) {
        // random polynomial of degree < deg f
        std::vector<Fq> cc;
        for (int i = 0; i < f.deg(); ++i) {
            std::vector<Int> comps;
            for (int j = 0; j < k->d; ++j) {
                unsigned long r = rng() % k->p.get_ui();
                comps.push_back(Int(static_cast<long>(r)));
            }
            cc.push_back(Fq::from_coeffs(k, std::move(comps)));
        }
        Poly<Fq> r(std::move(cc));
        if (r.deg() < 1) continue;
        Poly<Fq> g = gcd(f, r);
        if (g.deg() > 0 && g.deg() < f.deg()) {
            fq_equal_degree(g, d, rng, out);
            fq_equal_degree(f / g, d, rng, out);
            return;
        }
        Poly<Fq> h = poly_powmod(r, e, f);
        h = h - Poly<Fq>::constant(one_like(f.lc()));
        g = gcd(f, h);
        if (g.deg() > 0 && g.deg() < f.deg()) {
            fq_equal_degree(g, d, rng, out);
            fq_equal_degree(f / g, d, rng, out);
            return;
        }
    }
}

// full factorization: list of (monic irreducible, multiplicity)
inline std::vector<std::pair<Poly<Fq>, int>> fq_factor(const Poly<Fq>& f) {
    std::vector<std::pair<Poly<Fq>, int>> out;
    if (f.deg() <= 0) return out;
    std::mt19937_64 rng(0x5eed5eed5eedULL);
    for (auto& [sf, mult] : fq_squarefree_decomposition(f)) {
        for (auto& [prod, d] : fq_distinct_degree(sf)) {
            std::vector<Poly<Fq>> irr;
            fq_equal_degree(prod, d, rng, irr);
            for (auto& g : irr) out.emplace_back(make_monic(g), mult);
        }
    }
    // deterministic order: by degree, then lexicographic coefficients
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.deg() != b.first.deg()) return a.first.deg() < b.first.deg();
        for (int i = a.first.deg(); i >= 0; --i) {
            Fq ca = a.first.coeff(i), cb = b.first.coeff(i);
            if (ca != cb) return fq_less(ca, cb);
        }
        return a.second < b.second;
    });
    return out;
}

// roots in the coefficient field, each once (ignores multiplicity),
// sorted lexicographically
inline std::vector<Fq> fq_roots(const Poly<Fq>& f) {
    std::vector<Fq> out;
    for (auto& [g, m] : fq_factor(f))
        if (g.deg() == 1) out.push_back(-g.coeff(0));
    std::sort(out.begin(), out.end(), fq_less);
    return out;
}

// embedding F_{p^e} -> F_{p^d} for e | d: sends the source generator to the
// lexicographically least root of the source modulus in the target field
struct FqEmbedding {
    const FqCtx* src;
    const FqCtx* dst;
    Fq gen_image;

    Fq map(const Fq& a) const {
        if (is_zero(a)) return Fq(dst, 0);
        if (a.ctx != src) throw std::domain_error("embedding: wrong source field");
        Fq acc(dst, 0);
        for (size_t i = a.c.size(); i-- > 0;)
            acc = acc * gen_image + Fq(dst, a.c[i]);
        return acc;
    }
};

// square root in a tiny field by enumeration (the fields in play have at
// most a few dozen elements)
inline std::optional<Fq> fq_sqrt(const Fq& a) {
    if (is_zero(a)) return a;
    const FqCtx* k = a.ctx;
    Int n = k->order();
    if (n > 100000) throw std::domain_error("fq_sqrt: field too large for enumeration");
    long nn = static_cast<long>(n.get_ui());
    for (long v = 0; v < nn; ++v) {
        // digits of v in base p as coefficients
        std::vector<Int> cc;
        long w = v;
        for (int i = 0; i < k->d; ++i) {
            cc.push_back(Int(w % k->p.get_ui()));
            w /= static_cast<long>(k->p.get_ui());
        }
        Fq r = Fq::from_coeffs(k, std::move(cc));
        if (is_zero(r * r - a)) return r;
    }
    return std::nullopt;
}

// exact univariate square root over Fq (odd characteristic)
inline std::optional<Poly<Fq>> poly_sqrt(const Poly<Fq>& h) {
    if (h.zero()) return Poly<Fq>();
    if (h.deg() % 2 != 0) return std::nullopt;
    int d = h.deg() / 2;
    auto slc = fq_sqrt(h.lc());
    if (!slc) return std::nullopt;
    Poly<Fq> f = Poly<Fq>::monomial(*slc, d);
    Fq two_lc = from_int_like(*slc, 2) * *slc;
    for (int k = d - 1; k >= 0; --k) {
        Fq known = zero_like(*slc);
        for (int i = k + 1; i <= d; ++i) {
            int j = d + k - i;
            if (j > d || j < 0 || j <= k) continue;
            known = known + f.coeff(i) * f.coeff(j);
        }
        Fq v = (h.coeff(d + k) - known) * inv(two_lc);
        if (!is_zero(v)) {
            f.c.resize(std::max(f.c.size(), static_cast<size_t>(d) + 1), zero_like(*slc));
            f.c[static_cast<size_t>(k)] = v;
        }
    }
    if (!(f * f == h)) return std::nullopt;
    return f;
}

// exact bivariate square root over Fq, up to a constant factor
inline std::optional<BiPoly<Fq>> exact_sqrt(const BiPoly<Fq>& H) {
    if (H.zero()) throw std::domain_error("exact_sqrt of zero");
    BiPoly<Fq> h = H * inv(H.lead().second);
    if (h.deg_y() == 0 && h.deg_x() == 0)
        return BiPoly<Fq>::constant(one_like(H.lead().second), H.vx, H.vy);
    bool swap = (h.deg_y() == 0);
    if (swap) h = h.swapped_vars();
    auto rows = h.by_y();
    int dy = static_cast<int>(rows.size()) - 1;
    if (dy % 2 != 0) return std::nullopt;
    int d = dy / 2;
    auto ltop = poly_sqrt(rows.back());
    if (!ltop) return std::nullopt;
    std::vector<Poly<Fq>> f(static_cast<size_t>(d) + 1);
    f[static_cast<size_t>(d)] = *ltop;
    Poly<Fq> two_lead = *ltop * from_int_like(ltop->lc(), 2);
    for (int k = d - 1; k >= 0; --k) {
        Poly<Fq> known;
        for (int i = k + 1; i <= d; ++i) {
            int j = d + k - i;
            if (j > d || j < 0 || j <= k) continue;
            known = known + f[static_cast<size_t>(i)] * f[static_cast<size_t>(j)];
        }
        Poly<Fq> target = rows[static_cast<size_t>(d + k)] - known;
        auto q = exact_div(target, two_lead);
        if (!q) return std::nullopt;
        f[static_cast<size_t>(k)] = *q;
    }
    BiPoly<Fq> F = BiPoly<Fq>::from_by_y(f, h.vx, h.vy);
    if (!(F * F == h)) return std::nullopt;
    if (swap) F = F.swapped_vars();
    F.vx = H.vx;
    F.vy = H.vy;
    return F * inv(F.lead().second);
}

// Kronecker-substitution product for prime-field bivariate polynomials:
// pack residues into one big integer per operand, one GMP multiply, then
// reduce each slot mod p.  Extension fields fall back to the naive product.
inline BiPoly<Fq> bipoly_mul(const BiPoly<Fq>& a, const BiPoly<Fq>& b) {
    if (a.zero() || b.zero()) return BiPoly<Fq>(a.vx, a.vy);
    const FqCtx* k = a.c.begin()->second.ctx;
    if (!k->prime_field() || std::min(a.c.size(), b.c.size()) < 24)
        return bipoly_mul_naive(a, b);

    int axd = a.deg_x(), ayd = a.deg_y(), bxd = b.deg_x(), byd = b.deg_y();
    size_t stride = static_cast<size_t>(ayd + byd + 1);
    size_t nslots = static_cast<size_t>(axd + bxd + 1) * stride;

    size_t pbits = mpz_sizeinbase(k->p.get_mpz_t(), 2);
    size_t cross = std::min(a.c.size(), b.c.size());
    size_t nb = 1;
    while ((size_t(1) << nb) < cross) ++nb;
    size_t slot_bits = ((2 * pbits + nb + 2 + 7) / 8) * 8;
    size_t slot_bytes = slot_bits / 8;

    detail::KroneckerPacker pa(nslots, slot_bytes), pb(nslots, slot_bytes);
    for (auto& [e, v] : a.c)
        pa.put(static_cast<size_t>(e.first) * stride + static_cast<size_t>(e.second),
               v.c[0]);
    for (auto& [e, v] : b.c)
        pb.put(static_cast<size_t>(e.first) * stride + static_cast<size_t>(e.second),
               v.c[0]);
    Int prod = pa.to_int() * pb.to_int();

    BiPoly<Fq> r(a.vx, a.vy);
    for (size_t s = 0; s < nslots; ++s) {
        Int v = detail::slot_value(prod, s, slot_bits) % k->p;
        if (sgn(v) == 0) continue;
        r.c[{static_cast<int>(s / stride), static_cast<int>(s % stride)}] =
            Fq(k, v);
    }
    return r;
}

inline FqEmbedding fq_embedding(const FqCtx* src, const FqCtx* dst) {
    if (src->p != dst->p || dst->d % src->d != 0)
        throw std::domain_error("no embedding between these fields");
    if (src->d == 1) return {src, dst, Fq(dst, 1)};
    std::vector<Fq> cc;
    for (auto& v : src->f) cc.push_back(Fq(dst, v));
    Poly<Fq> f(std::move(cc));
    auto roots = fq_roots(f);
    if (roots.empty()) throw std::logic_error("modulus has no root in target field");
    return {src, dst, roots.front()};
}

}  // namespace mdtk
