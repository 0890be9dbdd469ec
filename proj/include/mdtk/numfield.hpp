#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mdtk/bipoly.hpp"
#include "mdtk/poly.hpp"
#include "mdtk/rat.hpp"
#include "mdtk/zfactor.hpp"

namespace mdtk {

// Number field Q(alpha) with monic integer minimal polynomial.
struct NumField {
    Poly<Rat> minpoly;  // monic irreducible over Q
    std::string gen_name = "alpha";

    int degree() const { return minpoly.deg(); }

    static const NumField* get(const Poly<Rat>& minpoly, const std::string& gen = "alpha");
    static const NumField* rationals();

    // cyclotomic-style shortcuts used by the model splitter
    static const NumField* zeta3() {  // x^2 + x + 1
        return get(Poly<Rat>({Rat(1), Rat(1), Rat(1)}), "z3");
    }
    static const NumField* gauss() {  // x^2 + 1
        return get(Poly<Rat>({Rat(1), Rat(0), Rat(1)}), "i");
    }
    static const NumField* sqrt5() {  // x^2 - x - 1 (golden ratio)
        return get(Poly<Rat>({Rat(-1), Rat(-1), Rat(1)}), "w");
    }
};

inline const NumField* NumField::get(const Poly<Rat>& minpoly, const std::string& gen) {
    static std::map<std::pair<std::vector<std::pair<long, std::string>>, std::string>,
                    std::unique_ptr<NumField>>
        cache;
    if (minpoly.deg() < 1 || minpoly.lc() != 1)
        throw std::domain_error("NumField: minimal polynomial must be monic nonconstant");
    std::vector<std::pair<long, std::string>> key;
    for (int i = 0; i <= minpoly.deg(); ++i)
        key.emplace_back(i, minpoly.coeff(i).get_str());
    auto ck = std::make_pair(key, gen);
    auto it = cache.find(ck);
    if (it != cache.end()) return it->second.get();
    if (minpoly.deg() > 1 && !z_is_irreducible(minpoly))
        throw std::domain_error("NumField: minimal polynomial is reducible");
    auto nf = std::make_unique<NumField>();
    nf->minpoly = minpoly;
    nf->gen_name = gen;
    const NumField* raw = nf.get();
    cache[ck] = std::move(nf);
    return raw;
}

inline const NumField* NumField::rationals() {
    return get(Poly<Rat>({Rat(0), Rat(1)}), "q0");  // x, so alpha = 0
}

struct NFElem {
    const NumField* ctx = nullptr;  // null means contextless zero
    std::vector<Rat> c;             // length ctx->degree()

    NFElem() = default;
    NFElem(const NumField* k, const Rat& v)
        : ctx(k), c(static_cast<size_t>(k->degree()), Rat(0)) {
        c[0] = v;
    }
    static NFElem from_coeffs(const NumField* k, std::vector<Rat> cc) {
        NFElem r;
        r.ctx = k;
        cc.resize(static_cast<size_t>(k->degree()), Rat(0));
        r.c = std::move(cc);
        return r;
    }
    static NFElem gen(const NumField* k) {
        std::vector<Rat> cc(static_cast<size_t>(k->degree()), Rat(0));
        if (k->degree() > 1) cc[1] = 1;
        else cc[0] = -k->minpoly.coeff(0);  // the root of a linear minpoly
        return from_coeffs(k, std::move(cc));
    }

    bool zero() const {
        for (auto& v : c)
            if (sgn(v) != 0) return false;
        return true;
    }
    bool rational() const {
        for (size_t i = 1; i < c.size(); ++i)
            if (sgn(c[i]) != 0) return false;
        return true;
    }
    Rat rat_value() const {
        if (!rational()) throw std::domain_error("not a rational element");
        return ctx ? c[0] : Rat(0);
    }
};

inline bool is_zero(const NFElem& a) { return a.ctx == nullptr || a.zero(); }

inline const NumField* common_ctx(const NFElem& a, const NFElem& b) {
    if (a.ctx && b.ctx && a.ctx != b.ctx)
        throw std::domain_error("mixed number-field contexts");
    return a.ctx ? a.ctx : b.ctx;
}

inline bool operator==(const NFElem& a, const NFElem& b) {
    if (is_zero(a) || is_zero(b)) return is_zero(a) && is_zero(b);
    common_ctx(a, b);
    return a.c == b.c;
}
inline bool operator!=(const NFElem& a, const NFElem& b) { return !(a == b); }

inline NFElem operator+(const NFElem& a, const NFElem& b) {
    const NumField* k = common_ctx(a, b);
    if (!k) return NFElem{};
    if (!a.ctx) return b;
    if (!b.ctx) return a;
    NFElem r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
    return r;
}
inline NFElem operator-(const NFElem& a) {
    NFElem r = a;
    for (auto& v : r.c) v = -v;
    return r;
}
inline NFElem operator-(const NFElem& a, const NFElem& b) { return a + (-b); }

inline NFElem operator*(const NFElem& a, const NFElem& b) {
    const NumField* k = common_ctx(a, b);
    if (!k || !a.ctx || !b.ctx) return NFElem{};
    size_t d = static_cast<size_t>(k->degree());
    std::vector<Rat> prod(2 * d - 1, Rat(0));
    for (size_t i = 0; i < d; ++i) {
        if (sgn(a.c[i]) == 0) continue;
        for (size_t j = 0; j < d; ++j) prod[i + j] += a.c[i] * b.c[j];
    }
    for (size_t i = 2 * d - 2; i >= d && i < prod.size(); --i) {
        if (sgn(prod[i]) != 0)
            for (size_t j = 0; j < d; ++j)
                prod[i - d + j] -= prod[i] * k->minpoly.coeff(static_cast<int>(j));
        prod[i] = 0;
        if (i == d) break;
    }
    prod.resize(d);
    return NFElem::from_coeffs(k, std::move(prod));
}

inline NFElem one_like(const NFElem& x) {
    if (!x.ctx) throw std::domain_error("one_like: contextless element");
    return NFElem(x.ctx, Rat(1));
}
inline NFElem zero_like(const NFElem& x) {
    if (!x.ctx) return NFElem{};
    return NFElem(x.ctx, Rat(0));
}
inline NFElem from_int_like(const NFElem& x, long v) {
    if (!x.ctx) throw std::domain_error("from_int_like: contextless element");
    return NFElem(x.ctx, Rat(v));
}

inline NFElem inv(const NFElem& a) {
    if (is_zero(a)) throw std::domain_error("inverse of zero");
    const NumField* k = a.ctx;
    Poly<Rat> v(std::vector<Rat>(a.c));
    auto [g, s, t] = xgcd(v, k->minpoly);
    if (g.deg() != 0) throw std::logic_error("element not invertible (reducible modulus?)");
    Poly<Rat> si = s * inv(g.coeff(0));
    std::vector<Rat> cc;
    for (int i = 0; i <= si.deg(); ++i) cc.push_back(si.coeff(i));
    return NFElem::from_coeffs(k, std::move(cc));
}

inline std::string to_string(const NFElem& a) {
    if (is_zero(a)) return "0";
    std::string s;
    for (int i = a.ctx->degree() - 1; i >= 0; --i) {
        const Rat& v = a.c[static_cast<size_t>(i)];
        if (sgn(v) == 0) continue;
        if (!s.empty()) s += " + ";
        s += "(" + v.get_str() + ")";
        if (i >= 1) s += "*" + a.ctx->gen_name;
        if (i > 1) s += "^" + std::to_string(i);
    }
    return s;
}

inline bool nf_less(const NFElem& a, const NFElem& b) {
    bool za = is_zero(a), zb = is_zero(b);
    if (za || zb) return za && !zb;
    for (size_t i = a.c.size(); i-- > 0;) {
        int cm = cmp(a.c[i], b.c[i]);
        if (cm != 0) return cm < 0;
    }
    return false;
}

// ---------- Trager factorization over a number field ----------

inline Poly<NFElem> nf_lift(const NumField* k, const Poly<Rat>& f) {
    std::vector<NFElem> c;
    for (int i = 0; i <= f.deg(); ++i) c.emplace_back(k, f.coeff(i));
    return Poly<NFElem>(std::move(c));
}

// g with alpha replaced by the variable vy, x as vx
inline BiPoly<Rat> nf_to_bipoly(const Poly<NFElem>& g, const std::string& vx,
                                const std::string& vy) {
    BiPoly<Rat> r(vx, vy);
    for (int i = 0; i <= g.deg(); ++i) {
        NFElem v = g.coeff(i);
        if (is_zero(v)) continue;
        for (size_t j = 0; j < v.c.size(); ++j)
            if (sgn(v.c[j]) != 0) r.c[{i, static_cast<int>(j)}] = v.c[j];
    }
    return r;
}

// norm of g: Res_z(minpoly(z), g(x) with alpha -> z)
inline Poly<Rat> nf_norm(const Poly<NFElem>& g) {
    const NumField* k = g.lc().ctx;
    BiPoly<Rat> G = nf_to_bipoly(g, "x", "z");
    BiPoly<Rat> M("x", "z");
    for (int i = 0; i <= k->minpoly.deg(); ++i)
        if (!is_zero(k->minpoly.coeff(i))) M.c[{0, i}] = k->minpoly.coeff(i);
    if (G.deg_y() == 0) {
        // g has rational coefficients: norm is g^degree
        Poly<Rat> base;
        for (int i = 0; i <= g.deg(); ++i)
            base = base + Poly<Rat>::monomial(g.coeff(i).rat_value(), i);
        return poly_pow(base, k->degree());
    }
    Poly<Rat> r = bipoly_resultant_y(G, M);
    return r;
}

// monic irreducible factors of a monic squarefree g over K (Trager)
inline std::vector<Poly<NFElem>> nf_factor_squarefree(const Poly<NFElem>& g_in) {
    const NumField* k = g_in.lc().ctx;
    Poly<NFElem> g = make_monic(g_in);
    if (g.deg() <= 1) return {g};
    if (k->degree() == 1) {
        // plain rational factorization
        Poly<Rat> f;
        for (int i = 0; i <= g.deg(); ++i)
            f = f + Poly<Rat>::monomial(g.coeff(i).rat_value(), i);
        std::vector<Poly<NFElem>> out;
        for (auto& h : z_factor_squarefree(primitive_part(f)))
            out.push_back(make_monic(nf_lift(k, h)));
        return out;
    }
    NFElem alpha = NFElem::gen(k);
    for (long s = 0;; ++s) {
        // g_s(x) = g(x - s*alpha)
        Poly<NFElem> shift({NFElem(k, Rat(-s)) * alpha, NFElem(k, Rat(1))});
        Poly<NFElem> gs;
        for (int i = g.deg(); i >= 0; --i)
            gs = gs * shift + Poly<NFElem>::constant(g.coeff(i));
        Poly<Rat> N = nf_norm(gs);
        if (N.deg() != g.deg() * k->degree()) continue;  // degree dropped; bad shift
        if (gcd(N, N.derivative()).deg() != 0) continue;
        auto rational_factors = z_factor_squarefree(primitive_part(N));
        std::vector<Poly<NFElem>> out;
        for (auto& h : rational_factors) {
            Poly<NFElem> u = gcd(gs, nf_lift(k, h));
            if (u.deg() < 1) continue;
            // undo the shift: factor of g is u(x + s*alpha)
            Poly<NFElem> unshift({NFElem(k, Rat(s)) * alpha, NFElem(k, Rat(1))});
            Poly<NFElem> v;
            for (int i = u.deg(); i >= 0; --i)
                v = v * unshift + Poly<NFElem>::constant(u.coeff(i));
            out.push_back(make_monic(v));
        }
        return out;
    }
}

// full factorization over K: (unit, [(monic irreducible, multiplicity)])
inline std::pair<NFElem, std::vector<std::pair<Poly<NFElem>, int>>> nf_factor(
    const Poly<NFElem>& f) {
    std::vector<std::pair<Poly<NFElem>, int>> out;
    if (f.deg() < 0) return {NFElem{}, out};
    NFElem unit = f.lc();
    if (f.deg() == 0) return {unit, out};
    Poly<NFElem> g = make_monic(f);
    Poly<NFElem> sf = g / gcd(g, g.derivative());
    auto irr = nf_factor_squarefree(sf);
    for (auto& u : irr) {
        int m = 0;
        Poly<NFElem> cur = g;
        while (true) {
            auto q = exact_div(cur, u);
            if (!q) break;
            cur = *q;
            ++m;
        }
        out.emplace_back(u, m);
    }
    return {unit, out};
}

// roots of f lying in K, each listed once, sorted
inline std::vector<NFElem> nf_roots(const Poly<NFElem>& f) {
    std::vector<NFElem> out;
    if (f.deg() < 1) return out;
    Poly<NFElem> g = make_monic(f);
    Poly<NFElem> sf = g / gcd(g, g.derivative());
    for (auto& u : nf_factor_squarefree(sf))
        if (u.deg() == 1) out.push_back(-u.coeff(0));
    std::sort(out.begin(), out.end(), nf_less);
    return out;
}

}  // namespace mdtk
