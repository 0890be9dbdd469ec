#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mdtk/bifactor.hpp"
#include "mdtk/branch.hpp"
#include "mdtk/lser.hpp"
#include "mdtk/tower.hpp"

namespace mdtk {

struct BadCurve : std::runtime_error {
    explicit BadCurve(const std::string& m) : std::runtime_error(m) {}
};

// A closed point of the smooth model: one branch representative with Laurent
// expansions of the coordinate functions; the place has `degree` conjugate
// branches in total.
struct Place {
    int degree = 1;            // residue degree over the base field
    const FqCtx* k = nullptr;  // coefficient field of the series
    LSer X, Y;                 // expansions of x and y at the place
    int chart = 0;             // 0 affine; 1 y-pole; 2 x-pole; 3 both
    int e = 1;                 // ramification index of the branch
    Poly<Fq> xmin;             // minimal polynomial over F_q of the x-center;
                               // zero polynomial means x = infinity
    bool is_special = false;   // lies over a bad x-value or over x = infinity
};

// Function field of an absolutely irreducible plane curve over F_q, with
// places resolved by branch expansion (Newton polygon at singular centers).
// Residue fields are built as explicit-modulus contexts via tower_ext, so no
// root-finding over large fields is ever performed.
struct PlaneCurveFq {
    const FqCtx* k0 = nullptr;  // base field F_q, q = p^f
    BiPoly<Fq> G{"x", "y"};
    BiPoly<Fq> Gx{"x", "y"}, Gy{"x", "y"};
    BiPoly<Fq> G1{"x", "y"}, G2{"x", "y"}, G3{"x", "y"};  // chart models
    int prec = 40;  // t-adic working precision for place expansions

    std::vector<Place> places;    // global registry
    std::vector<size_t> special;  // indices of places over bad x / infinity
    Poly<Fq> bad_x;               // squarefree poly cutting out the bad x-values
    std::map<int, std::vector<size_t>> generic_by_degree;  // enumerated degrees
    std::map<const FqCtx*, FqEmbedding> base_emb;          // k0 -> ctx
    int genus_ = -1;
    std::mt19937_64 rng{0x706c616365};

    // ---- small helpers ----
    Int q() const { return k0->order(); }
    int base_degree(const FqCtx* k) const { return k->d / k0->d; }

    const FqCtx* ext(int d) {
        const FqCtx* k = d == 1 ? k0 : FqCtx::get(k0->p, k0->d * d);
        note_ctx(k);
        return k;
    }
    void note_ctx(const FqCtx* k) {
        if (base_emb.count(k)) return;
        if (k == k0) base_emb.emplace(k, fq_identity(k0));
        else if (k0->prime_field()) base_emb.emplace(k, FqEmbedding{k0, k, Fq(k, 0)});
        else base_emb.emplace(k, fq_embedding(k0, k));
    }
    void note_tower(const TowerExt& t, const FqCtx* from) {
        if (!base_emb.count(t.ctx))
            base_emb.emplace(t.ctx, fq_compose(base_emb.at(from), t.emb));
    }
    const FqEmbedding& from_base(const FqCtx* k) const { return base_emb.at(k); }

    Fq frob(const Fq& a) const { return fq_pow(a, q()); }
    Fq frob_n(Fq a, int n) const {
        for (int i = 0; i < n; ++i) a = frob(a);
        return a;
    }
    // express a Frobenius-fixed element of an extension in the base field
    Fq descend(const Fq& a) const {
        if (is_zero(a)) return Fq(k0, 0);
        long qq = static_cast<long>(q().get_ui());
        const FqEmbedding& em = from_base(a.ctx);
        for (long v = 0; v < qq; ++v) {
            Fq b = fq_element(k0, v);
            if (em.map(b) == a) return b;
        }
        throw std::logic_error("descend: element not in the base field");
    }
    static Fq fq_element(const FqCtx* k, long idx) {
        std::vector<Int> cc;
        long w = idx;
        long pl = static_cast<long>(k->p.get_ui());
        for (int i = 0; i < k->d; ++i) {
            cc.push_back(Int(w % pl));
            w /= pl;
        }
        return Fq::from_coeffs(k, std::move(cc));
    }

    BiPoly<Fq> lift_bipoly(const BiPoly<Fq>& F, const FqCtx* dst) const {
        if (dst == k0) return F;
        BiPoly<Fq> r(F.vx, F.vy);
        const FqEmbedding& em = from_base(dst);
        for (auto& [e, v] : F.c) r.c[e] = em.map(v);
        return r;
    }
    Poly<Fq> lift_poly(const Poly<Fq>& f, const FqCtx* dst) const {
        if (dst == k0) return f;
        Poly<Fq> r;
        const FqEmbedding& em = from_base(dst);
        r.c.reserve(f.c.size());
        for (auto& v : f.c) r.c.push_back(is_zero(v) ? Fq(dst, 0) : em.map(v));
        r.trim();
        return r;
    }

    // ---- construction ----
    explicit PlaneCurveFq(BiPoly<Fq> g, int precision = 40)
        : G(std::move(g)), prec(precision) {
        if (G.zero()) throw BadCurve("zero polynomial");
        k0 = G.c.begin()->second.ctx;
        note_ctx(k0);
        if (G.deg_y() == 0 || G.deg_x() == 0)
            throw BadCurve("curve must involve both variables");
        Gx = d_first(G);
        Gy = ff_detail::bipoly_dy(G);
        if (Gy.zero()) throw BadCurve("dG/dy vanishes; swap the variables of the model");
        G1 = reverse_y(G);
        G2 = reverse_x(G);
        G3 = reverse_y(G2);
        certify_irreducible_base();
        build_special();
        certify_absolutely_irreducible();
    }

    static BiPoly<Fq> d_first(const BiPoly<Fq>& F) {
        BiPoly<Fq> r(F.vx, F.vy);
        for (auto& [e, v] : F.c)
            if (e.first > 0) {
                Fq c = v * from_int_like(v, e.first);
                if (!is_zero(c)) r.add_term(e.first - 1, e.second, c);
            }
        return r;
    }
    static BiPoly<Fq> reverse_y(const BiPoly<Fq>& F) {
        int dy = F.deg_y();
        BiPoly<Fq> r(F.vx, F.vy);
        for (auto& [e, v] : F.c) r.c[{e.first, dy - e.second}] = v;
        return r;
    }
    static BiPoly<Fq> reverse_x(const BiPoly<Fq>& F) {
        int dx = F.deg_x();
        BiPoly<Fq> r(F.vx, F.vy);
        for (auto& [e, v] : F.c) r.c[{dx - e.first, e.second}] = v;
        return r;
    }

    // f(x0 + t) by Horner
    static Poly<Fq> poly_shift_arg(const Poly<Fq>& f, const Fq& x0) {
        Poly<Fq> r;
        for (int i = f.deg(); i >= 0; --i) {
            Poly<Fq> rt;
            rt.c.assign(r.c.size() + 1, zero_like(x0));
            for (size_t j = 0; j < r.c.size(); ++j) {
                rt.c[j + 1] = rt.c[j + 1] + r.c[j];
                rt.c[j] = rt.c[j] + r.c[j] * x0;
            }
            Fq fi = f.coeff(i);
            if (!is_zero(fi)) rt.c[0] = rt.c[0] + fi;
            rt.trim();
            r = std::move(rt);
        }
        return r;
    }

    // germ of a chart model at (x0, y0); both centers in the same context
    BiPoly<Fq> shifted_germ(const BiPoly<Fq>& C, const Fq& x0, const Fq& y0) const {
        const FqCtx* kc = x0.ctx;
        BiPoly<Fq> Ck = lift_bipoly(C, kc);
        auto rows = Ck.by_y();
        for (auto& r : rows) r = poly_shift_arg(r, x0);
        std::vector<Poly<Fq>> acc;
        for (size_t j = rows.size(); j-- > 0;) {
            std::vector<Poly<Fq>> nxt(acc.size() + 1);
            for (size_t t = 0; t < acc.size(); ++t) {
                nxt[t + 1] = nxt[t + 1] + acc[t];
                nxt[t] = nxt[t] + acc[t] * Poly<Fq>::constant(y0);
            }
            nxt[0] = nxt[0] + rows[j];
            while (!nxt.empty() && nxt.back().zero()) nxt.pop_back();
            acc = std::move(nxt);
        }
        return BiPoly<Fq>::from_by_y(acc, C.vx, C.vy);
    }

    // ---- valuations ----
    LSer expand(const BiPoly<Fq>& F, const Place& P) const {
        BiPoly<Fq> Fk = lift_bipoly(F, P.k);
        return ls_eval(Fk, P.X, P.Y, P.k, P.X.lim + P.Y.lim);
    }
    LSer expand_x(const Poly<Fq>& f, const Place& P) const {
        Poly<Fq> fk = lift_poly(f, P.k);
        LSer rv(P.k, 0, P.X.lim + P.Y.lim);
        for (int i = fk.deg(); i >= 0; --i) {
            rv = rv * P.X;
            rv = rv + LSer::constant(P.k, fk.coeff(i) + Fq(P.k, 0), rv.lim);
        }
        return rv;
    }
    // valuation of a polynomial function; the polynomial must not be
    // divisible by the curve equation
    int valuation(const BiPoly<Fq>& F, const Place& P) const {
        if (F.zero()) throw std::domain_error("valuation of zero");
        return expand(F, P).ord();
    }

    // ---- special fiber construction ----
    void build_special() {
        Poly<Fq> res = bipoly_resultant_y(G, Gy);
        if (res.zero()) throw BadCurve("vanishing discriminant: curve not squarefree");
        Poly<Fq> L = G.by_y().back();
        Poly<Fq> r = res;
        if (L.deg() > 0) r = r * L;
        Poly<Fq> dr = r.derivative();
        if (!dr.zero()) {
            auto g = gcd(r, dr);
            if (g.deg() > 0) r = r / g;
        } else {
            Poly<Fq> acc = Poly<Fq>::constant(Fq(k0, 1));
            for (auto& [f, m] : fq_factor(r)) acc = acc * f;
            r = acc;
        }
        bad_x = make_monic(r);
        for (auto& [pi, mult] : fq_factor(bad_x)) resolve_bad_fiber(pi, special);
        resolve_infinite_fiber(special);
        for (auto i : special) places[i].is_special = true;
    }

    void resolve_bad_fiber(const Poly<Fq>& pi, std::vector<size_t>& out) {
        int dpi = pi.deg();
        const FqCtx* kx = nullptr;
        Fq x0;
        if (dpi == 1) {
            kx = k0;
            x0 = -(make_monic(pi).coeff(0) + Fq(k0, 0));
        } else {
            TowerExt t = tower_ext(k0, pi);
            note_tower(t, k0);
            kx = t.ctx;
            x0 = t.root;
        }
        Poly<Fq> gx0 = eval_at_x(G, x0);
        if (gx0.zero()) throw BadCurve("vertical line component");
        for (auto& [h, m] : fq_factor(gx0)) {
            int fh = h.deg();
            Fq cx = x0, cy;
            if (fh == 1) {
                cy = -(make_monic(h).coeff(0) + Fq(kx, 0));
            } else {
                TowerExt t2 = tower_ext(kx, h);
                note_tower(t2, kx);
                cx = t2.emb.map(x0);
                cy = t2.root;
            }
            resolve_point(0, cx, cy, dpi * fh, pi, out);
        }
        Poly<Fq> L = G.by_y().back();
        if (is_zero_at(L, x0)) resolve_point(1, x0, Fq(kx, 0), dpi, pi, out);
    }

    void resolve_infinite_fiber(std::vector<size_t>& out) {
        Poly<Fq> none;  // zero minimal polynomial: x = infinity
        Poly<Fq> top = eval_at_x(G2, Fq(k0, 0));  // leading x-form of G in y
        if (top.zero()) throw BadCurve("degenerate leading x-form");
        for (auto& [h, m] : fq_factor(top)) {
            int fh = h.deg();
            if (fh == 1) {
                Fq y0 = -(make_monic(h).coeff(0) + Fq(k0, 0));
                resolve_point(2, Fq(k0, 0), y0, 1, none, out);
            } else {
                TowerExt t = tower_ext(k0, h);
                note_tower(t, k0);
                resolve_point(2, Fq(t.ctx, 0), t.root, fh, none, out);
            }
        }
        auto it = G3.c.find({0, 0});
        if (it == G3.c.end() || is_zero(it->second))
            resolve_point(3, Fq(k0, 0), Fq(k0, 0), 1, none, out);
    }

    // resolve all branches at one chart point and register the places; D is
    // the residue degree of the center over the base field
    void resolve_point(int chart, Fq x0, Fq y0, int D, const Poly<Fq>& xmin,
                       std::vector<size_t>& out) {
        const BiPoly<Fq>* C = nullptr;
        switch (chart) {
            case 0: C = &G; break;
            case 1: C = &G1; break;
            case 2: C = &G2; break;
            case 3: C = &G3; break;
        }
        const FqCtx* kw = x0.ctx;
        std::vector<BranchSer> brs;
        while (true) {
            BiPoly<Fq> germ = shifted_germ(*C, x0, y0);
            try {
                brs = puiseux_branches(germ, kw, prec);
                break;
            } catch (const FieldTooSmall& f) {
                if (kw->d * f.need > 512) throw BadCurve("branch field too large");
                Poly<Fq> irr = random_irreducible(kw, f.need);
                TowerExt t = tower_ext(kw, irr);
                note_tower(t, kw);
                x0 = t.emb.map(x0);
                y0 = t.emb.map(y0);
                kw = t.ctx;
            }
        }
        // distinct geometric branches (drop reparametrization duplicates)
        std::vector<BranchSer> uniq;
        for (auto& b : brs) {
            bool dup = false;
            for (auto& u : uniq)
                if (same_branch(u, b)) { dup = true; break; }
            if (!dup) uniq.push_back(std::move(b));
        }
        // group into Frobenius orbits over F_{q^D}
        std::vector<bool> used(uniq.size(), false);
        for (size_t i = 0; i < uniq.size(); ++i) {
            if (used[i]) continue;
            used[i] = true;
            int orbit = 1;
            size_t cur = i;
            while (true) {
                BranchSer img = frob_branch(uniq[cur], D);
                size_t nxt = uniq.size();
                for (size_t j = 0; j < uniq.size(); ++j)
                    if (same_branch(img, uniq[j])) { nxt = j; break; }
                if (nxt == uniq.size())
                    throw std::logic_error("frobenius image of branch not found");
                if (nxt == i) break;
                if (used[nxt]) throw std::logic_error("branch orbit inconsistency");
                used[nxt] = true;
                ++orbit;
                cur = nxt;
            }
            register_branch(chart, x0, y0, D * orbit, xmin, uniq[i], out);
        }
    }

    BranchSer frob_branch(const BranchSer& b, int D) const {
        BranchSer r = b;
        for (auto& v : r.eta) v = frob_n(v, D);
        return r;
    }
    static bool same_branch(const BranchSer& a, const BranchSer& b) {
        if (a.e != b.e) return false;
        if (a.e == 1) return a.eta == b.eta;
        // allow the reparametrization t -> zeta t, zeta^e = 1
        const FqCtx* k = a.k;
        Poly<Fq> cyc;
        cyc.c.assign(static_cast<size_t>(a.e) + 1, Fq(k, 0));
        cyc.c[0] = Fq(k, -1);
        cyc.c[static_cast<size_t>(a.e)] = Fq(k, 1);
        for (auto& z : fq_roots(cyc)) {
            bool ok = true;
            Fq zp(k, 1);
            for (size_t i = 0; i < a.eta.size() && ok; ++i) {
                if (i > 0) zp = zp * z;
                if (!(b.eta[i] == a.eta[i] * zp)) ok = false;
            }
            if (ok) return true;
        }
        return false;
    }

    void register_branch(int chart, const Fq& x0, const Fq& y0, int degree,
                         const Poly<Fq>& xmin, const BranchSer& b,
                         std::vector<size_t>& out) {
        Place P;
        P.degree = degree;
        P.k = b.k;
        P.chart = chart;
        P.e = b.e;
        P.xmin = xmin;
        int lim = static_cast<int>(b.eta.size());
        LSer xi = LSer::monomial(b.k, b.e, lim + b.e);
        LSer eta(b.k, 0, lim);
        eta.c.assign(b.eta.begin(), b.eta.end());
        eta.normalize();
        LSer X0 = LSer::constant(b.k, x0 + Fq(b.k, 0), lim + b.e);
        LSer Y0 = LSer::constant(b.k, y0 + Fq(b.k, 0), lim);
        LSer bx = X0 + xi;  // chart base coordinate
        LSer by = Y0 + eta;
        switch (chart) {
            case 0: P.X = bx; P.Y = by; break;
            case 1: P.X = bx; P.Y = ls_inv(by); break;
            case 2: P.X = ls_inv(bx); P.Y = by; break;
            case 3: P.X = ls_inv(bx); P.Y = ls_inv(by); break;
        }
        places.push_back(std::move(P));
        out.push_back(places.size() - 1);
    }

    // ---- generic (smooth, good-fiber) places ----
    void ensure_generic(int d) {
        if (generic_by_degree.count(d)) return;
        std::vector<size_t> out;
        const FqCtx* kd = ext(d);
        long npts = 1;
        for (int i = 0; i < d * k0->d; ++i) npts *= static_cast<long>(k0->p.get_ui());
        Poly<Fq> bad = lift_poly(bad_x, kd);
        for (long xi = 0; xi < npts; ++xi) {
            Fq x0 = fq_element(kd, xi);
            int d1 = 1;  // canonical representative of the x-orbit
            {
                Fq c = frob(x0);
                bool least = true;
                while (!(c == x0)) {
                    if (fq_less(c, x0)) { least = false; break; }
                    c = frob(c);
                    ++d1;
                }
                if (!least || d % d1 != 0) continue;
            }
            if (is_zero(bad.eval(x0) + Fq(kd, 0))) continue;
            Poly<Fq> g = eval_at_x(G, x0);
            for (auto& y0 : roots_in_field(g, kd)) {
                int m2 = 1;  // orbit of y0 under Frob^{d1}
                Fq c = frob_n(y0, d1);
                bool least = true;
                while (!(c == y0)) {
                    if (fq_less(c, y0)) { least = false; break; }
                    c = frob_n(c, d1);
                    ++m2;
                }
                if (!least || d1 * m2 != d) continue;
                std::vector<size_t> tmp;
                resolve_point(0, x0, y0, d, x_minpoly(x0, d1), tmp);
                if (tmp.size() != 1 || places[tmp[0]].degree != d)
                    throw std::logic_error("good fiber produced a bad branch count");
                out.push_back(tmp[0]);
            }
        }
        generic_by_degree[d] = std::move(out);
    }

    // minimal polynomial over the base field of an element with orbit size d1
    Poly<Fq> x_minpoly(const Fq& x0, int d1) const {
        Poly<Fq> r = Poly<Fq>::constant(Fq(x0.ctx, 1));
        Fq c = x0;
        for (int i = 0; i < d1; ++i) {
            Poly<Fq> lin;
            lin.c = {-c, Fq(x0.ctx, 1)};
            r = r * lin;
            c = frob(c);
        }
        Poly<Fq> down;
        down.c.reserve(r.c.size());
        for (auto& v : r.c) down.c.push_back(descend(v));
        down.trim();
        return down;
    }

    // ---- helpers over extensions ----
    Poly<Fq> eval_at_x(const BiPoly<Fq>& F, const Fq& x0) const {
        const FqCtx* kc = x0.ctx;
        BiPoly<Fq> Fk = lift_bipoly(F, kc);
        auto rows = Fk.by_y();
        Poly<Fq> r;
        r.c.assign(rows.size(), Fq(kc, 0));
        for (size_t j = 0; j < rows.size(); ++j)
            if (!rows[j].zero()) r.c[j] = rows[j].eval(x0) + Fq(kc, 0);
        r.trim();
        return r;
    }
    bool is_zero_at(const Poly<Fq>& f, const Fq& x0) const {
        return is_zero(lift_poly(f, x0.ctx).eval(x0) + Fq(x0.ctx, 0));
    }
    // roots of g lying in its own coefficient field kc
    std::vector<Fq> roots_in_field(const Poly<Fq>& g, const FqCtx* kc) const {
        if (g.deg() <= 0) return {};
        Poly<Fq> gm = make_monic(g);
        Poly<Fq> y = Poly<Fq>::monomial(Fq(kc, 1), 1);
        Poly<Fq> h = poly_powmod(y, kc->order(), gm);
        Poly<Fq> lin = gcd(gm, h - y);
        if (lin.deg() <= 0) return {};
        return fq_roots(lin);
    }

    // random monic irreducible of degree r over kc
    Poly<Fq> random_irreducible(const FqCtx* kc, int r) {
        long p = static_cast<long>(kc->p.get_ui());
        for (int tries = 0; tries < 4096; ++tries) {
            Poly<Fq> f;
            f.c.assign(static_cast<size_t>(r) + 1, Fq(kc, 0));
            f.c[static_cast<size_t>(r)] = Fq(kc, 1);
            for (int i = 0; i < r; ++i) {
                std::vector<Int> cc;
                for (int j = 0; j < kc->d; ++j)
                    cc.push_back(Int(static_cast<long>(rng() % static_cast<unsigned long>(p))));
                f.c[static_cast<size_t>(i)] = Fq::from_coeffs(kc, std::move(cc));
            }
            if (is_zero(f.c[0])) continue;
            if (is_irreducible(f, kc)) return f;
        }
        throw std::logic_error("random_irreducible: search failed");
    }
    bool is_irreducible(const Poly<Fq>& f, const FqCtx* kc) const {
        int r = f.deg();
        Int Q = kc->order();
        Poly<Fq> y = Poly<Fq>::monomial(Fq(kc, 1), 1);
        Poly<Fq> cur = y;
        std::vector<Poly<Fq>> frobs;  // x^{Q^j} mod f for j = 1..r
        for (int j = 1; j <= r; ++j) {
            cur = poly_powmod(cur, Q, f);
            frobs.push_back(cur);
        }
        if (!(frobs.back() - y).zero()) return false;
        for (int l = 2; l <= r; ++l) {
            if (r % l != 0) continue;
            bool isprime = true;
            for (int t = 2; t * t <= l; ++t)
                if (l % t == 0) isprime = false;
            if (!isprime) continue;
            if (gcd(f, frobs[static_cast<size_t>(r / l) - 1] - y).deg() != 0) return false;
        }
        return true;
    }

    // ---- derived invariants ----
    static LSer ls_derivative(const LSer& a) {
        LSer r(a.k, a.off - 1, a.lim - 1);
        r.c.assign(a.c.size(), Fq(a.k, 0));
        for (size_t i = 0; i < a.c.size(); ++i) {
            int e = a.off + static_cast<int>(i);
            r.c[i] = a.c[i] * Fq(a.k, static_cast<long>(e));
        }
        r.normalize();
        return r;
    }

    // valuation of the canonical differential dx / G_y at a place
    int canonical_val(const Place& P) const {
        LSer dX = ls_derivative(P.X);
        if (!dX.zero_to_prec()) {
            LSer gy = expand(Gy, P);
            return dX.ord() - gy.ord();
        }
        LSer dY = ls_derivative(P.Y);
        LSer gx = expand(Gx, P);
        return dY.ord() - gx.ord();
    }

    int genus() {
        if (genus_ >= 0) return genus_;
        long sum = 0;
        for (auto i : special)
            sum += static_cast<long>(places[i].degree) * canonical_val(places[i]);
        long g2 = sum + 2;
        if (g2 % 2 != 0 || g2 < 0) throw std::logic_error("bad canonical degree");
        genus_ = static_cast<int>(g2 / 2);
        return genus_;
    }

    // the canonical divisor div(dx / G_y) as place-index multiplicities
    std::map<size_t, int> canonical_divisor() {
        std::map<size_t, int> K;
        for (auto i : special) {
            int v = canonical_val(places[i]);
            if (v != 0) K[i] = v;
        }
        return K;
    }

    // all places of degree <= kmax
    std::vector<size_t> places_up_to(int kmax) {
        for (int d = 1; d <= kmax; ++d) ensure_generic(d);
        std::vector<size_t> out;
        for (auto i : special)
            if (places[i].degree <= kmax) out.push_back(i);
        for (int d = 1; d <= kmax; ++d)
            for (auto i : generic_by_degree[d]) out.push_back(i);
        return out;
    }

    // smooth-model point counts N_1..N_kmax over the degree-k extensions
    std::vector<long> zeta_counts(int kmax) {
        for (int d = 1; d <= kmax; ++d) ensure_generic(d);
        std::vector<long> cnt(static_cast<size_t>(kmax) + 1, 0);
        for (auto i : special)
            if (places[i].degree <= kmax) cnt[static_cast<size_t>(places[i].degree)] += 1;
        for (int d = 1; d <= kmax; ++d)
            for (auto i : generic_by_degree[d]) cnt[static_cast<size_t>(d)] += 1;
        std::vector<long> N(static_cast<size_t>(kmax) + 1, 0);
        for (int k = 1; k <= kmax; ++k) {
            long s = 0;
            for (int d = 1; d <= k; ++d)
                if (k % d == 0) s += static_cast<long>(d) * cnt[static_cast<size_t>(d)];
            N[static_cast<size_t>(k)] = s;
        }
        return N;
    }

    // ---- irreducibility certificates ----
    void certify_irreducible_base() {
        auto ex = Fq(k0, 1);
        auto fac = distinct_factors(G, ex, split_detail::fq_irreducibles);
        if (fac.size() != 1 || fac[0].deg_x() != G.deg_x() || fac[0].deg_y() != G.deg_y())
            throw BadCurve("curve is reducible over the base field");
    }
    void certify_absolutely_irreducible() {
        // a smooth rational point on an irreducible curve certifies absolute
        // irreducibility: conjugate components would all pass through it and
        // make it singular
        ensure_generic(1);
        if (!generic_by_degree[1].empty()) return;
        int gxy = std::gcd(G.deg_x(), G.deg_y());
        for (int r = 2; r <= gxy; ++r) {
            if (gxy % r != 0) continue;
            bool isprime = true;
            for (int t = 2; t * t <= r; ++t)
                if (r % t == 0) isprime = false;
            if (!isprime) continue;
            const FqCtx* kr = ext(r);
            BiPoly<Fq> Gr = lift_bipoly(G, kr);
            auto ex = Fq(kr, 1);
            auto fac = distinct_factors(Gr, ex, split_detail::fq_irreducibles);
            if (fac.size() != 1 || fac[0].deg_x() != G.deg_x() || fac[0].deg_y() != G.deg_y())
                throw BadCurve("curve is not absolutely irreducible");
        }
    }
};

}  // namespace mdtk
