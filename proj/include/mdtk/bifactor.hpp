#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mdtk/bipoly.hpp"
#include "mdtk/fq.hpp"
#include "mdtk/numfield.hpp"
#include "mdtk/zfactor.hpp"

namespace mdtk {

namespace split_detail {

// rows[i] = coefficient of (first variable)^i, as a polynomial in the second
template <class K>
std::vector<Poly<K>> rows_by_x(const BiPoly<K>& F) {
    return F.swapped_vars().by_y();
}

template <class K>
BiPoly<K> from_rows_by_x(const std::vector<Poly<K>>& rows, const std::string& vx,
                         const std::string& vy) {
    return BiPoly<K>::from_by_y(rows, vy, vx).swapped_vars();
}

// divide out the common K[x]-content of the y-columns
template <class K>
BiPoly<K> without_column_content(const BiPoly<K>& A) {
    auto cols = A.by_y();
    Poly<K> g;
    for (auto& c : cols) g = gcd(g, c);
    if (g.deg() <= 0) return A;
    for (auto& c : cols) c = c / g;
    return BiPoly<K>::from_by_y(cols, A.vx, A.vy);
}

// Find a proper factor of F (irreducible of least y-degree among those
// visible at the chosen specialization) over the coefficient field, by
// univariate factorization at x = x0 followed by (x - x0)-adic Hensel
// lifting and subset recombination.  factor_irr must return the monic
// irreducible factors of a monic squarefree univariate polynomial.
template <class K, class FactorFn>
std::optional<std::pair<BiPoly<K>, BiPoly<K>>> split_once(const BiPoly<K>& F,
                                                          const K& ex,
                                                          FactorFn&& factor_irr) {
    int d = F.deg_y();
    if (d < 2) return std::nullopt;
    auto cols = F.by_y();
    Poly<K> L = cols[static_cast<size_t>(d)];  // leading y-coefficient in K[x]

    // monic-in-y rescaling G(x,y) = L^(d-1) F(x, y/L)
    BiPoly<K> G(F.vx, F.vy);
    {
        std::vector<Poly<K>> gc(cols.size());
        gc[static_cast<size_t>(d)] = Poly<K>::constant(one_like(ex));
        for (int j = 0; j < d; ++j) {
            Poly<K> m = cols[static_cast<size_t>(j)];
            for (int i = 0; i < d - 1 - j; ++i) m = m * L;
            gc[static_cast<size_t>(j)] = m;
        }
        G = BiPoly<K>::from_by_y(gc, F.vx, F.vy);
    }

    // specialization with full-degree squarefree fiber
    K x0 = zero_like(ex);
    Poly<K> f0;
    bool found = false;
    for (long v = 0; v <= 60 && !found; ++v) {
        for (long s : {v, -v}) {
            x0 = from_int_like(ex, s);
            f0 = G.eval_x(x0);
            if (f0.deg() != d) continue;
            Poly<K> df = f0.derivative();
            if (df.zero() || gcd(f0, df).deg() > 0) continue;
            found = true;
            break;
        }
    }
    if (!found) return std::nullopt;
    f0 = make_monic(f0);

    std::vector<Poly<K>> irr = factor_irr(f0);
    size_t r = irr.size();
    if (r < 2) return std::nullopt;
    if (r > 20) throw std::domain_error("split_once: too many local factors");

    // coefficients of G(x0 + u, y) by powers of u
    int prec = G.deg_x() + 2;
    std::vector<Poly<K>> sh(static_cast<size_t>(prec));
    {
        // Horner over the x-rows: sh <- sh*(u + x0) + rows[i], mod u^prec
        auto rows = rows_by_x(G);  // rows[i] : Poly in y
        for (size_t i = rows.size(); i-- > 0;) {
            std::vector<Poly<K>> nxt(static_cast<size_t>(prec));
            for (int j = prec - 1; j >= 1; --j)
                nxt[static_cast<size_t>(j)] = sh[static_cast<size_t>(j - 1)];
            for (int j = 0; j < prec; ++j)
                nxt[static_cast<size_t>(j)] =
                    nxt[static_cast<size_t>(j)] +
                    sh[static_cast<size_t>(j)] * Poly<K>::constant(x0);
            nxt[0] = nxt[0] + rows[i];
            sh = std::move(nxt);
        }
    }

    // subsets ordered by candidate degree, smallest first
    std::vector<std::pair<int, unsigned>> masks;
    for (unsigned mask = 1; mask < (1u << r) - 1; ++mask) {
        int dm = 0;
        for (size_t i = 0; i < r; ++i)
            if (mask & (1u << i)) dm += irr[i].deg();
        if (dm > 0 && dm < d && 2 * dm <= d) masks.emplace_back(dm, mask);
    }
    std::sort(masks.begin(), masks.end(),
              [](auto& a, auto& b) { return a.first < b.first; });

    for (auto& [dm, mask] : masks) {
        Poly<K> A0 = Poly<K>::constant(one_like(ex));
        for (size_t i = 0; i < r; ++i)
            if (mask & (1u << i)) A0 = A0 * irr[i];
        auto B0opt = exact_div(f0, A0);
        if (!B0opt) continue;
        Poly<K> B0 = *B0opt;
        auto [g, sg, tg] = xgcd(A0, B0);
        if (g.deg() != 0) continue;

        std::vector<Poly<K>> a(static_cast<size_t>(prec)), b(static_cast<size_t>(prec));
        a[0] = A0;
        b[0] = B0;
        for (int j = 1; j < prec; ++j) {
            Poly<K> e = sh[static_cast<size_t>(j)];
            for (int i = 0; i <= j; ++i)
                e = e - a[static_cast<size_t>(i)] * b[static_cast<size_t>(j - i)];
            auto [quo, dA] = divmod(tg * e, A0);
            a[static_cast<size_t>(j)] = dA;
            b[static_cast<size_t>(j)] = sg * e + quo * B0;
        }
        // a true factor's series terminates within the degree bound
        if (!a[static_cast<size_t>(prec - 1)].zero()) continue;

        BiPoly<K> At(F.vx, F.vy);
        {
            // At = sum_j a[j](y) (x - x0)^j
            BiPoly<K> pw(F.vx, F.vy), shift(F.vx, F.vy);
            pw.add_term(0, 0, one_like(ex));
            shift.add_term(1, 0, one_like(ex));
            shift.add_term(0, 0, -x0);
            for (int j = 0; j < prec - 1; ++j) {
                auto aj = a[static_cast<size_t>(j)];
                BiPoly<K> row(F.vx, F.vy);
                for (int i = 0; i <= aj.deg(); ++i)
                    if (!is_zero(aj.coeff(i))) row.add_term(0, i, aj.coeff(i));
                At = At + row * pw;
                if (j + 2 < prec) pw = pw * shift;
            }
        }
        if (!(exact_div(G, At))) continue;

        // undo the monic rescaling: columns pick up L^j, then drop content
        BiPoly<K> A(F.vx, F.vy);
        {
            auto ac = At.by_y();
            std::vector<Poly<K>> rc(ac.size());
            Poly<K> Lp = Poly<K>::constant(one_like(ex));
            for (size_t j = 0; j < ac.size(); ++j) {
                rc[j] = ac[j] * Lp;
                Lp = Lp * L;
            }
            A = without_column_content(BiPoly<K>::from_by_y(rc, F.vx, F.vy));
        }
        auto cof = exact_div(F, A);
        if (!cof) continue;
        return std::make_pair(A, *cof);
    }
    return std::nullopt;
}

template <class K>
void trim_rows(std::vector<Poly<K>>& v) {
    while (!v.empty() && v.back().zero()) v.pop_back();
}

template <class K>
void make_y_primitive(std::vector<Poly<K>>& v) {
    Poly<K> g;
    for (auto& c : v) g = gcd(g, c);
    if (g.deg() > 0)
        for (auto& c : v) c = c / g;
}

// remainder of a by b with respect to the y-power index, up to K[x]-content
// (each elimination step rescales by the leading row, and the result is
// re-primitivized to keep coefficients small — gcd use only)
template <class K>
std::vector<Poly<K>> y_pseudo_rem(std::vector<Poly<K>> a, const std::vector<Poly<K>>& b) {
    const Poly<K>& lb = b.back();
    size_t db = b.size() - 1;
    while (a.size() > db && a.size() >= 1) {
        Poly<K> la = a.back();
        size_t da = a.size() - 1;
        for (auto& c : a) c = c * lb;
        for (size_t j = 0; j < b.size(); ++j)
            a[da - db + j] = a[da - db + j] - la * b[j];
        a.pop_back();
        trim_rows(a);
        make_y_primitive(a);
    }
    return a;
}

// gcd with respect to y of two y-primitive bivariate polynomials, via the
// primitive pseudo-remainder sequence over K[x]
template <class K>
BiPoly<K> bipoly_gcd_y_prs(const BiPoly<K>& A, const BiPoly<K>& B) {
    auto a = A.by_y(), b = B.by_y();
    trim_rows(a);
    trim_rows(b);
    make_y_primitive(a);
    make_y_primitive(b);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        auto r = y_pseudo_rem(a, b);
        trim_rows(r);
        make_y_primitive(r);
        a = std::move(b);
        b = std::move(r);
    }
    return BiPoly<K>::from_by_y(a, A.vx, A.vy);
}

// scale rows to a common integer-primitive representative
inline void int_primitive_rows(std::vector<Poly<Rat>>& rows) {
    Int L(1);
    for (auto& r : rows)
        for (auto& v : r.c) L = lcm(L, den(v));
    Int g(0);
    for (auto& r : rows)
        for (auto& v : r.c) {
            v = v * Rat(L);
            g = gcd(g, num(v));
        }
    if (g > 1)
        for (auto& r : rows)
            for (auto& v : r.c) v = v / Rat(g);
}

// Modular y-gcd over Q: per large prime, the pseudo-remainder sequence runs
// over F_p (no coefficient growth); each image is rescaled so its leading
// y-row is gamma = gcd of the leading rows over Z[x], the images are
// combined by CRT, and the symmetric lift is certified by exact division.
// The Q pseudo-remainder sequence serves only as a last-resort fallback.
inline BiPoly<Rat> rat_bipoly_gcd_y(const BiPoly<Rat>& A, const BiPoly<Rat>& B) {
    auto a = A.by_y(), b = B.by_y();
    trim_rows(a);
    trim_rows(b);
    if (b.empty()) return BiPoly<Rat>::from_by_y(a, A.vx, A.vy);
    if (a.empty()) return BiPoly<Rat>::from_by_y(b, A.vx, A.vy);
    make_y_primitive(a);
    make_y_primitive(b);
    if (a.size() < b.size()) std::swap(a, b);
    auto one = [&] {
        BiPoly<Rat> r(A.vx, A.vy);
        r.add_term(0, 0, Rat(1));
        return r;
    };
    if (b.size() == 1) return one();
    int_primitive_rows(a);
    int_primitive_rows(b);
    Poly<Rat> gamma = gcd(a.back(), b.back());
    {
        std::vector<Poly<Rat>> gr{gamma};
        int_primitive_rows(gr);
        gamma = gr[0];
    }
    auto reduce_poly = [](const Poly<Rat>& f, const FqCtx* k) {
        Poly<Fq> r;
        r.c.assign(f.c.size(), Fq(k, 0));
        for (size_t i = 0; i < f.c.size(); ++i) r.c[i] = Fq(k, num(f.c[i]));
        r.trim();
        return r;
    };
    Int p = Int(1) << 62;
    std::vector<std::vector<Int>> acc;  // acc[y][x], lifted coefficients
    Int M(0);
    size_t best_dy = 0, best_dx = 0;
    for (int iter = 0; iter < 128; ++iter) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        if (num(a.back().lc()) % p == 0 || num(b.back().lc()) % p == 0 ||
            num(gamma.lc()) % p == 0)
            continue;
        const FqCtx* k = FqCtx::get(p, 1);
        std::vector<Poly<Fq>> ap(a.size()), bp(b.size());
        for (size_t i = 0; i < a.size(); ++i) ap[i] = reduce_poly(a[i], k);
        for (size_t i = 0; i < b.size(); ++i) bp[i] = reduce_poly(b[i], k);
        BiPoly<Fq> hp = bipoly_gcd_y_prs(BiPoly<Fq>::from_by_y(ap, A.vx, A.vy),
                                         BiPoly<Fq>::from_by_y(bp, A.vx, A.vy));
        auto h = hp.by_y();
        trim_rows(h);
        if (h.size() <= 1) return one();  // mod-p gcd can only be too big
        size_t dy = h.size() - 1;
        if (M != 0 && dy > best_dy) continue;  // unlucky prime
        auto u = exact_div(reduce_poly(gamma, k), h.back());
        if (!u) continue;
        for (auto& r : h) r = r * *u;
        size_t dx = 0;
        for (auto& r : h) dx = std::max(dx, static_cast<size_t>(r.deg() < 0 ? 0 : r.deg()));
        if (M != 0 && dy == best_dy && dx > best_dx) continue;
        if (M == 0 || dy < best_dy || dx < best_dx) {
            best_dy = dy;
            best_dx = dx;
            acc.assign(dy + 1, std::vector<Int>(dx + 1, Int(0)));
            M = 1;
        }
        if (M == 1) {
            for (size_t i = 0; i <= dy; ++i)
                for (size_t j = 0; j <= dx; ++j)
                    acc[i][j] = static_cast<int>(j) <= h[i].deg() ? h[i].coeff(static_cast<int>(j)).lift() : Int(0);
            M = p;
        } else {
            Int minv, mp = M % p;
            mpz_invert(minv.get_mpz_t(), mp.get_mpz_t(), p.get_mpz_t());
            for (size_t i = 0; i <= dy; ++i)
                for (size_t j = 0; j <= dx; ++j) {
                    Int hij = static_cast<int>(j) <= h[i].deg() ? h[i].coeff(static_cast<int>(j)).lift() : Int(0);
                    Int r = (hij - acc[i][j]) % p;
                    if (r < 0) r += p;
                    acc[i][j] = acc[i][j] + M * (r * minv % p);
                }
            M *= p;
        }
        // symmetric lift, strip contents, certify by division
        Int half = M / 2, cg(0);
        std::vector<Poly<Rat>> rows(best_dy + 1);
        std::vector<std::vector<Int>> lifted(best_dy + 1,
                                             std::vector<Int>(best_dx + 1));
        for (size_t i = 0; i <= best_dy; ++i)
            for (size_t j = 0; j <= best_dx; ++j) {
                lifted[i][j] = acc[i][j] % M;
                if (lifted[i][j] > half) lifted[i][j] -= M;
                cg = gcd(cg, lifted[i][j]);
            }
        for (size_t i = 0; i <= best_dy; ++i) {
            std::vector<Rat> cc(best_dx + 1);
            for (size_t j = 0; j <= best_dx; ++j)
                cc[j] = Rat(cg > 1 ? lifted[i][j] / cg : lifted[i][j]);
            rows[i] = Poly<Rat>(std::move(cc));
        }
        make_y_primitive(rows);  // the lc normalization can leave x-content
        trim_rows(rows);
        if (rows.size() != best_dy + 1) continue;
        BiPoly<Rat> cand = BiPoly<Rat>::from_by_y(rows, A.vx, A.vy);
        if (exact_div(BiPoly<Rat>::from_by_y(a, A.vx, A.vy), cand) &&
            exact_div(BiPoly<Rat>::from_by_y(b, A.vx, A.vy), cand))
            return cand;
    }
    return bipoly_gcd_y_prs(A, B);
}

template <class K>
BiPoly<K> bipoly_gcd_y(const BiPoly<K>& A, const BiPoly<K>& B) {
    if constexpr (std::is_same_v<K, Rat>)
        return rat_bipoly_gcd_y(A, B);
    else
        return bipoly_gcd_y_prs(A, B);
}

// partial derivative with respect to the second variable
template <class K>
BiPoly<K> d_second(const BiPoly<K>& F) {
    BiPoly<K> r(F.vx, F.vy);
    for (auto& [e, v] : F.c)
        if (e.second > 0) {
            K c = v * from_int_like(v, e.second);
            if (!is_zero(c)) r.add_term(e.first, e.second - 1, c);
        }
    return r;
}

inline std::vector<Poly<Rat>> rat_irreducibles(const Poly<Rat>& f) {
    std::vector<Poly<Rat>> out;
    for (auto& [g, m] : z_factor(f).factors) out.push_back(make_monic(g));
    return out;
}

inline std::vector<Poly<NFElem>> nf_irreducibles(const Poly<NFElem>& f) {
    return nf_factor_squarefree(f);
}

inline std::vector<Poly<Fq>> fq_irreducibles(const Poly<Fq>& f) {
    std::vector<Poly<Fq>> out;
    for (auto& [g, m] : fq_factor(f)) out.push_back(g);
    return out;
}

}  // namespace split_detail

// Distinct irreducible factors of a bivariate polynomial over the field K,
// each scaled to lex-leading coefficient 1; multiplicities are not
// reported.  A reducible piece that resists the specialization search is
// returned whole rather than dropped.
template <class K, class FactorFn>
std::vector<BiPoly<K>> distinct_factors(const BiPoly<K>& F, const K& ex,
                                        FactorFn&& factor_irr) {
    std::vector<BiPoly<K>> out;
    auto push_poly = [&](Poly<K> f, bool as_y, const std::string& vx,
                         const std::string& vy) {
        if (f.deg() <= 0) return;
        Poly<K> df = f.derivative();
        // keep only the squarefree part; an inseparable f goes to the
        // factorizer whole (it copes in characteristic p)
        if (!df.zero()) {
            auto g = gcd(f, df);
            if (g.deg() > 0) f = f / g;
        }
        f = make_monic(f);
        for (auto& p : factor_irr(f)) {
            BiPoly<K> b(vx, vy);
            for (int i = 0; i <= p.deg(); ++i)
                if (!is_zero(p.coeff(i))) b.add_term(as_y ? 0 : i, as_y ? i : 0, p.coeff(i));
            if (b.deg_x() > 0 || b.deg_y() > 0) out.push_back(b);
        }
    };
    std::vector<BiPoly<K>> work{F};
    while (!work.empty()) {
        BiPoly<K> G = std::move(work.back());
        work.pop_back();
        if (G.zero() || (G.deg_x() <= 0 && G.deg_y() <= 0)) continue;
        if (G.deg_y() == 0) {
            push_poly(G.by_y()[0], false, G.vx, G.vy);
            continue;
        }
        if (G.deg_x() == 0) {
            push_poly(G.swapped_vars().by_y()[0], true, G.vx, G.vy);
            continue;
        }
        {
            auto cols = G.by_y();
            Poly<K> ct;
            for (auto& c : cols) ct = gcd(ct, c);
            if (ct.deg() > 0) {
                push_poly(ct, false, G.vx, G.vy);
                for (auto& c : cols) c = c / ct;
                work.push_back(BiPoly<K>::from_by_y(cols, G.vx, G.vy));
                continue;
            }
            auto rows = split_detail::rows_by_x(G);
            Poly<K> rt;
            for (auto& r : rows) rt = gcd(rt, r);
            if (rt.deg() > 0) {
                push_poly(rt, true, G.vx, G.vy);
                for (auto& r : rows) r = r / rt;
                work.push_back(split_detail::from_rows_by_x(rows, G.vx, G.vy));
                continue;
            }
        }
        // repeated factors defeat the squarefree specialization search, so
        // split off gcd(G, dG/dy) first
        {
            BiPoly<K> Gy = split_detail::d_second(G);
            if (!Gy.zero()) {
                BiPoly<K> gq = split_detail::bipoly_gcd_y(G, Gy);
                if (gq.deg_y() > 0) {
                    if (auto quo = exact_div(G, gq)) {
                        work.push_back(std::move(*quo));
                        work.push_back(std::move(gq));
                        continue;
                    }
                }
            }
        }
        if (auto sp = split_detail::split_once(G, ex, factor_irr)) {
            work.push_back(std::move(sp->first));
            work.push_back(std::move(sp->second));
            continue;
        }
        if (auto sp = split_detail::split_once(G.swapped_vars(), ex, factor_irr)) {
            work.push_back(sp->first.swapped_vars());
            work.push_back(sp->second.swapped_vars());
            continue;
        }
        out.push_back(G * inv(G.lead().second));
    }
    std::vector<BiPoly<K>> uniq;
    for (auto& f : out) {
        bool dup = false;
        for (auto& u : uniq)
            if ((f - u).zero()) {
                dup = true;
                break;
            }
        if (!dup) uniq.push_back(f);
    }
    return uniq;
}

}  // namespace mdtk
