#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mdtk/bifactor.hpp"
#include "mdtk/families.hpp"
#include "mdtk/fq.hpp"
#include "mdtk/modgroup.hpp"

namespace mdtk {

struct UnsupportedRange {};

template <class K>
struct RawModelT {
    Label label;
    BiPoly<K> F;
    int family = 0;  // parameterization used (1 = universal Tate curve)
    std::vector<std::pair<BiPoly<K>, int>> removed;  // spurious factors, multiplicities
};
using RawModel = RawModelT<Rat>;

namespace model_detail {

// scale so the lex-leading coefficient is 1 (field coefficients other than Q)
template <class K>
BiPoly<K> monic_normalized(const BiPoly<K>& p) {
    if (p.zero()) return p;
    return p * inv(p.lead().second);
}
inline BiPoly<Rat> monic_normalized(const BiPoly<Rat>& p) { return normalized(p); }

template <class K>
FamilyCurve<K> curve_for(int m, const K& ex) {
    return m == 1 ? universal_curve(ex) : family_curve(m, ex);
}

// Candidate spurious factors for the (m, mn) torsion condition:
//   - degenerate loci of the parameterization,
//   - the 2-division value B(x_Q) (points of order dividing 2, which also
//     covers the gap-2 ambiguity aQ = bQ when mn is even),
//   - for each proper divisor e >= 3 of mn, the exact-order-e factor of
//     the division polynomial at x_Q,
//   - loci where <P> meets <Q> (the marked points fail independence):
//     P = +-nQ, and for m = 4 also 2P = 2nQ.
// Each candidate is stripped of degenerate-locus subfactors so it can be
// divided out independently.
template <class K>
std::vector<BiPoly<K>> spurious_candidates(const FamilyCurve<K>& fam, int n) {
    int m = fam.m, N = m * n;
    auto D = DivSequence<BiPoly<K>>::for_curve(fam.E, fam.xQ);
    std::vector<BiPoly<K>> out = fam.degenerate;
    auto strip = [&](BiPoly<K> g) {
        for (const auto& d : fam.degenerate) g = remove_known_factor(g, d).first;
        return g;
    };
    // candidates may overlap (e.g. the 2P = 2nQ locus contains P = +-nQ);
    // divide out everything already collected so each is removable on its own
    auto push = [&](BiPoly<K> g) {
        for (const auto& f : out)
            if (f.deg_x() > 0 || f.deg_y() > 0) g = remove_known_factor(g, f).first;
        if (g.deg_x() > 0 || g.deg_y() > 0) out.push_back(monic_normalized(g));
    };
    // x ramifies at 2-torsion, so conditions of the form x(kQ) = x(T) with
    // T of order dividing 2 appear squared; use their square roots
    auto half = [&](const BiPoly<K>& g) {
        auto gn = monic_normalized(g);
        auto s = exact_sqrt(gn);
        return s ? monic_normalized(*s) : gn;
    };
    // order <= 2 locus: 2Q = O iff 2y(Q) + a1 x(Q) + a3 = 0
    push(strip(fam.yQ + fam.yQ + fam.E.a1 * fam.xQ + fam.E.a3));
    for (int e = 3; e < N; ++e)
        if (N % e == 0) push(strip(D.exact_order_factor(e)));
    if (m >= 2) push(half(strip(fam.xQ * D.C(n) - D.A(n))));
    if (m == 4)
        push(half(strip(fam.E.b6() * (fam.xQ * D.C(2 * n) - D.A(2 * n)) +
                        fam.E.b8() * D.C(2 * n))));
    return out;
}

template <class K>
RawModelT<K> build_raw(const FamilyCurve<K>& fam, int n) {
    RawModelT<K> R;
    R.label = Label{fam.m, n};
    R.family = fam.m;
    BiPoly<K> h = order_condition(fam, n);
    for (const auto& g : spurious_candidates(fam, n)) {
        auto [cof, k] = remove_known_factor(h, g);
        if (k > 0) {
            h = cof;
            R.removed.emplace_back(g, k);
        }
    }
    if (h.deg_x() <= 0 && h.deg_y() <= 0)
        throw std::logic_error("raw model collapsed to a constant");
    R.F = monic_normalized(h);
    return R;
}

}  // namespace model_detail

// split a univariate-in-t degenerate locus into irreducibles over F_q (a
// factor irreducible over Q may factor further mod p, with the pieces
// dividing the torsion condition to different multiplicities)
template <class K>
void refine_degenerate(std::vector<BiPoly<K>>&) {}

inline void refine_degenerate(std::vector<BiPoly<Fq>>& v) {
    std::vector<BiPoly<Fq>> out;
    for (auto& g : v) {
        if (g.deg_y() != 0 || g.deg_x() < 2) {
            out.push_back(g);
            continue;
        }
        Poly<Fq> u;
        u.c.assign(static_cast<size_t>(g.deg_x()) + 1, zero_like(g.lead().second));
        for (auto& [e, val] : g.c) u.c[static_cast<size_t>(e.first)] = val;
        u.trim();
        for (auto& [f, mult] : fq_factor(u)) {
            BiPoly<Fq> piece(g.vx, g.vy);
            for (int i = 0; i <= f.deg(); ++i)
                if (!is_zero(f.coeff(i))) piece.add_term(i, 0, f.coeff(i));
            out.push_back(piece);
        }
    }
    v = std::move(out);
}

// X_1(m) for genus-zero m via the Kubert parameterization b(t), c(t) of the
// Tate curve, rescaled to integral Weierstrass coefficients; variables are
// (t, x) with the second marked point Q = (x, y) left free
template <class K>
FamilyCurve<K> kubert_family(int m, const K& ex) {
    using TL = std::initializer_list<std::tuple<int, int, long>>;
    auto P = [&](TL terms) { return fam_detail::bp(ex, "t", "x", terms); };
    FamilyCurve<K> F;
    F.m = m;
    BiPoly<K> zero("t", "x");
    switch (m) {
        case 4:  // b = t, c = 0
            F.E = {P({{0, 0, 1}}), P({{1, 0, -1}}), P({{1, 0, -1}}), zero, zero};
            F.degenerate = {P({{1, 0, 1}}), P({{1, 0, 16}, {0, 0, 1}})};
            break;
        case 5:  // b = c = t
            F.E = {P({{0, 0, 1}, {1, 0, -1}}), P({{1, 0, -1}}), P({{1, 0, -1}}), zero,
                   zero};
            F.degenerate = {P({{1, 0, 1}}),
                            P({{2, 0, 1}, {1, 0, -11}, {0, 0, -1}})};
            break;
        case 6:  // b = t^2 + t, c = t
            F.E = {P({{0, 0, 1}, {1, 0, -1}}), P({{2, 0, -1}, {1, 0, -1}}),
                   P({{2, 0, -1}, {1, 0, -1}}), zero, zero};
            F.degenerate = {P({{1, 0, 1}}), P({{1, 0, 1}, {0, 0, 1}}),
                            P({{1, 0, 9}, {0, 0, 1}})};
            break;
        case 7:  // b = t^3 - t^2, c = t^2 - t
            F.E = {P({{0, 0, 1}, {1, 0, 1}, {2, 0, -1}}), P({{3, 0, -1}, {2, 0, 1}}),
                   P({{3, 0, -1}, {2, 0, 1}}), zero, zero};
            F.degenerate = {P({{1, 0, 1}}), P({{1, 0, 1}, {0, 0, -1}}),
                            P({{3, 0, 1}, {2, 0, -8}, {1, 0, 5}, {0, 0, 1}})};
            break;
        case 8:  // b = (2t-1)(t-1), c = (2t-1)(t-1)/t, scaled by D = t
            F.E = {P({{2, 0, -2}, {1, 0, 4}, {0, 0, -1}}),
                   P({{4, 0, -2}, {3, 0, 3}, {2, 0, -1}}),
                   P({{5, 0, -2}, {4, 0, 3}, {3, 0, -1}}), zero, zero};
            F.degenerate = {P({{1, 0, 1}}), P({{1, 0, 1}, {0, 0, -1}}),
                            P({{1, 0, 2}, {0, 0, -1}}),
                            P({{2, 0, 8}, {1, 0, -8}, {0, 0, 1}})};
            break;
        case 9:  // c = t^2(t-1), b = c(t(t-1)+1)
            F.E = {P({{0, 0, 1}, {2, 0, 1}, {3, 0, -1}}),
                   P({{5, 0, -1}, {4, 0, 2}, {3, 0, -2}, {2, 0, 1}}),
                   P({{5, 0, -1}, {4, 0, 2}, {3, 0, -2}, {2, 0, 1}}), zero, zero};
            F.degenerate = {P({{1, 0, 1}}), P({{1, 0, 1}, {0, 0, -1}}),
                            P({{2, 0, 1}, {1, 0, -1}, {0, 0, 1}}),
                            P({{3, 0, 1}, {2, 0, -6}, {1, 0, 3}, {0, 0, 1}})};
            break;
        case 10:  // b = t^3(t-1)(2t-1)/D^2, c = -t(t-1)(2t-1)/D, D = t^2-3t+1
            F.E = {P({{3, 0, 2}, {2, 0, -2}, {1, 0, -2}, {0, 0, 1}}),
                   P({{5, 0, -2}, {4, 0, 3}, {3, 0, -1}}),
                   P({{7, 0, -2}, {6, 0, 9}, {5, 0, -12}, {4, 0, 6}, {3, 0, -1}}),
                   zero, zero};
            F.degenerate = {P({{1, 0, 1}}), P({{1, 0, 1}, {0, 0, -1}}),
                            P({{1, 0, 2}, {0, 0, -1}}),
                            P({{2, 0, 1}, {1, 0, -3}, {0, 0, 1}}),
                            P({{2, 0, 4}, {1, 0, -2}, {0, 0, -1}})};
            break;
        default:
            throw UnsupportedRange{};
    }
    F.xQ = P({{0, 1, 1}});
    F.yQ = zero;
    refine_degenerate(F.degenerate);
    fam_detail::check_marked_order(F);
    return F;
}

namespace model_detail {
inline int igcd(int a, int b) { return b == 0 ? a : igcd(b, a % b); }
}  // namespace model_detail

// Spurious factors of the order-mn condition for the Kubert families: the
// marked-order divisor conditions on Q plus the loci where <P> meets <Q>
// (coinciding order-e subgroups for each divisor e > 1 of m)
template <class K>
std::vector<BiPoly<K>> general_spurious(const FamilyCurve<K>& fam, int n) {
    using model_detail::monic_normalized;
    int m = fam.m, N = m * n;
    auto D = DivSequence<BiPoly<K>>::for_curve(fam.E, fam.xQ);
    BiPoly<K> x0(fam.E.a1.vx, fam.E.a1.vy);
    auto Dp = DivSequence<BiPoly<K>>::for_curve(fam.E, x0);
    std::vector<BiPoly<K>> out = fam.degenerate;
    auto strip = [&](BiPoly<K> g) {
        for (const auto& d : fam.degenerate) g = remove_known_factor(g, d).first;
        return g;
    };
    auto push = [&](BiPoly<K> g) {
        for (const auto& f : out)
            if (f.deg_x() > 0 || f.deg_y() > 0) g = remove_known_factor(g, f).first;
        if (g.deg_x() > 0 || g.deg_y() > 0) out.push_back(monic_normalized(g));
    };
    auto half = [&](const BiPoly<K>& g) {
        auto gn = monic_normalized(g);
        auto s = exact_sqrt(gn);
        return s ? monic_normalized(*s) : gn;
    };
    // order <= 2 locus of Q: the 2-division polynomial in x
    push(strip(D.B));
    for (int e = 3; e < N; ++e)
        if (N % e == 0) push(strip(D.exact_order_factor(e)));
    for (int e = 2; e <= m; ++e) {
        if (m % e != 0) continue;
        for (int c = 1; 2 * c <= e; ++c) {
            if (model_detail::igcd(c, e) != 1) continue;
            int k = c * (N / e), j = m / e;
            BiPoly<K> g = (fam.xQ * D.C(k) - D.A(k)) * Dp.C(j) + Dp.A(j) * D.C(k);
            push(half(strip(g)));
        }
    }
    return out;
}

// Plane model of X_1(m,mn)^+ over Q via the general method: the square
// root of Res_y(e, h) with h the cleaned order-mn condition
inline RawModel general_model(int m, int n) {
    if (m < 4 || m == 11 || m > 12 || n < 1 || m * m * n > 120)
        throw UnsupportedRange{};
    FamilyCurve<Rat> fam = kubert_family(m, Rat(0));
    RawModel R;
    R.label = Label{m, n};
    R.family = m;
    BiPoly<Rat> h = order_condition(fam, n);
    // a candidate can carry extra components (division preimages) that do
    // not lie on h and block removal of the whole product; when that
    // happens, factor the candidate and strike each factor on its own
    for (const auto& g : general_spurious(fam, n)) {
        auto gn = normalized(g);
        auto [cof, k] = remove_known_factor(h, gn);
        if (k > 0) {
            h = cof;
            R.removed.emplace_back(gn, k);
            continue;
        }
        if (g.deg_y() == 0) continue;
        for (const auto& f : distinct_factors(g, Rat(1), split_detail::rat_irreducibles)) {
            auto fn = normalized(f);
            auto [cof2, k2] = remove_known_factor(h, fn);
            if (k2 > 0) {
                h = cof2;
                R.removed.emplace_back(fn, k2);
            }
        }
    }
    if (h.deg_x() <= 0 && h.deg_y() <= 0)
        throw std::logic_error("general model collapsed to a constant");
    // h is y-free and e is quadratic in y, so Res_y(e, h) = h^2
    BiPoly<Rat> H = normalized(h * h);
    auto s = exact_sqrt(H);
    if (!s) throw NotASquare{};
    R.F = normalized(*s);
    return R;
}

// general-method model with coefficients reduced mod p from the start
inline RawModelT<Fq> general_model_fp(int m, int n, const Int& p, int deg = 1) {
    if (m < 4 || m == 11 || m > 12 || n < 1 || m * m * n > 120)
        throw UnsupportedRange{};
    const FqCtx* k = FqCtx::get(p, deg);
    FamilyCurve<Fq> fam = kubert_family(m, Fq(k, 0));
    RawModelT<Fq> R;
    R.label = Label{m, n};
    R.family = m;
    BiPoly<Fq> h = order_condition(fam, n);
    for (const auto& g : general_spurious(fam, n)) {
        auto gn = model_detail::monic_normalized(g);
        auto [cof, mult] = remove_known_factor(h, gn);
        if (mult > 0) {
            h = cof;
            R.removed.emplace_back(gn, mult);
            continue;
        }
        if (g.deg_y() == 0) continue;
        for (const auto& f : distinct_factors(g, Fq(k, 1), split_detail::fq_irreducibles)) {
            auto [cof2, m2] = remove_known_factor(h, f);
            if (m2 > 0) {
                h = cof2;
                R.removed.emplace_back(f, m2);
            }
        }
    }
    if (h.deg_x() <= 0 && h.deg_y() <= 0)
        throw std::logic_error("general model collapsed to a constant");
    auto s = exact_sqrt(model_detail::monic_normalized(h * h));
    if (!s) throw NotASquare{};
    R.F = model_detail::monic_normalized(*s);
    return R;
}

// the factors struck from the raw torsion condition for (m, mn)
inline std::vector<BiPoly<Rat>> spurious_divisors(int m, int n) {
    FamilyCurve<Rat> fam = model_detail::curve_for(m, Rat(0));
    return model_detail::spurious_candidates(fam, n);
}

// raw plane model of X_1(m,mn) over Q; for m = 3, 4 this is the full
// torsion-condition polynomial, whose conjugate split over Q(zeta_m) is
// handled by split_conjugate below
inline RawModel raw_model_presplit(int m, int n) {
    // fine moduli needs mn >= 5, except that (4,4) is already fine
    if (m < 1 || m > 4 || m * n < 5 - (m >= 3 ? 1 : 0) || m * m * n > 120)
        throw UnsupportedRange{};
    FamilyCurve<Rat> fam = model_detail::curve_for(m, Rat(0));
    return model_detail::build_raw(fam, n);
}

// the same construction with coefficients reduced mod p from the start;
// used for labels whose rational model is out of reach
inline RawModelT<Fq> raw_model_fp(int m, int n, const Int& p) {
    if (m < 1 || m > 4 || m * n < 5 - (m >= 3 ? 1 : 0) || m * m * n > 120)
        throw UnsupportedRange{};
    const FqCtx* k = FqCtx::get(p, 1);
    Fq ex(k, 0);
    FamilyCurve<Fq> fam = model_detail::curve_for(m, ex);
    return model_detail::build_raw(fam, n);
}

}  // namespace mdtk
