#pragma once

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "mdtk/bipoly.hpp"
#include "mdtk/divpoly.hpp"
#include "mdtk/ecurve.hpp"

namespace mdtk {

struct PointAtInfinity {};

// exact x(kQ) for a point over a field; signals PointAtInfinity when kQ = O
template <class K>
K multiple_x(const EC<K>& E, const ECPoint<K>& P, long k) {
    if (!on_curve(E, P)) throw std::domain_error("multiple_x: point not on curve");
    ECPoint<K> R = ec_mul(E, P, k);
    if (R.infinite) throw PointAtInfinity{};
    return R.x;
}

// The parameterized families of curves with an m-torsion point P_m = (0,0)
// and an independent marked point Q_m, symbolic in (q,t); m=1 is the
// universal Tate curve E(b,c) with the single marked point P = Q = (0,0).
template <class K>
struct FamilyCurve {
    int m = 0;
    EC<BiPoly<K>> E;
    BiPoly<K> xQ, yQ;
    std::vector<BiPoly<K>> degenerate;  // loci where the parameterization breaks down
};

namespace fam_detail {

template <class K>
BiPoly<K> bp(const K& ex, const std::string& vx, const std::string& vy,
             std::initializer_list<std::tuple<int, int, long>> terms) {
    BiPoly<K> r(vx, vy);
    for (auto& [i, j, v] : terms) r.add_term(i, j, from_int_like(ex, v));
    return r;
}

template <class K>
K scalar_frac(const K& ex, long a, long b) {
    return from_int_like(ex, a) * inv(from_int_like(ex, b));
}

// exact order of (0,0): primitive m-division value vanishes identically,
// no smaller one does
template <class K>
void check_marked_order(const FamilyCurve<K>& F) {
    if (F.m < 2) return;
    BiPoly<K> x0(F.E.a1.vx, F.E.a1.vy);
    auto D = DivSequence<BiPoly<K>>::for_curve(F.E, x0);
    for (int e = 2; e <= F.m; ++e) {
        if (F.m % e != 0) continue;
        bool vanish = D.K(e).zero();
        if (e == F.m && !vanish)
            throw std::logic_error("family: marked point order too large");
        if (e < F.m && vanish)
            throw std::logic_error("family: marked point order too small");
    }
}

template <class K>
void check_on_curve(const FamilyCurve<K>& F) {
    const auto& E = F.E;
    BiPoly<K> lhs = F.yQ * F.yQ + E.a1 * F.xQ * F.yQ + E.a3 * F.yQ;
    BiPoly<K> rhs = F.xQ * F.xQ * F.xQ + E.a2 * F.xQ * F.xQ + E.a4 * F.xQ + E.a6;
    if (!(lhs == rhs)) throw std::logic_error("family: marked point not on curve");
}

}  // namespace fam_detail

// universal Tate curve E(b,c): y^2 + (1-c)xy - by = x^3 - bx^2, in
// variables (b,c), marked point (0,0) of generic order n
template <class K>
FamilyCurve<K> universal_curve(const K& ex) {
    using fam_detail::bp;
    FamilyCurve<K> F;
    F.m = 1;
    BiPoly<K> b = bp(ex, "b", "c", {{1, 0, 1}});
    BiPoly<K> c = bp(ex, "b", "c", {{0, 1, 1}});
    BiPoly<K> one = bp(ex, "b", "c", {{0, 0, 1}});
    BiPoly<K> zero(std::string("b"), std::string("c"));
    F.E = EC<BiPoly<K>>{one - c, -b, -b, zero, zero};
    F.xQ = zero;
    F.yQ = zero;
    F.degenerate = {b, c};
    fam_detail::check_on_curve(F);
    return F;
}

template <class K>
FamilyCurve<K> family_curve(int m, const K& ex) {
    using fam_detail::bp;
    FamilyCurve<K> F;
    F.m = m;
    const std::string q = "q", t = "t";
    BiPoly<K> zero(q, t);
    if (m == 2) {
        // y^2 = x^3 + (t^2-2qt-2)x^2 - (t^2-1)(qt+1)^2 x,
        // Q_2 = ((t+1)(qt+1), t(qt+1)(t+1))
        BiPoly<K> a2 = bp(ex, q, t, {{0, 2, 1}, {1, 1, -2}, {0, 0, -2}});
        BiPoly<K> t2m1 = bp(ex, q, t, {{0, 2, 1}, {0, 0, -1}});
        BiPoly<K> qt1 = bp(ex, q, t, {{1, 1, 1}, {0, 0, 1}});
        BiPoly<K> a4 = -(t2m1 * qt1 * qt1);
        F.E = EC<BiPoly<K>>{zero, a2, zero, a4, zero};
        BiPoly<K> tp1 = bp(ex, q, t, {{0, 1, 1}, {0, 0, 1}});
        BiPoly<K> tt = bp(ex, q, t, {{0, 1, 1}});
        F.xQ = tp1 * qt1;
        F.yQ = tt * qt1 * tp1;
        F.degenerate = {tt,
                        bp(ex, q, t, {{0, 1, 1}, {0, 0, -1}}),   // t-1
                        tp1,
                        qt1,
                        bp(ex, q, t, {{1, 0, 1}, {0, 0, -1}}),   // q-1
                        bp(ex, q, t, {{1, 0, 1}, {0, 0, 1}}),    // q+1
                        bp(ex, q, t, {{1, 0, 1}, {0, 1, 1}}),    // q+t
                        bp(ex, q, t, {{1, 0, 1}, {0, 1, -1}}),   // q-t
                        bp(ex, q, t, {{1, 1, 1}, {0, 0, -1}})};  // qt-1
    } else if (m == 3) {
        // y^2 + (qt-q+t+2)xy + (qt^2-qt+t)y = x^3, Q_3 = (-t, t^2)
        BiPoly<K> a1 = bp(ex, q, t, {{1, 1, 1}, {1, 0, -1}, {0, 1, 1}, {0, 0, 2}});
        BiPoly<K> a3 = bp(ex, q, t, {{1, 2, 1}, {1, 1, -1}, {0, 1, 1}});
        F.E = EC<BiPoly<K>>{a1, zero, a3, zero, zero};
        F.xQ = bp(ex, q, t, {{0, 1, -1}});
        F.yQ = bp(ex, q, t, {{0, 2, 1}});
        F.degenerate = {bp(ex, q, t, {{0, 1, 1}}),               // t
                        bp(ex, q, t, {{1, 1, 1}, {1, 0, -1}, {0, 0, 1}}),  // qt-q+1
                        bp(ex, q, t, {{1, 0, 1}}),               // q
                        bp(ex, q, t, {{1, 0, 1}, {0, 0, -1}}),   // q-1
                        bp(ex, q, t, {{1, 0, 1}, {0, 0, 1}}),    // q+1
                        bp(ex, q, t, {{0, 1, 1}, {0, 0, -1}}),   // t-1
                        bp(ex, q, t, {{0, 1, 1}, {0, 0, 1}})};   // t+1
    } else if (m == 4) {
        // y^2 + xy + d*y = x^3 + d*x^2 with d = (1/16)(q^2-1)(t^2-1),
        // Q_4 = ((q+1)(t^2-1)/8, (q+1)^2(t-1)^2(t+1)/32)
        K c16 = fam_detail::scalar_frac(ex, 1, 16);
        BiPoly<K> q2m1 = bp(ex, q, t, {{2, 0, 1}, {0, 0, -1}});
        BiPoly<K> t2m1 = bp(ex, q, t, {{0, 2, 1}, {0, 0, -1}});
        BiPoly<K> d = (q2m1 * t2m1) * c16;
        BiPoly<K> one = bp(ex, q, t, {{0, 0, 1}});
        F.E = EC<BiPoly<K>>{one, d, d, zero, zero};
        BiPoly<K> qp1 = bp(ex, q, t, {{1, 0, 1}, {0, 0, 1}});
        BiPoly<K> tm1 = bp(ex, q, t, {{0, 1, 1}, {0, 0, -1}});
        BiPoly<K> tp1 = bp(ex, q, t, {{0, 1, 1}, {0, 0, 1}});
        F.xQ = (qp1 * t2m1) * fam_detail::scalar_frac(ex, 1, 8);
        F.yQ = (qp1 * qp1 * tm1 * tm1 * tp1) * fam_detail::scalar_frac(ex, 1, 32);
        F.degenerate = {bp(ex, q, t, {{1, 0, 1}, {0, 0, -1}}),  // q-1
                        qp1,
                        tm1,
                        tp1,
                        bp(ex, q, t, {{1, 0, 1}}),  // q
                        bp(ex, q, t, {{0, 1, 1}}),  // t
                        // vanishing of 1 - 16d (discriminant factor)
                        bp(ex, q, t, {{2, 2, 1}, {2, 0, -1}, {0, 2, -1}})};
    } else {
        throw std::domain_error("family_curve: m must be 2, 3 or 4");
    }
    fam_detail::check_on_curve(F);
    fam_detail::check_marked_order(F);
    return F;
}

// The torsion condition defining X_1(m,mn): with N = mn, a = ceil((N+1)/2),
// b = floor((N-1)/2), equate x(aQ) and x(bQ) and clear denominators:
// h = A_b C_a - A_a C_b.  Spurious factors are not yet removed.
template <class K>
BiPoly<K> order_condition(const FamilyCurve<K>& F, int n) {
    int N = F.m * n;
    if (N < 4) throw std::domain_error("order_condition: need mn >= 4");
    int a = (N + 2) / 2, b = (N - 1) / 2;
    auto D = DivSequence<BiPoly<K>>::for_curve(F.E, F.xQ);
    return D.A(b) * D.C(a) - D.A(a) * D.C(b);
}

}  // namespace mdtk
