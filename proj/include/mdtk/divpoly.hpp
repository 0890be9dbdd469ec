#pragma once

#include <map>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "mdtk/ecurve.hpp"

namespace mdtk {

namespace dp_detail {

// exact ring division: use exact_div where one exists (polynomial rings),
// otherwise multiply by the inverse (fields)
template <class R>
auto ring_div_impl(const R& a, const R& b, int)
    -> std::remove_reference_t<decltype(*exact_div(a, b))> {
    auto q = exact_div(a, b);
    if (!q) throw std::domain_error("ring_exact_div: inexact division");
    return *q;
}
template <class R>
R ring_div_impl(const R& a, const R& b, long) {
    return a * inv(b);
}

}  // namespace dp_detail

template <class R>
R ring_exact_div(const R& a, const R& b) {
    return dp_detail::ring_div_impl(a, b, 0);
}

// Division polynomials psi_k of a Weierstrass curve, evaluated at a fixed
// x-coordinate.  With hB = 2y + a1 x + a3 (so hB^2 = B = 4x^3 + b2 x^2 +
// 2 b4 x + b6), psi_k = s_k for odd k and psi_k = hB * s_k for even k,
// where the s_k depend on x only.  Everything here works in the x-only
// quantities s_k and B over an arbitrary commutative ring R.
template <class R>
struct DivSequence {
    R x, B;
    R b2, b4, b6, b8;
    std::vector<R> s;
    std::map<int, R> prim_cache;

    DivSequence(const R& x_, const R& b2_, const R& b4_, const R& b6_, const R& b8_)
        : x(x_), b2(b2_), b4(b4_), b6(b6_), b8(b8_) {
        // exemplar for integer literals: any nonzero input (x itself may
        // be a contextless zero, e.g. the marked point of a Tate curve)
        const R* ex = &x;
        for (const R* c : {&x, &b2, &b4, &b6, &b8})
            if (!is_zero(*c)) { ex = c; break; }
        auto fi = [&](long v) { return from_int_like(*ex, v); };
        R one = one_like(*ex), zero = zero_like(*ex);
        R x2 = x * x, x3 = x2 * x;
        B = fi(4) * x3 + b2 * x2 + fi(2) * b4 * x + b6;
        R s3 = fi(3) * x3 * x + b2 * x3 + fi(3) * b4 * x2 + fi(3) * b6 * x + b8;
        R x4 = x3 * x, x5 = x4 * x, x6 = x5 * x;
        R s4 = fi(2) * x6 + b2 * x5 + fi(5) * b4 * x4 + fi(10) * b6 * x3 +
               fi(10) * b8 * x2 + (b2 * b8 - b4 * b6) * x + (b4 * b8 - b6 * b6);
        s = {zero, one, one, s3, s4};
    }

    template <class K>
    static DivSequence for_curve(const EC<K>& E, const K& xQ) {
        return DivSequence(xQ, E.b2(), E.b4(), E.b6(), E.b8());
    }

    const R& S(int k) {
        if (k < 0) throw std::domain_error("DivSequence: negative index");
        while ((int)s.size() <= k) {
            int i = (int)s.size();
            int h = i / 2;
            R next;
            if (i % 2 == 1) {
                // i = 2h+1
                if (h % 2 == 0)
                    next = B * B * s[h + 2] * s[h] * s[h] * s[h] -
                           s[h - 1] * s[h + 1] * s[h + 1] * s[h + 1];
                else
                    next = s[h + 2] * s[h] * s[h] * s[h] -
                           B * B * s[h - 1] * s[h + 1] * s[h + 1] * s[h + 1];
            } else {
                // i = 2h
                next = s[h] * (s[h + 2] * s[h - 1] * s[h - 1] -
                               s[h - 2] * s[h + 1] * s[h + 1]);
            }
            s.push_back(next);
        }
        return s[k];
    }

    // A_k = psi_{k-1} psi_{k+1} as an x-only quantity
    R A(int k) {
        R v = S(k - 1) * S(k + 1);
        if (k % 2 != 0) v = v * B;
        return v;
    }

    // C_k = psi_k^2 as an x-only quantity
    R C(int k) {
        R v = S(k) * S(k);
        if (k % 2 == 0) v = v * B;
        return v;
    }

    // K_e = psi_e^2: vanishes exactly on points killed by e
    R K(int e) { return C(e); }

    // x(kQ) = num/den with num = x*C_k - A_k, den = C_k
    std::pair<R, R> multiple_x(int k) {
        R c = C(k);
        return {x * c - A(k), c};
    }

    // x-only factor of s_e vanishing exactly at x-coordinates of points of
    // exact order e (e >= 3): s_e with the factors of smaller exact order
    // divided out
    R exact_order_factor(int e) {
        if (e < 3) throw std::domain_error("exact_order_factor: need e >= 3");
        auto it = prim_cache.find(e);
        if (it != prim_cache.end()) return it->second;
        R f = S(e);
        for (int d = 3; d < e; ++d)
            if (e % d == 0) f = ring_exact_div(f, exact_order_factor(d));
        prim_cache.emplace(e, f);
        return f;
    }

    // primitive e-division value: prod_{d | e} K_d^{mu(e/d)}, vanishing
    // exactly on the points of exact order e
    R primitive(int e) {
        R num = one_like(B), den = one_like(B);
        for (int d = 1; d <= e; ++d) {
            if (e % d != 0) continue;
            int q = e / d, mu = 1, m = q;
            for (int p = 2; p * p <= m; ++p)
                if (m % p == 0) {
                    m /= p;
                    if (m % p == 0) { mu = 0; break; }
                    mu = -mu;
                }
            if (mu == 0) continue;
            if (m > 1) mu = -mu;
            if (mu == 1)
                num = num * K(d);
            else
                den = den * K(d);
        }
        return ring_exact_div(num, den);
    }
};

}  // namespace mdtk
