#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "mdtk/numfield.hpp"
#include "mdtk/poly.hpp"

namespace mdtk {

// Long Weierstrass curve y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
// over an exemplar-context field K.
template <class K>
struct EC {
    K a1, a2, a3, a4, a6;

    // exemplar for integer literals: any nonzero coefficient (a zero
    // coefficient may be a contextless zero and carry no scalar context)
    const K& ex() const {
        for (const K* c : {&a1, &a2, &a3, &a4, &a6})
            if (!is_zero(*c)) return *c;
        return a1;
    }

    K b2() const { return a1 * a1 + from_int_like(ex(), 4) * a2; }
    K b4() const { return from_int_like(ex(), 2) * a4 + a1 * a3; }
    K b6() const { return a3 * a3 + from_int_like(ex(), 4) * a6; }
    K b8() const {
        return a1 * a1 * a6 + from_int_like(ex(), 4) * a2 * a6 - a1 * a3 * a4 +
               a2 * a3 * a3 - a4 * a4;
    }
    K discriminant() const {
        K B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
        return -(B2 * B2 * B8) - from_int_like(ex(), 8) * B4 * B4 * B4 -
               from_int_like(ex(), 27) * B6 * B6 + from_int_like(ex(), 9) * B2 * B4 * B6;
    }
};

template <class K>
struct ECPoint {
    bool infinite = true;
    K x{}, y{};

    static ECPoint infinity() { return ECPoint{}; }
    static ECPoint at(const K& x, const K& y) { return ECPoint{false, x, y}; }
};

template <class K>
bool on_curve(const EC<K>& E, const ECPoint<K>& P) {
    if (P.infinite) return true;
    K lhs = P.y * P.y + E.a1 * P.x * P.y + E.a3 * P.y;
    K rhs = P.x * P.x * P.x + E.a2 * P.x * P.x + E.a4 * P.x + E.a6;
    return is_zero(lhs - rhs);
}

template <class K>
ECPoint<K> ec_neg(const EC<K>& E, const ECPoint<K>& P) {
    if (P.infinite) return P;
    return ECPoint<K>::at(P.x, -P.y - E.a1 * P.x - E.a3);
}

template <class K>
ECPoint<K> ec_add(const EC<K>& E, const ECPoint<K>& P, const ECPoint<K>& Q) {
    if (P.infinite) return Q;
    if (Q.infinite) return P;
    K lam, nu;
    if (is_zero(P.x - Q.x)) {
        // same x: either inverse points or a doubling
        ECPoint<K> negQ = ec_neg(E, Q);
        if (is_zero(P.y - negQ.y)) return ECPoint<K>::infinity();
        // tangent line
        K num = from_int_like(E.ex(), 3) * P.x * P.x +
                from_int_like(E.ex(), 2) * E.a2 * P.x + E.a4 - E.a1 * P.y;
        K den = from_int_like(E.ex(), 2) * P.y + E.a1 * P.x + E.a3;
        lam = num * inv(den);
        nu = (-(P.x * P.x * P.x) + E.a4 * P.x + from_int_like(E.ex(), 2) * E.a6 -
              E.a3 * P.y) *
             inv(den);
    } else {
        K d = inv(Q.x - P.x);
        lam = (Q.y - P.y) * d;
        nu = (P.y * Q.x - Q.y * P.x) * d;
    }
    K x3 = lam * lam + E.a1 * lam - E.a2 - P.x - Q.x;
    K y3 = -(lam + E.a1) * x3 - nu - E.a3;
    return ECPoint<K>::at(x3, y3);
}

template <class K>
ECPoint<K> ec_mul(const EC<K>& E, const ECPoint<K>& P, long k) {
    if (k < 0) return ec_mul(E, ec_neg(E, P), -k);
    ECPoint<K> R = ECPoint<K>::infinity(), B = P;
    while (k > 0) {
        if (k & 1) R = ec_add(E, R, B);
        B = ec_add(E, B, B);
        k >>= 1;
    }
    return R;
}

struct ExceedsCap {};

// least k <= cap with kP = O
template <class K>
std::optional<long> order_of_point(const EC<K>& E, const ECPoint<K>& P, long cap) {
    if (!on_curve(E, P)) throw std::domain_error("order_of_point: point not on curve");
    ECPoint<K> R = P;
    for (long k = 1; k <= cap; ++k) {
        if (R.infinite) return k;
        R = ec_add(E, R, P);
    }
    return std::nullopt;
}

// Tate normal form E(b,c): y^2 + (1-c)xy - by = x^3 - bx^2, P = (0,0)
template <class K>
EC<K> tate_curve(const K& b, const K& c) {
    K one = one_like(b);
    EC<K> E{one - c, -b, -b, zero_like(b), zero_like(b)};
    if (is_zero(E.discriminant()))
        throw std::domain_error("tate_curve: singular parameters");
    return E;
}

// Lemma-5.4-style parameterization: b = rs(r-1), c = s(r-1)
template <class K>
EC<K> tate_from_rs(const K& r, const K& s) {
    K one = one_like(r);
    return tate_curve(r * s * (r - one), s * (r - one));
}

// x-coordinates in K of the points of exact order 2: roots of the
// 2-division polynomial 4x^3 + b2 x^2 + 2 b4 x + b6
inline std::vector<NFElem> two_torsion_x(const EC<NFElem>& E) {
    std::vector<NFElem> c{E.b6(), from_int_like(E.ex(), 2) * E.b4(), E.b2(),
                          from_int_like(E.ex(), 4)};
    Poly<NFElem> psi2(std::move(c));
    return nf_roots(psi2);
}

inline int two_torsion_count(const EC<NFElem>& E) {
    return static_cast<int>(two_torsion_x(E).size());
}

}  // namespace mdtk
