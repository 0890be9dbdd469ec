#pragma once

#include <utility>
#include <vector>

#include "mdtk/bifactor.hpp"
#include "mdtk/model.hpp"
#include "mdtk/numfield.hpp"

namespace mdtk {

// conjugate-factor selection failed: no proper factor of the expected shape
// was found (or verified) over the splitting field
struct FactorSelectionAmbiguous {};

inline BiPoly<NFElem> nf_bipoly(const NumField* k, const BiPoly<Rat>& F) {
    BiPoly<NFElem> r(F.vx, F.vy);
    for (auto& [e, v] : F.c) r.c[e] = NFElem(k, v);
    return r;
}

inline const NumField* cyclotomic_quadratic(int m) {
    if (m == 3)
        return NumField::get(Poly<Rat>({Rat(1), Rat(1), Rat(1)}), "z3");
    if (m == 4) return NumField::get(Poly<Rat>({Rat(1), Rat(0), Rat(1)}), "i");
    throw std::domain_error("cyclotomic_quadratic: only m = 3, 4");
}

// One Galois-conjugate factor of F over K, for F that splits into a
// conjugate pair; both bidegrees must halve exactly.
inline BiPoly<NFElem> conjugate_factor(const BiPoly<Rat>& F, const NumField* K) {
    BiPoly<NFElem> FK = nf_bipoly(K, F);
    NFElem ex = NFElem(K, Rat(1));
    auto sp = split_detail::split_once(FK, ex, split_detail::nf_irreducibles);
    if (!sp) throw FactorSelectionAmbiguous{};
    auto& [A, B] = *sp;
    if (2 * A.deg_x() != F.deg_x() || 2 * A.deg_y() != F.deg_y())
        throw FactorSelectionAmbiguous{};
    return A;
}

// Same split after reduction mod p, for a prime where the quadratic field
// splits; either component may be returned.
inline BiPoly<Fq> component_factor(const BiPoly<Fq>& F) {
    if (F.zero()) throw std::domain_error("component_factor: zero polynomial");
    Fq ex = one_like(F.lead().second);
    auto sp = split_detail::split_once(F, ex, split_detail::fq_irreducibles);
    if (!sp) throw FactorSelectionAmbiguous{};
    auto& [A, B] = *sp;
    if (2 * A.deg_x() != F.deg_x() || 2 * A.deg_y() != F.deg_y())
        throw FactorSelectionAmbiguous{};
    return A;
}

// Raw model with the conjugate factor selected: over Q for m = 1, 2 and
// over Q(zeta_m) for m = 3, 4.
inline RawModelT<NFElem> raw_model(int m, int n) {
    RawModel pre = raw_model_presplit(m, n);
    const NumField* K =
        (m == 3 || m == 4) ? cyclotomic_quadratic(m) : NumField::rationals();
    RawModelT<NFElem> R;
    R.label = pre.label;
    R.family = pre.family;
    for (auto& [g, k] : pre.removed) R.removed.emplace_back(nf_bipoly(K, g), k);
    if (m == 3 || m == 4)
        R.F = conjugate_factor(pre.F, K);
    else
        R.F = nf_bipoly(K, pre.F);
    return R;
}

// Mod-p raw model with one component selected for m = 3, 4 (requires a
// split prime, p = 1 mod m)
inline RawModelT<Fq> raw_model_fp_split(int m, int n, const Int& p) {
    RawModelT<Fq> R = raw_model_fp(m, n, p);
    if (m == 3 || m == 4) {
        if (p % m != 1)
            throw std::domain_error("raw_model_fp_split: need a split prime");
        R.F = component_factor(R.F);
    }
    return R;
}

}  // namespace mdtk
