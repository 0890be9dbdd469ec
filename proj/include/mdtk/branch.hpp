#pragma once

#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mdtk/lser.hpp"

namespace mdtk {

// raised when a geometric branch needs coefficients outside the working
// field; `need` is the degree of the missing extension over it
struct FieldTooSmall : std::runtime_error {
    int need;
    explicit FieldTooSmall(int n)
        : std::runtime_error("branch coefficients need a field extension"), need(n) {}
};

namespace ff_detail {

inline BiPoly<Fq> bipoly_dy(const BiPoly<Fq>& F) {
    BiPoly<Fq> r(F.vx, F.vy);
    for (auto& [e, v] : F.c)
        if (e.second > 0) {
            Fq c = v * from_int_like(v, e.second);
            if (!is_zero(c)) r.add_term(e.first, e.second - 1, c);
        }
    return r;
}

inline BiPoly<Fq> map_bipoly(const BiPoly<Fq>& F, const FqEmbedding& em) {
    BiPoly<Fq> r(F.vx, F.vy);
    for (auto& [e, v] : F.c) r.c[e] = em.map(v);
    return r;
}

inline Poly<Fq> ser_trunc(Poly<Fq> f, int n) {
    if (static_cast<int>(f.c.size()) > n) f.c.resize(static_cast<size_t>(n));
    f.trim();
    return f;
}

// series inverse mod x^n, f(0) != 0
inline Poly<Fq> ser_inv(const Poly<Fq>& f, int n, const FqCtx* k) {
    Poly<Fq> r;
    r.c.assign(static_cast<size_t>(n), Fq(k, 0));
    Fq l = inv(f.coeff(0) + Fq(k, 0));
    r.c[0] = l;
    for (int i = 1; i < n; ++i) {
        Fq s(k, 0);
        for (int j = 1; j <= i; ++j) {
            Fq fj = f.coeff(j);
            if (is_zero(fj)) continue;
            s = s + fj * r.c[static_cast<size_t>(i - j)];
        }
        r.c[static_cast<size_t>(i)] = -(l * s);
    }
    r.trim();
    return r;
}

// H(xi, eta(xi)) mod xi^n
inline Poly<Fq> ser_subst(const BiPoly<Fq>& H, const Poly<Fq>& eta, int n,
                          const FqCtx* k) {
    auto rows = H.by_y();
    Poly<Fq> acc;
    for (size_t j = rows.size(); j-- > 0;) {
        acc = ser_trunc(acc * eta, n);
        acc = acc + rows[j];
    }
    return ser_trunc(acc, n);
}

// unique power-series branch eta(xi), eta(0) = 0, when dH/deta(0,0) != 0
inline Poly<Fq> hensel_eta(const BiPoly<Fq>& H, const FqCtx* k, int prec) {
    BiPoly<Fq> Hy = bipoly_dy(H);
    Poly<Fq> eta;
    int cur = 1;
    while (cur < prec) {
        cur = std::min(2 * cur, prec);
        Poly<Fq> num = ser_subst(H, eta, cur, k);
        Poly<Fq> den = ser_subst(Hy, eta, cur, k);
        eta = ser_trunc(eta - num * ser_inv(den, cur, k), cur);
    }
    return eta;
}

}  // namespace ff_detail

// One geometric branch at the origin of a plane curve germ: xi = t^e and
// eta = eta(t), coefficients in k (eta[i] multiplies t^i; eta[0] = 0)
struct BranchSer {
    const FqCtx* k = nullptr;
    int e = 1;
    std::vector<Fq> eta;
};

// All geometric branches of H at (0,0) with coefficients in the field of H.
// Throws FieldTooSmall if some branch lives in a proper extension.
inline std::vector<BranchSer> puiseux_branches(const BiPoly<Fq>& H_in,
                                               const FqCtx* k, int prec,
                                               int depth = 0) {
    if (depth > 60) throw std::logic_error("puiseux_branches: runaway recursion");
    std::vector<BranchSer> out;
    BiPoly<Fq> H = H_in;
    if (H.zero()) throw std::domain_error("puiseux_branches: zero polynomial");
    // constant term nonzero: no branch through the origin
    {
        auto it = H.c.find({0, 0});
        if (it != H.c.end() && !is_zero(it->second)) return out;
    }
    // split off an exact eta = 0 branch
    {
        bool divisible = true;
        for (auto& [e, v] : H.c)
            if (e.second == 0 && !is_zero(v)) { divisible = false; break; }
        if (divisible) {
            BranchSer b;
            b.k = k;
            b.e = 1;
            b.eta.assign(static_cast<size_t>(prec), Fq(k, 0));
            out.push_back(std::move(b));
            BiPoly<Fq> H2(H.vx, H.vy);
            for (auto& [e, v] : H.c) H2.c[{e.first, e.second - 1}] = v;
            auto rest = puiseux_branches(H2, k, prec, depth + 1);
            for (auto& r : rest) out.push_back(std::move(r));
            return out;
        }
    }
    // regular in eta: a single Hensel branch
    {
        auto it = H.c.find({0, 1});
        bool others = false;
        for (auto& [e, v] : H.c)
            if (e.first == 0 && e.second > 1 && !is_zero(v)) { others = true; break; }
        (void)others;
        if (it != H.c.end() && !is_zero(it->second)) {
            Poly<Fq> eta = ff_detail::hensel_eta(H, k, prec);
            BranchSer b;
            b.k = k;
            b.e = 1;
            b.eta.assign(static_cast<size_t>(prec), Fq(k, 0));
            for (int i = 1; i < prec && i <= eta.deg(); ++i)
                b.eta[static_cast<size_t>(i)] = eta.coeff(i) + Fq(k, 0);
            out.push_back(std::move(b));
            return out;
        }
    }
    // Newton polygon: minimal i per j, lower hull from (i0,0) to (0,j0)
    int dy = H.deg_y();
    const int INF = 1 << 28;
    std::vector<int> mi(static_cast<size_t>(dy) + 1, INF);
    for (auto& [e, v] : H.c)
        if (!is_zero(v)) mi[static_cast<size_t>(e.second)] = std::min(mi[static_cast<size_t>(e.second)], e.first);
    int j0 = -1;
    for (int j = 1; j <= dy; ++j)
        if (mi[static_cast<size_t>(j)] == 0) { j0 = j; break; }
    if (j0 < 0) throw std::logic_error("puiseux_branches: xi divides the germ");
    if (mi[0] == INF) throw std::logic_error("puiseux_branches: eta split missed");
    std::vector<std::pair<int, int>> pts;  // (i, j), j ascending
    for (int j = 0; j <= j0; ++j)
        if (mi[static_cast<size_t>(j)] < INF) pts.emplace_back(mi[static_cast<size_t>(j)], j);
    // convex hull nearest the origin (cross product keeps right turns)
    std::vector<std::pair<int, int>> hull;
    for (auto& p : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            long cr = static_cast<long>(b.first - a.first) * (p.second - a.second) -
                      static_cast<long>(b.second - a.second) * (p.first - a.first);
            if (cr >= 0) hull.pop_back();
            else break;
        }
        hull.push_back(p);
    }
    for (size_t ei = 0; ei + 1 < hull.size(); ++ei) {
        auto [ia, ja] = hull[ei];
        auto [ib, jb] = hull[ei + 1];
        int di = ia - ib, dj = jb - ja;
        if (di <= 0 || dj <= 0) continue;  // vertical/horizontal edge: no branch
        int g = std::gcd(di, dj);
        int p = di / g, q = dj / g;
        // edge polynomial phi(T) = sum over segment lattice points
        Poly<Fq> phi;
        phi.c.assign(static_cast<size_t>(g) + 1, Fq(k, 0));
        for (int s = 0; s <= g; ++s) {
            auto it = H.c.find({ia - s * p, ja + s * q});
            if (it != H.c.end()) phi.c[static_cast<size_t>(s)] = it->second + Fq(k, 0);
        }
        phi.trim();
        for (auto& [fac, mult] : fq_factor(phi)) {
            if (fac.deg() > 1) throw FieldTooSmall(fac.deg());
            // phi is a polynomial in u = c^q; the leading branch coefficient
            // is a q-th root of its root
            Fq u = -fac.coeff(0);
            if (is_zero(u)) continue;
            Fq c;
            if (q == 1) {
                c = u;
            } else {
                Poly<Fq> tq;
                tq.c.assign(static_cast<size_t>(q) + 1, Fq(k, 0));
                tq.c[0] = -u;
                tq.c[static_cast<size_t>(q)] = Fq(k, 1);
                int need = q + 1;
                bool found = false;
                for (auto& [rf, rm] : fq_factor(tq)) {
                    if (rf.deg() == 1 && !found) {
                        c = -rf.coeff(0);
                        found = true;
                    }
                    need = std::min(need, rf.deg());
                }
                if (!found) throw FieldTooSmall(need);
            }
            // H1(xi1, eta1) = H(xi1^q, xi1^p (c + eta1)) / xi1^(q ia + p ja)
            int m = q * ia + p * ja;
            std::vector<std::vector<Fq>> cpow;  // (c + eta1)^j coefficients
            cpow.push_back({Fq(k, 1)});
            for (int j = 1; j <= dy; ++j) {
                std::vector<Fq> nx(cpow.back().size() + 1, Fq(k, 0));
                for (size_t t = 0; t < cpow.back().size(); ++t) {
                    nx[t] = nx[t] + cpow.back()[t] * c;
                    nx[t + 1] = nx[t + 1] + cpow.back()[t];
                }
                cpow.push_back(std::move(nx));
            }
            BiPoly<Fq> H1(H.vx, H.vy);
            for (auto& [e, v] : H.c) {
                int xe = q * e.first + p * e.second - m;
                if (xe >= prec * q + p * dy + 4) continue;  // beyond any needed precision
                auto& pw = cpow[static_cast<size_t>(e.second)];
                for (size_t t = 0; t < pw.size(); ++t) {
                    if (is_zero(pw[t])) continue;
                    Fq add = v * pw[t];
                    auto key = std::make_pair(xe, static_cast<int>(t));
                    auto it2 = H1.c.find(key);
                    if (it2 == H1.c.end()) H1.c[key] = add;
                    else {
                        it2->second = it2->second + add;
                        if (is_zero(it2->second)) H1.c.erase(it2);
                    }
                }
            }
            auto sub = puiseux_branches(H1, k, prec, depth + 1);
            for (auto& b1 : sub) {
                BranchSer b;
                b.k = k;
                b.e = q * b1.e;
                b.eta.assign(static_cast<size_t>(prec), Fq(k, 0));
                int base = p * b1.e;
                if (base < prec) b.eta[static_cast<size_t>(base)] = c;
                for (size_t i = 1; i < b1.eta.size(); ++i) {
                    int ex = base + static_cast<int>(i);
                    if (ex < prec) b.eta[static_cast<size_t>(ex)] = b.eta[static_cast<size_t>(ex)] + b1.eta[i];
                }
                out.push_back(std::move(b));
            }
        }
    }
    return out;
}

}  // namespace mdtk
