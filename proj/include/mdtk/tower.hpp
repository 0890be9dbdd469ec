#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "mdtk/fq.hpp"
#include "mdtk/poly.hpp"

namespace mdtk {

// Extension of a finite field by a root of an irreducible polynomial,
// realized as an F_p context with an explicit modulus.  The modulus is the
// minimal polynomial of a primitive element found by linear algebra, so no
// polynomial root-finding over large fields is ever performed.
struct TowerExt {
    const FqCtx* ctx = nullptr;  // the extension field over F_p
    FqEmbedding emb;             // base field -> ctx
    Fq root;                     // image in ctx of a root of the defining poly
};

namespace tower_detail {

// elements of kc[z]/(h) as coefficient vectors over kc, length deg h
using KVec = std::vector<Fq>;

inline KVec kv_mul_z(const KVec& a, const Poly<Fq>& h, const FqCtx* kc) {
    size_t r = a.size();
    KVec b(r, Fq(kc, 0));
    Fq top = a[r - 1];
    for (size_t i = r - 1; i > 0; --i) b[i] = a[i - 1];
    b[0] = Fq(kc, 0);
    if (!is_zero(top))
        for (size_t i = 0; i < r; ++i) b[i] = b[i] - top * (h.coeff(static_cast<int>(i)) + Fq(kc, 0));
    return b;
}

inline KVec kv_scale(const KVec& a, const Fq& s) {
    KVec b = a;
    for (auto& v : b) v = v * s;
    return b;
}

inline KVec kv_add(const KVec& a, const KVec& b) {
    KVec c = a;
    for (size_t i = 0; i < c.size(); ++i) c[i] = c[i] + b[i];
    return c;
}

// flatten to F_p coordinates (machine words; p is assumed small)
inline std::vector<long> kv_flatten(const KVec& a, int dkc) {
    std::vector<long> out;
    out.reserve(a.size() * static_cast<size_t>(dkc));
    for (auto& v : a) {
        for (int i = 0; i < dkc; ++i) {
            if (v.ctx && i < static_cast<int>(v.c.size()))
                out.push_back(static_cast<long>(v.c[static_cast<size_t>(i)].get_si()));
            else
                out.push_back(0);
        }
    }
    return out;
}

struct SingularMatrix : std::logic_error {
    SingularMatrix() : std::logic_error("tower: singular power matrix") {}
};

// solve A x = t over F_p given A as column vectors (square, invertible)
struct FpSolver {
    long p;
    int n;
    std::vector<std::vector<long>> m;  // row-reduced [A | I]
    std::vector<int> pivot_col;

    FpSolver(long pp, const std::vector<std::vector<long>>& cols) : p(pp) {
        n = static_cast<int>(cols.size());
        m.assign(static_cast<size_t>(n), std::vector<long>(static_cast<size_t>(2 * n), 0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = cols[static_cast<size_t>(j)][static_cast<size_t>(i)];
        for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(n + i)] = 1;
        for (int col = 0, row = 0; col < n && row < n; ++col, ++row) {
            int pr = -1;
            for (int i = row; i < n; ++i)
                if (m[static_cast<size_t>(i)][static_cast<size_t>(col)] != 0) { pr = i; break; }
            if (pr < 0) throw SingularMatrix{};
            std::swap(m[static_cast<size_t>(pr)], m[static_cast<size_t>(row)]);
            long iv = inv_mod(m[static_cast<size_t>(row)][static_cast<size_t>(col)]);
            for (int j = col; j < 2 * n; ++j)
                m[static_cast<size_t>(row)][static_cast<size_t>(j)] = m[static_cast<size_t>(row)][static_cast<size_t>(j)] * iv % p;
            for (int i = 0; i < n; ++i) {
                if (i == row) continue;
                long f = m[static_cast<size_t>(i)][static_cast<size_t>(col)];
                if (f == 0) continue;
                for (int j = col; j < 2 * n; ++j) {
                    m[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                        (m[static_cast<size_t>(i)][static_cast<size_t>(j)] - f * m[static_cast<size_t>(row)][static_cast<size_t>(j)]) % p;
                    if (m[static_cast<size_t>(i)][static_cast<size_t>(j)] < 0) m[static_cast<size_t>(i)][static_cast<size_t>(j)] += p;
                }
            }
        }
    }
    long inv_mod(long a) const {
        long t = 0, nt = 1, r = p, nr = a % p;
        while (nr != 0) {
            long q = r / nr;
            t -= q * nt; std::swap(t, nt);
            r -= q * nr; std::swap(r, nr);
        }
        if (r != 1) throw std::logic_error("tower: not invertible");
        return (t % p + p) % p;
    }
    std::vector<long> solve(const std::vector<long>& t) const {
        std::vector<long> x(static_cast<size_t>(n), 0);
        for (int i = 0; i < n; ++i) {
            long s = 0;
            for (int j = 0; j < n; ++j)
                s = (s + m[static_cast<size_t>(i)][static_cast<size_t>(n + j)] * (t[static_cast<size_t>(j)] % p)) % p;
            x[static_cast<size_t>(i)] = (s % p + p) % p;
        }
        return x;
    }
};

}  // namespace tower_detail

// identity embedding of a context into itself
inline FqEmbedding fq_identity(const FqCtx* k) {
    Fq g = k->d > 1 ? Fq::gen(k) : Fq(k, 0);
    return FqEmbedding{k, k, g};
}

// composition: (k0 -> k1) then (k1 -> k2)
inline FqEmbedding fq_compose(const FqEmbedding& a, const FqEmbedding& b) {
    if (a.dst != b.src) throw std::domain_error("fq_compose: mismatched embeddings");
    Fq gi = a.src->d > 1 ? b.map(a.gen_image) : Fq(b.dst, 0);
    return FqEmbedding{a.src, b.dst, gi};
}

// extension of kc by a root of the monic irreducible h in kc[T]
inline TowerExt tower_ext(const FqCtx* kc, const Poly<Fq>& h) {
    using namespace tower_detail;
    int r = h.deg();
    if (r < 1) throw std::domain_error("tower_ext: constant polynomial");
    Poly<Fq> hm = make_monic(h);
    if (r == 1) {
        TowerExt t;
        t.ctx = kc;
        t.emb = fq_identity(kc);
        t.root = -(hm.coeff(0) + Fq(kc, 0));
        return t;
    }
    if (kc->prime_field()) {
        // the modulus can be used directly
        std::vector<Int> f;
        for (int i = 0; i <= r; ++i) f.push_back((hm.coeff(i) + Fq(kc, 0)).c[0]);
        TowerExt t;
        t.ctx = fqctx_with_modulus(kc->p, std::move(f));
        t.emb = FqEmbedding{kc, t.ctx, Fq(t.ctx, 0)};
        t.root = Fq::gen(t.ctx);
        return t;
    }
    long p = static_cast<long>(kc->p.get_ui());
    int dkc = kc->d;
    int n = r * dkc;
    Fq g = Fq::gen(kc);
    // candidate primitive elements beta = u z + w, scanned until the powers
    // of beta span the whole field
    std::vector<std::pair<Fq, Fq>> cands;
    for (long c = 0; c < p; ++c) cands.emplace_back(Fq(kc, 1), Fq(kc, c) * g);
    for (long c = 1; c < p; ++c) cands.emplace_back(g + Fq(kc, c), Fq(kc, 0));
    cands.emplace_back(g, Fq(kc, 1));
    for (auto& [u, w] : cands) {
        // beta = u z + w as a vector over kc
        KVec beta(static_cast<size_t>(r), Fq(kc, 0));
        beta[0] = w;
        beta[1] = u;
        // powers beta^0 .. beta^n
        std::vector<KVec> pw;
        KVec cur(static_cast<size_t>(r), Fq(kc, 0));
        cur[0] = Fq(kc, 1);
        pw.push_back(cur);
        for (int i = 1; i <= n; ++i) {
            // cur *= beta: cur*u shifted via z plus cur*w
            KVec a = kv_scale(cur, u);
            a = kv_mul_z(a, hm, kc);
            cur = kv_add(a, kv_scale(cur, w));
            pw.push_back(cur);
        }
        std::vector<std::vector<long>> cols;
        for (int i = 0; i < n; ++i) cols.push_back(kv_flatten(pw[static_cast<size_t>(i)], dkc));
        // attempt to invert the power matrix; failure means beta is not primitive
        try {
            FpSolver solver(p, cols);
            // minimal polynomial of beta: solve powers for beta^n
            auto psi = solver.solve(kv_flatten(pw[static_cast<size_t>(n)], dkc));
            std::vector<Int> f(static_cast<size_t>(n) + 1, Int(0));
            for (int i = 0; i < n; ++i) {
                long v = (p - psi[static_cast<size_t>(i)] % p) % p;
                f[static_cast<size_t>(i)] = Int(v);
            }
            f[static_cast<size_t>(n)] = 1;
            TowerExt t;
            t.ctx = fqctx_with_modulus(kc->p, std::move(f));
            // express gen(kc) and z in beta-power coordinates
            KVec gv(static_cast<size_t>(r), Fq(kc, 0));
            gv[0] = g;
            KVec zv(static_cast<size_t>(r), Fq(kc, 0));
            zv[1] = Fq(kc, 1);
            auto gx = solver.solve(kv_flatten(gv, dkc));
            auto zx = solver.solve(kv_flatten(zv, dkc));
            std::vector<Int> gc(gx.begin(), gx.end()), zc(zx.begin(), zx.end());
            Fq gi = Fq::from_coeffs(t.ctx, std::move(gc));
            t.emb = FqEmbedding{kc, t.ctx, gi};
            t.root = Fq::from_coeffs(t.ctx, std::move(zc));
            // sanity: the root must satisfy the lifted polynomial
            Fq acc(t.ctx, 0);
            for (int i = r; i >= 0; --i) acc = acc * t.root + t.emb.map(hm.coeff(i) + Fq(kc, 0));
            if (!is_zero(acc)) throw std::logic_error("tower_ext: root check failed");
            return t;
        } catch (const SingularMatrix&) {
            continue;
        }
    }
    throw std::logic_error("tower_ext: no primitive element found");
}

}  // namespace mdtk
