#pragma once

#include <stdexcept>
#include <vector>

#include "mdtk/bipoly.hpp"
#include "mdtk/fq.hpp"

namespace mdtk {

struct PrecisionExhausted : std::runtime_error {
    PrecisionExhausted() : std::runtime_error("series precision exhausted") {}
};

// Truncated Laurent series sum_i c[i] t^(off+i); coefficients are known for
// all exponents < lim.  A series that is zero to precision has empty c.
struct LSer {
    const FqCtx* k = nullptr;
    int off = 0;
    int lim = 0;  // knowledge bound (exclusive)
    std::vector<Fq> c;

    LSer() = default;
    LSer(const FqCtx* kk, int o, int l) : k(kk), off(o), lim(l) {}

    static LSer constant(const FqCtx* k, const Fq& v, int lim) {
        LSer r(k, 0, lim);
        if (!is_zero(v)) r.c.assign(1, v);
        r.normalize();
        return r;
    }
    static LSer monomial(const FqCtx* k, int e, int lim) {
        LSer r(k, e, lim);
        r.c.assign(1, Fq(k, 1));
        return r;
    }

    void normalize() {
        size_t s = 0;
        while (s < c.size() && is_zero(c[s])) ++s;
        if (s > 0) {
            c.erase(c.begin(), c.begin() + static_cast<long>(s));
            off += static_cast<int>(s);
        }
        while (!c.empty() && is_zero(c.back())) c.pop_back();
        if (off + static_cast<int>(c.size()) > lim)
            c.resize(static_cast<size_t>(lim - off));
        if (c.empty()) off = 0;
    }
    bool zero_to_prec() const { return c.empty(); }
    // order of the first known nonzero term; throws if zero to precision
    int ord() const {
        if (c.empty()) throw PrecisionExhausted{};
        return off;
    }
    Fq coeff(int e) const {
        if (e < off || e >= off + static_cast<int>(c.size())) return Fq(k, 0);
        return c[static_cast<size_t>(e - off)];
    }
};

inline LSer operator+(const LSer& a, const LSer& b) {
    if (a.c.empty()) {
        LSer r = b;
        r.lim = std::min(a.lim, b.lim);
        r.normalize();
        return r;
    }
    if (b.c.empty()) {
        LSer r = a;
        r.lim = std::min(a.lim, b.lim);
        r.normalize();
        return r;
    }
    LSer r(a.k ? a.k : b.k, std::min(a.off, b.off), std::min(a.lim, b.lim));
    int top = std::min(r.lim, std::max(a.off + static_cast<int>(a.c.size()),
                                       b.off + static_cast<int>(b.c.size())));
    if (top < r.off) top = r.off;
    r.c.assign(static_cast<size_t>(top - r.off), Fq(r.k, 0));
    for (size_t i = 0; i < a.c.size(); ++i) {
        int e = a.off + static_cast<int>(i);
        if (e < top) r.c[static_cast<size_t>(e - r.off)] = r.c[static_cast<size_t>(e - r.off)] + a.c[i];
    }
    for (size_t i = 0; i < b.c.size(); ++i) {
        int e = b.off + static_cast<int>(i);
        if (e < top) r.c[static_cast<size_t>(e - r.off)] = r.c[static_cast<size_t>(e - r.off)] + b.c[i];
    }
    r.normalize();
    return r;
}

inline LSer operator-(const LSer& a) {
    LSer r = a;
    for (auto& v : r.c) v = -v;
    return r;
}
inline LSer operator-(const LSer& a, const LSer& b) { return a + (-b); }

inline LSer operator*(const LSer& a, const LSer& b) {
    // unknown tails: the unknown part of one factor meets the order of the
    // other at lim(a)+ord(b) and lim(b)+ord(a)
    int va = a.c.empty() ? a.lim : a.off;
    int vb = b.c.empty() ? b.lim : b.off;
    int lim = std::min(va + b.lim, vb + a.lim);
    LSer r(a.k ? a.k : b.k, a.off + b.off, lim);
    if (a.c.empty() || b.c.empty()) {
        r.off = 0;
        return r;
    }
    int top = std::min(lim, a.off + b.off + static_cast<int>(a.c.size() + b.c.size()) - 1);
    r.c.assign(static_cast<size_t>(std::max(0, top - r.off)), Fq(r.k, 0));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (is_zero(a.c[i])) continue;
        for (size_t j = 0; j < b.c.size(); ++j) {
            int e = a.off + b.off + static_cast<int>(i + j);
            if (e >= top) break;
            r.c[static_cast<size_t>(e - r.off)] =
                r.c[static_cast<size_t>(e - r.off)] + a.c[i] * b.c[j];
        }
    }
    r.normalize();
    return r;
}

inline LSer operator*(const LSer& a, const Fq& s) {
    LSer r = a;
    for (auto& v : r.c) v = v * s;
    r.normalize();
    return r;
}

// inverse of a series with known nonzero leading term
inline LSer ls_inv(const LSer& a) {
    if (a.c.empty()) throw PrecisionExhausted{};
    int n = a.lim - a.off;  // relative precision available
    LSer r(a.k, -a.off, -a.off + n);
    r.c.assign(static_cast<size_t>(n), Fq(a.k, 0));
    Fq l = inv(a.c[0]);
    r.c[0] = l;
    for (int i = 1; i < n; ++i) {
        Fq s(a.k, 0);
        for (int j = 1; j <= i; ++j)
            s = s + a.coeff(a.off + j) * r.c[static_cast<size_t>(i - j)];
        r.c[static_cast<size_t>(i)] = -(l * s);
    }
    r.normalize();
    return r;
}

inline LSer ls_pow(const LSer& a, int e, const FqCtx* k, int lim) {
    LSer r = LSer::constant(k, Fq(k, 1), lim);
    for (int i = 0; i < e; ++i) r = r * a;
    return r;
}

// evaluation of a bivariate polynomial at a pair of Laurent series
inline LSer ls_eval(const BiPoly<Fq>& F, const LSer& X, const LSer& Y,
                    const FqCtx* k, int lim) {
    int dy = F.deg_y();
    auto rows = F.by_y();  // rows[j] in K[x]
    LSer acc(k, 0, lim);
    for (int j = dy; j >= 0; --j) {
        acc = acc * Y;
        // add rows[j](X)
        const Poly<Fq>& rj = rows[static_cast<size_t>(j)];
        LSer rv(k, 0, lim);
        for (int i = rj.deg(); i >= 0; --i) {
            rv = rv * X;
            rv = rv + LSer::constant(k, Fq(k, 0) + rj.coeff(i), lim);
        }
        acc = acc + rv;
    }
    return acc;
}

}  // namespace mdtk
