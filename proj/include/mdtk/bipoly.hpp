#pragma once

#include <cctype>
#include <cstring>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mdtk/poly.hpp"
#include "mdtk/rat.hpp"

namespace mdtk {

// Sparse bivariate polynomial over a field K.  Exponent pairs map to
// nonzero coefficients; the first variable is lexicographically dominant.
template <class K>
struct BiPoly {
    std::string vx = "x", vy = "y";
    std::map<std::pair<int, int>, K> c;

    BiPoly() = default;
    BiPoly(std::string x, std::string y) : vx(std::move(x)), vy(std::move(y)) {}

    static BiPoly constant(const K& v, std::string x = "x", std::string y = "y") {
        BiPoly p(std::move(x), std::move(y));
        if (!is_zero(v)) p.c[{0, 0}] = v;
        return p;
    }
    static BiPoly monomial(const K& v, int i, int j, std::string x = "x",
                           std::string y = "y") {
        BiPoly p(std::move(x), std::move(y));
        if (!is_zero(v)) p.c[{i, j}] = v;
        return p;
    }

    bool zero() const { return c.empty(); }
    int deg_x() const {
        int d = -1;
        for (auto& [e, v] : c) d = std::max(d, e.first);
        return d;
    }
    int deg_y() const {
        int d = -1;
        for (auto& [e, v] : c) d = std::max(d, e.second);
        return d;
    }
    int total_deg() const {
        int d = -1;
        for (auto& [e, v] : c) d = std::max(d, e.first + e.second);
        return d;
    }
    size_t terms() const { return c.size(); }

    K coeff(int i, int j) const {
        auto it = c.find({i, j});
        if (it == c.end()) return zero_ex();
        return it->second;
    }
    K zero_ex() const {
        if (!c.empty()) return zero_like(c.begin()->second);
        return K{};
    }
    // leading term in lex order (vx dominant)
    std::pair<std::pair<int, int>, K> lead() const {
        if (zero()) throw std::domain_error("lead of zero polynomial");
        return *c.rbegin();
    }

    void add_term(int i, int j, const K& v) {
        if (is_zero(v)) return;
        auto it = c.find({i, j});
        if (it == c.end()) {
            c[{i, j}] = v;
        } else {
            it->second = it->second + v;
            if (is_zero(it->second)) c.erase(it);
        }
    }

    friend bool operator==(const BiPoly& a, const BiPoly& b) {
        if (a.c.size() != b.c.size()) return false;
        auto ia = a.c.begin(), ib = b.c.begin();
        for (; ia != a.c.end(); ++ia, ++ib)
            if (ia->first != ib->first || !(ia->second == ib->second)) return false;
        return true;
    }
    friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
        BiPoly r = a;
        for (auto& [e, v] : b.c) r.add_term(e.first, e.second, v);
        return r;
    }
    friend BiPoly operator-(const BiPoly& a) {
        BiPoly r = a;
        for (auto& [e, v] : r.c) v = -v;
        return r;
    }
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b) { return a + (-b); }
    friend BiPoly operator*(const BiPoly& a, const K& s) {
        BiPoly r(a.vx, a.vy);
        if (is_zero(s)) return r;
        for (auto& [e, v] : a.c) {
            K w = v * s;
            if (!is_zero(w)) r.c[e] = w;
        }
        return r;
    }
    friend BiPoly operator*(const K& s, const BiPoly& a) { return a * s; }

    // naive sparse product; the Kronecker path below takes over for large
    // operands with Rat coefficients
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        return bipoly_mul(a, b);
    }

    // coefficients of vy^j as dense polynomials in vx
    std::vector<Poly<K>> by_y() const {
        std::vector<Poly<K>> r(static_cast<size_t>(deg_y() + 1));
        if (zero()) return r;
        for (auto& [e, v] : c) {
            auto& p = r[static_cast<size_t>(e.second)];
            if (p.c.size() <= static_cast<size_t>(e.first))
                p.c.resize(static_cast<size_t>(e.first) + 1, zero_like(v));
            p.c[static_cast<size_t>(e.first)] = v;
        }
        for (auto& p : r) p.trim();
        return r;
    }
    static BiPoly from_by_y(const std::vector<Poly<K>>& rows, std::string x = "x",
                            std::string y = "y") {
        BiPoly r(std::move(x), std::move(y));
        for (size_t j = 0; j < rows.size(); ++j)
            for (int i = 0; i <= rows[j].deg(); ++i)
                if (!is_zero(rows[j].coeff(i)))
                    r.c[{i, static_cast<int>(j)}] = rows[j].coeff(i);
        return r;
    }

    BiPoly swapped_vars() const {
        BiPoly r(vy, vx);
        for (auto& [e, v] : c) r.c[{e.second, e.first}] = v;
        return r;
    }

    // substitute vy = y0
    Poly<K> eval_y(const K& y0) const {
        Poly<K> s;
        if (zero()) return s;
        std::map<int, K> acc;
        for (auto& [e, v] : c) {
            K term = v;
            for (int t = 0; t < e.second; ++t) term = term * y0;
            auto it = acc.find(e.first);
            if (it == acc.end()) acc[e.first] = term;
            else it->second = it->second + term;
        }
        std::vector<K> cc;
        int dmax = -1;
        for (auto& [i, v] : acc) dmax = std::max(dmax, i);
        if (dmax < 0) return s;
        cc.assign(static_cast<size_t>(dmax) + 1, zero_like(acc.begin()->second));
        for (auto& [i, v] : acc) cc[static_cast<size_t>(i)] = v;
        return Poly<K>(std::move(cc));
    }
    Poly<K> eval_x(const K& x0) const { return swapped_vars().eval_y(x0); }

    K eval(const K& x0, const K& y0) const { return eval_y(y0).eval(x0); }

    // substitute vy = p(vx): result univariate in vx
    Poly<K> subst_y(const Poly<K>& p) const {
        auto rows = by_y();
        Poly<K> r;
        for (size_t j = rows.size(); j-- > 0;) r = r * p + rows[j];
        return r;
    }

    BiPoly pow(long e) const {
        BiPoly r = BiPoly::constant(one_like(zero_ex()), vx, vy);
        if (zero()) {
            if (e == 0) throw std::domain_error("0^0 with empty exemplar");
            return *this;
        }
        r = BiPoly::constant(one_like(c.begin()->second), vx, vy);
        BiPoly b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }
};

// exemplar helpers so generic ring code works over BiPoly
template <class K>
bool is_zero(const BiPoly<K>& p) {
    return p.zero();
}
template <class K>
BiPoly<K> zero_like(const BiPoly<K>& p) {
    return BiPoly<K>(p.vx, p.vy);
}
template <class K>
BiPoly<K> one_like(const BiPoly<K>& p) {
    return BiPoly<K>::constant(one_like(p.zero_ex()), p.vx, p.vy);
}
template <class K>
BiPoly<K> from_int_like(const BiPoly<K>& p, long v) {
    return BiPoly<K>::constant(from_int_like(p.zero_ex(), v), p.vx, p.vy);
}

// ---------- multiplication ----------

template <class K>
BiPoly<K> bipoly_mul_naive(const BiPoly<K>& a, const BiPoly<K>& b) {
    BiPoly<K> r(a.vx, a.vy);
    for (auto& [ea, va] : a.c)
        for (auto& [eb, vb] : b.c)
            r.add_term(ea.first + eb.first, ea.second + eb.second, va * vb);
    return r;
}

namespace detail {

// pack integer coefficient slots into an mpz; slot s holds bits [s*B, (s+1)*B)
struct KroneckerPacker {
    size_t nslots;
    size_t slot_bytes;
    std::vector<unsigned char> buf;
    KroneckerPacker(size_t slots, size_t bytes)
        : nslots(slots), slot_bytes(bytes), buf(slots * bytes, 0) {}
    void put(size_t slot, const Int& v) {  // v >= 0, fits in slot
        size_t count = 0;
        mpz_export(buf.data() + slot * slot_bytes, &count, -1, 1, 0, 0,
                   v.get_mpz_t());
    }
    Int to_int() const {
        Int r;
        mpz_import(r.get_mpz_t(), buf.size(), -1, 1, 0, 0, buf.data());
        return r;
    }
};

inline Int slot_value(const Int& big, size_t slot, size_t slot_bits) {
    Int r;
    mpz_fdiv_q_2exp(r.get_mpz_t(), big.get_mpz_t(),
                    static_cast<mp_bitcnt_t>(slot * slot_bits));
    mpz_fdiv_r_2exp(r.get_mpz_t(), r.get_mpz_t(),
                    static_cast<mp_bitcnt_t>(slot_bits));
    return r;
}

}  // namespace detail

// Kronecker-substitution product for integer-content rational coefficients:
// clear denominators, pack both signs separately, multiply once per sign
// combination with GMP, unpack.
inline BiPoly<Rat> bipoly_mul_kronecker(const BiPoly<Rat>& a, const BiPoly<Rat>& b) {
    Int da(1), db(1);
    for (auto& [e, v] : a.c) da = lcm(da, den(v));
    for (auto& [e, v] : b.c) db = lcm(db, den(v));

    int axd = a.deg_x(), ayd = a.deg_y(), bxd = b.deg_x(), byd = b.deg_y();
    size_t stride = static_cast<size_t>(ayd + byd + 1);
    size_t nslots = static_cast<size_t>(axd + bxd + 1) * stride;

    size_t maxbits_a = 0, maxbits_b = 0;
    for (auto& [e, v] : a.c)
        maxbits_a = std::max(maxbits_a,
                             mpz_sizeinbase(Int(num(v) * da / den(v)).get_mpz_t(), 2));
    for (auto& [e, v] : b.c)
        maxbits_b = std::max(maxbits_b,
                             mpz_sizeinbase(Int(num(v) * db / den(v)).get_mpz_t(), 2));
    size_t cross = std::min(a.c.size(), b.c.size());
    size_t guard = 2;
    size_t nb = 1;
    while ((size_t(1) << nb) < cross) ++nb;
    size_t slot_bits = ((maxbits_a + maxbits_b + nb + guard + 7) / 8) * 8;
    size_t slot_bytes = slot_bits / 8;

    detail::KroneckerPacker ap(nslots, slot_bytes), an(nslots, slot_bytes),
        bp(nslots, slot_bytes), bn(nslots, slot_bytes);
    for (auto& [e, v] : a.c) {
        Int iv = num(v) * da / den(v);
        size_t slot = static_cast<size_t>(e.first) * stride + static_cast<size_t>(e.second);
        if (sgn(iv) >= 0) ap.put(slot, iv);
        else an.put(slot, -iv);
    }
    for (auto& [e, v] : b.c) {
        Int iv = num(v) * db / den(v);
        size_t slot = static_cast<size_t>(e.first) * stride + static_cast<size_t>(e.second);
        if (sgn(iv) >= 0) bp.put(slot, iv);
        else bn.put(slot, -iv);
    }
    Int AP = ap.to_int(), AN = an.to_int(), BP = bp.to_int(), BN = bn.to_int();
    Int pos = AP * BP + AN * BN;
    Int neg = AP * BN + AN * BP;

    BiPoly<Rat> r(a.vx, a.vy);
    Rat scale(1);
    scale /= Rat(da * db);
    for (size_t s = 0; s < nslots; ++s) {
        Int cp = detail::slot_value(pos, s, slot_bits);
        Int cn = detail::slot_value(neg, s, slot_bits);
        Int v = cp - cn;
        if (sgn(v) == 0) continue;
        int i = static_cast<int>(s / stride);
        int j = static_cast<int>(s % stride);
        Rat coeff = Rat(v) * scale;
        if (!is_zero(coeff)) r.c[{i, j}] = coeff;
    }
    return r;
}

template <class K>
BiPoly<K> bipoly_mul(const BiPoly<K>& a, const BiPoly<K>& b) {
    return bipoly_mul_naive(a, b);
}

inline BiPoly<Rat> bipoly_mul(const BiPoly<Rat>& a, const BiPoly<Rat>& b) {
    if (a.zero() || b.zero()) return BiPoly<Rat>(a.vx, a.vy);
    if (std::min(a.c.size(), b.c.size()) >= 24) return bipoly_mul_kronecker(a, b);
    return bipoly_mul_naive(a, b);
}

// ---------- exact division ----------

// divides with respect to vy as the main variable; coefficients are
// polynomials in vx which must divide exactly at every step
template <class K>
std::optional<BiPoly<K>> exact_div(const BiPoly<K>& a, const BiPoly<K>& b) {
    if (b.zero()) throw std::domain_error("bivariate division by zero");
    if (a.zero()) return a;
    // main variable: prefer one where divisor has positive degree
    if (b.deg_y() == 0 && b.deg_x() > 0) {
        auto q = exact_div(a.swapped_vars(), b.swapped_vars());
        if (!q) return std::nullopt;
        return q->swapped_vars();
    }
    auto ra = a.by_y();
    auto rb = b.by_y();
    int dyb = static_cast<int>(rb.size()) - 1;
    int dya = static_cast<int>(ra.size()) - 1;
    if (dya < dyb) return std::nullopt;
    const Poly<K>& lead = rb.back();
    std::vector<Poly<K>> q(static_cast<size_t>(dya - dyb + 1));
    for (int k = dya - dyb; k >= 0; --k) {
        Poly<K>& top = ra[static_cast<size_t>(k + dyb)];
        if (top.zero()) continue;
        auto qq = exact_div(top, lead);
        if (!qq) return std::nullopt;
        q[static_cast<size_t>(k)] = *qq;
        for (int j = 0; j <= dyb; ++j) {
            ra[static_cast<size_t>(k + j)] =
                ra[static_cast<size_t>(k + j)] - *qq * rb[static_cast<size_t>(j)];
        }
    }
    for (auto& rr : ra)
        if (!rr.zero()) return std::nullopt;
    return BiPoly<K>::from_by_y(q, a.vx, a.vy);
}

// largest k with g^k | f, plus the cofactor
template <class K>
std::pair<BiPoly<K>, int> remove_known_factor(const BiPoly<K>& f, const BiPoly<K>& g) {
    if (g.zero() || (g.deg_x() == 0 && g.deg_y() == 0))
        throw std::domain_error("remove_known_factor: factor must be nonconstant");
    BiPoly<K> cur = f;
    int k = 0;
    while (!cur.zero()) {
        auto q = exact_div(cur, g);
        if (!q) break;
        cur = *q;
        ++k;
    }
    return {cur, k};
}

// ---------- content normalization (rational coefficients) ----------

inline Rat bipoly_content(const BiPoly<Rat>& p) {
    if (p.zero()) return Rat(0);
    Int g(0), d(1);
    for (auto& [e, v] : p.c) {
        g = gcd(g, num(v));
        d = lcm(d, den(v));
    }
    Rat c(g, d);
    c.canonicalize();
    if (sgn(p.lead().second) < 0) c = -c;
    return c;
}

// primitive with positive lexicographic leading coefficient
inline BiPoly<Rat> normalized(const BiPoly<Rat>& p) {
    if (p.zero()) return p;
    return p * inv(bipoly_content(p));
}

// ---------- resultant ----------

// resultant with respect to vy, computed as the determinant of the
// Sylvester matrix over K[x] by fraction-free (Bareiss) elimination --
// the y-degrees here are tiny, so the small dense determinant wins on
// simplicity and is exact over any coefficient field
template <class K>
Poly<K> bipoly_resultant_y(const BiPoly<K>& A, const BiPoly<K>& B) {
    if (A.zero() || B.zero())
        throw std::domain_error("resultant of zero polynomial");
    int m = A.deg_y(), n = B.deg_y();
    if (m <= 0 || n <= 0)
        throw std::domain_error("resultant: inputs must have positive degree in the variable");
    auto fa = A.by_y();
    auto fb = B.by_y();
    int N = m + n;
    K one = one_like(A.c.begin()->second);
    std::vector<std::vector<Poly<K>>> M(static_cast<size_t>(N),
                                        std::vector<Poly<K>>(static_cast<size_t>(N)));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k)
            M[static_cast<size_t>(r)][static_cast<size_t>(r + m - k)] =
                fa[static_cast<size_t>(k)];
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k)
            M[static_cast<size_t>(n + r)][static_cast<size_t>(r + n - k)] =
                fb[static_cast<size_t>(k)];

    Poly<K> prev = Poly<K>::constant(one);
    bool neg = false;
    for (int k = 0; k < N - 1; ++k) {
        size_t uk = static_cast<size_t>(k);
        if (M[uk][uk].zero()) {
            size_t swaprow = 0;
            bool found = false;
            for (size_t r = uk + 1; r < static_cast<size_t>(N); ++r)
                if (!M[r][uk].zero()) { swaprow = r; found = true; break; }
            if (!found) return Poly<K>();  // singular: common factor in y
            std::swap(M[uk], M[swaprow]);
            neg = !neg;
        }
        for (size_t i = uk + 1; i < static_cast<size_t>(N); ++i) {
            for (size_t j = uk + 1; j < static_cast<size_t>(N); ++j) {
                Poly<K> t = M[i][j] * M[uk][uk] - M[i][uk] * M[uk][j];
                auto q = exact_div(t, prev);
                if (!q) throw std::logic_error("bareiss: inexact division");
                M[i][j] = *q;
            }
            M[i][uk] = Poly<K>();
        }
        prev = M[uk][uk];
    }
    Poly<K> det = M[static_cast<size_t>(N - 1)][static_cast<size_t>(N - 1)];
    return neg ? -det : det;
}

// resultant with respect to a named variable; result is univariate in the
// other variable, returned as a BiPoly in the same variable pair
template <class K>
BiPoly<K> resultant(const BiPoly<K>& A, const BiPoly<K>& B, const std::string& var) {
    if (A.zero() || B.zero())
        throw std::domain_error("resultant of zero polynomial");
    BiPoly<K> a = A, b = B;
    if (var == A.vx) {
        a = A.swapped_vars();
        b = B.swapped_vars();
    } else if (var != A.vy) {
        throw std::domain_error("resultant: unknown variable " + var);
    }
    if (a.deg_y() <= 0 || b.deg_y() <= 0)
        throw std::domain_error("resultant: degenerate input (constant in variable)");
    Poly<K> r = bipoly_resultant_y(a, b);
    BiPoly<K> out(a.vx, a.vy);
    for (int i = 0; i <= r.deg(); ++i)
        if (!is_zero(r.coeff(i))) out.c[{i, 0}] = r.coeff(i);
    if (var == A.vx) out = out.swapped_vars();
    return out;
}

// ---------- exact square root ----------

// integer-coefficient univariate square root (exact), or nullopt
inline std::optional<Poly<Rat>> poly_sqrt(const Poly<Rat>& h) {
    if (h.zero()) return Poly<Rat>();
    if (h.deg() % 2 != 0) return std::nullopt;
    int d = h.deg() / 2;
    // leading coefficient must be a rational square
    Rat lc = h.lc();
    if (sgn(lc) < 0) return std::nullopt;
    Int ln = num(lc), ld = den(lc);
    Int sn, sd;
    if (mpz_perfect_square_p(ln.get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(ld.get_mpz_t()) == 0) return std::nullopt;
    mpz_sqrt(sn.get_mpz_t(), ln.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), ld.get_mpz_t());
    Rat slc(sn, sd);
    slc.canonicalize();
    Poly<Rat> f = Poly<Rat>::monomial(slc, d);
    // solve top-down: coefficient of x^(d+k) in f^2 determines f_k
    for (int k = d - 1; k >= 0; --k) {
        // h_{d+k} = sum_{i+j = d+k} f_i f_j  ->  2*f_d*f_k + known
        Rat known(0);
        for (int i = k + 1; i <= d; ++i) {
            int j = d + k - i;
            if (j > d || j < 0 || j <= k) continue;
            known += f.coeff(i) * f.coeff(j);
        }
        Rat v = (h.coeff(d + k) - known) / (2 * slc);
        if (!is_zero(v)) {
            if (f.c.size() <= static_cast<size_t>(k)) { /* cannot happen, d>k */ }
            f.c[static_cast<size_t>(k)] = v;
        }
    }
    if (f * f != h) return std::nullopt;
    return f;
}

struct NotASquare {};

// exact square root up to a positive rational constant: returns F with
// F^2 = c*H after content normalization, or nullopt
inline std::optional<BiPoly<Rat>> exact_sqrt(const BiPoly<Rat>& H) {
    if (H.zero()) throw std::domain_error("exact_sqrt of zero");
    BiPoly<Rat> h = normalized(H);
    if (h.deg_y() == 0 && h.deg_x() == 0) return BiPoly<Rat>::constant(Rat(1), H.vx, H.vy);
    // choose main variable with positive degree
    bool swap = (h.deg_y() == 0);
    if (swap) h = h.swapped_vars();
    auto rows = h.by_y();
    int dy = static_cast<int>(rows.size()) - 1;
    if (dy % 2 != 0) return std::nullopt;
    int d = dy / 2;
    auto ltop = poly_sqrt(rows.back());
    if (!ltop) {
        // the normalized leading row may be a square only up to sign of
        // content; try its negation folded into the whole polynomial
        return std::nullopt;
    }
    std::vector<Poly<Rat>> f(static_cast<size_t>(d) + 1);
    f[static_cast<size_t>(d)] = *ltop;
    Poly<Rat> two_lead = *ltop * Rat(2);
    for (int k = d - 1; k >= 0; --k) {
        Poly<Rat> known;
        for (int i = k + 1; i <= d; ++i) {
            int j = d + k - i;
            if (j > d || j < 0 || j <= k) continue;
            known = known + f[static_cast<size_t>(i)] * f[static_cast<size_t>(j)];
        }
        Poly<Rat> target = rows[static_cast<size_t>(d + k)] - known;
        auto q = exact_div(target, two_lead);
        if (!q) return std::nullopt;
        f[static_cast<size_t>(k)] = *q;
    }
    BiPoly<Rat> F = BiPoly<Rat>::from_by_y(f, h.vx, h.vy);
    if (F * F != h) return std::nullopt;
    if (swap) F = F.swapped_vars();
    F.vx = H.vx;
    F.vy = H.vy;
    return normalized(F);
}

// ---------- text format ----------
// Sum of monomials with explicit '*' and '^', e.g. "7*q^12*t^4 + 56*q^11*t^3 - t^4".

inline std::string bipoly_to_string(const BiPoly<Rat>& p) {
    if (p.zero()) return "0";
    std::string s;
    // print highest lex terms first
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) {
        const auto& [e, v] = *it;
        Rat av = abs(v);
        std::string term;
        bool needs_coeff = (av != 1) || (e.first == 0 && e.second == 0);
        if (needs_coeff) term += av.get_str();
        auto emit = [&](const std::string& var, int ex) {
            if (ex == 0) return;
            if (!term.empty()) term += "*";
            term += var;
            if (ex > 1) term += "^" + std::to_string(ex);
        };
        emit(p.vx, e.first);
        emit(p.vy, e.second);
        if (s.empty()) {
            if (sgn(v) < 0) s += "-";
            s += term;
        } else {
            s += (sgn(v) < 0) ? " - " : " + ";
            s += term;
        }
    }
    return s;
}

// parse the text format; variable names are detected from the input and
// must match {vx, vy} when given
inline BiPoly<Rat> bipoly_parse(const std::string& text, const std::string& vx,
                                const std::string& vy) {
    BiPoly<Rat> p(vx, vy);
    size_t i = 0;
    auto skipws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skipws();
    if (i < text.size() && text.compare(i, 1, "0") == 0 && i + 1 == text.size())
        return p;
    int sign = 1;
    bool first = true;
    while (i < text.size()) {
        skipws();
        if (i >= text.size()) break;
        if (text[i] == '+') { sign = 1; ++i; skipws(); }
        else if (text[i] == '-') { sign = -1; ++i; skipws(); }
        else if (!first) throw std::runtime_error("bipoly_parse: expected + or - at " + std::to_string(i));
        first = false;
        // parse one monomial: factors joined by '*'
        Rat coeff(1);
        int ex = 0, ey = 0;
        bool any = false;
        while (true) {
            skipws();
            if (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])))) {
                size_t j = i;
                while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '/')) ++j;
                coeff *= parse_rat(text.substr(i, j - i));
                i = j;
                any = true;
            } else if (i < text.size() && (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
                size_t j = i;
                while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
                std::string var = text.substr(i, j - i);
                i = j;
                int e = 1;
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    size_t k = i;
                    while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
                    e = std::stoi(text.substr(i, k - i));
                    i = k;
                }
                if (var == vx) ex += e;
                else if (var == vy) ey += e;
                else throw std::runtime_error("bipoly_parse: unknown variable " + var);
                any = true;
            } else {
                throw std::runtime_error("bipoly_parse: expected factor at position " + std::to_string(i));
            }
            skipws();
            if (i < text.size() && text[i] == '*') { ++i; continue; }
            break;
        }
        if (!any) throw std::runtime_error("bipoly_parse: empty term");
        p.add_term(ex, ey, Rat(sign) * coeff);
    }
    return p;
}

}  // namespace mdtk
