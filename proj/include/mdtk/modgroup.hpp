#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdtk/rat.hpp"

namespace mdtk {

// Label (m, n) refers to the curve X1(m, mn) with congruence subgroup
//   Gamma1(m, mn) = { [a b; c d] in SL2(Z) :
//                     a = d = 1 (mod mn), c = 0 (mod mn), b = 0 (mod m) }.
struct Label {
    int m = 1, n = 1;
    int level() const { return m * n; }         // mn
    int working_modulus() const { return m * m * n; }  // m^2 n
    friend bool operator<(const Label& a, const Label& b) {
        return std::pair(a.m, a.n) < std::pair(b.m, b.n);
    }
    friend bool operator==(const Label& a, const Label& b) {
        return a.m == b.m && a.n == b.n;
    }
    std::string str() const {
        return "(" + std::to_string(m) + "," + std::to_string(m * n) + ")";
    }
};

struct CurveInvariants {
    long index = 0;    // index of the image in PSL2(Z)
    long eps_inf = 0;  // cusp count
    long eps2 = 0, eps3 = 0;
    long genus = 0;
    Rat bound;  // Abramovich gonality lower bound (lambda1/24) * index
};

inline constexpr long kLambda1Num = 975, kLambda1Den = 4096;

namespace modgroup_detail {

using Mat = std::array<long, 4>;  // row major [a b; c d]

inline Mat mul(const Mat& x, const Mat& y, long M) {
    auto md = [M](long v) {
        v %= M;
        if (v < 0) v += M;
        return v;
    };
    return {md(x[0] * y[0] + x[1] * y[2]), md(x[0] * y[1] + x[1] * y[3]),
            md(x[2] * y[0] + x[3] * y[2]), md(x[2] * y[1] + x[3] * y[3])};
}

// all elements of the image of Gamma1(m,mn) in SL2(Z/M), M = m^2 n
inline std::vector<Mat> subgroup_elements(int m, int n) {
    long L = static_cast<long>(m) * n;  // level mn
    long M = static_cast<long>(m) * L;  // working modulus
    std::vector<Mat> H;
    if (M == 1) return {Mat{0, 0, 0, 0}};
    for (long ka = 0; ka < m; ++ka)
        for (long kd = 0; kd < m; ++kd)
            for (long kc = 0; kc < m; ++kc)
                for (long b = 0; b < M; b += m) {
                    long a = (1 + ka * L) % M, d = (1 + kd * L) % M,
                         c = (kc * L) % M;
                    long det = (a * d - b * c) % M;
                    if (det < 0) det += M;
                    if (det == 1) H.push_back({a, b, c, d});
                }
    return H;
}

}  // namespace modgroup_detail

// Right-coset space of Gamma1(m,mn) in SL2(Z), enumerated inside
// SL2(Z/m^2 n) with a per-coset invariant key.  Everything downstream
// (cusps, elliptic points, genus) reads off this space.
class CosetSpace {
  public:
    CosetSpace(int m, int n) : m_(m), n_(n), M_(static_cast<long>(m) * m * n) {
        using namespace modgroup_detail;
        H_ = subgroup_elements(m, n);
        if (H_.empty()) throw std::logic_error("empty congruence subgroup image");
        const Mat S{0, M_ - 1 == 0 ? 0 : M_ - 1, 1, 0};  // [0 -1; 1 0]
        const Mat T{1, 1 % std::max<long>(M_, 1), 0, 1};
        const Mat I{1 % std::max<long>(M_, 1), 0, 0, 1 % std::max<long>(M_, 1)};
        if (M_ == 1) {
            reps_ = {Mat{0, 0, 0, 0}};
            key_to_idx_[0] = 0;
        } else {
            std::vector<Mat> queue{I};
            key_to_idx_[canon_key(I)] = 0;
            reps_.push_back(I);
            for (size_t head = 0; head < queue.size(); ++head) {
                Mat g = queue[head];
                for (const Mat* gen : {&S, &T}) {
                    Mat h = mul(g, *gen, M_);
                    uint64_t k = canon_key(h);
                    if (!key_to_idx_.count(k)) {
                        key_to_idx_[k] = reps_.size();
                        reps_.push_back(h);
                        queue.push_back(h);
                    }
                }
            }
        }
        // completeness certificate for the key function
        Rat sl2_order(M_ * M_ * M_);
        long rest = M_;
        for (long p = 2; p * p <= rest; ++p)
            if (rest % p == 0) {
                sl2_order *= Rat(p * p - 1, p * p);
                while (rest % p == 0) rest /= p;
            }
        if (rest > 1) sl2_order *= Rat(rest * rest - 1, rest * rest);
        sl2_order.canonicalize();
        if (sl2_order != Rat(static_cast<long>(reps_.size()) *
                             static_cast<long>(H_.size())))
            throw std::logic_error("coset key is not a complete invariant for " +
                                   Label{m_, n_}.str());
        build_psl();
    }

    long sl2_cosets() const { return static_cast<long>(reps_.size()); }
    long psl2_index() const { return static_cast<long>(psl_size_); }

    CurveInvariants invariants() const {
        using namespace modgroup_detail;
        CurveInvariants inv;
        inv.index = psl2_index();
        if (M_ == 1) {
            inv.eps2 = inv.eps3 = 1;
            inv.eps_inf = 1;
            inv.genus = 0;
            inv.bound = Rat(kLambda1Num, kLambda1Den) / 24 * Rat(inv.index);
            return inv;
        }
        const Mat S{0, M_ - 1, 1, 0};
        const Mat T{1, 1, 0, 1};
        const Mat ST = mul(S, T, M_);
        // elliptic points: fixed points of the right action on PSL2 cosets
        for (size_t i = 0; i < reps_.size(); ++i) {
            if (psl_root_[i] != i) continue;  // one representative per PSL coset
            if (psl_of(mul(reps_[i], S, M_)) == i) ++inv.eps2;
            if (psl_of(mul(reps_[i], ST, M_)) == i) ++inv.eps3;
        }
        // cusps: orbits of T on PSL2 cosets
        std::set<size_t> seen;
        for (size_t i = 0; i < reps_.size(); ++i) {
            if (psl_root_[i] != i || seen.count(i)) continue;
            ++inv.eps_inf;
            size_t cur = i;
            while (!seen.count(cur)) {
                seen.insert(cur);
                cur = psl_of(mul(reps_[cur], T, M_));
            }
        }
        long twelve_g = 12 + inv.index - 3 * inv.eps2 - 4 * inv.eps3 - 6 * inv.eps_inf;
        if (twelve_g % 12 != 0)
            throw std::logic_error("non-integer genus: enumeration bug for " +
                                   Label{m_, n_}.str());
        inv.genus = twelve_g / 12;
        if (inv.genus < 0)
            throw std::logic_error("negative genus: enumeration bug");
        inv.bound = Rat(kLambda1Num, kLambda1Den) / 24 * Rat(inv.index);
        return inv;
    }

  private:
    int m_, n_;
    long M_;
    std::vector<modgroup_detail::Mat> H_;
    std::vector<modgroup_detail::Mat> reps_;
    std::map<uint64_t, size_t> key_to_idx_;
    std::vector<size_t> psl_root_;  // PSL2 coset representative index
    size_t psl_size_ = 0;

    // H-invariant of the coset Hg: bottom row mod mn, top row mod m.
    // Completeness (distinct cosets get distinct keys) is certified in the
    // constructor by the order count #cosets * |H| = |SL2(Z/M)|.
    uint64_t canon_key(const modgroup_detail::Mat& g) const {
        long L = static_cast<long>(m_) * n_;
        long c = g[2] % L, d = g[3] % L, a = g[0] % m_, b = g[1] % m_;
        return ((static_cast<uint64_t>(c) * 256 + d) * 256 + a) * 256 + b;
    }

    size_t idx_of(const modgroup_detail::Mat& g) const {
        auto it = key_to_idx_.find(canon_key(g));
        if (it == key_to_idx_.end())
            throw std::logic_error("coset not enumerated (BFS incomplete)");
        return it->second;
    }

    size_t psl_of(const modgroup_detail::Mat& g) const { return psl_root_[idx_of(g)]; }

    void build_psl() {
        using namespace modgroup_detail;
        psl_root_.resize(reps_.size());
        if (M_ == 1) {
            psl_root_[0] = 0;
            psl_size_ = 1;
            return;
        }
        for (size_t i = 0; i < reps_.size(); ++i) psl_root_[i] = i;
        for (size_t i = 0; i < reps_.size(); ++i) {
            Mat neg = reps_[i];
            for (auto& v : neg) v = (M_ - v) % M_;
            size_t j = idx_of(neg);
            size_t lo = std::min(i, j), hi = std::max(i, j);
            psl_root_[hi] = std::min(psl_root_[hi], lo);
        }
        // path-compress (negation is an involution, so one pass suffices)
        for (size_t i = 0; i < reps_.size(); ++i)
            psl_root_[i] = psl_root_[psl_root_[i]];
        std::set<size_t> roots(psl_root_.begin(), psl_root_.end());
        psl_size_ = roots.size();
    }
};

// closed formula for the PSL2 index (valid for level mn >= 5)
inline Rat psl2_index_formula(int m, int n) {
    long L = static_cast<long>(m) * n;
    Rat idx(static_cast<long>(m) * m * m * static_cast<long>(n) * n, 2);
    long rest = L;
    for (long p = 2; p * p <= rest; ++p)
        if (rest % p == 0) {
            idx *= Rat(p * p - 1, p * p);
            while (rest % p == 0) rest /= p;
        }
    if (rest > 1) idx *= Rat(rest * rest - 1, rest * rest);
    idx.canonicalize();
    return idx;
}

inline const CurveInvariants& invariants(int m, int n) {
    static std::map<std::pair<int, int>, CurveInvariants> cache;
    auto key = std::make_pair(m, n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    CosetSpace cs(m, n);
    CurveInvariants inv = cs.invariants();
    if (m * n >= 5) {
        Rat f = psl2_index_formula(m, n);
        if (f != Rat(inv.index))
            throw std::logic_error("index formula mismatch for " + Label{m, n}.str());
    }
    return cache.emplace(key, inv).first->second;
}

inline long psl2_index(int m, int n) { return invariants(m, n).index; }
inline long genus(int m, int n) { return invariants(m, n).genus; }

inline Rat abramovich_bound(int m, int n) {
    if (m * n >= 5)
        return Rat(kLambda1Num, kLambda1Den) / 24 * psl2_index_formula(m, n);
    return invariants(m, n).bound;
}

// candidate label sets of the degree-d strategy:
//   T1 = { (m,n) : phi(m) | d, B(m,mn) <= 2d },  T2 likewise with <= d.
// The scan over n terminates via the index lower bound m^2 n - 1.
struct CandidateSets {
    std::vector<Label> t1, t2;
};

inline long euler_phi(long m) {
    long r = m, rest = m;
    for (long p = 2; p * p <= rest; ++p)
        if (rest % p == 0) {
            r = r / p * (p - 1);
            while (rest % p == 0) rest /= p;
        }
    if (rest > 1) r = r / rest * (rest - 1);
    return r;
}

inline CandidateSets candidate_sets(int d) {
    CandidateSets out;
    Rat lam = Rat(kLambda1Num, kLambda1Den) / 24;
    // phi(m) <= d bounds m; phi(m) >= sqrt(m/2) gives a safe scan limit
    for (int m = 1; m <= 2 * d * d + 2; ++m) {
        if (d % euler_phi(m) != 0) continue;
        for (int n = 1;; ++n) {
            // guaranteed lower bound on the index: m^2 n - 1
            Rat floor_bound = lam * Rat(static_cast<long>(m) * m * n - 1);
            if (floor_bound > Rat(2 * d) && n > 1) break;
            Rat B = abramovich_bound(m, n);
            if (B <= Rat(2 * d)) {
                out.t1.push_back({m, n});
                if (B <= Rat(d)) out.t2.push_back({m, n});
            }
            if (floor_bound > Rat(2 * d)) break;
        }
    }
    return out;
}

// Theorem-4.1-style rank facts: a cited table, not a computation
enum class RankFact { Zero, UnknownLRatioZero, Unknown };

inline RankFact rank_zero(int m, int n) {
    static const std::map<int, int> table{{1, 36}, {2, 21}, {3, 10},
                                         {4, 6},  {5, 4},  {6, 5}};
    auto it = table.find(m);
    if (it == table.end()) return RankFact::Unknown;
    if (n <= it->second) return RankFact::Zero;
    if (n == it->second + 1) return RankFact::UnknownLRatioZero;
    return RankFact::Unknown;
}

}  // namespace mdtk
