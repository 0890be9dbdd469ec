#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mdtk/modgroup.hpp"

using namespace mdtk;

TEST_CASE("psl2 index: known values") {
    CHECK(psl2_index(2, 7) == 144);
    CHECK(psl2_index(1, 7) == 24);
    CHECK(psl2_index(2, 15) == 576);
    CHECK(psl2_index(1, 11) == 60);
    CHECK(psl2_index(1, 12) == 48);
}

TEST_CASE("index formula agrees with coset enumeration on the full range") {
    for (int m = 1; m * m <= 120; ++m)
        for (int n = 1; m * m * n <= 120; ++n) {
            const auto& inv = invariants(m, n);  // internal cross-check throws on mismatch
            if (m * n >= 5) {
                Rat f = psl2_index_formula(m, n);
                CHECK(f == Rat(inv.index));
            }
            CHECK(inv.index >= m * m * n - 1);
        }
}

TEST_CASE("elliptic points vanish for level >= 4") {
    for (int m = 1; m * m <= 120; ++m)
        for (int n = 1; m * m * n <= 120; ++n) {
            if (m * n < 4) continue;
            const auto& inv = invariants(m, n);
            CHECK(inv.eps2 == 0);
            CHECK(inv.eps3 == 0);
        }
}

TEST_CASE("small-level invariants: classical modular curves") {
    // X(1): genus 0, one cusp
    const auto& x1 = invariants(1, 1);
    CHECK(x1.index == 1);
    CHECK(x1.genus == 0);
    // X1(2): index 3, one elliptic point of order 2, 2 cusps
    const auto& g2 = invariants(1, 2);
    CHECK(g2.index == 3);
    CHECK(g2.genus == 0);
    CHECK(g2.eps2 == 1);
    // X1(3): index 4, one elliptic point of order 3
    const auto& g3 = invariants(1, 3);
    CHECK(g3.index == 4);
    CHECK(g3.eps3 == 1);
    CHECK(g3.genus == 0);
    // X1(4): index 6, 3 cusps, no elliptic points
    const auto& g4 = invariants(1, 4);
    CHECK(g4.index == 6);
    CHECK(g4.eps_inf == 3);
    CHECK(g4.genus == 0);
}

TEST_CASE("genus values stated or implied by the literature") {
    CHECK(genus(3, 3) == 1);   // X1(3,9)
    CHECK(genus(4, 2) == 1);   // X1(4,8)
    CHECK(genus(6, 1) == 1);   // X1(6,6)
    CHECK(genus(1, 12) == 0);  // X1(12)
    CHECK(genus(1, 5) == 0);
    CHECK(genus(1, 11) == 1);
    CHECK(genus(1, 13) == 2);
    CHECK(genus(2, 7) == 4);   // X1(2,14)
    CHECK(genus(2, 8) == 5);   // X1(2,16)
    CHECK(genus(2, 9) == 7);   // X1(2,18)
    CHECK(genus(2, 15) == 25); // X1(2,30)
    for (int n = 1; n <= 6; ++n) CHECK(genus(2, n) <= 1);
}

TEST_CASE("cusp counts consistent with rational-cusp statements") {
    CHECK(invariants(2, 9).eps_inf >= 9);    // X1(2,18) has 9 rational cusps
    CHECK(invariants(2, 15).eps_inf >= 12);  // X1(2,30) has 12 rational cusps
}

TEST_CASE("abramovich bound: exact rationals") {
    CHECK(abramovich_bound(2, 19) == Rat(43875, 4096));
    CHECK(abramovich_bound(2, 15) == Rat(2925, 512));
    // X1(3,27): index 972, bound = 972*975/98304 > 6 (excludes n=9 for d=6)
    Rat b39 = abramovich_bound(3, 9);
    CHECK(b39 == Rat(972) * Rat(975, 98304));
    CHECK(b39 > Rat(6));
    CHECK(abramovich_bound(3, 8) <= Rat(6));
}

TEST_CASE("candidate sets for d=5 and d=6") {
    auto c5 = candidate_sets(5);
    // only m with phi(m) | 5: m = 1, 2
    for (auto& l : c5.t1) CHECK((l.m == 1 || l.m == 2));
    // T2 contains (2,2n) exactly for n <= 13
    int max_n2 = 0;
    for (auto& l : c5.t2)
        if (l.m == 2) max_n2 = std::max(max_n2, l.n);
    CHECK(max_n2 == 13);
    for (int n = 1; n <= 13; ++n) {
        bool found = false;
        for (auto& l : c5.t2)
            if (l.m == 2 && l.n == n) found = true;
        CHECK(found);
    }

    auto c6 = candidate_sets(6);
    // T1 contains (2,2n) exactly for n <= 21
    int t1_max = 0;
    for (auto& l : c6.t1)
        if (l.m == 2) t1_max = std::max(t1_max, l.n);
    CHECK(t1_max == 21);
    // T2 contains (6,6n) only for n <= 2
    int t2_max6 = 0;
    for (auto& l : c6.t2)
        if (l.m == 6) t2_max6 = std::max(t2_max6, l.n);
    CHECK(t2_max6 == 2);
    // T2 is a subset of T1
    for (auto& l : c6.t2) {
        bool in_t1 = false;
        for (auto& k : c6.t1)
            if (k == l) in_t1 = true;
        CHECK(in_t1);
    }
    // allowed m for d=6
    for (auto& l : c6.t1) {
        long phi = euler_phi(l.m);
        CHECK(6 % phi == 0);
    }
}

TEST_CASE("rank facts table") {
    CHECK(rank_zero(2, 21) == RankFact::Zero);
    CHECK(rank_zero(2, 22) == RankFact::UnknownLRatioZero);
    CHECK(rank_zero(2, 23) == RankFact::Unknown);
    CHECK(rank_zero(1, 36) == RankFact::Zero);
    CHECK(rank_zero(1, 37) == RankFact::UnknownLRatioZero);
    CHECK(rank_zero(3, 10) == RankFact::Zero);
    CHECK(rank_zero(4, 6) == RankFact::Zero);
    CHECK(rank_zero(5, 4) == RankFact::Zero);
    CHECK(rank_zero(6, 5) == RankFact::Zero);
    CHECK(rank_zero(7, 1) == RankFact::Unknown);
}
