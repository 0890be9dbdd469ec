#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mdtk/bifactor.hpp"
#include "mdtk/model.hpp"
#include "mdtk/optmodel.hpp"
#include "mdtk/split.hpp"

using namespace mdtk;

namespace {

// Galois conjugate over a quadratic field: send the generator a of
// x^2 + b x + c to the other root -b - a
BiPoly<NFElem> quad_conjugate(const BiPoly<NFElem>& F, const NumField* K) {
    REQUIRE(K->degree() == 2);
    Rat b = K->minpoly.coeff(1);
    BiPoly<NFElem> r(F.vx, F.vy);
    for (auto& [e, v] : F.c) {
        NFElem w = NFElem::from_coeffs(K, {v.c[0] - v.c[1] * b, -v.c[1]});
        if (!w.zero()) r.c[e] = w;
    }
    return r;
}

bool scalar_multiple(const BiPoly<NFElem>& A, const BiPoly<NFElem>& B) {
    if (A.zero() || B.zero()) return A.zero() && B.zero();
    NFElem s = A.lead().second * inv(B.lead().second);
    return (A - B * s).zero();
}

}  // namespace

TEST_CASE("bivariate gcd in the second variable") {
    BiPoly<Rat> f = bipoly_parse("x + y", "x", "y");
    BiPoly<Rat> g = bipoly_parse("x^2 + y + 1", "x", "y");
    BiPoly<Rat> h = bipoly_parse("y + 2", "x", "y");
    auto gq = split_detail::bipoly_gcd_y(f * g, f * h);
    CHECK(normalized(gq) == normalized(f));
    auto triv = split_detail::bipoly_gcd_y(g, h);
    CHECK(triv.deg_y() == 0);
}

TEST_CASE("distinct factors of a product with repeated factors") {
    BiPoly<Rat> a = bipoly_parse("x + y", "x", "y");
    BiPoly<Rat> b = bipoly_parse("x - y + 1", "x", "y");
    BiPoly<Rat> c = bipoly_parse("x^2 + y^2 + 1", "x", "y");
    BiPoly<Rat> F = a * a * b * c;
    auto fs = distinct_factors(F, Rat(1), split_detail::rat_irreducibles);
    CHECK(fs.size() == 3);
    for (auto& f : fs) {
        auto [cof, k] = remove_known_factor(F, f);
        CHECK(k >= 1);
    }
}

TEST_CASE("conjugate split times its conjugate recovers the rational model") {
    for (auto [m, n] : {std::pair{3, 2}, {4, 2}}) {
        RawModel pre = raw_model_presplit(m, n);
        const NumField* K = cyclotomic_quadratic(m);
        RawModelT<NFElem> M = raw_model(m, n);
        CHECK(2 * M.F.deg_x() == pre.F.deg_x());
        CHECK(2 * M.F.deg_y() == pre.F.deg_y());
        // genuinely irrational coefficients somewhere
        bool irrational = false;
        for (auto& [e, v] : M.F.c)
            if (!v.rational()) irrational = true;
        CHECK(irrational);
        auto prod = M.F * quad_conjugate(M.F, K);
        CHECK(scalar_multiple(prod, nf_bipoly(K, pre.F)));
    }
}

TEST_CASE("splitting an irreducible model is refused") {
    RawModel pre = raw_model_presplit(2, 5);
    CHECK_THROWS_AS(conjugate_factor(pre.F, cyclotomic_quadratic(4)),
                    FactorSelectionAmbiguous);
}

TEST_CASE("general model (4,1) equals the derived quartic") {
    RawModel M = general_model(4, 1);
    BiPoly<Rat> printed =
        bipoly_parse("2*t^3 - 4*t^2*x + 3*t*x^2 - 2*x^4 - x^3", "t", "x");
    CHECK(M.F == normalized(printed));
}

TEST_CASE("general model (5,1) splits over Q(sqrt 5)") {
    RawModel M = general_model(5, 1);
    const NumField* K =
        NumField::get(Poly<Rat>({Rat(-1), Rat(-1), Rat(1)}), "g");  // x^2 - x - 1
    BiPoly<NFElem> A = conjugate_factor(M.F, K);
    CHECK(2 * A.deg_x() == M.F.deg_x());
    CHECK(2 * A.deg_y() == M.F.deg_y());
    auto prod = A * quad_conjugate(A, K);
    CHECK(scalar_multiple(prod, nf_bipoly(K, M.F)));
}

TEST_CASE("general model is coprime to everything that was struck") {
    for (auto [m, n] : {std::pair{4, 1}, {5, 1}, {6, 1}}) {
        RawModel M = general_model(m, n);
        for (auto& [g, k] : M.removed) {
            auto [cof, left] = remove_known_factor(M.F, g);
            CHECK(left == 0);
        }
    }
}

TEST_CASE("mod-p general build matches the reduction of the rational model") {
    for (auto [m, n, pl] : {std::tuple{4, 1, 13L}, {5, 1, 31L}, {6, 1, 13L}}) {
        RawModel M = general_model(m, n);
        const FqCtx* k = FqCtx::get(Int(pl), 1);
        RawModelT<Fq> Mp = general_model_fp(m, n, Int(pl));
        BiPoly<Fq> red(M.F.vx, M.F.vy);
        for (auto& [e, v] : M.F.c) {
            Fq fv = Fq(k, num(v) % pl) * inv(Fq(k, den(v) % pl));
            if (!is_zero(fv)) red.c[e] = fv;
        }
        red = red * inv(red.lead().second);
        CHECK(Mp.F == red);
    }
}

TEST_CASE("published optimized model of X1(2,14) verifies against the raw model") {
    OptimizedModel opt = load_optimized(std::string(MDTK_DATA_DIR) + "/models/x1_2_14");
    RawModel raw = raw_model_presplit(2, 7);
    auto rep = verify_model(raw, opt);
    CHECK(rep.substitution_ok);
    // degrees match the gonality of X1(2,14)
    CHECK(opt.G.deg_x() == 3);
    CHECK(opt.G.deg_y() == 3);
}

TEST_CASE("a corrupted coordinate map is rejected") {
    OptimizedModel opt = load_optimized(std::string(MDTK_DATA_DIR) + "/models/x1_2_14");
    opt.q.num = opt.q.num + bipoly_parse("u^2", "u", "v");
    RawModel raw = raw_model_presplit(2, 7);
    auto rep = verify_model(raw, opt);
    CHECK(!rep.substitution_ok);
    CHECK(!rep.ok());
}

TEST_CASE("optimized model files round-trip") {
    OptimizedModel opt = load_optimized(std::string(MDTK_DATA_DIR) + "/models/x1_2_14");
    std::string tmp = "roundtrip_model";
    save_optimized(opt, tmp);
    OptimizedModel back = load_optimized(tmp);
    CHECK(back.G == opt.G);
    CHECK(back.label == opt.label);
    CHECK(back.q.num == opt.q.num);
    CHECK(back.t.den == opt.t.den);
    CHECK(back.source == opt.source);
}

TEST_CASE("general-method range checks") {
    CHECK_THROWS_AS(general_model(3, 2), UnsupportedRange);
    CHECK_THROWS_AS(general_model(11, 1), UnsupportedRange);
    CHECK_THROWS_AS(general_model(5, 5), UnsupportedRange);
}
