#include <catch2/catch_amalgamated.hpp>

#include <initializer_list>
#include <vector>

#include <limitweight/diff_novikov.hpp>
#include <limitweight/fixtures.hpp>

using namespace limitweight;

namespace {

std::vector<Rational> coords(std::initializer_list<long> xs) {
    std::vector<Rational> v;
    for (long x : xs) v.push_back(Rational(x));
    return v;
}

// [x, y] = x on basis (x, y).
LieAlgebra affine_line() {
    LieAlgebra g = LieAlgebra::abelian(2);
    g.c[0][1] = coords({1, 0});
    g.c[1][0] = coords({-1, 0});
    return g;
}

}  // namespace

TEST_CASE("heisenberg differential operator doubles the top coordinate") {
    auto fx = heisenberg_diff();
    // in exponential coordinates D<a,b,c> = <a,b,2c>; the half-bracket
    // correction [u, D0 u] vanishes because the 12 and 23 parts are unscaled
    auto v = [](int i) { return Polynomial::variable(i); };
    auto g = heisenberg_element(v(0), v(1), v(2));
    CHECK(apply_operator(fx.op, g) ==
          heisenberg_element(v(0), v(1), scalar_lift<Polynomial>(Rational(2)) * v(2)));

    auto p = heisenberg_element(Rational(1), Rational(2), Rational(3));
    CHECK(heisenberg_coords(apply_operator(fx.op, p)) ==
          std::vector<Rational>{Rational(1), Rational(2), Rational(6)});
}

TEST_CASE("heisenberg differential fixture satisfies the defining identity") {
    auto fx = heisenberg_diff();
    Sampler rng(900);
    CHECK(check_group_rdiff(fx, rng, 40).ok());
    CHECK(check_group_rdiff_symbolic(fx).ok());
}

TEST_CASE("constant-identity operator is a differential operator, the identity map is not") {
    GroupDiffFixture triv;
    triv.name = "trivial-diff";
    triv.pair = PairSpec::power();
    triv.op = OperatorSpec::trivial();
    Sampler rng(901);
    CHECK(check_group_rdiff(triv, rng, 20).ok());

    GroupDiffFixture bad;
    bad.name = "identity-diff";
    bad.pair = PairSpec::identity();
    bad.op = OperatorSpec::identity_map();
    auto r = check_group_rdiff(bad, rng, 20);
    CHECK(r.status == CheckStatus::fail);
    CHECK(r.witness["law"] == "crossed-homomorphism");
}

TEST_CASE("heisenberg product has the expected closed form") {
    auto fx = heisenberg_diff();

    // <a1,a2,a3> (.) <b1,b2,b3> = <b1, b2, 2 b3 + a1 b2 - a2 b1>
    auto v = [](int i) { return Polynomial::variable(i); };
    auto a = heisenberg_element(v(0), v(1), v(2));
    auto b = heisenberg_element(v(3), v(4), v(5));
    auto two = scalar_lift<Polynomial>(Rational(2));
    CHECK(novikov_mul(fx, a, b) ==
          heisenberg_element(v(3), v(4), two * v(5) + v(0) * v(4) - v(1) * v(3)));

    // frozen point: <1,2,3> (.) <4,5,6> = <4,5,9>
    auto pa = heisenberg_element(Rational(1), Rational(2), Rational(3));
    auto pb = heisenberg_element(Rational(4), Rational(5), Rational(6));
    CHECK(heisenberg_coords(novikov_mul(fx, pa, pb)) ==
          std::vector<Rational>{Rational(4), Rational(5), Rational(9)});

    // unit on the right is absorbed, on the left it recovers the operator
    auto e = Matrix<Rational>::identity(3);
    CHECK(novikov_mul(fx, pa, e) == e);
    CHECK(novikov_mul(fx, e, pb) == apply_operator(fx.op, pb));
}

TEST_CASE("heisenberg product passes the group axioms") {
    auto fx = heisenberg_diff();
    Sampler rng(902);
    auto r = check_novikov_group(fx, rng, 40);
    INFO(to_json(r).dump(2));
    CHECK(r.ok());
    CHECK(check_novikov_group_symbolic(fx).ok());
}

TEST_CASE("cross-term coefficient one matches the limit, one half does not") {
    auto fx = heisenberg_diff();
    Sampler rng(903);

    auto full = heisenberg_novikov_candidate(Rational(1));
    CHECK(check_novikov_product(full, rng, 30).ok());
    for (int rep = 0; rep < 10; ++rep) {
        auto a = rng.unipotent(3), b = rng.unipotent(3);
        CHECK(full.mul(a, b) == novikov_mul(fx, a, b));
    }

    auto half = heisenberg_novikov_candidate(Rational(1, 2));
    auto r = check_novikov_product(half, rng, 30);
    CHECK(r.status == CheckStatus::fail);
    CHECK((r.witness["law"] == "weighted-distributivity" || r.witness["law"] == "action-shift"));
}

TEST_CASE("operator and product recover each other") {
    auto fx = heisenberg_diff();
    Sampler rng(904);

    auto d = diff_from_novikov(novikov_product(fx), rng, 20);
    for (int rep = 0; rep < 10; ++rep) {
        auto a = rng.unipotent(3), b = rng.unipotent(3);
        CHECK(d(a) == apply_operator(fx.op, a));
        CHECK(novikov_mul_map(fx.pair, fx.action, d, a, b) == novikov_mul(fx, a, b));
    }
    CHECK(check_rdiff_map(fx.pair, fx.action, fx.dim, d, rng, 20).ok());

    // failing products are refused at the gate
    CHECK_THROWS_AS(diff_from_novikov(heisenberg_novikov_candidate(Rational(1, 2)), rng, 20),
                    FixtureError);
}

TEST_CASE("tangent of the heisenberg differential fixture is the grading derivation") {
    auto fx = heisenberg_diff();
    auto t = diff_group_tangent(fx);
    CHECK(t.op == heisenberg_d0());
    CHECK(is_derivation(t.algebra, t.op));
    Sampler rng(905);
    CHECK(check_lie_rdiff(t, rng, 20).ok());
}

TEST_CASE("algebra-level differential identity accepts derivations and rejects others") {
    Sampler rng(906);

    LieDiffFixture zero;
    zero.name = "zero-diff";
    zero.algebra = LieAlgebra::from_strictly_upper(3);
    zero.pair = ScalarPair::power();
    zero.op = Matrix<Rational>(3);
    CHECK(check_lie_rdiff(zero, rng, 10).ok());

    // inner derivation on the affine line: D = ad_y
    LieDiffFixture inner;
    inner.name = "affine-inner";
    inner.algebra = affine_line();
    inner.pair = ScalarPair::power();
    inner.op = Matrix<Rational>(2);
    inner.op(0, 0) = Rational(-1);
    CHECK(is_derivation(inner.algebra, inner.op));
    CHECK(check_lie_rdiff(inner, rng, 10).ok());

    // swapping E12 and E23 while fixing E13 is not a derivation
    LieDiffFixture swap;
    swap.name = "swap-not-derivation";
    swap.algebra = LieAlgebra::from_strictly_upper(3);
    swap.pair = ScalarPair::power();
    swap.op = Matrix<Rational>(3);
    swap.op(0, 1) = Rational(1);
    swap.op(1, 0) = Rational(1);
    swap.op(2, 2) = Rational(1);
    CHECK_FALSE(is_derivation(swap.algebra, swap.op));
    auto r = check_lie_rdiff(swap, rng, 10);
    CHECK(r.status == CheckStatus::fail);
    CHECK(r.witness.contains("defect"));
}

TEST_CASE("derivation product on the heisenberg algebra") {
    auto t = diff_group_tangent(heisenberg_diff());
    auto np = novikov_lie_from_derivation(t);

    // e1 o e2 = [E12, D0 E23] = E13, central elements multiply to zero
    CHECK(np.table[0][1] == coords({0, 0, 1}));
    CHECK(np.table[2][2] == coords({0, 0, 0}));

    Sampler rng(907);
    CHECK(check_novikov_lie(np, rng, 15).ok());
}

TEST_CASE("derivation product on the affine line") {
    LieDiffFixture fx;
    fx.name = "affine-inner";
    fx.algebra = affine_line();
    fx.pair = ScalarPair::power();
    fx.op = Matrix<Rational>(2);
    fx.op(0, 0) = Rational(-1);

    auto np = novikov_lie_from_derivation(fx);
    // y o x = [y, Dx] = [y, -x] = x
    CHECK(np.table[1][0] == coords({1, 0}));

    Sampler rng(908);
    CHECK(check_novikov_lie(np, rng, 15).ok());
}

TEST_CASE("hypotheses of the derivation construction are gated, not assumed") {
    // identity scalar pair on a nonabelian carrier: the raised bracket of
    // lowered elements does not vanish
    LieDiffFixture flat;
    flat.name = "identity-pair";
    flat.algebra = LieAlgebra::from_strictly_upper(3);
    flat.pair = ScalarPair::identity();
    flat.op = Matrix<Rational>(3);
    CHECK_THROWS_AS(novikov_lie_from_derivation(flat), FixtureError);

    // non-derivation operator: the differential identity fails on a basis pair
    LieDiffFixture bad;
    bad.name = "swap-not-derivation";
    bad.algebra = LieAlgebra::from_strictly_upper(3);
    bad.pair = ScalarPair::power();
    bad.op = Matrix<Rational>(3);
    bad.op(0, 1) = Rational(1);
    bad.op(1, 0) = Rational(1);
    bad.op(2, 2) = Rational(1);
    CHECK_THROWS_AS(novikov_lie_from_derivation(bad), FixtureError);
}

TEST_CASE("group and algebra constructions commute with taking tangents") {
    auto fx = heisenberg_diff();
    auto from_group = novikov_group_tangent(fx);
    auto from_algebra = novikov_lie_from_derivation(diff_group_tangent(fx));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(from_group.table[i][j] == from_algebra.table[i][j]);

    Sampler rng(909);
    CHECK(check_novikov_lie(from_group, rng, 15).ok());

    // trivial operator gives the zero product
    GroupDiffFixture triv;
    triv.name = "trivial-diff";
    triv.pair = PairSpec::power();
    triv.op = OperatorSpec::trivial();
    auto zt = novikov_group_tangent(triv);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(vec_is_zero(zt.table[i][j]));
}

TEST_CASE("axioms hold for random derivation fixtures across small algebras") {
    Sampler rng(910);
    std::vector<LieAlgebra> pool = {LieAlgebra::abelian(2), LieAlgebra::abelian(4), affine_line(),
                                    LieAlgebra::from_strictly_upper(3)};
    // heisenberg plus a one-dimensional center makes a four-dimensional case
    LieAlgebra h4 = LieAlgebra::abelian(4);
    auto h3 = LieAlgebra::from_strictly_upper(3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            auto v = h3.c[i][j];
            v.push_back(Rational(0));
            h4.c[i][j] = v;
        }
    pool.push_back(h4);

    for (int rep = 0; rep < 15; ++rep) {
        auto g = random_basis_change(pool[rep % pool.size()], rng);
        validate_lie(g);
        LieDiffFixture fx;
        fx.name = "random-derivation";
        fx.algebra = g;
        fx.pair = ScalarPair::power();
        fx.op = random_derivation(g, rng);
        REQUIRE(check_lie_rdiff(fx, rng, 3).ok());
        auto np = novikov_lie_from_derivation(fx);
        auto r = check_novikov_lie(np, rng, 3);
        INFO(to_json(r).dump(2));
        REQUIRE(r.ok());
    }
}
