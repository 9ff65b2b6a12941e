#include <catch2/catch_amalgamated.hpp>

#include "limitweight/map_pair.hpp"

using namespace limitweight;
using L = EpsScalar;
using M = Matrix<Rational>;

namespace {

M heis(const Rational& a, const Rational& b, const Rational& c) {
    return mat_exp(from_upper_coords<Rational>(3, {a, b, c}));
}

}  // namespace

TEST_CASE("power pair transported product adds logarithms") {
    PairSpec p = PairSpec::power();
    Sampler rng(101);

    SECTION("random samples, dims 3 and 4") {
        for (std::size_t dim : {3, 4}) {
            for (int k = 0; k < 30; ++k) {
                M a = rng.unipotent(dim), b = rng.unipotent(dim);
                REQUIRE(transported_mul(p, a, b) == mat_exp(mat_log(a) + mat_log(b)));
            }
        }
    }

    SECTION("as a polynomial identity") {
        for (std::size_t dim : {3, 4}) {
            auto a = symbolic_unipotent(dim, 0), b = symbolic_unipotent(dim, 1);
            REQUIRE(transported_mul(p, a, b) == mat_exp(mat_log(a) + mat_log(b)));
        }
    }

    SECTION("coordinates simply add") {
        M ab = transported_mul(p, heis(Rational(1), Rational(2), Rational(3)),
                               heis(Rational(5), Rational(-1), Rational(1, 2)));
        REQUIRE(ab == heis(Rational(6), Rational(1), Rational(7, 2)));
    }
}

TEST_CASE("identity pair transported product is the plain product") {
    PairSpec p = PairSpec::identity();
    Sampler rng(103);
    for (int k = 0; k < 30; ++k) {
        M a = rng.unipotent(3), b = rng.unipotent(3);
        REQUIRE(transported_mul(p, a, b) == a * b);
        REQUIRE(transported_inverse(p, a) == unipotent_inverse(a));
    }
    REQUIRE(transported_unit<Rational>(p, 3) == M::identity(3));
}

TEST_CASE("scale-log pairs") {
    REQUIRE_THROWS_AS(PairSpec::scale_log(L::eps(), L::eps()), FixtureError);
    REQUIRE_THROWS_AS(PairSpec::scale_log(L(1) + L::eps(), L(1)), FixtureError);

    PairSpec p = PairSpec::scale_log(L::term(Rational(2), 1), L::term(Rational(1, 2), -1));
    Sampler rng(105);
    MapPair mp = make_map_pair(p);
    REQUIRE(check_pair_identity(mp, 3, rng, 25).ok());
    for (int k = 0; k < 10; ++k) {
        M a = rng.unipotent(3), b = rng.unipotent(3);
        REQUIRE(transported_mul(p, a, b) == mat_exp(mat_log(a) + mat_log(b)));
    }
}

TEST_CASE("pair identity check catches a broken pair") {
    Sampler rng(107);
    MapPair good = make_map_pair(PairSpec::power());
    REQUIRE(check_pair_identity(good, 3, rng, 50).ok());

    MapPair broken{"squaring", [](const EpsMatrix& m) { return m; },
                   [](const EpsMatrix& m) { return m * m; }};
    auto r = check_pair_identity(broken, 3, rng, 50);
    REQUIRE(r.status == CheckStatus::fail);
    REQUIRE(r.witness.contains("a"));
    REQUIRE(r.witness.contains("raise_lower_a"));
}

TEST_CASE("transported group laws") {
    Sampler rng(109);
    for (auto p : {PairSpec::power(), PairSpec::identity()}) {
        REQUIRE(check_transported_semigroup(p, 3, rng, 40).ok());
        REQUIRE(check_transported_semigroup_symbolic(p, 3).ok());
    }
    REQUIRE(check_transported_semigroup(PairSpec::power(), 4, rng, 20).ok());
}

TEST_CASE("limit abelianness") {
    Sampler rng(111);

    SECTION("power pair collapses commutators") {
        REQUIRE(is_limit_abelian(PairSpec::power(), 3, rng, 40).ok());
        REQUIRE(is_limit_abelian_symbolic(PairSpec::power(), 4).ok());
    }

    SECTION("identity pair stays nonabelian in dim 3") {
        auto r = is_limit_abelian(PairSpec::identity(), 3, rng, 40);
        REQUIRE(r.status == CheckStatus::fail);
        REQUIRE(r.witness["law"] == "commutativity");
    }

    SECTION("dim 1 carriers are trivially abelian") {
        REQUIRE(is_limit_abelian(PairSpec::identity(), 1, rng, 5).ok());
    }
}

TEST_CASE("synchronized family limits") {
    Sampler rng(113);
    REQUIRE(check_synchronized(PairSpec::power(), 3, rng, 40).ok());
    REQUIRE(check_synchronized(PairSpec::identity(), 3, rng, 40).ok());
    REQUIRE(check_synchronized(PairSpec::power(), 4, rng, 15).ok());
}

TEST_CASE("conjugation limit action") {
    Sampler rng(115);
    REQUIRE(check_limit_action(PairSpec::power(), 3, rng, 30).ok());
    REQUIRE(check_limit_action(PairSpec::identity(), 3, rng, 30).ok());

    SECTION("two-step carriers act by v + [u, v]") {
        PairSpec p = PairSpec::power();
        Sampler s(117);
        for (int k = 0; k < 20; ++k) {
            M u = s.strictly_upper(3), v = s.strictly_upper(3);
            auto got = transported_conjugation(p, mat_exp(u), mat_exp(v));
            REQUIRE(got == mat_exp(v + commutator(u, v)));
        }
    }
}
