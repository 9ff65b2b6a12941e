#include <catch2/catch_amalgamated.hpp>

#include "limitweight/jet.hpp"
#include "limitweight/laurent.hpp"
#include "limitweight/polynomial.hpp"
#include "limitweight/rational.hpp"

using namespace limitweight;
using L = LaurentSeries<Rational>;

TEST_CASE("rational parsing and formatting") {
    REQUIRE(parse_rational("3") == Rational(3));
    REQUIRE(parse_rational("-4/6") == Rational(-2, 3));
    REQUIRE(to_string(parse_rational("-4/6")) == "-2/3");
    REQUIRE(to_string(Rational(7, 1)) == "7");
    REQUIRE_THROWS_AS(parse_rational(""), FixtureError);
    REQUIRE_THROWS_AS(parse_rational("x"), FixtureError);
    REQUIRE_THROWS_AS(parse_rational("1/0"), FixtureError);
    REQUIRE_THROWS_AS(parse_rational("1.5"), FixtureError);
}

TEST_CASE("laurent arithmetic") {
    L eps = L::eps();

    SECTION("product and cancellation") {
        L a = L(1) + eps;
        L b = L(1) - eps;
        REQUIRE(a * b == L(1) - eps * eps);
        REQUIRE((a - a).is_zero());
    }

    SECTION("division by a single term") {
        L x = eps + eps * eps;
        REQUIRE(x / eps == L(1) + eps);
        REQUIRE_THROWS_AS(x / (L(1) + eps), Error);
    }

    SECTION("limits pick the degree-0 coefficient") {
        L x = L(5) + eps * L(3);
        REQUIRE(x.limit_exists());
        REQUIRE(x.limit() == Rational(5));

        L pole = L::term(Rational(1), -1) + L(2);
        REQUIRE_FALSE(pole.limit_exists());
        REQUIRE_THROWS_AS(pole.limit(), LimitError);

        // a pole that cancels before the limit is taken is fine
        L cancelled = pole - L::term(Rational(1), -1);
        REQUIRE(cancelled.limit() == Rational(2));
    }

    SECTION("substituting eps = 1/n reproduces family values") {
        L x = L::term(Rational(1), -1) + L(2) + eps;
        Rational n4 = x.eval(Rational(1, 4));  // eps = 1/4
        REQUIRE(n4 == Rational(4) + Rational(2) + Rational(1, 4));
    }

    SECTION("degree bound is a hard error, not truncation") {
        L bounded = L::eps(2);
        bounded.with_bound(2);
        REQUIRE_THROWS_AS(bounded * eps, DegreeOverflowError);
        REQUIRE_THROWS_AS(L(1) / L::eps(3).with_bound(2), DegreeOverflowError);
        REQUIRE(bounded * bounded.with_bound(4) == L::eps(4));  // larger bound wins
    }
}

TEST_CASE("jet ring") {
    using J = Jet<Rational>;
    J t = J::t();
    J s = J::s();

    SECTION("t and s square to zero, ts survives") {
        REQUIRE((t * t).val() == 0);
        REQUIRE(t * t == J(0));
        REQUIRE(s * s == J(0));
        REQUIRE((t * s).dtds() == Rational(1));
        REQUIRE(t * s == s * t);
    }

    SECTION("product components") {
        J a(Rational(2), Rational(3), Rational(5), Rational(7));
        J b(Rational(1), Rational(-1), Rational(2), Rational(0));
        J c = a * b;
        REQUIRE(c.val() == Rational(2));
        REQUIRE(c.dt() == Rational(1));     // 2*(-1) + 3*1
        REQUIRE(c.ds() == Rational(9));     // 2*2 + 5*1
        REQUIRE(c.dtds() == Rational(8));  // 2*0 + 7*1 + 3*2 + 5*(-1)
    }

    SECTION("division by constants only") {
        J a(Rational(2), Rational(4), Rational(6), Rational(8));
        REQUIRE(a / J(2) == J(Rational(1), Rational(2), Rational(3), Rational(4)));
        REQUIRE_THROWS_AS(a / t, Error);
    }
}

TEST_CASE("polynomial normal form") {
    Polynomial x = Polynomial::variable(0);
    Polynomial y = Polynomial::variable(1);

    SECTION("commuting and cancelling") {
        REQUIRE(x * y == y * x);
        REQUIRE((x + y) * (x - y) == x * x - y * y);
        REQUIRE(((x + y) - y - x).is_zero());
    }

    SECTION("identities decide specializations") {
        Polynomial p = (x + y) * (x + y) - x * x - Polynomial(2) * x * y - y * y;
        REQUIRE(p.is_zero());
        Polynomial q = x * y - y;  // not identically zero
        REQUIRE_FALSE(q.is_zero());
        REQUIRE(q.eval({Rational(1), Rational(5)}) == Rational(0));
        REQUIRE(q.eval({Rational(2), Rational(3)}) == Rational(3));
    }

    SECTION("rendering") {
        Polynomial p = Polynomial(Rational(1, 2)) * x * x - y;
        REQUIRE(p.to_string({"a", "b"}) == "-b + 1/2*a^2");  // monomial map order
        REQUIRE(Polynomial(0).to_string() == "0");
    }

    SECTION("division by nonzero constants only") {
        REQUIRE((x + x) / Polynomial(2) == x);
        REQUIRE_THROWS_AS(x / y, Error);
        REQUIRE_THROWS_AS(x / Polynomial(0), Error);
    }
}

TEST_CASE("laurent over polynomials composes") {
    using LP = LaurentSeries<Polynomial>;
    Polynomial a = Polynomial::variable(0);
    LP s = LP::term(a, 1) + LP(1);          // 1 + a*eps
    LP t = LP(1) - LP::term(a, 1);          // 1 - a*eps
    REQUIRE(s * t == LP(1) - LP::term(a * a, 2));
    REQUIRE((s * t).limit() == Polynomial(1));
}
