#include "knotsurg/exactmath.hpp"

#include <doctest.h>

#include <random>
#include <tuple>

using namespace knotsurg;

TEST_CASE("rational normal form and parsing") {
    Rational r(6, -4);
    CHECK(r.num() == -3);
    CHECK(r.den() == 2);
    CHECK(Rational::parse("-3/2") == r);
    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational::parse(" 10/5 ") == Rational(2));
    CHECK_THROWS(Rational::parse("1/0"));
    CHECK_THROWS(Rational::parse("abc"));
    CHECK_THROWS(Rational::parse("1/2/3"));
    CHECK(r.str() == "-3/2");
    CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
    CHECK_THROWS(Rational(0).pow(-1));
    CHECK_THROWS(Rational(1) / Rational(0));
}

TEST_CASE("field axioms on random rationals") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> d(-50, 50);
    auto rnd = [&] {
        long den = d(rng);
        return Rational(d(rng), den == 0 ? 1 : den);
    };
    for (int i = 0; i < 200; ++i) {
        Rational a = rnd(), b = rnd(), c = rnd();
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + b) - b == a);
        if (!b.is_zero()) CHECK((a / b) * b == a);
        CHECK(((a <=> b) == std::strong_ordering::less) == (a.to_double() < b.to_double()));
    }
}

TEST_CASE("integer helpers") {
    CHECK(binomial(10, 3) == 120);
    CHECK(factorial(7) == 5040);
    CHECK(isqrt(Integer(99)) == 9);
    CHECK(is_square(Integer(144)));
    CHECK_FALSE(is_square(Integer(-4)));
    Rational s;
    CHECK(rational_sqrt(Rational(9, 16), s));
    CHECK(s == Rational(3, 4));
    CHECK_FALSE(rational_sqrt(Rational(2), s));
}

TEST_CASE("laurent polynomial arithmetic") {
    LaurentPoly t = LaurentPoly::monomial(1);
    LaurentPoly ti = LaurentPoly::monomial(-1);
    LaurentPoly delta = t - LaurentPoly(Rational(1)) + ti;
    CHECK(delta.invert() == delta);
    CHECK(delta.eval(Rational(1)) == Rational(1));
    CHECK((t * ti) == LaurentPoly(Rational(1)));
    CHECK(delta.pow(2).coeff(0) == Rational(3));
    CHECK(delta.scale_exponents(2).divide_exponents(2) == delta);
    CHECK_THROWS(delta.divide_exponents(2));
    CHECK(delta.min_degree() == -1);
    CHECK(delta.max_degree() == 1);
    CHECK((delta - delta).is_zero());
}

TEST_CASE("series substitution t = e^{+-h}") {
    auto s = laurent_substitute_exp(LaurentPoly::monomial(1), 1, 2);
    CHECK(s.coeffs() == std::vector<Rational>{1, 1, Rational(1, 2)});
    auto c = laurent_substitute_exp(LaurentPoly(Rational(1)), -1, 3);
    CHECK(c.coeffs() == std::vector<Rational>{1, 0, 0, 0});
    LaurentPoly v = LaurentPoly::from_terms({{-4, -1}, {-3, 1}, {-1, 1}});
    auto vs = laurent_substitute_exp(v, 1, 3);
    CHECK(vs[3] == Rational(6));
    // t -> e^{-h} equals substituting the inverted polynomial
    CHECK(laurent_substitute_exp(v, -1, 5) == laurent_substitute_exp(v.invert(), 1, 5));
}

TEST_CASE("log and exp series") {
    TruncSeries onex(5, {1, 1, 0, 0, 0, 0});
    auto l = series_log(onex);
    CHECK(l[0] == Rational(0));
    CHECK(l[1] == Rational(1));
    CHECK(l[2] == Rational(-1, 2));
    CHECK(l[3] == Rational(1, 3));
    CHECK(l[5] == Rational(1, 5));
    CHECK(series_log(TruncSeries(3, {1, 0, 0, 0})) == TruncSeries(3));
    auto e = series_exp_x(4);
    TruncSeries x(4, {0, 1, 0, 0, 0});
    CHECK(series_log(e) == x);
    CHECK(series_exp(x) == e);
    CHECK_THROWS(series_log(TruncSeries(2, {2, 0, 0})));
}

TEST_CASE("modified Bernoulli numbers") {
    CHECK(modified_bernoulli(2) == Rational(1, 48));
    CHECK(modified_bernoulli(4) == Rational(-1, 5760));
    CHECK(modified_bernoulli(6) == Rational(1, 362880));
    CHECK(modified_bernoulli(1) == Rational(0));
    CHECK(modified_bernoulli(3) == Rational(0));
}
