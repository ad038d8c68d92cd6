#include <random>

#include "doctest.h"
#include "symbound/rational.hpp"

using namespace symbound;

namespace {

Rational rnd_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long long> num(-50, 50);
    std::uniform_int_distribution<long long> den(1, 20);
    return Rational(num(rng), den(rng));
}

}  // namespace

TEST_CASE("rational arithmetic basics") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(2, 4) * Rational(2, 1) == Rational(1));
    CHECK((Rational(2, 4) * Rational(2, 1)).num() == 1);
    CHECK((Rational(2, 4) * Rational(2, 1)).den() == 1);
}

TEST_CASE("rational comparison matches cross multiplication") {
    // -3/7 vs -2/5: cross multiply, -3*5 = -15 < -14 = -2*7.
    Rational a(-3, 7), b(-2, 5);
    BigInt lhs = a.num() * b.den();
    BigInt rhs = b.num() * a.den();
    CHECK(lhs < rhs);
    CHECK(a.cmp(b) < 0);

    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        Rational x = rnd_rational(rng), y = rnd_rational(rng);
        int oracle = (x.num() * y.den()).compare(y.num() * x.den());
        CHECK(x.cmp(y) == oracle);
    }
}

TEST_CASE("rational canonical form") {
    Rational r(BigInt(-6), BigInt(-4));
    CHECK(r.num() == 3);
    CHECK(r.den() == 2);
    CHECK(Rational(0, 5).str() == "0");
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("rational field axioms on random triples") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 300; ++i) {
        Rational a = rnd_rational(rng), b = rnd_rational(rng), c = rnd_rational(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + (-a) == Rational(0));
        if (!a.is_zero()) CHECK(a * a.inverse() == Rational(1));
    }
}

TEST_CASE("rational text round trip") {
    CHECK(Rational::parse("5/6") == Rational(5, 6));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK(Rational::parse("1.88") == Rational(188, 100));
    CHECK(Rational(22, 4).str() == "11/2");
    CHECK(Rational::parse(Rational(-13, 9).str()) == Rational(-13, 9));
}

TEST_CASE("rational floor") {
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(6, 2).floor() == 3);
    CHECK(Rational(-6, 2).floor() == -3);
}

TEST_CASE("delta rational ordering") {
    DeltaRational zero{Rational(0)};
    DeltaRational delta{Rational(0), Rational(1)};
    CHECK(delta > zero);
    CHECK(DeltaRational(Rational(1), Rational(-5)) < DeltaRational(Rational(1), Rational(3)));
    CHECK(DeltaRational(Rational(2), Rational(0)) > DeltaRational(Rational(1), Rational(100)));
}

TEST_CASE("delta rational total order properties") {
    std::mt19937_64 rng(29);
    auto rnd = [&] { return DeltaRational(rnd_rational(rng), rnd_rational(rng)); };
    for (int i = 0; i < 300; ++i) {
        DeltaRational a = rnd(), b = rnd(), c = rnd();
        // exactly one of <, ==, > holds
        int rel = (a < b ? 1 : 0) + (a == b ? 1 : 0) + (a > b ? 1 : 0);
        CHECK(rel == 1);
        // antisymmetry
        if (a <= b && b <= a) CHECK(a == b);
        // transitivity
        if (a <= b && b <= c) CHECK(a <= c);
    }
}
