#include <algorithm>
#include <random>

#include "doctest.h"
#include "symbound/groebner.hpp"

using namespace symbound;

namespace {

Polynomial rnd_poly(std::mt19937_64& rng, int n_vars, int max_deg, int max_terms) {
    std::uniform_int_distribution<int> terms(1, max_terms);
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<int> var(0, n_vars - 1);
    std::uniform_int_distribution<long long> coeff(-4, 4);
    Polynomial p;
    int t = terms(rng);
    for (int i = 0; i < t; ++i) {
        Monomial m;
        int d = deg(rng);
        for (int k = 0; k < d; ++k) m = m * Monomial::var(var(rng));
        p.add_term(m, Rational(coeff(rng)));
    }
    return p;
}

void check_division_identity(const Polynomial& f, const std::vector<Polynomial>& divisors,
                             const DivisionResult& res) {
    Polynomial sum = res.remainder;
    for (std::size_t i = 0; i < divisors.size(); ++i) sum += res.quotients[i] * divisors[i];
    CHECK(sum == f);
}

}  // namespace

TEST_CASE("multivariate division") {
    VarTable vt;
    VarId x = vt.declare("x"), y = vt.declare("y");
    VarId u4 = vt.declare("u4"), u5 = vt.declare("u5");
    MonomialOrder ord = MonomialOrder::grevlex(4);

    Polynomial f = Polynomial::var(x) - Polynomial::var(y);
    std::vector<Polynomial> divisors{Polynomial::var(x) - Polynomial::var(u4),
                                     Polynomial::var(y) - Polynomial::var(u5)};
    auto res = multivariate_divide(f, divisors, ord);
    CHECK(res.remainder == Polynomial::var(u4) - Polynomial::var(u5));
    check_division_identity(f, divisors, res);

    auto zero = multivariate_divide(Polynomial(), divisors, ord);
    CHECK(zero.remainder.is_zero());
    CHECK(zero.quotients[0].is_zero());

    auto self = multivariate_divide(divisors[0], divisors, ord);
    CHECK(self.remainder.is_zero());

    std::mt19937_64 rng(17);
    for (int i = 0; i < 150; ++i) {
        Polynomial g = rnd_poly(rng, 4, 3, 5);
        std::vector<Polynomial> ds;
        for (int k = 0; k < 2; ++k) {
            Polynomial d = rnd_poly(rng, 4, 2, 3);
            if (!d.is_zero()) ds.push_back(d);
        }
        if (ds.empty()) continue;
        auto r = multivariate_divide(g, ds, ord);
        check_division_identity(g, ds, r);
        // no remainder monomial divisible by a divisor's leading monomial
        for (auto& d : ds) {
            Monomial lm = leading_monomial(d, ord);
            for (auto& [m, c] : r.remainder.terms()) CHECK(!lm.divides(m));
        }
    }
}

namespace {

/// Checks the Groebner property directly: every S-polynomial of two basis
/// elements reduces to zero.
void check_is_groebner(const GroebnerBasis& gb) {
    const auto& b = gb.elements();
    for (std::size_t i = 0; i < b.size(); ++i) {
        for (std::size_t j = i + 1; j < b.size(); ++j) {
            auto [mi, ci] = leading_term(b[i], gb.order());
            auto [mj, cj] = leading_term(b[j], gb.order());
            Monomial l = mi.lcm(mj);
            Polynomial s = Polynomial::term(*mi.divide_into(l), Rational(1) / ci) * b[i] -
                           Polynomial::term(*mj.divide_into(l), Rational(1) / cj) * b[j];
            CHECK(gb.reduce(s).is_zero());
        }
    }
}

}  // namespace

TEST_CASE("buchberger on the curve ideal") {
    VarTable vt;
    VarId t = vt.declare("t"), x = vt.declare("x"), y = vt.declare("y");
    MonomialOrder ord = MonomialOrder::lex(3);  // t > x > y

    Polynomial p1 = Polynomial::var(x) - Polynomial(1) - Polynomial::var(t);
    Polynomial p2 = Polynomial::var(y) - Polynomial(1) - Polynomial::var(t) * Polynomial::var(t);
    GroebnerBasis gb = GroebnerBasis::compute({p1, p2}, ord);
    check_is_groebner(gb);

    Polynomial member = Polynomial::var(x) * Polynomial::var(x) -
                        Polynomial::var(x).scaled(Rational(2)) - Polynomial::var(y) +
                        Polynomial(2);
    CHECK(gb.contains(member));
    CHECK(gb.contains(Polynomial()));
    std::mt19937_64 rng(1);
    CHECK(gb.contains(p1 * rnd_poly(rng, 3, 2, 3) + p2 * rnd_poly(rng, 3, 2, 3)));

    // x is not in <x^2>
    GroebnerBasis sq = GroebnerBasis::compute({Polynomial::var(x) * Polynomial::var(x)}, ord);
    CHECK(!sq.contains(Polynomial::var(x)));
}

TEST_CASE("already a basis with coprime leading monomials") {
    VarTable vt;
    VarId x = vt.declare("x"), y = vt.declare("y");
    VarId u4 = vt.declare("u4"), u5 = vt.declare("u5");
    MonomialOrder ord = MonomialOrder::grevlex(4);
    Polynomial p1 = Polynomial::var(x) - Polynomial::var(u4);
    Polynomial p2 = Polynomial::var(y) - Polynomial::var(u5);
    GroebnerBasis gb = GroebnerBasis::compute({p1, p2}, ord);
    REQUIRE(gb.elements().size() == 2);
    CHECK(std::count(gb.elements().begin(), gb.elements().end(), p1) == 1);
    CHECK(std::count(gb.elements().begin(), gb.elements().end(), p2) == 1);
}

TEST_CASE("reduction properties and uniqueness") {
    std::mt19937_64 rng(23);
    MonomialOrder ord = MonomialOrder::grevlex(3);
    int nontrivial = 0;
    for (int iter = 0; iter < 120; ++iter) {
        std::vector<Polynomial> gens;
        std::uniform_int_distribution<int> ngens(1, 4);
        int n = ngens(rng);
        for (int i = 0; i < n; ++i) {
            Polynomial p = rnd_poly(rng, 3, 3, 4);
            if (!p.is_zero()) gens.push_back(p);
        }
        if (gens.empty()) continue;
        GroebnerBasis gb = GroebnerBasis::compute(gens, ord);
        if (!gb.is_trivial()) ++nontrivial;

        // same reduced basis from a permuted generator list
        std::vector<Polynomial> shuffled = gens;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        GroebnerBasis gb2 = GroebnerBasis::compute(shuffled, ord);
        CHECK(gb.elements() == gb2.elements());

        Polynomial f = rnd_poly(rng, 3, 3, 5);
        Polynomial r = gb.reduce(f);
        CHECK(gb2.reduce(f) == r);
        CHECK(gb.reduce(r) == r);  // idempotent
        CHECK(gb.contains(f) == r.is_zero());

        // random ideal member: h1 p1 + h2 p2 ...
        Polynomial member;
        for (auto& g : gens) member += rnd_poly(rng, 3, 1, 2) * g;
        CHECK(gb.contains(member));

        // reduction never increases the leading monomial (on f + g, g in ideal)
        if (!f.is_zero() && !r.is_zero()) {
            Polynomial fg = f + member;
            if (!fg.is_zero()) {
                Polynomial rr = gb.reduce(fg);
                CHECK(rr == r);  // same residue class -> same remainder
                CHECK(!ord.greater(leading_monomial(rr, ord), leading_monomial(fg, ord)));
            }
        }
    }
    CHECK(nontrivial > 40);
}

TEST_CASE("inconsistent equalities collapse to the whole ring") {
    VarTable vt;
    VarId x = vt.declare("x");
    MonomialOrder ord = MonomialOrder::grevlex(1);
    GroebnerBasis gb = GroebnerBasis::compute(
        {Polynomial::var(x) - Polynomial(1), Polynomial::var(x) - Polynomial(2)}, ord);
    CHECK(gb.is_trivial());
}
