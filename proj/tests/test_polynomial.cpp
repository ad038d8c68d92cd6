#include <random>

#include "doctest.h"
#include "symbound/groebner.hpp"
#include "symbound/monomial_order.hpp"

using namespace symbound;

namespace {

struct Vars {
    VarTable table;
    VarId operator()(const std::string& name) {
        VarId v = table.find(name);
        return v == kNoVar ? table.declare(name) : v;
    }
};

Polynomial v(Vars& vs, const std::string& name) { return Polynomial::var(vs(name)); }

Monomial rnd_monomial(std::mt19937_64& rng, int n_vars, int max_deg) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<int> var(0, n_vars - 1);
    Monomial m;
    int d = deg(rng);
    for (int i = 0; i < d; ++i) m = m * Monomial::var(var(rng));
    return m;
}

Polynomial rnd_poly(std::mt19937_64& rng, int n_vars, int max_deg, int max_terms) {
    std::uniform_int_distribution<int> terms(0, max_terms);
    std::uniform_int_distribution<long long> coeff(-5, 5);
    Polynomial p;
    int t = terms(rng);
    for (int i = 0; i < t; ++i)
        p.add_term(rnd_monomial(rng, n_vars, max_deg), Rational(coeff(rng)));
    return p;
}

// Term-by-term multiplication oracle, independent of operator*.
Polynomial naive_mul(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (auto& [ma, ca] : a.terms()) {
        Polynomial partial;
        for (auto& [mb, cb] : b.terms()) partial += Polynomial::term(ma * mb, ca * cb);
        r += partial;
    }
    return r;
}

}  // namespace

TEST_CASE("polynomial ring operations") {
    Vars vs;
    Polynomial x = v(vs, "x"), y = v(vs, "y"), t = v(vs, "t");
    Polynomial one(1);

    // (x - 1 + t)(x - 1 - t) - (y - 1 - t^2) == x^2 - 2x - y + 2
    Polynomial lhs = (x - one + t) * (x - one - t) + (y - one - t * t).scaled(Rational(-1));
    Polynomial expect = x * x - x.scaled(Rational(2)) - y + Polynomial(2);
    CHECK(lhs == expect);

    Polynomial p = x * y - t.scaled(Rational(3)) + Polynomial(Rational(1, 2));
    CHECK(p + Polynomial() == p);
    CHECK(p * Polynomial() == Polynomial());

    std::mt19937_64 rng(42);
    for (int i = 0; i < 100; ++i) {
        Polynomial a = rnd_poly(rng, 3, 3, 5), b = rnd_poly(rng, 3, 3, 5);
        CHECK(a * b == naive_mul(a, b));
        CHECK(a + b == b + a);
        CHECK(a - a == Polynomial());
    }
}

TEST_CASE("monomial order examples") {
    Vars vs;
    VarId x = vs("x"), y = vs("y");
    MonomialOrder grevlex = MonomialOrder::grevlex(2);
    Monomial x2y = Monomial::var(x, 2) * Monomial::var(y);
    Monomial xy2 = Monomial::var(x) * Monomial::var(y, 2);
    CHECK(grevlex.compare(x2y, xy2) > 0);
    CHECK(grevlex.compare(x2y, Monomial::one()) > 0);

    MonomialOrder lex = MonomialOrder::lex(2);
    CHECK(lex.compare(Monomial::var(x), Monomial::var(y, 5)) > 0);
}

TEST_CASE("order axioms hold for every kind") {
    Vars vs;
    for (auto& n : {"a", "b", "c", "d"}) vs(n);
    std::vector<MonomialOrder> orders{MonomialOrder::lex(4), MonomialOrder::deglex(4),
                                      MonomialOrder::grevlex(4)};
    // An effective-degree order over a small map.
    ForeignFunctionMap tm;
    VarId u1 = vs.table.fresh();
    tm.add(u1, FnSym::Reciprocal, Polynomial::var(0));
    orders.push_back(MonomialOrder::effective_degree(tm, {0, 2}, vs.table.size()));

    std::mt19937_64 rng(3);
    int n_vars = vs.table.size();
    for (auto& ord : orders) {
        for (int i = 0; i < 400; ++i) {
            Monomial a = rnd_monomial(rng, n_vars, 4), b = rnd_monomial(rng, n_vars, 4);
            Monomial m = rnd_monomial(rng, n_vars, 3);
            int c = ord.compare(a, b);
            CHECK(c == -ord.compare(b, a));
            if (a == b) CHECK(c == 0);
            if (c == 0) CHECK(a == b);  // total: ties only on equality
            if (c < 0) CHECK(ord.compare(a * m, b * m) < 0);  // multiplicative
            if (!a.is_one()) CHECK(ord.compare(a, Monomial::one()) > 0);
        }
    }
}

TEST_CASE("strict descent terminates") {
    Vars vs;
    for (auto& n : {"a", "b", "c"}) vs(n);
    MonomialOrder ord = MonomialOrder::grevlex(3);
    std::mt19937_64 rng(11);
    Monomial cur = rnd_monomial(rng, 3, 6);
    int steps = 0;
    for (;;) {
        Monomial next;
        bool found = false;
        for (int i = 0; i < 60; ++i) {
            Monomial cand = rnd_monomial(rng, 3, 6);
            if (ord.less(cand, cur)) {
                next = cand;
                found = true;
                break;
            }
        }
        if (!found) break;
        cur = next;
        ++steps;
        REQUIRE(steps < 10000);
    }
    CHECK(steps < 10000);
}

namespace {

struct ElasticMap {
    Vars vs;
    ForeignFunctionMap tm;
    std::set<VarId> keep;
    VarId u[7];  // 1-based as in the running example

    explicit ElasticMap(bool reduced) {
        for (auto& n : {"a", "b", "e", "v", "e'", "b'"}) vs(n);
        keep = {vs("a"), vs("b"), vs("e"), vs("v")};
        for (int i = 1; i <= 6; ++i) u[i] = vs.table.fresh();
        Polynomial e = Polynomial::var(vs("e")), a = Polynomial::var(vs("a"));
        Polynomial bp = Polynomial::var(vs("b'")), b = Polynomial::var(vs("b"));
        Polynomial vv = Polynomial::var(vs("v"));
        tm.add(u[1], FnSym::Reciprocal, e);
        tm.add(u[2], FnSym::Reciprocal, reduced ? e + a : Polynomial::var(vs("e'")));
        tm.add(u[3], FnSym::Reciprocal, e);
        tm.add(u[4], FnSym::Floor, vv * b * Polynomial::var(u[1]));
        tm.add(u[5], FnSym::Floor,
               reduced ? vv * (b + Polynomial::var(u[6])) * Polynomial::var(u[2])
                       : vv * bp * Polynomial::var(u[2]));
        tm.add(u[6], FnSym::Floor, a * b * Polynomial::var(u[3]));
    }
};

}  // namespace

TEST_CASE("effective degree matches the worked example") {
    ElasticMap raw(false);
    MonomialOrder ord = MonomialOrder::effective_degree(raw.tm, raw.keep, raw.vs.table.size());
    CHECK(ord.effdeg(Monomial::var(raw.u[5])) == EffDeg(2, 1));
    CHECK(ord.effdeg(Monomial::one()) == EffDeg(0, 0));

    ElasticMap red(true);
    MonomialOrder ord2 = MonomialOrder::effective_degree(red.tm, red.keep, red.vs.table.size());
    CHECK(ord2.effdeg(Monomial::var(red.u[5])) == EffDeg(0, 5));
}

TEST_CASE("effective degree is additive and tracks keep content") {
    ElasticMap m(true);
    MonomialOrder ord = MonomialOrder::effective_degree(m.tm, m.keep, m.vs.table.size());
    std::mt19937_64 rng(5);
    int n = m.vs.table.size();
    for (int i = 0; i < 300; ++i) {
        Monomial a = rnd_monomial(rng, n, 3), b = rnd_monomial(rng, n, 3);
        CHECK(ord.effdeg(a * b) == ord.effdeg(a) + ord.effdeg(b));
    }
    // all-keep content (transitively) has bad = 0
    CHECK(ord.effdeg(Monomial::var(m.vs("a")) * Monomial::var(m.u[4])).bad == 0);
    // a non-keep plain variable forces bad >= 1
    CHECK(ord.effdeg(Monomial::var(m.vs("e'"))).bad >= 1);
}

TEST_CASE("map variables sit above their definitions") {
    ElasticMap m(true);
    MonomialOrder ord = MonomialOrder::effective_degree(m.tm, m.keep, m.vs.table.size());
    for (auto& entry : m.tm.entries()) {
        if (entry.arg.is_zero()) continue;
        Monomial lm = leading_monomial(entry.arg, ord);
        CHECK(ord.compare(Monomial::var(entry.var), lm) > 0);
    }
}

TEST_CASE("cyclic map is rejected") {
    Vars vs;
    VarId p = vs("p");
    VarId u1 = vs.table.fresh(), u2 = vs.table.fresh();
    ForeignFunctionMap tm;
    tm.add(u1, FnSym::Floor, Polynomial::var(u2) * Polynomial::var(p));
    tm.add(u2, FnSym::Floor, Polynomial::var(u1));
    CHECK_THROWS_AS(MonomialOrder::effective_degree(tm, {p}, vs.table.size()),
                    std::invalid_argument);
}

TEST_CASE("leading monomial") {
    Vars vs;
    Polynomial x = v(vs, "x"), y = v(vs, "y");
    MonomialOrder ord = MonomialOrder::grevlex(2);
    Polynomial p = x * x - x.scaled(Rational(2)) - y + Polynomial(2);
    auto [m, c] = leading_term(p, ord);
    CHECK(m == Monomial::var(vs("x"), 2));
    CHECK(c == Rational(1));

    auto [m3, c3] = leading_term(Polynomial(3), ord);
    CHECK(m3 == Monomial::one());
    CHECK(c3 == Rational(3));
    CHECK_THROWS_AS(leading_term(Polynomial(), ord), std::invalid_argument);

    // Two map variables with identical effective degree: the later-created
    // one is smaller.
    Vars vs2;
    vs2("x"), vs2("y");
    ForeignFunctionMap tm;
    VarId u4 = vs2.table.fresh(), u5 = vs2.table.fresh();
    tm.add(u4, FnSym::Floor, Polynomial::var(vs2("x")));
    tm.add(u5, FnSym::Floor, Polynomial::var(vs2("y")));
    MonomialOrder eord =
        MonomialOrder::effective_degree(tm, {vs2("x"), vs2("y")}, vs2.table.size());
    Polynomial diff = Polynomial::var(u4) - Polynomial::var(u5);
    CHECK(leading_monomial(diff, eord) == Monomial::var(u4));
}

TEST_CASE("polynomial rendering") {
    Vars vs;
    Polynomial vv = v(vs, "v"), b = v(vs, "b"), u1 = v(vs, "u1"), u4 = v(vs, "u4");
    MonomialOrder ord = MonomialOrder::grevlex(4);
    Polynomial p = vv * b * u1 - u4;
    CHECK(p.str(vs.table, ord) == "v*b*u1 - u4");
    CHECK(Polynomial().str(vs.table, ord) == "0");
    CHECK((u4 - u4).str(vs.table) == "0");
}
