#include <algorithm>

#include "doctest.h"
#include "symbound/runner.hpp"
#include "symbound/saturation.hpp"

using namespace symbound;

namespace {

const char* kElastic = R"(
name elastic
var x y a2 e' b' a b e v
keep a b e v
assume x = floor(v*b/e)
assume y = floor(v*b'/e')
assume a2 = floor(a*b/e)
assume e' = e + a
assume b' = b + a2
assume a >= 0
assume b >= 0
assume e >= 0
assume v >= 0
objective x - y
)";

SaturationConfig config_for(const ProblemFile& p, int depth = 3) {
    SaturationConfig cfg;
    cfg.depth = depth;
    cfg.keep.insert(p.keep.begin(), p.keep.end());
    cfg.order_kind = p.order;
    return cfg;
}

}  // namespace

TEST_CASE("purification of the running example") {
    ProblemFile p = parse_problem(kElastic, "elastic");
    PurifyResult pr = purify(p.assumptions, *p.vars);

    REQUIRE(pr.tm.size() == 6);
    int recips = 0, floors = 0;
    std::vector<Polynomial> recip_args;
    for (auto& e : pr.tm.entries()) {
        if (e.fn == FnSym::Reciprocal) {
            ++recips;
            recip_args.push_back(e.arg);
        } else {
            ++floors;
        }
    }
    CHECK(recips == 3);
    CHECK(floors == 3);
    // 1/e occurs in two different atoms and gets two fresh variables;
    // closure merges them later.
    Polynomial e = Polynomial::var(p.vars->find("e"));
    CHECK(std::count(recip_args.begin(), recip_args.end(), e) == 2);

    // atoms are function-free polynomials
    for (auto& a : pr.formula.atoms)
        for (auto& [m, c] : a.p.terms())
            for (auto& [v, exp] : m.exponents()) CHECK(!pr.tm.contains(v) == !pr.tm.contains(v));

    // function-free input purifies to itself
    ProblemFile q = parse_problem("var x\nassume x >= 0\nobjective x\n", "q");
    PurifyResult qr = purify(q.assumptions, *q.vars);
    CHECK(qr.tm.empty());
}

TEST_CASE("purification of nested floors is arguments-first") {
    ProblemFile p = parse_problem("var a b sf\nobjective floor(floor(a*b/sf)*sf/b)\n", "fp");
    ForeignFunctionMap tm;
    Polynomial obj = purify_term(p.objective, *p.vars, tm);
    REQUIRE(tm.size() == 4);
    const auto& es = tm.entries();
    CHECK(es[0].fn == FnSym::Reciprocal);  // 1/sf
    CHECK(es[1].fn == FnSym::Floor);       // floor(a*b*u1)
    CHECK(es[2].fn == FnSym::Reciprocal);  // 1/b
    CHECK(es[3].fn == FnSym::Floor);       // floor(u2*sf*u3)
    CHECK(es[1].arg.coeff(Monomial::var(p.vars->find("a")) * Monomial::var(p.vars->find("b")) *
                          Monomial::var(es[0].var)) == Rational(1));
    CHECK(obj == Polynomial::var(es[3].var));
}

TEST_CASE("axiom instantiation") {
    VarTable vt;
    VarId e = vt.declare("e");
    VarId v = vt.declare("v"), b = vt.declare("b");
    ForeignFunctionMap tm;
    VarId u1 = vt.fresh();
    tm.add(u1, FnSym::Reciprocal, Polynomial::var(e));
    VarId u4 = vt.fresh();
    Polynomial arg = Polynomial::var(v) * Polynomial::var(b) * Polynomial::var(u1);
    tm.add(u4, FnSym::Floor, arg);

    SaturationConfig cfg;
    InstantiatedAxioms ax = instantiate_axioms(tm, cfg);
    REQUIRE(ax.equalities.size() == 1);
    CHECK(ax.equalities[0] == Polynomial::var(u1) * Polynomial::var(e) - Polynomial(1));
    REQUIRE(ax.atoms.size() == 2);
    CHECK(ax.atoms[0].p == arg - Polynomial::var(u4));                  // u4 <= vbu1
    CHECK(ax.atoms[1].p == Polynomial::var(u4) - arg + Polynomial(1));  // vbu1 - 1 <= u4
    CHECK(ax.implications.size() == 2);  // one guard per map entry

    CHECK(instantiate_axioms(ForeignFunctionMap{}, cfg).equalities.empty());
    CHECK(instantiate_axioms(ForeignFunctionMap{}, cfg).atoms.empty());
}

TEST_CASE("closure merges equal foreign calls") {
    VarTable vt;
    VarId e = vt.declare("e");
    ForeignFunctionMap tm;
    VarId u1 = vt.fresh(), u3 = vt.fresh();
    tm.add(u1, FnSym::Reciprocal, Polynomial::var(e));
    tm.add(u3, FnSym::Reciprocal, Polynomial::var(e));

    SaturationConfig cfg;
    cfg.keep = {e};
    MonomialOrder ord = MonomialOrder::effective_degree(tm, cfg.keep, vt.size());
    GroebnerBasis gb = GroebnerBasis::compute({}, ord);
    ClosureResult res = closure(gb, tm, cfg, vt.size());
    CHECK(res.changed);
    CHECK(res.gb.contains(Polynomial::var(u3) - Polynomial::var(u1)));

    // disjoint symbols stay apart
    VarTable vt2;
    VarId x = vt2.declare("x");
    ForeignFunctionMap tm2;
    VarId a = vt2.fresh(), b = vt2.fresh();
    tm2.add(a, FnSym::Reciprocal, Polynomial::var(x));
    tm2.add(b, FnSym::Floor, Polynomial::var(x));
    SaturationConfig cfg2;
    cfg2.keep = {x};
    MonomialOrder ord2 = MonomialOrder::effective_degree(tm2, cfg2.keep, vt2.size());
    ClosureResult res2 = closure(GroebnerBasis::compute({}, ord2), tm2, cfg2, vt2.size());
    CHECK(res2.gb.elements().empty());

    // arguments equal modulo the ideal
    VarTable vt3;
    VarId x3 = vt3.declare("x"), y3 = vt3.declare("y");
    ForeignFunctionMap tm3;
    VarId u = vt3.fresh(), up = vt3.fresh();
    tm3.add(u, FnSym::Floor, Polynomial::var(x3));
    tm3.add(up, FnSym::Floor, Polynomial::var(y3));
    SaturationConfig cfg3;
    cfg3.keep = {x3, y3};
    MonomialOrder ord3 = MonomialOrder::effective_degree(tm3, cfg3.keep, vt3.size());
    GroebnerBasis gb3 =
        GroebnerBasis::compute({Polynomial::var(x3) - Polynomial::var(y3)}, ord3);
    ClosureResult res3 = closure(gb3, tm3, cfg3, vt3.size());
    CHECK(res3.gb.contains(Polynomial::var(up) - Polynomial::var(u)));
}

TEST_CASE("foreign map reduction rewrites arguments") {
    VarTable vt;
    VarId ep = vt.declare("e'"), a = vt.declare("a"), e = vt.declare("e");
    ForeignFunctionMap tm;
    VarId u2 = vt.fresh();
    tm.add(u2, FnSym::Reciprocal, Polynomial::var(ep));

    SaturationConfig cfg;
    cfg.keep = {a, e};
    MonomialOrder ord = MonomialOrder::effective_degree(tm, cfg.keep, vt.size());
    GroebnerBasis gb = GroebnerBasis::compute(
        {Polynomial::var(ep) - Polynomial::var(e) - Polynomial::var(a)}, ord);

    ClosureResult res = reduce_term_map(tm, gb, cfg, vt.size());
    CHECK(res.changed);
    CHECK(res.tm.entries()[0].arg == Polynomial::var(e) + Polynomial::var(a));

    // a second pass is a fixpoint
    ClosureResult res2 = reduce_term_map(res.tm, res.gb, cfg, vt.size());
    CHECK(!res2.changed);
}

TEST_CASE("take_products matches the worked examples") {
    VarTable vt;
    Polynomial x = Polynomial::var(vt.declare("x"));
    Polynomial y = Polynomial::var(vt.declare("y"));
    Polynomial z = Polynomial::var(vt.declare("z"));

    std::vector<std::pair<Polynomial, int>> existing{
        {x, 1}, {y, 1}, {x * x, 2}, {x * y, 2}, {y * y, 2}};
    auto out = take_products({{z, 1}}, existing, 2);
    std::vector<std::pair<Polynomial, int>> expect{
        {z, 1}, {x * z, 2}, {y * z, 2}, {z * z, 2}};
    std::sort(expect.begin(), expect.end(), [](auto& a, auto& b) {
        return a.second != b.second ? a.second < b.second : a.first < b.first;
    });
    CHECK(out == expect);

    CHECK(take_products({{z, 1}}, existing, 1) ==
          std::vector<std::pair<Polynomial, int>>{{z, 1}});

    Polynomial e = Polynomial::var(vt.declare("e"));
    auto powers = take_products({{e, 1}}, {}, 3);
    REQUIRE(powers.size() == 3);
    CHECK(powers[0].first == e);
    CHECK(powers[1].first == e * e);
    CHECK(powers[2].first == e * e * e);
    CHECK(powers[2].second == 3);
}

TEST_CASE("consequence finding extracts guarded facts and promotes equalities") {
    // phi: e >= 0, a >= 0, (e + a < 0 or u >= 0)
    VarTable vt;
    VarId e = vt.declare("e"), a = vt.declare("a"), u = vt.declare("u");
    PurifiedFormula phi;
    Polynomial pe = Polynomial::var(e), pa = Polynomial::var(a), pu = Polynomial::var(u);
    phi.conjuncts.push_back({NnfNode::Lit, phi.add_atom({pe, Rel3::Ge}), {}});
    phi.conjuncts.push_back({NnfNode::Lit, phi.add_atom({pa, Rel3::Ge}), {}});
    NnfNode guard;
    guard.kind = NnfNode::Or;
    guard.kids.push_back({NnfNode::Lit, phi.add_atom({-(pe + pa), Rel3::Gt}), {}});
    guard.kids.push_back({NnfNode::Lit, phi.add_atom({pu, Rel3::Ge}), {}});
    phi.conjuncts.push_back(guard);

    SaturationConfig cfg;
    MonomialOrder ord = MonomialOrder::grevlex(vt.size());
    GroebnerBasis gb = GroebnerBasis::compute({}, ord);
    Consequences cons = find_consequences(phi, gb, {}, {}, cfg);
    CHECK(!cons.inconsistent);
    bool found_u = false;
    for (auto& [p, strict] : cons.inequalities) found_u |= (p == pu && !strict);
    CHECK(found_u);

    // salience probe: x >= 0 and -x >= 0 in the cone promote x = 0
    std::vector<IneqGen> gens{{Polynomial::var(e), false, 1, {}},
                              {-Polynomial::var(e), false, 1, {}}};
    PurifiedFormula empty;
    Consequences sal = find_consequences(empty, gb, gens, {}, cfg);
    bool promoted = false;
    for (auto& q : sal.equalities)
        promoted |= (q == Polynomial::var(e) || q == -Polynomial::var(e));
    CHECK(promoted);
}

TEST_CASE("saturate on the running example") {
    ProblemFile p = parse_problem(kElastic, "elastic");
    SatResult s = saturate(p, config_for(p));
    REQUIRE(!s.inconsistent);
    CHECK(s.stats.c_eq == 8);
    CHECK(s.stats.rounds >= 3);
    CHECK(s.stats.c_ineq == 814);
    CHECK(s.stats.n_monomials >= 331);
    CHECK(s.stats.n_monomials <= 495);

    VarTable& vt = *p.vars;
    // u1 -> 1/e (atom 1) and u5 -> 1/e (atom 3) merged by closure
    VarId u1 = vt.find("u1"), u5 = vt.find("u5"), u3 = vt.find("u3");
    REQUIRE(u1 != kNoVar);
    REQUIRE(u5 != kNoVar);
    CHECK(s.cone.ideal.contains(Polynomial::var(u5) - Polynomial::var(u1)));
    // e*u3 + a*u3 - 1 with u3 the reciprocal of e' (reduced to e + a)
    Polynomial e = Polynomial::var(vt.find("e")), a = Polynomial::var(vt.find("a"));
    CHECK(s.cone.ideal.contains(e * Polynomial::var(u3) + a * Polynomial::var(u3) - Polynomial(1)));
    // every generator factors into depth-1 facts whose depths sum up
    for (auto& g : s.cone.gens) {
        CHECK(g.depth == static_cast<int>(g.factors.size()));
        CHECK(g.depth >= 1);
        CHECK(g.depth <= 3);
    }
    // the reduced map rewrote e' out of u3's argument
    const auto* entry = s.tm.find(u3);
    REQUIRE(entry != nullptr);
    CHECK(entry->arg == e + a);
}

TEST_CASE("saturate simple fixpoints") {
    ProblemFile p = parse_problem("var x\nassume x = 1\nobjective x\n", "eq");
    SatResult s = saturate(p, config_for(p));
    CHECK(!s.inconsistent);
    CHECK(s.stats.rounds == 1);
    CHECK(s.stats.c_eq == 1);
    CHECK(s.cone.ideal.contains(Polynomial::var(0) - Polynomial(1)));
    CHECK(s.cone.gens.empty());

    // x >= 0 and x <= 0: the salience probe promotes x into the ideal
    ProblemFile q = parse_problem("var x\nassume x >= 0\nassume x <= 0\nobjective x\n", "z");
    SatResult sq = saturate(q, config_for(q));
    CHECK(!sq.inconsistent);
    CHECK(sq.cone.ideal.contains(Polynomial::var(0)));

    // closure is idempotent: a second closure pass adds nothing
    ProblemFile e = parse_problem(kElastic, "elastic");
    SatResult se = saturate(e, config_for(e));
    SaturationConfig cfg = config_for(e);
    ClosureResult again = closure(se.cone.ideal, se.tm, cfg, e.vars->size());
    CHECK(!again.changed);
}

TEST_CASE("saturate flags contradictory assumptions") {
    ProblemFile p =
        parse_problem("var x\nassume x >= 1\nassume x <= 0\nobjective x\n", "bad");
    SatResult s = saturate(p, config_for(p));
    CHECK(s.inconsistent);

    ProblemFile q = parse_problem("var x\nassume x = 1\nassume x = 2\nobjective x\n", "bad2");
    SatResult sq = saturate(q, config_for(q));
    CHECK(sq.inconsistent);
}

TEST_CASE("repurify inverts unpurify") {
    ProblemFile p = parse_problem(kElastic, "elastic");
    SatResult s = saturate(p, config_for(p));
    REQUIRE(!s.inconsistent);
    CredResult r = cred(s.cone, s.objective, Direction::Upper);
    REQUIRE(!r.bounds.empty());
    const Polynomial& bound = r.bounds.front().bound;
    Term t = unpurify(bound, s.tm, s.cone.order());
    Polynomial back = repurify(t, *p.vars, s.tm);
    CHECK(back == bound);
}
