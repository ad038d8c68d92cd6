#include "doctest.h"
#include "symbound/runner.hpp"
#include "symbound/smt2.hpp"

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
direction both
depth 3
)";

}  // namespace

TEST_CASE("problem parsing and shape statistics") {
    ProblemFile p = parse_problem(kElastic, "elastic");
    CHECK(p.name == "elastic");
    CHECK(p.n_eq == 5);
    // The source formula carries four non-negativity atoms (a, b, e, v >= 0).
    CHECK(p.n_ineq == 4);
    CHECK(p.n_floors == 3);
    CHECK(p.keep.size() == 4);
    CHECK(p.depth == 3);
    CHECK(p.direction == BoundDirection::Both);

    // keep defaults to every declared variable
    ProblemFile q = parse_problem("var x y\nassume x >= y\nobjective x\n", "q");
    CHECK(q.keep.size() == 2);
}

TEST_CASE("problem round trip") {
    ProblemFile p = parse_problem(kElastic, "elastic");
    ProblemFile p2 = parse_problem(print_problem(p), "ignored");
    CHECK(problems_equal(p, p2));

    ProblemFile m = parse_problem(
        "name mix\nvar x y\nkeep x\n"
        "assume x >= 0 and (y > 1 or y < -1) \n"
        "assume y = 2 implies x >= 3\n"
        "assume not (x > 5)\n"
        "objective 2*x - y/3 + floor(x/2)\n"
        "direction lower\ndepth 2\norder grevlex\nengine lp\n",
        "mix");
    ProblemFile m2 = parse_problem(print_problem(m), "ignored");
    CHECK(problems_equal(m, m2));
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_problem("var x\nassume x >\nobjective x\n"), ParseError);
    CHECK_THROWS_AS(parse_problem("var x\nassume y >= 0\nobjective x\n"), ParseError);
    CHECK_THROWS_AS(parse_problem("var x\nassume x >= 0\n"), ParseError);  // no objective
    CHECK_THROWS_AS(parse_problem("vars x\nobjective x\n"), ParseError);
    try {
        parse_problem("var x\nassume x !>= 0\nobjective x\n");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("empty assumptions leave the objective unimprovable") {
    ProblemFile p = parse_problem("var x\nobjective x\n", "free");
    RunResult r = run(p);
    REQUIRE(r.status == RunStatus::Ok);
    REQUIRE(r.bounds.size() == 2);
    CHECK(r.bounds[0].direction == Direction::Upper);
    CHECK(r.bounds[0].found);
    CHECK(!r.bounds[0].improvable);  // reported as unbounded above
    CHECK(r.bounds[0].text == "x");
    CHECK(!r.bounds[1].improvable);
}

TEST_CASE("inconsistent assumptions get a dedicated outcome") {
    ProblemFile p = parse_problem("var x\nassume x >= 1\nassume x <= 0\nobjective x\n", "bad");
    RunResult r = run(p);
    CHECK(r.status == RunStatus::Inconsistent);
}

TEST_CASE("runs are deterministic") {
    ProblemFile p1 = parse_problem(kElastic, "elastic");
    RunResult r1 = run(p1);
    ProblemFile p2 = parse_problem(kElastic, "elastic");
    RunResult r2 = run(p2);
    REQUIRE(r1.bounds.size() == r2.bounds.size());
    for (std::size_t i = 0; i < r1.bounds.size(); ++i) {
        CHECK(r1.bounds[i].text == r2.bounds[i].text);
        CHECK(r1.bounds[i].strict == r2.bounds[i].strict);
        CHECK(r1.bounds[i].ed == r2.bounds[i].ed);
    }
    CHECK(r1.stats.c_eq == r2.stats.c_eq);
    CHECK(r1.stats.c_ineq == r2.stats.c_ineq);
    CHECK(r1.stats.n_monomials == r2.stats.n_monomials);
}

TEST_CASE("direction and witness options") {
    ProblemFile p = parse_problem("var x\nassume x >= 2\nassume x <= 5\nobjective x\n", "box");
    RunOptions ro;
    ro.direction = BoundDirection::Upper;
    ro.want_witness = true;
    RunResult r = run(p, ro);
    REQUIRE(r.bounds.size() == 1);
    CHECK(r.bounds[0].text == "5");
    CHECK(!r.bounds[0].witness_text.empty());

    ro.direction = BoundDirection::Lower;
    RunResult r2 = run(p, ro);
    REQUIRE(r2.bounds.size() == 1);
    CHECK(r2.bounds[0].text == "2");

    // strict input bound propagates to a strict result
    ProblemFile q = parse_problem("var x\nassume x < 5\nassume x >= 0\nobjective x\n", "strict");
    RunOptions up;
    up.direction = BoundDirection::Upper;
    RunResult rq = run(q, up);
    REQUIRE(rq.bounds.size() == 1);
    CHECK(rq.bounds[0].text == "5");
    CHECK(rq.bounds[0].strict);
}

TEST_CASE("machine-readable records") {
    ProblemFile p = parse_problem("var x\nassume x >= 2\nassume x <= 5\nobjective x\n", "box");
    RunResult r = run(p);
    std::string rec = report_record(p, r, 3, Engine::Local);
    CHECK(rec.find("result name=box") != std::string::npos);
    CHECK(rec.find("depth=3") != std::string::npos);
    CHECK(rec.find("engine=local") != std::string::npos);
    CHECK(rec.find("upper=\"5\"") != std::string::npos);
    CHECK(rec.find("lower=\"2\"") != std::string::npos);
}
