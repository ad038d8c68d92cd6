#include "symbound/polyhedron.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <set>
#include <stdexcept>

namespace symbound {

using lra::Atom;
using lra::LinExpr;
using lra::Rel;

bool satisfies(const Polyhedron& P, const DModel& m) {
    for (auto& a : P.cs)
        if (!a.eval(m)) return false;
    return true;
}

namespace {

Atom normalize_constraint(Atom a) {
    Rational ct = a.lhs.content();
    if (ct.is_zero() || ct.is_one()) return a;
    Rational inv = ct.inverse();
    a.lhs = a.lhs.scaled(inv);
    a.constant *= inv;
    return a;
}

bool trivially_true(const Atom& a) {
    if (!a.lhs.empty()) return false;
    switch (a.rel) {
        case Rel::Ge: return !a.constant.is_negative();
        case Rel::Gt: return a.constant.is_positive();
        case Rel::Eq: return a.constant.is_zero();
    }
    return false;
}

void push_constraint(std::vector<Atom>& out, Atom a) {
    if (trivially_true(a)) return;
    out.push_back(normalize_constraint(std::move(a)));
}

/// Substitutes x := e + ec (x-free) into a, eliminating x.
Atom substitute(const Atom& a, int x, const LinExpr& e, const Rational& ec) {
    Rational k = a.lhs.coeff(x);
    if (k.is_zero()) return a;
    Atom r = a;
    r.lhs.add(x, -k);
    r.lhs.add_scaled(e, k);
    r.constant += k * ec;
    return r;
}

struct Split {
    std::vector<int> eqs;     // equality constraints mentioning x
    std::vector<int> lows;    // a*x + ... with a > 0
    std::vector<int> highs;   // a*x + ... with a < 0
    std::vector<int> rest;    // x-free
};

Split split_on(const Polyhedron& P, int x) {
    Split s;
    for (std::size_t i = 0; i < P.cs.size(); ++i) {
        Rational k = P.cs[i].lhs.coeff(x);
        int idx = static_cast<int>(i);
        if (k.is_zero()) s.rest.push_back(idx);
        else if (P.cs[i].rel == Rel::Eq) s.eqs.push_back(idx);
        else if (k.is_positive()) s.lows.push_back(idx);
        else s.highs.push_back(idx);
    }
    return s;
}

/// The bound term of a one-sided constraint on x: for a*x + rest + k REL 0,
/// x >= (-rest - k)/a when a > 0, x <= the same when a < 0.
BoundTerm bound_of(const Atom& a, int x) {
    Rational k = a.lhs.coeff(x);
    BoundTerm b;
    Rational inv = (-k).inverse();
    b.expr = a.lhs.scaled(inv);
    b.expr.add(x, -b.expr.coeff(x));  // drop the x term
    b.c = a.constant * inv;
    b.strict = a.rel == Rel::Gt;
    return b;
}

}  // namespace

int BoundTerm::leading_dim() const {
    return expr.empty() ? INT_MAX : expr.terms.front().first;
}

Polyhedron local_project(const Polyhedron& P, const DModel& m, int x) {
    if (!satisfies(P, m)) throw std::invalid_argument("local_project: model does not satisfy P");
    Split s = split_on(P, x);
    Polyhedron out;
    out.n_dims = P.n_dims;

    if (!s.eqs.empty()) {
        // Equality substitution; independent of the model.
        const Atom& eq = P.cs[s.eqs.front()];
        Rational a = eq.lhs.coeff(x);
        LinExpr e = eq.lhs.scaled(-a.inverse());
        e.add(x, -e.coeff(x));
        Rational ec = -eq.constant / a;
        for (std::size_t i = 0; i < P.cs.size(); ++i) {
            if (static_cast<int>(i) == s.eqs.front()) continue;
            push_constraint(out.cs, substitute(P.cs[i], x, e, ec));
        }
        return out;
    }

    if (s.lows.empty()) {
        // No lower bound: x can go arbitrarily small.
        for (int i : s.rest) out.cs.push_back(P.cs[i]);
        return out;
    }

    // Binding lower bound at m, ties broken by the lowest constraint index.
    std::vector<BoundTerm> lbs;
    lbs.reserve(s.lows.size());
    for (int i : s.lows) lbs.push_back(bound_of(P.cs[i], x));
    std::size_t best = 0;
    DeltaRational best_val = lbs[0].expr.eval(m) + DeltaRational(lbs[0].c);
    for (std::size_t i = 1; i < lbs.size(); ++i) {
        DeltaRational v = lbs[i].expr.eval(m) + DeltaRational(lbs[i].c);
        if (v > best_val) {
            best = i;
            best_val = v;
        }
    }
    const BoundTerm& star = lbs[best];

    for (std::size_t i = 0; i < lbs.size(); ++i) {
        if (i == best) continue;
        // lb <= lb*
        Atom a;
        a.lhs = star.expr;
        a.lhs.add_scaled(lbs[i].expr, Rational(-1));
        a.constant = star.c - lbs[i].c;
        a.rel = Rel::Ge;
        push_constraint(out.cs, std::move(a));
    }
    for (int i : s.highs) {
        BoundTerm ub = bound_of(P.cs[i], x);
        // lb* <= ub (strict when either side is strict)
        Atom a;
        a.lhs = ub.expr;
        a.lhs.add_scaled(star.expr, Rational(-1));
        a.constant = ub.c - star.c;
        a.rel = (star.strict || ub.strict) ? Rel::Gt : Rel::Ge;
        push_constraint(out.cs, std::move(a));
    }
    for (int i : s.rest) out.cs.push_back(P.cs[i]);
    return out;
}

Polyhedron local_project_seq(const Polyhedron& P, const DModel& m, std::span<const int> dims) {
    Polyhedron cur = P;
    for (int d : dims) cur = local_project(cur, m, d);
    return cur;
}

namespace {

void dedupe_constraints(std::vector<Atom>& cs) {
    std::set<std::tuple<std::vector<std::pair<int, Rational>>, Rational, int>> seen;
    std::vector<Atom> out;
    for (auto& a : cs) {
        auto key = std::make_tuple(a.lhs.terms, a.constant, static_cast<int>(a.rel));
        if (seen.insert(key).second) out.push_back(a);
    }
    cs = std::move(out);
}

}  // namespace

Polyhedron full_project_fm(Polyhedron P, std::span<const int> dims) {
    for (int x : dims) {
        Split s = split_on(P, x);
        Polyhedron next;
        next.n_dims = P.n_dims;
        if (!s.eqs.empty()) {
            const Atom& eq = P.cs[s.eqs.front()];
            Rational a = eq.lhs.coeff(x);
            LinExpr e = eq.lhs.scaled(-a.inverse());
            e.add(x, -e.coeff(x));
            Rational ec = -eq.constant / a;
            for (std::size_t i = 0; i < P.cs.size(); ++i) {
                if (static_cast<int>(i) == s.eqs.front()) continue;
                push_constraint(next.cs, substitute(P.cs[i], x, e, ec));
            }
        } else {
            for (int li : s.lows) {
                for (int hi : s.highs) {
                    const Atom& lo = P.cs[li];
                    const Atom& up = P.cs[hi];
                    Rational a = lo.lhs.coeff(x);   // > 0
                    Rational b = up.lhs.coeff(x);   // < 0
                    Atom r;
                    r.lhs = lo.lhs.scaled(-b);
                    r.lhs.add_scaled(up.lhs, a);
                    r.constant = lo.constant * (-b) + up.constant * a;
                    r.rel = (lo.rel == Rel::Gt || up.rel == Rel::Gt) ? Rel::Gt : Rel::Ge;
                    // x cancels: (-b)*a + a*b = 0
                    push_constraint(next.cs, std::move(r));
                }
            }
            for (int i : s.rest) next.cs.push_back(P.cs[i]);
        }
        dedupe_constraints(next.cs);
        P = std::move(next);
    }
    return P;
}

namespace {

bool has_upper_bound(const Polyhedron& P, int T) {
    for (auto& a : P.cs) {
        Rational k = a.lhs.coeff(T);
        if (k.is_zero()) continue;
        if (a.rel == Rel::Eq || k.is_negative()) return true;
    }
    return false;
}

/// Bounds T <= ... read off a polyhedron: inequality constraints with a
/// negative T coefficient, plus both readings of equalities.
std::vector<BoundTerm> read_bounds(const Polyhedron& P, int T) {
    std::vector<BoundTerm> out;
    for (auto& a : P.cs) {
        Rational k = a.lhs.coeff(T);
        if (k.is_zero()) continue;
        if (a.rel == Rel::Eq) {
            Atom half = a;
            half.rel = Rel::Ge;
            if (k.is_positive()) {
                half.lhs = a.lhs.scaled(Rational(-1));
                half.constant = -a.constant;
            }
            out.push_back(bound_of(half, T));
        } else if (k.is_negative()) {
            out.push_back(bound_of(a, T));
        }
    }
    return out;
}

}  // namespace

std::vector<BoundTerm> conjecture(const Polyhedron& P, const DModel& m, std::span<const int> dims,
                                  int T) {
    if (!satisfies(P, m)) throw std::invalid_argument("conjecture: model does not satisfy P");
    Polyhedron cur = P;
    Polyhedron last_bounded = cur;  // T is bounded in P on entry (T = t)
    for (int d : dims) {
        cur = local_project(cur, m, d);
        if (has_upper_bound(cur, T)) {
            last_bounded = cur;
        } else {
            break;
        }
    }
    return read_bounds(last_bounded, T);
}

namespace {

/// Substitutes T by the term t + tc in a bound's negation:
/// not(T <= e + c)  <=>  t - e + (tc - c) > 0.
Atom negated_bound(const BoundTerm& u, const LinExpr& t, const Rational& tc) {
    Atom a;
    a.lhs = t;
    a.lhs.add_scaled(u.expr, Rational(-1));
    a.constant = tc - u.c;
    a.rel = u.strict ? Rel::Ge : Rel::Gt;
    return a;
}

/// One deterministic pass moving each dimension off its binding constraints
/// toward the interior, keeping every atom satisfied.
void diversify(const std::vector<Atom>& atoms, DModel& m, int n_dims) {
    for (int d = 0; d < n_dims; ++d) {
        bool has_lo = false, has_hi = false;
        DeltaRational lo, hi;
        bool fixed = false;
        for (auto& a : atoms) {
            Rational k = a.lhs.coeff(d);
            if (k.is_zero()) continue;
            // value of d that makes the atom tight, others fixed
            DeltaRational rest = a.lhs.eval(m) + DeltaRational(a.constant) - k * m[d];
            DeltaRational tight = (-k.inverse()) * rest;
            if (a.rel == Rel::Eq) {
                fixed = true;
                break;
            }
            bool lower = k.is_positive();
            DeltaRational bound =
                a.rel == Rel::Gt
                    ? (lower ? tight + DeltaRational(Rational(0), Rational(1))
                             : tight - DeltaRational(Rational(0), Rational(1)))
                    : tight;
            if (lower) {
                if (!has_lo || bound > lo) {
                    has_lo = true;
                    lo = bound;
                }
            } else {
                if (!has_hi || bound < hi) {
                    has_hi = true;
                    hi = bound;
                }
            }
        }
        if (fixed) continue;
        DeltaRational next = m[d];
        if (has_lo && has_hi) {
            if (lo < hi) next = Rational(1, 2) * (lo + hi);
        } else if (has_lo) {
            next = lo + DeltaRational(Rational(1));
        } else if (has_hi) {
            next = hi - DeltaRational(Rational(1));
        }
        m[d] = next;
    }
}

}  // namespace

ReduceResult poly_reduce(const Polyhedron& P, const lra::LinExpr& t, const Rational& tc,
                         const ReduceOptions& opts) {
    ReduceResult res;
    if (t.empty()) {
        // Degenerate objective: the constant is its own optimal bound.
        res.best.push_back({LinExpr{}, tc, false});
        res.all_true = res.best;
        return res;
    }

    int T = P.n_dims;  // fresh dimension, greater than every other
    Polyhedron PT = P;
    PT.n_dims = P.n_dims + 1;
    Atom teq;
    teq.lhs = t;
    teq.lhs.add(T, Rational(-1));
    teq.constant = tc;
    teq.rel = Rel::Eq;
    PT.cs.push_back(teq);

    std::vector<int> dims(P.n_dims);
    for (int i = 0; i < P.n_dims; ++i) dims[i] = i;

    // Model loop. The solver works over the T-free substitution of the
    // negated bounds, so its models are models of P.
    lra::Solver solver(P.n_dims);
    std::vector<Atom> asserted;
    for (auto& a : P.cs) {
        solver.assert_atom(solver.add_atom(a));
        asserted.push_back(a);
    }
    if (!solver.check()) throw std::invalid_argument("poly_reduce: unsatisfiable polyhedron");

    std::set<BoundTerm> seen;
    std::vector<BoundTerm> order;
    for (;;) {
        opts.deadline.check();
        DModel m = solver.model(P.n_dims);
        if (opts.diversify_models) diversify(asserted, m, P.n_dims);
        m.push_back(t.eval(m) + DeltaRational(tc));  // value of T

        std::vector<BoundTerm> conj = conjecture(PT, m, dims, T);
        bool fresh = false;
        for (auto& u : conj) {
            if (seen.insert(u).second) {
                order.push_back(u);
                fresh = true;
                Atom neg = negated_bound(u, t, tc);
                solver.assert_atom(solver.add_atom(neg));
                asserted.push_back(neg);
            }
        }
        if (!fresh)
            throw std::logic_error("poly_reduce: no progress (conjecture returned no new bound)");
        ++res.iterations;
        if (!solver.check()) break;
    }

    // Filter the conjectures down to true bounds.
    lra::Solver filt(P.n_dims);
    for (auto& a : P.cs) filt.assert_atom(filt.add_atom(a));
    for (auto& u : order) {
        filt.push();
        filt.assert_atom(filt.add_atom(negated_bound(u, t, tc)));
        bool sat = filt.check();
        filt.pop();
        if (!sat) res.all_true.push_back(u);
    }

    int best_rank = -1;
    for (auto& u : res.all_true) best_rank = std::max(best_rank, u.leading_dim());
    for (auto& u : res.all_true)
        if (u.leading_dim() == best_rank) res.best.push_back(u);
    for (auto& u : res.best) tighten_bound(P, t, tc, u);
    std::sort(res.best.begin(), res.best.end());
    res.best.erase(std::unique(res.best.begin(), res.best.end()), res.best.end());
    return res;
}

void tighten_bound(const Polyhedron& P, const lra::LinExpr& t, const Rational& tc, BoundTerm& u) {
    lra::Solver s(P.n_dims);
    for (auto& a : P.cs) s.assert_atom(s.add_atom(a));
    lra::LinExpr diff = t;
    diff.add_scaled(u.expr, Rational(-1));
    if (diff.empty()) {
        u.c = tc;
        u.strict = false;
        return;
    }
    lra::Var slack = s.new_var();
    Atom def;
    def.lhs = diff;
    def.lhs.add(slack, Rational(-1));
    def.rel = Rel::Eq;
    s.assert_atom(s.add_atom(def));
    if (!s.check()) throw std::logic_error("tighten_bound: unsatisfiable polyhedron");
    auto m = s.maximize(slack);
    if (!m) throw std::logic_error("tighten_bound: objective unbounded for a true bound");
    u.c = m->standard + tc;
    u.strict = m->delta.is_negative();
}

Polyhedron cone_polyhedron(const PolyhedralCone& Q) {
    Polyhedron P;
    P.n_dims = Q.n_dims;
    for (auto& g : Q.gens) {
        Atom a;
        a.lhs = g.expr;
        a.constant = g.c;
        a.rel = g.strict ? Rel::Gt : Rel::Ge;
        P.cs.push_back(a);
    }
    return P;
}

std::optional<ConeWitness> cone_membership(const PolyhedralCone& Q, const lra::LinExpr& v,
                                           const Rational& vc) {
    int n = static_cast<int>(Q.gens.size());
    lra::Solver s(n + 1);  // lambda_0..lambda_{n-1}, lambda_const
    for (int i = 0; i <= n; ++i) {
        Atom ge;
        ge.lhs.add(i, Rational(1));
        ge.rel = Rel::Ge;
        s.assert_atom(s.add_atom(ge));
    }
    std::set<int> dims;
    for (auto& g : Q.gens)
        for (auto& [d, c] : g.expr.terms) dims.insert(d);
    for (auto& [d, c] : v.terms) dims.insert(d);
    for (int d : dims) {
        Atom row;
        for (int i = 0; i < n; ++i) row.lhs.add(i, Q.gens[i].expr.coeff(d));
        row.constant = -v.coeff(d);
        row.rel = Rel::Eq;
        s.assert_atom(s.add_atom(row));
    }
    Atom crow;
    for (int i = 0; i < n; ++i) crow.lhs.add(i, Q.gens[i].c);
    crow.lhs.add(n, Rational(1));
    crow.constant = -vc;
    crow.rel = Rel::Eq;
    s.assert_atom(s.add_atom(crow));

    if (!s.check()) return std::nullopt;
    ConeWitness w;
    w.lambda.reserve(n);
    for (int i = 0; i < n; ++i) w.lambda.push_back(s.value(i).standard);
    w.lambda_const = s.value(n).standard;

    // Exact re-verification.
    LinExpr sum;
    Rational sc = w.lambda_const;
    for (int i = 0; i < n; ++i) {
        sum.add_scaled(Q.gens[i].expr, w.lambda[i]);
        sc += w.lambda[i] * Q.gens[i].c;
    }
    if (!(sum == v) || sc != vc) throw std::logic_error("cone_membership: witness check failed");
    return w;
}

std::vector<int> find_implied_equalities(const PolyhedralCone& Q) {
    std::vector<int> out;
    for (std::size_t i = 0; i < Q.gens.size(); ++i) {
        LinExpr neg = Q.gens[i].expr.scaled(Rational(-1));
        if (cone_membership(Q, neg, -Q.gens[i].c)) out.push_back(static_cast<int>(i));
    }
    return out;
}

LpReduceResult lp_reduce(const PolyhedralCone& Q, const lra::LinExpr& t, const Rational& tc,
                         const ReduceOptions& opts) {
    int n = static_cast<int>(Q.gens.size());
    LpReduceResult res;

    // One query per prefix over the full coefficient-matching system: the
    // unknowns are the multipliers lambda_i >= 0 and the bound coefficients
    // tc_j, related by tc_j = t_j + sum(lambda_i q_i[j]) on every dimension;
    // the query for prefix k pins tc_0 .. tc_{k-1} to zero. k shrinks,
    // greatest dimension last, until the system becomes feasible (k = 0
    // always is, with lambda = 0 and tc = t).
    for (int k = Q.n_dims;; --k) {
        opts.deadline.check();
        ++res.solves;
        lra::Solver s(n + Q.n_dims);  // lambda_0..lambda_{n-1}, tc_0..tc_{n_dims-1}
        for (int i = 0; i < n; ++i) {
            Atom ge;
            ge.lhs.add(i, Rational(1));
            ge.rel = Rel::Ge;
            s.assert_atom(s.add_atom(ge));
        }
        for (int d = 0; d < Q.n_dims; ++d) {
            Atom row;
            for (int i = 0; i < n; ++i) row.lhs.add(i, Q.gens[i].expr.coeff(d));
            row.lhs.add(n + d, Rational(-1));
            row.constant = t.coeff(d);  // tc_d = t_d + sum(lambda_i q_i[d])
            row.rel = Rel::Eq;
            s.assert_atom(s.add_atom(row));
        }
        for (int d = 0; d < k; ++d) {
            Atom zero;
            zero.lhs.add(n + d, Rational(1));
            zero.rel = Rel::Eq;
            s.assert_atom(s.add_atom(zero));
        }
        if (!s.check()) continue;
        res.witness.lambda.reserve(n);
        for (int i = 0; i < n; ++i) res.witness.lambda.push_back(s.value(i).standard);
        res.witness.lambda_const = Rational(0);
        break;
    }

    BoundTerm b;
    b.expr = t;
    b.c = tc;
    bool strict = false;
    for (int i = 0; i < n; ++i) {
        b.expr.add_scaled(Q.gens[i].expr, res.witness.lambda[i]);
        b.c += res.witness.lambda[i] * Q.gens[i].c;
        if (Q.gens[i].strict && res.witness.lambda[i].is_positive()) strict = true;
    }
    b.strict = strict;
    tighten_bound(cone_polyhedron(Q), t, tc, b);
    res.bound = std::move(b);
    return res;
}

}  // namespace symbound
