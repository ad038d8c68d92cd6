#include "symbound/cone.hpp"

#include <algorithm>
#include <stdexcept>

namespace symbound {

ConeStatus make_reduced(PolynomialCone& C) {
    if (C.ideal.is_trivial()) return ConeStatus::Inconsistent;
    std::vector<IneqGen> kept;
    kept.reserve(C.gens.size());
    for (auto& g : C.gens) {
        IneqGen r = g;
        r.p = C.ideal.reduce(g.p);
        if (r.p.is_constant()) {
            Rational c = r.p.constant_term();
            if (c.is_negative()) return ConeStatus::Inconsistent;
            if (c.is_zero() && r.strict) return ConeStatus::Inconsistent;
            continue;  // non-negative constants are already in the cone
        }
        kept.push_back(std::move(r));
    }
    C.gens = std::move(kept);
    return ConeStatus::Ok;
}

DimRegistry DimRegistry::build(const PolynomialCone& C, const Polynomial& target) {
    DimRegistry reg;
    std::vector<Monomial> monos;
    auto collect = [&](const Polynomial& p) {
        for (auto& [m, c] : p.terms())
            if (!m.is_one()) monos.push_back(m);
    };
    for (auto& g : C.gens) collect(g.p);
    collect(target);
    std::sort(monos.begin(), monos.end(),
              [&](const Monomial& a, const Monomial& b) { return C.order().greater(a, b); });
    monos.erase(std::unique(monos.begin(), monos.end()), monos.end());
    reg.dims_ = std::move(monos);
    for (std::size_t i = 0; i < reg.dims_.size(); ++i) reg.index_.emplace(reg.dims_[i], static_cast<int>(i));
    return reg;
}

std::pair<lra::LinExpr, Rational> DimRegistry::to_vector(const Polynomial& p) const {
    lra::LinExpr e;
    Rational c(0);
    for (auto& [m, k] : p.terms()) {
        if (m.is_one()) {
            c = k;
        } else {
            e.add(index_.at(m), k);
        }
    }
    return {std::move(e), std::move(c)};
}

Polynomial DimRegistry::to_polynomial(const lra::LinExpr& e, const Rational& c) const {
    Polynomial p(c);
    for (auto& [d, k] : e.terms) p.add_term(dims_.at(d), k);
    return p;
}

namespace {

/// Prefers fewer terms, then the structural order; used to pick a canonical
/// representative among equally optimal bounds.
bool simpler_bound(const CredBound& a, const CredBound& b) {
    if (a.bound.term_count() != b.bound.term_count())
        return a.bound.term_count() < b.bound.term_count();
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.strict < b.strict;
}

CredBound assemble(const PolynomialCone& C, const Polynomial& t_orig, const Polynomial& bound,
                   bool strict, const std::vector<Rational>& lambda, const Rational& lconst,
                   Direction dir) {
    CredBound out;
    out.strict = strict;
    out.witness.constant = lconst;
    Polynomial comb(lconst);
    for (std::size_t j = 0; j < lambda.size(); ++j) {
        if (lambda[j].is_zero()) continue;
        out.witness.cone_multipliers.push_back({lambda[j], static_cast<int>(j)});
        comb += C.gens[j].p.scaled(lambda[j]);
    }
    // bound - t (upper) resp. t - bound (lower) minus the conic part must lie
    // in the ideal; its division cofactors complete the witness.
    out.bound = dir == Direction::Upper ? bound : -bound;
    Polynomial diff = dir == Direction::Upper ? out.bound - t_orig : t_orig - out.bound;
    diff -= comb;
    auto division = C.ideal.reduce_with_cofactors(diff);
    if (!division.remainder.is_zero())
        throw std::logic_error("cred: witness assembly failed (remainder nonzero)");
    for (std::size_t i = 0; i < division.quotients.size(); ++i)
        if (!division.quotients[i].is_zero())
            out.witness.ideal_cofactors.push_back({division.quotients[i], static_cast<int>(i)});
    return out;
}

}  // namespace

CredResult cred(const PolynomialCone& C, const Polynomial& t, Direction dir,
                const CredOptions& opts) {
    CredResult res;
    if (C.ideal.is_trivial()) {
        res.status = ConeStatus::Inconsistent;
        return res;
    }
    // Lower bounds reuse the upper-bound machinery on -t.
    Polynomial objective = dir == Direction::Upper ? t : -t;

    PolynomialCone R = C;
    if (make_reduced(R) == ConeStatus::Inconsistent) {
        res.status = ConeStatus::Inconsistent;
        return res;
    }
    Polynomial reduced = R.ideal.reduce(objective);

    if (reduced.is_constant()) {
        CredBound b = assemble(C, t, reduced, false, {}, Rational(0), dir);
        res.bounds.push_back(std::move(b));
        return res;
    }

    DimRegistry reg = DimRegistry::build(R, reduced);
    PolyhedralCone Q;
    Q.n_dims = reg.n_dims();
    for (auto& g : R.gens) {
        auto [expr, c] = reg.to_vector(g.p);
        Q.gens.push_back({std::move(expr), std::move(c), g.strict});
    }
    auto [texpr, tc] = reg.to_vector(reduced);

    ReduceOptions ropts;
    ropts.deadline = opts.deadline;
    ropts.bridge = opts.bridge;

    std::vector<BoundTerm> raw;
    if (opts.engine == Engine::Lp) {
        LpReduceResult lp = lp_reduce(Q, texpr, tc, ropts);
        raw.push_back(lp.bound);
        res.iterations = lp.solves;
    } else {
        Polyhedron P = cone_polyhedron(Q);
        ReduceResult rr = poly_reduce(P, texpr, tc, ropts);
        res.iterations = rr.iterations;
        raw = rr.best;
    }
    std::vector<CredBound> collected;
    for (auto& u : raw) {
        // Cone membership recovers the multipliers for the witness.
        lra::LinExpr diff = u.expr;
        diff.add_scaled(texpr, Rational(-1));
        auto w = cone_membership(Q, diff, u.c - tc);
        if (!w) throw std::logic_error("cred: true bound without a cone witness");
        Polynomial bp = reg.to_polynomial(u.expr, u.c);
        collected.push_back(assemble(C, t, bp, u.strict, w->lambda, w->lambda_const, dir));
    }

    std::sort(collected.begin(), collected.end(), simpler_bound);
    collected.erase(std::unique(collected.begin(), collected.end(),
                                [](const CredBound& a, const CredBound& b) {
                                    return a.bound == b.bound && a.strict == b.strict;
                                }),
                    collected.end());
    res.bounds = std::move(collected);
    for (auto& b : res.bounds)
        if (!verify_witness(C, t, dir, b)) throw std::logic_error("cred: witness verification failed");
    return res;
}

bool verify_witness(const PolynomialCone& C, const Polynomial& t, Direction dir,
                    const CredBound& b) {
    Polynomial rhs(b.witness.constant);
    for (auto& [h, i] : b.witness.ideal_cofactors) rhs += h * C.ideal.elements().at(i);
    for (auto& [l, j] : b.witness.cone_multipliers) {
        if (l.is_negative()) return false;
        rhs += C.gens.at(j).p.scaled(l);
    }
    Polynomial lhs = dir == Direction::Upper ? b.bound - t : t - b.bound;
    return lhs == rhs;
}

std::string witness_str(const PolynomialCone& C, const Polynomial& t, Direction dir,
                        const CredBound& b, const VarTable& vars) {
    const MonomialOrder& ord = C.order();
    std::string lhs = dir == Direction::Upper
                          ? "(" + b.bound.str(vars, ord) + ") - (" + t.str(vars, ord) + ")"
                          : "(" + t.str(vars, ord) + ") - (" + b.bound.str(vars, ord) + ")";
    std::string s = lhs + " =";
    for (auto& [h, i] : b.witness.ideal_cofactors)
        s += "\n  + (" + h.str(vars, ord) + ") * (" + C.ideal.elements().at(i).str(vars, ord) + ")";
    for (auto& [l, j] : b.witness.cone_multipliers)
        s += "\n  + " + l.str() + " * (" + C.gens.at(j).p.str(vars, ord) + ")" +
             (C.gens.at(j).strict ? "  [strict]" : "");
    s += "\n  + " + b.witness.constant.str();
    return s;
}

}  // namespace symbound
