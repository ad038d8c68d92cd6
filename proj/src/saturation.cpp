#include "symbound/saturation.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace symbound {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Content-normalized form used as the identity of an inequality fact.
/// Scaling by a positive rational preserves the inequality's meaning.
Polynomial fact_key(const Polynomial& p) {
    if (p.is_zero()) return p;
    return p.scaled(p.content().inverse());
}

using Memo = std::map<std::pair<FnSym, Polynomial>, VarId>;

Polynomial purify_term_rec(const Term& t, VarTable& vars, ForeignFunctionMap& tm, Memo& memo) {
    switch (t->kind) {
        case TermNode::Num:
            return Polynomial(t->num);
        case TermNode::Var:
            return Polynomial::var(t->var);
        case TermNode::Add: {
            Polynomial p;
            for (auto& k : t->kids) p += purify_term_rec(k, vars, tm, memo);
            return p;
        }
        case TermNode::Mul: {
            Polynomial p(1);
            for (auto& k : t->kids) p = p * purify_term_rec(k, vars, tm, memo);
            return p;
        }
        case TermNode::Fn: {
            Polynomial arg = purify_term_rec(t->kids[0], vars, tm, memo);
            if (arg.is_constant()) {
                Rational c = arg.constant_term();
                if (t->fn == FnSym::Floor) return Polynomial(Rational(c.floor()));
                return Polynomial(c.inverse());
            }
            auto key = std::make_pair(t->fn, arg);
            auto it = memo.find(key);
            if (it != memo.end()) return Polynomial::var(it->second);
            VarId u = vars.fresh("u");
            tm.add(u, t->fn, arg);
            memo.emplace(std::move(key), u);
            return Polynomial::var(u);
        }
    }
    throw std::logic_error("purify_term_rec");
}

/// NNF conversion with per-atom purification scope.
void nnf(const Formula& f, bool neg, PurifiedFormula& out, VarTable& vars, ForeignFunctionMap& tm,
         std::vector<NnfNode>& sink) {
    switch (f.kind) {
        case Formula::Not:
            nnf(f.kids[0], !neg, out, vars, tm, sink);
            return;
        case Formula::Implies: {
            Formula disj = Formula::disj({Formula::negate(f.kids[0]), f.kids[1]});
            nnf(disj, neg, out, vars, tm, sink);
            return;
        }
        case Formula::And:
        case Formula::Or: {
            bool is_and = (f.kind == Formula::And) != neg;
            std::vector<NnfNode> kids;
            for (auto& k : f.kids) nnf(k, neg, out, vars, tm, kids);
            NnfNode n;
            n.kind = is_and ? NnfNode::And : NnfNode::Or;
            n.kids = std::move(kids);
            if (n.kids.size() == 1) sink.push_back(std::move(n.kids[0]));
            else sink.push_back(std::move(n));
            return;
        }
        case Formula::Atom: {
            Memo memo;  // sharing scope: one atom
            Polynomial l = purify_term_rec(f.lhs, vars, tm, memo);
            Polynomial r = purify_term_rec(f.rhs, vars, tm, memo);
            Polynomial p = l - r;
            CmpOp op = f.op;
            if (neg) {
                switch (f.op) {
                    case CmpOp::Eq: op = CmpOp::Ne; break;
                    case CmpOp::Ne: op = CmpOp::Eq; break;
                    case CmpOp::Le: op = CmpOp::Gt; break;
                    case CmpOp::Lt: op = CmpOp::Ge; break;
                    case CmpOp::Ge: op = CmpOp::Lt; break;
                    case CmpOp::Gt: op = CmpOp::Le; break;
                }
            }
            switch (op) {
                case CmpOp::Ge:
                    sink.push_back({NnfNode::Lit, out.add_atom({p, Rel3::Ge}), {}});
                    return;
                case CmpOp::Gt:
                    sink.push_back({NnfNode::Lit, out.add_atom({p, Rel3::Gt}), {}});
                    return;
                case CmpOp::Le:
                    sink.push_back({NnfNode::Lit, out.add_atom({-p, Rel3::Ge}), {}});
                    return;
                case CmpOp::Lt:
                    sink.push_back({NnfNode::Lit, out.add_atom({-p, Rel3::Gt}), {}});
                    return;
                case CmpOp::Eq:
                    sink.push_back({NnfNode::Lit, out.add_atom({p, Rel3::Eq}), {}});
                    return;
                case CmpOp::Ne: {
                    NnfNode n;
                    n.kind = NnfNode::Or;
                    n.kids.push_back({NnfNode::Lit, out.add_atom({p, Rel3::Gt}), {}});
                    n.kids.push_back({NnfNode::Lit, out.add_atom({-p, Rel3::Gt}), {}});
                    sink.push_back(std::move(n));
                    return;
                }
            }
        }
    }
}

}  // namespace

PurifyResult purify(const std::vector<Formula>& assumptions, VarTable& vars) {
    PurifyResult res;
    for (auto& f : assumptions) nnf(f, false, res.formula, vars, res.tm, res.formula.conjuncts);
    return res;
}

Polynomial purify_term(const Term& t, VarTable& vars, ForeignFunctionMap& tm) {
    Memo memo;
    return purify_term_rec(t, vars, tm, memo);
}

Polynomial repurify(const Term& t, VarTable& vars, const ForeignFunctionMap& tm) {
    ForeignFunctionMap scratch = tm;
    Memo memo;
    for (auto& e : tm.entries()) memo.emplace(std::make_pair(e.fn, e.arg), e.var);
    return purify_term_rec(t, vars, scratch, memo);
}

InstantiatedAxioms instantiate_axioms(const ForeignFunctionMap& tm, const SaturationConfig& cfg) {
    InstantiatedAxioms out;
    for (auto& e : tm.entries()) {
        Polynomial u = Polynomial::var(e.var);
        if (e.fn == FnSym::Floor) {
            if (cfg.axiom_floor_bounds) {
                out.atoms.push_back({e.arg - u, Rel3::Ge});                  // u <= p
                out.atoms.push_back({u - e.arg + Polynomial(1), Rel3::Ge});  // p - 1 <= u
            }
            if (cfg.axiom_floor_nonneg)
                out.implications.push_back({{-e.arg, Rel3::Gt}, {u, Rel3::Ge}});  // p<0 or u>=0
        } else {
            // u * p = 1 is sound under the documented nonzero assumption.
            if (cfg.axiom_recip_unit) out.equalities.push_back(u * e.arg - Polynomial(1));
            if (cfg.axiom_recip_nonneg)
                out.implications.push_back({{-e.arg, Rel3::Gt}, {u, Rel3::Ge}});
        }
    }
    return out;
}

namespace {

MonomialOrder build_order(const ForeignFunctionMap& tm, const SaturationConfig& cfg, int n_vars) {
    return MonomialOrder::make(cfg.order_kind, tm, cfg.keep, n_vars);
}

}  // namespace

ClosureResult reduce_term_map(ForeignFunctionMap tm, GroebnerBasis gb, const SaturationConfig& cfg,
                              int n_vars) {
    ClosureResult res{std::move(gb), std::move(tm), false};
    for (;;) {
        bool changed = false;
        for (auto& e : res.tm.mutable_entries()) {
            Polynomial r = res.gb.reduce(e.arg);
            if (r != e.arg) {
                e.arg = std::move(r);
                changed = true;
            }
        }
        if (!changed) break;
        res.changed = true;
        if (cfg.order_kind == OrderKind::EffectiveDegree) {
            // The order snapshots the map; rebuild it and the basis under it.
            MonomialOrder order = build_order(res.tm, cfg, n_vars);
            res.gb = GroebnerBasis::compute(res.gb.elements(), order);
        }
    }
    return res;
}

ClosureResult closure(GroebnerBasis gb, ForeignFunctionMap tm, const SaturationConfig& cfg,
                      int n_vars) {
    ClosureResult res{std::move(gb), std::move(tm), false};
    for (;;) {
        ClosureResult step = reduce_term_map(std::move(res.tm), std::move(res.gb), cfg, n_vars);
        res.gb = std::move(step.gb);
        res.tm = std::move(step.tm);
        res.changed |= step.changed;

        bool merged = false;
        const auto& entries = res.tm.entries();
        for (std::size_t i = 0; i < entries.size() && !merged; ++i) {
            for (std::size_t j = i + 1; j < entries.size() && !merged; ++j) {
                if (entries[i].fn != entries[j].fn) continue;
                if (!res.gb.reduce(entries[i].arg - entries[j].arg).is_zero()) continue;
                Polynomial eq = Polynomial::var(entries[j].var) - Polynomial::var(entries[i].var);
                if (res.gb.reduce(eq).is_zero()) continue;  // already known
                std::vector<Polynomial> gens = res.gb.elements();
                gens.push_back(std::move(eq));
                res.gb = GroebnerBasis::compute(std::move(gens), res.gb.order());
                res.changed = merged = true;
            }
        }
        if (!merged || res.gb.is_trivial()) return res;
    }
}

std::vector<std::pair<Polynomial, int>> take_products(
    const std::vector<std::pair<Polynomial, int>>& fresh,
    const std::vector<std::pair<Polynomial, int>>& existing, int depth_bound,
    const GroebnerBasis* gb) {
    auto reduce = [&](const Polynomial& p) { return gb ? gb->reduce(p) : p; };

    struct Item {
        Polynomial p;
        int depth;
    };
    std::vector<Item> pool;
    std::set<Polynomial> seen;
    for (auto& [p, d] : existing) {
        Polynomial r = reduce(p);
        pool.push_back({r, d});
        seen.insert(fact_key(r));
    }
    std::vector<std::pair<Polynomial, int>> out;
    std::vector<Item> fresh_items;  // new facts and their transitive products
    for (auto& [p, d] : fresh) {
        Polynomial r = reduce(p);
        if (d <= depth_bound && seen.insert(fact_key(r)).second) {
            fresh_items.push_back({r, d});
            out.push_back({r, d});
        }
    }
    for (std::size_t qi = 0; qi < fresh_items.size(); ++qi) {
        Item cur = fresh_items[qi];
        auto try_combine = [&](const Item& other) {
            int d = cur.depth + other.depth;
            if (d > depth_bound) return;
            Polynomial prod = reduce(cur.p * other.p);
            if (prod.is_constant()) return;
            if (!seen.insert(fact_key(prod)).second) return;
            fresh_items.push_back({prod, d});
            out.push_back({prod, d});
        };
        for (auto& other : pool) try_combine(other);
        for (std::size_t qj = 0; qj <= qi; ++qj) try_combine(fresh_items[qj]);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first < b.first;
    });
    return out;
}

namespace {

/// Linearization dictionary: non-constant monomials to solver variables.
struct Linearizer {
    std::map<Monomial, int> index;
    int n = 0;

    int dim(const Monomial& m) {
        auto [it, fresh] = index.emplace(m, n);
        if (fresh) ++n;
        return it->second;
    }
    lra::Atom atom(const Polynomial& p, Rel3 rel) {
        lra::Atom a;
        for (auto& [m, c] : p.terms()) {
            if (m.is_one()) a.constant = c;
            else a.lhs.add(dim(m), c);
        }
        a.rel = rel == Rel3::Ge ? lra::Rel::Ge : rel == Rel3::Gt ? lra::Rel::Gt : lra::Rel::Eq;
        return a;
    }
};

struct CandidateInfo {
    Polynomial p;  // reduced
    Rel3 rel;
    bool probe = false;  // salience probe: candidate is -q >= 0 for generator q
};

}  // namespace

Consequences find_consequences(const PurifiedFormula& phi, const GroebnerBasis& gb,
                               const std::vector<IneqGen>& gens,
                               const std::vector<std::pair<Polynomial, bool>>& known_facts,
                               const SaturationConfig& cfg) {
    Consequences out;
    Linearizer lin;
    lra::LinearSystem sys;

    std::function<lra::Node(const NnfNode&)> convert = [&](const NnfNode& n) -> lra::Node {
        if (n.kind == NnfNode::Lit) {
            const PolyAtom& pa = phi.atoms[n.atom];
            return lra::Node::lit(sys.add_atom(lin.atom(gb.reduce(pa.p), pa.rel)));
        }
        std::vector<lra::Node> kids;
        kids.reserve(n.kids.size());
        for (auto& k : n.kids) kids.push_back(convert(k));
        return n.kind == NnfNode::And ? lra::Node::conj(std::move(kids))
                                      : lra::Node::disj(std::move(kids));
    };
    for (auto& c : phi.conjuncts) sys.conjuncts.push_back(convert(c));
    for (auto& g : gb.elements()) sys.assert_atom(lin.atom(g, Rel3::Eq));
    for (auto& g : gens) sys.assert_atom(lin.atom(g.p, g.strict ? Rel3::Gt : Rel3::Ge));

    // Candidate pool: the formula's NNF atoms (ideal-reduced) plus salience
    // probes -q >= 0 per non-strict generator.
    std::vector<CandidateInfo> cands;
    std::set<std::pair<Polynomial, int>> seen;
    auto add_candidate = [&](Polynomial p, Rel3 rel, bool probe) {
        if (p.is_constant()) return;
        Polynomial key = rel == Rel3::Eq ? p.primitive() : fact_key(p);
        if (!seen.insert({std::move(key), rel == Rel3::Eq ? 2 : (rel == Rel3::Gt ? 1 : 0)}).second)
            return;
        cands.push_back({std::move(p), rel, probe});
    };
    for (auto& pa : phi.atoms) {
        Polynomial r = gb.reduce(pa.p);
        if (r.is_constant()) continue;  // trivially decided either way
        if (pa.rel != Rel3::Eq) {
            Polynomial norm = fact_key(r);
            bool known = false;
            for (auto& [kp, kstrict] : known_facts) {
                if (kp == norm && (kstrict || pa.rel == Rel3::Ge)) {
                    known = true;
                    break;
                }
            }
            if (known) continue;
        }
        add_candidate(std::move(r), pa.rel, false);
    }
    std::set<Polynomial> probe_seen;
    for (auto& g : gens) {
        if (g.strict) continue;
        if (!probe_seen.insert(g.p.primitive()).second) continue;
        add_candidate(-g.p, Rel3::Ge, true);
    }

    lra::CheckOptions copts;
    copts.bridge = cfg.bridge;

    std::vector<lra::Atom> query;
    query.reserve(cands.size());
    for (auto& c : cands) query.push_back(lin.atom(c.p, c.rel));
    sys.n_vars = lin.n;

    if (!lra::check_sat(sys, copts).sat) {
        out.inconsistent = true;
        return out;
    }

    std::vector<int> kept = lra::houdini_filter(sys, query, copts);
    for (int idx : kept) {
        CandidateInfo& c = cands[idx];
        if (c.probe) {
            out.equalities.push_back(-c.p);  // q >= 0 and -q >= 0: promote q = 0
        } else if (c.rel == Rel3::Eq) {
            out.equalities.push_back(c.p);
        } else {
            out.inequalities.push_back({fact_key(c.p), c.rel == Rel3::Gt});
        }
    }
    return out;
}

SatResult saturate(const ProblemFile& problem, const SaturationConfig& cfg) {
    SatResult res;
    VarTable& vars = *problem.vars;

    PurifyResult pr = purify(problem.assumptions, vars);
    res.objective = purify_term(problem.objective, vars, pr.tm);

    InstantiatedAxioms ax = instantiate_axioms(pr.tm, cfg);
    for (auto& a : ax.atoms)
        pr.formula.conjuncts.push_back({NnfNode::Lit, pr.formula.add_atom(a), {}});
    for (auto& clause : ax.implications) {
        NnfNode n;
        n.kind = NnfNode::Or;
        for (auto& a : clause) n.kids.push_back({NnfNode::Lit, pr.formula.add_atom(a), {}});
        pr.formula.conjuncts.push_back(std::move(n));
    }

    // Equality atoms among the top-level conjuncts seed the ideal, together
    // with the instantiated equality axioms.
    std::vector<Polynomial> pending = std::move(ax.equalities);
    for (auto& n : pr.formula.conjuncts)
        if (n.kind == NnfNode::Lit && pr.formula.atoms[n.atom].rel == Rel3::Eq)
            pending.push_back(pr.formula.atoms[n.atom].p);

    int n_vars = vars.size();
    MonomialOrder order = build_order(pr.tm, cfg, n_vars);
    GroebnerBasis gb = GroebnerBasis::compute({}, order);
    ForeignFunctionMap tm = pr.tm;

    // Atomic depth-1 facts and the product entries they span. Entries are
    // keyed by their multiset of atomic factors; values kept ideal-reduced.
    std::vector<std::pair<Polynomial, bool>> atomics;  // (form at discovery, strict)
    struct Entry {
        Polynomial value;
        bool strict;
    };
    std::map<std::vector<int>, Entry> entries;

    auto inconsistent_exit = [&](GroebnerBasis basis, ForeignFunctionMap fmap) {
        res.inconsistent = true;
        res.cone = PolynomialCone{std::move(basis), {}};
        res.tm = std::move(fmap);
        res.phi = std::move(pr.formula);
        return res;
    };

    for (int round = 1;; ++round) {
        cfg.deadline.check();
        bool changed = false;

        // (1) add pending equalities
        if (!pending.empty()) {
            std::vector<Polynomial> gens_list = gb.elements();
            for (auto& p : pending) gens_list.push_back(p);
            pending.clear();
            gb = GroebnerBasis::compute(std::move(gens_list), gb.order());
            changed = true;
            if (gb.is_trivial()) return inconsistent_exit(std::move(gb), std::move(tm));
        }

        // (2) closure, including map reduction and order rebuilds
        auto t0 = Clock::now();
        ClosureResult cl = closure(std::move(gb), std::move(tm), cfg, n_vars);
        gb = std::move(cl.gb);
        tm = std::move(cl.tm);
        changed |= cl.changed;
        res.stats.closure_seconds += seconds_since(t0);
        if (gb.is_trivial()) return inconsistent_exit(std::move(gb), std::move(tm));

        // (3) re-reduce the inequality generators; non-negative constants
        // drop out, negative ones expose contradictory assumptions
        for (auto it = entries.begin(); it != entries.end();) {
            Polynomial r = gb.reduce(it->second.value);
            if (r.is_constant()) {
                Rational c = r.constant_term();
                if (c.is_negative() || (c.is_zero() && it->second.strict))
                    return inconsistent_exit(std::move(gb), std::move(tm));
                it = entries.erase(it);
                continue;
            }
            if (r != it->second.value) it->second.value = std::move(r);
            ++it;
        }

        // (4) consequence finding
        t0 = Clock::now();
        std::vector<IneqGen> gen_view;
        gen_view.reserve(entries.size());
        for (auto& [k, e] : entries)
            gen_view.push_back({e.value, e.strict, static_cast<int>(k.size()), k});
        std::map<Polynomial, int> atomic_index;  // current normal form -> atomic id
        std::vector<std::pair<Polynomial, bool>> atomic_norm;
        for (std::size_t i = 0; i < atomics.size(); ++i) {
            Polynomial r = fact_key(gb.reduce(atomics[i].first));
            atomic_norm.push_back({r, atomics[i].second});
            atomic_index.emplace(r, static_cast<int>(i));
        }
        Consequences cons = find_consequences(pr.formula, gb, gen_view, atomic_norm, cfg);
        res.stats.consequence_seconds += seconds_since(t0);
        if (cons.inconsistent) return inconsistent_exit(std::move(gb), std::move(tm));
        for (auto& e : cons.equalities) {
            pending.push_back(e);
            changed = true;
        }

        // (5) take products of the new facts
        t0 = Clock::now();
        std::vector<int> new_atomics;
        for (auto& [p, strict] : cons.inequalities) {
            auto it = atomic_index.find(p);
            if (it != atomic_index.end()) {
                if (strict && !atomics[it->second].second) {
                    atomics[it->second].second = true;  // strictness upgrade
                    auto eit = entries.find({it->second});
                    if (eit != entries.end()) eit->second.strict = true;
                    changed = true;
                }
                continue;
            }
            int id = static_cast<int>(atomics.size());
            atomics.push_back({p, strict});
            atomic_index.emplace(p, id);
            new_atomics.push_back(id);
        }
        if (!new_atomics.empty()) {
            changed = true;
            bool contradiction = false;
            std::vector<int> stack;
            // every multiset of atomics of size <= depth containing a new one
            std::function<void(int, int)> enumerate = [&](int min_id, int remaining) {
                if (!stack.empty()) {
                    bool has_new = stack.back() >= new_atomics.front();
                    if (has_new && !entries.count(stack)) {
                        Polynomial prod(1);
                        bool strict = true;
                        for (int id : stack) {
                            prod = prod * atomics[id].first;
                            strict = strict && atomics[id].second;
                        }
                        prod = gb.reduce(prod);
                        if (prod.is_constant()) {
                            Rational c = prod.constant_term();
                            if (c.is_negative() || (c.is_zero() && strict)) contradiction = true;
                            // non-negative constants fold into 1
                        } else {
                            entries.emplace(stack, Entry{std::move(prod), strict});
                        }
                    }
                }
                if (remaining == 0) return;
                for (int id = min_id; id < static_cast<int>(atomics.size()); ++id) {
                    stack.push_back(id);
                    enumerate(id, remaining - 1);
                    stack.pop_back();
                }
            };
            enumerate(0, cfg.depth);
            if (contradiction) return inconsistent_exit(std::move(gb), std::move(tm));
        }
        res.stats.product_seconds += seconds_since(t0);

        if (!changed && pending.empty()) break;
        res.stats.rounds = round;
    }

    res.stats.c_eq = static_cast<int>(gb.elements().size());
    res.stats.c_ineq = static_cast<int>(entries.size());
    res.stats.n_atomic_facts = static_cast<int>(atomics.size());
    std::set<Monomial> monos;
    for (auto& [k, e] : entries)
        for (auto& [m, c] : e.value.terms()) monos.insert(m);
    res.stats.n_monomials = static_cast<int>(monos.size());

    PolynomialCone cone{std::move(gb), {}};
    for (auto& [k, e] : entries)
        cone.gens.push_back({e.value, e.strict, static_cast<int>(k.size()), k});
    res.cone = std::move(cone);
    res.tm = std::move(tm);
    res.phi = std::move(pr.formula);
    return res;
}

}  // namespace symbound
