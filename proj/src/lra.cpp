#include "symbound/lra.hpp"

#include <algorithm>
#include <stdexcept>

#include "symbound/smt2.hpp"

namespace symbound::lra {

Rational LinExpr::coeff(Var v) const {
    auto it = std::lower_bound(terms.begin(), terms.end(), v,
                               [](const auto& t, Var w) { return t.first < w; });
    if (it != terms.end() && it->first == v) return it->second;
    return Rational(0);
}

void LinExpr::add(Var v, const Rational& c) {
    if (c.is_zero()) return;
    auto it = std::lower_bound(terms.begin(), terms.end(), v,
                               [](const auto& t, Var w) { return t.first < w; });
    if (it != terms.end() && it->first == v) {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    } else {
        terms.insert(it, {v, c});
    }
}

void LinExpr::add_scaled(const LinExpr& o, const Rational& c) {
    if (c.is_zero()) return;
    std::vector<std::pair<Var, Rational>> merged;
    merged.reserve(terms.size() + o.terms.size());
    auto a = terms.begin();
    auto b = o.terms.begin();
    while (a != terms.end() || b != o.terms.end()) {
        if (b == o.terms.end() || (a != terms.end() && a->first < b->first)) {
            merged.push_back(*a++);
        } else if (a == terms.end() || b->first < a->first) {
            merged.push_back({b->first, b->second * c});
            ++b;
        } else {
            Rational s = a->second + b->second * c;
            if (!s.is_zero()) merged.push_back({a->first, s});
            ++a, ++b;
        }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const auto& t) { return t.second.is_zero(); }),
                 merged.end());
    terms = std::move(merged);
}

LinExpr LinExpr::scaled(const Rational& c) const {
    LinExpr r;
    if (c.is_zero()) return r;
    r.terms.reserve(terms.size());
    for (auto& [v, k] : terms) r.terms.push_back({v, k * c});
    return r;
}

DeltaRational LinExpr::eval(const std::vector<DeltaRational>& vals) const {
    DeltaRational r;
    for (auto& [v, c] : terms) r += c * vals.at(v);
    return r;
}

Rational LinExpr::content() const {
    BigInt num_gcd = 0, den_lcm = 1;
    for (auto& [v, c] : terms) {
        num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::abs(c.num()));
        den_lcm = boost::multiprecision::lcm(den_lcm, c.den());
    }
    if (num_gcd == 0) return Rational(0);
    return Rational(num_gcd, den_lcm);
}

bool Atom::eval(const std::vector<DeltaRational>& vals) const {
    DeltaRational v = lhs.eval(vals) + DeltaRational(constant);
    switch (rel) {
        case Rel::Ge: return v >= DeltaRational(Rational(0));
        case Rel::Gt: return v > DeltaRational(Rational(0));
        case Rel::Eq: return v == DeltaRational(Rational(0));
    }
    return false;
}

bool Node::eval(const std::vector<Atom>& atoms, const std::vector<DeltaRational>& vals) const {
    switch (kind) {
        case Lit: return atoms[atom].eval(vals);
        case And:
            for (auto& k : kids)
                if (!k.eval(atoms, vals)) return false;
            return true;
        case Or:
            for (auto& k : kids)
                if (k.eval(atoms, vals)) return true;
            return false;
    }
    return false;
}

int LinearSystem::add_atom(Atom a) {
    atoms.push_back(std::move(a));
    return static_cast<int>(atoms.size()) - 1;
}

bool verify_farkas(std::span<const Atom> atoms, const Farkas& cert) {
    LinExpr sum;
    Rational constant(0);
    bool strict = false;
    for (auto& [idx, coeff] : cert) {
        if (coeff.is_zero()) continue;
        const Atom& a = atoms[idx];
        if (a.rel != Rel::Eq && coeff.is_negative()) return false;
        sum.add_scaled(a.lhs, coeff);
        constant += a.constant * coeff;
        if (a.rel == Rel::Gt) strict = true;
    }
    if (!sum.empty()) return false;
    return constant.is_negative() || (constant.is_zero() && strict);
}

// ---------------------------------------------------------------------------
// Solver

Solver::Solver(int n_vars) {
    for (int i = 0; i < n_vars; ++i) new_var();
}

Var Solver::new_var() {
    Var v = static_cast<Var>(vars_.size());
    vars_.push_back({});
    slack_def_.push_back({});
    return v;
}

int Solver::add_atom(Atom a) {
    atoms_.push_back(std::move(a));
    return static_cast<int>(atoms_.size()) - 1;
}

Var Solver::slack_for(const LinExpr& form) {
    auto it = slack_index_.find(form.terms);
    if (it != slack_index_.end()) return it->second;
    Var s = new_var();
    slack_def_[s] = form;
    slack_index_.emplace(form.terms, s);
    // Express the new row over the current nonbasic variables.
    LinExpr row;
    DeltaRational val;
    for (auto& [v, c] : form.terms) {
        if (vars_[v].basic) {
            row.add_scaled(rows_.at(v), c);
        } else {
            row.add(v, c);
        }
        val += c * vars_[v].val;
    }
    vars_[s].basic = true;
    vars_[s].val = val;
    rows_.emplace(s, row);
    for (auto& [v, c] : rows_.at(s).terms) cols_[v].insert(s);
    return s;
}

void Solver::assert_atom(int id) {
    if (conflict_) return;
    const Atom& a = atoms_[id];
    if (a.lhs.empty()) {
        bool ok = a.rel == Rel::Ge   ? !a.constant.is_negative()
                  : a.rel == Rel::Gt ? a.constant.is_positive()
                                     : a.constant.is_zero();
        if (!ok) {
            Rational coeff = (a.rel == Rel::Eq && a.constant.is_positive()) ? Rational(-1) : Rational(1);
            conflict_ = Farkas{{id, coeff}};
        }
        return;
    }

    Var v;
    Rational c0;  // atom is c0 * v + constant REL 0
    if (a.lhs.terms.size() == 1) {
        v = a.lhs.terms[0].first;
        c0 = a.lhs.terms[0].second;
    } else {
        Rational ct = a.lhs.content();
        Rational sigma = a.lhs.terms[0].second.is_negative() ? Rational(-1) : Rational(1);
        Rational scale = sigma * ct;  // lhs == scale * norm
        LinExpr norm = a.lhs.scaled(scale.inverse());
        v = slack_for(norm);
        c0 = scale;
    }

    Rational bound = -a.constant / c0;
    Rational dsign = a.rel == Rel::Gt ? (c0.is_positive() ? Rational(1) : Rational(-1)) : Rational(0);
    DeltaRational bval(bound, dsign);
    if (c0.is_positive()) {
        // v >= bval (Ge/Gt) or v == bval (Eq)
        assert_bound(v, true, bval, id, c0.inverse());
        if (a.rel == Rel::Eq) assert_bound(v, false, bval, id, -c0.inverse());
    } else {
        assert_bound(v, false, bval, id, -c0.inverse());
        if (a.rel == Rel::Eq) assert_bound(v, true, bval, id, c0.inverse());
    }
}

void Solver::assert_bound(Var v, bool is_lb, const DeltaRational& val, int atom,
                          const Rational& scale) {
    if (conflict_) return;
    VarState& st = vars_[v];
    BoundInfo& mine = is_lb ? st.lb : st.ub;
    if (mine.present && (is_lb ? val <= mine.val : val >= mine.val)) return;
    trail_.push_back({v, is_lb, mine});
    mine = {true, val, atom, scale};
    const BoundInfo& other = is_lb ? st.ub : st.lb;
    if (other.present && (is_lb ? val > other.val : val < other.val)) {
        Farkas cert;
        cert[st.lb.atom] += st.lb.scale;
        cert[st.ub.atom] += st.ub.scale;
        // Scales on equality atoms may be negative; inequality scales are
        // positive by construction.
        conflict_ = std::move(cert);
        return;
    }
    if (!st.basic) {
        if (is_lb ? st.val < val : st.val > val) update_value(v, val);
    }
}

void Solver::update_value(Var v, const DeltaRational& newval) {
    DeltaRational theta = newval - vars_[v].val;
    vars_[v].val = newval;
    auto it = cols_.find(v);
    if (it == cols_.end()) return;
    for (Var b : it->second) {
        vars_[b].val += rows_.at(b).coeff(v) * theta;
    }
}

void Solver::pivot(Var basic, Var nonbasic) {
    LinExpr row = std::move(rows_.at(basic));
    rows_.erase(basic);
    for (auto& [v, c] : row.terms) cols_[v].erase(basic);

    Rational a = row.coeff(nonbasic);
    // nonbasic = (1/a) * basic - sum_{k != nonbasic} (c_k / a) x_k
    LinExpr nrow;
    nrow.add(basic, a.inverse());
    for (auto& [v, c] : row.terms)
        if (v != nonbasic) nrow.add(v, -(c / a));

    vars_[basic].basic = false;
    vars_[nonbasic].basic = true;

    // Substitute into every other row that mentions the entering variable.
    auto col = cols_.find(nonbasic);
    std::vector<Var> touched;
    if (col != cols_.end()) touched.assign(col->second.begin(), col->second.end());
    for (Var b : touched) {
        LinExpr& r = rows_.at(b);
        Rational k = r.coeff(nonbasic);
        if (k.is_zero()) continue;
        for (auto& [v, c] : r.terms) cols_[v].erase(b);
        r.add(nonbasic, -k);
        r.add_scaled(nrow, k);
        for (auto& [v, c] : r.terms) cols_[v].insert(b);
    }
    if (col != cols_.end()) col->second.clear();

    rows_.emplace(nonbasic, nrow);
    for (auto& [v, c] : rows_.at(nonbasic).terms) cols_[v].insert(nonbasic);
}

void Solver::pivot_and_update(Var basic, Var nonbasic, const DeltaRational& v) {
    Rational a = rows_.at(basic).coeff(nonbasic);
    DeltaRational theta = a.inverse() * (v - vars_[basic].val);
    vars_[basic].val = v;
    vars_[nonbasic].val += theta;
    for (Var b : cols_.at(nonbasic)) {
        if (b == basic) continue;
        vars_[b].val += rows_.at(b).coeff(nonbasic) * theta;
    }
    pivot(basic, nonbasic);
}

void Solver::fail_row(Var basic, bool need_increase) {
    // The row cannot move the basic variable toward its violated bound:
    // every nonbasic variable is pinned at the blocking bound.
    const LinExpr& row = rows_.at(basic);
    Farkas cert;
    const VarState& bs = vars_[basic];
    if (need_increase) {
        cert[bs.lb.atom] += bs.lb.scale;
    } else {
        cert[bs.ub.atom] += bs.ub.scale;
    }
    for (auto& [v, c] : row.terms) {
        const VarState& st = vars_[v];
        bool coeff_up = need_increase ? c.is_positive() : c.is_negative();
        // coeff_up means increasing x_v would help; it is blocked at its ub.
        const BoundInfo& b = coeff_up ? st.ub : st.lb;
        Rational mult = (need_increase ? c : -c);
        if (!coeff_up) mult = -mult;
        // mult = |c| in the helping direction
        cert[b.atom] += mult.abs() * b.scale;
    }
    conflict_ = std::move(cert);
}

bool Solver::check() {
    if (conflict_) return false;
    // Crossed bounds may survive a pop that cleared the recorded conflict
    // (the two sides can live in different scopes); rediscover them here.
    for (Var v = 0; v < static_cast<Var>(vars_.size()); ++v) {
        const VarState& st = vars_[v];
        if (st.lb.present && st.ub.present && st.lb.val > st.ub.val) {
            Farkas cert;
            cert[st.lb.atom] += st.lb.scale;
            cert[st.ub.atom] += st.ub.scale;
            conflict_ = std::move(cert);
            return false;
        }
    }
    for (;;) {
        Var viol = -1;
        bool below = false;
        for (Var v = 0; v < static_cast<Var>(vars_.size()); ++v) {
            if (!vars_[v].basic) continue;
            const VarState& st = vars_[v];
            if (st.lb.present && st.val < st.lb.val) {
                viol = v;
                below = true;
                break;
            }
            if (st.ub.present && st.val > st.ub.val) {
                viol = v;
                below = false;
                break;
            }
        }
        if (viol < 0) return true;

        const LinExpr& row = rows_.at(viol);
        Var enter = -1;
        for (auto& [v, c] : row.terms) {
            const VarState& st = vars_[v];
            bool helps = below ? c.is_positive() : c.is_negative();
            if (helps) {
                if (!st.ub.present || st.val < st.ub.val) {
                    enter = v;
                    break;
                }
            } else {
                if (!st.lb.present || st.val > st.lb.val) {
                    enter = v;
                    break;
                }
            }
        }
        if (enter < 0) {
            fail_row(viol, below);
            return false;
        }
        pivot_and_update(viol, enter, below ? vars_[viol].lb.val : vars_[viol].ub.val);
    }
}

std::optional<DeltaRational> Solver::maximize(Var v) {
    // Textbook phase-2 ascent on the bounded-variable tableau, Bland's rule
    // throughout (smallest entering index, smallest blocking row on ties).
    for (;;) {
        if (!vars_[v].basic) {
            // Increase v directly until a bound blocks.
            const VarState& vs = vars_[v];
            bool blocked_self = false;
            std::optional<DeltaRational> theta;  // max increase
            Var blocking = -1;
            if (vs.ub.present) {
                theta = vs.ub.val - vs.val;
                blocked_self = true;
            }
            auto col = cols_.find(v);
            if (col != cols_.end()) {
                for (Var b : col->second) {
                    Rational a = rows_.at(b).coeff(v);
                    if (a.is_zero()) continue;
                    const VarState& bs = vars_[b];
                    std::optional<DeltaRational> lim;
                    if (a.is_positive() && bs.ub.present)
                        lim = a.inverse() * (bs.ub.val - bs.val);
                    else if (a.is_negative() && bs.lb.present)
                        lim = a.inverse() * (bs.lb.val - bs.val);
                    if (lim && (!theta || *lim < *theta || (*lim == *theta && blocked_self))) {
                        theta = lim;
                        blocking = b;
                        blocked_self = false;
                    }
                }
            }
            if (!theta) return std::nullopt;  // unbounded
            if (*theta > DeltaRational(Rational(0))) update_value(v, vars_[v].val + *theta);
            if (blocked_self || blocking < 0) return vars_[v].val;
            // Enter the basis through the blocking row and keep going.
            pivot(blocking, v);
            continue;
        }

        const LinExpr row = rows_.at(v);
        Var enter = -1;
        bool enter_up = false;
        for (auto& [x, a] : row.terms) {
            const VarState& xs = vars_[x];
            if (a.is_positive() && (!xs.ub.present || xs.val < xs.ub.val)) {
                enter = x;
                enter_up = true;
                break;
            }
            if (a.is_negative() && (!xs.lb.present || xs.val > xs.lb.val)) {
                enter = x;
                enter_up = false;
                break;
            }
        }
        if (enter < 0) return vars_[v].val;  // optimal

        // Ratio test: how far can `enter` move in its improving direction?
        Rational dir = enter_up ? Rational(1) : Rational(-1);
        std::optional<DeltaRational> theta;  // movement of enter along dir, >= 0
        Var blocking = -1;                   // -1 = enter's own bound
        const VarState& es = vars_[enter];
        if (enter_up && es.ub.present) theta = es.ub.val - es.val;
        if (!enter_up && es.lb.present) theta = es.val - es.lb.val;
        for (Var b : cols_.at(enter)) {
            Rational a = rows_.at(b).coeff(enter) * dir;  // d(val_b)/d(theta)
            if (a.is_zero()) continue;
            const VarState& bs = vars_[b];
            std::optional<DeltaRational> lim;
            if (a.is_positive() && bs.ub.present) lim = a.inverse() * (bs.ub.val - bs.val);
            else if (a.is_negative() && bs.lb.present) lim = (-a).inverse() * (bs.val - bs.lb.val);
            if (!lim) continue;
            if (!theta || *lim < *theta) {
                theta = lim;
                blocking = b;
            }
        }
        if (!theta) return std::nullopt;  // unbounded ray
        if (blocking < 0) {
            update_value(enter, vars_[enter].val + dir * *theta);  // enter hits its own bound
        } else {
            const VarState& bs = vars_[blocking];
            Rational a = rows_.at(blocking).coeff(enter) * dir;
            DeltaRational bound = a.is_positive() ? bs.ub.val : bs.lb.val;
            pivot_and_update(blocking, enter, bound);
            if (blocking == v) return vars_[v].val;  // capped by v's own bound
        }
    }
}

void Solver::push() { scopes_.push_back(trail_.size()); }

void Solver::pop() {
    if (scopes_.empty()) throw std::logic_error("Solver::pop without push");
    std::size_t mark = scopes_.back();
    scopes_.pop_back();
    while (trail_.size() > mark) {
        Undo u = trail_.back();
        trail_.pop_back();
        (u.is_lb ? vars_[u.v].lb : vars_[u.v].ub) = u.old;
    }
    conflict_.reset();
}

Model Solver::model(int first_n) const {
    Model m;
    m.reserve(first_n);
    for (int i = 0; i < first_n; ++i) m.push_back(vars_[i].val);
    return m;
}

bool Solver::verify_conflict() const {
    if (!conflict_) return false;
    return verify_farkas(atoms_, *conflict_);
}

// ---------------------------------------------------------------------------
// Formula-level checking (DPLL splitting over Or nodes)

namespace {

bool solve_nodes(Solver& s, std::vector<const Node*> ors, std::vector<const Node*> todo) {
    // Flatten: assert literals, gather disjunctions.
    while (!todo.empty()) {
        const Node* n = todo.back();
        todo.pop_back();
        switch (n->kind) {
            case Node::Lit:
                s.assert_atom(n->atom);
                if (s.in_conflict()) return false;
                break;
            case Node::And:
                for (auto& k : n->kids) todo.push_back(&k);
                break;
            case Node::Or:
                ors.push_back(n);
                break;
        }
    }
    if (ors.empty()) return s.check();
    // Split on the smallest disjunction first.
    std::size_t pick = 0;
    for (std::size_t i = 1; i < ors.size(); ++i)
        if (ors[i]->kids.size() < ors[pick]->kids.size()) pick = i;
    const Node* choice = ors[pick];
    ors.erase(ors.begin() + pick);
    for (auto& kid : choice->kids) {
        s.push();
        if (solve_nodes(s, ors, {&kid})) return true;
        s.pop();
    }
    return false;
}

/// Asserts system atoms into the solver (ids match system ids) and runs the
/// formula-level search.
bool solve_system(Solver& s, const LinearSystem& sys, const std::vector<Node>& extra) {
    std::vector<const Node*> todo;
    for (auto& n : sys.conjuncts) todo.push_back(&n);
    for (auto& n : extra) todo.push_back(&n);
    return solve_nodes(s, {}, std::move(todo));
}

Solver make_solver(const LinearSystem& sys) {
    Solver s(sys.n_vars);
    for (auto& a : sys.atoms) s.add_atom(a);
    return s;
}

}  // namespace

Node negate_atom(LinearSystem& sys, const Atom& a) {
    LinExpr neg = a.lhs.scaled(Rational(-1));
    Rational nc = -a.constant;
    switch (a.rel) {
        case Rel::Ge:
            return Node::lit(sys.add_atom({neg, nc, Rel::Gt}));
        case Rel::Gt:
            return Node::lit(sys.add_atom({neg, nc, Rel::Ge}));
        case Rel::Eq: {
            int lo = sys.add_atom({a.lhs, a.constant, Rel::Gt});
            int hi = sys.add_atom({neg, nc, Rel::Gt});
            return Node::disj({Node::lit(lo), Node::lit(hi)});
        }
    }
    throw std::logic_error("negate_atom");
}

CheckResult check_sat(const LinearSystem& sys, const CheckOptions& opts) {
    if (opts.bridge != nullptr) return bridge_check(*opts.bridge, sys);
    Solver s = make_solver(sys);
    CheckResult r;
    r.sat = solve_system(s, sys, {});
    if (r.sat) r.model = s.model(sys.n_vars);
    return r;
}

bool entails(const LinearSystem& sys, const Atom& atom, const CheckOptions& opts) {
    LinearSystem q = sys;
    q.conjuncts.push_back(negate_atom(q, atom));
    return !check_sat(q, opts).sat;
}

std::vector<int> houdini_filter(const LinearSystem& sys, std::span<const Atom> candidates,
                                const CheckOptions& opts) {
    std::vector<int> alive(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) alive[i] = static_cast<int>(i);

    if (opts.bridge != nullptr) {
        // One-shot queries through the bridge.
        bool progress = true;
        while (progress) {
            progress = false;
            for (std::size_t k = 0; k < alive.size(); ++k) {
                LinearSystem q = sys;
                q.conjuncts.push_back(negate_atom(q, candidates[alive[k]]));
                CheckResult r = check_sat(q, opts);
                if (r.sat) {
                    std::vector<int> next;
                    for (int idx : alive)
                        if (candidates[idx].eval(r.model)) next.push_back(idx);
                    alive = std::move(next);
                    progress = true;
                    break;
                }
            }
        }
        return alive;
    }

    LinearSystem base = sys;
    Solver s = make_solver(base);
    // Pre-register candidate negations once.
    std::vector<Node> negs;
    negs.reserve(candidates.size());
    for (auto& c : candidates) {
        LinearSystem tmp;
        Node n = negate_atom(tmp, c);
        // re-add atoms into the solver, fixing indices
        std::vector<int> remap;
        for (auto& a : tmp.atoms) remap.push_back(s.add_atom(a));
        if (n.kind == Node::Lit) {
            n.atom = remap[n.atom];
        } else {
            for (auto& k : n.kids) k.atom = remap[k.atom];
        }
        negs.push_back(std::move(n));
    }

    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t k = 0; k < alive.size(); ++k) {
            std::size_t depth = s.scope_depth();
            s.push();
            bool sat = solve_system(s, base, {negs[alive[k]]});
            if (sat) {
                // A successful search leaves its branch scopes pushed so the
                // model stays live; unwind them all afterwards.
                Model m = s.model(base.n_vars);
                s.pop_to(depth);
                std::vector<int> next;
                for (int idx : alive)
                    if (candidates[idx].eval(m)) next.push_back(idx);
                alive = std::move(next);
                progress = true;
                break;
            }
            s.pop_to(depth);
        }
    }
    return alive;
}

}  // namespace symbound::lra
