#include "symbound/formula.hpp"

#include <algorithm>
#include <stdexcept>

namespace symbound {

namespace {

Term make(TermNode n) { return std::make_shared<const TermNode>(std::move(n)); }

}  // namespace

Term t_num(Rational c) {
    TermNode n;
    n.kind = TermNode::Num;
    n.num = std::move(c);
    return make(std::move(n));
}

Term t_var(VarId v) {
    TermNode n;
    n.kind = TermNode::Var;
    n.var = v;
    return make(std::move(n));
}

Term t_add(std::vector<Term> kids) {
    // Flatten nested sums and fold constants.
    std::vector<Term> flat;
    Rational c(0);
    for (auto& k : kids) {
        if (k->kind == TermNode::Add) {
            for (auto& kk : k->kids) {
                if (kk->kind == TermNode::Num) c += kk->num;
                else flat.push_back(kk);
            }
        } else if (k->kind == TermNode::Num) {
            c += k->num;
        } else {
            flat.push_back(k);
        }
    }
    if (!c.is_zero()) flat.push_back(t_num(c));
    if (flat.empty()) return t_num(Rational(0));
    if (flat.size() == 1) return flat[0];
    TermNode n;
    n.kind = TermNode::Add;
    n.kids = std::move(flat);
    return make(std::move(n));
}

Term t_mul(std::vector<Term> kids) {
    std::vector<Term> flat;
    Rational c(1);
    for (auto& k : kids) {
        if (k->kind == TermNode::Mul) {
            for (auto& kk : k->kids) {
                if (kk->kind == TermNode::Num) c *= kk->num;
                else flat.push_back(kk);
            }
        } else if (k->kind == TermNode::Num) {
            c *= k->num;
        } else {
            flat.push_back(k);
        }
    }
    if (c.is_zero()) return t_num(Rational(0));
    if (!c.is_one()) flat.insert(flat.begin(), t_num(c));
    if (flat.empty()) return t_num(Rational(1));
    if (flat.size() == 1) return flat[0];
    TermNode n;
    n.kind = TermNode::Mul;
    n.kids = std::move(flat);
    return make(std::move(n));
}

Term t_sub(Term a, Term b) { return t_add({std::move(a), t_mul({t_num(Rational(-1)), std::move(b)})}); }

Term t_div(Term a, Term b) { return t_mul({std::move(a), t_fn(FnSym::Reciprocal, std::move(b))}); }

Term t_fn(FnSym fn, Term arg) {
    if (arg->kind == TermNode::Num) {
        // Constant fold: these are exact.
        if (fn == FnSym::Floor) return t_num(Rational(arg->num.floor()));
        if (arg->num.is_zero()) throw std::domain_error("reciprocal of zero");
        return t_num(arg->num.inverse());
    }
    TermNode n;
    n.kind = TermNode::Fn;
    n.fn = fn;
    n.kids.push_back(std::move(arg));
    return make(std::move(n));
}

bool term_equal(const Term& a, const Term& b) {
    if (a.get() == b.get()) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case TermNode::Num: return a->num == b->num;
        case TermNode::Var: return a->var == b->var;
        case TermNode::Fn:
            if (a->fn != b->fn) return false;
            return term_equal(a->kids[0], b->kids[0]);
        case TermNode::Add:
        case TermNode::Mul: {
            if (a->kids.size() != b->kids.size()) return false;
            for (std::size_t i = 0; i < a->kids.size(); ++i)
                if (!term_equal(a->kids[i], b->kids[i])) return false;
            return true;
        }
    }
    return false;
}

int count_fn(const Term& t, FnSym fn) {
    int n = (t->kind == TermNode::Fn && t->fn == fn) ? 1 : 0;
    for (auto& k : t->kids) n += count_fn(k, fn);
    return n;
}

namespace {

bool is_neg_one(const Term& t) { return t->kind == TermNode::Num && t->num == Rational(-1); }

/// Splits a product into (sign/coefficient prefix, numerator factors,
/// denominator factors) for fraction-style printing.
struct MulParts {
    Rational coeff = Rational(1);
    std::vector<Term> num;
    std::vector<Term> den;
};

MulParts split_mul(const Term& t) {
    MulParts parts;
    auto handle = [&](const Term& f) {
        if (f->kind == TermNode::Num) parts.coeff *= f->num;
        else if (f->kind == TermNode::Fn && f->fn == FnSym::Reciprocal) parts.den.push_back(f->kids[0]);
        else parts.num.push_back(f);
    };
    if (t->kind == TermNode::Mul) {
        for (auto& k : t->kids) handle(k);
    } else {
        handle(t);
    }
    return parts;
}

std::string atom_str(const Term& t, const VarTable& vars, bool parenthesize_sum);

std::string product_str(const MulParts& parts, const VarTable& vars, bool with_coeff) {
    std::string s;
    Rational c = parts.coeff.abs();
    if (with_coeff && (!c.is_one() || (parts.num.empty() && parts.den.empty()))) s += c.str();
    for (auto& f : parts.num) {
        if (!s.empty()) s += "*";
        s += atom_str(f, vars, true);
    }
    if (s.empty()) s = "1";
    for (auto& f : parts.den) {
        s += "/";
        bool wrap = f->kind == TermNode::Add || f->kind == TermNode::Mul;
        s += wrap ? "(" + term_str(f, vars) + ")" : atom_str(f, vars, true);
    }
    return s;
}

std::string atom_str(const Term& t, const VarTable& vars, bool parenthesize_sum) {
    switch (t->kind) {
        case TermNode::Num:
            return t->num.is_negative() ? "(" + t->num.str() + ")" : t->num.str();
        case TermNode::Var:
            return vars.name(t->var);
        case TermNode::Fn:
            if (t->fn == FnSym::Floor) return "floor(" + term_str(t->kids[0], vars) + ")";
            return "1/" + (t->kids[0]->kind == TermNode::Var
                               ? vars.name(t->kids[0]->var)
                               : "(" + term_str(t->kids[0], vars) + ")");
        case TermNode::Mul:
            return product_str(split_mul(t), vars, true);
        case TermNode::Add: {
            std::string s = term_str(t, vars);
            return parenthesize_sum ? "(" + s + ")" : s;
        }
    }
    return "?";
}

}  // namespace

std::string term_str(const Term& t, const VarTable& vars) {
    if (t->kind != TermNode::Add) {
        MulParts parts = split_mul(t);
        std::string body = product_str(parts, vars, true);
        return parts.coeff.is_negative() ? "-" + body : body;
    }
    std::string s;
    for (auto& k : t->kids) {
        MulParts parts = split_mul(k);
        bool neg = parts.coeff.is_negative();
        if (s.empty()) {
            if (neg) s += "-";
        } else {
            s += neg ? " - " : " + ";
        }
        s += product_str(parts, vars, true);
    }
    return s.empty() ? "0" : s;
}

Formula Formula::atom(Term l, CmpOp o, Term r) {
    Formula f;
    f.kind = Atom;
    f.lhs = std::move(l);
    f.rhs = std::move(r);
    f.op = o;
    return f;
}

Formula Formula::conj(std::vector<Formula> kids) {
    Formula f;
    f.kind = And;
    f.kids = std::move(kids);
    return f;
}

Formula Formula::disj(std::vector<Formula> kids) {
    Formula f;
    f.kind = Or;
    f.kids = std::move(kids);
    return f;
}

Formula Formula::negate(Formula inner) {
    Formula f;
    f.kind = Not;
    f.kids.push_back(std::move(inner));
    return f;
}

Formula Formula::implies(Formula a, Formula b) {
    Formula f;
    f.kind = Implies;
    f.kids.push_back(std::move(a));
    f.kids.push_back(std::move(b));
    return f;
}

bool formula_equal(const Formula& a, const Formula& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Formula::Atom)
        return a.op == b.op && term_equal(a.lhs, b.lhs) && term_equal(a.rhs, b.rhs);
    if (a.kids.size() != b.kids.size()) return false;
    for (std::size_t i = 0; i < a.kids.size(); ++i)
        if (!formula_equal(a.kids[i], b.kids[i])) return false;
    return true;
}

namespace {

const char* cmp_text(CmpOp op) {
    switch (op) {
        case CmpOp::Eq: return "=";
        case CmpOp::Ne: return "!=";
        case CmpOp::Le: return "<=";
        case CmpOp::Lt: return "<";
        case CmpOp::Ge: return ">=";
        case CmpOp::Gt: return ">";
    }
    return "?";
}

}  // namespace

std::string formula_str(const Formula& f, const VarTable& vars) {
    switch (f.kind) {
        case Formula::Atom:
            return term_str(f.lhs, vars) + " " + cmp_text(f.op) + " " + term_str(f.rhs, vars);
        case Formula::Not:
            return "not (" + formula_str(f.kids[0], vars) + ")";
        case Formula::Implies:
            return "(" + formula_str(f.kids[0], vars) + ") -> (" + formula_str(f.kids[1], vars) + ")";
        case Formula::And:
        case Formula::Or: {
            std::string joiner = f.kind == Formula::And ? " and " : " or ";
            std::string s;
            for (auto& k : f.kids) {
                if (!s.empty()) s += joiner;
                bool wrap = k.kind == Formula::And || k.kind == Formula::Or || k.kind == Formula::Implies;
                s += wrap ? "(" + formula_str(k, vars) + ")" : formula_str(k, vars);
            }
            return s;
        }
    }
    return "?";
}

int PurifiedFormula::add_atom(PolyAtom a) {
    for (std::size_t i = 0; i < atoms.size(); ++i)
        if (atoms[i] == a) return static_cast<int>(i);
    atoms.push_back(std::move(a));
    return static_cast<int>(atoms.size()) - 1;
}

}  // namespace symbound
