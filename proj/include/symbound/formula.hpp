#pragma once

#include <memory>
#include <string>
#include <vector>

#include "symbound/term_map.hpp"

namespace symbound {

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

/// Arithmetic term over +, *, rational constants, variables and the
/// non-polynomial function symbols floor and reciprocal. Subtraction and
/// division are desugared at construction.
struct TermNode {
    enum Kind { Num, Var, Add, Mul, Fn };
    Kind kind;
    Rational num;            // Num
    VarId var = kNoVar;      // Var
    std::vector<Term> kids;  // Add, Mul; Fn argument in kids[0]
    FnSym fn = FnSym::Floor;
};

Term t_num(Rational c);
Term t_var(VarId v);
Term t_add(std::vector<Term> kids);
Term t_sub(Term a, Term b);
Term t_mul(std::vector<Term> kids);
Term t_div(Term a, Term b);
Term t_fn(FnSym fn, Term arg);

bool term_equal(const Term& a, const Term& b);
std::string term_str(const Term& t, const VarTable& vars);
/// Number of occurrences of a function symbol in the term.
int count_fn(const Term& t, FnSym fn);

enum class CmpOp { Eq, Ne, Le, Lt, Ge, Gt };

/// Boolean formula over arithmetic atoms.
struct Formula {
    enum Kind { Atom, And, Or, Not, Implies };
    Kind kind = And;
    Term lhs, rhs;  // Atom
    CmpOp op = CmpOp::Eq;
    std::vector<Formula> kids;

    static Formula atom(Term l, CmpOp o, Term r);
    static Formula conj(std::vector<Formula> kids);
    static Formula disj(std::vector<Formula> kids);
    static Formula negate(Formula f);
    static Formula implies(Formula a, Formula b);
};

bool formula_equal(const Formula& a, const Formula& b);
std::string formula_str(const Formula& f, const VarTable& vars);

/// Polynomial atom p REL 0.
enum class Rel3 { Ge, Gt, Eq };

struct PolyAtom {
    Polynomial p;
    Rel3 rel = Rel3::Ge;
    friend bool operator==(const PolyAtom& a, const PolyAtom& b) {
        return a.rel == b.rel && a.p == b.p;
    }
};

struct NnfNode {
    enum Kind { Lit, And, Or } kind = Lit;
    int atom = -1;
    std::vector<NnfNode> kids;
};

/// Purified NNF formula: function symbols are gone, atoms are polynomial
/// comparisons with zero, negations have been pushed into the atoms
/// (disequalities become disjunctions of strict inequalities).
struct PurifiedFormula {
    std::vector<PolyAtom> atoms;
    std::vector<NnfNode> conjuncts;

    int add_atom(PolyAtom a);
};

}  // namespace symbound
