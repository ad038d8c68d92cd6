#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "symbound/rational.hpp"

namespace symbound::lra {

using Var = int;

/// Sparse linear form over solver variables; terms sorted by variable,
/// no zero coefficients.
struct LinExpr {
    std::vector<std::pair<Var, Rational>> terms;

    bool empty() const { return terms.empty(); }
    Rational coeff(Var v) const;
    void add(Var v, const Rational& c);
    void add_scaled(const LinExpr& o, const Rational& c);
    LinExpr scaled(const Rational& c) const;
    DeltaRational eval(const std::vector<DeltaRational>& vals) const;
    /// Positive gcd of coefficients; 0 when empty.
    Rational content() const;

    friend bool operator==(const LinExpr& a, const LinExpr& b) { return a.terms == b.terms; }
    friend bool operator<(const LinExpr& a, const LinExpr& b) { return a.terms < b.terms; }
};

enum class Rel { Ge, Gt, Eq };

/// lhs + constant REL 0. Canonical: lhs has no zero coefficients; <= and <
/// inputs are normalized to Ge/Gt by negation at construction time.
struct Atom {
    LinExpr lhs;
    Rational constant;
    Rel rel = Rel::Ge;

    bool eval(const std::vector<DeltaRational>& vals) const;
    friend bool operator==(const Atom& a, const Atom& b) {
        return a.rel == b.rel && a.constant == b.constant && a.lhs == b.lhs;
    }
};

/// NNF tree over atom references.
struct Node {
    enum Kind { Lit, And, Or } kind = Lit;
    int atom = -1;
    std::vector<Node> kids;

    static Node lit(int a) {
        Node n;
        n.kind = Lit;
        n.atom = a;
        return n;
    }
    static Node conj(std::vector<Node> kids) {
        Node n;
        n.kind = And;
        n.kids = std::move(kids);
        return n;
    }
    static Node disj(std::vector<Node> kids) {
        Node n;
        n.kind = Or;
        n.kids = std::move(kids);
        return n;
    }
    bool eval(const std::vector<Atom>& atoms, const std::vector<DeltaRational>& vals) const;
};

/// Conjunction of NNF trees over a shared atom list. Purely conjunctive
/// systems have only Lit conjuncts.
struct LinearSystem {
    int n_vars = 0;
    std::vector<Atom> atoms;
    std::vector<Node> conjuncts;

    int add_atom(Atom a);
    void assert_atom(Atom a) { conjuncts.push_back(Node::lit(add_atom(std::move(a)))); }
};

using Model = std::vector<DeltaRational>;

/// Farkas combination: atom index -> coefficient. Coefficients are
/// non-negative except on equality atoms. Summing coeff * atom cancels every
/// variable and leaves an unsatisfiable constant comparison.
using Farkas = std::map<int, Rational>;

bool verify_farkas(std::span<const Atom> atoms, const Farkas& cert);

/// Incremental exact simplex over delta-rationals (general simplex with
/// bound repair). Single-threaded; push/pop scopes restore bounds.
class Solver {
public:
    explicit Solver(int n_vars = 0);

    Var new_var();
    int num_vars() const { return static_cast<int>(vars_.size()); }

    int add_atom(Atom a);
    const Atom& atom(int id) const { return atoms_[id]; }
    int num_atoms() const { return static_cast<int>(atoms_.size()); }
    void assert_atom(int id);

    void push();
    void pop();
    std::size_t scope_depth() const { return scopes_.size(); }
    void pop_to(std::size_t depth) {
        while (scopes_.size() > depth) pop();
    }

    bool check();
    bool in_conflict() const { return conflict_.has_value(); }
    const Farkas& conflict() const { return *conflict_; }

    /// Exact maximum of a variable over the asserted constraints, or nullopt
    /// when unbounded above. Requires a satisfiable state (call check first);
    /// leaves the assignment at an optimum.
    std::optional<DeltaRational> maximize(Var v);

    DeltaRational value(Var v) const { return vars_[v].val; }
    Model model(int first_n) const;

    /// Verifies the current conflict against the asserted atoms.
    bool verify_conflict() const;

private:
    struct BoundInfo {
        bool present = false;
        DeltaRational val;
        int atom = -1;
        Rational scale;
    };
    struct VarState {
        BoundInfo lb, ub;
        bool basic = false;
        DeltaRational val;
    };
    struct Undo {
        Var v;
        bool is_lb;
        BoundInfo old;
    };

    void assert_bound(Var v, bool is_lb, const DeltaRational& val, int atom, const Rational& scale);
    void update_value(Var v, const DeltaRational& newval);
    void pivot(Var basic, Var nonbasic);
    void pivot_and_update(Var basic, Var nonbasic, const DeltaRational& v);
    Var slack_for(const LinExpr& form);
    void fail_bounds(Var v);
    void fail_row(Var basic, bool need_increase);

    std::vector<VarState> vars_;
    std::vector<Atom> atoms_;
    std::map<Var, LinExpr> rows_;        // basic var -> expr over nonbasic vars
    std::map<Var, std::set<Var>> cols_;  // var -> basic rows mentioning it
    std::map<std::vector<std::pair<Var, Rational>>, Var> slack_index_;
    std::vector<LinExpr> slack_def_;     // var -> defining form (empty for problem vars)
    std::vector<Undo> trail_;
    std::vector<std::size_t> scopes_;
    std::optional<Farkas> conflict_;
};

/// Optional external SMT-LIB2 solver bridge; see smt2.hpp. Not used unless
/// explicitly configured.
class ExternalBridge;

struct CheckOptions {
    const ExternalBridge* bridge = nullptr;
};

struct CheckResult {
    bool sat = false;
    Model model;  // valid when sat
};

/// Satisfiability of the full system (DPLL-style splitting over Or nodes).
CheckResult check_sat(const LinearSystem& sys, const CheckOptions& opts = {});

/// sys entails atom, i.e. sys and (not atom) is unsatisfiable.
bool entails(const LinearSystem& sys, const Atom& atom, const CheckOptions& opts = {});

/// Maximal subset S of candidates with sys |= c for each c in S, computed by
/// model-guided elimination. Returns indices into candidates, in input order.
std::vector<int> houdini_filter(const LinearSystem& sys, std::span<const Atom> candidates,
                                const CheckOptions& opts = {});

/// Negation of an atom as an NNF node over a system's atom list (equalities
/// split into a disjunction of strict inequalities).
Node negate_atom(LinearSystem& sys, const Atom& a);

}  // namespace symbound::lra
