#pragma once

#include <optional>
#include <span>

#include "symbound/deadline.hpp"
#include "symbound/lra.hpp"

namespace symbound {

/// Constraint-representation polyhedron over integer dimension ids.
/// Constraints are lhs + c REL 0; equalities may be explicit.
struct Polyhedron {
    int n_dims = 0;
    std::vector<lra::Atom> cs;
};

using DModel = std::vector<DeltaRational>;

bool satisfies(const Polyhedron& P, const DModel& m);

/// Model-guided projection of one dimension (the three-case definition:
/// equality substitution / drop / binding lower bound). Requires m |= P.
Polyhedron local_project(const Polyhedron& P, const DModel& m, int x);

/// Left fold of local_project over dims.
Polyhedron local_project_seq(const Polyhedron& P, const DModel& m, std::span<const int> dims);

/// Fourier-Motzkin elimination; exact projection, possibly with redundant
/// constraints. Used as the test oracle and by the optimality checks.
Polyhedron full_project_fm(Polyhedron P, std::span<const int> dims);

/// Upper bound on a distinguished dimension: T <= expr + c (< when strict).
struct BoundTerm {
    lra::LinExpr expr;
    Rational c;
    bool strict = false;

    friend bool operator==(const BoundTerm& a, const BoundTerm& b) {
        return a.strict == b.strict && a.c == b.c && a.expr == b.expr;
    }
    friend bool operator<(const BoundTerm& a, const BoundTerm& b) {
        if (a.expr < b.expr) return true;
        if (b.expr < a.expr) return false;
        if (a.c < b.c) return true;
        if (b.c < a.c) return false;
        return a.strict < b.strict;
    }
    /// Smallest dimension id with a nonzero coefficient; INT_MAX for a
    /// constant bound. Dimension ids are registered in descending order, so
    /// a larger value means a more desirable bound.
    int leading_dim() const;
};

/// Conjectured upper bounds on T: dims are projected in the given order while
/// T stays bounded above; the bounds of the last bounded polyhedron with a
/// negative T coefficient are returned.
std::vector<BoundTerm> conjecture(const Polyhedron& P, const DModel& m, std::span<const int> dims,
                                  int T);

struct ReduceOptions {
    const lra::ExternalBridge* bridge = nullptr;
    Deadline deadline;
    bool diversify_models = true;
};

struct ReduceResult {
    std::vector<BoundTerm> best;      // true bounds of minimal leading dimension
    std::vector<BoundTerm> all_true;  // every true bound collected
    int iterations = 0;               // model-sampling rounds
};

/// Model-guided polyhedral reduction: optimal upper bound on the linear term
/// t + tc over P, in the dimension order (id 0 is the greatest dimension and
/// is projected first). P must be satisfiable. Returned bounds carry the
/// exact optimum constant (see tighten_bound), so results do not depend on
/// the sampled models.
ReduceResult poly_reduce(const Polyhedron& P, const lra::LinExpr& t, const Rational& tc,
                         const ReduceOptions& opts = {});

/// Canonical representative among equally optimal bounds: replaces the
/// constant by the exact maximum of (t + tc) - expr over P, with strictness
/// from whether the supremum is attained.
void tighten_bound(const Polyhedron& P, const lra::LinExpr& t, const Rational& tc, BoundTerm& u);

/// Generator vector of a polyhedral cone; the constant generator 1 is
/// implicit and always present.
struct GenVec {
    lra::LinExpr expr;
    Rational c;
    bool strict = false;
};

struct PolyhedralCone {
    int n_dims = 0;
    std::vector<GenVec> gens;
};

/// Constraint polyhedron {q >= 0 (or > 0) : q generator of Q}.
Polyhedron cone_polyhedron(const PolyhedralCone& Q);

struct ConeWitness {
    std::vector<Rational> lambda;  // one per generator, >= 0
    Rational lambda_const;         // multiplier on the constant generator
};

/// Non-negative multipliers with v = sum(lambda_i * q_i) + lambda_const.
/// The returned witness is re-verified by exact arithmetic.
std::optional<ConeWitness> cone_membership(const PolyhedralCone& Q, const lra::LinExpr& v,
                                           const Rational& vc);

/// Indices of generators g with -g in Q.
std::vector<int> find_implied_equalities(const PolyhedralCone& Q);

struct LpReduceResult {
    BoundTerm bound;
    ConeWitness witness;
    int solves = 0;
};

/// Lexicographic-LP reduction: forces the bound's coefficients on the
/// greatest dimensions to zero, relaxing one dimension at a time until the
/// multiplier system becomes feasible.
LpReduceResult lp_reduce(const PolyhedralCone& Q, const lra::LinExpr& t, const Rational& tc,
                         const ReduceOptions& opts = {});

}  // namespace symbound
