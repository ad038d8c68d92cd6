#pragma once

#include <set>

#include "symbound/cone.hpp"
#include "symbound/formula.hpp"
#include "symbound/problem.hpp"

namespace symbound {

/// Purification: replaces every floor/reciprocal subterm by a fresh variable
/// recorded in the foreign-function map, arguments first. Memoization is
/// scoped per atom, so identical subterms inside one atom share a variable
/// while occurrences in different atoms get their own (closure merges them).
struct PurifyResult {
    PurifiedFormula formula;
    ForeignFunctionMap tm;
};

PurifyResult purify(const std::vector<Formula>& assumptions, VarTable& vars);

/// Purifies a single term into an existing map (own memo scope).
Polynomial purify_term(const Term& t, VarTable& vars, ForeignFunctionMap& tm);

/// Re-purifies a term against an existing map: foreign subterms whose
/// (symbol, argument) already appear reuse the mapped variable. Used to check
/// that an unpurified bound round-trips onto its internal form.
Polynomial repurify(const Term& t, VarTable& vars, const ForeignFunctionMap& tm);

struct SaturationConfig {
    int depth = 3;
    std::set<VarId> keep;
    OrderKind order_kind = OrderKind::EffectiveDegree;
    bool axiom_floor_bounds = true;   // p - 1 <= u <= p
    bool axiom_floor_nonneg = true;   // p >= 0  ->  u >= 0
    bool axiom_recip_unit = true;     // u * p = 1
    bool axiom_recip_nonneg = true;   // p >= 0  ->  u >= 0
    Deadline deadline;
    const lra::ExternalBridge* bridge = nullptr;
};

/// Axiom templates are data: instances produced per foreign-function map
/// entry, split into ideal seeds (equalities), plain inequality atoms and
/// guarded implications.
struct InstantiatedAxioms {
    std::vector<Polynomial> equalities;                 // e.g. u*p - 1
    std::vector<PolyAtom> atoms;                        // e.g. p - u >= 0
    std::vector<std::vector<PolyAtom>> implications;    // guard -> conclusion clauses
};

InstantiatedAxioms instantiate_axioms(const ForeignFunctionMap& tm, const SaturationConfig& cfg);

/// Congruence closure over the map: map entries with the same symbol whose
/// arguments are equal modulo the ideal force variable equalities; arguments
/// are kept reduced and the effective-degree order is rebuilt as the map
/// shrinks.
struct ClosureResult {
    GroebnerBasis gb;
    ForeignFunctionMap tm;
    bool changed = false;
};

ClosureResult closure(GroebnerBasis gb, ForeignFunctionMap tm, const SaturationConfig& cfg,
                      int n_vars);

/// One stabilized map reduction (arguments reduced by the ideal, order and
/// basis rebuilt until fixpoint).
ClosureResult reduce_term_map(ForeignFunctionMap tm, GroebnerBasis gb, const SaturationConfig& cfg,
                              int n_vars);

/// Products with summed depth <= depth_bound involving at least one new
/// fact, deduplicated by reduced polynomial. Standalone version of the
/// product step for direct use and testing.
std::vector<std::pair<Polynomial, int>> take_products(
    const std::vector<std::pair<Polynomial, int>>& fresh,
    const std::vector<std::pair<Polynomial, int>>& existing, int depth_bound,
    const GroebnerBasis* gb = nullptr);

struct SatStats {
    int rounds = 0;
    int c_eq = 0;
    int c_ineq = 0;
    int n_monomials = 0;
    int n_atomic_facts = 0;
    double closure_seconds = 0;
    double consequence_seconds = 0;
    double product_seconds = 0;
};

struct SatResult {
    bool inconsistent = false;
    PolynomialCone cone;
    ForeignFunctionMap tm;
    PurifiedFormula phi;     // purified assumptions plus instantiated axioms
    Polynomial objective;    // purified objective
    SatStats stats;
};

/// The saturation fixpoint: purify, instantiate axioms, then iterate
/// {add equalities, closure, re-reduce, find consequences, take products}
/// until the cone stops growing.
SatResult saturate(const ProblemFile& problem, const SaturationConfig& cfg);

/// Candidate extraction + Houdini filtering for one round; exposed for
/// tests. Returns discovered equalities and inequalities (reduced forms).
struct Consequences {
    std::vector<Polynomial> equalities;
    std::vector<std::pair<Polynomial, bool>> inequalities;  // (reduced poly, strict)
    bool inconsistent = false;
};

Consequences find_consequences(const PurifiedFormula& phi, const GroebnerBasis& gb,
                               const std::vector<IneqGen>& gens,
                               const std::vector<std::pair<Polynomial, bool>>& known_facts,
                               const SaturationConfig& cfg);

}  // namespace symbound
