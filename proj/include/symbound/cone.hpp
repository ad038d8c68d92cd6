#pragma once

#include <map>
#include <optional>

#include "symbound/groebner.hpp"
#include "symbound/polyhedron.hpp"

namespace symbound {

enum class Direction { Upper, Lower };
enum class Engine { Local, Lp };

/// Inequality generator of a cone of polynomials: p >= 0 (or > 0), with the
/// product depth and the depth-1 facts it factors into.
struct IneqGen {
    Polynomial p;
    bool strict = false;
    int depth = 1;
    std::vector<int> factors;  // atomic fact ids, multiset
};

/// Cone of polynomials: ideal (equalities) + polyhedral generators
/// (inequalities) + the implicit constant generator 1. Reduced form: no
/// monomial of a generator is divisible by an ideal leading monomial.
struct PolynomialCone {
    GroebnerBasis ideal;
    std::vector<IneqGen> gens;

    const MonomialOrder& order() const { return ideal.order(); }
};

enum class ConeStatus { Ok, Inconsistent };

/// Recomputes the reduced form in place: generators are reduced by the
/// ideal's basis, generators that reduce to non-negative constants are
/// dropped. Detects -1 in the cone (contradictory inputs).
ConeStatus make_reduced(PolynomialCone& C);

/// Monomial <-> dimension registry, ordered descending by the cone's
/// monomial order so that dimension id order is the reduction order.
class DimRegistry {
public:
    static DimRegistry build(const PolynomialCone& C, const Polynomial& target);

    int n_dims() const { return static_cast<int>(dims_.size()); }
    const Monomial& denotation(int dim) const { return dims_.at(dim); }
    /// Splits p into a vector over dimensions plus a constant.
    std::pair<lra::LinExpr, Rational> to_vector(const Polynomial& p) const;
    Polynomial to_polynomial(const lra::LinExpr& e, const Rational& c) const;

private:
    std::vector<Monomial> dims_;
    std::map<Monomial, int> index_;
};

struct BoundWitness {
    std::vector<std::pair<Polynomial, int>> ideal_cofactors;  // (h, ideal element index)
    std::vector<std::pair<Rational, int>> cone_multipliers;   // (lambda >= 0, generator index)
    Rational constant;                                        // multiplier on the generator 1
};

struct CredBound {
    Polynomial bound;
    bool strict = false;
    BoundWitness witness;
};

struct CredOptions {
    Engine engine = Engine::Local;
    Deadline deadline;
    const lra::ExternalBridge* bridge = nullptr;
};

struct CredResult {
    ConeStatus status = ConeStatus::Ok;
    std::vector<CredBound> bounds;  // best first; alternates share the optimum
    int iterations = 0;
};

/// Reduction of t by the cone: an order-minimal upper bound t* with
/// t* - t in C (lower bounds via negation). Every returned bound carries a
/// witness that re-verifies by exact polynomial arithmetic.
CredResult cred(const PolynomialCone& C, const Polynomial& t, Direction dir,
                const CredOptions& opts = {});

/// Exact check of the witness identity:
///   upper:  bound - t = sum h_i g_i + sum lambda_j q_j + constant
///   lower:  t - bound = sum h_i g_i + sum lambda_j q_j + constant
bool verify_witness(const PolynomialCone& C, const Polynomial& t, Direction dir,
                    const CredBound& b);

/// Renders the witness identity for audit output.
std::string witness_str(const PolynomialCone& C, const Polynomial& t, Direction dir,
                        const CredBound& b, const VarTable& vars);

}  // namespace symbound
