#pragma once

#include <span>
#include <vector>

#include "symbound/monomial_order.hpp"

namespace symbound {

struct DivisionResult {
    std::vector<Polynomial> quotients;  // one per divisor
    Polynomial remainder;
};

/// Multivariate division: f = sum(quotients[i] * divisors[i]) + remainder,
/// and no monomial of the remainder is divisible by any divisor's leading
/// monomial. Divisors must be nonzero.
DivisionResult multivariate_divide(const Polynomial& f, std::span<const Polynomial> divisors,
                                   const MonomialOrder& order);

/// Reduced Groebner basis of an ideal: every element monic, no monomial of an
/// element divisible by another element's leading monomial.
class GroebnerBasis {
public:
    GroebnerBasis() = default;

    /// Buchberger's algorithm with the coprime and chain criteria, followed by
    /// inter-reduction. Zero generators are dropped.
    static GroebnerBasis compute(std::vector<Polynomial> generators, MonomialOrder order);

    const std::vector<Polynomial>& elements() const { return elems_; }
    const MonomialOrder& order() const { return order_; }
    /// The ideal is the whole ring (the generators are inconsistent as
    /// equations).
    bool is_trivial() const;
    bool is_zero_ideal() const { return elems_.empty(); }

    /// Unique remainder of f modulo the ideal.
    Polynomial reduce(const Polynomial& f) const;
    DivisionResult reduce_with_cofactors(const Polynomial& f) const;
    bool contains(const Polynomial& f) const { return reduce(f).is_zero(); }

private:
    GroebnerBasis(std::vector<Polynomial> elems, MonomialOrder order)
        : elems_(std::move(elems)), order_(std::move(order)) {}

    std::vector<Polynomial> elems_;  // monic, inter-reduced, sorted by LM descending
    MonomialOrder order_;
};

}  // namespace symbound
