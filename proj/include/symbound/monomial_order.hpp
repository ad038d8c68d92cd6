#pragma once

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "symbound/polynomial.hpp"
#include "symbound/term_map.hpp"

namespace symbound {

/// Effective degree: (weight of non-keep content, weight of keep content),
/// compared lexicographically with the bad component first. Componentwise
/// additive under monomial products.
struct EffDeg {
    long long bad = 0;
    long long good = 0;

    EffDeg() = default;
    EffDeg(long long b, long long g) : bad(b), good(g) {}
    EffDeg& operator+=(const EffDeg& o) {
        bad += o.bad;
        good += o.good;
        return *this;
    }
    friend EffDeg operator+(EffDeg a, const EffDeg& b) { return a += b; }
    int cmp(const EffDeg& o) const {
        if (bad != o.bad) return bad < o.bad ? -1 : 1;
        if (good != o.good) return good < o.good ? -1 : 1;
        return 0;
    }
    friend bool operator==(const EffDeg& a, const EffDeg& b) { return a.cmp(b) == 0; }
    friend bool operator<(const EffDeg& a, const EffDeg& b) { return a.cmp(b) < 0; }
    std::string str() const { return "(" + std::to_string(bad) + ", " + std::to_string(good) + ")"; }
};

enum class OrderKind { Lex, Deglex, Grevlex, EffectiveDegree };

OrderKind order_kind_from_name(const std::string& name);
std::string order_kind_name(OrderKind k);

/// Total, multiplicative order on monomials with 1 minimal.
///
/// The effective-degree kind carries an immutable snapshot of a
/// foreign-function map: variables are compared first by effective degree,
/// then by a nesting weight that puts a map variable above every monomial of
/// its argument, and finally by grevlex on the raw exponents. Variable
/// priority is the creation sequence (later-created variables are smaller).
class MonomialOrder {
public:
    MonomialOrder() : MonomialOrder(OrderKind::Grevlex, std::make_shared<Context>()) {}

    static MonomialOrder lex(int n_vars);
    static MonomialOrder deglex(int n_vars);
    static MonomialOrder grevlex(int n_vars);
    static MonomialOrder effective_degree(const ForeignFunctionMap& tm, const std::set<VarId>& keep,
                                          int n_vars);
    static MonomialOrder make(OrderKind kind, const ForeignFunctionMap& tm,
                              const std::set<VarId>& keep, int n_vars);

    OrderKind kind() const { return kind_; }
    /// +1 when a is greater, -1 when smaller, 0 when equal.
    int compare(const Monomial& a, const Monomial& b) const;
    bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
    bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

    /// Effective degree of a monomial under the snapshot. Only valid for the
    /// effective-degree kind.
    EffDeg effdeg(const Monomial& m) const;

private:
    struct Context {
        int n_vars = 0;
        std::vector<EffDeg> var_effdeg;       // by VarId
        std::vector<long long> var_weight;    // nesting weight
    };

    MonomialOrder(OrderKind kind, std::shared_ptr<const Context> ctx) : kind_(kind), ctx_(std::move(ctx)) {}

    int compare_grevlex(const Monomial& a, const Monomial& b) const;
    int compare_lex(const Monomial& a, const Monomial& b) const;
    void check_known(const Monomial& m) const;

    OrderKind kind_;
    std::shared_ptr<const Context> ctx_;
};

/// Greatest term of p under the order. p must be nonzero.
std::pair<Monomial, Rational> leading_term(const Polynomial& p, const MonomialOrder& order);
Monomial leading_monomial(const Polynomial& p, const MonomialOrder& order);

}  // namespace symbound
