#pragma once

#include <map>
#include <string>
#include <vector>

#include "symbound/monomial.hpp"
#include "symbound/rational.hpp"

namespace symbound {

class MonomialOrder;

/// Sparse multivariate polynomial with exact rational coefficients.
/// No zero coefficients are stored; the zero polynomial has no terms.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational>;

    Polynomial() = default;
    Polynomial(Rational c);
    Polynomial(long long c) : Polynomial(Rational(c)) {}
    static Polynomial var(VarId v);
    static Polynomial term(Monomial m, Rational c);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }
    /// Constant term (0 when absent).
    Rational constant_term() const;
    /// Value of a constant polynomial.
    Rational as_constant() const;
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    Rational coeff(const Monomial& m) const;
    long long total_degree() const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial scaled(const Rational& c) const;
    void add_term(const Monomial& m, const Rational& c);

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return a.terms_ != b.terms_; }
    /// Structural order for containers.
    friend bool operator<(const Polynomial& a, const Polynomial& b) { return a.terms_ < b.terms_; }

    /// Positive gcd of the coefficients (gcd of numerators over lcm of
    /// denominators); 0 for the zero polynomial.
    Rational content() const;
    /// *this divided by its content. Sign is preserved.
    Polynomial primitive() const;

    Rational eval(const std::vector<Rational>& values) const;

    std::size_t hash() const;
    std::string str(const VarTable& vars) const;
    std::string str(const VarTable& vars, const MonomialOrder& order) const;

private:
    TermMap terms_;
};

}  // namespace symbound
