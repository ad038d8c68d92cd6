#include "symbound/polynomial.hpp"

#include <boost/functional/hash.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>

#include "symbound/monomial_order.hpp"

namespace symbound {

Polynomial Polynomial::var(VarId v) {
    return term(Monomial::var(v), Rational(1));
}

Polynomial::Polynomial(Rational c) {
    if (!c.is_zero()) terms_.emplace(Monomial::one(), std::move(c));
}

Polynomial Polynomial::term(Monomial m, Rational c) {
    Polynomial p;
    if (!c.is_zero()) p.terms_.emplace(std::move(m), std::move(c));
    return p;
}

Rational Polynomial::constant_term() const {
    auto it = terms_.find(Monomial::one());
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::as_constant() const {
    if (!is_constant()) throw std::invalid_argument("Polynomial: not a constant");
    return constant_term();
}

Rational Polynomial::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

long long Polynomial::total_degree() const {
    long long d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial r;
    for (auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (auto& [ma, ca] : a.terms_)
        for (auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
    Polynomial r;
    if (c.is_zero()) return r;
    for (auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

Rational Polynomial::content() const {
    BigInt num_gcd = 0, den_lcm = 1;
    for (auto& [m, c] : terms_) {
        num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::abs(c.num()));
        den_lcm = boost::multiprecision::lcm(den_lcm, c.den());
    }
    if (num_gcd == 0) return Rational(0);
    return Rational(num_gcd, den_lcm);
}

Polynomial Polynomial::primitive() const {
    if (is_zero()) return *this;
    return scaled(content().inverse());
}

Rational Polynomial::eval(const std::vector<Rational>& values) const {
    Rational total(0);
    for (auto& [m, c] : terms_) {
        Rational t = c;
        for (auto& [v, e] : m.exponents()) {
            if (v >= static_cast<VarId>(values.size()))
                throw std::invalid_argument("Polynomial::eval: missing value");
            for (int i = 0; i < e; ++i) t *= values[v];
        }
        total += t;
    }
    return total;
}

std::size_t Polynomial::hash() const {
    std::size_t h = 0;
    for (auto& [m, c] : terms_) {
        boost::hash_combine(h, m.hash());
        boost::hash_combine(h, c.hash());
    }
    return h;
}

namespace {

std::string render(const VarTable& vars, const std::vector<std::pair<Monomial, Rational>>& terms) {
    if (terms.empty()) return "0";
    std::string s;
    for (auto& [m, c] : terms) {
        Rational a = c.abs();
        if (s.empty()) {
            if (c.is_negative()) s += "-";
        } else {
            s += c.is_negative() ? " - " : " + ";
        }
        if (m.is_one()) {
            s += a.str();
        } else {
            if (!a.is_one()) s += a.str() + "*";
            s += m.str(vars);
        }
    }
    return s;
}

}  // namespace

std::string Polynomial::str(const VarTable& vars) const {
    std::vector<std::pair<Monomial, Rational>> terms(terms_.rbegin(), terms_.rend());
    return render(vars, terms);
}

std::string Polynomial::str(const VarTable& vars, const MonomialOrder& order) const {
    std::vector<std::pair<Monomial, Rational>> terms(terms_.begin(), terms_.end());
    std::sort(terms.begin(), terms.end(),
              [&](const auto& a, const auto& b) { return order.greater(a.first, b.first); });
    return render(vars, terms);
}

}  // namespace symbound
