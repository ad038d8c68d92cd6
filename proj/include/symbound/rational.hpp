#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace symbound {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number, always in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long long n) : v_(n) {}
    Rational(const BigInt& n) : v_(n) {}
    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        if (den < 0) v_ = boost::multiprecision::cpp_rational(-num, -den);
        else v_ = boost::multiprecision::cpp_rational(num, den);
    }
    Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

    /// Accepts "p", "p/q" and decimal literals like "1.88".
    static Rational parse(std::string_view text);

    BigInt num() const { return boost::multiprecision::numerator(v_); }
    BigInt den() const { return boost::multiprecision::denominator(v_); }

    bool is_zero() const { return v_.is_zero(); }
    bool is_one() const { return v_ == 1; }
    bool is_negative() const { return v_ < 0; }
    bool is_positive() const { return v_ > 0; }
    bool is_integer() const { return den() == 1; }

    Rational operator-() const { return Rational(-v_); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    int cmp(const Rational& o) const { return v_.compare(o.v_); }
    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational abs() const { return v_ < 0 ? Rational(-v_) : *this; }
    Rational inverse() const {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        Rational r;
        r.v_ = 1 / v_;
        return r;
    }
    /// Largest integer <= value.
    BigInt floor() const;

    std::string str() const;
    std::size_t hash() const;

private:
    explicit Rational(boost::multiprecision::cpp_rational v) : v_(std::move(v)) {}
    boost::multiprecision::cpp_rational v_;
};

/// Rational plus a multiple of a positive infinitesimal; models strict bounds.
/// Ordered lexicographically on (standard, delta).
struct DeltaRational {
    Rational standard;
    Rational delta;

    DeltaRational() = default;
    DeltaRational(Rational s) : standard(std::move(s)) {}
    DeltaRational(Rational s, Rational d) : standard(std::move(s)), delta(std::move(d)) {}

    int cmp(const DeltaRational& o) const {
        int c = standard.cmp(o.standard);
        return c != 0 ? c : delta.cmp(o.delta);
    }
    friend bool operator==(const DeltaRational& a, const DeltaRational& b) { return a.cmp(b) == 0; }
    friend bool operator!=(const DeltaRational& a, const DeltaRational& b) { return a.cmp(b) != 0; }
    friend bool operator<(const DeltaRational& a, const DeltaRational& b) { return a.cmp(b) < 0; }
    friend bool operator<=(const DeltaRational& a, const DeltaRational& b) { return a.cmp(b) <= 0; }
    friend bool operator>(const DeltaRational& a, const DeltaRational& b) { return a.cmp(b) > 0; }
    friend bool operator>=(const DeltaRational& a, const DeltaRational& b) { return a.cmp(b) >= 0; }

    DeltaRational operator-() const { return {-standard, -delta}; }
    DeltaRational& operator+=(const DeltaRational& o) {
        standard += o.standard;
        delta += o.delta;
        return *this;
    }
    DeltaRational& operator-=(const DeltaRational& o) {
        standard -= o.standard;
        delta -= o.delta;
        return *this;
    }
    friend DeltaRational operator+(DeltaRational a, const DeltaRational& b) { return a += b; }
    friend DeltaRational operator-(DeltaRational a, const DeltaRational& b) { return a -= b; }
    friend DeltaRational operator*(const Rational& c, const DeltaRational& x) {
        return {c * x.standard, c * x.delta};
    }

    std::string str() const;
};

}  // namespace symbound

template <>
struct std::hash<symbound::Rational> {
    std::size_t operator()(const symbound::Rational& r) const { return r.hash(); }
};
