#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "symbound/variable.hpp"

namespace symbound {

/// Power product of variables. No zero exponents are stored; the empty
/// monomial is 1.
class Monomial {
public:
    Monomial() = default;
    static Monomial var(VarId v, int exp = 1);
    static const Monomial& one();

    bool is_one() const { return e_.empty(); }
    long long degree() const;
    int degree_in(VarId v) const;
    const std::vector<std::pair<VarId, int>>& exponents() const { return e_; }

    Monomial operator*(const Monomial& o) const;
    bool divides(const Monomial& o) const;
    /// o / *this when divisible.
    std::optional<Monomial> divide_into(const Monomial& o) const;
    Monomial lcm(const Monomial& o) const;
    bool coprime(const Monomial& o) const;

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return a.e_ != b.e_; }
    /// Structural order for use as a map key; not a monomial order.
    friend bool operator<(const Monomial& a, const Monomial& b) { return a.e_ < b.e_; }

    std::size_t hash() const;
    std::string str(const VarTable& vars) const;

private:
    std::vector<std::pair<VarId, int>> e_;  // sorted by VarId, exps > 0
};

}  // namespace symbound

template <>
struct std::hash<symbound::Monomial> {
    std::size_t operator()(const symbound::Monomial& m) const { return m.hash(); }
};
