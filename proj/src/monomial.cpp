#include "symbound/monomial.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace symbound {

Monomial Monomial::var(VarId v, int exp) {
    Monomial m;
    if (exp < 0) throw std::invalid_argument("Monomial: negative exponent");
    if (exp > 0) m.e_.push_back({v, exp});
    return m;
}

const Monomial& Monomial::one() {
    static const Monomial m;
    return m;
}

long long Monomial::degree() const {
    long long d = 0;
    for (auto& [v, e] : e_) d += e;
    return d;
}

int Monomial::degree_in(VarId v) const {
    for (auto& [w, e] : e_)
        if (w == v) return e;
    return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.e_.reserve(e_.size() + o.e_.size());
    auto a = e_.begin(), b = o.e_.begin();
    while (a != e_.end() || b != o.e_.end()) {
        if (b == o.e_.end() || (a != e_.end() && a->first < b->first)) {
            r.e_.push_back(*a++);
        } else if (a == e_.end() || b->first < a->first) {
            r.e_.push_back(*b++);
        } else {
            r.e_.push_back({a->first, a->second + b->second});
            ++a, ++b;
        }
    }
    return r;
}

bool Monomial::divides(const Monomial& o) const {
    auto a = e_.begin(), b = o.e_.begin();
    while (a != e_.end()) {
        while (b != o.e_.end() && b->first < a->first) ++b;
        if (b == o.e_.end() || b->first != a->first || b->second < a->second) return false;
        ++a;
    }
    return true;
}

std::optional<Monomial> Monomial::divide_into(const Monomial& o) const {
    if (!divides(o)) return std::nullopt;
    Monomial r;
    auto a = e_.begin();
    for (auto& [v, e] : o.e_) {
        int d = e;
        if (a != e_.end() && a->first == v) d -= (a++)->second;
        if (d > 0) r.e_.push_back({v, d});
    }
    return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
    Monomial r;
    auto a = e_.begin(), b = o.e_.begin();
    while (a != e_.end() || b != o.e_.end()) {
        if (b == o.e_.end() || (a != e_.end() && a->first < b->first)) {
            r.e_.push_back(*a++);
        } else if (a == e_.end() || b->first < a->first) {
            r.e_.push_back(*b++);
        } else {
            r.e_.push_back({a->first, std::max(a->second, b->second)});
            ++a, ++b;
        }
    }
    return r;
}

bool Monomial::coprime(const Monomial& o) const {
    auto a = e_.begin(), b = o.e_.begin();
    while (a != e_.end() && b != o.e_.end()) {
        if (a->first < b->first) ++a;
        else if (b->first < a->first) ++b;
        else return false;
    }
    return true;
}

std::size_t Monomial::hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto& [v, e] : e_) {
        h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
        h = (h ^ static_cast<std::size_t>(e)) * 1099511628211ull;
    }
    return h;
}

std::string Monomial::str(const VarTable& vars) const {
    if (is_one()) return "1";
    std::string s;
    for (auto& [v, e] : e_) {
        if (!s.empty()) s += "*";
        s += vars.name(v);
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

}  // namespace symbound
