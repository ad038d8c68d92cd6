#include "symbound/rational.hpp"

#include <boost/functional/hash.hpp>

namespace symbound {

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("Rational::parse: empty input");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt p(s.substr(0, slash));
        BigInt q(s.substr(slash + 1));
        return Rational(p, q);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t frac = s.size() - dot - 1;
        BigInt p(digits);
        BigInt q = 1;
        for (std::size_t i = 0; i < frac; ++i) q *= 10;
        return Rational(p, q);
    }
    return Rational(BigInt(s));
}

BigInt Rational::floor() const {
    BigInt q = num() / den();
    if (num() < 0 && q * den() != num()) --q;
    return q;
}

std::string Rational::str() const {
    std::string s = num().str();
    if (den() != 1) s += "/" + den().str();
    return s;
}

std::size_t Rational::hash() const {
    std::size_t h = boost::multiprecision::hash_value(num());
    boost::hash_combine(h, boost::multiprecision::hash_value(den()));
    return h;
}

std::string DeltaRational::str() const {
    if (delta.is_zero()) return standard.str();
    return standard.str() + (delta.is_negative() ? " - " : " + ") + delta.abs().str() + "*delta";
}

}  // namespace symbound
