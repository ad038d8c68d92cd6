#include "symbound/groebner.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace symbound {

DivisionResult multivariate_divide(const Polynomial& f, std::span<const Polynomial> divisors,
                                   const MonomialOrder& order) {
    std::vector<std::pair<Monomial, Rational>> lead;
    lead.reserve(divisors.size());
    for (auto& d : divisors) {
        if (d.is_zero()) throw std::invalid_argument("multivariate_divide: zero divisor");
        lead.push_back(leading_term(d, order));
    }

    DivisionResult res;
    res.quotients.resize(divisors.size());
    Polynomial p = f;
    while (!p.is_zero()) {
        auto [pm, pc] = leading_term(p, order);
        bool divided = false;
        for (std::size_t i = 0; i < divisors.size(); ++i) {
            if (auto q = lead[i].first.divide_into(pm)) {
                Rational c = pc / lead[i].second;
                Polynomial t = Polynomial::term(*q, c);
                res.quotients[i] += t;
                p -= t * divisors[i];
                divided = true;
                break;
            }
        }
        if (!divided) {
            res.remainder.add_term(pm, pc);
            p.add_term(pm, -pc);
        }
    }
    return res;
}

namespace {

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order) {
    auto [fm, fc] = leading_term(f, order);
    auto [gm, gc] = leading_term(g, order);
    Monomial l = fm.lcm(gm);
    Polynomial a = Polynomial::term(*fm.divide_into(l), Rational(1) / fc);
    Polynomial b = Polynomial::term(*gm.divide_into(l), Rational(1) / gc);
    return a * f - b * g;
}

Polynomial make_monic(const Polynomial& p, const MonomialOrder& order) {
    return p.scaled(leading_term(p, order).second.inverse());
}

}  // namespace

GroebnerBasis GroebnerBasis::compute(std::vector<Polynomial> generators, MonomialOrder order) {
    std::vector<Polynomial> basis;
    for (auto& g : generators)
        if (!g.is_zero()) basis.push_back(make_monic(g, order));

    struct Pair {
        std::size_t i, j;
        Monomial lcm;
    };
    std::vector<Pair> pending;
    auto queue_pairs_with = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i)
            pending.push_back({i, j, leading_monomial(basis[i], order).lcm(leading_monomial(basis[j], order))});
    };
    for (std::size_t j = 0; j < basis.size(); ++j) queue_pairs_with(j);

    std::set<std::pair<std::size_t, std::size_t>> open;
    for (auto& p : pending) open.insert({p.i, p.j});

    while (!pending.empty()) {
        // Normal selection strategy: smallest lcm first.
        std::size_t best = 0;
        for (std::size_t k = 1; k < pending.size(); ++k)
            if (order.less(pending[k].lcm, pending[best].lcm)) best = k;
        Pair pr = pending[best];
        pending.erase(pending.begin() + best);
        open.erase({pr.i, pr.j});

        Monomial lmi = leading_monomial(basis[pr.i], order);
        Monomial lmj = leading_monomial(basis[pr.j], order);
        if (lmi.coprime(lmj)) continue;  // product criterion
        bool chained = false;
        for (std::size_t k = 0; k < basis.size() && !chained; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (!leading_monomial(basis[k], order).divides(pr.lcm)) continue;
            auto key = [](std::size_t a, std::size_t b) {
                return std::make_pair(std::min(a, b), std::max(a, b));
            };
            if (!open.count(key(pr.i, k)) && !open.count(key(pr.j, k))) chained = true;
        }
        if (chained) continue;  // chain criterion

        Polynomial s = s_polynomial(basis[pr.i], basis[pr.j], order);
        Polynomial r = multivariate_divide(s, basis, order).remainder;
        if (r.is_zero()) continue;
        basis.push_back(make_monic(r, order));
        queue_pairs_with(basis.size() - 1);
        for (std::size_t i = 0; i + 1 < basis.size(); ++i) open.insert({i, basis.size() - 1});
    }

    // Inter-reduce to the canonical reduced basis.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            std::vector<Polynomial> others;
            others.reserve(basis.size() - 1);
            for (std::size_t j = 0; j < basis.size(); ++j)
                if (j != i) others.push_back(basis[j]);
            Polynomial r = others.empty()
                               ? basis[i]
                               : multivariate_divide(basis[i], others, order).remainder;
            if (r.is_zero()) {
                basis.erase(basis.begin() + i);
                changed = true;
                break;
            }
            r = make_monic(r, order);
            if (r != basis[i]) {
                basis[i] = r;
                changed = true;
            }
        }
    }
    std::sort(basis.begin(), basis.end(), [&](const Polynomial& a, const Polynomial& b) {
        return order.greater(leading_monomial(a, order), leading_monomial(b, order));
    });
    return GroebnerBasis(std::move(basis), std::move(order));
}

bool GroebnerBasis::is_trivial() const {
    return elems_.size() == 1 && elems_[0].is_constant();
}

Polynomial GroebnerBasis::reduce(const Polynomial& f) const {
    if (elems_.empty()) return f;
    return multivariate_divide(f, elems_, order_).remainder;
}

DivisionResult GroebnerBasis::reduce_with_cofactors(const Polynomial& f) const {
    if (elems_.empty()) return {{}, f};
    return multivariate_divide(f, elems_, order_);
}

}  // namespace symbound
