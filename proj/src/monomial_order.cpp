#include "symbound/monomial_order.hpp"

#include <algorithm>
#include <stdexcept>

namespace symbound {

OrderKind order_kind_from_name(const std::string& name) {
    if (name == "lex") return OrderKind::Lex;
    if (name == "deglex") return OrderKind::Deglex;
    if (name == "grevlex") return OrderKind::Grevlex;
    if (name == "effdeg") return OrderKind::EffectiveDegree;
    throw std::invalid_argument("unknown monomial order: " + name);
}

std::string order_kind_name(OrderKind k) {
    switch (k) {
        case OrderKind::Lex: return "lex";
        case OrderKind::Deglex: return "deglex";
        case OrderKind::Grevlex: return "grevlex";
        case OrderKind::EffectiveDegree: return "effdeg";
    }
    return "?";
}

MonomialOrder MonomialOrder::lex(int n_vars) {
    auto ctx = std::make_shared<Context>();
    ctx->n_vars = n_vars;
    return MonomialOrder(OrderKind::Lex, ctx);
}

MonomialOrder MonomialOrder::deglex(int n_vars) {
    auto ctx = std::make_shared<Context>();
    ctx->n_vars = n_vars;
    return MonomialOrder(OrderKind::Deglex, ctx);
}

MonomialOrder MonomialOrder::grevlex(int n_vars) {
    auto ctx = std::make_shared<Context>();
    ctx->n_vars = n_vars;
    return MonomialOrder(OrderKind::Grevlex, ctx);
}

namespace {

struct EffdegBuilder {
    const ForeignFunctionMap& tm;
    const std::set<VarId>& keep;
    std::vector<EffDeg>& effdeg;
    std::vector<long long>& weight;
    std::vector<int>& state;  // 0 unvisited, 1 visiting, 2 done

    void visit(VarId v) {
        if (state[v] == 2) return;
        if (state[v] == 1) throw std::invalid_argument("cyclic foreign-function map");
        state[v] = 1;
        const auto* entry = tm.find(v);
        if (entry == nullptr) {
            effdeg[v] = keep.count(v) ? EffDeg(0, 1) : EffDeg(1, 0);
            weight[v] = 0;
        } else {
            EffDeg best(0, 0);
            long long w = 0;
            for (auto& [m, c] : entry->arg.terms()) {
                EffDeg d(0, 0);
                long long mw = 0;
                for (auto& [x, e] : m.exponents()) {
                    visit(x);
                    for (int i = 0; i < e; ++i) d += effdeg[x];
                    mw += e * weight[x];
                }
                if (best < d) best = d;
                w = std::max(w, mw);
            }
            effdeg[v] = best;
            weight[v] = 1 + w;
        }
        state[v] = 2;
    }
};

}  // namespace

MonomialOrder MonomialOrder::effective_degree(const ForeignFunctionMap& tm,
                                              const std::set<VarId>& keep, int n_vars) {
    auto ctx = std::make_shared<Context>();
    ctx->n_vars = n_vars;
    ctx->var_effdeg.resize(n_vars);
    ctx->var_weight.resize(n_vars, 0);
    std::vector<int> state(n_vars, 0);
    EffdegBuilder b{tm, keep, ctx->var_effdeg, ctx->var_weight, state};
    for (VarId v = 0; v < n_vars; ++v) b.visit(v);
    return MonomialOrder(OrderKind::EffectiveDegree, ctx);
}

MonomialOrder MonomialOrder::make(OrderKind kind, const ForeignFunctionMap& tm,
                                  const std::set<VarId>& keep, int n_vars) {
    if (kind == OrderKind::EffectiveDegree) return effective_degree(tm, keep, n_vars);
    auto ctx = std::make_shared<Context>();
    ctx->n_vars = n_vars;
    return MonomialOrder(kind, ctx);
}

void MonomialOrder::check_known(const Monomial& m) const {
    for (auto& [v, e] : m.exponents())
        if (v < 0 || v >= ctx_->n_vars)
            throw std::invalid_argument("monomial mentions a variable unknown to the order");
}

EffDeg MonomialOrder::effdeg(const Monomial& m) const {
    if (kind_ != OrderKind::EffectiveDegree)
        throw std::logic_error("effdeg requires an effective-degree order");
    check_known(m);
    EffDeg d(0, 0);
    for (auto& [v, e] : m.exponents())
        for (int i = 0; i < e; ++i) d += ctx_->var_effdeg[v];
    return d;
}

int MonomialOrder::compare_lex(const Monomial& a, const Monomial& b) const {
    // Variable priority is id order: earlier-created variables are greater.
    auto ia = a.exponents().begin(), ib = b.exponents().begin();
    while (ia != a.exponents().end() || ib != b.exponents().end()) {
        if (ib == b.exponents().end()) return 1;
        if (ia == a.exponents().end()) return -1;
        if (ia->first < ib->first) return 1;   // a has the higher-priority var
        if (ib->first < ia->first) return -1;
        if (ia->second != ib->second) return ia->second > ib->second ? 1 : -1;
        ++ia, ++ib;
    }
    return 0;
}

int MonomialOrder::compare_grevlex(const Monomial& a, const Monomial& b) const {
    long long da = a.degree(), db = b.degree();
    if (da != db) return da < db ? -1 : 1;
    // Equal degree: scan from the smallest-priority variable upward; the
    // monomial with the larger exponent at the first difference is smaller.
    auto ia = a.exponents().rbegin(), ib = b.exponents().rbegin();
    while (ia != a.exponents().rend() || ib != b.exponents().rend()) {
        if (ib == b.exponents().rend()) return -1;  // a has content at a lower-priority var
        if (ia == a.exponents().rend()) return 1;
        if (ia->first > ib->first) return -1;
        if (ib->first > ia->first) return 1;
        if (ia->second != ib->second) return ia->second > ib->second ? -1 : 1;
        ++ia, ++ib;
    }
    return 0;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
    switch (kind_) {
        case OrderKind::Lex:
            return compare_lex(a, b);
        case OrderKind::Deglex: {
            long long da = a.degree(), db = b.degree();
            if (da != db) return da < db ? -1 : 1;
            return compare_lex(a, b);
        }
        case OrderKind::Grevlex:
            return compare_grevlex(a, b);
        case OrderKind::EffectiveDegree: {
            check_known(a);
            check_known(b);
            int c = effdeg(a).cmp(effdeg(b));
            if (c != 0) return c;
            long long wa = 0, wb = 0;
            for (auto& [v, e] : a.exponents()) wa += e * ctx_->var_weight[v];
            for (auto& [v, e] : b.exponents()) wb += e * ctx_->var_weight[v];
            if (wa != wb) return wa < wb ? -1 : 1;
            return compare_grevlex(a, b);
        }
    }
    return 0;
}

std::pair<Monomial, Rational> leading_term(const Polynomial& p, const MonomialOrder& order) {
    if (p.is_zero()) throw std::invalid_argument("leading term of the zero polynomial");
    auto it = p.terms().begin();
    auto best = it;
    for (++it; it != p.terms().end(); ++it)
        if (order.greater(it->first, best->first)) best = it;
    return {best->first, best->second};
}

Monomial leading_monomial(const Polynomial& p, const MonomialOrder& order) {
    return leading_term(p, order).first;
}

}  // namespace symbound
