#include "symbound/smt2.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

namespace symbound::lra {

namespace {

std::string smt_num(const Rational& r) {
    std::string n = r.num().str();
    bool neg = false;
    if (!n.empty() && n[0] == '-') {
        neg = true;
        n = n.substr(1);
    }
    std::string body = r.den() == 1 ? n : "(/ " + n + " " + r.den().str() + ")";
    return neg ? "(- " + body + ")" : body;
}

std::string smt_expr(const LinExpr& e, const Rational& c, const std::vector<std::string>& names) {
    auto name = [&](Var v) {
        return v < static_cast<Var>(names.size()) ? names[v] : "x" + std::to_string(v);
    };
    std::ostringstream out;
    std::size_t parts = e.terms.size() + (c.is_zero() ? 0 : 1);
    if (parts == 0) return "0";
    if (parts > 1) out << "(+ ";
    bool first = true;
    for (auto& [v, k] : e.terms) {
        if (!first) out << " ";
        first = false;
        if (k.is_one()) out << name(v);
        else out << "(* " << smt_num(k) << " " << name(v) << ")";
    }
    if (!c.is_zero()) {
        if (!first) out << " ";
        out << smt_num(c);
    }
    if (parts > 1) out << ")";
    return out.str();
}

std::string smt_atom(const Atom& a, const std::vector<std::string>& names) {
    const char* op = a.rel == Rel::Ge ? ">=" : a.rel == Rel::Gt ? ">" : "=";
    return std::string("(") + op + " " + smt_expr(a.lhs, a.constant, names) + " 0)";
}

std::string smt_node(const Node& n, const std::vector<Atom>& atoms,
                     const std::vector<std::string>& names) {
    switch (n.kind) {
        case Node::Lit:
            return smt_atom(atoms[n.atom], names);
        case Node::And:
        case Node::Or: {
            if (n.kids.empty()) return n.kind == Node::And ? "true" : "false";
            std::string s = n.kind == Node::And ? "(and" : "(or";
            for (auto& k : n.kids) s += " " + smt_node(k, atoms, names);
            return s + ")";
        }
    }
    return "true";
}

}  // namespace

std::string to_smt2(const LinearSystem& sys, const std::vector<std::string>& names, bool get_model) {
    std::ostringstream out;
    out << "(set-logic QF_LRA)\n";
    auto name = [&](Var v) {
        return v < static_cast<Var>(names.size()) ? names[v] : "x" + std::to_string(v);
    };
    for (Var v = 0; v < sys.n_vars; ++v)
        out << "(declare-const " << name(v) << " Real)\n";
    for (auto& n : sys.conjuncts) out << "(assert " << smt_node(n, sys.atoms, names) << ")\n";
    out << "(check-sat)\n";
    if (get_model && sys.n_vars > 0) {
        out << "(get-value (";
        for (Var v = 0; v < sys.n_vars; ++v) out << (v ? " " : "") << name(v);
        out << "))\n";
    }
    return out.str();
}

namespace {

// Minimal s-expression reader for (get-value ...) responses.
struct SexpReader {
    const std::string& s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])))) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    std::string token() {
        skip_ws();
        if (i >= s.size()) return "";
        if (s[i] == '(' || s[i] == ')') return std::string(1, s[i++]);
        std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '(' &&
               s[i] != ')')
            ++i;
        return s.substr(start, i - start);
    }
};

Rational parse_value(SexpReader& r) {
    std::string t = r.token();
    if (t == "(") {
        std::string op = r.token();
        if (op == "-") {
            Rational v = parse_value(r);
            if (r.token() != ")") throw std::runtime_error("bad smt model");
            return -v;
        }
        if (op == "/") {
            Rational a = parse_value(r);
            Rational b = parse_value(r);
            if (r.token() != ")") throw std::runtime_error("bad smt model");
            return a / b;
        }
        throw std::runtime_error("bad smt model term: " + op);
    }
    return Rational::parse(t);
}

}  // namespace

CheckResult bridge_check(const ExternalBridge& bridge, const LinearSystem& sys) {
    char path[] = "/tmp/symbound_smt_XXXXXX";
    int fd = mkstemp(path);
    if (fd < 0) throw std::runtime_error("bridge: cannot create temp file");
    {
        std::ofstream out(path);
        out << to_smt2(sys);
    }
    std::string cmd = bridge.command() + " " + path + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        ::close(fd);
        ::remove(path);
        throw std::runtime_error("bridge: cannot run " + bridge.command());
    }
    std::string output;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, n);
    pclose(pipe);
    ::close(fd);
    ::remove(path);

    CheckResult res;
    std::istringstream header(output);
    std::string word;
    std::size_t answer_end = 0;
    bool answered = false;
    while (header >> word) {
        if (word == "unsat") {
            res.sat = false;
            return res;
        }
        if (word == "sat") {
            answered = true;
            auto pos = header.tellg();
            answer_end = pos < 0 ? output.size() : static_cast<std::size_t>(pos);
            break;
        }
    }
    if (!answered) throw std::runtime_error("bridge: no answer from solver");
    res.sat = true;
    res.model.assign(sys.n_vars, DeltaRational());
    auto lparen = output.find('(', answer_end);
    if (lparen == std::string::npos) return res;
    std::string rest = output.substr(lparen);
    SexpReader r{rest};
    if (r.token() != "(") return res;
    while (!r.eof()) {
        std::string t = r.token();
        if (t == ")") break;
        if (t != "(") throw std::runtime_error("bad smt model");
        std::string name = r.token();
        Rational v = parse_value(r);
        if (r.token() != ")") throw std::runtime_error("bad smt model");
        if (name.size() > 1 && name[0] == 'x') {
            int idx = std::stoi(name.substr(1));
            if (idx >= 0 && idx < sys.n_vars) res.model[idx] = DeltaRational(v);
        }
    }
    return res;
}

}  // namespace symbound::lra
