#include "symbound/problem.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace symbound {

namespace {

const std::set<std::string> kKeywords = {"var",   "keep",  "assume",    "objective", "direction",
                                         "depth", "order", "engine",    "name",      "and",
                                         "or",    "not",   "implies",   "floor",     "inv"};

struct Lexer {
    const std::string* text_ptr;
    std::size_t pos = 0;
    int line = 1, col = 1;

    const std::string& text() const { return *text_ptr; }

    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n && pos < text().size(); ++i, ++pos) {
            if (text()[pos] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    }
    void skip_space_and_comments(bool stop_at_newline) {
        while (pos < text().size()) {
            char c = text()[pos];
            if (c == '#') {
                while (pos < text().size() && text()[pos] != '\n') advance(1);
            } else if (c == '\n') {
                if (stop_at_newline) return;
                advance(1);
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance(1);
            } else {
                return;
            }
        }
    }
    bool at_end() const { return pos >= text().size(); }
    char peek() const { return pos < text().size() ? text()[pos] : '\0'; }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, col); }
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

struct Parser {
    Lexer lex;
    ProblemFile& out;

    explicit Parser(const std::string& text, ProblemFile& p) : lex{&text}, out(p) {}

    std::string peek_word(bool same_line = false) {
        lex.skip_space_and_comments(same_line);
        std::size_t p = lex.pos;
        if (p >= lex.text().size() || !ident_start(lex.text()[p])) return "";
        std::size_t q = p;
        while (q < lex.text().size() && ident_char(lex.text()[q])) ++q;
        return lex.text().substr(p, q - p);
    }

    std::string take_word(bool same_line = false) {
        std::string w = peek_word(same_line);
        lex.advance(w.size());
        return w;
    }

    bool take_symbol(const std::string& sym) {
        lex.skip_space_and_comments(true);
        if (lex.text().compare(lex.pos, sym.size(), sym) == 0) {
            lex.advance(sym.size());
            return true;
        }
        return false;
    }

    VarId lookup(const std::string& name) {
        VarId v = out.vars->find(name);
        if (v == kNoVar) lex.fail("undeclared variable: " + name);
        return v;
    }

    Term parse_primary() {
        lex.skip_space_and_comments(true);
        if (lex.at_end()) lex.fail("expected a term");
        char c = lex.peek();
        if (c == '(') {
            lex.advance(1);
            Term t = parse_expr();
            if (!take_symbol(")")) lex.fail("expected ')'");
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t q = lex.pos;
            while (q < lex.text().size() &&
                   (std::isdigit(static_cast<unsigned char>(lex.text()[q])) || lex.text()[q] == '.'))
                ++q;
            std::string num = lex.text().substr(lex.pos, q - lex.pos);
            lex.advance(num.size());
            return t_num(Rational::parse(num));
        }
        if (ident_start(c)) {
            std::string w = take_word();
            if (w == "floor" || w == "inv") {
                if (!take_symbol("(")) lex.fail("expected '(' after " + w);
                Term arg = parse_expr();
                if (!take_symbol(")")) lex.fail("expected ')'");
                return t_fn(w == "floor" ? FnSym::Floor : FnSym::Reciprocal, arg);
            }
            if (kKeywords.count(w)) lex.fail("unexpected keyword '" + w + "' in a term");
            return t_var(lookup(w));
        }
        lex.fail(std::string("unexpected character '") + c + "'");
    }

    Term parse_power() {
        Term base = parse_primary();
        lex.skip_space_and_comments(true);
        if (lex.peek() == '^') {
            lex.advance(1);
            lex.skip_space_and_comments(true);
            std::size_t q = lex.pos;
            while (q < lex.text().size() && std::isdigit(static_cast<unsigned char>(lex.text()[q]))) ++q;
            if (q == lex.pos) lex.fail("expected an integer exponent");
            int e = std::stoi(lex.text().substr(lex.pos, q - lex.pos));
            lex.advance(q - lex.pos);
            if (e < 1) lex.fail("exponent must be positive");
            std::vector<Term> factors(e, base);
            return t_mul(std::move(factors));
        }
        return base;
    }

    Term parse_unary() {
        lex.skip_space_and_comments(true);
        if (lex.peek() == '-') {
            lex.advance(1);
            return t_mul({t_num(Rational(-1)), parse_unary()});
        }
        return parse_power();
    }

    Term parse_muldiv() {
        Term t = parse_unary();
        for (;;) {
            lex.skip_space_and_comments(true);
            char c = lex.peek();
            if (c == '*') {
                lex.advance(1);
                t = t_mul({t, parse_unary()});
            } else if (c == '/') {
                lex.advance(1);
                t = t_div(t, parse_unary());
            } else {
                return t;
            }
        }
    }

    Term parse_expr() {
        Term t = parse_muldiv();
        for (;;) {
            lex.skip_space_and_comments(true);
            char c = lex.peek();
            if (c == '+') {
                lex.advance(1);
                t = t_add({t, parse_muldiv()});
            } else if (c == '-' && lex.text().compare(lex.pos, 2, "->") != 0) {
                lex.advance(1);
                t = t_sub(t, parse_muldiv());
            } else {
                return t;
            }
        }
    }

    CmpOp parse_relop() {
        lex.skip_space_and_comments(true);
        if (take_symbol(">=")) return CmpOp::Ge;
        if (take_symbol("<=")) return CmpOp::Le;
        if (take_symbol("==")) return CmpOp::Eq;
        if (take_symbol("!=")) return CmpOp::Ne;
        if (lex.peek() == '>' ) { lex.advance(1); return CmpOp::Gt; }
        if (lex.peek() == '<') { lex.advance(1); return CmpOp::Lt; }
        if (lex.peek() == '=') { lex.advance(1); return CmpOp::Eq; }
        lex.fail("expected a relation");
    }

    Formula parse_atom_or_group() {
        lex.skip_space_and_comments(true);
        if (peek_word(true) == "not") {
            take_word(true);
            return Formula::negate(parse_atom_or_group());
        }
        if (lex.peek() == '(') {
            // Either a parenthesized formula or a parenthesized term; try the
            // term reading first and fall back on failure.
            Lexer saved = lex;
            try {
                Term l = parse_expr();
                CmpOp op = parse_relop();
                Term r = parse_expr();
                return Formula::atom(l, op, r);
            } catch (const ParseError&) {
                lex = saved;
            }
            lex.advance(1);
            Formula f = parse_formula();
            if (!take_symbol(")")) lex.fail("expected ')'");
            return f;
        }
        Term l = parse_expr();
        CmpOp op = parse_relop();
        Term r = parse_expr();
        return Formula::atom(l, op, r);
    }

    Formula parse_conj() {
        Formula f = parse_atom_or_group();
        std::vector<Formula> kids{f};
        while (peek_word(true) == "and") {
            take_word(true);
            kids.push_back(parse_atom_or_group());
        }
        return kids.size() == 1 ? kids[0] : Formula::conj(std::move(kids));
    }

    Formula parse_disj() {
        Formula f = parse_conj();
        std::vector<Formula> kids{f};
        while (peek_word(true) == "or") {
            take_word(true);
            kids.push_back(parse_conj());
        }
        return kids.size() == 1 ? kids[0] : Formula::disj(std::move(kids));
    }

    Formula parse_formula() {
        Formula f = parse_disj();
        lex.skip_space_and_comments(true);
        if (peek_word(true) == "implies") {
            take_word(true);
            return Formula::implies(f, parse_formula());
        }
        if (lex.text().compare(lex.pos, 2, "->") == 0) {
            lex.advance(2);
            return Formula::implies(f, parse_formula());
        }
        return f;
    }

    void expect_line_end() {
        lex.skip_space_and_comments(true);
        if (!lex.at_end() && lex.peek() != '\n') lex.fail("unexpected trailing input");
    }

    void run() {
        bool have_objective = false;
        for (;;) {
            lex.skip_space_and_comments(false);
            if (lex.at_end()) break;
            std::string kw = take_word();
            if (kw == "name") {
                lex.skip_space_and_comments(true);
                std::size_t q = lex.pos;
                while (q < lex.text().size() && lex.text()[q] != '\n' && lex.text()[q] != '#') ++q;
                std::string n = lex.text().substr(lex.pos, q - lex.pos);
                while (!n.empty() && std::isspace(static_cast<unsigned char>(n.back()))) n.pop_back();
                lex.advance(q - lex.pos);
                out.name = n;
            } else if (kw == "var") {
                std::string w;
                while (!(w = peek_word()).empty() && !kKeywords.count(w)) {
                    take_word();
                    if (out.vars->find(w) != kNoVar) lex.fail("duplicate variable: " + w);
                    out.vars->declare(w, VarOrigin::Input);
                }
            } else if (kw == "keep") {
                std::string w;
                while (!(w = peek_word()).empty() && !kKeywords.count(w)) {
                    take_word();
                    out.keep.push_back(lookup(w));
                }
            } else if (kw == "assume") {
                out.assumptions.push_back(parse_formula());
                expect_line_end();
            } else if (kw == "objective") {
                out.objective = parse_expr();
                have_objective = true;
                expect_line_end();
            } else if (kw == "direction") {
                std::string w = take_word();
                if (w == "upper") out.direction = BoundDirection::Upper;
                else if (w == "lower") out.direction = BoundDirection::Lower;
                else if (w == "both") out.direction = BoundDirection::Both;
                else lex.fail("unknown direction: " + w);
            } else if (kw == "depth") {
                lex.skip_space_and_comments(true);
                std::size_t q = lex.pos;
                while (q < lex.text().size() && std::isdigit(static_cast<unsigned char>(lex.text()[q]))) ++q;
                if (q == lex.pos) lex.fail("expected a depth");
                out.depth = std::stoi(lex.text().substr(lex.pos, q - lex.pos));
                lex.advance(q - lex.pos);
                if (out.depth < 1) lex.fail("depth must be >= 1");
            } else if (kw == "order") {
                std::string w = take_word();
                try {
                    out.order = order_kind_from_name(w);
                } catch (const std::invalid_argument& e) {
                    lex.fail(e.what());
                }
            } else if (kw == "engine") {
                std::string w = take_word();
                if (w == "local") out.engine = Engine::Local;
                else if (w == "lp") out.engine = Engine::Lp;
                else lex.fail("unknown engine: " + w);
            } else if (kw.empty()) {
                lex.fail("expected a statement");
            } else {
                lex.fail("unknown statement: " + kw);
            }
        }
        if (!have_objective) throw ParseError("missing objective", lex.line, lex.col);
    }
};

void count_atoms(const Formula& f, int& eq, int& ineq) {
    if (f.kind == Formula::Atom) {
        (f.op == CmpOp::Eq ? eq : ineq) += 1;
        return;
    }
    for (auto& k : f.kids) count_atoms(k, eq, ineq);
}

int count_floors(const Formula& f) {
    if (f.kind == Formula::Atom) return count_fn(f.lhs, FnSym::Floor) + count_fn(f.rhs, FnSym::Floor);
    int n = 0;
    for (auto& k : f.kids) n += count_floors(k);
    return n;
}

}  // namespace

ProblemFile parse_problem(const std::string& text, const std::string& name) {
    ProblemFile p;
    p.name = name;
    p.vars = std::make_shared<VarTable>();
    Parser parser(text, p);
    parser.run();
    if (p.keep.empty())
        for (VarId v = 0; v < p.vars->size(); ++v) p.keep.push_back(v);
    for (auto& a : p.assumptions) {
        count_atoms(a, p.n_eq, p.n_ineq);
        p.n_floors += count_floors(a);
    }
    p.n_floors += count_fn(p.objective, FnSym::Floor);
    return p;
}

std::string print_problem(const ProblemFile& p) {
    std::ostringstream out;
    if (!p.name.empty()) out << "name " << p.name << "\n";
    out << "var";
    for (VarId v = 0; v < p.vars->size(); ++v)
        if (p.vars->origin(v) == VarOrigin::Input) out << " " << p.vars->name(v);
    out << "\nkeep";
    for (VarId v : p.keep) out << " " << p.vars->name(v);
    out << "\n";
    for (auto& a : p.assumptions) out << "assume " << formula_str(a, *p.vars) << "\n";
    out << "objective " << term_str(p.objective, *p.vars) << "\n";
    out << "direction "
        << (p.direction == BoundDirection::Upper   ? "upper"
            : p.direction == BoundDirection::Lower ? "lower"
                                                   : "both")
        << "\n";
    out << "depth " << p.depth << "\n";
    out << "order " << order_kind_name(p.order) << "\n";
    out << "engine " << (p.engine == Engine::Lp ? "lp" : "local") << "\n";
    return out.str();
}

Term parse_term_text(const std::string& text, const VarTablePtr& vars) {
    ProblemFile scratch;
    scratch.vars = vars;
    Parser parser(text, scratch);
    Term t = parser.parse_expr();
    parser.lex.skip_space_and_comments(false);
    if (!parser.lex.at_end()) parser.lex.fail("unexpected trailing input");
    return t;
}

bool problems_equal(const ProblemFile& a, const ProblemFile& b) {
    if (a.name != b.name || a.keep != b.keep || a.direction != b.direction || a.depth != b.depth ||
        a.order != b.order || a.engine != b.engine)
        return false;
    if (a.vars->size() != b.vars->size()) return false;
    for (VarId v = 0; v < a.vars->size(); ++v)
        if (a.vars->name(v) != b.vars->name(v)) return false;
    if (a.assumptions.size() != b.assumptions.size()) return false;
    for (std::size_t i = 0; i < a.assumptions.size(); ++i)
        if (!formula_equal(a.assumptions[i], b.assumptions[i])) return false;
    return term_equal(a.objective, b.objective);
}

}  // namespace symbound
