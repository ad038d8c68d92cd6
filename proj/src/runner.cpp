#include "symbound/runner.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace symbound {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Term unpurify_monomial(const Monomial& m, const Rational& coeff, const ForeignFunctionMap& tm,
                       const MonomialOrder& order) {
    std::vector<Term> factors;
    if (!coeff.is_one() || m.is_one()) factors.push_back(t_num(coeff));
    for (auto& [v, e] : m.exponents()) {
        const auto* entry = tm.find(v);
        Term base;
        if (entry == nullptr) {
            base = t_var(v);
        } else {
            Term arg = unpurify(entry->arg, tm, order);
            base = t_fn(entry->fn, arg);
        }
        for (int i = 0; i < e; ++i) factors.push_back(base);
    }
    return t_mul(std::move(factors));
}

}  // namespace

Term unpurify(const Polynomial& p, const ForeignFunctionMap& tm, const MonomialOrder& order) {
    if (p.is_zero()) return t_num(Rational(0));
    std::vector<std::pair<Monomial, Rational>> terms(p.terms().begin(), p.terms().end());
    std::sort(terms.begin(), terms.end(),
              [&](const auto& a, const auto& b) { return order.greater(a.first, b.first); });
    std::vector<Term> parts;
    parts.reserve(terms.size());
    for (auto& [m, c] : terms) parts.push_back(unpurify_monomial(m, c, tm, order));
    return t_add(std::move(parts));
}

RunResult run(const ProblemFile& problem, const RunOptions& opts) {
    RunResult out;
    out.name = problem.name;
    out.n_eq = problem.n_eq;
    out.n_ineq = problem.n_ineq;
    out.n_floors = problem.n_floors;

    auto start = Clock::now();
    Deadline deadline = Deadline::after(opts.timeout_seconds);

    SaturationConfig cfg;
    cfg.depth = opts.depth > 0 ? opts.depth : problem.depth;
    cfg.keep.insert(problem.keep.begin(), problem.keep.end());
    cfg.order_kind = opts.order.value_or(problem.order);
    cfg.deadline = deadline;
    cfg.bridge = opts.bridge;

    auto sat_start = Clock::now();
    SatResult sat = saturate(problem, cfg);
    out.csat_seconds = seconds_since(sat_start);
    out.stats = sat.stats;

    if (sat.inconsistent) {
        out.status = RunStatus::Inconsistent;
        out.total_seconds = seconds_since(start);
        return out;
    }

    // The report's effective-degree column always refers to the
    // effective-degree order over the reduced map, whatever order ran.
    MonomialOrder ed_order =
        MonomialOrder::effective_degree(sat.tm, cfg.keep, problem.vars->size());

    BoundDirection dir = opts.direction.value_or(problem.direction);
    Engine engine = opts.engine.value_or(problem.engine);
    std::vector<Direction> dirs;
    if (dir == BoundDirection::Upper || dir == BoundDirection::Both) dirs.push_back(Direction::Upper);
    if (dir == BoundDirection::Lower || dir == BoundDirection::Both) dirs.push_back(Direction::Lower);

    Polynomial objective_reduced = sat.cone.ideal.reduce(sat.objective);

    for (Direction d : dirs) {
        CredOptions copts;
        copts.engine = engine;
        copts.deadline = deadline;
        copts.bridge = opts.bridge;
        auto red_start = Clock::now();
        CredResult cr = cred(sat.cone, sat.objective, d, copts);
        out.reduce_seconds += seconds_since(red_start);
        if (cr.status == ConeStatus::Inconsistent) {
            out.status = RunStatus::Inconsistent;
            out.total_seconds = seconds_since(start);
            return out;
        }
        BoundReport rep;
        rep.direction = d;
        if (!cr.bounds.empty()) {
            const CredBound& best = cr.bounds.front();
            rep.found = true;
            rep.bound = best.bound;
            rep.strict = best.strict;
            Term t = unpurify(best.bound, sat.tm, sat.cone.order());
            rep.text = term_str(t, *problem.vars);
            if (!best.bound.is_zero())
                rep.ed = ed_order.effdeg(leading_monomial(best.bound, ed_order));
            // A bound whose leading monomial is the objective's is no
            // improvement: the objective is unbounded in the order.
            if (!objective_reduced.is_constant() && !best.bound.is_constant() &&
                leading_monomial(best.bound, sat.cone.order()) ==
                    leading_monomial(objective_reduced, sat.cone.order()))
                rep.improvable = false;
            if (opts.want_witness)
                rep.witness_text = witness_str(sat.cone, sat.objective, d, best, *problem.vars);
            for (std::size_t i = 1; i < cr.bounds.size(); ++i)
                rep.alternates.push_back(
                    term_str(unpurify(cr.bounds[i].bound, sat.tm, sat.cone.order()), *problem.vars));
        }
        out.bounds.push_back(std::move(rep));
    }
    out.total_seconds = seconds_since(start);
    return out;
}

namespace {

const char* dir_name(Direction d) { return d == Direction::Upper ? "upper" : "lower"; }

std::string fmt_seconds(double s) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(2) << s;
    return out.str();
}

}  // namespace

void print_report(std::ostream& out, const ProblemFile& problem, const RunResult& r,
                  bool with_stats) {
    out << "problem: " << (r.name.empty() ? "(unnamed)" : r.name) << "\n";
    if (r.status == RunStatus::Inconsistent) {
        out << "  assumptions are inconsistent (the cone contains -1)\n";
        return;
    }
    std::string objective = term_str(problem.objective, *problem.vars);
    for (auto& b : r.bounds) {
        if (!b.found) {
            out << "  " << dir_name(b.direction) << ": no bound\n";
            continue;
        }
        std::string rel = b.direction == Direction::Upper ? (b.strict ? "<" : "<=")
                                                          : (b.strict ? ">" : ">=");
        out << "  " << objective << " " << rel << " " << b.text;
        out << "   [ed " << b.ed.str() << "]";
        if (!b.improvable) out << "   (unbounded " << (b.direction == Direction::Upper ? "above" : "below")
                               << ": no smaller leading term exists)";
        out << "\n";
        for (auto& alt : b.alternates) out << "    alternate: " << alt << "\n";
        if (!b.witness_text.empty()) out << "  witness:\n" << b.witness_text << "\n";
    }
    if (with_stats) {
        out << "  stats: rounds=" << r.stats.rounds << " c-eq=" << r.stats.c_eq
            << " c-ineq=" << r.stats.c_ineq << " m=" << r.stats.n_monomials
            << " time=" << fmt_seconds(r.total_seconds) << "s csat=" << fmt_seconds(r.csat_seconds)
            << "s reduce=" << fmt_seconds(r.reduce_seconds) << "s\n";
    }
}

std::string report_record(const ProblemFile& problem, const RunResult& r, int depth,
                          Engine engine) {
    std::ostringstream out;
    out << "result name=" << (r.name.empty() ? "problem" : r.name) << " depth=" << depth
        << " engine=" << (engine == Engine::Lp ? "lp" : "local")
        << " status=" << (r.status == RunStatus::Inconsistent ? "inconsistent" : "ok")
        << " eq=" << r.n_eq << " in=" << r.n_ineq << " floors=" << r.n_floors
        << " c_eq=" << r.stats.c_eq << " c_ineq=" << r.stats.c_ineq << " m=" << r.stats.n_monomials
        << " rounds=" << r.stats.rounds << " time=" << fmt_seconds(r.total_seconds)
        << " csat=" << fmt_seconds(r.csat_seconds) << " reduce=" << fmt_seconds(r.reduce_seconds);
    for (auto& b : r.bounds) {
        if (!b.found) continue;
        out << " " << dir_name(b.direction) << "=\"" << b.text << "\""
            << " " << dir_name(b.direction) << "_ed=" << b.ed.bad << ":" << b.ed.good;
    }
    (void)problem;
    return out.str();
}

std::vector<BenchRow> bench(const std::string& corpus_dir, const BenchOptions& opts) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (auto& entry : fs::directory_iterator(corpus_dir)) {
        if (entry.path().extension() == ".prob") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    std::vector<BenchRow> rows;
    for (auto& path : files) {
        std::ifstream in(path);
        std::stringstream buf;
        buf << in.rdbuf();
        for (int depth = opts.depth_min; depth <= opts.depth_max; ++depth) {
            for (Engine engine : opts.engines) {
                BenchRow row;
                row.depth = depth;
                row.engine = engine;
                row.name = path.stem().string();
                try {
                    ProblemFile p = parse_problem(buf.str(), path.stem().string());
                    if (!p.name.empty()) row.name = p.name;
                    RunOptions ro;
                    ro.depth = depth;
                    ro.engine = engine;
                    ro.timeout_seconds = opts.timeout_seconds;
                    ro.want_witness = opts.want_witness;
                    row.result = run(p, ro);
                    row.result.name = row.name;
                } catch (const TimeoutError&) {
                    row.timeout = true;
                } catch (const std::exception& e) {
                    row.error = true;
                    row.message = e.what();
                }
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

void print_bench_table(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << std::left << std::setw(22) << "name" << std::setw(6) << "depth" << std::setw(7)
        << "engine" << std::setw(6) << "eq" << std::setw(5) << "in" << std::setw(7) << "floors"
        << std::setw(7) << "c-eq" << std::setw(8) << "c-ineq" << std::setw(7) << "m"
        << std::setw(9) << "time" << std::setw(9) << "csat" << std::setw(9) << "reduce"
        << "bounds\n";
    for (auto& row : rows) {
        out << std::left << std::setw(22) << row.name << std::setw(6) << row.depth << std::setw(7)
            << (row.engine == Engine::Lp ? "lp" : "local");
        if (row.timeout) {
            out << "timeout\n";
            continue;
        }
        if (row.error) {
            out << "error: " << row.message << "\n";
            continue;
        }
        const RunResult& r = row.result;
        out << std::setw(6) << r.n_eq << std::setw(5) << r.n_ineq << std::setw(7) << r.n_floors
            << std::setw(7) << r.stats.c_eq << std::setw(8) << r.stats.c_ineq << std::setw(7)
            << r.stats.n_monomials << std::setw(9) << fmt_seconds(r.total_seconds) << std::setw(9)
            << fmt_seconds(r.csat_seconds) << std::setw(9) << fmt_seconds(r.reduce_seconds);
        if (r.status == RunStatus::Inconsistent) {
            out << "inconsistent";
        } else {
            bool first = true;
            for (auto& b : r.bounds) {
                if (!b.found) continue;
                if (!first) out << "; ";
                first = false;
                out << dir_name(b.direction) << " " << (b.direction == Direction::Upper ? "<= " : ">= ")
                    << b.text;
            }
        }
        out << "\n";
    }
}

std::string bench_record(const BenchRow& row) {
    if (row.timeout)
        return "row name=" + row.name + " depth=" + std::to_string(row.depth) +
               " engine=" + (row.engine == Engine::Lp ? std::string("lp") : std::string("local")) +
               " status=timeout";
    if (row.error)
        return "row name=" + row.name + " depth=" + std::to_string(row.depth) +
               " engine=" + (row.engine == Engine::Lp ? std::string("lp") : std::string("local")) +
               " status=error";
    const RunResult& r = row.result;
    std::ostringstream out;
    out << "row name=" << row.name << " depth=" << row.depth
        << " engine=" << (row.engine == Engine::Lp ? "lp" : "local")
        << " status=" << (r.status == RunStatus::Inconsistent ? "inconsistent" : "ok")
        << " eq=" << r.n_eq << " in=" << r.n_ineq << " floors=" << r.n_floors
        << " c_eq=" << r.stats.c_eq << " c_ineq=" << r.stats.c_ineq << " m=" << r.stats.n_monomials
        << " time=" << fmt_seconds(r.total_seconds) << " csat=" << fmt_seconds(r.csat_seconds)
        << " reduce=" << fmt_seconds(r.reduce_seconds);
    for (auto& b : r.bounds)
        if (b.found)
            out << " " << dir_name(b.direction) << "=\"" << b.text << "\"";
    return out.str();
}

}  // namespace symbound
