#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "symbound/runner.hpp"

namespace py = pybind11;
using namespace symbound;

namespace {

RunOptions options_from_kwargs(int depth, const std::string& direction, const std::string& order,
                               const std::string& engine, double timeout, bool witness) {
    RunOptions ro;
    ro.depth = depth;
    if (!direction.empty())
        ro.direction = direction == "upper"   ? BoundDirection::Upper
                       : direction == "lower" ? BoundDirection::Lower
                                              : BoundDirection::Both;
    if (!order.empty()) ro.order = order_kind_from_name(order);
    if (!engine.empty()) ro.engine = engine == "lp" ? Engine::Lp : Engine::Local;
    ro.timeout_seconds = timeout;
    ro.want_witness = witness;
    return ro;
}

py::dict bound_to_dict(const BoundReport& b) {
    py::dict d;
    d["direction"] = b.direction == Direction::Upper ? "upper" : "lower";
    d["found"] = b.found;
    d["bound"] = b.text;
    d["strict"] = b.strict;
    d["ed"] = py::make_tuple(b.ed.bad, b.ed.good);
    d["improvable"] = b.improvable;
    if (!b.witness_text.empty()) d["witness"] = b.witness_text;
    d["alternates"] = b.alternates;
    return d;
}

py::dict result_to_dict(const RunResult& r) {
    py::dict d;
    d["name"] = r.name;
    d["status"] = r.status == RunStatus::Inconsistent ? "inconsistent" : "ok";
    py::list bounds;
    for (auto& b : r.bounds) bounds.append(bound_to_dict(b));
    d["bounds"] = bounds;
    py::dict stats;
    stats["rounds"] = r.stats.rounds;
    stats["c_eq"] = r.stats.c_eq;
    stats["c_ineq"] = r.stats.c_ineq;
    stats["m"] = r.stats.n_monomials;
    stats["eq"] = r.n_eq;
    stats["in"] = r.n_ineq;
    stats["floors"] = r.n_floors;
    d["stats"] = stats;
    d["time"] = r.total_seconds;
    d["csat"] = r.csat_seconds;
    d["reduce"] = r.reduce_seconds;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Symbolic bound synthesis over non-linear arithmetic with floor and reciprocal";

    m.def(
        "solve",
        [](const std::string& text, int depth, const std::string& direction,
           const std::string& order, const std::string& engine, double timeout, bool witness) {
            ProblemFile p = parse_problem(text);
            RunResult r = run(p, options_from_kwargs(depth, direction, order, engine, timeout, witness));
            return result_to_dict(r);
        },
        py::arg("text"), py::arg("depth") = -1, py::arg("direction") = "",
        py::arg("order") = "", py::arg("engine") = "", py::arg("timeout") = 0.0,
        py::arg("witness") = false,
        "Parses a problem text and returns bounds plus statistics as a dict.");

    m.def(
        "solve_file",
        [](const std::string& path, int depth, const std::string& direction,
           const std::string& order, const std::string& engine, double timeout, bool witness) {
            std::ifstream in(path);
            if (!in) throw std::runtime_error("cannot open " + path);
            std::stringstream buf;
            buf << in.rdbuf();
            ProblemFile p = parse_problem(buf.str(), path);
            RunResult r = run(p, options_from_kwargs(depth, direction, order, engine, timeout, witness));
            return result_to_dict(r);
        },
        py::arg("path"), py::arg("depth") = -1, py::arg("direction") = "",
        py::arg("order") = "", py::arg("engine") = "", py::arg("timeout") = 0.0,
        py::arg("witness") = false);

    m.def(
        "parse_summary",
        [](const std::string& text) {
            ProblemFile p = parse_problem(text);
            py::dict d;
            d["name"] = p.name;
            d["eq"] = p.n_eq;
            d["in"] = p.n_ineq;
            d["floors"] = p.n_floors;
            d["depth"] = p.depth;
            py::list keep;
            for (VarId v : p.keep) keep.append(p.vars->name(v));
            d["keep"] = keep;
            d["round_trip"] = print_problem(p);
            return d;
        },
        py::arg("text"), "Parses a problem and reports its shape without solving it.");

    m.def(
        "saturate_stats",
        [](const std::string& text, int depth) {
            ProblemFile p = parse_problem(text);
            SaturationConfig cfg;
            cfg.depth = depth > 0 ? depth : p.depth;
            cfg.keep.insert(p.keep.begin(), p.keep.end());
            cfg.order_kind = p.order;
            SatResult s = saturate(p, cfg);
            py::dict d;
            d["inconsistent"] = s.inconsistent;
            d["rounds"] = s.stats.rounds;
            d["c_eq"] = s.stats.c_eq;
            d["c_ineq"] = s.stats.c_ineq;
            d["m"] = s.stats.n_monomials;
            return d;
        },
        py::arg("text"), py::arg("depth") = -1,
        "Runs the saturation loop alone and reports the cone size.");
}
