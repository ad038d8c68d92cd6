#pragma once

#include <iosfwd>

#include "symbound/saturation.hpp"

namespace symbound {

/// Replaces map variables by their definitions, recursively, using the
/// reduced map; reciprocal content renders as a fraction.
Term unpurify(const Polynomial& p, const ForeignFunctionMap& tm, const MonomialOrder& order);

enum class RunStatus { Ok, Inconsistent };

struct BoundReport {
    Direction direction;
    bool found = false;
    bool improvable = true;       // false when the bound is the objective itself
    std::string text;             // unpurified rendering
    Polynomial bound;             // internal form (over map variables)
    bool strict = false;
    EffDeg ed;
    std::string witness_text;     // filled when requested
    std::vector<std::string> alternates;
};

struct RunResult {
    RunStatus status = RunStatus::Ok;
    std::string name;
    std::vector<BoundReport> bounds;
    SatStats stats;
    double total_seconds = 0;
    double csat_seconds = 0;
    double reduce_seconds = 0;
    int n_eq = 0, n_ineq = 0, n_floors = 0;
};

struct RunOptions {
    bool want_witness = false;
    double timeout_seconds = 0;  // 0 = none
    const lra::ExternalBridge* bridge = nullptr;
    // Overrides applied on top of the problem file's options; negative /
    // unset values keep the file's choice.
    int depth = -1;
    std::optional<BoundDirection> direction;
    std::optional<OrderKind> order;
    std::optional<Engine> engine;
};

RunResult run(const ProblemFile& problem, const RunOptions& opts = {});

void print_report(std::ostream& out, const ProblemFile& problem, const RunResult& r,
                  bool with_stats);
/// Line-delimited machine-readable record mirroring the report.
std::string report_record(const ProblemFile& problem, const RunResult& r, int depth, Engine engine);

struct BenchOptions {
    int depth_min = 3, depth_max = 3;
    std::vector<Engine> engines{Engine::Local};
    double timeout_seconds = 90;
    bool want_witness = false;
};

struct BenchRow {
    std::string name;
    int depth;
    Engine engine;
    bool timeout = false;
    bool error = false;
    std::string message;
    RunResult result;
};

std::vector<BenchRow> bench(const std::string& corpus_dir, const BenchOptions& opts);
void print_bench_table(std::ostream& out, const std::vector<BenchRow>& rows);
std::string bench_record(const BenchRow& row);

}  // namespace symbound
