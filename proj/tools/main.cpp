#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "symbound/runner.hpp"
#include "symbound/smt2.hpp"

using namespace symbound;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string stem_of(const std::string& path) {
    auto slash = path.find_last_of('/');
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    auto dot = base.find_last_of('.');
    return dot == std::string::npos ? base : base.substr(0, dot);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbound: synthesizes optimal symbolic bounds on arithmetic terms"};

    std::string problem_path;
    std::string bench_dir;
    std::string json_path;
    int depth = -1;
    std::string direction, order, engine;
    double timeout = 0;
    bool stats = false, witness = false;
    int bench_depth_min = 3, bench_depth_max = 3;
    bool bench_lp = false;

    app.add_option("problem", problem_path, "problem file to solve");
    app.add_option("--depth", depth, "saturation depth (default: problem file or 3)");
    app.add_option("--direction", direction, "upper | lower | both")
        ->check(CLI::IsMember({"upper", "lower", "both"}));
    app.add_option("--order", order, "effdeg | grevlex | lex | deglex")
        ->check(CLI::IsMember({"effdeg", "grevlex", "lex", "deglex"}));
    std::string keep_list;
    app.add_option("--keep", keep_list, "comma-separated keep-set override");
    app.add_option("--engine", engine, "local | lp")->check(CLI::IsMember({"local", "lp"}));
    app.add_option("--timeout", timeout, "per-problem timeout in seconds");
    app.add_flag("--stats", stats, "print cone statistics and timing");
    app.add_flag("--witness", witness, "print the bound witness identity");
    app.add_option("--bench", bench_dir, "run every .prob file in a directory");
    app.add_option("--bench-depth-min", bench_depth_min, "minimum saturation depth for --bench");
    app.add_option("--bench-depth-max", bench_depth_max, "maximum saturation depth for --bench");
    app.add_flag("--bench-lp", bench_lp, "benchmark the lp engine alongside local projection");
    app.add_option("--json", json_path, "append machine-readable records to a file");

    CLI11_PARSE(app, argc, argv);

    std::unique_ptr<lra::ExternalBridge> bridge;
    if (const char* cmd = std::getenv("SYMBOUND_SMT2_SOLVER"); cmd != nullptr && *cmd != '\0')
        bridge = std::make_unique<lra::ExternalBridge>(cmd);

    try {
        if (!bench_dir.empty()) {
            BenchOptions bo;
            bo.depth_min = bench_depth_min;
            bo.depth_max = bench_depth_max;
            if (bench_lp) bo.engines = {Engine::Local, Engine::Lp};
            if (timeout > 0) bo.timeout_seconds = timeout;
            bo.want_witness = witness;
            auto rows = bench(bench_dir, bo);
            print_bench_table(std::cout, rows);
            if (!json_path.empty()) {
                std::ofstream out(json_path, std::ios::app);
                for (auto& row : rows) out << bench_record(row) << "\n";
            } else {
                for (auto& row : rows) std::cout << bench_record(row) << "\n";
            }
            return 0;
        }

        if (problem_path.empty()) {
            std::cerr << "error: no problem file given (see --help)\n";
            return 1;
        }
        ProblemFile p = parse_problem(read_file(problem_path), stem_of(problem_path));
        if (!keep_list.empty()) {
            p.keep.clear();
            std::stringstream ss(keep_list);
            std::string item;
            while (std::getline(ss, item, ',')) {
                VarId v = p.vars->find(item);
                if (v == kNoVar) throw std::runtime_error("unknown keep variable: " + item);
                p.keep.push_back(v);
            }
        }
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
        ro.bridge = bridge.get();

        RunResult r = run(p, ro);
        print_report(std::cout, p, r, stats);
        std::string record = report_record(p, r, ro.depth > 0 ? ro.depth : p.depth,
                                           ro.engine.value_or(p.engine));
        if (!json_path.empty()) {
            std::ofstream out(json_path, std::ios::app);
            out << record << "\n";
        } else if (stats) {
            std::cout << record << "\n";
        }
        return r.status == RunStatus::Inconsistent ? 2 : 0;
    } catch (const TimeoutError&) {
        std::cerr << "error: timeout\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
