#include "rankclose/cli.hpp"

#include "rankclose/algebraic.hpp"
#include "rankclose/closure.hpp"
#include "rankclose/completion.hpp"
#include "rankclose/experiment.hpp"
#include "rankclose/io.hpp"
#include "rankclose/json.hpp"
#include "rankclose/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace rankclose {

namespace {

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string &path, std::istream &in) {
    if (path.empty() || path == "-")
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw UsageError("cannot open " + path);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void write_output(const std::string &path, const std::string &text, std::ostream &out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text) || !f.flush())
        throw UsageError("cannot write " + path);
}

std::string dump(const nlohmann::json &j, bool pretty) { return (pretty ? j.dump(2) : j.dump()) + "\n"; }

bool looks_like_mask(const std::string &text) {
    return text.find_first_not_of("01 \t\r\n") == std::string::npos;
}

Mask read_mask_any(const std::string &text, bool force_csv) {
    if (!force_csv && looks_like_mask(text))
        return parse_mask(text);
    return parse_masked_matrix(text).mask();
}

BlockStrategy parse_strategy(const std::string &s) {
    if (s == "exhaustive")
        return BlockStrategy::exhaustive;
    if (s == "heuristic")
        return BlockStrategy::heuristic;
    throw UsageError("unknown strategy '" + s + "' (exhaustive|heuristic)");
}

struct Common {
    std::string input;
    std::string out_path;
    long long rank = 0;
    std::uint64_t seed = 0;
    double tol = kDefaultRankTol;
    std::string strategy = "exhaustive";
    bool pretty = false;
    bool csv = false;
};

} // namespace

int run_cli(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err) {
    CLI::App app{"Identifiability and exact completion of low-rank matrices from their observation mask"};
    app.require_subcommand(1);

    Common c;
    long long rows = 0, cols = 0, count = 0;
    std::uint64_t budget = kDefaultPartitionBudget;
    std::string mask_path, trace_path, json_path, preset_name, methods_csv;
    std::vector<long long> counts;
    std::size_t trials = 100, jobs = 1;
    double threshold = kDefaultSuccessThreshold;
    bool no_precheck = false, check_connectivity = false, no_timing = false;
    int restarts = SolverConfig{}.restarts, max_iters = SolverConfig{}.max_iters;

    const auto add_rank = [&](CLI::App *s) { s->add_option("-r,--rank", c.rank, "Target rank")->required(); };
    const auto add_io = [&](CLI::App *s) {
        s->add_option("input", c.input, "Input file (default: standard input)");
        s->add_option("--out", c.out_path, "Output file (default: standard output)");
    };

    auto *gen_mask = app.add_subcommand("gen-mask", "Uniformly random mask with a fixed number of entries");
    gen_mask->add_option("-m,--rows", rows)->required();
    gen_mask->add_option("-n,--cols", cols)->required();
    gen_mask->add_option("-k,--count", count)->required();
    gen_mask->add_option("--seed", c.seed);
    gen_mask->add_option("--out", c.out_path);

    auto *gen_matrix = app.add_subcommand("gen-matrix", "Random rank-r matrix, optionally masked");
    gen_matrix->add_option("-m,--rows", rows)->required();
    gen_matrix->add_option("-n,--cols", cols)->required();
    add_rank(gen_matrix);
    gen_matrix->add_option("--seed", c.seed);
    gen_matrix->add_option("--mask", mask_path, "Mask file; output becomes a masked CSV");
    gen_matrix->add_option("--out", c.out_path);

    auto *check = app.add_subcommand("check", "Necessary conditions, closability and Jacobian rank of a mask");
    add_rank(check);
    add_io(check);
    check->add_option("--seed", c.seed);
    check->add_option("--tol", c.tol, "Relative rank tolerance");
    check->add_option("--budget", budget, "Partition search budget");
    check->add_flag("--csv", c.csv, "Input is a masked-matrix CSV");
    check->add_flag("--pretty", c.pretty);

    auto *closure = app.add_subcommand("closure", "r-closure trace of a mask");
    add_rank(closure);
    add_io(closure);
    closure->add_option("--strategy", c.strategy, "exhaustive|heuristic");
    closure->add_option("--seed", c.seed);
    closure->add_flag("--csv", c.csv, "Input is a masked-matrix CSV");
    closure->add_flag("--pretty", c.pretty);

    auto *complete_cmd = app.add_subcommand("complete", "Exact completion of a masked CSV along the r-closure");
    add_rank(complete_cmd);
    add_io(complete_cmd);
    complete_cmd->add_option("--strategy", c.strategy, "exhaustive|heuristic");
    complete_cmd->add_option("--seed", c.seed);
    c.tol = 1e-10;
    complete_cmd->add_option("--tol", c.tol, "Degenerate-block tolerance");
    complete_cmd->add_option("--trace", trace_path, "JSON sidecar path (default: <out>.json)");
    complete_cmd->add_flag("--no-precheck", no_precheck);
    complete_cmd->add_flag("--check-connectivity", check_connectivity, "Add r-connectivity to the precheck");
    complete_cmd->add_flag("--pretty", c.pretty);

    auto *fiber = app.add_subcommand("fiber", "Jacobian-rank generic fiber dimension of a mask");
    add_rank(fiber);
    add_io(fiber);
    fiber->add_option("--seed", c.seed);
    fiber->add_option("--tol", c.tol, "Relative rank tolerance");
    fiber->add_flag("--csv", c.csv, "Input is a masked-matrix CSV");
    fiber->add_flag("--pretty", c.pretty);

    auto *experiment = app.add_subcommand("experiment", "Monte-Carlo success-rate sweep");
    experiment->add_option("--preset", preset_name, "fig1a|fig1b|fig1c");
    experiment->add_option("-m,--rows", rows);
    experiment->add_option("-n,--cols", cols);
    experiment->add_option("-r,--rank", c.rank);
    experiment->add_option("--counts", counts, "Measurement counts")->delimiter(',');
    experiment->add_option("--trials", trials, "Trials per count");
    experiment->add_option("--methods", methods_csv,
                           "Comma-separated subset of connectivity,min_degree,closure,jacobian,nuclear,rank_fit");
    experiment->add_option("--seed", c.seed);
    experiment->add_option("--threshold", threshold, "Relative Frobenius success threshold");
    experiment->add_option("--jobs", jobs, "Worker threads");
    experiment->add_option("--restarts", restarts, "Rank-fit restarts");
    experiment->add_option("--max-iters", max_iters, "Solver iteration cap");
    experiment->add_option("--out", c.out_path, "CSV output (default: standard output)");
    experiment->add_option("--json", json_path, "Also write a JSON mirror");
    experiment->add_flag("--no-timing", no_timing, "Write 0 in the seconds column");
    experiment->add_flag("--pretty", c.pretty);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*gen_mask) {
            write_output(c.out_path, serialize_mask(random_mask(rows, cols, count, c.seed)), out);
            return kExitOk;
        }
        if (*gen_matrix) {
            const DenseMatrix a = random_rank_r(rows, cols, c.rank, c.seed);
            if (mask_path.empty()) {
                write_output(c.out_path, serialize_dense(a), out);
            } else {
                const Mask mask = parse_mask(read_input(mask_path, in));
                write_output(c.out_path, serialize_masked_matrix(apply_mask(a, mask)), out);
            }
            return kExitOk;
        }
        if (*check) {
            const Mask mask = read_mask_any(read_input(c.input, in), c.csv);
            ConditionReport report = necessary_conditions_report(mask, c.rank, budget);
            report.r_closable = is_r_closable(mask, c.rank);
            try {
                merge_fiber(report, fiber_dimension_test(mask, c.rank, {c.seed, c.tol}));
            } catch (const RankMismatch &e) {
                err << "warning: " << e.what() << "\n";
            }
            write_output(c.out_path, dump(to_json(report), c.pretty), out);
            return *report.r_closable ? kExitOk : kExitNegative;
        }
        if (*closure) {
            const Mask mask = read_mask_any(read_input(c.input, in), c.csv);
            const auto trace = r_closure(mask, c.rank, {parse_strategy(c.strategy), 50, c.seed});
            write_output(c.out_path, dump(to_json(trace), c.pretty), out);
            return trace.closable() ? kExitOk : kExitNegative;
        }
        if (*complete_cmd) {
            const MaskedMatrix mm = parse_masked_matrix(read_input(c.input, in));
            CompletionOptions opts;
            opts.strategy = parse_strategy(c.strategy);
            opts.seed = c.seed;
            opts.degenerate_tol = c.tol;
            opts.precheck = !no_precheck;
            opts.precheck_connectivity = check_connectivity;
            const auto result = complete(mm, c.rank, opts);
            if (trace_path.empty() && !c.out_path.empty() && c.out_path != "-")
                trace_path = c.out_path + ".json";
            if (!trace_path.empty())
                write_output(trace_path, dump(to_json(result), c.pretty), out);
            if (!result.ok()) {
                err << (result.status == CompletionStatus::precheck_failed ? result.diagnostic
                                                                          : "no completable block: " + result.diagnostic)
                    << "\n";
                return kExitNegative;
            }
            write_output(c.out_path, serialize_dense(result.matrix), out);
            return kExitOk;
        }
        if (*fiber) {
            const Mask mask = read_mask_any(read_input(c.input, in), c.csv);
            const auto rep = fiber_dimension_test(mask, c.rank, {c.seed, c.tol});
            write_output(c.out_path, dump(to_json(rep), c.pretty), out);
            return rep.generically_finite ? kExitOk : kExitNegative;
        }
        if (*experiment) {
            ExperimentConfig cfg;
            if (!preset_name.empty()) {
                auto p = preset(preset_name);
                if (!p)
                    throw UsageError("unknown preset '" + preset_name + "'");
                cfg = *p;
            }
            if (rows > 0)
                cfg.rows = rows;
            if (cols > 0)
                cfg.cols = cols;
            if (c.rank > 0)
                cfg.rank = c.rank;
            if (!counts.empty())
                cfg.measurement_counts.assign(counts.begin(), counts.end());
            if (experiment->count("--trials") || preset_name.empty())
                cfg.trials_per_count = trials;
            if (!methods_csv.empty()) {
                cfg.methods.clear();
                std::istringstream s(methods_csv);
                std::string name;
                while (std::getline(s, name, ',')) {
                    auto m = parse_method(name);
                    if (!m)
                        throw UsageError("unknown method '" + name + "'");
                    cfg.methods.push_back(*m);
                }
            } else if (preset_name.empty()) {
                cfg.methods = {Method::min_degree, Method::connectivity, Method::closure, Method::rank_fit};
            }
            if (cfg.measurement_counts.empty())
                throw UsageError("experiment needs --preset or --counts");
            cfg.seed = c.seed;
            cfg.success_threshold = threshold;
            cfg.jobs = jobs;
            cfg.record_timing = !no_timing;
            cfg.solver.restarts = restarts;
            cfg.solver.max_iters = max_iters;
            const auto result = run_experiment(cfg);
            for (const auto &f : result.failures)
                err << "trial failure: " << f << "\n";
            write_output(c.out_path, experiment_csv(result), out);
            if (!json_path.empty())
                write_output(json_path, dump(to_json(result), c.pretty), out);
            return kExitOk;
        }
    } catch (const InputError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace rankclose
