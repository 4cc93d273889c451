#include "rankclose/experiment.hpp"

#include "rankclose/algebraic.hpp"
#include "rankclose/completion.hpp"
#include "rankclose/graph.hpp"
#include "rankclose/io.hpp"
#include "rankclose/linalg.hpp"
#include "rankclose/rng.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

namespace rankclose {

namespace {

constexpr std::pair<Method, std::string_view> kMethodNames[] = {
    {Method::connectivity, "connectivity"}, {Method::min_degree, "min_degree"}, {Method::closure, "closure"},
    {Method::jacobian, "jacobian"},         {Method::nuclear, "nuclear"},       {Method::rank_fit, "rank_fit"},
};

struct TrialWork {
    TrialOutcome outcome;
    std::vector<double> seconds; // per method
    std::vector<std::string> failures;
};

TrialWork run_trial(const ExperimentConfig &cfg, Index alpha, std::size_t trial) {
    using clock = std::chrono::steady_clock;
    TrialWork work;
    work.outcome.alpha = alpha;
    work.outcome.trial = trial;
    work.outcome.success.assign(cfg.methods.size(), 0);
    work.seconds.assign(cfg.methods.size(), 0.0);

    const auto seeds = trial_seeds(cfg.seed, alpha, trial);
    const Mask mask = random_mask(cfg.rows, cfg.cols, alpha, seeds.mask);
    const DenseMatrix truth = random_rank_r(cfg.rows, cfg.cols, cfg.rank, seeds.matrix);
    const MaskedMatrix masked = apply_mask(truth, mask);
    SolverConfig solver = cfg.solver;
    solver.seed = seeds.solver;

    for (std::size_t k = 0; k < cfg.methods.size(); ++k) {
        const auto start = clock::now();
        bool ok = false;
        try {
            switch (cfg.methods[k]) {
            case Method::connectivity:
                ok = is_r_connected(mask, cfg.rank).ok;
                break;
            case Method::min_degree:
                ok = min_degree_condition(mask, cfg.rank).ok;
                break;
            case Method::closure: {
                CompletionOptions opts;
                opts.strategy = BlockStrategy::heuristic;
                opts.seed = seeds.solver;
                auto res = complete(masked, cfg.rank, opts);
                if (!res.ok() && res.status != CompletionStatus::precheck_failed &&
                    cfg.rows + cfg.cols <= cfg.exhaustive_fallback_limit) {
                    opts.strategy = BlockStrategy::exhaustive;
                    res = complete(masked, cfg.rank, opts);
                    work.outcome.closure_fallback = true;
                }
                work.outcome.closure_closable = res.ok();
                ok = res.ok() && success(res.matrix, truth, cfg.success_threshold);
                break;
            }
            case Method::jacobian:
                ok = fiber_dimension_test(mask, cfg.rank, {seeds.solver, kDefaultRankTol}).generically_finite;
                break;
            case Method::nuclear:
                ok = success(nuclear_norm_complete(masked, solver).matrix, truth, cfg.success_threshold);
                break;
            case Method::rank_fit:
                ok = success(rank_r_fit(masked, cfg.rank, solver).matrix, truth, cfg.success_threshold);
                break;
            }
        } catch (const std::exception &e) {
            std::ostringstream msg;
            msg << "alpha=" << alpha << " trial=" << trial << " " << method_name(cfg.methods[k]) << ": "
                << e.what();
            work.failures.push_back(msg.str());
            if (work.outcome.error.empty())
                work.outcome.error = e.what();
        }
        work.outcome.success[k] = ok ? 1 : 0;
        if (cfg.record_timing)
            work.seconds[k] = std::chrono::duration<double>(clock::now() - start).count();
    }
    return work;
}

} // namespace

std::string_view method_name(Method m) {
    for (const auto &[method, name] : kMethodNames)
        if (method == m)
            return name;
    return "?";
}

std::optional<Method> parse_method(std::string_view name) {
    for (const auto &[method, n] : kMethodNames)
        if (n == name)
            return method;
    return std::nullopt;
}

void ExperimentConfig::validate() {
    if (rows < 1 || cols < 1)
        throw InputError("experiment needs positive dimensions");
    if (rank < 1 || rank > std::min(rows, cols))
        throw InputError("experiment rank outside [1, min(m, n)]");
    if (trials_per_count < 1)
        throw InputError("trials_per_count must be positive");
    if (!(success_threshold > 0.0))
        throw InputError("success threshold must be positive");
    if (jobs < 1)
        throw InputError("jobs must be at least 1");
    for (Index a : measurement_counts)
        if (a < 0 || a > rows * cols)
            throw InputError("measurement count " + std::to_string(a) + " outside [0, m n]");
    std::sort(measurement_counts.begin(), measurement_counts.end());
    measurement_counts.erase(std::unique(measurement_counts.begin(), measurement_counts.end()),
                             measurement_counts.end());
    std::vector<Method> seen;
    for (Method m : methods) {
        if (std::find(seen.begin(), seen.end(), m) != seen.end())
            throw InputError("method listed twice: " + std::string(method_name(m)));
        seen.push_back(m);
    }
    solver.validate();
}

const MethodTally *ExperimentResult::find(Index alpha, Method method) const {
    for (const auto &t : tallies)
        if (t.alpha == alpha && t.method == method)
            return &t;
    return nullptr;
}

TrialSeeds trial_seeds(std::uint64_t master, Index alpha, std::size_t trial) {
    const auto a = static_cast<std::uint64_t>(alpha);
    const auto t = static_cast<std::uint64_t>(trial);
    return {derive_seed(master, {a, t, 1}), derive_seed(master, {a, t, 2}), derive_seed(master, {a, t, 3})};
}

ExperimentResult run_experiment(ExperimentConfig config) {
    config.validate();
    const std::size_t n_alpha = config.measurement_counts.size();
    const std::size_t n_trials = config.trials_per_count;
    const std::size_t total = n_alpha * n_trials;

    std::vector<TrialWork> work(total);
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t idx = next++; idx < total; idx = next++)
            work[idx] = run_trial(config, config.measurement_counts[idx / n_trials], idx % n_trials);
    };
    const std::size_t jobs = std::min(config.jobs, std::max<std::size_t>(total, 1));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t j = 0; j < jobs; ++j)
            pool.emplace_back(worker);
    }

    ExperimentResult result;
    result.config = config;
    for (std::size_t a = 0; a < n_alpha; ++a) {
        for (std::size_t k = 0; k < config.methods.size(); ++k) {
            MethodTally tally;
            tally.alpha = config.measurement_counts[a];
            tally.method = config.methods[k];
            for (std::size_t t = 0; t < n_trials; ++t) {
                const auto &w = work[a * n_trials + t];
                tally.successes += static_cast<std::size_t>(w.outcome.success[k]);
                tally.seconds += w.seconds[k];
                ++tally.trials;
            }
            result.tallies.push_back(tally);
        }
    }
    result.trials.reserve(total);
    for (auto &w : work) {
        for (auto &f : w.failures)
            result.failures.push_back(std::move(f));
        result.trials.push_back(std::move(w.outcome));
    }
    return result;
}

namespace {

std::vector<Index> grid(Index first, Index last, Index step) {
    std::vector<Index> out;
    for (Index a = first; a <= last; a += step)
        out.push_back(a);
    return out;
}

} // namespace

// Each preset spans an even grid covering both reference lines, r(m+n-r) and m(n-1)+r.
std::optional<ExperimentConfig> preset(std::string_view name) {
    ExperimentConfig cfg;
    cfg.trials_per_count = 100;
    cfg.methods = {Method::min_degree, Method::connectivity, Method::closure, Method::nuclear, Method::rank_fit};
    if (name == "fig1a") {
        cfg.rows = 10, cfg.cols = 15, cfg.rank = 3;
        cfg.measurement_counts = grid(60, 150, 10); // reference lines at 66 and 143
    } else if (name == "fig1b") {
        cfg.rows = 40, cfg.cols = 50, cfg.rank = 3;
        cfg.measurement_counts = grid(200, 2000, 200); // reference lines at 261 and 1963
    } else if (name == "fig1c") {
        cfg.rows = 40, cfg.cols = 50, cfg.rank = 10;
        cfg.measurement_counts = grid(700, 2000, 130); // reference lines at 800 and 1970
    } else {
        return std::nullopt;
    }
    return cfg;
}

std::vector<std::string> preset_names() { return {"fig1a", "fig1b", "fig1c"}; }

std::string experiment_csv(const ExperimentResult &result) {
    std::string out = "# bound_i=" + std::to_string(result.bound_i()) +
                      ", full_id=" + std::to_string(result.full_identifiable()) + "\n";
    out += "alpha,method,successes,trials,rate,seconds\n";
    for (const auto &t : result.tallies) {
        out += std::to_string(t.alpha) + ',' + std::string(method_name(t.method)) + ',' +
               std::to_string(t.successes) + ',' + std::to_string(t.trials) + ',' + format_double(t.rate()) + ',' +
               format_double(t.seconds) + '\n';
    }
    return out;
}

void emit_csv(const ExperimentResult &result, const std::string &path) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open " + path + " for writing");
    f << experiment_csv(result);
    if (!f.flush())
        throw std::runtime_error("write to " + path + " failed");
}

std::vector<CsvRow> parse_experiment_csv(std::string_view text) {
    std::vector<CsvRow> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    bool header_seen = false;
    std::size_t ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        if (line.empty() || line.front() == '#')
            continue;
        if (!header_seen) {
            if (line != "alpha,method,successes,trials,rate,seconds")
                throw ParseError(ln, "unexpected experiment CSV header");
            header_seen = true;
            continue;
        }
        std::vector<std::string> f;
        std::istringstream fields(line);
        std::string cell;
        while (std::getline(fields, cell, ','))
            f.push_back(cell);
        if (f.size() != 6)
            throw ParseError(ln, "expected 6 fields");
        CsvRow row{};
        const auto num = [&](const std::string &s, auto &value) {
            const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
            if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
                throw ParseError(ln, "bad number '" + s + "'");
        };
        num(f[0], row.alpha);
        row.method = f[1];
        num(f[2], row.successes);
        num(f[3], row.trials);
        num(f[4], row.rate);
        num(f[5], row.seconds);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace rankclose
