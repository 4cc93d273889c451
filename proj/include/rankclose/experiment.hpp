#pragma once

// Monte-Carlo success-rate sweeps: for every measurement count alpha and trial,
// draw a uniform random mask with alpha entries and a Gaussian rank-r matrix,
// then evaluate each method on the same pair.

#include "rankclose/baselines.hpp"
#include "rankclose/closure.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rankclose {

enum class Method { connectivity, min_degree, closure, jacobian, nuclear, rank_fit };

std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view name);

struct ExperimentConfig {
    Index rows = 10;
    Index cols = 15;
    Index rank = 3;
    std::vector<Index> measurement_counts;
    std::size_t trials_per_count = 100;
    std::vector<Method> methods;
    std::uint64_t seed = 0;
    double success_threshold = kDefaultSuccessThreshold;
    SolverConfig solver;
    /// Closure falls back to exhaustive search after a failed heuristic run while m + n <= this.
    Index exhaustive_fallback_limit = 30;
    std::size_t jobs = 1;
    /// When false the timing column is written as 0 so reruns are byte-identical.
    bool record_timing = true;

    /// Throws InputError on inconsistent settings; sorts measurement_counts.
    void validate();

    Index bound_i() const { return rank * (rows + cols - rank); }
    Index full_identifiable() const { return rows * (cols - 1) + rank; }
};

/// Per-trial outcome, one flag per configured method (same order as config.methods).
struct TrialOutcome {
    Index alpha = 0;
    std::size_t trial = 0;
    std::vector<char> success;
    bool closure_fallback = false; // exhaustive fallback was needed
    bool closure_closable = false; // closure reached the full mask
    std::string error;             // non-empty when a method threw
};

struct MethodTally {
    Index alpha = 0;
    Method method = Method::closure;
    std::size_t successes = 0;
    std::size_t trials = 0;
    double seconds = 0.0;

    double rate() const { return trials == 0 ? 0.0 : double(successes) / double(trials); }
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<MethodTally> tallies;  // alpha-major, then config.methods order
    std::vector<TrialOutcome> trials;  // alpha-major, then trial index
    std::vector<std::string> failures; // "alpha=.. trial=..: message"

    Index bound_i() const { return config.bound_i(); }
    Index full_identifiable() const { return config.full_identifiable(); }
    const MethodTally *find(Index alpha, Method method) const;
};

/// Seeds of one trial: mask, matrix and solver streams derived from (seed, alpha, trial).
struct TrialSeeds {
    std::uint64_t mask;
    std::uint64_t matrix;
    std::uint64_t solver;
};
TrialSeeds trial_seeds(std::uint64_t master, Index alpha, std::size_t trial);

/// Deterministic for a fixed config whatever `jobs` is.
ExperimentResult run_experiment(ExperimentConfig config);

/// Named presets: "fig1a" (10x15, r=3), "fig1b" (40x50, r=3), "fig1c" (40x50, r=10).
std::optional<ExperimentConfig> preset(std::string_view name);
std::vector<std::string> preset_names();

/// Header "alpha,method,successes,trials,rate,seconds" after a comment line
/// "# bound_i=.., full_id=..".
std::string experiment_csv(const ExperimentResult &result);
void emit_csv(const ExperimentResult &result, const std::string &path);

struct CsvRow {
    Index alpha;
    std::string method;
    std::size_t successes;
    std::size_t trials;
    double rate;
    double seconds;
};
std::vector<CsvRow> parse_experiment_csv(std::string_view text);

} // namespace rankclose
