#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "cmcx/cmc.hpp"
#include "cmcx/explore.hpp"

namespace cmcx {

/**
 * One reproducible experiment: an environment, a set of strategies, and
 * the downstream task parameters. Every output file is a deterministic
 * function of this struct, seed included.
 *
 * `env` is either a builtin name ("fig1", "fig4", "seq3" — see
 * describe_builtins()) or a path to a chain document. `p` parameterizes
 * fig1, `n_states` parameterizes fig4; both are ignored otherwise.
 */
struct ExperimentConfig {
    std::string env = "fig1";
    double p = 0.0;
    int n_states = 100;
    std::vector<Strategy> strategies;
    int periods = 20;
    int trials = 200;
    double alpha = 0.05;
    double discount = 0.99;
    std::uint64_t seed = 7;
    int start = 0;
    std::vector<int> subset;
    std::filesystem::path out_dir;
    int mc_repeats = 0;  // 0 = auto: 1 on deterministic chains, else 16
    int nesting = 1;
};

/// Paths of everything run_experiment wrote.
struct ExperimentArtifacts {
    std::filesystem::path config_json;
    std::map<std::string, std::filesystem::path> trials_csv;  // by strategy
    std::filesystem::path mi_mean_csv;
    std::filesystem::path mi_rows_csv;
    std::filesystem::path policy_trace_csv;
    std::filesystem::path task_eval_csv;
    std::filesystem::path task_eval_json;
};

/// Throws ConfigError on invalid fields (empty strategy list, trials < 1,
/// periods < 1, bad subset indices, missing out_dir, ...).
void validate(const ExperimentConfig& config);

/// Builds the configured environment (builtin or loaded from file).
Cmc resolve_environment(const ExperimentConfig& config);

/// Human-readable catalogue of the builtin environments and their
/// parameters.
std::string describe_builtins();

/**
 * Runs every configured strategy and writes the artifact bundle into
 * `out_dir`:
 *
 *   config.json            resolved configuration echo
 *   trials_<strategy>.csv  per-period log, all trials
 *   mi_mean.csv            trial-averaged missing-information curves
 *   mi_rows.csv            per-(state, control) missing information,
 *                          trial 0 (restricted to the subset when given)
 *   policy_trace.csv       (state, control) sequence of trial 0
 *   task_eval.csv          learned-model policy and its cost under the
 *                          true chain, per strategy
 *   task_eval.json         full policies and value vectors
 *
 * Deterministic strategies on deterministic chains run a single trial
 * regardless of `trials`; the random strategy always runs all of them.
 */
ExperimentArtifacts run_experiment(const ExperimentConfig& config);

/// Shortest decimal text that parses back to exactly the same double;
/// used for all CSV number columns so reruns are byte-identical.
std::string format_double(double value);

}  // namespace cmcx
