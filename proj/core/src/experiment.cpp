#include "cmcx/experiment.hpp"

#include <charconv>
#include <set>
#include <sstream>
#include <system_error>
#include <utility>

#include <json.hpp>

#include "cmcx/control.hpp"
#include "cmcx/counts.hpp"
#include "cmcx/errors.hpp"
#include "cmcx/info.hpp"
#include "cmcx/io.hpp"
#include "cmcx/rng.hpp"

namespace cmcx {

namespace {

using nlohmann::json;

bool is_builtin(const std::string& name) {
    return name == "fig1" || name == "fig4" || name == "seq3";
}

std::uint64_t strategy_key(const Strategy& strategy) {
    return static_cast<std::uint64_t>(strategy.kind);
}

CountTensor replay_counts(const ExplorationLog& log, const Cmc& env) {
    CountTensor counts(env.n_controls(), env.n_states());
    for (const StepRecord& rec : log.records) {
        counts.add(rec.control, rec.state, rec.next_state);
    }
    return counts;
}

}  // namespace

std::string format_double(double value) {
    char buffer[64];
    const auto result =
        std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (result.ec != std::errc()) {
        throw Error("InternalError", "double formatting failed");
    }
    return std::string(buffer, result.ptr);
}

void validate(const ExperimentConfig& config) {
    if (config.env.empty()) {
        throw ConfigError("environment name or path must not be empty");
    }
    if (config.strategies.empty()) {
        throw ConfigError("at least one strategy is required");
    }
    std::set<std::string> names;
    for (const Strategy& s : config.strategies) {
        if (!names.insert(s.name()).second) {
            throw ConfigError("strategy \"" + s.name() +
                              "\" listed more than once");
        }
    }
    if (config.periods < 1) {
        throw ConfigError("periods must be >= 1, got " +
                          std::to_string(config.periods));
    }
    if (config.trials < 1) {
        throw ConfigError("trials must be >= 1, got " +
                          std::to_string(config.trials));
    }
    if (!(config.alpha > 0.0)) {
        throw ConfigError("alpha must be positive, got " +
                          std::to_string(config.alpha));
    }
    if (!(config.discount >= 0.0 && config.discount < 1.0)) {
        throw ConfigError("discount must lie in [0, 1), got " +
                          std::to_string(config.discount));
    }
    if (config.env == "fig1" && !(config.p >= 0.0 && config.p <= 1.0)) {
        throw ConfigError("fig1 parameter p must lie in [0, 1], got " +
                          std::to_string(config.p));
    }
    if (config.env == "fig4" && config.n_states < 2) {
        throw ConfigError("fig4 needs n_states >= 2, got " +
                          std::to_string(config.n_states));
    }
    if (config.mc_repeats < 0) {
        throw ConfigError("mc_repeats must be >= 1 (or 0 for automatic), got " +
                          std::to_string(config.mc_repeats));
    }
    if (config.nesting != 1 && config.nesting != 2) {
        throw ConfigError("nesting must be 1 or 2, got " +
                          std::to_string(config.nesting));
    }
    if (config.out_dir.empty()) {
        throw ConfigError("an output directory is required");
    }
}

Cmc resolve_environment(const ExperimentConfig& config) {
    if (config.env == "fig1") {
        return build_two_state(config.p);
    }
    if (config.env == "fig4") {
        return build_embedded(config.n_states);
    }
    if (config.env == "seq3") {
        return build_sequential3();
    }
    return load_cmc(read_text_file(config.env));
}

std::string describe_builtins() {
    std::ostringstream out;
    out << "builtin environments:\n"
        << "  fig1  two-state chain. Control 0 moves state 0 to the\n"
        << "        absorbing state 1 with probability 1-p and stays with\n"
        << "        probability p (parameter --p, range [0,1], default 0);\n"
        << "        control 1 holds every state in place.\n"
        << "  fig4  the fig1 (p=0) pair embedded as states 0 and 1 of a\n"
        << "        larger chain whose other states are all absorbing\n"
        << "        (parameter --n-states, >= 2, default 100). Carries\n"
        << "        stage costs g(0,0)=2, g(0,1)=1 for the discounted\n"
        << "        task; every other cost is 0.\n"
        << "  seq3  three-state chain in which only an ordered control\n"
        << "        sequence visits every state; a stand-in of our own\n"
        << "        design for sequential-discovery dynamics.\n"
        << "Any other --env value is read as a path to a chain document.\n";
    return out.str();
}

ExperimentArtifacts run_experiment(const ExperimentConfig& config) {
    validate(config);
    const Cmc env = resolve_environment(config);
    env.check_index(0, config.start);
    for (const int s : config.subset) {
        if (s < 0 || s >= env.n_states()) {
            throw ConfigError("subset state " + std::to_string(s) +
                              " is outside [0, " +
                              std::to_string(env.n_states()) + ")");
        }
    }

    const DirichletPrior prior(config.alpha);
    const int mc_repeats = config.mc_repeats > 0
                               ? config.mc_repeats
                               : (env.is_deterministic() ? 1 : 16);
    const DiscountedTask task = DiscountedTask::from_cmc(env, config.discount);

    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory " +
                      config.out_dir.string() + ": " + ec.message());
    }

    ExperimentArtifacts artifacts;

    // Resolved-configuration echo; keys sort alphabetically, so the file
    // is byte-stable.
    {
        json doc;
        doc["env"] = config.env;
        doc["p"] = config.p;
        doc["n_states"] = config.n_states;
        json strategies = json::array();
        for (const Strategy& s : config.strategies) {
            strategies.push_back(s.name());
        }
        doc["strategies"] = std::move(strategies);
        doc["periods"] = config.periods;
        doc["trials"] = config.trials;
        doc["alpha"] = config.alpha;
        doc["discount"] = config.discount;
        doc["seed"] = config.seed;
        doc["start"] = config.start;
        doc["subset"] = config.subset;
        doc["mc_repeats"] = mc_repeats;
        doc["nesting"] = config.nesting;
        artifacts.config_json = config.out_dir / "config.json";
        write_text_file(artifacts.config_json, doc.dump(2) + "\n");
    }

    const RngStream root(config.seed);
    std::string mi_mean = "strategy,period,mi_total,mi_subset\n";
    std::string mi_rows = "strategy,period,state,control,mi\n";
    std::string policy_trace = "strategy,period,state,control\n";
    std::string task_table = "strategy,policy_state1,true_cost_state1\n";
    json task_json;
    task_json["alpha"] = config.alpha;
    task_json["discount"] = config.discount;
    task_json["seed"] = config.seed;
    json task_json_strategies;

    for (Strategy strategy : config.strategies) {
        strategy.rollout.mc_repeats = mc_repeats;
        strategy.rollout.nesting_depth = config.nesting;
        const std::string name = strategy.name();

        // A deterministic policy on a deterministic chain gives the same
        // trajectory every trial; running it once keeps the bundle small
        // without changing any average.
        const bool single_trial = env.is_deterministic() &&
                                  strategy.kind != Strategy::Kind::random;
        const int n_trials = single_trial ? 1 : config.trials;

        const RngStream strategy_root = root.child(strategy_key(strategy));
        std::vector<ExplorationLog> logs;
        logs.reserve(static_cast<std::size_t>(n_trials));
        for (int trial = 0; trial < n_trials; ++trial) {
            const std::uint64_t run_seed =
                strategy_root.child(static_cast<std::uint64_t>(trial)).seed();
            logs.push_back(explore(strategy, env, config.start, config.periods,
                                   prior, run_seed, config.subset));
        }

        std::string trials_csv =
            "trial,period,state,control,next_state,pig,mi_total,mi_subset\n";
        for (int trial = 0; trial < n_trials; ++trial) {
            for (const StepRecord& rec : logs[static_cast<std::size_t>(trial)]
                                             .records) {
                trials_csv += std::to_string(trial) + "," +
                              std::to_string(rec.period) + "," +
                              std::to_string(rec.state) + "," +
                              std::to_string(rec.control) + "," +
                              std::to_string(rec.next_state) + "," +
                              format_double(rec.pig_collected) + "," +
                              format_double(rec.mi_total) + "," +
                              format_double(rec.mi_subset) + "\n";
            }
        }
        const std::filesystem::path trials_path =
            config.out_dir / ("trials_" + name + ".csv");
        write_text_file(trials_path, trials_csv);
        artifacts.trials_csv[name] = trials_path;

        for (int k = 0; k < config.periods; ++k) {
            double sum_total = 0.0;
            double sum_subset = 0.0;
            for (const ExplorationLog& log : logs) {
                sum_total += log.records[static_cast<std::size_t>(k)].mi_total;
                sum_subset += log.records[static_cast<std::size_t>(k)].mi_subset;
            }
            mi_mean += name + "," + std::to_string(k) + "," +
                       format_double(sum_total / n_trials) + "," +
                       format_double(sum_subset / n_trials) + "\n";
        }

        // Per-row curves, replayed from trial 0 so the measurement points
        // match the logged mi columns (before each period's transition).
        {
            CountTensor counts(env.n_controls(), env.n_states());
            const std::set<int> keep(config.subset.begin(),
                                     config.subset.end());
            for (const StepRecord& rec : logs.front().records) {
                for (const RowInformation& row :
                     per_row_missing_information(env, counts, prior)) {
                    if (!keep.empty() && !keep.contains(row.state)) {
                        continue;
                    }
                    mi_rows += name + "," + std::to_string(rec.period) + "," +
                               std::to_string(row.state) + "," +
                               std::to_string(row.control) + "," +
                               format_double(row.nats) + "\n";
                }
                counts.add(rec.control, rec.state, rec.next_state);
            }
        }

        for (const StepRecord& rec : logs.front().records) {
            policy_trace += name + "," + std::to_string(rec.period) + "," +
                            std::to_string(rec.state) + "," +
                            std::to_string(rec.control) + "\n";
        }

        const CountTensor learned = replay_counts(logs.front(), env);
        const auto [policy, true_value] =
            evaluate_learned_model(env, learned, prior, task);
        task_table += name + "," + std::to_string(policy.choice.front()) + "," +
                      format_double(true_value.values.front()) + "\n";
        json strategy_json;
        strategy_json["policy"] = policy.choice;
        strategy_json["true_value"] = true_value.values;
        task_json_strategies[name] = std::move(strategy_json);
    }

    artifacts.mi_mean_csv = config.out_dir / "mi_mean.csv";
    write_text_file(artifacts.mi_mean_csv, mi_mean);
    artifacts.mi_rows_csv = config.out_dir / "mi_rows.csv";
    write_text_file(artifacts.mi_rows_csv, mi_rows);
    artifacts.policy_trace_csv = config.out_dir / "policy_trace.csv";
    write_text_file(artifacts.policy_trace_csv, policy_trace);
    artifacts.task_eval_csv = config.out_dir / "task_eval.csv";
    write_text_file(artifacts.task_eval_csv, task_table);
    task_json["strategies"] = std::move(task_json_strategies);
    artifacts.task_eval_json = config.out_dir / "task_eval.json";
    write_text_file(artifacts.task_eval_json, task_json.dump(2) + "\n");

    return artifacts;
}

}  // namespace cmcx
