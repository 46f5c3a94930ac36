#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cmcx/cmc.hpp"
#include "cmcx/control.hpp"
#include "cmcx/counts.hpp"
#include "cmcx/errors.hpp"
#include "cmcx/experiment.hpp"
#include "cmcx/explore.hpp"
#include "cmcx/io.hpp"

namespace {

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    std::istringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (!item.empty()) {
            parts.push_back(item);
        }
    }
    return parts;
}

std::vector<cmcx::Strategy> parse_strategies(const std::string& list) {
    std::vector<cmcx::Strategy> strategies;
    for (const std::string& token : split_list(list)) {
        strategies.push_back(cmcx::Strategy::parse(token));
    }
    if (strategies.empty()) {
        throw cmcx::ConfigError("--strategies must name at least one strategy");
    }
    return strategies;
}

std::vector<int> parse_subset(const std::string& list) {
    std::vector<int> subset;
    for (const std::string& token : split_list(list)) {
        try {
            std::size_t used = 0;
            const int value = std::stoi(token, &used);
            if (used != token.size()) {
                throw std::invalid_argument(token);
            }
            subset.push_back(value);
        } catch (const std::exception&) {
            throw cmcx::ConfigError("--subset entries must be integers, got \"" +
                                    token + "\"");
        }
    }
    return subset;
}

void emit_error_line(const std::string& code, const std::string& message) {
    nlohmann::json line;
    line["error"] = code;
    line["message"] = message;
    std::cerr << line.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exploration and control of unknown controllable Markov "
                 "chains"};
    app.require_subcommand(1);

    // Shared experiment knobs; each subcommand binds the ones it uses.
    std::string env = "fig1";
    double p = 0.0;
    int n_states = 100;
    std::string strategies = "random,pig-greedy,jpig-greedy,pig-rollout";
    int periods = 20;
    double alpha = 0.05;
    int trials = 200;
    std::uint64_t seed = 7;
    int mc_repeats = 0;
    int nesting = 1;
    std::string subset;
    int start = 0;
    double discount = 0.99;
    std::string out_dir;
    std::string counts_path;

    const auto add_env_options = [&](CLI::App* sub) {
        sub->add_option("--env", env,
                        "builtin name (fig1, fig4, seq3) or chain-document "
                        "path")
            ->required();
        sub->add_option("--p", p, "fig1 escape parameter, in [0,1]");
        sub->add_option("--n-states", n_states, "fig4 state count, >= 2");
    };

    CLI::App* explore_cmd = app.add_subcommand(
        "explore", "run exploration strategies and write the artifact bundle");
    add_env_options(explore_cmd);
    explore_cmd->add_option("--strategies", strategies,
                            "comma-separated strategy list");
    explore_cmd->add_option("--periods", periods, "exploration horizon N");
    explore_cmd->add_option("--alpha", alpha, "Dirichlet prior pseudo-count");
    explore_cmd->add_option("--trials", trials,
                            "trials for randomized strategies");
    explore_cmd->add_option("--seed", seed, "root seed");
    explore_cmd->add_option("--mc-repeats", mc_repeats,
                            "rollout Monte Carlo repeats (0 = automatic)");
    explore_cmd->add_option("--nesting", nesting, "rollout nesting depth (1 or 2)");
    explore_cmd->add_option("--subset", subset,
                            "comma-separated states for the restricted "
                            "missing-information column");
    explore_cmd->add_option("--start", start, "start state");
    explore_cmd->add_option("--discount", discount,
                            "discount for the downstream task evaluation");
    explore_cmd->add_option("--out", out_dir, "output directory")->required();
    explore_cmd->callback([&]() {
        cmcx::ExperimentConfig config;
        config.env = env;
        config.p = p;
        config.n_states = n_states;
        config.strategies = parse_strategies(strategies);
        config.periods = periods;
        config.trials = trials;
        config.alpha = alpha;
        config.discount = discount;
        config.seed = seed;
        config.start = start;
        config.subset = parse_subset(subset);
        config.out_dir = out_dir;
        config.mc_repeats = mc_repeats;
        config.nesting = nesting;
        const cmcx::ExperimentArtifacts artifacts =
            cmcx::run_experiment(config);
        std::cout << "wrote " << (6 + artifacts.trials_csv.size())
                  << " files under " << config.out_dir.string() << "\n";
    });

    CLI::App* task_cmd = app.add_subcommand(
        "task",
        "solve the discounted task on a learned model and price the policy "
        "under the true chain");
    add_env_options(task_cmd);
    task_cmd->add_option("--counts", counts_path, "count-document path")
        ->required();
    task_cmd->add_option("--discount", discount, "discount factor, in [0,1)")
        ->required();
    task_cmd->add_option("--alpha", alpha, "Dirichlet prior pseudo-count");
    task_cmd->callback([&]() {
        cmcx::ExperimentConfig env_config;
        env_config.env = env;
        env_config.p = p;
        env_config.n_states = n_states;
        const cmcx::Cmc truth = cmcx::resolve_environment(env_config);
        const cmcx::CountTensor counts =
            cmcx::load_counts(cmcx::read_text_file(counts_path));
        const cmcx::DirichletPrior prior(alpha);
        const cmcx::DiscountedTask task =
            cmcx::DiscountedTask::from_cmc(truth, discount);
        const auto [policy, value] =
            cmcx::evaluate_learned_model(truth, counts, prior, task);
        nlohmann::json out;
        out["policy"] = policy.choice;
        out["true_value"] = value.values;
        out["policy_state1"] = policy.choice.front();
        out["true_cost_state1"] = value.values.front();
        std::cout << out.dump(2) << "\n";
    });

    CLI::App* dp_cmd = app.add_subcommand(
        "dp-oracle",
        "exact finite-horizon optimum of cumulative predicted information "
        "gain (small instances only)");
    add_env_options(dp_cmd);
    dp_cmd->add_option("--periods", periods, "horizon N")->required();
    dp_cmd->add_option("--alpha", alpha, "Dirichlet prior pseudo-count");
    dp_cmd->add_option("--start", start, "start state");
    dp_cmd->callback([&]() {
        cmcx::ExperimentConfig env_config;
        env_config.env = env;
        env_config.p = p;
        env_config.n_states = n_states;
        const cmcx::Cmc chain = cmcx::resolve_environment(env_config);
        const cmcx::CountTensor zero(chain.n_controls(), chain.n_states());
        const cmcx::DirichletPrior prior(alpha);
        const auto [value, best] =
            cmcx::exact_dp(start, zero, 0, periods, chain, prior);
        nlohmann::json out;
        out["value"] = value;
        out["best_control"] = best;
        std::cout << out.dump(2) << "\n";
    });

    CLI::App* table_cmd = app.add_subcommand(
        "table1",
        "one-shot reproduction: 100-state embedded chain, all strategies, "
        "downstream-task comparison");
    table_cmd->add_option("--out", out_dir, "output directory")->required();
    table_cmd->add_option("--seed", seed, "root seed");
    table_cmd->add_option("--trials", trials,
                          "trials for the random strategy");
    table_cmd->callback([&]() {
        cmcx::ExperimentConfig config;
        config.env = "fig4";
        config.n_states = 100;
        config.strategies = parse_strategies(
            "random,pig-greedy,jpig-greedy,pig-rollout");
        config.periods = 20;
        config.trials = trials;
        config.alpha = 0.05;
        config.discount = 0.99;
        config.seed = seed;
        config.start = 0;
        config.subset = {0, 1};
        config.out_dir = out_dir;
        const cmcx::ExperimentArtifacts artifacts =
            cmcx::run_experiment(config);
        std::cout << cmcx::read_text_file(artifacts.task_eval_csv);
    });

    CLI::App* list_cmd =
        app.add_subcommand("list-envs", "describe the builtin environments");
    list_cmd->callback([]() { std::cout << cmcx::describe_builtins(); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // help/version request
        }
        emit_error_line("UsageError", e.what());
        return e.get_exit_code();
    } catch (const cmcx::Error& e) {
        emit_error_line(e.code(), e.what());
        return 1;
    } catch (const std::exception& e) {
        emit_error_line("InternalError", e.what());
        return 1;
    }
    return 0;
}
