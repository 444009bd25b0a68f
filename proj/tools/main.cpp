// Command-line front end: infer | score | simulate | evaluate | benchmark |
// enumerate. Exit codes: 0 ok, 2 usage/config, 3 data, 4 internal.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bnsl/data_io.hpp"
#include "bnsl/errors.hpp"
#include "bnsl/search_ga.hpp"
#include "bnsl/search_local.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace bnsl;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitInternal = 4;

// Knobs shared by infer and benchmark; unset optionals fall back to the
// documented per-method defaults.
struct MethodOptions {
    std::string method = "hc";
    std::string score = "bic";
    std::uint64_t seed = 0;
    int max_parents = kDefaultMaxParents;
    std::string init = "default";
    std::optional<double> init_edge_prob;
    // hill climbing
    int restarts = 10;
    int hc_max_iterations = 100000;
    // tabu search
    int tenure = 10;
    std::optional<int> no_improve_window;
    std::optional<int> tabu_max_iterations;
    // genetic algorithm
    int population = 100;
    int generations = 100;
    int tournament = 3;
    double crossover_rate = 0.9;
    std::optional<double> mutation_prob;
    int elitism = 2;
    std::string conflict_policy = "paper";
};

void add_method_options(CLI::App* cmd, MethodOptions& opt, bool with_method) {
    if (with_method)
        cmd->add_option("--method", opt.method, "Search heuristic: hc, tabu or ga")
            ->check(CLI::IsMember({"hc", "tabu", "ga"}));
    cmd->add_option("--score", opt.score, "Score: loglik, aic or bic")
        ->check(CLI::IsMember({"loglik", "aic", "bic"}));
    cmd->add_option("--seed", opt.seed, "Random seed");
    cmd->add_option("--max-parents", opt.max_parents, "Parent-set size cap")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--init", opt.init, "Initial graph: default, empty or random")
        ->check(CLI::IsMember({"default", "empty", "random"}));
    cmd->add_option("--init-edge-prob", opt.init_edge_prob,
                    "Edge probability for random initial graphs (default 2/n)");
    cmd->add_option("--restarts", opt.restarts, "Hill-climbing restarts");
    cmd->add_option("--max-iterations", opt.hc_max_iterations, "Hill-climbing iteration cap");
    cmd->add_option("--tenure", opt.tenure, "Tabu tenure");
    cmd->add_option("--no-improve-window", opt.no_improve_window,
                    "Tabu stop after this many iterations without improvement (default 3n)");
    cmd->add_option("--tabu-max-iterations", opt.tabu_max_iterations,
                    "Tabu iteration cap (default 10n^2)");
    cmd->add_option("--population", opt.population, "GA population size");
    cmd->add_option("--generations", opt.generations, "GA generations");
    cmd->add_option("--tournament", opt.tournament, "GA tournament size");
    cmd->add_option("--crossover-rate", opt.crossover_rate, "GA crossover probability");
    cmd->add_option("--mutation-prob", opt.mutation_prob,
                    "GA per-locus mutation probability (default 1/n^2)");
    cmd->add_option("--elitism", opt.elitism, "GA elite count");
    cmd->add_option("--conflict-policy", opt.conflict_policy,
                    "GA crossover conflict rule: paper or swapped")
        ->check(CLI::IsMember({"paper", "swapped"}));
}

InitConfig make_init(const MethodOptions& opt) {
    InitConfig init;
    if (opt.init == "empty")
        init.policy = InitPolicy::Empty;
    else if (opt.init == "random")
        init.policy = InitPolicy::Random;
    init.edge_prob = opt.init_edge_prob;
    return init;
}

HcConfig make_hc(const MethodOptions& opt, std::uint64_t seed) {
    HcConfig config;
    config.max_iterations = opt.hc_max_iterations;
    config.restarts = opt.restarts;
    config.init = make_init(opt);
    config.seed = seed;
    return config;
}

TabuConfig make_tabu(const MethodOptions& opt, std::uint64_t seed) {
    TabuConfig config;
    config.tenure = opt.tenure;
    config.no_improve_window = opt.no_improve_window;
    config.max_iterations = opt.tabu_max_iterations;
    config.init = make_init(opt);
    config.seed = seed;
    return config;
}

GaConfig make_ga(const MethodOptions& opt, std::uint64_t seed) {
    GaConfig config;
    config.population_size = opt.population;
    config.generations = opt.generations;
    config.tournament_size = opt.tournament;
    config.crossover_rate = opt.crossover_rate;
    config.mutation_prob = opt.mutation_prob;
    config.elitism_count = opt.elitism;
    config.conflict_policy = conflict_policy_from_string(opt.conflict_policy);
    config.seed = seed;
    return config;
}

SearchResult run_search(const Dataset& data, const MethodOptions& opt, std::uint64_t seed) {
    const ScoreKind kind = score_kind_from_string(opt.score);
    if (opt.method == "hc") return hill_climb(data, kind, make_hc(opt, seed), opt.max_parents);
    if (opt.method == "tabu")
        return tabu_search(data, kind, make_tabu(opt, seed), opt.max_parents);
    if (opt.method == "ga") return evolve(data, kind, make_ga(opt, seed), opt.max_parents);
    throw ConfigError("unknown method '" + opt.method + "'");
}

// Ensemble of networks for descendant confidences: hill climbing contributes
// its per-restart finals, tabu runs `runs` independently seeded searches, the
// GA contributes its final population.
std::vector<Dag> run_ensemble(const Dataset& data, const MethodOptions& opt, std::uint64_t seed,
                              int runs) {
    if (opt.method == "tabu") {
        const ScoreKind kind = score_kind_from_string(opt.score);
        std::vector<Dag> networks;
        for (int r = 0; r < runs; ++r) {
            TabuConfig config = make_tabu(opt, derive_seed(seed, static_cast<std::uint64_t>(r)));
            if (opt.init == "default")
                config.init.policy = r == 0 ? InitPolicy::Empty : InitPolicy::Random;
            networks.push_back(tabu_search(data, kind, config, opt.max_parents).best);
        }
        return networks;
    }
    MethodOptions run_opt = opt;
    if (opt.method == "hc") run_opt.restarts = runs;
    return run_search(data, run_opt, seed).ensemble;
}

json method_config_json(const MethodOptions& opt, const Dataset& data) {
    json j;
    if (opt.method == "hc") {
        j["restarts"] = opt.restarts;
        j["max_iterations"] = opt.hc_max_iterations;
        j["init"] = opt.init;
    } else if (opt.method == "tabu") {
        j["tenure"] = opt.tenure;
        j["no_improve_window"] =
            opt.no_improve_window.value_or(3 * data.n_vars());
        j["max_iterations"] =
            opt.tabu_max_iterations.value_or(10 * data.n_vars() * data.n_vars());
        j["init"] = opt.init;
    } else {
        j["population"] = opt.population;
        j["generations"] = opt.generations;
        j["tournament"] = opt.tournament;
        j["crossover_rate"] = opt.crossover_rate;
        j["mutation_prob"] = opt.mutation_prob.value_or(
            1.0 / (static_cast<double>(data.n_vars()) * static_cast<double>(data.n_vars())));
        j["elitism"] = opt.elitism;
        j["conflict_policy"] = opt.conflict_policy;
    }
    if (opt.init_edge_prob) j["init_edge_prob"] = *opt.init_edge_prob;
    return j;
}

void write_trace_csv(const SearchTrace& trace, const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
    out << "restart,iteration,move,from,to,score\n";
    for (const TraceRecord& r : trace.records) {
        out << r.restart << ',' << r.iteration << ',';
        if (r.move)
            out << to_string(r.move->kind) << ',' << r.move->from << ',' << r.move->to;
        else
            out << ",,";
        out << ',' << format_double(r.score) << '\n';
    }
    if (!out.flush()) throw DataError("write to '" + path.string() + "' failed");
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out.flush()) throw DataError("write to '" + path.string() + "' failed");
}

std::string context_id_for(const fs::path& dataset_path) {
    return dataset_path.stem().string();
}

int cmd_infer(const fs::path& dataset_path, const MethodOptions& opt, const fs::path& out_dir) {
    const auto started = std::chrono::steady_clock::now();
    const Dataset data = load_dataset(dataset_path);
    const SearchResult result = run_search(data, opt, opt.seed);
    fs::create_directories(out_dir);

    const fs::path edges_path = out_dir / "network_edges.txt";
    const fs::path adjacency_path = out_dir / "network_adjacency.csv";
    const fs::path trace_path = out_dir / "trace.csv";
    const fs::path manifest_path = out_dir / "manifest.json";
    save_network(result.best, edges_path);
    save_adjacency(result.best, adjacency_path);
    write_trace_csv(result.trace, trace_path);

    const double wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    json manifest;
    manifest["command"] = "infer";
    manifest["dataset"] = dataset_path.string();
    manifest["method"] = opt.method;
    manifest["score"] = opt.score;
    manifest["seed"] = opt.seed;
    manifest["max_parents"] = opt.max_parents;
    manifest["method_config"] = method_config_json(opt, data);
    manifest["score_achieved"] = result.best_score;
    manifest["evaluations"] = result.trace.evaluations;
    manifest["outputs"] = {
        {"edges", edges_path.string()},
        {"adjacency", adjacency_path.string()},
        {"trace", trace_path.string()},
    };
    manifest["wall_time_seconds"] = wall_seconds;
    write_text(manifest_path, manifest.dump(2) + "\n");

    std::cout << "score " << to_string(score_kind_from_string(opt.score)) << " "
              << format_double(result.best_score) << "\n"
              << "edges " << result.best.edge_count() << "\n"
              << "wrote " << out_dir.string() << "\n";
    return kExitOk;
}

int cmd_score(const fs::path& dataset_path, const fs::path& network_path,
              const std::string& score) {
    const Dataset data = load_dataset(dataset_path);
    const Dag network = load_network(network_path, data.labels());
    const Scorer scorer(data, score_kind_from_string(score),
                        std::numeric_limits<int>::max());
    std::printf("%.6f\n", scorer.network_score(network));
    return kExitOk;
}

int cmd_simulate(std::uint64_t seed, const fs::path& out_dir) {
    const InsilicoFixture fixture = generate_insilico_like(seed);
    fs::create_directories(out_dir);
    save_dataset(fixture.data, out_dir / "dataset.csv");
    save_network(fixture.truth.dag, out_dir / "truth_edges.txt");
    save_ground_truth_params(fixture.truth, out_dir / "truth_params.csv");
    save_gold(fixture.gold, out_dir / "gold.txt");
    save_row_meta(fixture.meta, out_dir / "metadata.csv");
    std::cout << "wrote " << fixture.data.n_obs() << "x" << fixture.data.n_vars()
              << " dataset to " << out_dir.string() << "\n";
    return kExitOk;
}

int cmd_evaluate(const std::vector<fs::path>& network_paths, const fs::path& gold_path,
                 const std::string& context, const std::string& method,
                 const std::optional<fs::path>& out_csv) {
    const GoldStandard gold = load_gold(gold_path);
    std::vector<std::string> labels;
    labels.push_back(gold.intervention_label());
    for (const auto& [label, positive] : gold.labels()) labels.push_back(label);

    std::vector<Dag> networks;
    for (const fs::path& path : network_paths) networks.push_back(load_network(path, labels));

    const ContextResult result = evaluate_context(networks, gold, context, method);
    std::printf("%.6f\n", result.auroc);
    if (out_csv) {
        std::string csv = "context,method,auroc\n";
        csv += result.context + "," + result.method + "," + format_double(result.auroc) + "\n";
        write_text(*out_csv, csv);
    }
    return kExitOk;
}

int cmd_enumerate(const fs::path& dataset_path, const std::string& score,
                  const fs::path& out_dir) {
    const Dataset data = load_dataset(dataset_path);
    const ExhaustiveResult result = exhaustive_best(data, score_kind_from_string(score));
    fs::create_directories(out_dir);
    save_network(result.best, out_dir / "optimal_edges.txt");
    std::printf("%.6f\n", result.best_score);
    std::cout << "dags " << result.dags_visited << "\n";
    return kExitOk;
}

int cmd_benchmark(const std::vector<fs::path>& dataset_paths,
                  const std::vector<fs::path>& gold_paths, MethodOptions opt, int ensemble_runs,
                  const fs::path& out_dir) {
    if (dataset_paths.size() != gold_paths.size())
        throw ConfigError("benchmark needs matching --data/--gold pairs, got " +
                          std::to_string(dataset_paths.size()) + " datasets and " +
                          std::to_string(gold_paths.size()) + " gold files");
    if (dataset_paths.empty()) throw ConfigError("benchmark needs at least one --data/--gold pair");

    const std::vector<std::string> methods{"hc", "tabu", "ga"};
    const std::vector<std::string> scores{"loglik", "aic", "bic"};

    std::vector<ContextResult> results;
    std::vector<std::string> context_ids;
    int failures = 0;
    for (std::size_t c = 0; c < dataset_paths.size(); ++c) {
        const std::string context = context_id_for(dataset_paths[c]);
        if (std::find(context_ids.begin(), context_ids.end(), context) != context_ids.end())
            throw ConfigError("duplicate context id '" + context + "'");
        context_ids.push_back(context);
        try {
            const Dataset data = load_dataset(dataset_paths[c]);
            const GoldStandard gold = load_gold(gold_paths[c]);
            const std::uint64_t context_seed = derive_seed(opt.seed, c);
            std::size_t combo = 0;
            for (const std::string& method : methods)
                for (const std::string& score : scores) {
                    MethodOptions cell = opt;
                    cell.method = method;
                    cell.score = score;
                    const std::vector<Dag> networks =
                        run_ensemble(data, cell, derive_seed(context_seed, combo), ensemble_runs);
                    results.push_back(
                        evaluate_context(networks, gold, context, method + "+" + score));
                    ++combo;
                }
        } catch (const std::exception& e) {
            ++failures;
            context_ids.pop_back();
            std::erase_if(results, [&](const ContextResult& r) { return r.context == context; });
            std::cerr << "context '" << context << "' failed: " << e.what() << "\n";
        }
    }

    fs::create_directories(out_dir);
    std::string results_csv = "context,method,auroc\n";
    for (const ContextResult& r : results)
        results_csv += r.context + "," + r.method + "," + format_double(r.auroc) + "\n";
    write_text(out_dir / "results.csv", results_csv);

    if (!results.empty()) {
        const std::map<std::string, double> ranks = mean_rank(results);
        std::string rank_csv = "method,mean_rank\n";
        for (const auto& [method, rank] : ranks)
            rank_csv += method + "," + format_double(rank) + "\n";
        write_text(out_dir / "mean_rank.csv", rank_csv);

        // plain-text grid, methods down, contexts across
        std::string heatmap = "method";
        for (const std::string& context : context_ids) heatmap += "\t" + context;
        heatmap += "\n";
        for (const std::string& method : methods)
            for (const std::string& score : scores) {
                const std::string id = method + "+" + score;
                heatmap += id;
                for (const std::string& context : context_ids) {
                    const auto it = std::find_if(
                        results.begin(), results.end(), [&](const ContextResult& r) {
                            return r.context == context && r.method == id;
                        });
                    char cell[32];
                    std::snprintf(cell, sizeof(cell), "%.4f", it->auroc);
                    heatmap += std::string("\t") + cell;
                }
                heatmap += "\n";
            }
        write_text(out_dir / "heatmap.txt", heatmap);
    }

    if (failures > 0) {
        std::cerr << failures << " context(s) failed\n";
        return kExitData;
    }
    std::cout << "wrote " << (out_dir / "results.csv").string() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Score-based Bayesian network structure learning"};
    app.require_subcommand(1);
    // key=value config file with one [subcommand] section per command;
    // command-line flags override file values, unknown keys are errors
    app.set_config("--config", "", "Read options from an INI/TOML file");
    app.allow_config_extras(CLI::config_extras_mode::error);

    // infer
    auto* infer = app.add_subcommand("infer", "Learn a network from a dataset");
    std::string infer_dataset;
    MethodOptions infer_opt;
    std::string infer_out = "bnsl_out";
    infer->add_option("dataset", infer_dataset, "Dataset CSV")->required();
    add_method_options(infer, infer_opt, true);
    infer->add_option("--out-dir", infer_out, "Output directory");

    // score
    auto* score = app.add_subcommand("score", "Score an existing network");
    std::string score_dataset;
    std::string score_network;
    std::string score_kind = "bic";
    score->add_option("dataset", score_dataset, "Dataset CSV")->required();
    score->add_option("--network", score_network, "Edge-list file")->required();
    score->add_option("--score", score_kind, "Score: loglik, aic or bic")
        ->check(CLI::IsMember({"loglik", "aic", "bic"}));

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Generate a synthetic benchmark fixture");
    std::uint64_t simulate_seed = 0;
    std::string simulate_out = "bnsl_sim";
    simulate->add_option("--seed", simulate_seed, "Random seed");
    simulate->add_option("--out-dir", simulate_out, "Output directory");

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "AUROC of descendant predictions");
    std::vector<std::string> evaluate_networks;
    std::string evaluate_gold;
    std::string evaluate_context_id = "context";
    std::string evaluate_method_id = "method";
    std::string evaluate_out;
    evaluate->add_option("networks", evaluate_networks, "Edge-list files (ensemble)")
        ->required();
    evaluate->add_option("--gold", evaluate_gold, "Gold-standard file")->required();
    evaluate->add_option("--context", evaluate_context_id, "Context id for the CSV");
    evaluate->add_option("--method", evaluate_method_id, "Method id for the CSV");
    evaluate->add_option("--out", evaluate_out, "Write a context,method,auroc CSV here");

    // benchmark
    auto* benchmark = app.add_subcommand("benchmark", "Run the 3x3 heuristic/score grid");
    std::vector<std::string> benchmark_data;
    std::vector<std::string> benchmark_gold;
    MethodOptions benchmark_opt;
    int benchmark_runs = 10;
    std::string benchmark_out = "bnsl_benchmark";
    benchmark->add_option("--data", benchmark_data, "Dataset CSV (repeat per context)")
        ->required();
    benchmark->add_option("--gold", benchmark_gold, "Gold file (repeat per context)")
        ->required();
    add_method_options(benchmark, benchmark_opt, false);
    benchmark->add_option("--ensemble-runs", benchmark_runs,
                          "Networks per ensemble for hc restarts / tabu runs");
    benchmark->add_option("--out-dir", benchmark_out, "Output directory");

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "Exhaustive optimum for up to 5 variables");
    std::string enumerate_dataset;
    std::string enumerate_score = "bic";
    std::string enumerate_out = "bnsl_enum";
    enumerate->add_option("dataset", enumerate_dataset, "Dataset CSV")->required();
    enumerate->add_option("--score", enumerate_score, "Score: loglik, aic or bic")
        ->check(CLI::IsMember({"loglik", "aic", "bic"}));
    enumerate->add_option("--out-dir", enumerate_out, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (infer->parsed()) return cmd_infer(infer_dataset, infer_opt, infer_out);
        if (score->parsed()) return cmd_score(score_dataset, score_network, score_kind);
        if (simulate->parsed()) return cmd_simulate(simulate_seed, simulate_out);
        if (evaluate->parsed()) {
            std::vector<fs::path> networks(evaluate_networks.begin(), evaluate_networks.end());
            std::optional<fs::path> out;
            if (!evaluate_out.empty()) out = evaluate_out;
            return cmd_evaluate(networks, evaluate_gold, evaluate_context_id,
                                evaluate_method_id, out);
        }
        if (benchmark->parsed()) {
            std::vector<fs::path> data(benchmark_data.begin(), benchmark_data.end());
            std::vector<fs::path> gold(benchmark_gold.begin(), benchmark_gold.end());
            return cmd_benchmark(data, gold, benchmark_opt, benchmark_runs, benchmark_out);
        }
        if (enumerate->parsed())
            return cmd_enumerate(enumerate_dataset, enumerate_score, enumerate_out);
        std::cerr << "no subcommand\n";
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const ScoreError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const EvalError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
