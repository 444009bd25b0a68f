// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Every tolerance is pinned here, next to the check that uses it.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "bnsl/data_io.hpp"
#include "bnsl/errors.hpp"
#include "bnsl/search_ga.hpp"
#include "bnsl/search_local.hpp"
#include "oracles.hpp"
#include "trace_checks.hpp"

namespace fs = std::filesystem;
using namespace bnsl;

namespace {

// Equivalence-class score equality: structurally different optima differ by
// O(1), while Markov-equivalent graphs agree to roundoff, so this threshold
// separates the two regimes with orders of magnitude to spare.
constexpr double kScoreEqTol = 1e-9;

// Golden regression value for the seed-1 synthetic pipeline, frozen after
// the first computation.
constexpr double kInsilicoGoldenAuroc = 1.0;

int g_failures = 0;

void criterion(int id, const std::string& name, const std::function<std::string()>& body) {
    std::string detail;
    bool passed = false;
    const auto started = std::chrono::steady_clock::now();
    try {
        detail = body();
        passed = true;
    } catch (const std::exception& e) {
        detail = e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::printf("[%s] criterion %d: %s (%s; %.1fs)\n", passed ? "PASS" : "FAIL", id,
                name.c_str(), detail.c_str(), seconds);
    std::fflush(stdout);
    if (!passed) ++g_failures;
}

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message) {
    if (!condition) throw Failure(message);
}

GroundTruth random_truth(NodeId n, std::uint64_t seed) {
    Dag dag = random_dag(n, 0.5, seed);
    GroundTruth truth{dag, {}, {}, {}};
    Rng rng = make_rng(derive_seed(seed, 777));
    std::uniform_real_distribution<double> intercept(-1.0, 1.0);
    std::uniform_real_distribution<double> magnitude(0.8, 1.4);
    std::uniform_real_distribution<double> noise(0.4, 0.8);
    std::uniform_int_distribution<int> sign(0, 1);
    for (NodeId v = 0; v < n; ++v) {
        truth.intercepts.push_back(intercept(rng));
        truth.noise_std.push_back(noise(rng));
        std::vector<double> coefs;
        for (std::size_t p = 0; p < dag.parents(v).size(); ++p)
            coefs.push_back((sign(rng) ? 1.0 : -1.0) * magnitude(rng));
        truth.coefficients.push_back(std::move(coefs));
    }
    return truth;
}

Dataset gaussian_columns(NodeId n_vars, Eigen::Index n_obs, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd values(n_obs, n_vars);
    for (Eigen::Index r = 0; r < n_obs; ++r)
        for (Eigen::Index c = 0; c < n_vars; ++c) values(r, c) = normal(rng);
    return Dataset(values, default_labels(n_vars));
}

// Shared between criteria 1 and 9.
struct SmallNRun {
    SearchResult hc;
    SearchResult ts;
    int tenure = 0;
};
std::vector<SmallNRun> g_small_n_runs;

std::string run_criterion_1() {
    int hc_hits = 0;
    int ts_hits = 0;
    int ga_hits = 0;
    g_small_n_runs.clear();
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const NodeId n = seed % 2 == 1 ? 3 : 4;
        const GroundTruth truth = random_truth(n, seed);
        const Dataset data = simulate_linear_gaussian(truth, 500, derive_seed(seed, 1));
        const ExhaustiveResult oracle = exhaustive_best(data, ScoreKind::bic);

        HcConfig hc_config;
        hc_config.seed = seed;
        const SearchResult hc = hill_climb(data, ScoreKind::bic, hc_config);

        TabuConfig ts_config;
        ts_config.seed = seed;
        const SearchResult ts = tabu_search(data, ScoreKind::bic, ts_config);

        GaConfig ga_config;
        ga_config.population_size = 100;
        ga_config.generations = 100;
        ga_config.seed = seed;
        const SearchResult ga = evolve(data, ScoreKind::bic, ga_config);

        hc_hits += std::abs(hc.best_score - oracle.best_score) <= kScoreEqTol;
        ts_hits += std::abs(ts.best_score - oracle.best_score) <= kScoreEqTol;
        ga_hits += std::abs(ga.best_score - oracle.best_score) <= kScoreEqTol;
        g_small_n_runs.push_back({hc, ts, ts_config.tenure});
    }
    require(hc_hits >= 18, "hill climbing matched the oracle only " + std::to_string(hc_hits) +
                               "/20 times");
    require(ts_hits >= 18,
            "tabu search matched the oracle only " + std::to_string(ts_hits) + "/20 times");
    require(ga_hits >= 16, "GA matched the oracle only " + std::to_string(ga_hits) + "/20 times");
    return "hc " + std::to_string(hc_hits) + "/20, tabu " + std::to_string(ts_hits) +
           "/20, ga " + std::to_string(ga_hits) + "/20";
}

std::string run_criterion_2() {
    std::uint64_t applications = 0;
    std::uint64_t checks = 0;
    Rng rng = make_rng(424242);
    std::uniform_real_distribution<double> dense(0.05, 0.6);
    for (NodeId n : {5, 10, 15}) {
        for (int trial = 0; trial < 17000; ++trial) {
            const auto base = static_cast<std::uint64_t>(n) * 1000000 +
                              static_cast<std::uint64_t>(trial);
            const Individual p1{random_dag(n, dense(rng), base)};
            const Individual p2{random_dag(n, dense(rng), base + 500000)};
            const auto [c1, c2] = crossover(p1, p2, rng);
            const double p_m = trial % 3 == 0 ? 0.5 : (trial % 3 == 1 ? 0.1 : 1.0 / (n * n));
            const Individual m1 = mutate(c1, p_m, rng);
            applications += 2;  // one crossover (two children) + one mutation

            for (const Dag* dag : {&c1.dag, &c2.dag, &m1.dag}) {
                topological_order(*dag);  // throws on a cycle
                ++checks;
            }
            if (trial % 50 == 0) {
                require(rebuild_index(c1.dag) == c1.dag.index(), "index drift in crossover");
                require(rebuild_index(m1.dag) == m1.dag.index(), "index drift in mutation");
            }
        }
    }
    require(applications >= 100000, "only " + std::to_string(applications) + " applications");
    return std::to_string(applications) + " operator applications, " + std::to_string(checks) +
           " cycle checks, zero failures";
}

std::string run_criterion_3() {
    // two observations {-1, 1}: loglik = -(ln(2 pi) + 1)
    Eigen::MatrixXd two(2, 1);
    two << -1.0, 1.0;
    const Dataset fixture = Dataset::unchecked(two, {"X"});
    const double fixture_loglik = Scorer(fixture, ScoreKind::loglik).node_score(0, {});
    require(std::abs(fixture_loglik - (-2.83788)) <= 1e-5,
            "fixture loglik " + std::to_string(fixture_loglik));

    const Dataset data = gaussian_columns(6, 100, 31415);
    const Scorer loglik(data, ScoreKind::loglik, 10);
    const Scorer aic(data, ScoreKind::aic, 10);
    const Scorer bic(data, ScoreKind::bic, 10);
    const double log_n = std::log(static_cast<double>(data.n_obs()));

    Rng rng = make_rng(141421);
    std::uniform_int_distribution<NodeId> node_pick(0, 5);
    double worst = 0.0;
    for (int draw = 0; draw < 100; ++draw) {
        const NodeId node = node_pick(rng);
        std::vector<NodeId> parents;
        for (NodeId v = 0; v < 6; ++v)
            if (v != node && rng() % 2 == 0) parents.push_back(v);

        const double reference = oracles::loglik_reference(data, node, parents);
        const double k = static_cast<double>(parents.size()) + 2.0;
        const double d_ll = std::abs(loglik.node_score(node, parents) - reference);
        const double d_aic = std::abs(aic.node_score(node, parents) - (reference - k));
        const double d_bic = std::abs(bic.node_score(node, parents) - (reference - 0.5 * k * log_n));
        worst = std::max({worst, d_ll, d_aic, d_bic});
        require(d_ll <= 1e-9, "loglik off by " + std::to_string(d_ll));
        require(d_aic <= 1e-9, "aic off by " + std::to_string(d_aic));
        require(d_bic <= 1e-9, "bic off by " + std::to_string(d_bic));
    }
    std::ostringstream detail;
    detail << "fixture ok, 100 draws, worst |error| " << worst;
    return detail.str();
}

std::string run_criterion_4() {
    const Dataset data = gaussian_columns(8, 100, 27182);
    const Scorer scorer(data, ScoreKind::bic, 10);
    Rng rng = make_rng(161803);
    double worst = 0.0;
    int tested = 0;
    for (std::uint64_t seed = 0; tested < 1000; ++seed) {
        const Dag dag = random_dag(8, 0.3, seed);
        const std::vector<Move> moves = neighborhood(dag, 10);
        if (moves.empty()) continue;
        std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
        const Move move = moves[pick(rng)];
        Dag moved = dag;
        apply_move(moved, move);
        const double full = scorer.network_score(moved) - scorer.network_score(dag);
        const double delta = scorer.delta_score(dag, move);
        worst = std::max(worst, std::abs(delta - full));
        require(std::abs(delta - full) <= 1e-9,
                "delta mismatch " + std::to_string(delta - full) + " on " + to_string(move));
        ++tested;
    }
    std::ostringstream detail;
    detail << tested << " moves, worst |delta - full| " << worst;
    return detail.str();
}

std::string run_criterion_5() {
    Dag chain(5);
    GroundTruth truth{chain, {}, {}, {}};
    const double coefs[4] = {1.0, -0.8, 1.2, 0.9};
    for (NodeId v = 0; v < 5; ++v) {
        if (v > 0) truth.dag.add_edge(v - 1, v);
        truth.intercepts.push_back(0.25 * static_cast<double>(v));
        truth.coefficients.push_back(v > 0 ? std::vector<double>{coefs[v - 1]}
                                           : std::vector<double>{});
        truth.noise_std.push_back(0.8);
    }
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Dataset data = simulate_linear_gaussian(truth, 5000, seed);
        const Scorer scorer(data, ScoreKind::bic);
        const double truth_score = scorer.network_score(truth.dag);
        HcConfig config;
        config.seed = seed;
        const SearchResult hc = hill_climb(data, ScoreKind::bic, config);
        if (std::abs(hc.best_score - truth_score) <= kScoreEqTol) ++hits;
    }
    require(hits >= 18, "recovered the truth-equivalent score only " + std::to_string(hits) +
                            "/20 times");
    return std::to_string(hits) + "/20 seeds recover the true equivalence class";
}

std::string run_criterion_6() {
    const InsilicoFixture fixture = generate_insilico_like(1);
    require(fixture.data.n_obs() == 480 && fixture.data.n_vars() == 20,
            "fixture shape is not 480x20");
    HcConfig config;
    config.seed = 1;
    config.restarts = 10;
    const SearchResult hc = hill_climb(fixture.data, ScoreKind::bic, config);
    require(static_cast<int>(hc.ensemble.size()) == 10, "expected 10 restart networks");
    const ContextResult result = evaluate_context(hc.ensemble, fixture.gold, "insilico", "hc");

    const Dag empty(20, fixture.data.labels());
    const double baseline = evaluate_context({empty}, fixture.gold).auroc;
    require(baseline == 0.5, "empty-network baseline is not 0.5");
    require(result.auroc >= 0.6, "auroc " + std::to_string(result.auroc) + " below 0.6");
    require(result.auroc > baseline, "auroc does not beat the empty baseline");
    require(std::abs(result.auroc - kInsilicoGoldenAuroc) <= 1e-12,
            "auroc " + std::to_string(result.auroc) + " drifted from the golden value");
    std::ostringstream detail;
    detail << "auroc " << result.auroc << " vs golden " << kInsilicoGoldenAuroc;
    return detail.str();
}

std::string run_criterion_7() {
    const GoldStandard gold("T", {{"A", true}, {"B", true}, {"C", false}, {"D", false}});
    require(auroc({{"A", 1.0}, {"B", 1.0}, {"C", 0.0}, {"D", 0.0}}, gold) == 1.0,
            "perfect binary prediction is not 1.0");
    require(auroc({{"A", 1.0}, {"B", 0.0}, {"C", 1.0}, {"D", 0.0}}, gold) == 0.5,
            "half-right binary prediction is not 0.5");
    require(auroc({{"A", 0.0}, {"B", 0.0}, {"C", 1.0}, {"D", 1.0}}, gold) == 0.0,
            "inverted binary prediction is not 0.0");

    Rng rng = make_rng(271828);
    std::uniform_real_distribution<double> smooth(0.0, 1.0);
    std::uniform_int_distribution<int> coarse(0, 4);
    int tested = 0;
    for (int trial = 0; tested < 100; ++trial) {
        const int n = 4 + static_cast<int>(rng() % 30);
        std::vector<double> scores;
        std::vector<bool> labels;
        NodeConfidence confidence;
        std::map<std::string, bool> gold_labels;
        int positives = 0;
        for (int i = 0; i < n; ++i) {
            const double s = trial % 2 == 0 ? smooth(rng) : coarse(rng) / 4.0;
            const bool positive = rng() % 2 == 0;
            scores.push_back(s);
            labels.push_back(positive);
            positives += positive;
            gold_labels["N" + std::to_string(i)] = positive;
            confidence["N" + std::to_string(i)] = s;
        }
        if (positives == 0 || positives == n) continue;
        const double got = auroc(confidence, GoldStandard("T", gold_labels));
        const double expected = oracles::auroc_pairwise(scores, labels);
        require(std::abs(got - expected) <= 1e-12,
                "midrank auroc differs from the pairwise oracle by " +
                    std::to_string(got - expected));
        ++tested;
    }

    // no-ties mean-rank identity: mean of the method mean-ranks = (M+1)/2
    std::vector<ContextResult> grid;
    Rng grid_rng = make_rng(314159);
    std::uniform_real_distribution<double> jitter(0.0, 1.0);
    const int methods = 9;
    for (int c = 0; c < 4; ++c) {
        std::vector<double> values;
        for (int m = 0; m < methods; ++m) {
            double v = jitter(grid_rng);
            while (std::find(values.begin(), values.end(), v) != values.end())
                v = jitter(grid_rng);
            values.push_back(v);
            grid.push_back({"c" + std::to_string(c), "m" + std::to_string(m), v});
        }
    }
    const std::map<std::string, double> ranks = mean_rank(grid);
    double sum = 0.0;
    for (const auto& [method, rank] : ranks) sum += rank;
    require(sum / methods == (methods + 1) / 2.0,
            "mean of mean-ranks " + std::to_string(sum / methods) + " != 5");
    return "binary cases exact, 100 oracle vectors within 1e-12, rank identity exact";
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "missing output file " + path.string());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

int run_cli(const std::string& args) {
    const std::string command = std::string(BNSL_CLI_PATH) + " " + args;
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string run_criterion_8() {
    const fs::path root = fs::temp_directory_path() / "bnsl_acceptance_c8";
    fs::remove_all(root);
    fs::create_directories(root);

    // two synthetic contexts from one chain-shaped truth
    Dag chain(8);
    GroundTruth truth{chain, {}, {}, {}};
    for (NodeId v = 0; v < 8; ++v) {
        if (v > 0) truth.dag.add_edge(v - 1, v);
        truth.intercepts.push_back(0.0);
        truth.coefficients.push_back(v > 0 ? std::vector<double>{1.2} : std::vector<double>{});
        truth.noise_std.push_back(0.7);
    }
    const fs::path data_a = root / "ctx_a.csv";
    const fs::path data_b = root / "ctx_b.csv";
    save_dataset(simulate_linear_gaussian(truth, 120, 81), data_a);
    save_dataset(simulate_linear_gaussian(truth, 120, 82), data_b);

    const NodeId anchor = 3;
    const auto mask = descendant_mask(truth.dag, anchor);
    std::map<std::string, bool> gold_labels;
    for (NodeId v = 0; v < 8; ++v)
        if (v != anchor)
            gold_labels[truth.dag.labels()[static_cast<std::size_t>(v)]] =
                mask[static_cast<std::size_t>(v)] != 0;
    const GoldStandard gold(truth.dag.labels()[static_cast<std::size_t>(anchor)], gold_labels);
    const fs::path gold_a = root / "ctx_a_gold.txt";
    const fs::path gold_b = root / "ctx_b_gold.txt";
    save_gold(gold, gold_a);
    save_gold(gold, gold_b);

    // full 3x3 grid on both contexts, twice
    const std::string common = "benchmark --data " + data_a.string() + " --gold " +
                               gold_a.string() + " --data " + data_b.string() + " --gold " +
                               gold_b.string() + " --seed 17";
    require(run_cli(common + " --out-dir " + (root / "grid1").string() + " > /dev/null") == 0,
            "first benchmark run failed");
    require(run_cli(common + " --out-dir " + (root / "grid2").string() + " > /dev/null") == 0,
            "second benchmark run failed");
    for (const char* name : {"results.csv", "mean_rank.csv", "heatmap.txt"})
        require(read_file(root / "grid1" / name) == read_file(root / "grid2" / name),
                std::string("benchmark output differs: ") + name);
    const std::string results = read_file(root / "grid1" / "results.csv");
    require(std::count(results.begin(), results.end(), '\n') == 19,
            "expected 18 grid rows plus header");

    // every other command, run twice, byte-identical outputs
    const std::string infer_args = "infer --method tabu --score aic --seed 5 " + data_a.string();
    require(run_cli(infer_args + " --out-dir " + (root / "inf1").string() + " > /dev/null") == 0,
            "infer run 1 failed");
    require(run_cli(infer_args + " --out-dir " + (root / "inf2").string() + " > /dev/null") == 0,
            "infer run 2 failed");
    for (const char* name : {"network_edges.txt", "network_adjacency.csv", "trace.csv"})
        require(read_file(root / "inf1" / name) == read_file(root / "inf2" / name),
                std::string("infer output differs: ") + name);

    require(run_cli("simulate --seed 9 --out-dir " + (root / "sim1").string() + " > /dev/null") ==
                0,
            "simulate run 1 failed");
    require(run_cli("simulate --seed 9 --out-dir " + (root / "sim2").string() + " > /dev/null") ==
                0,
            "simulate run 2 failed");
    for (const char* name :
         {"dataset.csv", "truth_edges.txt", "truth_params.csv", "gold.txt", "metadata.csv"})
        require(read_file(root / "sim1" / name) == read_file(root / "sim2" / name),
                std::string("simulate output differs: ") + name);

    require(run_cli("score --network " + (root / "inf1" / "network_edges.txt").string() +
                    " --score aic " + data_a.string() + " > " + (root / "s1.txt").string()) == 0,
            "score run 1 failed");
    require(run_cli("score --network " + (root / "inf1" / "network_edges.txt").string() +
                    " --score aic " + data_a.string() + " > " + (root / "s2.txt").string()) == 0,
            "score run 2 failed");
    require(read_file(root / "s1.txt") == read_file(root / "s2.txt"), "score output differs");

    require(run_cli("evaluate --gold " + gold_a.string() + " " +
                    (root / "inf1" / "network_edges.txt").string() + " --out " +
                    (root / "e1.csv").string() + " > /dev/null") == 0,
            "evaluate run 1 failed");
    require(run_cli("evaluate --gold " + gold_a.string() + " " +
                    (root / "inf1" / "network_edges.txt").string() + " --out " +
                    (root / "e2.csv").string() + " > /dev/null") == 0,
            "evaluate run 2 failed");
    require(read_file(root / "e1.csv") == read_file(root / "e2.csv"), "evaluate output differs");

    // 5-variable slice so enumerate stays in range
    Dag chain5(5);
    GroundTruth truth5{chain5, {}, {}, {}};
    for (NodeId v = 0; v < 5; ++v) {
        if (v > 0) truth5.dag.add_edge(v - 1, v);
        truth5.intercepts.push_back(0.0);
        truth5.coefficients.push_back(v > 0 ? std::vector<double>{1.0} : std::vector<double>{});
        truth5.noise_std.push_back(0.6);
    }
    const fs::path data5 = root / "five.csv";
    save_dataset(simulate_linear_gaussian(truth5, 100, 5), data5);
    require(run_cli("enumerate --score bic --out-dir " + (root / "en1").string() + " " +
                    data5.string() + " > /dev/null") == 0,
            "enumerate run 1 failed");
    require(run_cli("enumerate --score bic --out-dir " + (root / "en2").string() + " " +
                    data5.string() + " > /dev/null") == 0,
            "enumerate run 2 failed");
    require(read_file(root / "en1" / "optimal_edges.txt") ==
                read_file(root / "en2" / "optimal_edges.txt"),
            "enumerate output differs");

    fs::remove_all(root);
    return "benchmark grid, infer, simulate, score, evaluate and enumerate are byte-stable";
}

std::string run_criterion_9() {
    require(!g_small_n_runs.empty(), "criterion 1 must run first to produce traces");
    for (const SmallNRun& run : g_small_n_runs) {
        require(trace_checks::scores_strictly_increase(run.hc.trace),
                "a hill-climbing trace is not strictly increasing");
        require(trace_checks::tabu_discipline_holds(run.ts.trace, run.tenure),
                "a tabu trace violates tenure without aspiration");
        double best = run.ts.trace.records.front().score;
        double prefix_max = best;
        for (const TraceRecord& r : run.ts.trace.records) {
            prefix_max = std::max(prefix_max, r.score);
            require(prefix_max >= best, "tabu best-so-far decreased");
            best = prefix_max;
        }
    }
    return std::to_string(g_small_n_runs.size() * 2) + " traces audited";
}

}  // namespace

int main() {
    criterion(1, "searches reach the exhaustive optimum on small n", run_criterion_1);
    criterion(2, "evolutionary operators preserve acyclicity in bulk", run_criterion_2);
    criterion(3, "node scores match the closed-form oracle", run_criterion_3);
    criterion(4, "delta scoring equals full rescoring", run_criterion_4);
    criterion(5, "chain structure recovery at N=5000", run_criterion_5);
    criterion(6, "synthetic pipeline AUROC", run_criterion_6);
    criterion(7, "evaluation math: AUROC and mean rank", run_criterion_7);
    criterion(8, "CLI determinism: byte-identical reruns", run_criterion_8);
    criterion(9, "search trace contracts", run_criterion_9);

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
