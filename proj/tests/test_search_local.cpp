#include <algorithm>
#include <cmath>

#include "bnsl/errors.hpp"
#include "bnsl/search_local.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "trace_checks.hpp"

using namespace bnsl;

namespace {

Dataset linked_pair(Eigen::Index n_obs, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd values(n_obs, 2);
    for (Eigen::Index r = 0; r < n_obs; ++r) {
        values(r, 0) = normal(rng);
        values(r, 1) = 2.0 * values(r, 0) + 0.3 * normal(rng);
    }
    return Dataset(values, {"x", "y"});
}

// x -> y -> z with strong coefficients.
Dataset chain3_data(Eigen::Index n_obs, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd values(n_obs, 3);
    for (Eigen::Index r = 0; r < n_obs; ++r) {
        values(r, 0) = normal(rng);
        values(r, 1) = 1.5 * values(r, 0) + 0.5 * normal(rng);
        values(r, 2) = -1.2 * values(r, 1) + 0.5 * normal(rng);
    }
    return Dataset(values, {"x", "y", "z"});
}

Dataset independent_noise(NodeId n_vars, Eigen::Index n_obs, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd values(n_obs, n_vars);
    for (Eigen::Index r = 0; r < n_obs; ++r)
        for (Eigen::Index c = 0; c < n_vars; ++c) values(r, c) = normal(rng);
    return Dataset(values, default_labels(n_vars));
}

}  // namespace

TEST_CASE("neighborhood enumerates exactly the applicable moves in order") {
    const Dag empty2(2);
    CHECK(neighborhood(empty2) ==
          std::vector<Move>{{MoveKind::Add, 0, 1}, {MoveKind::Add, 1, 0}});

    Dag one_edge(2);
    one_edge.add_edge(0, 1);
    CHECK(neighborhood(one_edge) ==
          std::vector<Move>{{MoveKind::Delete, 0, 1}, {MoveKind::Reverse, 0, 1}});

    Dag chain(3);
    chain.add_edge(0, 1);
    chain.add_edge(1, 2);
    const auto moves = neighborhood(chain);
    CHECK(std::find(moves.begin(), moves.end(), Move{MoveKind::Add, 0, 2}) != moves.end());
    CHECK(std::find(moves.begin(), moves.end(), Move{MoveKind::Add, 2, 0}) == moves.end());
}

TEST_CASE("neighborhood respects the parent cap") {
    Dag dag(3);
    dag.add_edge(0, 2);
    const auto moves = neighborhood(dag, 1);
    // node 2 already has one parent, so nothing may add to it or reverse into 0
    CHECK(std::find(moves.begin(), moves.end(), Move{MoveKind::Add, 1, 2}) == moves.end());
    CHECK(std::find(moves.begin(), moves.end(), Move{MoveKind::Add, 0, 1}) != moves.end());
}

TEST_CASE("hill climbing finds the single-edge optimum on a linked pair") {
    const Dataset data = linked_pair(100, 5);
    HcConfig config;
    config.seed = 7;
    const SearchResult result = hill_climb(data, ScoreKind::bic, config);
    CHECK(result.best.edge_count() == 1);
    CHECK(result.best.has_edge(0, 1) != result.best.has_edge(1, 0));
    const ExhaustiveResult oracle = exhaustive_best(data, ScoreKind::bic);
    CHECK(result.best_score == doctest::Approx(oracle.best_score).epsilon(1e-12));
}

TEST_CASE("hill climbing ascends monotonically and is deterministic") {
    const Dataset data = chain3_data(200, 9);
    HcConfig config;
    config.seed = 3;
    const SearchResult a = hill_climb(data, ScoreKind::aic, config);
    const SearchResult b = hill_climb(data, ScoreKind::aic, config);
    CHECK(a.best.edges() == b.best.edges());
    CHECK(a.best_score == b.best_score);
    CHECK(trace_checks::scores_strictly_increase(a.trace));
    CHECK(a.best_score >= a.trace.records.front().score);
}

TEST_CASE("hill climbing evaluation accounting matches a trace replay") {
    const Dataset data = chain3_data(150, 21);
    HcConfig config;
    config.seed = 1;
    config.restarts = 3;
    config.init.policy = InitPolicy::Empty;
    const SearchResult result = hill_climb(data, ScoreKind::bic, config);
    const Scorer scorer(data, ScoreKind::bic);
    const std::uint64_t expected = trace_checks::replay_expected_evaluations(
        result.trace, data.n_vars(), data.labels(), scorer.effective_max_parents(), true);
    CHECK(result.trace.evaluations == expected);
}

TEST_CASE("tabu search reaches the exhaustive optimum on chain data") {
    const Dataset data = chain3_data(500, 13);
    TabuConfig config;
    config.seed = 11;
    const SearchResult result = tabu_search(data, ScoreKind::bic, config);
    const ExhaustiveResult oracle = exhaustive_best(data, ScoreKind::bic);
    CHECK(result.best_score == doctest::Approx(oracle.best_score).epsilon(1e-12));
    CHECK(result.best_score >= result.trace.records.front().score);
}

TEST_CASE("tabu search honours tenure and aspiration in its trace") {
    const Dataset data = chain3_data(300, 17);
    TabuConfig config;
    config.seed = 2;
    config.tenure = 5;
    const SearchResult result = tabu_search(data, ScoreKind::loglik, config);
    CHECK(trace_checks::tabu_discipline_holds(result.trace, config.tenure));

    // moves may be non-improving, but the returned best never is
    double max_seen = result.trace.records.front().score;
    for (const TraceRecord& r : result.trace.records) max_seen = std::max(max_seen, r.score);
    CHECK(result.best_score == doctest::Approx(max_seen).epsilon(1e-9));
}

TEST_CASE("tabu search evaluation accounting matches a trace replay") {
    const Dataset data = chain3_data(150, 23);
    TabuConfig config;
    config.seed = 4;
    config.init.policy = InitPolicy::Empty;
    const SearchResult result = tabu_search(data, ScoreKind::bic, config);
    const Scorer scorer(data, ScoreKind::bic);
    const std::uint64_t expected = trace_checks::replay_expected_evaluations(
        result.trace, data.n_vars(), data.labels(), scorer.effective_max_parents(), false);
    CHECK(result.trace.evaluations == expected);
}

TEST_CASE("searches keep every intermediate graph acyclic") {
    const Dataset data = chain3_data(100, 29);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        HcConfig hc;
        hc.seed = seed;
        hc.restarts = 2;
        const SearchResult result = hill_climb(data, ScoreKind::bic, hc);
        // replay each restart and let add_edge/topological_order assert validity
        std::map<int, Dag> graphs;
        for (const TraceRecord& r : result.trace.records) {
            if (!r.move) continue;
            if (!graphs.count(r.restart)) {
                Dag init = r.restart == 0
                               ? Dag(3, data.labels())
                               : [&] {
                                     Dag g = random_dag(3, 2.0 / 3.0,
                                                        derive_seed(seed, static_cast<std::uint64_t>(r.restart)));
                                     g.set_labels(data.labels());
                                     return g;
                                 }();
                graphs.emplace(r.restart, std::move(init));
            }
            CHECK_NOTHROW(apply_move(graphs.at(r.restart), *r.move));
            CHECK_NOTHROW(topological_order(graphs.at(r.restart)));
        }
    }
}

TEST_CASE("exhaustive search handles the single-node dataset") {
    Eigen::MatrixXd values(10, 1);
    for (int r = 0; r < 10; ++r) values(r, 0) = r % 3 - 1;
    const Dataset data(values, {"only"});
    const ExhaustiveResult result = exhaustive_best(data, ScoreKind::bic);
    CHECK(result.best.edge_count() == 0);
    CHECK(result.dags_visited == 1);
}

TEST_CASE("independent noise yields the empty graph under BIC") {
    const Dataset data = independent_noise(2, 1000, 31);
    const ExhaustiveResult result = exhaustive_best(data, ScoreKind::bic);
    CHECK(result.best.edge_count() == 0);
}

TEST_CASE("exhaustive enumeration count matches the recurrence") {
    const Dataset data3 = independent_noise(3, 30, 37);
    CHECK(exhaustive_best(data3, ScoreKind::loglik).dags_visited == 25);
    CHECK(oracles::count_dags(3) == 25);

    const Dataset data4 = independent_noise(4, 30, 41);
    CHECK(exhaustive_best(data4, ScoreKind::loglik).dags_visited == oracles::count_dags(4));
    CHECK(oracles::count_dags(4) == 543);
}

TEST_CASE("exhaustive search rejects too many variables") {
    const Dataset data = independent_noise(6, 30, 43);
    CHECK_THROWS_AS(exhaustive_best(data, ScoreKind::bic), ConfigError);
}

TEST_CASE("exact score ties resolve to the smallest edge list") {
    // duplicated column: both orientations of the single edge produce
    // bit-identical scores, so the tie-break must pick 0->1 over 1->0
    Rng rng = make_rng(53);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd values(40, 2);
    for (int r = 0; r < 40; ++r) {
        values(r, 0) = normal(rng);
        values(r, 1) = values(r, 0);
    }
    const Dataset data(values, {"x", "y"});
    const Scorer scorer(data, ScoreKind::loglik);
    Dag forward(2, data.labels());
    forward.add_edge(0, 1);
    Dag backward(2, data.labels());
    backward.add_edge(1, 0);
    REQUIRE(scorer.network_score(forward) == scorer.network_score(backward));

    const ExhaustiveResult result = exhaustive_best(data, ScoreKind::loglik);
    CHECK(result.best.edges() == std::vector<std::pair<NodeId, NodeId>>{{0, 1}});
}

TEST_CASE("neighborhood order is Add, Delete, Reverse, each lexicographic") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Dag dag = random_dag(7, 0.35, seed);
        const auto moves = neighborhood(dag);
        int phase = 0;
        const Move* previous = nullptr;
        for (const Move& m : moves) {
            const int m_phase = m.kind == MoveKind::Add ? 0 : m.kind == MoveKind::Delete ? 1 : 2;
            CHECK(m_phase >= phase);
            if (previous && m_phase == phase)
                CHECK(std::pair(previous->from, previous->to) < std::pair(m.from, m.to));
            phase = m_phase;
            previous = &m;
        }
    }
}

TEST_CASE("hill climbing with restarts matches exhaustive on small synthetic data") {
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Dataset data = chain3_data(400, 100 + seed);
        HcConfig config;
        config.seed = seed;
        const SearchResult hc = hill_climb(data, ScoreKind::bic, config);
        const ExhaustiveResult oracle = exhaustive_best(data, ScoreKind::bic);
        if (std::abs(hc.best_score - oracle.best_score) <= 1e-9) ++hits;
    }
    CHECK(hits >= 9);
}
