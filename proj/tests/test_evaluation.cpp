#include <cmath>

#include "bnsl/errors.hpp"
#include "bnsl/evaluation.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bnsl;

namespace {

GoldStandard simple_gold() {
    return GoldStandard("T", {{"A", true}, {"B", true}, {"C", false}, {"D", false}});
}

}  // namespace

TEST_CASE("gold standard validates its labels") {
    CHECK_THROWS_AS(GoldStandard("T", {{"A", true}, {"B", true}}), EvalError);
    CHECK_THROWS_AS(GoldStandard("T", {{"A", false}}), EvalError);
    CHECK_THROWS_AS(GoldStandard("T", {{"T", true}, {"A", false}}), EvalError);
    CHECK_NOTHROW(simple_gold());
}

TEST_CASE("node confidence counts descendant frequency across the ensemble") {
    std::vector<Dag> networks;
    for (int k = 0; k < 4; ++k) {
        Dag dag(3, {"T", "A", "B"});
        if (k < 3) dag.add_edge(0, 1);  // A descends in 3 of 4
        networks.push_back(std::move(dag));
    }
    const NodeConfidence conf = node_confidence(networks, 0);
    CHECK(conf.at("A") == doctest::Approx(0.75));
    CHECK(conf.at("B") == 0.0);
    CHECK(!conf.count("T"));

    Dag all(3, {"T", "A", "B"});
    all.add_edge(0, 1);
    all.add_edge(1, 2);
    const NodeConfidence full = node_confidence({all, all}, 0);
    CHECK(full.at("A") == 1.0);
    CHECK(full.at("B") == 1.0);

    CHECK_THROWS_AS(node_confidence({}, 0), EvalError);
}

TEST_CASE("binary auroc reproduces the single-operating-point formula") {
    const GoldStandard gold = simple_gold();
    // prediction {A, C}: TPR = 0.5, FPR = 0.5
    CHECK(auroc({{"A", 1.0}, {"B", 0.0}, {"C", 1.0}, {"D", 0.0}}, gold) == 0.5);
    // perfect prediction
    CHECK(auroc({{"A", 1.0}, {"B", 1.0}, {"C", 0.0}, {"D", 0.0}}, gold) == 1.0);
    // inverted prediction
    CHECK(auroc({{"A", 0.0}, {"B", 0.0}, {"C", 1.0}, {"D", 1.0}}, gold) == 0.0);
    // all ties
    CHECK(auroc({{"A", 0.5}, {"B", 0.5}, {"C", 0.5}, {"D", 0.5}}, gold) == 0.5);
}

TEST_CASE("auroc requires a confidence for every labelled node") {
    CHECK_THROWS_AS(auroc({{"A", 1.0}, {"B", 0.0}, {"C", 0.0}}, simple_gold()), EvalError);
}

TEST_CASE("midrank auroc matches the pairwise oracle") {
    Rng rng = make_rng(64);
    std::uniform_real_distribution<double> score(0.0, 1.0);
    std::uniform_int_distribution<int> coarse(0, 3);  // forces ties
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 5 + static_cast<int>(rng() % 20);
        std::vector<double> scores;
        std::vector<bool> labels;
        std::map<std::string, bool> gold_labels;
        NodeConfidence conf;
        int positives = 0;
        for (int i = 0; i < n; ++i) {
            const double s = (trial % 2 == 0) ? score(rng) : coarse(rng) / 3.0;
            const bool positive = rng() % 2 == 0;
            scores.push_back(s);
            labels.push_back(positive);
            positives += positive ? 1 : 0;
            const std::string name = "N" + std::to_string(i);
            gold_labels[name] = positive;
            conf[name] = s;
        }
        if (positives == 0 || positives == n) continue;
        const GoldStandard gold("T", gold_labels);
        const double expected = oracles::auroc_pairwise(scores, labels);
        CHECK(std::abs(auroc(conf, gold) - expected) <= 1e-12);
    }
}

TEST_CASE("auroc invariances") {
    const GoldStandard gold = simple_gold();
    const NodeConfidence conf{{"A", 0.9}, {"B", 0.4}, {"C", 0.6}, {"D", 0.1}};
    const double base = auroc(conf, gold);

    NodeConfidence transformed;
    for (const auto& [k, v] : conf) transformed[k] = std::exp(3.0 * v) + 7.0;  // monotone
    CHECK(auroc(transformed, gold) == base);

    std::map<std::string, bool> flipped;
    for (const auto& [k, v] : gold.labels()) flipped[k] = !v;
    CHECK(auroc(conf, GoldStandard("T", flipped)) == doctest::Approx(1.0 - base).epsilon(1e-12));
}

TEST_CASE("mean rank orders methods within each context") {
    const std::vector<ContextResult> one_context{{"c1", "m1", 0.7}, {"c1", "m2", 0.5}};
    const auto ranks = mean_rank(one_context);
    CHECK(ranks.at("m1") == 1.0);
    CHECK(ranks.at("m2") == 2.0);

    const std::vector<ContextResult> swapped{{"c1", "m1", 0.7},
                                             {"c1", "m2", 0.5},
                                             {"c2", "m1", 0.4},
                                             {"c2", "m2", 0.6}};
    const auto balanced = mean_rank(swapped);
    CHECK(balanced.at("m1") == 1.5);
    CHECK(balanced.at("m2") == 1.5);

    const std::vector<ContextResult> tied{{"c1", "m1", 0.6}, {"c1", "m2", 0.6}};
    const auto half = mean_rank(tied);
    CHECK(half.at("m1") == 1.5);
    CHECK(half.at("m2") == 1.5);
}

TEST_CASE("mean rank rejects incomplete or duplicated grids") {
    CHECK_THROWS_AS(mean_rank({{"c1", "m1", 0.7},
                               {"c1", "m2", 0.5},
                               {"c2", "m1", 0.4}}),
                    EvalError);
    CHECK_THROWS_AS(mean_rank({{"c1", "m1", 0.7}, {"c1", "m1", 0.5}}), EvalError);
}

TEST_CASE("mean rank is invariant under per-context monotone transforms") {
    Rng rng = make_rng(77);
    std::uniform_real_distribution<double> score(0.0, 1.0);
    std::vector<ContextResult> results;
    std::vector<ContextResult> transformed;
    for (int c = 0; c < 4; ++c)
        for (int m = 0; m < 5; ++m) {
            const double a = score(rng);
            results.push_back({"c" + std::to_string(c), "m" + std::to_string(m), a});
            // a different strictly monotone map per context
            transformed.push_back({"c" + std::to_string(c), "m" + std::to_string(m),
                                   std::pow(a, c + 1.0)});
        }
    CHECK(mean_rank(results) == mean_rank(transformed));
}

TEST_CASE("evaluate_context composes confidence and auroc") {
    Dag truth(4, {"T", "A", "B", "C"});
    truth.add_edge(0, 1);
    truth.add_edge(1, 2);
    const GoldStandard gold("T", {{"A", true}, {"B", true}, {"C", false}});

    const ContextResult perfect = evaluate_context({truth}, gold, "ctx", "m");
    CHECK(perfect.auroc == 1.0);
    CHECK(perfect.context == "ctx");
    CHECK(perfect.method == "m");

    const Dag empty(4, {"T", "A", "B", "C"});
    CHECK(evaluate_context({empty}, gold).auroc == 0.5);

    const Dag mislabeled(4, {"X", "A", "B", "C"});
    CHECK_THROWS_AS(evaluate_context({mislabeled}, gold), EvalError);
}
