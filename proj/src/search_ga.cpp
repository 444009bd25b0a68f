#include "bnsl/search_ga.hpp"

#include <algorithm>
#include <numeric>

#include "bnsl/errors.hpp"

namespace bnsl {

namespace {

constexpr double kInfeasible = -std::numeric_limits<double>::infinity();

struct Locus {
    NodeId from;
    NodeId to;
    bool diagonal;
};

Locus locus_edge(std::size_t b, NodeId n) {
    const auto from = static_cast<NodeId>(b / static_cast<std::size_t>(n));
    const auto to = static_cast<NodeId>(b % static_cast<std::size_t>(n));
    return {from, to, from == to};
}

// Grants a candidate 1-bit: adds the edge unless it would close a cycle.
void try_set(Dag& dag, NodeId from, NodeId to) {
    if (!would_create_cycle(dag.index(), from, to)) dag.add_edge(from, to);
}

// Fitness of a decoded graph; graphs breaching the parent cap are treated as
// infeasible rather than scored with an underdetermined regression.
double fitness_of(const Scorer& scorer, const Dag& dag) {
    for (NodeId v = 0; v < dag.node_count(); ++v)
        if (static_cast<int>(dag.parents(v).size()) > scorer.effective_max_parents())
            return kInfeasible;
    return scorer.network_score(dag);
}

std::vector<std::size_t> fitness_ranking(const std::vector<Individual>& population) {
    std::vector<std::size_t> order(population.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return population[a].fitness > population[b].fitness;
    });
    return order;
}

}  // namespace

CrossoverConflictPolicy conflict_policy_from_string(const std::string& name) {
    if (name == "paper") return CrossoverConflictPolicy::Paper;
    if (name == "swapped") return CrossoverConflictPolicy::Swapped;
    throw ConfigError("unknown crossover conflict policy '" + name +
                      "' (expected paper or swapped)");
}

std::size_t tournament_select(const std::vector<Individual>& population, int tournament_size,
                              Rng& rng) {
    if (population.empty()) throw std::invalid_argument("tournament_select: empty population");
    if (tournament_size < 1) throw ConfigError("tournament size must be at least 1");
    std::uniform_int_distribution<std::size_t> pick(0, population.size() - 1);
    std::size_t best = population.size();
    for (int t = 0; t < tournament_size; ++t) {
        const std::size_t i = pick(rng);
        if (best == population.size() || population[i].fitness > population[best].fitness ||
            (population[i].fitness == population[best].fitness && i < best))
            best = i;
    }
    return best;
}

std::pair<Individual, Individual> crossover(const Individual& p1, const Individual& p2, Rng& rng,
                                            CrossoverConflictPolicy policy) {
    const NodeId n = p1.dag.node_count();
    if (n < 2) throw std::invalid_argument("crossover: need at least 2 nodes");
    const std::size_t len = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    std::uniform_int_distribution<std::size_t> point(1, len - 1);
    return crossover_at_point(p1, p2, point(rng), policy);
}

std::pair<Individual, Individual> crossover_at_point(const Individual& p1, const Individual& p2,
                                                     std::size_t c,
                                                     CrossoverConflictPolicy policy) {
    const NodeId n = p1.dag.node_count();
    if (n != p2.dag.node_count())
        throw std::invalid_argument("crossover: parents have different node counts");
    if (n < 2) throw std::invalid_argument("crossover: need at least 2 nodes");
    const std::size_t len = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    if (c < 1 || c >= len)
        throw std::invalid_argument("crossover: point must lie in [1, n^2-1]");

    Individual child1{Dag(n, p1.dag.labels())};
    Individual child2{Dag(n, p2.dag.labels())};

    // Loci before the point come from the own-side parent; agreement loci
    // after it from both. Each child's edges so far are a subset of one
    // parent's edge set, so no cycle check is needed yet.
    for (std::size_t b = 0; b < len; ++b) {
        const Locus l = locus_edge(b, n);
        if (l.diagonal) continue;
        const bool b1 = p1.dag.has_edge(l.from, l.to);
        const bool b2 = p2.dag.has_edge(l.from, l.to);
        if (b < c) {
            if (b1) child1.dag.add_edge(l.from, l.to);
            if (b2) child2.dag.add_edge(l.from, l.to);
        } else if (b1 == b2) {
            if (b1) child1.dag.add_edge(l.from, l.to);
            if (b2) child2.dag.add_edge(l.from, l.to);
        }
    }

    // Disagreement loci, ascending; the speculative 1-bit is kept only when
    // the edge fits the partially built child.
    for (std::size_t b = c; b < len; ++b) {
        const Locus l = locus_edge(b, n);
        if (l.diagonal) continue;
        const bool b1 = p1.dag.has_edge(l.from, l.to);
        const bool b2 = p2.dag.has_edge(l.from, l.to);
        if (b1 == b2) continue;
        const bool to_child1 = (policy == CrossoverConflictPolicy::Paper) ? !b1 : b1;
        try_set(to_child1 ? child1.dag : child2.dag, l.from, l.to);
    }

    return {std::move(child1), std::move(child2)};
}

Individual mutate(Individual ind, double mutation_prob, Rng& rng) {
    const NodeId n = ind.dag.node_count();
    const std::size_t len = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    bool flipped = false;
    for (std::size_t b = 0; b < len; ++b) {
        if (coin(rng) >= mutation_prob) continue;
        const Locus l = locus_edge(b, n);
        if (l.diagonal) continue;  // diagonal loci stay zero
        if (ind.dag.has_edge(l.from, l.to)) {
            ind.dag.remove_edge(l.from, l.to);
            flipped = true;
        } else if (!would_create_cycle(ind.dag.index(), l.from, l.to)) {
            ind.dag.add_edge(l.from, l.to);
            flipped = true;
        }
    }
    if (flipped) {
        ind.fitness_valid = false;
        ind.fitness = kInfeasible;
    }
    return ind;
}

SearchResult evolve(const Dataset& data, ScoreKind kind, const GaConfig& config,
                    int max_parents) {
    const NodeId n = data.n_vars();
    if (config.population_size < 2) throw ConfigError("ga: population_size must be at least 2");
    if (config.generations < 0) throw ConfigError("ga: generations must be non-negative");
    if (config.tournament_size < 1 || config.tournament_size > config.population_size)
        throw ConfigError("ga: tournament_size must be in [1, population_size]");
    if (config.crossover_rate < 0.0 || config.crossover_rate > 1.0)
        throw ConfigError("ga: crossover_rate outside [0, 1]");
    if (config.elitism_count < 0 || config.elitism_count >= config.population_size)
        throw ConfigError("ga: elitism_count must be in [0, population_size)");
    const double p_m =
        config.mutation_prob.value_or(1.0 / (static_cast<double>(n) * static_cast<double>(n)));
    if (p_m < 0.0 || p_m > 1.0) throw ConfigError("ga: mutation_prob outside [0, 1]");

    const Scorer scorer(data, kind, max_parents);
    Rng rng = make_rng(config.seed);

    SearchResult result{Dag(n, data.labels()), kInfeasible, {}, {}};
    SearchTrace& trace = result.trace;

    auto evaluate = [&](std::vector<Individual>& population) {
        for (Individual& ind : population) {
            if (!ind.fitness_valid) {
                ind.fitness = fitness_of(scorer, ind.dag);
                ind.fitness_valid = true;
                ++trace.evaluations;
            }
            if (ind.fitness > result.best_score) {
                result.best_score = ind.fitness;
                result.best = ind.dag;
            }
        }
    };

    std::vector<Individual> population;
    population.reserve(static_cast<std::size_t>(config.population_size));
    const double init_edge_prob = std::min(1.0, 2.0 / static_cast<double>(n));
    for (int i = 0; i < config.population_size; ++i) {
        Dag dag = random_dag(n, init_edge_prob,
                             derive_seed(config.seed, static_cast<std::uint64_t>(i)));
        dag.set_labels(data.labels());
        population.emplace_back(std::move(dag));
    }
    evaluate(population);
    trace.records.push_back({0, 0, std::nullopt, result.best_score});

    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int generation = 1; generation <= config.generations; ++generation) {
        std::vector<Individual> next;
        next.reserve(population.size());
        const std::vector<std::size_t> ranking = fitness_ranking(population);
        for (int e = 0; e < config.elitism_count; ++e)
            next.push_back(population[ranking[static_cast<std::size_t>(e)]]);

        while (next.size() < population.size()) {
            const Individual& p1 = population[tournament_select(population, config.tournament_size, rng)];
            const Individual& p2 = population[tournament_select(population, config.tournament_size, rng)];
            std::pair<Individual, Individual> children =
                (n >= 2 && coin(rng) < config.crossover_rate)
                    ? crossover(p1, p2, rng, config.conflict_policy)
                    : std::pair<Individual, Individual>{p1, p2};
            next.push_back(mutate(std::move(children.first), p_m, rng));
            if (next.size() < population.size())
                next.push_back(mutate(std::move(children.second), p_m, rng));
        }
        population = std::move(next);
        evaluate(population);
        trace.records.push_back({0, generation, std::nullopt, result.best_score});
    }

    if (result.best_score == kInfeasible)
        throw InternalError("ga: no feasible individual was ever produced");
    result.best_score = scorer.network_score(result.best);
    trace.best_score = result.best_score;

    result.ensemble.reserve(population.size());
    for (const Individual& ind : population) result.ensemble.push_back(ind.dag);
    return result;
}

}  // namespace bnsl
