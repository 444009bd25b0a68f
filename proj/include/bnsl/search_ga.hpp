#ifndef BNSL_SEARCH_GA_HPP
#define BNSL_SEARCH_GA_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "bnsl/search_local.hpp"

namespace bnsl {

/// GA individual. The graph embeds the adjacency bits and the
/// forward/backward lists, so operators mutate it directly; the flat genome
/// view is available through encode().
struct Individual {
    Dag dag;
    double fitness = -std::numeric_limits<double>::infinity();
    bool fitness_valid = false;

    explicit Individual(Dag d) : dag(std::move(d)) {}
};

/// Conflict rule for crossover loci where the parents disagree. Under
/// `Paper` (the default) the speculative 1-bit goes to the opposite-side
/// child, i.e. each child's tail comes from the other parent - classic
/// single-point semantics. Under `Swapped` each child keeps its own parent's
/// bit, which makes both children copies of their parents since every
/// feasibility check then trivially passes.
enum class CrossoverConflictPolicy { Paper, Swapped };

CrossoverConflictPolicy conflict_policy_from_string(const std::string& name);

struct GaConfig {
    int population_size = 100;
    int generations = 100;
    int tournament_size = 3;
    double crossover_rate = 0.9;
    std::optional<double> mutation_prob;  // default 1/n^2
    int elitism_count = 2;
    CrossoverConflictPolicy conflict_policy = CrossoverConflictPolicy::Paper;
    std::uint64_t seed = 0;
};

/// Draws tournament_size members uniformly with replacement and returns the
/// index of the fittest; ties go to the lowest population index.
std::size_t tournament_select(const std::vector<Individual>& population, int tournament_size,
                              Rng& rng);

/// Single-point crossover that preserves acyclicity. A crossover point c is
/// drawn uniformly from [1, n^2-1]; loci before c are copied from the
/// respective parent and agreement loci after c are copied from both (each
/// child's copied edges are a subset of one parent's, hence acyclic).
/// Disagreement loci are then resolved in ascending order: the candidate
/// 1-bit is kept only if the edge can be added to the child built so far
/// without closing a cycle.
std::pair<Individual, Individual> crossover(
    const Individual& p1, const Individual& p2, Rng& rng,
    CrossoverConflictPolicy policy = CrossoverConflictPolicy::Paper);

/// crossover with an explicit point in [1, n^2-1] instead of a drawn one.
std::pair<Individual, Individual> crossover_at_point(
    const Individual& p1, const Individual& p2, std::size_t point,
    CrossoverConflictPolicy policy = CrossoverConflictPolicy::Paper);

/// Per-locus mutation in ascending locus order: a selected 1 always clears,
/// a selected 0 becomes 1 only when the edge is addable without a cycle at
/// that moment. Diagonal loci never set. fitness_valid drops only if some
/// bit actually flipped.
Individual mutate(Individual ind, double mutation_prob, Rng& rng);

/// Generational GA: tournament selection, acyclicity-preserving crossover
/// and mutation, elitism. The population starts from random graphs with edge
/// probability 2/n. Returns the best individual ever seen.
SearchResult evolve(const Dataset& data, ScoreKind kind, const GaConfig& config,
                    int max_parents = kDefaultMaxParents);

}  // namespace bnsl

#endif  // BNSL_SEARCH_GA_HPP
