#ifndef BNSL_SEARCH_LOCAL_HPP
#define BNSL_SEARCH_LOCAL_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "bnsl/scoring.hpp"

namespace bnsl {

/// How searches pick their starting graph. MixedDefault starts restart 0
/// from the empty graph and later restarts from random graphs with edge
/// probability 2/n (overridable via edge_prob).
enum class InitPolicy { MixedDefault, Empty, Random };

struct InitConfig {
    InitPolicy policy = InitPolicy::MixedDefault;
    std::optional<double> edge_prob;  // default 2/n
};

struct HcConfig {
    int max_iterations = 100000;
    int restarts = 10;
    InitConfig init;
    std::uint64_t seed = 0;
};

struct TabuConfig {
    int tenure = 10;
    std::optional<int> no_improve_window;  // default 3n
    std::optional<int> max_iterations;     // default 10n^2
    InitConfig init;
    std::uint64_t seed = 0;
};

/// One audit record per search step. `iteration` 0 carries the initial score
/// of a restart and has no move. Hill climbing scores are strictly increasing
/// within a restart; tabu scores may dip while the best-so-far never does.
struct TraceRecord {
    int restart = 0;
    int iteration = 0;
    std::optional<Move> move;
    double score = 0.0;
};

struct SearchTrace {
    std::vector<TraceRecord> records;
    double best_score = -std::numeric_limits<double>::infinity();
    std::uint64_t evaluations = 0;  // delta/fitness evaluations performed
};

struct SearchResult {
    Dag best;
    double best_score = 0.0;
    SearchTrace trace;
    /// Per-restart final graphs (hill climbing), the best graph (tabu), or
    /// the final population (GA); feeds ensemble descendant confidences.
    std::vector<Dag> ensemble;
};

/// All applicable single-edge moves, acyclicity-preserving and respecting the
/// parent cap, in deterministic order: Add, then Delete, then Reverse, each
/// lexicographic by (from, to).
std::vector<Move> neighborhood(const Dag& dag, int max_parents = std::numeric_limits<int>::max());

/// Steepest-ascent hill climbing with restarts. Deterministic for a given
/// seed; equal-delta ties resolve to the earliest move in neighborhood order.
SearchResult hill_climb(const Dataset& data, ScoreKind kind, const HcConfig& config,
                        int max_parents = kDefaultMaxParents);

/// Tabu search: moves to the best admissible neighbor even when it does not
/// improve; the reversal of a taken move is tabu for `tenure` iterations
/// unless it would beat the best score seen so far (aspiration). Stops after
/// max_iterations, or once no_improve_window iterations pass without
/// improving the best solution.
SearchResult tabu_search(const Dataset& data, ScoreKind kind, const TabuConfig& config,
                         int max_parents = kDefaultMaxParents);

struct ExhaustiveResult {
    Dag best;
    double best_score = 0.0;
    std::uint64_t dags_visited = 0;  // acyclic assignments enumerated
};

/// Scores every DAG over the dataset's variables; ties resolve to the
/// lexicographically smallest edge list. Throws ConfigError when
/// n_vars > max_n.
ExhaustiveResult exhaustive_best(const Dataset& data, ScoreKind kind, NodeId max_n = 5,
                                 int max_parents = kDefaultMaxParents);

}  // namespace bnsl

#endif  // BNSL_SEARCH_LOCAL_HPP
