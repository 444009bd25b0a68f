#include "bnsl/search_local.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "bnsl/errors.hpp"

namespace bnsl {

namespace {

double resolve_edge_prob(const InitConfig& init, NodeId n) {
    return init.edge_prob.value_or(std::min(1.0, 2.0 / static_cast<double>(n)));
}

// Starting graph for restart r under the given policy, labelled like `data`.
Dag initial_graph(const Dataset& data, const InitConfig& init, std::uint64_t seed, int restart) {
    const NodeId n = data.n_vars();
    const bool random_start =
        init.policy == InitPolicy::Random ||
        (init.policy == InitPolicy::MixedDefault && restart > 0);
    Dag dag = random_start
                  ? random_dag(n, resolve_edge_prob(init, n), derive_seed(seed, static_cast<std::uint64_t>(restart)))
                  : Dag(n);
    dag.set_labels(data.labels());
    return dag;
}

}  // namespace

std::vector<Move> neighborhood(const Dag& dag, int max_parents) {
    const NodeId n = dag.node_count();
    std::vector<Move> moves;
    for (NodeId from = 0; from < n; ++from)
        for (NodeId to = 0; to < n; ++to) {
            if (from == to || dag.has_edge(from, to)) continue;
            if (static_cast<int>(dag.parents(to).size()) >= max_parents) continue;
            if (!would_create_cycle(dag.index(), from, to))
                moves.push_back({MoveKind::Add, from, to});
        }
    for (const auto& [from, to] : dag.edges()) moves.push_back({MoveKind::Delete, from, to});
    for (const auto& [from, to] : dag.edges()) {
        if (static_cast<int>(dag.parents(from).size()) >= max_parents) continue;
        if (!reversal_creates_cycle(dag, from, to))
            moves.push_back({MoveKind::Reverse, from, to});
    }
    return moves;
}

SearchResult hill_climb(const Dataset& data, ScoreKind kind, const HcConfig& config,
                        int max_parents) {
    if (config.max_iterations < 1) throw ConfigError("hc: max_iterations must be at least 1");
    if (config.restarts < 1) throw ConfigError("hc: restarts must be at least 1");

    const Scorer scorer(data, kind, max_parents);
    const int cap = scorer.effective_max_parents();

    SearchTrace trace;
    std::optional<SearchResult> result;
    std::vector<Dag> finals;

    for (int restart = 0; restart < config.restarts; ++restart) {
        Dag current = initial_graph(data, config.init, config.seed, restart);
        double score = scorer.network_score(current);
        trace.records.push_back({restart, 0, std::nullopt, score});

        for (int iteration = 1; iteration <= config.max_iterations; ++iteration) {
            const std::vector<Move> moves = neighborhood(current, cap);
            trace.evaluations += moves.size();
            const Move* best_move = nullptr;
            double best_delta = 0.0;
            for (const Move& m : moves) {
                const double delta = scorer.delta_score(current, m);
                if (!best_move || delta > best_delta) {
                    best_delta = delta;
                    best_move = &m;
                }
            }
            // Deltas below roundoff scale are score ties between equivalent
            // structures, not ascent; stop there as well.
            const double min_improvement = 1e-10 * (1.0 + std::abs(score));
            if (!best_move || best_delta <= min_improvement) break;
            apply_move(current, *best_move);
            score += best_delta;
            trace.records.push_back({restart, iteration, *best_move, score});
        }

        const double final_score = scorer.network_score(current);
        if (!result || final_score > result->best_score) {
            result = SearchResult{current, final_score, {}, {}};
        }
        finals.push_back(std::move(current));
    }

    trace.best_score = result->best_score;
    result->trace = std::move(trace);
    result->ensemble = std::move(finals);
    return *result;
}

SearchResult tabu_search(const Dataset& data, ScoreKind kind, const TabuConfig& config,
                         int max_parents) {
    const NodeId n = data.n_vars();
    const int tenure = config.tenure;
    const int window = config.no_improve_window.value_or(3 * n);
    const int max_iterations = config.max_iterations.value_or(10 * n * n);
    if (tenure < 1) throw ConfigError("tabu: tenure must be at least 1");
    if (window < 1) throw ConfigError("tabu: no_improve_window must be at least 1");
    if (max_iterations < 1) throw ConfigError("tabu: max_iterations must be at least 1");

    const Scorer scorer(data, kind, max_parents);
    const int cap = scorer.effective_max_parents();

    Dag current = initial_graph(data, config.init, config.seed, 0);
    double score = scorer.network_score(current);

    SearchResult result{current, score, {}, {}};
    SearchTrace& trace = result.trace;
    trace.records.push_back({0, 0, std::nullopt, score});

    std::map<Move, int> tabu_until;  // reversing move -> last tabu iteration
    int last_improvement = 0;

    for (int iteration = 1; iteration <= max_iterations; ++iteration) {
        const std::vector<Move> moves = neighborhood(current, cap);
        trace.evaluations += moves.size();

        const Move* chosen = nullptr;
        double chosen_delta = 0.0;
        for (const Move& m : moves) {
            const double delta = scorer.delta_score(current, m);
            const auto it = tabu_until.find(m);
            const bool is_tabu = it != tabu_until.end() && iteration <= it->second;
            // Aspiration: a tabu move is admissible when it beats the best
            // score seen so far.
            if (is_tabu && score + delta <= result.best_score) continue;
            if (!chosen || delta > chosen_delta) {
                chosen = &m;
                chosen_delta = delta;
            }
        }
        if (!chosen) break;  // every move tabu and none aspires

        tabu_until[reversal_of(*chosen)] = iteration + tenure;
        apply_move(current, *chosen);
        score += chosen_delta;
        trace.records.push_back({0, iteration, *chosen, score});

        if (score > result.best_score) {
            result.best = current;
            result.best_score = score;
            last_improvement = iteration;
        }
        if (iteration - last_improvement >= window) break;
    }

    result.best_score = scorer.network_score(result.best);
    trace.best_score = result.best_score;
    result.ensemble = {result.best};
    return result;
}

ExhaustiveResult exhaustive_best(const Dataset& data, ScoreKind kind, NodeId max_n,
                                 int max_parents) {
    const NodeId n = data.n_vars();
    if (n > max_n)
        throw ConfigError("exhaustive search supports at most " + std::to_string(max_n) +
                          " variables, dataset has " + std::to_string(n));

    const Scorer scorer(data, kind, max_parents);
    const int cap = scorer.effective_max_parents();

    // Off-diagonal cells in (from, to) lexicographic order; bit b of a mask
    // decides cell b.
    std::vector<std::pair<NodeId, NodeId>> cells;
    for (NodeId from = 0; from < n; ++from)
        for (NodeId to = 0; to < n; ++to)
            if (from != to) cells.emplace_back(from, to);
    if (cells.size() >= 63)
        throw ConfigError("exhaustive search infeasible for " + std::to_string(n) + " variables");

    ExhaustiveResult result{Dag(n, data.labels()), 0.0, 0};
    bool have_best = false;
    std::vector<std::pair<NodeId, NodeId>> best_edges;

    std::vector<std::vector<NodeId>> parents(static_cast<std::size_t>(n));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells.size()); ++mask) {
        for (auto& p : parents) p.clear();
        for (std::size_t b = 0; b < cells.size(); ++b)
            if (mask & (std::uint64_t{1} << b))
                parents[static_cast<std::size_t>(cells[b].second)].push_back(cells[b].first);

        // Kahn's algorithm on the candidate; skip cyclic assignments.
        std::vector<int> indegree(static_cast<std::size_t>(n));
        for (NodeId v = 0; v < n; ++v)
            indegree[static_cast<std::size_t>(v)] = static_cast<int>(parents[static_cast<std::size_t>(v)].size());
        std::vector<NodeId> ready;
        for (NodeId v = 0; v < n; ++v)
            if (indegree[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
        NodeId emitted = 0;
        while (!ready.empty()) {
            const NodeId v = ready.back();
            ready.pop_back();
            ++emitted;
            for (NodeId w = 0; w < n; ++w) {
                const auto& pw = parents[static_cast<std::size_t>(w)];
                if (std::find(pw.begin(), pw.end(), v) != pw.end() &&
                    --indegree[static_cast<std::size_t>(w)] == 0)
                    ready.push_back(w);
            }
        }
        if (emitted != n) continue;
        ++result.dags_visited;

        bool over_cap = false;
        for (const auto& p : parents)
            if (static_cast<int>(p.size()) > cap) {
                over_cap = true;
                break;
            }
        if (over_cap) continue;

        double score = 0.0;
        for (NodeId v = 0; v < n; ++v) score += scorer.node_score(v, parents[static_cast<std::size_t>(v)]);

        std::vector<std::pair<NodeId, NodeId>> edges;
        for (std::size_t b = 0; b < cells.size(); ++b)
            if (mask & (std::uint64_t{1} << b)) edges.push_back(cells[b]);
        std::sort(edges.begin(), edges.end());

        if (!have_best || score > result.best_score ||
            (score == result.best_score && edges < best_edges)) {
            have_best = true;
            result.best_score = score;
            best_edges = std::move(edges);
            Dag dag(n, data.labels());
            for (const auto& [from, to] : best_edges) dag.add_edge(from, to);
            result.best = std::move(dag);
        }
    }
    return result;
}

}  // namespace bnsl
