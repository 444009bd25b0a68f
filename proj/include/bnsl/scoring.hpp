#ifndef BNSL_SCORING_HPP
#define BNSL_SCORING_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bnsl/dataset.hpp"
#include "bnsl/move.hpp"

namespace bnsl {

/// Network score family. All three are oriented so that higher is better.
enum class ScoreKind { loglik, aic, bic };

ScoreKind score_kind_from_string(const std::string& name);
std::string to_string(ScoreKind kind);

/// Parent-set size cap applied by the search front-ends (further tightened
/// to n_obs - 2 by the scorer).
inline constexpr int kDefaultMaxParents = 5;

/// OLS fit of one node on its parents plus an intercept. residual_variance
/// is the maximum-likelihood estimate RSS/N, floored at
/// 1e-12 * the node's column variance so exact collinearity stays finite.
struct LinearGaussianFit {
    double intercept = 0.0;
    std::vector<double> coefficients;  // aligned with the sorted parent ids
    double residual_variance = 0.0;
};

/// Memo of node scores keyed by (node, sorted parent set). A cached value is
/// bit-identical to what node_score would recompute for the same dataset and
/// score kind.
class ScoreCache {
public:
    explicit ScoreCache(NodeId n_nodes) : per_node_(n_nodes) {}

    const double* find(NodeId node, const std::vector<NodeId>& parents) const;
    void store(NodeId node, const std::vector<NodeId>& parents, double score);
    void clear();

    std::uint64_t hits() const { return hits_; }
    std::uint64_t misses() const { return misses_; }

private:
    std::vector<std::map<std::vector<NodeId>, double>> per_node_;
    mutable std::uint64_t hits_ = 0;
    std::uint64_t misses_ = 0;
};

/// Decomposable linear-Gaussian scorer bound to one dataset and score kind.
/// Column means and the centered Gram matrix are precomputed once, so each
/// node score is a dense solve in the parent-set dimension. Not thread-safe:
/// concurrent searches should each own a Scorer.
class Scorer {
public:
    Scorer(const Dataset& data, ScoreKind kind, int max_parents = kDefaultMaxParents,
           bool use_cache = true);

    /// OLS fit of `node` on `parents`. Throws ScoreError when
    /// |parents| > N - 2; falls back to a ridge solve (lambda = 1e-8 on the
    /// normal equations) when the design is singular.
    LinearGaussianFit fit_linear_gaussian(NodeId node, std::vector<NodeId> parents) const;

    /// Per-node score: loglik_i = -N/2 (ln(2 pi sigma^2) + 1) with
    /// k_i = |parents| + 2 free parameters; aic_i = loglik_i - k_i,
    /// bic_i = loglik_i - k_i/2 ln N.
    double node_score(NodeId node, std::vector<NodeId> parents) const;

    /// Sum of node scores over the graph.
    double network_score(const Dag& dag) const;

    /// network_score(dag after m) - network_score(dag), rescoring only the
    /// child node for Add/Delete and both endpoints for Reverse.
    double delta_score(const Dag& dag, const Move& m) const;

    ScoreKind kind() const { return kind_; }
    const Dataset& data() const { return data_; }
    /// min(configured cap, N - 2): the largest parent set searches may build.
    int effective_max_parents() const { return effective_max_parents_; }

    const ScoreCache& cache() const { return cache_; }

private:
    double node_score_uncached(NodeId node, const std::vector<NodeId>& parents) const;
    void check_parents(NodeId node, const std::vector<NodeId>& parents) const;

    const Dataset& data_;
    ScoreKind kind_;
    int effective_max_parents_;
    bool use_cache_;
    double n_;       // observation count as double
    double log_n_;
    Eigen::VectorXd means_;
    Eigen::MatrixXd gram_;  // centered cross-products X_c^T X_c
    mutable ScoreCache cache_;
};

}  // namespace bnsl

#endif  // BNSL_SCORING_HPP
