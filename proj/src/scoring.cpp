#include "bnsl/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bnsl/errors.hpp"

namespace bnsl {

namespace {
constexpr double kRidgeLambda = 1e-8;
constexpr double kVarianceFloorFactor = 1e-12;
}  // namespace

ScoreKind score_kind_from_string(const std::string& name) {
    if (name == "loglik") return ScoreKind::loglik;
    if (name == "aic") return ScoreKind::aic;
    if (name == "bic") return ScoreKind::bic;
    throw ConfigError("unknown score '" + name + "' (expected loglik, aic or bic)");
}

std::string to_string(ScoreKind kind) {
    switch (kind) {
        case ScoreKind::loglik:
            return "loglik";
        case ScoreKind::aic:
            return "aic";
        case ScoreKind::bic:
            return "bic";
    }
    throw InternalError("to_string: bad score kind");
}

const double* ScoreCache::find(NodeId node, const std::vector<NodeId>& parents) const {
    const auto& m = per_node_[static_cast<std::size_t>(node)];
    auto it = m.find(parents);
    if (it == m.end()) return nullptr;
    ++hits_;
    return &it->second;
}

void ScoreCache::store(NodeId node, const std::vector<NodeId>& parents, double score) {
    per_node_[static_cast<std::size_t>(node)].emplace(parents, score);
    ++misses_;
}

void ScoreCache::clear() {
    for (auto& m : per_node_) m.clear();
    hits_ = 0;
    misses_ = 0;
}

Scorer::Scorer(const Dataset& data, ScoreKind kind, int max_parents, bool use_cache)
    : data_(data),
      kind_(kind),
      use_cache_(use_cache),
      n_(static_cast<double>(data.n_obs())),
      log_n_(std::log(static_cast<double>(data.n_obs()))),
      cache_(data.n_vars()) {
    if (max_parents < 0) throw ConfigError("max_parents must be non-negative");
    effective_max_parents_ =
        std::min<long long>(max_parents, std::max<long long>(data.n_obs() - 2, 0));
    means_ = data.values().colwise().mean();
    const Eigen::MatrixXd centered = data.values().rowwise() - means_.transpose();
    gram_ = centered.transpose() * centered;
}

void Scorer::check_parents(NodeId node, const std::vector<NodeId>& parents) const {
    if (node < 0 || node >= data_.n_vars())
        throw std::invalid_argument("node id " + std::to_string(node) + " out of range");
    for (NodeId p : parents) {
        if (p < 0 || p >= data_.n_vars())
            throw std::invalid_argument("parent id " + std::to_string(p) + " out of range");
        if (p == node)
            throw std::invalid_argument("node " + std::to_string(node) + " cannot parent itself");
    }
    if (static_cast<long long>(parents.size()) > data_.n_obs() - 2)
        throw ScoreError("regression for node " + std::to_string(node) + " with " +
                         std::to_string(parents.size()) + " parents is underdetermined at " +
                         std::to_string(data_.n_obs()) + " observations");
}

LinearGaussianFit Scorer::fit_linear_gaussian(NodeId node, std::vector<NodeId> parents) const {
    std::sort(parents.begin(), parents.end());
    parents.erase(std::unique(parents.begin(), parents.end()), parents.end());
    check_parents(node, parents);

    LinearGaussianFit fit;
    const double s_yy = gram_(node, node);
    double rss = s_yy;
    fit.intercept = means_(node);

    if (!parents.empty()) {
        const auto p = static_cast<Eigen::Index>(parents.size());
        Eigen::MatrixXd s_pp(p, p);
        Eigen::VectorXd s_py(p);
        for (Eigen::Index a = 0; a < p; ++a) {
            s_py(a) = gram_(parents[static_cast<std::size_t>(a)], node);
            for (Eigen::Index b = 0; b < p; ++b)
                s_pp(a, b) = gram_(parents[static_cast<std::size_t>(a)],
                                   parents[static_cast<std::size_t>(b)]);
        }
        Eigen::LLT<Eigen::MatrixXd> llt(s_pp);
        Eigen::VectorXd beta;
        if (llt.info() == Eigen::Success) beta = llt.solve(s_py);
        if (llt.info() != Eigen::Success || !beta.allFinite()) {
            // Singular normal equations: ridge keeps the solve defined.
            Eigen::MatrixXd ridged = s_pp;
            ridged.diagonal().array() += kRidgeLambda;
            beta = Eigen::LLT<Eigen::MatrixXd>(ridged).solve(s_py);
        }
        // ||y_c - X_c beta||^2 expanded in Gram terms; exact for any beta,
        // including the ridge fallback.
        rss = s_yy - 2.0 * s_py.dot(beta) + beta.dot(s_pp * beta);
        fit.coefficients.assign(beta.data(), beta.data() + p);
        for (Eigen::Index a = 0; a < p; ++a)
            fit.intercept -= beta(a) * means_(parents[static_cast<std::size_t>(a)]);
    }

    const double variance_floor = kVarianceFloorFactor * (s_yy / n_);
    fit.residual_variance = std::max(rss / n_, variance_floor);
    return fit;
}

double Scorer::node_score_uncached(NodeId node, const std::vector<NodeId>& parents) const {
    const LinearGaussianFit fit = fit_linear_gaussian(node, parents);
    const double loglik =
        -0.5 * n_ * (std::log(2.0 * std::numbers::pi * fit.residual_variance) + 1.0);
    const double k = static_cast<double>(parents.size()) + 2.0;
    switch (kind_) {
        case ScoreKind::loglik:
            return loglik;
        case ScoreKind::aic:
            return loglik - k;
        case ScoreKind::bic:
            return loglik - 0.5 * k * log_n_;
    }
    throw InternalError("node_score: bad score kind");
}

double Scorer::node_score(NodeId node, std::vector<NodeId> parents) const {
    std::sort(parents.begin(), parents.end());
    parents.erase(std::unique(parents.begin(), parents.end()), parents.end());
    if (use_cache_) {
        if (const double* cached = cache_.find(node, parents)) return *cached;
    }
    const double score = node_score_uncached(node, parents);
    if (use_cache_) cache_.store(node, parents, score);
    return score;
}

double Scorer::network_score(const Dag& dag) const {
    if (dag.node_count() != data_.n_vars())
        throw std::invalid_argument("graph has " + std::to_string(dag.node_count()) +
                                    " nodes but dataset has " + std::to_string(data_.n_vars()) +
                                    " variables");
    double total = 0.0;
    for (NodeId v = 0; v < dag.node_count(); ++v) total += node_score(v, dag.parents(v));
    return total;
}

double Scorer::delta_score(const Dag& dag, const Move& m) const {
    auto with = [](std::vector<NodeId> parents, NodeId extra) {
        parents.push_back(extra);
        return parents;
    };
    auto without = [](std::vector<NodeId> parents, NodeId gone) {
        parents.erase(std::remove(parents.begin(), parents.end(), gone), parents.end());
        return parents;
    };
    switch (m.kind) {
        case MoveKind::Add: {
            if (dag.has_edge(m.from, m.to)) throw GraphError("delta_score: edge already present");
            const auto& pa = dag.parents(m.to);
            return node_score(m.to, with(pa, m.from)) - node_score(m.to, pa);
        }
        case MoveKind::Delete: {
            if (!dag.has_edge(m.from, m.to)) throw GraphError("delta_score: edge absent");
            const auto& pa = dag.parents(m.to);
            return node_score(m.to, without(pa, m.from)) - node_score(m.to, pa);
        }
        case MoveKind::Reverse: {
            if (!dag.has_edge(m.from, m.to)) throw GraphError("delta_score: edge absent");
            const auto& pa_to = dag.parents(m.to);
            const auto& pa_from = dag.parents(m.from);
            return node_score(m.to, without(pa_to, m.from)) - node_score(m.to, pa_to) +
                   node_score(m.from, with(pa_from, m.to)) - node_score(m.from, pa_from);
        }
    }
    throw InternalError("delta_score: bad move kind");
}

}  // namespace bnsl
