#include "bnsl/dag.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "bnsl/errors.hpp"

namespace bnsl {

namespace {

void sorted_insert(std::vector<NodeId>& v, NodeId x) {
    v.insert(std::lower_bound(v.begin(), v.end(), x), x);
}

void sorted_erase(std::vector<NodeId>& v, NodeId x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    assert(it != v.end() && *it == x);
    v.erase(it);
}

// BFS over one side of the index; true iff `target` is reachable from `start`.
bool reaches(const std::vector<std::vector<NodeId>>& lists, NodeId start, NodeId target) {
    std::vector<std::uint8_t> seen(lists.size(), 0);
    std::vector<NodeId> stack{start};
    seen[static_cast<std::size_t>(start)] = 1;
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (NodeId w : lists[static_cast<std::size_t>(v)]) {
            if (w == target) return true;
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                stack.push_back(w);
            }
        }
    }
    return false;
}

}  // namespace

std::vector<std::string> default_labels(NodeId n) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (NodeId i = 0; i < n; ++i) labels.push_back("V" + std::to_string(i));
    return labels;
}

Dag::Dag(NodeId n) : Dag(n, default_labels(n)) {}

Dag::Dag(NodeId n, std::vector<std::string> labels) : n_(n) {
    if (n < 1) throw std::invalid_argument("Dag: node count must be at least 1");
    adj_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    index_.forward.resize(static_cast<std::size_t>(n));
    index_.backward.resize(static_cast<std::size_t>(n));
    set_labels(std::move(labels));
}

void Dag::check_node(NodeId v) const {
    if (v < 0 || v >= n_)
        throw std::invalid_argument("Dag: node id " + std::to_string(v) + " out of range [0, " +
                                    std::to_string(n_) + ")");
}

void Dag::set_labels(std::vector<std::string> labels) {
    if (static_cast<NodeId>(labels.size()) != n_)
        throw std::invalid_argument("Dag: expected " + std::to_string(n_) + " labels, got " +
                                    std::to_string(labels.size()));
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i].empty()) throw std::invalid_argument("Dag: empty label");
        if (i > 0 && sorted[i] == sorted[i - 1])
            throw std::invalid_argument("Dag: duplicate label '" + sorted[i] + "'");
        if (sorted[i].find_first_of(",\r\n") != std::string::npos)
            throw std::invalid_argument("Dag: label '" + sorted[i] +
                                        "' contains a separator character");
    }
    labels_ = std::move(labels);
}

NodeId Dag::find_label(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    return it == labels_.end() ? NodeId{-1} : static_cast<NodeId>(it - labels_.begin());
}

bool Dag::has_edge(NodeId from, NodeId to) const {
    check_node(from);
    check_node(to);
    return adj_[static_cast<std::size_t>(from) * static_cast<std::size_t>(n_) +
                static_cast<std::size_t>(to)] != 0;
}

const std::vector<NodeId>& Dag::parents(NodeId node) const {
    check_node(node);
    return index_.backward[static_cast<std::size_t>(node)];
}

const std::vector<NodeId>& Dag::children(NodeId node) const {
    check_node(node);
    return index_.forward[static_cast<std::size_t>(node)];
}

void Dag::add_edge(NodeId from, NodeId to) {
    check_node(from);
    check_node(to);
    if (from == to) throw std::invalid_argument("Dag: self-loop " + std::to_string(from));
    if (has_edge(from, to))
        throw GraphError("duplicate edge " + std::to_string(from) + "->" + std::to_string(to));
    if (would_create_cycle(index_, from, to))
        throw GraphError("edge " + std::to_string(from) + "->" + std::to_string(to) +
                         " would create a cycle");
    adj_[static_cast<std::size_t>(from) * static_cast<std::size_t>(n_) +
         static_cast<std::size_t>(to)] = 1;
    sorted_insert(index_.forward[static_cast<std::size_t>(from)], to);
    sorted_insert(index_.backward[static_cast<std::size_t>(to)], from);
    ++edge_count_;
}

void Dag::remove_edge(NodeId from, NodeId to) {
    check_node(from);
    check_node(to);
    if (!has_edge(from, to))
        throw GraphError("missing edge " + std::to_string(from) + "->" + std::to_string(to));
    adj_[static_cast<std::size_t>(from) * static_cast<std::size_t>(n_) +
         static_cast<std::size_t>(to)] = 0;
    sorted_erase(index_.forward[static_cast<std::size_t>(from)], to);
    sorted_erase(index_.backward[static_cast<std::size_t>(to)], from);
    --edge_count_;
}

std::vector<std::pair<NodeId, NodeId>> Dag::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(static_cast<std::size_t>(edge_count_));
    for (NodeId from = 0; from < n_; ++from)
        for (NodeId to : index_.forward[static_cast<std::size_t>(from)])
            out.emplace_back(from, to);
    return out;
}

bool would_create_cycle(const ReachabilityIndex& index, NodeId from, NodeId to) {
    if (from == to) throw std::invalid_argument("would_create_cycle: self-loop query");
    // A path to -> ... -> from exists iff `to` appears among the ancestors
    // of `from`.
    bool result = reaches(index.backward, from, to);
    assert(result == reaches(index.forward, to, from));
    return result;
}

bool reversal_creates_cycle(const Dag& dag, NodeId from, NodeId to) {
    if (!dag.has_edge(from, to))
        throw GraphError("missing edge " + std::to_string(from) + "->" + std::to_string(to));
    // After deleting from->to, adding to->from cycles iff another directed
    // path from -> ... -> to remains. Search forward from `from`, skipping
    // the direct step to `to`.
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(dag.node_count()), 0);
    std::vector<NodeId> stack;
    seen[static_cast<std::size_t>(from)] = 1;
    for (NodeId w : dag.children(from)) {
        if (w == to) continue;
        if (!seen[static_cast<std::size_t>(w)]) {
            seen[static_cast<std::size_t>(w)] = 1;
            stack.push_back(w);
        }
    }
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (NodeId w : dag.children(v)) {
            if (w == to) return true;
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                stack.push_back(w);
            }
        }
    }
    return false;
}

std::vector<std::uint8_t> descendant_mask(const Dag& dag, NodeId node) {
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(dag.node_count()), 0);
    std::vector<NodeId> stack{node};
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (NodeId w : dag.children(v)) {
            if (!mask[static_cast<std::size_t>(w)]) {
                mask[static_cast<std::size_t>(w)] = 1;
                stack.push_back(w);
            }
        }
    }
    mask[static_cast<std::size_t>(node)] = 0;  // a node is not its own descendant
    return mask;
}

std::vector<NodeId> descendants(const Dag& dag, NodeId node) {
    auto mask = descendant_mask(dag, node);
    std::vector<NodeId> out;
    for (NodeId v = 0; v < dag.node_count(); ++v)
        if (mask[static_cast<std::size_t>(v)]) out.push_back(v);
    return out;
}

std::vector<NodeId> topological_order(const Dag& dag) {
    const NodeId n = dag.node_count();
    std::vector<NodeId> indegree(static_cast<std::size_t>(n), 0);
    for (NodeId v = 0; v < n; ++v)
        indegree[static_cast<std::size_t>(v)] = static_cast<NodeId>(dag.parents(v).size());
    std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
    for (NodeId v = 0; v < n; ++v)
        if (indegree[static_cast<std::size_t>(v)] == 0) ready.push(v);
    std::vector<NodeId> order;
    order.reserve(static_cast<std::size_t>(n));
    while (!ready.empty()) {
        NodeId v = ready.top();
        ready.pop();
        order.push_back(v);
        for (NodeId w : dag.children(v))
            if (--indegree[static_cast<std::size_t>(w)] == 0) ready.push(w);
    }
    if (static_cast<NodeId>(order.size()) != n)
        throw InternalError("topological_order: cycle detected in a Dag");
    return order;
}

ReachabilityIndex rebuild_index(const Dag& dag) {
    const NodeId n = dag.node_count();
    ReachabilityIndex idx;
    idx.forward.resize(static_cast<std::size_t>(n));
    idx.backward.resize(static_cast<std::size_t>(n));
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = 0; j < n; ++j)
            if (i != j && dag.has_edge(i, j)) {
                idx.forward[static_cast<std::size_t>(i)].push_back(j);
                idx.backward[static_cast<std::size_t>(j)].push_back(i);
            }
    return idx;
}

Dag random_dag(NodeId n, double edge_prob, std::uint64_t seed) {
    if (edge_prob < 0.0 || edge_prob > 1.0)
        throw std::invalid_argument("random_dag: edge_prob outside [0, 1]");
    Rng rng = make_rng(seed);
    std::vector<NodeId> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), NodeId{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    Dag dag(n);
    for (std::size_t i = 0; i + 1 < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (coin(rng) < edge_prob) dag.add_edge(perm[i], perm[j]);
    return dag;
}

}  // namespace bnsl
