#ifndef BNSL_DAG_HPP
#define BNSL_DAG_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bnsl/rng.hpp"

namespace bnsl {

using NodeId = std::int32_t;

/// Per-node direct successor/predecessor lists, kept sorted ascending.
/// Invariant: j in forward[i] <=> i in backward[j] <=> the edge i->j exists.
struct ReachabilityIndex {
    std::vector<std::vector<NodeId>> forward;
    std::vector<std::vector<NodeId>> backward;

    bool operator==(const ReachabilityIndex&) const = default;
};

/// Directed acyclic graph over n labelled nodes. The adjacency matrix and the
/// forward/backward lists are maintained together; every mutation checks
/// acyclicity, so a constructed Dag always admits a topological order.
class Dag {
public:
    explicit Dag(NodeId n);
    Dag(NodeId n, std::vector<std::string> labels);

    NodeId node_count() const { return n_; }
    NodeId edge_count() const { return edge_count_; }
    bool has_edge(NodeId from, NodeId to) const;

    const std::vector<std::string>& labels() const { return labels_; }
    void set_labels(std::vector<std::string> labels);
    /// Index of `label`, or -1 if absent.
    NodeId find_label(const std::string& label) const;

    const ReachabilityIndex& index() const { return index_; }
    const std::vector<NodeId>& parents(NodeId node) const;
    const std::vector<NodeId>& children(NodeId node) const;

    /// Adds from->to. Throws GraphError on duplicate edges or when the edge
    /// would close a cycle; std::invalid_argument on self-loops or bad ids.
    void add_edge(NodeId from, NodeId to);

    /// Removes from->to. Throws GraphError when the edge is absent.
    void remove_edge(NodeId from, NodeId to);

    /// Edges as (from, to) pairs, ascending.
    std::vector<std::pair<NodeId, NodeId>> edges() const;

    bool operator==(const Dag&) const = default;

private:
    void check_node(NodeId v) const;

    NodeId n_;
    NodeId edge_count_ = 0;
    std::vector<std::uint8_t> adj_;  // row-major n*n, adj_[from*n_+to]
    ReachabilityIndex index_;
    std::vector<std::string> labels_;
};

/// True iff adding from->to would close a cycle, i.e. a directed path
/// to -> ... -> from already exists. Scans backward lists from `from`; a
/// debug assertion cross-checks the symmetric forward scan from `to`.
/// Throws std::invalid_argument when from == to.
bool would_create_cycle(const ReachabilityIndex& index, NodeId from, NodeId to);

/// True iff replacing from->to with to->from would close a cycle, which
/// happens exactly when a second directed path from->...->to exists.
bool reversal_creates_cycle(const Dag& dag, NodeId from, NodeId to);

/// Nodes reachable from `node` by at least one edge, ascending, excluding
/// `node` itself.
std::vector<NodeId> descendants(const Dag& dag, NodeId node);

/// Reachability flags for descendants(); mask[v] != 0 iff v is a descendant.
std::vector<std::uint8_t> descendant_mask(const Dag& dag, NodeId node);

/// Kahn's algorithm with min-index tie-break, so the order is deterministic.
/// Throws InternalError if the graph turns out cyclic (unreachable unless an
/// invariant was broken elsewhere).
std::vector<NodeId> topological_order(const Dag& dag);

/// Rebuilds the forward/backward lists from the adjacency relation; used to
/// cross-check incremental maintenance.
ReachabilityIndex rebuild_index(const Dag& dag);

/// Random DAG: draws a uniform node permutation, then keeps each forward
/// (w.r.t. the permutation) edge independently with probability edge_prob.
/// Acyclic by construction and deterministic for a given seed.
Dag random_dag(NodeId n, double edge_prob, std::uint64_t seed);

/// Default labels "V0".."V<n-1>".
std::vector<std::string> default_labels(NodeId n);

}  // namespace bnsl

#endif  // BNSL_DAG_HPP
