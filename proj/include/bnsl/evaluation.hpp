#ifndef BNSL_EVALUATION_HPP
#define BNSL_EVALUATION_HPP

#include <map>
#include <string>
#include <vector>

#include "bnsl/dag.hpp"

namespace bnsl {

/// Descendant labels for one intervention experiment: label -> true when the
/// node responded to inhibiting the intervention node. The intervention node
/// itself is excluded. At least one positive and one negative label are
/// required, otherwise AUROC is undefined.
class GoldStandard {
public:
    GoldStandard(std::string intervention_label, std::map<std::string, bool> labels);

    const std::string& intervention_label() const { return intervention_label_; }
    const std::map<std::string, bool>& labels() const { return labels_; }

private:
    std::string intervention_label_;
    std::map<std::string, bool> labels_;
};

/// label -> confidence in [0, 1] that the node descends from the intervention.
using NodeConfidence = std::map<std::string, double>;

struct ContextResult {
    std::string context;
    std::string method;
    double auroc = 0.0;
};

/// Fraction of networks in which each node is a descendant of `intervention`.
/// All networks must share one label set; the intervention label is omitted
/// from the result. Throws EvalError on an empty ensemble.
NodeConfidence node_confidence(const std::vector<Dag>& networks, NodeId intervention);

/// Rank-based AUROC (Mann-Whitney with midranks for ties) of the gold
/// positives against the negatives. Every gold label must have a confidence.
double auroc(const NodeConfidence& confidence, const GoldStandard& gold);

/// Mean per-method rank across contexts: within each context methods are
/// ranked by AUROC descending (rank 1 best, ties averaged). Every method must
/// appear exactly once per context.
std::map<std::string, double> mean_rank(const std::vector<ContextResult>& results);

/// node_confidence composed with auroc; the intervention node is resolved by
/// label in the networks. Throws EvalError when the label is unknown.
ContextResult evaluate_context(const std::vector<Dag>& networks, const GoldStandard& gold,
                               std::string context_id = "", std::string method_id = "");

}  // namespace bnsl

#endif  // BNSL_EVALUATION_HPP
