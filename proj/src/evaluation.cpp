#include "bnsl/evaluation.hpp"

#include <algorithm>
#include <set>

#include "bnsl/errors.hpp"

namespace bnsl {

GoldStandard::GoldStandard(std::string intervention_label, std::map<std::string, bool> labels)
    : intervention_label_(std::move(intervention_label)), labels_(std::move(labels)) {
    if (intervention_label_.empty()) throw EvalError("gold standard: empty intervention label");
    if (labels_.count(intervention_label_))
        throw EvalError("gold standard: intervention node '" + intervention_label_ +
                        "' must not carry a descendant label");
    std::size_t positives = 0;
    for (const auto& [label, positive] : labels_) positives += positive ? 1 : 0;
    if (positives == 0 || positives == labels_.size())
        throw EvalError("gold standard is degenerate: need at least one descendant and one "
                        "non-descendant label");
}

NodeConfidence node_confidence(const std::vector<Dag>& networks, NodeId intervention) {
    if (networks.empty()) throw EvalError("node_confidence: empty network ensemble");
    const Dag& first = networks.front();
    if (intervention < 0 || intervention >= first.node_count())
        throw std::invalid_argument("node_confidence: intervention node out of range");
    for (const Dag& net : networks)
        if (net.labels() != first.labels())
            throw EvalError("node_confidence: networks have inconsistent variable labels");

    std::vector<double> counts(static_cast<std::size_t>(first.node_count()), 0.0);
    for (const Dag& net : networks) {
        const auto mask = descendant_mask(net, intervention);
        for (std::size_t v = 0; v < counts.size(); ++v) counts[v] += mask[v];
    }
    NodeConfidence confidence;
    for (NodeId v = 0; v < first.node_count(); ++v) {
        if (v == intervention) continue;
        confidence[first.labels()[static_cast<std::size_t>(v)]] =
            counts[static_cast<std::size_t>(v)] / static_cast<double>(networks.size());
    }
    return confidence;
}

double auroc(const NodeConfidence& confidence, const GoldStandard& gold) {
    std::vector<std::pair<double, bool>> scored;
    scored.reserve(gold.labels().size());
    for (const auto& [label, positive] : gold.labels()) {
        auto it = confidence.find(label);
        if (it == confidence.end())
            throw EvalError("auroc: no confidence for labelled node '" + label + "'");
        scored.emplace_back(it->second, positive);
    }
    std::sort(scored.begin(), scored.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    // Mann-Whitney U from midranks; tied confidences share the average rank.
    double positive_rank_sum = 0.0;
    std::size_t n_pos = 0;
    std::size_t i = 0;
    while (i < scored.size()) {
        std::size_t j = i;
        while (j < scored.size() && scored[j].first == scored[i].first) ++j;
        const double midrank = 0.5 * static_cast<double>(i + 1 + j);  // 1-based average
        for (std::size_t k = i; k < j; ++k)
            if (scored[k].second) {
                positive_rank_sum += midrank;
                ++n_pos;
            }
        i = j;
    }
    const std::size_t n_neg = scored.size() - n_pos;
    const double u = positive_rank_sum -
                     static_cast<double>(n_pos) * static_cast<double>(n_pos + 1) / 2.0;
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

std::map<std::string, double> mean_rank(const std::vector<ContextResult>& results) {
    std::set<std::string> contexts;
    std::set<std::string> methods;
    std::set<std::pair<std::string, std::string>> seen;
    for (const ContextResult& r : results) {
        contexts.insert(r.context);
        methods.insert(r.method);
        if (!seen.emplace(r.context, r.method).second)
            throw EvalError("mean_rank: duplicate cell (" + r.context + ", " + r.method + ")");
    }
    if (seen.size() != contexts.size() * methods.size()) {
        for (const auto& c : contexts)
            for (const auto& m : methods)
                if (!seen.count({c, m}))
                    throw EvalError("mean_rank: missing cell (" + c + ", " + m + ")");
    }

    std::map<std::string, double> rank_sum;
    for (const std::string& context : contexts) {
        std::vector<const ContextResult*> in_context;
        for (const ContextResult& r : results)
            if (r.context == context) in_context.push_back(&r);
        std::sort(in_context.begin(), in_context.end(),
                  [](const ContextResult* a, const ContextResult* b) {
                      return a->auroc > b->auroc;  // rank 1 = best
                  });
        std::size_t i = 0;
        while (i < in_context.size()) {
            std::size_t j = i;
            while (j < in_context.size() && in_context[j]->auroc == in_context[i]->auroc) ++j;
            const double midrank = 0.5 * static_cast<double>(i + 1 + j);
            for (std::size_t k = i; k < j; ++k) rank_sum[in_context[k]->method] += midrank;
            i = j;
        }
    }
    std::map<std::string, double> out;
    for (const auto& [method, sum] : rank_sum)
        out[method] = sum / static_cast<double>(contexts.size());
    return out;
}

ContextResult evaluate_context(const std::vector<Dag>& networks, const GoldStandard& gold,
                               std::string context_id, std::string method_id) {
    if (networks.empty()) throw EvalError("evaluate_context: empty network ensemble");
    const NodeId intervention = networks.front().find_label(gold.intervention_label());
    if (intervention < 0)
        throw EvalError("evaluate_context: intervention node '" + gold.intervention_label() +
                        "' not present in the networks");
    const NodeConfidence confidence = node_confidence(networks, intervention);
    return {std::move(context_id), std::move(method_id), auroc(confidence, gold)};
}

}  // namespace bnsl
