#include "bnsl/dataset.hpp"

#include <algorithm>
#include <cmath>

#include "bnsl/errors.hpp"

namespace bnsl {

void validate_labels(const std::vector<std::string>& labels) {
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i].empty()) throw DataError("empty variable name");
        if (i > 0 && sorted[i] == sorted[i - 1])
            throw DataError("duplicate variable name '" + sorted[i] + "'");
        if (sorted[i].find_first_of(",\r\n") != std::string::npos)
            throw DataError("variable name '" + sorted[i] + "' contains a separator character");
    }
}

Dataset::Dataset(Eigen::MatrixXd values, std::vector<std::string> labels) {
    if (static_cast<std::size_t>(values.cols()) != labels.size())
        throw DataError("dataset has " + std::to_string(values.cols()) + " columns but " +
                        std::to_string(labels.size()) + " variable names");
    if (values.cols() < 1) throw DataError("dataset has no variables");
    if (values.rows() < 3)
        throw DataError("dataset has " + std::to_string(values.rows()) +
                        " observations; at least 3 are required");
    validate_labels(labels);
    if (!values.allFinite()) {
        for (Eigen::Index r = 0; r < values.rows(); ++r)
            for (Eigen::Index c = 0; c < values.cols(); ++c)
                if (!std::isfinite(values(r, c)))
                    throw DataError("non-finite value at row " + std::to_string(r + 1) +
                                    ", column '" + labels[static_cast<std::size_t>(c)] + "'");
    }
    const Eigen::VectorXd mean = values.colwise().mean();
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
        const double var = (values.col(c).array() - mean(c)).square().sum();
        if (var <= 0.0)
            throw DataError("column '" + labels[static_cast<std::size_t>(c)] +
                            "' has zero variance");
    }
    values_ = std::move(values);
    labels_ = std::move(labels);
}

Dataset Dataset::unchecked(Eigen::MatrixXd values, std::vector<std::string> labels) {
    Dataset d;
    d.values_ = std::move(values);
    d.labels_ = std::move(labels);
    return d;
}

NodeId Dataset::column(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw DataError("unknown variable '" + label + "'");
    return static_cast<NodeId>(it - labels_.begin());
}

}  // namespace bnsl
