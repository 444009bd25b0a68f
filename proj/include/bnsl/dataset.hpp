#ifndef BNSL_DATASET_HPP
#define BNSL_DATASET_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "bnsl/dag.hpp"

namespace bnsl {

/// N observations of n continuous variables. Immutable after construction.
/// The checked constructor enforces: at least 3 rows, finite cells, nonzero
/// sample variance per column, unique non-empty labels.
class Dataset {
public:
    Dataset(Eigen::MatrixXd values, std::vector<std::string> labels);

    /// Skips all validation. For fixtures that deliberately break the row
    /// minimum (e.g. two-observation toys).
    static Dataset unchecked(Eigen::MatrixXd values, std::vector<std::string> labels);

    NodeId n_vars() const { return static_cast<NodeId>(values_.cols()); }
    Eigen::Index n_obs() const { return values_.rows(); }
    const Eigen::MatrixXd& values() const { return values_; }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Index of `label`; throws DataError if absent.
    NodeId column(const std::string& label) const;

private:
    Dataset() = default;

    Eigen::MatrixXd values_;
    std::vector<std::string> labels_;
};

/// Shared label checks (unique, non-empty, no separator characters).
void validate_labels(const std::vector<std::string>& labels);

}  // namespace bnsl

#endif  // BNSL_DATASET_HPP
