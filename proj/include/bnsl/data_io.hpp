#ifndef BNSL_DATA_IO_HPP
#define BNSL_DATA_IO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "bnsl/dataset.hpp"
#include "bnsl/evaluation.hpp"

namespace bnsl {

/// Known generating model: graph, per-node regression parameters and noise.
/// coefficients[v] aligns with dag.parents(v).
struct GroundTruth {
    Dag dag;
    std::vector<double> intercepts;
    std::vector<std::vector<double>> coefficients;
    std::vector<double> noise_std;
};

/// Condition annotations for one generated observation row.
struct RowMeta {
    std::string condition;
    int time = 0;
    int replicate = 0;
};

struct InsilicoFixture {
    GroundTruth truth;
    Dataset data;
    GoldStandard gold;
    std::vector<RowMeta> meta;  // one entry per observation row
};

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

/// CSV loader: first row variable names, every later row one observation.
/// Throws DataError with the offending row/column on parse failures, ragged
/// rows, missing values, fewer than 3 data rows, or zero-variance columns.
Dataset load_dataset(const std::filesystem::path& path);

/// Writes the dataset as CSV using shortest round-trippable decimal floats,
/// so load_dataset(save_dataset(d)) reproduces d bit for bit.
void save_dataset(const Dataset& dataset, const std::filesystem::path& path);

/// Edge-list writer: one "from_label,to_label" line per edge, sorted.
void save_network(const Dag& dag, const std::filesystem::path& path);

/// Reads an edge list back over a fixed node universe given by `labels`.
/// Throws DataError on unknown labels, duplicate edges or cycles.
Dag load_network(const std::filesystem::path& path, const std::vector<std::string>& labels);

/// Adjacency CSV: header = labels, row i = outgoing 0/1 cells of label i.
void save_adjacency(const Dag& dag, const std::filesystem::path& path);

/// Gold-standard file: line 1 "intervention:<label>", then "<label>,<0|1>"
/// per node (1 = descendant), sorted by label.
void save_gold(const GoldStandard& gold, const std::filesystem::path& path);
GoldStandard load_gold(const std::filesystem::path& path);

/// Ground-truth parameter file: one line per node,
/// "label,intercept,noise_std[,parent_label:coef...]".
void save_ground_truth_params(const GroundTruth& truth, const std::filesystem::path& path);

/// Sidecar metadata CSV "row_index,condition,time,replicate".
void save_row_meta(const std::vector<RowMeta>& meta, const std::filesystem::path& path);

/// Samples n_obs rows from the linear-Gaussian model: nodes in topological
/// order, x_v = intercept_v + sum(coef * parent) + Normal(0, noise_std_v).
/// Deterministic for a given seed.
Dataset simulate_linear_gaussian(const GroundTruth& truth, Eigen::Index n_obs,
                                 std::uint64_t seed);

/// 20-node fixture mirroring an in-silico perturbation screen: 2 stimuli x
/// 2 concentrations x (3 inhibitors + control) = 16 conditions, 10 time
/// points, 3 replicates = 480 rows drawn i.i.d. from a random ground-truth
/// model. Condition/time/replicate land in row metadata only. The gold
/// standard marks the true descendants of the highest out-degree node.
InsilicoFixture generate_insilico_like(std::uint64_t seed);

}  // namespace bnsl

#endif  // BNSL_DATA_IO_HPP
