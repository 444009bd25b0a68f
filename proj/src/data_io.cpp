#include "bnsl/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <system_error>

#include "bnsl/errors.hpp"
#include "bnsl/rng.hpp"

namespace bnsl {

namespace {

std::vector<std::string> split_csv_line(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

double parse_double(const std::string& field, std::size_t row, std::size_t col) {
    const char* begin = field.data();
    const char* end = begin + field.size();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw DataError("cannot parse '" + field + "' as a number at row " + std::to_string(row) +
                        ", column " + std::to_string(col));
    if (!std::isfinite(value))
        throw DataError("non-finite value at row " + std::to_string(row) + ", column " +
                        std::to_string(col));
    return value;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path.string() + "' for reading");
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);  // binary: keep '\n' on every platform
    if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
    return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw DataError("write to '" + path.string() + "' failed");
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw InternalError("format_double: to_chars failed");
    return std::string(buf, ptr);
}

Dataset load_dataset(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw DataError("'" + path.string() + "' is empty");
    const std::vector<std::string> labels = split_csv_line(std::move(line));

    std::vector<double> cells;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        const std::vector<std::string> fields = split_csv_line(std::move(line));
        if (fields.size() != labels.size())
            throw DataError("row " + std::to_string(rows) + " of '" + path.string() + "' has " +
                            std::to_string(fields.size()) + " cells, expected " +
                            std::to_string(labels.size()));
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (fields[c].empty())
                throw DataError("missing value at row " + std::to_string(rows) + ", column " +
                                std::to_string(c + 1) + " of '" + path.string() + "'");
            cells.push_back(parse_double(fields[c], rows, c + 1));
        }
    }

    Eigen::MatrixXd values(static_cast<Eigen::Index>(rows),
                           static_cast<Eigen::Index>(labels.size()));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < labels.size(); ++c)
            values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                cells[r * labels.size() + c];
    return Dataset(std::move(values), labels);
}

void save_dataset(const Dataset& dataset, const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    const auto& labels = dataset.labels();
    for (std::size_t c = 0; c < labels.size(); ++c)
        out << (c ? "," : "") << labels[c];
    out << '\n';
    const Eigen::MatrixXd& values = dataset.values();
    for (Eigen::Index r = 0; r < values.rows(); ++r) {
        for (Eigen::Index c = 0; c < values.cols(); ++c)
            out << (c ? "," : "") << format_double(values(r, c));
        out << '\n';
    }
    finish_output(out, path);
}

void save_network(const Dag& dag, const std::filesystem::path& path) {
    std::vector<std::pair<std::string, std::string>> lines;
    for (const auto& [from, to] : dag.edges())
        lines.emplace_back(dag.labels()[static_cast<std::size_t>(from)],
                           dag.labels()[static_cast<std::size_t>(to)]);
    std::sort(lines.begin(), lines.end());
    std::ofstream out = open_output(path);
    for (const auto& [from, to] : lines) out << from << ',' << to << '\n';
    finish_output(out, path);
}

Dag load_network(const std::filesystem::path& path, const std::vector<std::string>& labels) {
    validate_labels(labels);
    Dag dag(static_cast<NodeId>(labels.size()), labels);
    std::ifstream in = open_input(path);
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> fields = split_csv_line(std::move(line));
        if (fields.size() != 2)
            throw DataError("row " + std::to_string(row) + " of '" + path.string() +
                            "' is not a from,to pair");
        const NodeId from = dag.find_label(fields[0]);
        const NodeId to = dag.find_label(fields[1]);
        if (from < 0) throw DataError("unknown node '" + fields[0] + "' in '" + path.string() + "'");
        if (to < 0) throw DataError("unknown node '" + fields[1] + "' in '" + path.string() + "'");
        try {
            dag.add_edge(from, to);
        } catch (const GraphError& e) {
            throw DataError("'" + path.string() + "' row " + std::to_string(row) + ": " +
                            e.what());
        } catch (const std::invalid_argument& e) {
            throw DataError("'" + path.string() + "' row " + std::to_string(row) + ": " +
                            e.what());
        }
    }
    return dag;
}

void save_adjacency(const Dag& dag, const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    const auto& labels = dag.labels();
    for (std::size_t c = 0; c < labels.size(); ++c) out << (c ? "," : "") << labels[c];
    out << '\n';
    for (NodeId from = 0; from < dag.node_count(); ++from) {
        for (NodeId to = 0; to < dag.node_count(); ++to)
            out << (to ? "," : "") << (dag.has_edge(from, to) ? '1' : '0');
        out << '\n';
    }
    finish_output(out, path);
}

void save_gold(const GoldStandard& gold, const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    out << "intervention:" << gold.intervention_label() << '\n';
    for (const auto& [label, positive] : gold.labels())
        out << label << ',' << (positive ? '1' : '0') << '\n';
    finish_output(out, path);
}

GoldStandard load_gold(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw DataError("'" + path.string() + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    constexpr std::string_view prefix = "intervention:";
    if (line.rfind(prefix, 0) != 0)
        throw DataError("'" + path.string() + "' must start with 'intervention:<label>'");
    const std::string intervention = line.substr(prefix.size());

    std::map<std::string, bool> labels;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> fields = split_csv_line(std::move(line));
        if (fields.size() != 2 || (fields[1] != "0" && fields[1] != "1"))
            throw DataError("row " + std::to_string(row) + " of '" + path.string() +
                            "' is not '<label>,<0|1>'");
        if (!labels.emplace(fields[0], fields[1] == "1").second)
            throw DataError("duplicate label '" + fields[0] + "' in '" + path.string() + "'");
    }
    try {
        return GoldStandard(intervention, std::move(labels));
    } catch (const EvalError& e) {
        throw DataError("'" + path.string() + "': " + e.what());
    }
}

void save_ground_truth_params(const GroundTruth& truth, const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    const auto& labels = truth.dag.labels();
    for (NodeId v = 0; v < truth.dag.node_count(); ++v) {
        const auto vi = static_cast<std::size_t>(v);
        out << labels[vi] << ',' << format_double(truth.intercepts[vi]) << ','
            << format_double(truth.noise_std[vi]);
        const auto& parents = truth.dag.parents(v);
        for (std::size_t p = 0; p < parents.size(); ++p)
            out << ',' << labels[static_cast<std::size_t>(parents[p])] << ':'
                << format_double(truth.coefficients[vi][p]);
        out << '\n';
    }
    finish_output(out, path);
}

void save_row_meta(const std::vector<RowMeta>& meta, const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    out << "row_index,condition,time,replicate\n";
    for (std::size_t r = 0; r < meta.size(); ++r)
        out << r << ',' << meta[r].condition << ',' << meta[r].time << ',' << meta[r].replicate
            << '\n';
    finish_output(out, path);
}

Dataset simulate_linear_gaussian(const GroundTruth& truth, Eigen::Index n_obs,
                                 std::uint64_t seed) {
    const NodeId n = truth.dag.node_count();
    if (n_obs < 3) throw DataError("simulate_linear_gaussian: need at least 3 observations");
    if (truth.intercepts.size() != static_cast<std::size_t>(n) ||
        truth.coefficients.size() != static_cast<std::size_t>(n) ||
        truth.noise_std.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("ground truth parameter vectors do not match node count");
    for (NodeId v = 0; v < n; ++v) {
        const auto vi = static_cast<std::size_t>(v);
        if (truth.coefficients[vi].size() != truth.dag.parents(v).size())
            throw std::invalid_argument("coefficient count for node " + std::to_string(v) +
                                        " does not match its parent count");
        if (!(truth.noise_std[vi] > 0.0))
            throw std::invalid_argument("noise_std must be positive for node " +
                                        std::to_string(v));
    }

    Rng rng = make_rng(seed);
    std::normal_distribution<double> unit_normal(0.0, 1.0);
    const std::vector<NodeId> order = topological_order(truth.dag);

    Eigen::MatrixXd values(n_obs, n);
    for (Eigen::Index r = 0; r < n_obs; ++r) {
        for (NodeId v : order) {
            const auto vi = static_cast<std::size_t>(v);
            double x = truth.intercepts[vi];
            const auto& parents = truth.dag.parents(v);
            for (std::size_t p = 0; p < parents.size(); ++p)
                x += truth.coefficients[vi][p] * values(r, parents[p]);
            values(r, v) = x + truth.noise_std[vi] * unit_normal(rng);
        }
    }
    return Dataset(std::move(values), truth.dag.labels());
}

InsilicoFixture generate_insilico_like(std::uint64_t seed) {
    constexpr NodeId kNodes = 20;
    constexpr int kTimePoints = 10;
    constexpr int kReplicates = 3;
    const std::vector<std::string> stimuli = {"S1", "S2"};
    const std::vector<std::string> concentrations = {"lo", "hi"};
    const std::vector<std::string> inhibitors = {"none", "I1", "I2", "I3"};

    // Redraw until the designated intervention node has a non-trivial
    // descendant set, so the gold standard always carries both label classes.
    Dag dag(kNodes);
    NodeId intervention = 0;
    for (std::uint64_t attempt = 0;; ++attempt) {
        dag = random_dag(kNodes, 0.1, derive_seed(seed, attempt));
        intervention = 0;
        for (NodeId v = 1; v < kNodes; ++v)
            if (dag.children(v).size() > dag.children(intervention).size()) intervention = v;
        const std::size_t n_desc = descendants(dag, intervention).size();
        if (n_desc >= 1 && n_desc <= static_cast<std::size_t>(kNodes) - 2) break;
    }

    GroundTruth truth{dag, {}, {}, {}};
    Rng rng = make_rng(derive_seed(seed, 0xABCDEF));
    std::uniform_real_distribution<double> intercept_draw(-1.0, 1.0);
    std::uniform_real_distribution<double> magnitude_draw(0.7, 1.3);
    std::uniform_real_distribution<double> noise_draw(0.5, 1.0);
    std::uniform_int_distribution<int> sign_draw(0, 1);
    for (NodeId v = 0; v < kNodes; ++v) {
        truth.intercepts.push_back(intercept_draw(rng));
        truth.noise_std.push_back(noise_draw(rng));
        std::vector<double> coefs;
        for (std::size_t p = 0; p < dag.parents(v).size(); ++p)
            coefs.push_back((sign_draw(rng) ? 1.0 : -1.0) * magnitude_draw(rng));
        truth.coefficients.push_back(std::move(coefs));
    }

    const Eigen::Index n_obs = static_cast<Eigen::Index>(stimuli.size()) *
                               static_cast<Eigen::Index>(concentrations.size()) *
                               static_cast<Eigen::Index>(inhibitors.size()) * kTimePoints *
                               kReplicates;
    Dataset data = simulate_linear_gaussian(truth, n_obs, derive_seed(seed, 0x0B5E55ED));

    std::vector<RowMeta> meta;
    meta.reserve(static_cast<std::size_t>(n_obs));
    for (const auto& stimulus : stimuli)
        for (const auto& concentration : concentrations)
            for (const auto& inhibitor : inhibitors)
                for (int t = 0; t < kTimePoints; ++t)
                    for (int rep = 1; rep <= kReplicates; ++rep)
                        meta.push_back({stimulus + "_" + concentration + "_" + inhibitor, t, rep});

    std::map<std::string, bool> gold_labels;
    const auto mask = descendant_mask(dag, intervention);
    for (NodeId v = 0; v < kNodes; ++v) {
        if (v == intervention) continue;
        gold_labels[dag.labels()[static_cast<std::size_t>(v)]] =
            mask[static_cast<std::size_t>(v)] != 0;
    }
    GoldStandard gold(dag.labels()[static_cast<std::size_t>(intervention)],
                      std::move(gold_labels));

    return {std::move(truth), std::move(data), std::move(gold), std::move(meta)};
}

}  // namespace bnsl
