#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "bnsl/data_io.hpp"
#include "bnsl/errors.hpp"
#include "bnsl/genome.hpp"
#include "bnsl/search_ga.hpp"
#include "bnsl/search_local.hpp"

namespace py = pybind11;
using namespace bnsl;

namespace {

Genome genome_from_bits(NodeId n, const std::vector<int>& bits) {
    Genome g;
    g.n = n;
    g.bits.reserve(bits.size());
    for (int b : bits) {
        if (b != 0 && b != 1) throw GraphError("genome bits must be 0 or 1");
        g.bits.push_back(static_cast<std::uint8_t>(b));
    }
    return g;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Score-based Bayesian network structure learning for continuous data";

    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<GraphError>(m, "GraphError", PyExc_ValueError);
    py::register_exception<ScoreError>(m, "ScoreError", PyExc_ValueError);
    py::register_exception<EvalError>(m, "EvalError", PyExc_ValueError);

    py::enum_<ScoreKind>(m, "ScoreKind")
        .value("loglik", ScoreKind::loglik)
        .value("aic", ScoreKind::aic)
        .value("bic", ScoreKind::bic);

    py::enum_<MoveKind>(m, "MoveKind")
        .value("add", MoveKind::Add)
        .value("delete_", MoveKind::Delete)
        .value("reverse", MoveKind::Reverse);

    py::enum_<InitPolicy>(m, "InitPolicy")
        .value("mixed_default", InitPolicy::MixedDefault)
        .value("empty", InitPolicy::Empty)
        .value("random", InitPolicy::Random);

    py::enum_<CrossoverConflictPolicy>(m, "CrossoverConflictPolicy")
        .value("paper", CrossoverConflictPolicy::Paper)
        .value("swapped", CrossoverConflictPolicy::Swapped);

    py::class_<Dag>(m, "Dag")
        .def(py::init<NodeId>(), py::arg("n"))
        .def(py::init<NodeId, std::vector<std::string>>(), py::arg("n"), py::arg("labels"))
        .def_property_readonly("n", &Dag::node_count)
        .def_property_readonly("labels", &Dag::labels)
        .def("add_edge", &Dag::add_edge, py::arg("from_node"), py::arg("to_node"))
        .def("remove_edge", &Dag::remove_edge, py::arg("from_node"), py::arg("to_node"))
        .def("has_edge", &Dag::has_edge, py::arg("from_node"), py::arg("to_node"))
        .def("edges", &Dag::edges)
        .def("parents", &Dag::parents, py::arg("node"))
        .def("children", &Dag::children, py::arg("node"))
        .def(
            "descendants", [](const Dag& d, NodeId v) { return descendants(d, v); },
            py::arg("node"))
        .def("topological_order", [](const Dag& d) { return topological_order(d); })
        .def("find_label", &Dag::find_label, py::arg("label"))
        .def("__eq__", [](const Dag& a, const Dag& b) { return a == b; })
        .def("__repr__", [](const Dag& d) {
            return "<Dag n=" + std::to_string(d.node_count()) +
                   " edges=" + std::to_string(d.edge_count()) + ">";
        });

    m.def("random_dag", &random_dag, py::arg("n"), py::arg("edge_prob"), py::arg("seed"));
    m.def(
        "would_create_cycle",
        [](const Dag& d, NodeId from, NodeId to) {
            return would_create_cycle(d.index(), from, to);
        },
        py::arg("dag"), py::arg("from_node"), py::arg("to_node"));

    m.def(
        "decode",
        [](NodeId n, const std::vector<int>& bits) { return decode(genome_from_bits(n, bits)); },
        py::arg("n"), py::arg("bits"), "Decode an n*n bit vector into a Dag");
    m.def(
        "encode",
        [](const Dag& dag) {
            const Genome g = encode(dag);
            return std::vector<int>(g.bits.begin(), g.bits.end());
        },
        py::arg("dag"), "Flatten a Dag into its n*n bit vector");

    py::class_<Dataset>(m, "Dataset")
        .def(py::init<Eigen::MatrixXd, std::vector<std::string>>(), py::arg("values"),
             py::arg("labels"))
        .def_property_readonly("n_vars", &Dataset::n_vars)
        .def_property_readonly("n_obs", &Dataset::n_obs)
        .def_property_readonly("labels", &Dataset::labels)
        .def_property_readonly("values", &Dataset::values)
        .def("column", &Dataset::column, py::arg("label"))
        .def("__repr__", [](const Dataset& d) {
            return "<Dataset " + std::to_string(d.n_obs()) + "x" + std::to_string(d.n_vars()) +
                   ">";
        });

    py::class_<LinearGaussianFit>(m, "LinearGaussianFit")
        .def_readonly("intercept", &LinearGaussianFit::intercept)
        .def_readonly("coefficients", &LinearGaussianFit::coefficients)
        .def_readonly("residual_variance", &LinearGaussianFit::residual_variance);

    py::class_<Scorer>(m, "Scorer")
        .def(py::init<const Dataset&, ScoreKind, int, bool>(), py::arg("data"), py::arg("kind"),
             py::arg("max_parents") = kDefaultMaxParents, py::arg("use_cache") = true,
             py::keep_alive<1, 2>())
        .def("fit_linear_gaussian", &Scorer::fit_linear_gaussian, py::arg("node"),
             py::arg("parents"))
        .def("node_score", &Scorer::node_score, py::arg("node"), py::arg("parents"))
        .def("network_score", &Scorer::network_score, py::arg("dag"))
        .def("delta_score", &Scorer::delta_score, py::arg("dag"), py::arg("move"))
        .def_property_readonly("effective_max_parents", &Scorer::effective_max_parents)
        .def_property_readonly("cache_hits",
                               [](const Scorer& s) { return s.cache().hits(); })
        .def_property_readonly("cache_misses",
                               [](const Scorer& s) { return s.cache().misses(); });

    py::class_<Move>(m, "Move")
        .def(py::init([](MoveKind kind, NodeId from, NodeId to) {
                 return Move{kind, from, to};
             }),
             py::arg("kind"), py::arg("from_node"), py::arg("to_node"))
        .def_readonly("kind", &Move::kind)
        .def_readonly("from_node", &Move::from)
        .def_readonly("to_node", &Move::to)
        .def("__repr__", [](const Move& mv) { return "<Move " + to_string(mv) + ">"; });

    py::class_<TraceRecord>(m, "TraceRecord")
        .def_readonly("restart", &TraceRecord::restart)
        .def_readonly("iteration", &TraceRecord::iteration)
        .def_readonly("move", &TraceRecord::move)
        .def_readonly("score", &TraceRecord::score);

    py::class_<SearchTrace>(m, "SearchTrace")
        .def_readonly("records", &SearchTrace::records)
        .def_readonly("best_score", &SearchTrace::best_score)
        .def_readonly("evaluations", &SearchTrace::evaluations);

    py::class_<SearchResult>(m, "SearchResult")
        .def_readonly("best", &SearchResult::best)
        .def_readonly("best_score", &SearchResult::best_score)
        .def_readonly("trace", &SearchResult::trace)
        .def_readonly("ensemble", &SearchResult::ensemble);

    py::class_<InitConfig>(m, "InitConfig")
        .def(py::init<>())
        .def_readwrite("policy", &InitConfig::policy)
        .def_readwrite("edge_prob", &InitConfig::edge_prob);

    py::class_<HcConfig>(m, "HcConfig")
        .def(py::init<>())
        .def_readwrite("max_iterations", &HcConfig::max_iterations)
        .def_readwrite("restarts", &HcConfig::restarts)
        .def_readwrite("init", &HcConfig::init)
        .def_readwrite("seed", &HcConfig::seed);

    py::class_<TabuConfig>(m, "TabuConfig")
        .def(py::init<>())
        .def_readwrite("tenure", &TabuConfig::tenure)
        .def_readwrite("no_improve_window", &TabuConfig::no_improve_window)
        .def_readwrite("max_iterations", &TabuConfig::max_iterations)
        .def_readwrite("init", &TabuConfig::init)
        .def_readwrite("seed", &TabuConfig::seed);

    py::class_<GaConfig>(m, "GaConfig")
        .def(py::init<>())
        .def_readwrite("population_size", &GaConfig::population_size)
        .def_readwrite("generations", &GaConfig::generations)
        .def_readwrite("tournament_size", &GaConfig::tournament_size)
        .def_readwrite("crossover_rate", &GaConfig::crossover_rate)
        .def_readwrite("mutation_prob", &GaConfig::mutation_prob)
        .def_readwrite("elitism_count", &GaConfig::elitism_count)
        .def_readwrite("conflict_policy", &GaConfig::conflict_policy)
        .def_readwrite("seed", &GaConfig::seed);

    m.def(
        "crossover",
        [](const Dag& p1, const Dag& p2, std::uint64_t seed, CrossoverConflictPolicy policy) {
            Rng rng = make_rng(seed);
            auto children = crossover(Individual{p1}, Individual{p2}, rng, policy);
            return std::make_pair(std::move(children.first.dag), std::move(children.second.dag));
        },
        py::arg("p1"), py::arg("p2"), py::arg("seed"),
        py::arg("policy") = CrossoverConflictPolicy::Paper);
    m.def(
        "crossover_at_point",
        [](const Dag& p1, const Dag& p2, std::size_t point, CrossoverConflictPolicy policy) {
            auto children = crossover_at_point(Individual{p1}, Individual{p2}, point, policy);
            return std::make_pair(std::move(children.first.dag), std::move(children.second.dag));
        },
        py::arg("p1"), py::arg("p2"), py::arg("point"),
        py::arg("policy") = CrossoverConflictPolicy::Paper);
    m.def(
        "mutate",
        [](const Dag& dag, double mutation_prob, std::uint64_t seed) {
            Rng rng = make_rng(seed);
            return mutate(Individual{dag}, mutation_prob, rng).dag;
        },
        py::arg("dag"), py::arg("mutation_prob"), py::arg("seed"));

    m.def("neighborhood", &neighborhood, py::arg("dag"),
          py::arg("max_parents") = std::numeric_limits<int>::max());
    m.def("hill_climb", &hill_climb, py::arg("data"), py::arg("kind"),
          py::arg("config") = HcConfig{}, py::arg("max_parents") = kDefaultMaxParents);
    m.def("tabu_search", &tabu_search, py::arg("data"), py::arg("kind"),
          py::arg("config") = TabuConfig{}, py::arg("max_parents") = kDefaultMaxParents);
    m.def("evolve", &evolve, py::arg("data"), py::arg("kind"), py::arg("config") = GaConfig{},
          py::arg("max_parents") = kDefaultMaxParents);

    py::class_<ExhaustiveResult>(m, "ExhaustiveResult")
        .def_readonly("best", &ExhaustiveResult::best)
        .def_readonly("best_score", &ExhaustiveResult::best_score)
        .def_readonly("dags_visited", &ExhaustiveResult::dags_visited);
    m.def("exhaustive_best", &exhaustive_best, py::arg("data"), py::arg("kind"),
          py::arg("max_n") = 5, py::arg("max_parents") = kDefaultMaxParents);

    py::class_<GoldStandard>(m, "GoldStandard")
        .def(py::init<std::string, std::map<std::string, bool>>(), py::arg("intervention_label"),
             py::arg("labels"))
        .def_property_readonly("intervention_label", &GoldStandard::intervention_label)
        .def_property_readonly("labels", &GoldStandard::labels);

    py::class_<ContextResult>(m, "ContextResult")
        .def(py::init([](std::string context, std::string method, double auroc_value) {
                 return ContextResult{std::move(context), std::move(method), auroc_value};
             }),
             py::arg("context"), py::arg("method"), py::arg("auroc"))
        .def_readonly("context", &ContextResult::context)
        .def_readonly("method", &ContextResult::method)
        .def_readonly("auroc", &ContextResult::auroc);

    m.def("node_confidence", &node_confidence, py::arg("networks"), py::arg("intervention"));
    m.def("auroc", &auroc, py::arg("confidence"), py::arg("gold"));
    m.def("mean_rank", &mean_rank, py::arg("results"));
    m.def("evaluate_context", &evaluate_context, py::arg("networks"), py::arg("gold"),
          py::arg("context_id") = "", py::arg("method_id") = "");

    py::class_<GroundTruth>(m, "GroundTruth")
        .def(py::init([](Dag dag, std::vector<double> intercepts,
                         std::vector<std::vector<double>> coefficients,
                         std::vector<double> noise_std) {
                 return GroundTruth{std::move(dag), std::move(intercepts), std::move(coefficients),
                                    std::move(noise_std)};
             }),
             py::arg("dag"), py::arg("intercepts"), py::arg("coefficients"), py::arg("noise_std"))
        .def_readonly("dag", &GroundTruth::dag)
        .def_readonly("intercepts", &GroundTruth::intercepts)
        .def_readonly("coefficients", &GroundTruth::coefficients)
        .def_readonly("noise_std", &GroundTruth::noise_std);

    py::class_<RowMeta>(m, "RowMeta")
        .def_readonly("condition", &RowMeta::condition)
        .def_readonly("time", &RowMeta::time)
        .def_readonly("replicate", &RowMeta::replicate);

    py::class_<InsilicoFixture>(m, "InsilicoFixture")
        .def_readonly("truth", &InsilicoFixture::truth)
        .def_readonly("data", &InsilicoFixture::data)
        .def_readonly("gold", &InsilicoFixture::gold)
        .def_readonly("meta", &InsilicoFixture::meta);

    m.def("simulate_linear_gaussian", &simulate_linear_gaussian, py::arg("truth"),
          py::arg("n_obs"), py::arg("seed"));
    m.def("generate_insilico_like", &generate_insilico_like, py::arg("seed"));

    m.def("load_dataset", &load_dataset, py::arg("path"));
    m.def("save_dataset", &save_dataset, py::arg("dataset"), py::arg("path"));
    m.def("save_network", &save_network, py::arg("dag"), py::arg("path"));
    m.def("load_network", &load_network, py::arg("path"), py::arg("labels"));
    m.def("save_adjacency", &save_adjacency, py::arg("dag"), py::arg("path"));
    m.def("save_gold", &save_gold, py::arg("gold"), py::arg("path"));
    m.def("load_gold", &load_gold, py::arg("path"));
}
