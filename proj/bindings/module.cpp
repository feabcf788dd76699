#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "evocut/esp.hpp"
#include "evocut/graph.hpp"
#include "evocut/ls_curve.hpp"
#include "evocut/mixing.hpp"
#include "evocut/oracles.hpp"
#include "evocut/rng.hpp"
#include "evocut/verify.hpp"
#include "evocut/walks.hpp"

namespace py = pybind11;
using namespace evocut;

namespace {

VertexSet make_set(const Graph& g, const std::vector<Vertex>& members) {
  return VertexSet(g, members);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "local graph clustering via evolving sets and threshold sweeps";

  py::class_<Graph>(m, "Graph")
      .def_static("from_edges", &Graph::from_edges, py::arg("edges"),
                  "Build from (u, v, weight) triples with original ids.")
      .def_property_readonly("n", &Graph::vertex_count)
      .def_property_readonly("total_volume", &Graph::total_volume)
      .def("degree", &Graph::degree)
      .def("original_id", &Graph::original_id)
      .def("compact_id",
           [](const Graph& g, std::uint64_t id) { return g.compact_id(id); })
      .def("neighbors",
           [](const Graph& g, Vertex v) {
             std::vector<std::pair<Vertex, double>> out;
             for (const auto& nb : g.neighbors(v)) out.emplace_back(nb.to, nb.weight);
             return out;
           })
      .def("connected", &Graph::connected)
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; });

  m.def("parse_edge_list", py::overload_cast<const std::string&>(&parse_edge_list));
  m.def("write_edge_list", &write_edge_list);
  m.def("graph_digest", &graph_digest);
  m.def("make_cycle", &make_cycle);
  m.def("make_complete", &make_complete);
  m.def("make_dumbbell", &make_dumbbell);
  m.def("make_ring_of_cliques", &make_ring_of_cliques);

  py::class_<VertexSet>(m, "VertexSet")
      .def(py::init(&make_set), py::arg("graph"), py::arg("members"))
      .def_property_readonly("members", &VertexSet::members)
      .def_property_readonly("volume", &VertexSet::volume)
      .def("contains", &VertexSet::contains)
      .def("__len__", &VertexSet::size)
      .def("__eq__", [](const VertexSet& a, const VertexSet& b) { return a == b; });

  py::class_<CutStats>(m, "CutStats")
      .def_readonly("volume", &CutStats::volume)
      .def_readonly("boundary", &CutStats::boundary)
      .def_readonly("phi", &CutStats::phi);
  m.def("conductance", &conductance);
  m.def("full_vertex_set", &full_vertex_set);

  py::class_<Distribution>(m, "Distribution")
      .def(py::init<std::vector<std::pair<Vertex, double>>>())
      .def_static("point_mass", &Distribution::point_mass)
      .def_property_readonly("entries", &Distribution::entries)
      .def("mass", &Distribution::mass)
      .def_property_readonly("total", &Distribution::total);
  m.def("stationary", py::overload_cast<const Graph&, const VertexSet&>(&stationary));

  py::class_<WalkOperator>(m, "WalkOperator")
      .def(py::init<const Graph&, bool>(), py::arg("graph"), py::arg("lazy") = true,
           py::keep_alive<1, 2>())
      .def("step", &WalkOperator::step)
      .def_property_readonly("lazy", &WalkOperator::lazy);
  m.def("lazy_step", &lazy_step);
  m.def("remain_probability", &remain_probability);
  m.def("expected_remain", &expected_remain);
  m.def("good_core", &good_core, py::arg("op"), py::arg("set"), py::arg("t"),
        py::arg("c") = kGoodCoreConstant);
  m.def("sample_lazy_walk",
        [](const WalkOperator& op, Vertex v, int t, std::uint64_t seed) {
          auto rng = make_stream(seed, 0);
          return sample_lazy_walk(op, v, t, rng);
        },
        py::arg("op"), py::arg("start"), py::arg("t"), py::arg("seed"));

  py::class_<LSCurve>(m, "LSCurve")
      .def_readonly("points", &LSCurve::points)
      .def("__call__", [](const LSCurve& c, double x) { return evaluate_curve(c, x); });
  m.def("build_curve", &build_curve);
  m.def("evaluate_curve", &evaluate_curve);

  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("set", &SweepResult::set)
      .def_readonly("phi", &SweepResult::phi)
      .def_readonly("volume", &SweepResult::volume)
      .def_readonly("seed", &SweepResult::seed)
      .def_readonly("step", &SweepResult::step)
      .def_readonly("threshold_index", &SweepResult::threshold_index);
  m.def("sweep_min_conductance", &sweep_min_conductance);
  m.def("threshold_algorithm", &threshold_algorithm, py::arg("graph"), py::arg("phi"),
        py::arg("eps"), py::arg("seeds") = std::vector<Vertex>{}, py::arg("threads") = 1);
  m.def("threshold_rank", &threshold_rank);

  py::class_<AbsCheckReport>(m, "AbsCheckReport")
      .def_readonly("premise_satisfied", &AbsCheckReport::premise_satisfied)
      .def_readonly("eta", &AbsCheckReport::eta_star)
      .def_readonly("rank", &AbsCheckReport::rank)
      .def_readonly("horizon", &AbsCheckReport::horizon)
      .def_readonly("volume_bound", &AbsCheckReport::volume_bound)
      .def_readonly("phi_bound", &AbsCheckReport::phi_bound)
      .def_readonly("found", &AbsCheckReport::found)
      .def_readonly("conclusion_volume_ok", &AbsCheckReport::conclusion_volume_ok)
      .def_readonly("conclusion_phi_ok", &AbsCheckReport::conclusion_phi_ok)
      .def_readonly("witness", &AbsCheckReport::witness)
      .def_readonly("witness_return", &AbsCheckReport::witness_return)
      .def_readonly("witness_bound", &AbsCheckReport::witness_bound)
      .def_readonly("witness_ok", &AbsCheckReport::witness_ok);
  m.def("abs_structural_check", &abs_structural_check);

  py::class_<RetentionProfile>(m, "RetentionProfile")
      .def_readonly("entries", &RetentionProfile::entries)
      .def("at", &RetentionProfile::at);
  m.def("retention", &retention);
  m.def("esp_step", &esp_step);
  m.def("esp_kernel", &esp_kernel);
  m.def("growth_gauge", &growth_gauge);
  m.def("vb_step",
        [](const Graph& g, const VertexSet& s, Vertex x, std::uint64_t seed) {
          auto rng = make_stream(seed, 0);
          return vb_step(g, s, x, rng);
        },
        py::arg("graph"), py::arg("set"), py::arg("x"), py::arg("seed"));

  py::class_<PathStep>(m, "PathStep")
      .def_readonly("set", &PathStep::set)
      .def_readonly("volume", &PathStep::volume)
      .def_readonly("phi", &PathStep::phi)
      .def_readonly("psi", &PathStep::psi)
      .def_readonly("martingale", &PathStep::martingale)
      .def_readonly("work", &PathStep::work);

  py::enum_<PathOutcome>(m, "PathOutcome")
      .value("HORIZON", PathOutcome::Horizon)
      .value("STOPPED", PathOutcome::Stopped)
      .value("ABSORBED", PathOutcome::Absorbed);

  py::class_<SamplePath>(m, "SamplePath")
      .def_readonly("steps", &SamplePath::steps)
      .def_readonly("outcome", &SamplePath::outcome);
  m.def("run_vb_esp",
        [](const Graph& g, Vertex v, int horizon, const StopPredicate& stop,
           std::uint64_t seed) {
          auto rng = make_stream(seed, 0);
          return run_vb_esp(g, v, horizon, stop, rng);
        },
        py::arg("graph"), py::arg("start"), py::arg("horizon"), py::arg("stop"),
        py::arg("seed"));

  py::class_<ParEspConfig>(m, "ParEspConfig")
      .def(py::init<>())
      .def_readwrite("gamma", &ParEspConfig::gamma)
      .def_readwrite("phi", &ParEspConfig::phi)
      .def_readwrite("eps", &ParEspConfig::eps)
      .def_readwrite("core_constant", &ParEspConfig::core_constant)
      .def_readwrite("copy_cap", &ParEspConfig::copy_cap)
      .def_readwrite("seed", &ParEspConfig::seed)
      .def_readwrite("threads", &ParEspConfig::threads)
      .def_readwrite("stop_volume_override", &ParEspConfig::stop_volume_override)
      .def_readwrite("stop_phi_override", &ParEspConfig::stop_phi_override)
      .def_property_readonly("copies", &ParEspConfig::copies)
      .def_property_readonly("horizon", &ParEspConfig::horizon)
      .def_property_readonly("stop_volume", &ParEspConfig::stop_volume)
      .def_property_readonly("stop_phi", &ParEspConfig::stop_phi);

  py::class_<CutProvenance>(m, "CutProvenance")
      .def_readonly("algorithm", &CutProvenance::algorithm)
      .def_readonly("start", &CutProvenance::start)
      .def_readonly("copy", &CutProvenance::copy)
      .def_readonly("step", &CutProvenance::step);

  py::class_<CutResult>(m, "CutResult")
      .def_readonly("set", &CutResult::set)
      .def_readonly("phi", &CutResult::phi)
      .def_readonly("volume", &CutResult::volume)
      .def_readonly("provenance", &CutResult::provenance);

  py::class_<ParEspResult>(m, "ParEspResult")
      .def_readonly("cut", &ParEspResult::cut)
      .def_readonly("total_work", &ParEspResult::total_work)
      .def_readonly("work_per_volume", &ParEspResult::work_per_volume)
      .def_readonly("copies", &ParEspResult::copies)
      .def_readonly("copy_cap_bound", &ParEspResult::copy_cap_bound)
      .def_readonly("horizon", &ParEspResult::horizon)
      .def_readonly("stop_volume", &ParEspResult::stop_volume)
      .def_readonly("stop_phi", &ParEspResult::stop_phi)
      .def_readonly("paths", &ParEspResult::paths);
  m.def("par_esp", &par_esp);

  m.def("uniform_mixing_time", &uniform_mixing_time, py::arg("graph"), py::arg("eps"),
        py::arg("lazy") = true, py::arg("max_steps") = 0, py::arg("threads") = 1);
  m.def("tv_mixing_time", &tv_mixing_time, py::arg("graph"), py::arg("eps"),
        py::arg("lazy") = true, py::arg("max_steps") = 0, py::arg("threads") = 1);
  m.def("mixing_lower_bound", &mixing_lower_bound);
  m.def("jerrum_sinclair_upper", &jerrum_sinclair_upper);

  py::class_<EvenRemainReport>(m, "EvenRemainReport")
      .def_readonly("lhs", &EvenRemainReport::lhs)
      .def_readonly("rhs", &EvenRemainReport::rhs)
      .def_readonly("holds", &EvenRemainReport::holds);
  m.def("nonlazy_even_remain_check", &nonlazy_even_remain_check);

  py::class_<ProfilePoint>(m, "ProfilePoint")
      .def_readonly("gamma", &ProfilePoint::gamma)
      .def_readonly("best_set", &ProfilePoint::best_set)
      .def_readonly("phi", &ProfilePoint::phi)
      .def_readonly("volume", &ProfilePoint::volume);
  m.def("exact_expansion_profile", &exact_expansion_profile);
  m.def("exact_min_conductance", &exact_min_conductance);

  py::class_<CheckResult>(m, "CheckResult")
      .def_readonly("name", &CheckResult::name)
      .def_readonly("pass_", &CheckResult::pass)
      .def_readonly("detail", &CheckResult::detail);
  py::class_<VerifyReport>(m, "VerifyReport")
      .def_readonly("checks", &VerifyReport::checks)
      .def("all_pass", &VerifyReport::all_pass);
  m.def("run_verify_suite", &run_verify_suite);

#ifdef EVOCUT_VERSION
  m.attr("__version__") = EVOCUT_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
