#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "evocut/esp.hpp"
#include "evocut/graph.hpp"
#include "evocut/json_io.hpp"
#include "evocut/ls_curve.hpp"
#include "evocut/mixing.hpp"
#include "evocut/oracles.hpp"
#include "evocut/verify.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitVerifyFailed = 3;

using evocut::Json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

evocut::Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open graph file '" + path + "'");
  try {
    return evocut::parse_edge_list(in);
  } catch (const std::exception& e) {
    throw IoError(path + ": " + e.what());
  }
}

evocut::Vertex resolve_vertex(const evocut::Graph& g, std::uint64_t original) {
  auto v = g.compact_id(original);
  if (!v) throw std::invalid_argument("vertex " + std::to_string(original) + " not in graph");
  return *v;
}

Json payload_header(const std::string& command) {
  Json out = Json::object();
  out["schema"] = 1;
  out["command"] = command;
  return out;
}

void emit(const Json& payload, bool json_mode, const std::string& human) {
  if (json_mode)
    std::cout << payload.dump() << "\n";
  else
    std::cout << human;
}

void write_manifest(const std::string& path, const std::string& command, const Json& argv,
                    const Json& parameters, std::optional<std::uint64_t> seed,
                    const std::string& digest, double wall_seconds, const Json& payload) {
  Json manifest = Json::object();
  manifest["schema"] = 1;
  manifest["manifest"] = {{"command", command},
                          {"argv", argv},
                          {"parameters", parameters},
                          {"seed", seed ? Json(*seed) : Json(nullptr)},
                          {"graph_digest", digest},
                          {"version", kVersion},
                          {"wall_time_seconds", wall_seconds}};
  manifest["result"] = payload;
  std::ofstream out(path);
  if (!out) throw IoError("cannot write manifest '" + path + "'");
  out << manifest.dump(2) << "\n";
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace

int main(int argc, char** argv) {
  Json argv_json = Json::array();
  for (int i = 0; i < argc; ++i) argv_json.push_back(argv[i]);

  CLI::App app{"local graph clustering via evolving sets and threshold sweeps"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a fixture graph as a canonical edge list");
  std::string gen_kind;
  int gen_n = 0, gen_k = 0, gen_r = 0;
  std::string gen_output;
  bool gen_json = false;
  gen->add_option("kind", gen_kind, "cycle|complete|dumbbell|ring_of_cliques")->required();
  gen->add_option("--n", gen_n, "vertex count (cycle, complete)");
  gen->add_option("--k", gen_k, "clique size (dumbbell, ring_of_cliques)");
  gen->add_option("--r", gen_r, "ring length (ring_of_cliques)");
  gen->add_option("-o,--output", gen_output, "output edge-list path")->required();
  gen->add_flag("--json", gen_json, "structured output");

  // profile
  auto* profile = app.add_subcommand("profile", "expansion-profile threshold sweep");
  std::string profile_graph;
  double profile_phi = 0.0, profile_eps = 0.0;
  std::vector<std::uint64_t> profile_seeds;
  int profile_threads = 1;
  bool profile_json = false;
  std::string profile_manifest;
  profile->add_option("--graph", profile_graph, "edge-list file")->required();
  profile->add_option("--phi", profile_phi, "target conductance in (0,1)")->required();
  profile->add_option("--eps", profile_eps, "epsilon in (0,1/2)")->required();
  profile->add_option("--seeds", profile_seeds, "restrict sweep seeds (original ids)");
  profile->add_option("--threads", profile_threads, "worker cap");
  profile->add_flag("--json", profile_json, "structured output");
  profile->add_option("--manifest", profile_manifest, "write a run manifest");

  // cluster
  auto* cluster = app.add_subcommand("cluster", "local clustering via parallel evolving sets");
  std::string cluster_graph;
  std::uint64_t cluster_start = 0;
  double cluster_gamma = 0.0, cluster_phi = 0.0, cluster_eps = 0.5;
  std::uint64_t cluster_seed = 0;
  int cluster_threads = 1, cluster_copy_cap = 64;
  double cluster_stop_phi = -1.0, cluster_stop_volume = -1.0;
  std::string cluster_trace, cluster_manifest;
  bool cluster_json = false;
  cluster->add_option("--graph", cluster_graph, "edge-list file")->required();
  cluster->add_option("--start", cluster_start, "start vertex (original id)")->required();
  cluster->add_option("--gamma", cluster_gamma, "target volume")->required();
  cluster->add_option("--phi", cluster_phi, "target conductance")->required();
  cluster->add_option("--eps", cluster_eps, "epsilon in (0,1)");
  cluster->add_option("--seed", cluster_seed, "base RNG seed (required; no entropy default)")
      ->required();
  cluster->add_option("--copies-cap", cluster_copy_cap, "hard cap on parallel copies");
  cluster->add_option("--stop-phi", cluster_stop_phi, "override stop conductance");
  cluster->add_option("--stop-volume", cluster_stop_volume, "override stop volume");
  cluster->add_option("--threads", cluster_threads, "worker cap");
  cluster->add_option("--trace", cluster_trace, "write per-step NDJSON trace");
  cluster->add_option("--manifest", cluster_manifest, "write a run manifest");
  cluster->add_flag("--json", cluster_json, "structured output");

  // curve
  auto* curve = app.add_subcommand("curve", "per-step Lovasz-Simonovits breakpoints");
  std::string curve_graph;
  std::uint64_t curve_start = 0;
  int curve_steps = 10;
  bool curve_json = false;
  curve->add_option("--graph", curve_graph, "edge-list file")->required();
  curve->add_option("--start", curve_start, "start vertex (original id)")->required();
  curve->add_option("--steps", curve_steps, "walk steps");
  curve->add_flag("--json", curve_json, "structured output");

  // mixing
  auto* mixing = app.add_subcommand("mixing", "brute-force mixing times and bounds");
  std::string mixing_graph;
  double mixing_eps = 0.5;
  bool mixing_nonlazy = false, mixing_json = false;
  double mixing_gamma = -1.0, mixing_phi_gamma = -1.0;
  int mixing_threads = 1;
  mixing->add_option("--graph", mixing_graph, "edge-list file")->required();
  mixing->add_option("--epsilon", mixing_eps, "mixing tolerance")->required();
  mixing->add_flag("--non-lazy", mixing_nonlazy, "use D^-1 A instead of the lazy operator");
  mixing->add_option("--gamma", mixing_gamma, "volume bound for the lower bound");
  mixing->add_option("--phi-gamma", mixing_phi_gamma, "planted phi(gamma), else enumerated");
  mixing->add_option("--threads", mixing_threads, "worker cap");
  mixing->add_flag("--json", mixing_json, "structured output");

  // verify
  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  std::string verify_graph, verify_suite = "all";
  bool verify_json = false;
  verify->add_option("--graph", verify_graph, "edge-list file")->required();
  verify->add_option("--suite", verify_suite, "graph|walks|curve|esp|mixing|all");
  verify->add_flag("--json", verify_json, "structured output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (gen->parsed()) {
      evocut::Graph g;
      if (gen_kind == "cycle") {
        g = evocut::make_cycle(gen_n);
      } else if (gen_kind == "complete") {
        g = evocut::make_complete(gen_n);
      } else if (gen_kind == "dumbbell") {
        g = evocut::make_dumbbell(gen_k);
      } else if (gen_kind == "ring_of_cliques") {
        g = evocut::make_ring_of_cliques(gen_r, gen_k);
      } else {
        throw std::invalid_argument("unknown kind '" + gen_kind + "'");
      }
      std::ofstream out(gen_output);
      if (!out) throw IoError("cannot write '" + gen_output + "'");
      out << evocut::write_edge_list(g);
      Json payload = payload_header("gen");
      payload["kind"] = gen_kind;
      payload["n"] = g.vertex_count();
      payload["volume"] = g.total_volume();
      payload["digest"] = evocut::graph_digest(g);
      payload["output"] = gen_output;
      emit(payload, gen_json,
           "wrote " + gen_output + ": n=" + std::to_string(g.vertex_count()) +
               " volume=" + std::to_string(g.total_volume()) + "\n");
      return 0;
    }

    if (profile->parsed()) {
      Timer timer;
      const auto g = load_graph(profile_graph);
      if (profile_eps > 0.25)
        std::cerr << "warning: eps > 1/4 weakens the volume guarantee constants\n";
      std::vector<evocut::Vertex> seeds;
      for (auto id : profile_seeds) seeds.push_back(resolve_vertex(g, id));
      const auto result =
          evocut::threshold_algorithm(g, profile_phi, profile_eps, seeds, profile_threads);
      Json payload = payload_header("profile");
      payload["graph"] = {{"n", g.vertex_count()},
                          {"volume", g.total_volume()},
                          {"digest", evocut::graph_digest(g)}};
      payload["params"] = {{"phi", profile_phi},
                           {"eps", profile_eps},
                           {"phi_cap", std::sqrt(2.0 * profile_phi / profile_eps)}};
      payload["found"] = result.has_value();
      if (result) payload["result"] = evocut::sweep_result_to_json(g, *result);
      std::string human = result ? "found set of volume " + std::to_string(result->volume) +
                                       " with phi " + std::to_string(result->phi) + "\n"
                                 : "no threshold set met the conductance cap\n";
      emit(payload, profile_json, human);
      if (!profile_manifest.empty())
        write_manifest(profile_manifest, "profile", argv_json, payload["params"], std::nullopt,
                       payload["graph"]["digest"], timer.seconds(), payload);
      return 0;
    }

    if (cluster->parsed()) {
      Timer timer;
      const auto g = load_graph(cluster_graph);
      evocut::ParEspConfig cfg;
      cfg.gamma = cluster_gamma;
      cfg.phi = cluster_phi;
      cfg.eps = cluster_eps;
      cfg.seed = cluster_seed;
      cfg.threads = cluster_threads;
      cfg.copy_cap = cluster_copy_cap;
      if (cluster_stop_phi > 0.0) cfg.stop_phi_override = cluster_stop_phi;
      if (cluster_stop_volume > 0.0) cfg.stop_volume_override = cluster_stop_volume;
      const auto start = resolve_vertex(g, cluster_start);
      const auto result = evocut::par_esp(g, start, cfg);

      Json payload = payload_header("cluster");
      payload["graph"] = {{"n", g.vertex_count()},
                          {"volume", g.total_volume()},
                          {"digest", evocut::graph_digest(g)}};
      payload["params"] = {{"start", cluster_start},
                           {"gamma", cfg.gamma},
                           {"phi", cfg.phi},
                           {"eps", cfg.eps},
                           {"seed", cfg.seed},
                           {"copies", result.copies},
                           {"copy_cap_bound", result.copy_cap_bound},
                           {"horizon", result.horizon},
                           {"stop_phi", result.stop_phi},
                           {"stop_volume", result.stop_volume}};
      payload["found"] = result.cut.has_value();
      if (result.cut) payload["result"] = evocut::cut_result_to_json(g, *result.cut);
      payload["work"] = {{"total", result.total_work},
                         {"per_volume", result.cut ? Json(result.work_per_volume) : Json(nullptr)}};
      std::string human =
          result.cut ? "found set of volume " + std::to_string(result.cut->volume) + " with phi " +
                           std::to_string(result.cut->phi) + " (copy " +
                           std::to_string(result.cut->provenance.copy) + ", step " +
                           std::to_string(result.cut->provenance.step) + ")\n"
                     : "no qualifying set within the horizon\n";
      emit(payload, cluster_json, human);

      if (!cluster_trace.empty()) {
        std::ofstream trace(cluster_trace);
        if (!trace) throw IoError("cannot write trace '" + cluster_trace + "'");
        for (std::size_t copy = 0; copy < result.paths.size(); ++copy) {
          const auto& path = result.paths[copy];
          for (std::size_t t = 0; t < path.steps.size(); ++t) {
            Json line = evocut::path_step_to_json(g, path.steps[t]);
            line["copy"] = copy;
            line["t"] = t;
            trace << line.dump() << "\n";
          }
        }
      }
      if (!cluster_manifest.empty())
        write_manifest(cluster_manifest, "cluster", argv_json, payload["params"], cluster_seed,
                       payload["graph"]["digest"], timer.seconds(), payload);
      return 0;
    }

    if (curve->parsed()) {
      const auto g = load_graph(curve_graph);
      if (curve_steps < 0) throw std::invalid_argument("steps must be nonnegative");
      const auto start = resolve_vertex(g, curve_start);
      const evocut::WalkOperator walk(g, true);
      Json steps = Json::array();
      evocut::Distribution p = evocut::Distribution::point_mass(start);
      std::string human;
      for (int t = 0; t <= curve_steps; ++t) {
        if (t > 0) p = walk.step(p);
        const auto c = evocut::build_curve(g, p);
        steps.push_back({{"t", t},
                         {"breakpoints", evocut::curve_to_json(c)},
                         {"distribution", evocut::distribution_to_json(g, p)}});
        human += "t=" + std::to_string(t) + ": " + std::to_string(c.points.size()) +
                 " breakpoints, I(p, mu/2) = " +
                 std::to_string(evocut::evaluate_curve(c, g.total_volume() / 2.0)) + "\n";
      }
      Json payload = payload_header("curve");
      payload["start"] = curve_start;
      payload["steps"] = std::move(steps);
      emit(payload, curve_json, human);
      return 0;
    }

    if (mixing->parsed()) {
      const auto g = load_graph(mixing_graph);
      evocut::MixingReport report;
      report.epsilon = mixing_eps;
      report.lazy = !mixing_nonlazy;
      report.tau_uniform =
          evocut::uniform_mixing_time(g, mixing_eps, report.lazy, 0, mixing_threads);
      report.tau_tv = evocut::tv_mixing_time(g, mixing_eps, report.lazy, 0, mixing_threads);

      double gamma = mixing_gamma > 0.0 ? mixing_gamma : g.total_volume() / 4.0;
      if (gamma >= 1.0 && gamma <= g.total_volume() / 2.0) {
        std::optional<double> phi_gamma;
        if (mixing_phi_gamma > 0.0)
          phi_gamma = mixing_phi_gamma;
        else if (g.vertex_count() <= 22)
          phi_gamma = evocut::exact_expansion_profile(g, gamma).phi;
        if (phi_gamma && *phi_gamma > 0.0) {
          report.gamma = gamma;
          report.phi_gamma = phi_gamma;
          report.lower_bound = evocut::mixing_lower_bound(g.total_volume(), gamma, *phi_gamma);
        }
      }
      if (g.vertex_count() <= 22) {
        const auto opt = evocut::exact_min_conductance(g);
        if (opt.phi > 0.0)
          report.jerrum_sinclair_upper = evocut::jerrum_sinclair_upper(g, opt.phi, mixing_eps);
      }
      Json payload = payload_header("mixing");
      payload.update(evocut::mixing_report_to_json(report));
      std::string human =
          "tau_uniform " +
          (report.tau_uniform ? std::to_string(*report.tau_uniform) : std::string("never")) +
          ", tau_tv " + (report.tau_tv ? std::to_string(*report.tau_tv) : std::string("never")) +
          "\n";
      emit(payload, mixing_json, human);
      return 0;
    }

    if (verify->parsed()) {
      const auto g = load_graph(verify_graph);
      const auto report = evocut::run_verify_suite(g, verify_suite);
      Json checks = Json::array();
      for (const auto& check : report.checks)
        checks.push_back({{"name", check.name}, {"pass", check.pass}, {"detail", check.detail}});
      Json payload = payload_header("verify");
      payload["suite"] = verify_suite;
      payload["passed"] = report.all_pass();
      payload["checks"] = std::move(checks);
      std::string human;
      for (const auto& check : report.checks)
        human += std::string(check.pass ? "[pass] " : "[FAIL] ") + check.name +
                 (check.detail.empty() ? "" : " (" + check.detail + ")") + "\n";
      emit(payload, verify_json, human);
      return report.all_pass() ? 0 : kExitVerifyFailed;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
