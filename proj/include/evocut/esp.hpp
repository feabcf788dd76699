#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "evocut/graph.hpp"
#include "evocut/walks.hpp"

namespace evocut {

/// One-step hitting probabilities into the current set: q(y) = P_y[X_1 in S]
/// for y in S union N(S). q >= 1/2 inside S, <= 1/2 outside.
struct RetentionProfile {
  std::vector<std::pair<Vertex, double>> entries;  // sorted by vertex, q > 0

  double at(Vertex v) const;
  double support_volume(const Graph& g) const;
};

RetentionProfile retention(const Graph& g, const VertexSet& s);

// Super-level set {u : q(u) >= R} for a fixed threshold R in [0,1].
VertexSet esp_step(const Graph& g, const RetentionProfile& profile, double r);

// Exact transition kernel of the evolving set process, from the intervals
// between consecutive distinct q-values. Ordered by descending volume, the
// empty outcome last. Probabilities sum to 1.
std::vector<std::pair<VertexSet, double>> esp_kernel(const Graph& g, const VertexSet& s);

// psi(S) = 1 - sum_{S'} K(S,S') sqrt(mu(S')/mu(S)); at least phi(S)^2/8.
double growth_gauge(const Graph& g, const VertexSet& s);

// One coupled volume-biased step: advance the lazy walk X -> X', draw U
// uniform on [0, q(X')] and take the super-level set at U. The walk stays
// inside the new set; the set marginal is the volume-biased kernel.
std::pair<VertexSet, Vertex> vb_step(const Graph& g, const VertexSet& s, Vertex x,
                                     std::mt19937_64& rng);

struct PathStep {
  VertexSet set;
  double volume = 0.0;
  double phi = 0.0;
  double psi = 0.0;
  double martingale = 1.0;  // sqrt(mu(S_0)/mu(S_t)) prod_{i<t} 1/(1-psi(S_i))
  double work = 0.0;        // cumulative retention-support volume touched
};

enum class PathOutcome { Horizon, Stopped, Absorbed };

struct SamplePath {
  std::vector<PathStep> steps;
  PathOutcome outcome = PathOutcome::Horizon;
};

using StopPredicate = std::function<bool(const PathStep&)>;

// Volume-biased evolving set process from S_0 = {v}, for at most T steps,
// stopping early when the predicate fires; absorption at V ends the run.
SamplePath run_vb_esp(const Graph& g, Vertex v, int horizon, const StopPredicate& stop,
                      std::mt19937_64& rng);

struct ParEspConfig {
  double gamma = 0.0;  // target volume
  double phi = 0.0;    // target conductance
  double eps = 0.5;
  double core_constant = kGoodCoreConstant;
  int copy_cap = 64;
  std::uint64_t seed = 0;
  int threads = 1;
  std::optional<double> stop_volume_override;
  std::optional<double> stop_phi_override;

  int copies() const;         // min(ceil(gamma^{eps/2}), copy_cap)
  bool copy_cap_binding() const;
  int horizon() const;        // ceil(eps ln gamma / (6 phi))
  double stop_volume() const; // 2 gamma^{1+eps/2} / c unless overridden
  double stop_phi() const;    // sqrt(200 (1 - ln c) phi / eps) unless overridden
  void validate() const;
};

struct CutProvenance {
  std::string algorithm;
  Vertex start = -1;
  int copy = -1;
  int step = -1;
};

struct CutResult {
  VertexSet set;
  double phi = 0.0;
  double volume = 0.0;
  CutProvenance provenance;
};

struct ParEspResult {
  std::optional<CutResult> cut;
  double total_work = 0.0;
  double work_per_volume = 0.0;  // total work / output volume when found
  int copies = 0;
  bool copy_cap_bound = false;
  int horizon = 0;
  double stop_volume = 0.0;
  double stop_phi = 0.0;
  std::vector<SamplePath> paths;  // per copy, truncated at the global stop
};

// Runs independent volume-biased ESP copies from {v} with deterministic
// per-copy streams, stopping globally at the earliest qualifying observation
// (mu <= stop_volume and phi <= stop_phi); ties go to the lowest copy index.
ParEspResult par_esp(const Graph& g, Vertex v, const ParEspConfig& cfg);

}  // namespace evocut
