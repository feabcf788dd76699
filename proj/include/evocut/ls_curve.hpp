#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evocut/graph.hpp"
#include "evocut/walks.hpp"

namespace evocut {

/// Piecewise-linear concave potential curve: breakpoints (cumulative volume,
/// cumulative probability) under the density ordering p(v)/d(v), starting at
/// (0,0) and ending at (mu(V), total mass).
struct LSCurve {
  std::vector<std::pair<double, double>> points;

  double max_volume() const { return points.back().first; }
  double total_mass() const { return points.back().second; }
};

LSCurve build_curve(const Graph& g, const Distribution& p);

// Linear interpolation between breakpoints; x must lie in [0, mu(V)].
double evaluate_curve(const LSCurve& curve, double x);

// Density ordering of all vertices (descending p(v)/d(v), ties by id) plus
// prefix volume/boundary/conductance per threshold set. Shared by the sweep
// operations.
struct ThresholdSweep {
  std::vector<Vertex> order;        // sigma(1..n) as 0-based positions
  std::vector<double> prefix_volume;
  std::vector<double> prefix_boundary;
  std::vector<double> prefix_phi;   // phi(T_i), entry i-1
  std::vector<double> prefix_mass;  // p(T_i)
};

ThresholdSweep threshold_sweep(const Graph& g, const Distribution& p);

struct SweepResult {
  VertexSet set;
  double phi = 0.0;
  double volume = 0.0;
  Vertex seed = -1;          // filled by threshold_algorithm
  int step = 0;              // walk length t
  int threshold_index = 0;   // i of T_i, 1-based
};

// Minimum-volume proper threshold set T_i(p) with mu(T_i) <= volume_cap and
// phi(T_i) <= phi_cap; ties broken by smallest i. Absent when none qualifies.
std::optional<SweepResult> sweep_min_conductance(const Graph& g, const Distribution& p,
                                                 double volume_cap, double phi_cap);

struct ThresholdParams {
  double phi;
  double eps;
  int horizon;       // T = ceil(eps ln mu(V) / phi)
  double volume_cap; // Gamma, <= mu(V) where used

  static ThresholdParams derive(const Graph& g, double phi, double eps);
};

// Sweeps the threshold sets of 1_v Op^t for every seed v and t = 1..T with
// conductance cap sqrt(2 phi / eps), returning the minimum-volume qualifier
// (ties: smallest seed position, then t, then i).
std::optional<SweepResult> threshold_algorithm(const Graph& g, double phi, double eps,
                                               const std::vector<Vertex>& seeds = {},
                                               int threads = 1);

struct CurveBoundStep {
  int t;
  bool premise_held;        // all proper threshold sets of volume < Gamma have phi >= Phi
  bool bound_checked;       // premise held at every t' <= t
  bool bound_held;          // curve <= x/Gamma + sqrt(x/mu(v)) (1 - Phi^2/2)^t
  double max_excess;        // largest curve - bound over breakpoints
};

struct CurveBoundReport {
  std::vector<CurveBoundStep> steps;
  std::optional<int> first_premise_failure;
  bool all_bounds_held;     // over the steps where the premise chain was intact
};

CurveBoundReport curve_bound_check(const Graph& g, Vertex v, int horizon, double gamma_cap,
                                   double phi_bound);

// Number of eigenvalues of D^{-1}A exceeding 1 - eta, with multiplicity,
// via the symmetric similarity transform. Dense solve, guarded at n <= 4096.
int threshold_rank(const Graph& g, double eta);

struct AbsCheckReport {
  bool premise_satisfied = false;
  double eta_star = 0.0;
  int rank = 0;
  int horizon = 0;
  double volume_bound = 0.0;  // 4 mu(V) n^{-eta/phi}
  double phi_bound = 0.0;     // sqrt(2 phi / eps)
  std::optional<SweepResult> found;
  bool conclusion_volume_ok = false;
  bool conclusion_phi_ok = false;
  Vertex witness = -1;
  double witness_return = 0.0;  // 1_u Op^T 1_u
  double witness_bound = 0.0;   // max{1/2n, mu(u)/2mu(V)} r (1-eta/2)^T
  bool witness_ok = false;
};

// Threshold-rank structural check: searches eta over the grid {0.01 k} for
// rank_{1-eta}(D^{-1}A) >= n^{(1+eps) eta / phi}, then verifies the promised
// small non-expanding set and the trace-claim witness.
AbsCheckReport abs_structural_check(const Graph& g, double phi, double eps);

}  // namespace evocut
