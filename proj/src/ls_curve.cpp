#include "evocut/ls_curve.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>

namespace evocut {

namespace {

void run_partitioned(int tasks, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, std::min(threads, tasks));
  if (threads == 1) {
    for (int i = 0; i < tasks; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < tasks; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

ThresholdSweep threshold_sweep(const Graph& g, const Distribution& p) {
  const int n = g.vertex_count();
  std::vector<double> density(n, 0.0);
  for (const auto& [v, m] : p.entries()) {
    if (m < 0.0) throw std::invalid_argument("negative mass");
    density[v] = m / g.degree(v);
  }
  ThresholdSweep sweep;
  sweep.order.resize(n);
  for (int v = 0; v < n; ++v) sweep.order[v] = v;
  std::sort(sweep.order.begin(), sweep.order.end(), [&](Vertex a, Vertex b) {
    if (density[a] != density[b]) return density[a] > density[b];
    return a < b;
  });

  sweep.prefix_volume.resize(n);
  sweep.prefix_boundary.resize(n);
  sweep.prefix_phi.resize(n);
  sweep.prefix_mass.resize(n);
  std::vector<char> in_prefix(n, 0);
  double volume = 0.0, boundary = 0.0, mass = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vertex v = sweep.order[i];
    volume += g.degree(v);
    mass += p.mass(v);
    for (const auto& nb : g.neighbors(v)) boundary += in_prefix[nb.to] ? -nb.weight : nb.weight;
    in_prefix[v] = 1;
    sweep.prefix_volume[i] = volume;
    sweep.prefix_boundary[i] = boundary;
    sweep.prefix_phi[i] = boundary / volume;
    sweep.prefix_mass[i] = mass;
  }
  return sweep;
}

LSCurve build_curve(const Graph& g, const Distribution& p) {
  const auto sweep = threshold_sweep(g, p);
  LSCurve curve;
  curve.points.emplace_back(0.0, 0.0);
  for (std::size_t i = 0; i < sweep.order.size(); ++i) {
    if (p.mass(sweep.order[i]) == 0.0) break;  // zero-density tail is flat
    curve.points.emplace_back(sweep.prefix_volume[i], sweep.prefix_mass[i]);
  }
  if (curve.points.back().first < g.total_volume())
    curve.points.emplace_back(g.total_volume(), p.total());
  return curve;
}

double evaluate_curve(const LSCurve& curve, double x) {
  if (x < 0.0 || x > curve.max_volume() * (1.0 + 1e-12))
    throw std::invalid_argument("curve argument out of range");
  x = std::min(x, curve.max_volume());
  const auto& pts = curve.points;
  auto it = std::lower_bound(pts.begin(), pts.end(), x,
                             [](const auto& pt, double v) { return pt.first < v; });
  if (it == pts.begin()) return pts.front().second;
  if (it == pts.end()) return pts.back().second;
  const auto& [x1, y1] = *(it - 1);
  const auto& [x2, y2] = *it;
  return y1 + (y2 - y1) * (x - x1) / (x2 - x1);
}

namespace {

SweepResult materialize(const Graph& g, const ThresholdSweep& sweep, int index) {
  SweepResult r;
  std::vector<Vertex> members(sweep.order.begin(), sweep.order.begin() + index + 1);
  r.set = VertexSet(g, std::move(members));
  r.phi = conductance(g, r.set).phi;  // recomputed from scratch
  r.volume = r.set.volume();
  r.threshold_index = index + 1;
  return r;
}

}  // namespace

std::optional<SweepResult> sweep_min_conductance(const Graph& g, const Distribution& p,
                                                 double volume_cap, double phi_cap) {
  if (!(volume_cap > 0.0) || !(phi_cap >= 0.0))
    throw std::invalid_argument("sweep caps must be positive");
  const auto sweep = threshold_sweep(g, p);
  const int n = g.vertex_count();
  int best = -1;
  for (int i = 0; i + 1 < n; ++i) {  // proper threshold sets only
    if (sweep.prefix_volume[i] > volume_cap || sweep.prefix_phi[i] > phi_cap) continue;
    if (best < 0 || sweep.prefix_volume[i] < sweep.prefix_volume[best]) best = i;
  }
  if (best < 0) return std::nullopt;
  return materialize(g, sweep, best);
}

ThresholdParams ThresholdParams::derive(const Graph& g, double phi, double eps) {
  if (!(phi > 0.0 && phi < 1.0)) throw std::invalid_argument("phi must be in (0,1)");
  if (!(eps > 0.0 && eps <= 0.5)) throw std::invalid_argument("eps must be in (0,1/2]");
  ThresholdParams params;
  params.phi = phi;
  params.eps = eps;
  params.horizon = std::max(1, static_cast<int>(std::ceil(eps * std::log(g.total_volume()) / phi)));
  params.volume_cap = g.total_volume();
  return params;
}

std::optional<SweepResult> threshold_algorithm(const Graph& g, double phi, double eps,
                                               const std::vector<Vertex>& seeds, int threads) {
  const auto params = ThresholdParams::derive(g, phi, eps);
  const double phi_cap = std::sqrt(2.0 * phi / eps);

  std::vector<Vertex> seed_list = seeds;
  if (seed_list.empty()) {
    seed_list.resize(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) seed_list[v] = v;
  }
  for (Vertex v : seed_list)
    if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("invalid seed vertex");

  const WalkOperator walk(g, true);
  std::vector<std::optional<SweepResult>> per_seed(seed_list.size());

  run_partitioned(static_cast<int>(seed_list.size()), threads, [&](int si) {
    const Vertex seed = seed_list[si];
    Distribution p = Distribution::point_mass(seed);
    std::optional<SweepResult> best;
    for (int t = 1; t <= params.horizon; ++t) {
      p = walk.step(p);
      auto found = sweep_min_conductance(g, p, g.total_volume() + 1.0, phi_cap);
      if (found && (!best || found->volume < best->volume)) {
        found->seed = seed;
        found->step = t;
        best = std::move(found);
      }
    }
    per_seed[si] = std::move(best);
  });

  std::optional<SweepResult> best;
  for (auto& candidate : per_seed) {
    if (!candidate) continue;
    if (!best || candidate->volume < best->volume) best = std::move(candidate);
  }
  return best;
}

CurveBoundReport curve_bound_check(const Graph& g, Vertex v, int horizon, double gamma_cap,
                                   double phi_bound) {
  if (!(phi_bound > 0.0 && phi_bound <= 0.5))
    throw std::invalid_argument("Phi must be in (0, 1/2]");
  if (!(gamma_cap > 0.0 && gamma_cap <= g.total_volume()))
    throw std::invalid_argument("Gamma must be in (0, mu(V)]");
  if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("invalid vertex");

  const WalkOperator walk(g, true);
  CurveBoundReport report;
  report.all_bounds_held = true;
  const double mu_v = g.degree(v);
  const double decay = 1.0 - phi_bound * phi_bound / 2.0;

  Distribution p = Distribution::point_mass(v);
  bool premise_chain = true;
  for (int t = 0; t <= horizon; ++t) {
    if (t > 0) p = walk.step(p);
    const auto sweep = threshold_sweep(g, p);

    bool premise = true;
    for (std::size_t i = 0; i + 1 < sweep.order.size(); ++i) {
      if (sweep.prefix_volume[i] >= gamma_cap) continue;
      if (sweep.prefix_phi[i] < phi_bound) {
        premise = false;
        break;
      }
    }
    if (!premise && premise_chain) {
      premise_chain = false;
      report.first_premise_failure = t;
    }

    const auto curve = build_curve(g, p);
    double max_excess = -1e300;
    const double factor = std::pow(decay, t);
    for (const auto& [x, y] : curve.points) {
      const double bound = x / gamma_cap + std::sqrt(x / mu_v) * factor;
      max_excess = std::max(max_excess, y - bound);
    }
    const bool bound_held = max_excess <= 1e-9;
    if (premise_chain && !bound_held) report.all_bounds_held = false;
    report.steps.push_back({t, premise, premise_chain, bound_held, max_excess});
  }
  return report;
}

namespace {

Eigen::MatrixXd normalized_adjacency(const Graph& g) {
  const int n = g.vertex_count();
  if (n > 4096) throw std::runtime_error("dense eigensolve guard exceeded (n > 4096)");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int u = 0; u < n; ++u) {
    const double su = 1.0 / std::sqrt(g.degree(u));
    for (const auto& nb : g.neighbors(u))
      m(u, nb.to) = nb.weight * su / std::sqrt(g.degree(nb.to));
  }
  return m;
}

Eigen::VectorXd normalized_spectrum(const Graph& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(normalized_adjacency(g),
                                                        Eigen::EigenvaluesOnly);
  return solver.eigenvalues();  // ascending
}

int count_above(const Eigen::VectorXd& eigenvalues, double threshold) {
  int count = 0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
    if (eigenvalues[i] > threshold) ++count;
  return count;
}

}  // namespace

int threshold_rank(const Graph& g, double eta) {
  if (!(eta > 0.0 && eta <= 2.0)) throw std::invalid_argument("eta must be in (0,2]");
  return count_above(normalized_spectrum(g), 1.0 - eta);
}

AbsCheckReport abs_structural_check(const Graph& g, double phi, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must be in (0,1]");
  if (!(phi > 0.0 && phi <= 0.5)) throw std::invalid_argument("phi must be in (0,1/2]");
  const int n = g.vertex_count();
  const auto spectrum = normalized_spectrum(g);

  AbsCheckReport report;
  report.phi_bound = std::sqrt(2.0 * phi / eps);
  report.horizon = std::max(1, static_cast<int>(std::ceil(eps * std::log(n) / phi)));

  // Largest grid point whose rank condition holds gives the strongest bound.
  for (int k = 200; k >= 1; --k) {
    const double eta = 0.01 * k;
    const int rank = count_above(spectrum, 1.0 - eta);
    if (rank >= std::pow(n, (1.0 + eps) * eta / phi)) {
      report.premise_satisfied = true;
      report.eta_star = eta;
      report.rank = rank;
      break;
    }
  }
  if (!report.premise_satisfied) return report;

  report.volume_bound = 4.0 * g.total_volume() * std::pow(n, -report.eta_star / phi);

  // Threshold sweep over the rows of the lazy operator up to the horizon.
  const WalkOperator walk(g, true);
  const double phi_cap = report.phi_bound;
  std::optional<SweepResult> best;
  for (Vertex seed = 0; seed < n; ++seed) {
    Distribution p = Distribution::point_mass(seed);
    for (int t = 1; t <= report.horizon; ++t) {
      p = walk.step(p);
      auto found = sweep_min_conductance(g, p, g.total_volume() + 1.0, phi_cap);
      if (found && (!best || found->volume < best->volume)) {
        found->seed = seed;
        found->step = t;
        best = std::move(found);
      }
    }
  }
  if (best) {
    report.conclusion_volume_ok = best->volume <= report.volume_bound + 1e-9;
    report.conclusion_phi_ok = best->phi <= report.phi_bound + 1e-12;
    report.found = std::move(best);
  }

  // Trace-claim witness: some u must return to itself after T lazy steps with
  // probability >= max{1/2n, mu(u)/2mu(V)} r (1 - eta/2)^T.
  const double factor = report.rank * std::pow(1.0 - report.eta_star / 2.0, report.horizon);
  double best_ratio = -1.0;
  for (Vertex u = 0; u < n; ++u) {
    Distribution p = Distribution::point_mass(u);
    for (int t = 0; t < report.horizon; ++t) p = walk.step(p);
    const double ret = p.mass(u);
    const double floor = std::max(0.5 / n, g.degree(u) / (2.0 * g.total_volume()));
    if (ret / floor > best_ratio) {
      best_ratio = ret / floor;
      report.witness = u;
      report.witness_return = ret;
      report.witness_bound = floor * factor;
    }
  }
  report.witness_ok = report.witness_return >= report.witness_bound - 1e-12;
  return report;
}

}  // namespace evocut
