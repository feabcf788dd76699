#include "evocut/esp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "evocut/rng.hpp"

namespace evocut {

double RetentionProfile::at(Vertex v) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), v,
                             [](const auto& e, Vertex x) { return e.first < x; });
  if (it != entries.end() && it->first == v) return it->second;
  return 0.0;
}

double RetentionProfile::support_volume(const Graph& g) const {
  double vol = 0.0;
  for (const auto& [v, q] : entries) vol += g.degree(v);
  return vol;
}

RetentionProfile retention(const Graph& g, const VertexSet& s) {
  if (s.empty()) throw std::invalid_argument("retention of empty set");
  // weight from y into S, for y in S and its neighborhood
  std::vector<Vertex> support;
  std::vector<double> into(g.vertex_count(), 0.0);
  std::vector<char> seen(g.vertex_count(), 0);
  for (Vertex v : s.members()) {
    if (!seen[v]) {
      seen[v] = 1;
      support.push_back(v);
    }
    for (const auto& nb : g.neighbors(v)) {
      into[nb.to] += nb.weight;
      if (!seen[nb.to]) {
        seen[nb.to] = 1;
        support.push_back(nb.to);
      }
    }
  }
  std::sort(support.begin(), support.end());
  RetentionProfile profile;
  profile.entries.reserve(support.size());
  for (Vertex y : support) {
    const double hold = s.contains(y) ? 0.5 : 0.0;
    const double q = hold + 0.5 * into[y] / g.degree(y);
    if (q > 0.0) profile.entries.emplace_back(y, q);
  }
  return profile;
}

VertexSet esp_step(const Graph& g, const RetentionProfile& profile, double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("threshold must be in [0,1]");
  std::vector<Vertex> members;
  for (const auto& [v, q] : profile.entries)
    if (q >= r) members.push_back(v);
  return VertexSet(g, std::move(members));
}

std::vector<std::pair<VertexSet, double>> esp_kernel(const Graph& g, const VertexSet& s) {
  if (s.empty()) return {{VertexSet(), 1.0}};
  const auto profile = retention(g, s);

  std::vector<double> levels;
  levels.reserve(profile.entries.size());
  for (const auto& [v, q] : profile.entries) levels.push_back(q);
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  if (levels.size() > 10000) throw std::runtime_error("retention profile guard exceeded");

  // R in (levels[i], levels[i-1]] selects the super-level set at levels[i-1].
  std::vector<std::pair<VertexSet, double>> kernel;
  for (std::size_t i = levels.size(); i-- > 0;) {
    const double prob = (i + 1 < levels.size()) ? levels[i] - levels[i + 1] : levels.back();
    kernel.emplace_back(esp_step(g, profile, levels[i]), prob);
  }
  const double empty_prob = 1.0 - levels.front();
  if (empty_prob > 0.0) kernel.emplace_back(VertexSet(), empty_prob);
  return kernel;
}

double growth_gauge(const Graph& g, const VertexSet& s) {
  if (s.empty()) throw std::invalid_argument("growth gauge of empty set");
  double expected_ratio = 0.0;
  for (const auto& [next, prob] : esp_kernel(g, s))
    expected_ratio += prob * std::sqrt(next.volume() / s.volume());
  return 1.0 - expected_ratio;
}

namespace {

std::pair<VertexSet, Vertex> vb_step_with_profile(const Graph& g,
                                                  const RetentionProfile& profile, Vertex x,
                                                  std::mt19937_64& rng) {
  // Lazy walk step.
  Vertex next = x;
  if (canonical_unit(rng) >= 0.5) {
    double u = canonical_unit(rng) * g.degree(x);
    for (const auto& nb : g.neighbors(x)) {
      if (u < nb.weight) {
        next = nb.to;
        break;
      }
      u -= nb.weight;
    }
    if (next == x) next = g.neighbors(x).back().to;
  }

  const double u = canonical_unit(rng) * profile.at(next);
  return {esp_step(g, profile, u), next};
}

}  // namespace

std::pair<VertexSet, Vertex> vb_step(const Graph& g, const VertexSet& s, Vertex x,
                                     std::mt19937_64& rng) {
  if (!s.contains(x)) throw std::invalid_argument("walk vertex left the current set");
  return vb_step_with_profile(g, retention(g, s), x, rng);
}

namespace {

PathStep make_step(const Graph& g, VertexSet set, double psi_prev, const PathStep* prev) {
  PathStep step;
  step.volume = set.volume();
  step.phi = conductance(g, set).phi;
  step.psi = growth_gauge(g, set);
  if (prev) {
    step.martingale =
        prev->martingale * std::sqrt(prev->volume / step.volume) / (1.0 - psi_prev);
    step.work = prev->work;
  }
  step.set = std::move(set);
  return step;
}

}  // namespace

SamplePath run_vb_esp(const Graph& g, Vertex v, int horizon, const StopPredicate& stop,
                      std::mt19937_64& rng) {
  if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
  if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("invalid start vertex");

  SamplePath path;
  VertexSet current(g, {v});
  Vertex x = v;
  path.steps.push_back(make_step(g, std::move(current), 0.0, nullptr));
  if (stop && stop(path.steps.back())) {
    path.outcome = PathOutcome::Stopped;
    return path;
  }

  for (int t = 1; t <= horizon; ++t) {
    const PathStep& prev = path.steps.back();
    const auto profile = retention(g, prev.set);
    const double support_volume = profile.support_volume(g);
    auto [next, walk] = vb_step_with_profile(g, profile, x, rng);
    x = walk;
    PathStep step = make_step(g, std::move(next), prev.psi, &prev);
    step.work += support_volume;
    path.steps.push_back(std::move(step));

    if (path.steps.back().set.size() == static_cast<std::size_t>(g.vertex_count())) {
      path.outcome = PathOutcome::Absorbed;
      return path;
    }
    if (stop && stop(path.steps.back())) {
      path.outcome = PathOutcome::Stopped;
      return path;
    }
  }
  path.outcome = PathOutcome::Horizon;
  return path;
}

int ParEspConfig::copies() const {
  const double raw = std::ceil(std::pow(gamma, eps / 2.0));
  return std::max(1, std::min(copy_cap, static_cast<int>(raw)));
}

bool ParEspConfig::copy_cap_binding() const {
  return std::ceil(std::pow(gamma, eps / 2.0)) > copy_cap;
}

int ParEspConfig::horizon() const {
  return std::max(1, static_cast<int>(std::ceil(eps * std::log(gamma) / (6.0 * phi))));
}

double ParEspConfig::stop_volume() const {
  if (stop_volume_override) return *stop_volume_override;
  return 2.0 * std::pow(gamma, 1.0 + eps / 2.0) / core_constant;
}

double ParEspConfig::stop_phi() const {
  if (stop_phi_override) return *stop_phi_override;
  return std::sqrt(200.0 * (1.0 - std::log(core_constant)) * phi / eps);
}

void ParEspConfig::validate() const {
  if (!(gamma > 1.0)) throw std::invalid_argument("gamma must exceed 1");
  if (!(phi > 0.0 && phi < 1.0)) throw std::invalid_argument("phi must be in (0,1)");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must be in (0,1)");
  if (!(core_constant > 0.0 && core_constant <= 1.0))
    throw std::invalid_argument("core constant must be in (0,1]");
  if (copy_cap < 1) throw std::invalid_argument("copy cap must be at least 1");
  if (!(stop_volume() > 0.0 && stop_phi() > 0.0))
    throw std::invalid_argument("stop thresholds must be positive");
}

ParEspResult par_esp(const Graph& g, Vertex v, const ParEspConfig& cfg) {
  cfg.validate();
  if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("invalid start vertex");

  ParEspResult result;
  result.copies = cfg.copies();
  result.copy_cap_bound = cfg.copy_cap_binding();
  result.horizon = cfg.horizon();
  result.stop_volume = cfg.stop_volume();
  result.stop_phi = cfg.stop_phi();

  const auto qualifies = [&](const PathStep& step) {
    return step.volume <= result.stop_volume && step.phi <= result.stop_phi;
  };

  result.paths.resize(result.copies);
  {
    const int tasks = result.copies;
    const int threads = std::max(1, std::min(cfg.threads, tasks));
    auto worker = [&](int first) {
      for (int i = first; i < tasks; i += threads) {
        auto rng = make_stream(cfg.seed, static_cast<std::uint64_t>(i));
        result.paths[i] = run_vb_esp(g, v, result.horizon, qualifies, rng);
      }
    };
    if (threads == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
      for (auto& th : pool) th.join();
    }
  }

  // Earliest qualifying step across copies, ties to the lowest copy index.
  int best_copy = -1;
  int best_step = -1;
  for (int i = 0; i < result.copies; ++i) {
    const auto& path = result.paths[i];
    if (path.outcome != PathOutcome::Stopped) continue;
    const int step = static_cast<int>(path.steps.size()) - 1;
    if (best_copy < 0 || step < best_step) {
      best_copy = i;
      best_step = step;
    }
  }

  // Work accounting emulates the cooperative cancellation at the global stop:
  // every copy is charged only for steps it would have taken by then.
  for (auto& path : result.paths) {
    if (best_copy >= 0) {
      const std::size_t keep = static_cast<std::size_t>(best_step) + 1;
      if (path.steps.size() > keep) path.steps.resize(keep);
    }
    result.total_work += path.steps.back().work;
  }

  if (best_copy >= 0) {
    const PathStep& hit = result.paths[best_copy].steps.back();
    CutResult cut;
    cut.set = hit.set;
    cut.volume = hit.set.volume();
    cut.phi = conductance(g, hit.set).phi;  // recomputed before reporting
    cut.provenance = {"paresp", v, best_copy, best_step};
    result.work_per_volume = result.total_work / cut.volume;
    result.cut = std::move(cut);
  }
  return result;
}

}  // namespace evocut
