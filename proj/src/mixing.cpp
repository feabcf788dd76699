#include "evocut/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "evocut/oracles.hpp"
#include "evocut/walks.hpp"

namespace evocut {

namespace {

long derive_cap(const Graph& g, double eps, long max_steps) {
  if (max_steps > 0) return max_steps;
  if (g.vertex_count() <= 22) {
    const double phi_g = exact_min_conductance(g).phi;
    if (phi_g > 0.0) {
      const double js = jerrum_sinclair_upper(g, phi_g, eps);
      return std::max<long>(16, static_cast<long>(std::ceil(10.0 * js)));
    }
  }
  return 200L * g.vertex_count() * g.vertex_count();
}

// Advances every source distribution one step and evaluates the criterion.
// rows[u] holds the distribution of the walk from u.
template <typename Criterion>
std::optional<int> mixing_search(const Graph& g, bool lazy, long cap, int threads,
                                 Criterion&& satisfied_for_source) {
  if (!g.connected()) throw std::invalid_argument("graph is disconnected; walk never mixes");
  const int n = g.vertex_count();
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  for (int u = 0; u < n; ++u) rows[u][u] = 1.0;
  std::vector<std::vector<double>> next(n, std::vector<double>(n, 0.0));
  std::vector<char> ok(n, 0);

  threads = std::max(1, std::min(threads, n));
  auto for_sources = [&](auto&& fn) {
    if (threads == 1) {
      for (int u = 0; u < n; ++u) fn(u);
      return;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (int u = w; u < n; u += threads) fn(u);
      });
    for (auto& th : pool) th.join();
  };

  for (long t = 0; t <= cap; ++t) {
    if (t > 0) {
      for_sources([&](int u) {
        auto& p = rows[u];
        auto& q = next[u];
        std::fill(q.begin(), q.end(), 0.0);
        for (int v = 0; v < n; ++v) {
          const double m = p[v];
          if (m == 0.0) continue;
          const double scale = (lazy ? 0.5 : 1.0) / g.degree(v);
          if (lazy) q[v] += 0.5 * m;
          for (const auto& nb : g.neighbors(v)) q[nb.to] += scale * m * nb.weight;
        }
        p.swap(q);
      });
    }
    for_sources([&](int u) { ok[u] = satisfied_for_source(rows[u]) ? 1 : 0; });
    if (std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; }))
      return static_cast<int>(t);
  }
  return std::nullopt;
}

}  // namespace

std::optional<int> uniform_mixing_time(const Graph& g, double eps, bool lazy, long max_steps,
                                       int threads) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("epsilon must be in (0,1)");
  if (g.vertex_count() > 4096) throw std::runtime_error("mixing guard exceeded (n > 4096)");
  const long cap = derive_cap(g, eps, max_steps);
  const double mu = g.total_volume();
  return mixing_search(g, lazy, cap, threads, [&](const std::vector<double>& p) {
    for (int v = 0; v < static_cast<int>(p.size()); ++v) {
      const double pi_v = g.degree(v) / mu;
      if (std::abs(1.0 - p[v] / pi_v) > eps) return false;
    }
    return true;
  });
}

std::optional<int> tv_mixing_time(const Graph& g, double eps, bool lazy, long max_steps,
                                  int threads) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("epsilon must be in (0,1)");
  if (g.vertex_count() > 4096) throw std::runtime_error("mixing guard exceeded (n > 4096)");
  const long cap = derive_cap(g, eps, max_steps);
  const double mu = g.total_volume();
  return mixing_search(g, lazy, cap, threads, [&](const std::vector<double>& p) {
    double dist = 0.0;
    for (int v = 0; v < static_cast<int>(p.size()); ++v)
      dist += std::abs(p[v] - g.degree(v) / mu);
    return dist <= eps;
  });
}

double mixing_lower_bound(double mu_v, double gamma, double phi_gamma) {
  if (!(gamma >= 1.0 && gamma <= mu_v / 2.0))
    throw std::invalid_argument("gamma must lie in [1, mu(V)/2]");
  if (!(phi_gamma > 0.0)) throw std::invalid_argument("phi(gamma) must be positive");
  return std::log(mu_v / (2.0 * gamma)) / phi_gamma - 2.0;
}

double jerrum_sinclair_upper(const Graph& g, double phi_g, double eps) {
  if (!(phi_g > 0.0)) throw std::invalid_argument("phi(G) must be positive");
  double min_pi = 1.0;
  for (int v = 0; v < g.vertex_count(); ++v)
    min_pi = std::min(min_pi, g.degree(v) / g.total_volume());
  return 2.0 / (phi_g * phi_g) * (std::log(1.0 / min_pi) + std::log(1.0 / eps));
}

EvenRemainReport nonlazy_even_remain_check(const Graph& g, const VertexSet& s, int t) {
  if (s.empty()) throw std::invalid_argument("empty set");
  if (t < 1) throw std::invalid_argument("t must be at least 1");
  const WalkOperator nonlazy(g, false);
  const auto rem = remain_profile(nonlazy, s, 2 * t);
  double lhs = 0.0;
  const auto& members = s.members();
  for (std::size_t i = 0; i < members.size(); ++i)
    lhs += g.degree(members[i]) / s.volume() * rem[i];
  const double phi = conductance(g, s).phi;
  EvenRemainReport report;
  report.lhs = lhs;
  report.rhs = std::pow(1.0 - phi, 2 * t);
  report.holds = report.lhs >= report.rhs - 1e-9;
  return report;
}

}  // namespace evocut
