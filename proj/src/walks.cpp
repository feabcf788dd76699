#include "evocut/walks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "evocut/rng.hpp"

namespace evocut {

Distribution WalkOperator::step(const Distribution& p) const {
  const Graph& g = *graph_;
  std::vector<double> acc(g.vertex_count(), 0.0);
  std::vector<Vertex> touched;
  auto deposit = [&](Vertex v, double m) {
    if (acc[v] == 0.0) touched.push_back(v);
    acc[v] += m;
  };
  for (const auto& [v, m] : p.entries()) {
    if (m < 0.0) throw std::invalid_argument("negative mass in walk input");
    const double scale = lazy_ ? 0.5 : 1.0;
    if (lazy_) deposit(v, 0.5 * m);
    const double dinv = 1.0 / g.degree(v);
    for (const auto& nb : g.neighbors(v)) deposit(nb.to, scale * m * nb.weight * dinv);
  }
  std::sort(touched.begin(), touched.end());
  std::vector<std::pair<Vertex, double>> entries;
  entries.reserve(touched.size());
  for (Vertex v : touched) entries.emplace_back(v, acc[v]);
  return Distribution(std::move(entries));
}

namespace {

// y <- I_S Op I_S y, with y given on the members of S.
void restricted_step(const WalkOperator& op, const VertexSet& s,
                     const std::vector<int>& pos, std::vector<double>& y,
                     std::vector<double>& scratch) {
  const Graph& g = op.graph();
  const auto& members = s.members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    const Vertex u = members[i];
    const double scale = (op.lazy() ? 0.5 : 1.0) / g.degree(u);
    double acc = op.lazy() ? 0.5 * y[i] : 0.0;
    for (const auto& nb : g.neighbors(u)) {
      const int j = pos[nb.to];
      if (j >= 0) acc += scale * nb.weight * y[j];
    }
    scratch[i] = acc;
  }
  y.swap(scratch);
}

std::vector<int> position_index(const Graph& g, const VertexSet& s) {
  std::vector<int> pos(g.vertex_count(), -1);
  const auto& members = s.members();
  for (std::size_t i = 0; i < members.size(); ++i) pos[members[i]] = static_cast<int>(i);
  return pos;
}

}  // namespace

std::vector<double> remain_profile(const WalkOperator& op, const VertexSet& s, int t) {
  if (s.empty()) throw std::invalid_argument("remain_profile of empty set");
  if (t < 0) throw std::invalid_argument("negative step count");
  const auto pos = position_index(op.graph(), s);
  std::vector<double> y(s.size(), 1.0), scratch(s.size());
  for (int step = 0; step < t; ++step) restricted_step(op, s, pos, y, scratch);
  return y;
}

double remain_probability(const WalkOperator& op, Vertex v, int t, const VertexSet& s) {
  if (!s.contains(v)) throw std::invalid_argument("start vertex not in the set");
  const auto rem = remain_profile(op, s, t);
  const auto& members = s.members();
  const auto it = std::lower_bound(members.begin(), members.end(), v);
  return rem[static_cast<std::size_t>(it - members.begin())];
}

double expected_remain(const WalkOperator& op, const VertexSet& s, int t) {
  const auto rem = remain_profile(op, s, t);
  const Graph& g = op.graph();
  double acc = 0.0;
  const auto& members = s.members();
  for (std::size_t i = 0; i < members.size(); ++i) acc += g.degree(members[i]) * rem[i];
  return acc / s.volume();
}

VertexSet good_core(const WalkOperator& op, const VertexSet& s, int t, double c) {
  if (!(c > 0.0 && c <= 1.0)) throw std::invalid_argument("core constant must be in (0,1]");
  const double phi = conductance(op.graph(), s).phi;
  const double base = std::max(0.0, 1.0 - 1.5 * phi);
  const double threshold = c * std::pow(base, t);
  const auto rem = remain_profile(op, s, t);
  std::vector<Vertex> core;
  const auto& members = s.members();
  for (std::size_t i = 0; i < members.size(); ++i)
    if (rem[i] >= threshold) core.push_back(members[i]);
  return VertexSet(op.graph(), std::move(core));
}

std::vector<Vertex> sample_lazy_walk(const WalkOperator& op, Vertex start, int t,
                                     std::mt19937_64& rng) {
  const Graph& g = op.graph();
  if (start < 0 || start >= g.vertex_count()) throw std::invalid_argument("invalid start vertex");
  std::vector<Vertex> path;
  path.reserve(t + 1);
  path.push_back(start);
  Vertex x = start;
  for (int step = 0; step < t; ++step) {
    if (op.lazy() && canonical_unit(rng) < 0.5) {
      path.push_back(x);
      continue;
    }
    double u = canonical_unit(rng) * g.degree(x);
    Vertex next = x;
    for (const auto& nb : g.neighbors(x)) {
      if (u < nb.weight) {
        next = nb.to;
        break;
      }
      u -= nb.weight;
    }
    // Rounding at the top of the range falls back to the last neighbor.
    if (next == x) next = g.neighbors(x).back().to;
    x = next;
    path.push_back(x);
  }
  return path;
}

}  // namespace evocut
