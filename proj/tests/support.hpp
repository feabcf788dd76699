#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "evocut/graph.hpp"

namespace evocut::testing {

struct Fixture {
  std::string name;
  Graph graph;
  // named test sets, as compact vertex ids
  std::vector<std::pair<std::string, std::vector<Vertex>>> sets;
};

inline Graph k2() { return parse_edge_list(std::string("0 1\n")); }

inline Graph two_k4s() {
  std::string text;
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        text += std::to_string(4 * c + i) + " " + std::to_string(4 * c + j) + "\n";
  return parse_edge_list(text);
}

inline Graph disjoint_k4s(int count) {
  std::string text;
  for (int c = 0; c < count; ++c)
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        text += std::to_string(4 * c + i) + " " + std::to_string(4 * c + j) + "\n";
  return parse_edge_list(text);
}

// The six standard fixtures with their designated test sets.
inline std::vector<Fixture> standard_fixtures() {
  std::vector<Fixture> fixtures;
  fixtures.push_back({"K_2", k2(), {{"{0}", {0}}}});
  fixtures.push_back({"C_4",
                      make_cycle(4),
                      {{"{0}", {0}}, {"{0,1}", {0, 1}}, {"{0,1,2}", {0, 1, 2}}}});
  fixtures.push_back({"C_8",
                      make_cycle(8),
                      {{"{0}", {0}},
                       {"{0,1}", {0, 1}},
                       {"arc4", {0, 1, 2, 3}},
                       {"{0,4}", {0, 4}}}});
  fixtures.push_back({"K_4",
                      make_complete(4),
                      {{"{0}", {0}}, {"{0,1}", {0, 1}}, {"{0,1,2}", {0, 1, 2}}}});
  fixtures.push_back({"dumbbell_3",
                      make_dumbbell(3),
                      {{"side_A", {0, 1, 2}}, {"{0}", {0}}, {"{0,1}", {0, 1}}}});
  fixtures.push_back({"dumbbell_5",
                      make_dumbbell(5),
                      {{"side_A", {0, 1, 2, 3, 4}},
                       {"interiors", {0, 1, 2, 3}},
                       {"{0}", {0}}}});
  return fixtures;
}

// ---- dense matrix oracles (independent of the sparse implementation) ----

inline Eigen::MatrixXd dense_walk_matrix(const Graph& g, bool lazy) {
  const int n = g.vertex_count();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int u = 0; u < n; ++u) {
    const double scale = (lazy ? 0.5 : 1.0) / g.degree(u);
    if (lazy) m(u, u) = 0.5;
    for (const auto& nb : g.neighbors(u)) m(u, nb.to) += scale * nb.weight;
  }
  return m;
}

inline Eigen::MatrixXd dense_restricted(const Graph& g, const VertexSet& s, bool lazy) {
  const auto m = dense_walk_matrix(g, lazy);
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(m.rows(), m.cols());
  for (Vertex u : s.members())
    for (Vertex v : s.members()) r(u, v) = m(u, v);
  return r;
}

inline double oracle_remain(const Graph& g, const VertexSet& s, Vertex v, int t, bool lazy) {
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(g.vertex_count(), g.vertex_count());
  const auto r = dense_restricted(g, s, lazy);
  for (int i = 0; i < t; ++i) power = power * r;
  Eigen::VectorXd ones = Eigen::VectorXd::Zero(g.vertex_count());
  for (Vertex u : s.members()) ones(u) = 1.0;
  return power.row(v).dot(ones);
}

inline double oracle_expected_remain(const Graph& g, const VertexSet& s, int t, bool lazy) {
  double acc = 0.0;
  for (Vertex v : s.members()) acc += g.degree(v) / s.volume() * oracle_remain(g, s, v, t, lazy);
  return acc;
}

// Degree-symmetrized restricted operator P = D^{1/2} I_S Op I_S D^{-1/2}.
inline Eigen::MatrixXd dense_symmetrized(const Graph& g, const VertexSet& s, bool lazy) {
  const int n = g.vertex_count();
  const auto r = dense_restricted(g, s, lazy);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      p(u, v) = std::sqrt(g.degree(u)) * r(u, v) / std::sqrt(g.degree(v));
  return p;
}

inline Eigen::VectorXd sqrt_stationary(const Graph& g, const VertexSet& s) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(g.vertex_count());
  for (Vertex v : s.members()) x(v) = std::sqrt(g.degree(v) / s.volume());
  return x;
}

// ---- second, Eigen-free eigenvalue counter for threshold-rank checks ----

// Householder tridiagonalization of a symmetric matrix, then a Sturm-style
// LDL inertia count. Counts eigenvalues strictly above the threshold.
inline int sturm_count_above(std::vector<std::vector<double>> a, double threshold) {
  const int n = static_cast<int>(a.size());
  std::vector<double> diag(n), off(n, 0.0);
  for (int k = 0; k < n - 2; ++k) {
    double norm2 = 0.0;
    for (int i = k + 1; i < n; ++i) norm2 += a[i][k] * a[i][k];
    const double alpha = (a[k + 1][k] >= 0 ? -1.0 : 1.0) * std::sqrt(norm2);
    const double r2 = 0.5 * (alpha * alpha - a[k + 1][k] * alpha);
    if (r2 <= 0.0) continue;  // column already in shape
    std::vector<double> v(n, 0.0);
    v[k + 1] = (a[k + 1][k] - alpha) / (2.0 * std::sqrt(r2));
    for (int i = k + 2; i < n; ++i) v[i] = a[i][k] / (2.0 * std::sqrt(r2));
    // A <- (I - 2vv') A (I - 2vv')
    std::vector<double> av(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) av[i] += a[i][j] * v[j];
    double vav = 0.0;
    for (int i = 0; i < n; ++i) vav += v[i] * av[i];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        a[i][j] += -2.0 * v[i] * av[j] - 2.0 * av[i] * v[j] + 4.0 * vav * v[i] * v[j];
  }
  for (int i = 0; i < n; ++i) diag[i] = a[i][i];
  for (int i = 0; i + 1 < n; ++i) off[i] = a[i + 1][i];

  // Inertia of T - threshold I: negative pivots count eigenvalues below.
  int below = 0;
  double d = 1.0;
  for (int i = 0; i < n; ++i) {
    const double b2 = i > 0 ? off[i - 1] * off[i - 1] : 0.0;
    d = (diag[i] - threshold) - (i > 0 ? b2 / d : 0.0);
    if (d == 0.0) d = 1e-300;
    if (d < 0.0) ++below;
  }
  return n - below;
}

inline std::vector<std::vector<double>> dense_normalized_adjacency(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (int u = 0; u < n; ++u)
    for (const auto& nb : g.neighbors(u))
      m[u][nb.to] = nb.weight / std::sqrt(g.degree(u) * g.degree(nb.to));
  return m;
}

}  // namespace evocut::testing
