#pragma once

#include <random>
#include <vector>

#include "evocut/graph.hpp"

namespace evocut {

// Default retention fraction under which good_core keeps a vertex.
inline constexpr double kGoodCoreConstant = 1.0 / 200.0;

/// Walk transition operator: lazy (I + D^{-1}A)/2 or plain D^{-1}A.
class WalkOperator {
 public:
  explicit WalkOperator(const Graph& g, bool lazy = true) : graph_(&g), lazy_(lazy) {}

  const Graph& graph() const { return *graph_; }
  bool lazy() const { return lazy_; }

  // One unrestricted step p' = p * Op. Mass is preserved.
  Distribution step(const Distribution& p) const;

 private:
  const Graph* graph_;
  bool lazy_;
};

inline Distribution lazy_step(const WalkOperator& op, const Distribution& p) {
  return op.step(p);
}

// rem(v,t,S) for every v in S at once, aligned with S.members(). Computed by
// t sparse restricted steps (column form of (I_S Op I_S)^t applied to 1_S).
std::vector<double> remain_profile(const WalkOperator& op, const VertexSet& s, int t);

double remain_probability(const WalkOperator& op, Vertex v, int t, const VertexSet& s);

// E_{v~pi_S} rem(v,t,S); equals 1 - phi(S)/2 exactly at t=1 for the lazy walk.
double expected_remain(const WalkOperator& op, const VertexSet& s, int t);

// {v in S : rem(v,t,S) >= c * max(0, 1 - 3 phi(S)/2)^t}. Guaranteed to carry
// at least half the volume of S at the default constant.
VertexSet good_core(const WalkOperator& op, const VertexSet& s, int t,
                    double c = kGoodCoreConstant);

// Monte Carlo lazy walk; returns the visited path X_0..X_t.
std::vector<Vertex> sample_lazy_walk(const WalkOperator& op, Vertex start, int t,
                                     std::mt19937_64& rng);

}  // namespace evocut
