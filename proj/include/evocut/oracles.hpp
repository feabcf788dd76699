#pragma once

#include "evocut/graph.hpp"

namespace evocut {

struct ProfilePoint {
  double gamma = 0.0;
  VertexSet best_set;
  double phi = 0.0;
  double volume = 0.0;
};

// Exhaustive minimum of phi over nonempty subsets of volume at most gamma.
// Gray-code enumeration with incremental boundary updates; guarded at n <= 22.
// Ties resolve by (phi, volume, lexicographically smallest member list).
ProfilePoint exact_expansion_profile(const Graph& g, double gamma);

// phi(G): the profile at gamma = mu(V)/2.
ProfilePoint exact_min_conductance(const Graph& g);

}  // namespace evocut
