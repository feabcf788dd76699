#pragma once

#include <optional>

#include "evocut/graph.hpp"

namespace evocut {

struct MixingReport {
  double epsilon = 0.0;
  bool lazy = true;
  std::optional<int> tau_tv;
  std::optional<int> tau_uniform;
  std::optional<double> lower_bound;            // ln(mu(V)/2 gamma)/phi(gamma) - 2
  std::optional<double> jerrum_sinclair_upper;  // needs phi(G)
  std::optional<double> gamma;
  std::optional<double> phi_gamma;
};

// Smallest t with max_{u,v} |1 - P^t(u,v)/pi(v)| <= eps, by exact distribution
// propagation from every source simultaneously. Empty when the horizon cap is
// hit (periodic non-lazy chains never mix). Throws on disconnected input.
// max_steps <= 0 derives a cap of 10x the Jerrum-Sinclair bound when the
// brute-force phi(G) is within reach, else 200 n^2.
std::optional<int> uniform_mixing_time(const Graph& g, double eps, bool lazy = true,
                                       long max_steps = 0, int threads = 1);

// Same search under sum_v |P^t(u,v) - pi(v)| <= eps.
std::optional<int> tv_mixing_time(const Graph& g, double eps, bool lazy = true,
                                  long max_steps = 0, int threads = 1);

// Expansion-profile lower bound on the uniform mixing time. May be negative;
// callers clamp. phi_gamma is an input so planted values work past the
// enumeration guard.
double mixing_lower_bound(double mu_v, double gamma, double phi_gamma);

// 2/phi(G)^2 (ln 1/min pi + ln 1/eps).
double jerrum_sinclair_upper(const Graph& g, double phi_g, double eps);

struct EvenRemainReport {
  double lhs = 0.0;  // pi_S (I_S D^{-1}A I_S)^{2t} 1_S
  double rhs = 0.0;  // (1 - phi(S))^{2t}
  bool holds = false;
};

// Non-lazy remain bound at even steps.
EvenRemainReport nonlazy_even_remain_check(const Graph& g, const VertexSet& s, int t);

}  // namespace evocut
