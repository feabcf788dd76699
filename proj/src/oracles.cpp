#include "evocut/oracles.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>

namespace evocut {

namespace {

// Lexicographic order on the sorted member lists of two subset masks.
bool lex_less(std::uint32_t a, std::uint32_t b) {
  if (a == b) return false;
  const int d = std::countr_zero(a ^ b);
  if (b & (1u << d)) return (a >> (d + 1)) == 0;  // a is a prefix of b, or b leads with d
  return (b >> (d + 1)) != 0;
}

}  // namespace

ProfilePoint exact_expansion_profile(const Graph& g, double gamma) {
  const int n = g.vertex_count();
  if (n > 22) throw std::runtime_error("subset enumeration guard exceeded (n > 22)");
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");

  double volume = 0.0, boundary = 0.0;
  std::uint32_t mask = 0;
  bool have_best = false;
  double best_phi = 0.0, best_volume = 0.0;
  std::uint32_t best_mask = 0;

  const std::uint64_t limit = 1ull << n;
  for (std::uint64_t code = 1; code < limit; ++code) {
    const int flip = std::countr_zero(code);
    const std::uint32_t bit = 1u << flip;
    const bool adding = !(mask & bit);
    const double sign = adding ? 1.0 : -1.0;
    volume += sign * g.degree(flip);
    for (const auto& nb : g.neighbors(flip))
      boundary += sign * ((mask >> nb.to) & 1u ? -nb.weight : nb.weight);
    mask ^= bit;

    if (volume > gamma) continue;
    const double phi = boundary / volume;
    if (!have_best || phi < best_phi ||
        (phi == best_phi && (volume < best_volume ||
                             (volume == best_volume && lex_less(mask, best_mask))))) {
      have_best = true;
      best_phi = phi;
      best_volume = volume;
      best_mask = mask;
    }
  }
  if (!have_best) throw std::runtime_error("no nonempty set fits the volume bound");

  std::vector<Vertex> members;
  for (int v = 0; v < n; ++v)
    if (best_mask & (1u << v)) members.push_back(v);
  ProfilePoint point;
  point.gamma = gamma;
  point.best_set = VertexSet(g, std::move(members));
  point.phi = best_phi;
  point.volume = best_volume;
  return point;
}

ProfilePoint exact_min_conductance(const Graph& g) {
  return exact_expansion_profile(g, g.total_volume() / 2.0);
}

}  // namespace evocut
