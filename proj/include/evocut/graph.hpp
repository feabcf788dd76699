#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace evocut {

using Vertex = std::int32_t;

struct Neighbor {
  Vertex to;
  double weight;
};

/// Immutable weighted undirected graph in compressed adjacency form.
/// Vertex ids are compacted to 0..n-1; the original ids are retained for
/// output. Weights are positive; self-loops are rejected (the walk operator
/// models laziness itself) and duplicate edges are an input error.
class Graph {
 public:
  Graph() = default;

  // Edges carry original (possibly sparse) ids and are symmetrized here.
  static Graph from_edges(
      const std::vector<std::tuple<std::uint64_t, std::uint64_t, double>>& edges);

  int vertex_count() const { return static_cast<int>(degree_.size()); }
  std::span<const Neighbor> neighbors(Vertex v) const {
    return {adj_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  double degree(Vertex v) const { return degree_[v]; }
  double total_volume() const { return total_volume_; }

  std::uint64_t original_id(Vertex v) const { return original_ids_[v]; }
  std::optional<Vertex> compact_id(std::uint64_t original) const;
  const std::vector<std::uint64_t>& original_ids() const { return original_ids_; }

  // Weight of edge (u,v), 0 when absent.
  double edge_weight(Vertex u, Vertex v) const;

  bool connected() const;

  bool operator==(const Graph& other) const;

 private:
  std::vector<std::size_t> offsets_;  // size n+1
  std::vector<Neighbor> adj_;
  std::vector<double> degree_;
  double total_volume_ = 0.0;
  std::vector<std::uint64_t> original_ids_;
  std::unordered_map<std::uint64_t, Vertex> id_map_;
};

// Edge-list text format: lines `u v [w]`, whitespace separated, `#` comments.
// Malformed lines, self-loops, duplicate edges and non-positive weights are
// reported with their line number.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list(const std::string& text);

// Canonical writer: sorted `u v w` lines, LF-terminated, w omitted when 1.
std::string write_edge_list(const Graph& g);

// FNV-1a over the canonical edge list, as a 16-digit hex string.
std::string graph_digest(const Graph& g);

Graph make_cycle(int n);
Graph make_complete(int n);
// Two K_k cliques joined by one bridge edge (k-1, k). Side A is 0..k-1.
Graph make_dumbbell(int k);
// r cliques of size k in a ring; clique j holds [j*k, (j+1)*k) and is joined
// to the next clique by the single edge (j*k + k-1, ((j+1) mod r)*k).
Graph make_ring_of_cliques(int r, int k);

// Planted low-conductance set of a generator fixture, where one exists.
inline double dumbbell_side_volume(int k) { return static_cast<double>(k) * (k - 1) + 1; }

/// Sorted duplicate-free vertex list with cached volume.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(const Graph& g, std::vector<Vertex> members);

  const std::vector<Vertex>& members() const { return members_; }
  bool contains(Vertex v) const;
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  double volume() const { return volume_; }

  bool operator==(const VertexSet& other) const { return members_ == other.members_; }

 private:
  std::vector<Vertex> members_;
  double volume_ = 0.0;
};

VertexSet full_vertex_set(const Graph& g);

struct CutStats {
  double volume;
  double boundary;
  double phi;
};

// volume, boundary weight and conductance of a nonempty S; phi(V) = 0.
CutStats conductance(const Graph& g, const VertexSet& s);

/// Sparse nonnegative mass vector over vertices (sub-probability allowed).
class Distribution {
 public:
  Distribution() = default;
  explicit Distribution(std::vector<std::pair<Vertex, double>> entries);
  static Distribution point_mass(Vertex v);

  const std::vector<std::pair<Vertex, double>>& entries() const { return entries_; }
  double mass(Vertex v) const;
  double total() const { return total_; }

 private:
  std::vector<std::pair<Vertex, double>> entries_;  // sorted by vertex, zero-free
  double total_ = 0.0;
};

// pi_S(v) = d(v)/mu(S) on S, 0 elsewhere.
Distribution stationary(const Graph& g, const VertexSet& s);
Distribution stationary(const Graph& g);

}  // namespace evocut
