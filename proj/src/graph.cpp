#include "evocut/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace evocut {

namespace {

std::string format_weight(double w) {
  // nlohmann's shortest round-trip formatting keeps the writer canonical.
  return nlohmann::json(w).dump();
}

}  // namespace

Graph Graph::from_edges(
    const std::vector<std::tuple<std::uint64_t, std::uint64_t, double>>& edges) {
  if (edges.empty()) throw std::runtime_error("graph has no edges");

  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  std::vector<std::uint64_t> ids;
  for (const auto& [u, v, w] : edges) {
    if (u == v) throw std::runtime_error("self-loop at vertex " + std::to_string(u));
    if (!(w > 0.0)) throw std::runtime_error("non-positive weight on edge " +
                                             std::to_string(u) + " " + std::to_string(v));
    auto key = std::minmax(u, v);
    if (!seen.insert({key.first, key.second}).second)
      throw std::runtime_error("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    ids.push_back(u);
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  Graph g;
  g.original_ids_ = ids;
  for (std::size_t i = 0; i < ids.size(); ++i) g.id_map_[ids[i]] = static_cast<Vertex>(i);

  const int n = static_cast<int>(ids.size());
  std::vector<std::size_t> counts(n, 0);
  for (const auto& [u, v, w] : edges) {
    counts[g.id_map_[u]]++;
    counts[g.id_map_[v]]++;
  }
  g.offsets_.assign(n + 1, 0);
  for (int v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + counts[v];
  g.adj_.resize(g.offsets_[n]);

  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [ou, ov, w] : edges) {
    Vertex u = g.id_map_[ou], v = g.id_map_[ov];
    g.adj_[cursor[u]++] = {v, w};
    g.adj_[cursor[v]++] = {u, w};
  }
  for (int v = 0; v < n; ++v) {
    auto begin = g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto end = g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(begin, end, [](const Neighbor& a, const Neighbor& b) { return a.to < b.to; });
  }

  g.degree_.assign(n, 0.0);
  for (int v = 0; v < n; ++v) {
    double d = 0.0;
    for (const auto& nb : g.neighbors(v)) d += nb.weight;
    g.degree_[v] = d;
    g.total_volume_ += d;
  }
  return g;
}

std::optional<Vertex> Graph::compact_id(std::uint64_t original) const {
  auto it = id_map_.find(original);
  if (it == id_map_.end()) return std::nullopt;
  return it->second;
}

double Graph::edge_weight(Vertex u, Vertex v) const {
  auto nbrs = neighbors(u);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v,
                             [](const Neighbor& nb, Vertex x) { return nb.to < x; });
  if (it != nbrs.end() && it->to == v) return it->weight;
  return 0.0;
}

bool Graph::connected() const {
  if (vertex_count() == 0) return false;
  std::vector<char> visited(vertex_count(), 0);
  std::queue<Vertex> q;
  q.push(0);
  visited[0] = 1;
  int count = 1;
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop();
    for (const auto& nb : neighbors(v)) {
      if (!visited[nb.to]) {
        visited[nb.to] = 1;
        ++count;
        q.push(nb.to);
      }
    }
  }
  return count == vertex_count();
}

bool Graph::operator==(const Graph& other) const {
  if (original_ids_ != other.original_ids_ || offsets_ != other.offsets_) return false;
  for (std::size_t i = 0; i < adj_.size(); ++i)
    if (adj_[i].to != other.adj_[i].to || adj_[i].weight != other.adj_[i].weight) return false;
  return true;
}

Graph parse_edge_list(std::istream& in) {
  std::vector<std::tuple<std::uint64_t, std::uint64_t, double>> edges;
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tu, tv, tw, extra;
    if (!(ls >> tu)) continue;  // blank line
    if (!(ls >> tv)) fail("expected `u v [w]`");
    bool has_w = static_cast<bool>(ls >> tw);
    if (ls >> extra) fail("trailing token '" + extra + "'");

    std::uint64_t u = 0, v = 0;
    double w = 1.0;
    try {
      std::size_t pos = 0;
      if (tu[0] == '-' || tv[0] == '-') fail("negative vertex id");
      u = std::stoull(tu, &pos);
      if (pos != tu.size()) fail("malformed vertex id '" + tu + "'");
      v = std::stoull(tv, &pos);
      if (pos != tv.size()) fail("malformed vertex id '" + tv + "'");
      if (has_w) {
        w = std::stod(tw, &pos);
        if (pos != tw.size()) fail("malformed weight '" + tw + "'");
      }
    } catch (const std::invalid_argument&) {
      fail("malformed token");
    } catch (const std::out_of_range&) {
      fail("value out of range");
    }
    if (u == v) fail("self-loop at vertex " + std::to_string(u));
    if (!(w > 0.0)) fail("non-positive weight");
    auto key = std::minmax(u, v);
    if (!seen.insert({key.first, key.second}).second)
      fail("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    edges.emplace_back(u, v, w);
  }
  if (edges.empty()) throw std::runtime_error("edge list contains no edges");
  return Graph::from_edges(edges);
}

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

std::string write_edge_list(const Graph& g) {
  std::vector<std::tuple<std::uint64_t, std::uint64_t, double>> edges;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    for (const auto& nb : g.neighbors(v)) {
      if (v < nb.to) {
        std::uint64_t a = g.original_id(v), b = g.original_id(nb.to);
        if (a > b) std::swap(a, b);
        edges.emplace_back(a, b, nb.weight);
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  std::string out;
  for (const auto& [u, v, w] : edges) {
    out += std::to_string(u);
    out += ' ';
    out += std::to_string(v);
    if (w != 1.0) {
      out += ' ';
      out += format_weight(w);
    }
    out += '\n';
  }
  return out;
}

std::string graph_digest(const Graph& g) {
  const std::string text = write_edge_list(g);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Graph make_cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle requires n >= 3");
  std::vector<std::tuple<std::uint64_t, std::uint64_t, double>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n, 1.0);
  return Graph::from_edges(edges);
}

Graph make_complete(int n) {
  if (n < 3) throw std::invalid_argument("complete requires n >= 3");
  std::vector<std::tuple<std::uint64_t, std::uint64_t, double>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j, 1.0);
  return Graph::from_edges(edges);
}

Graph make_dumbbell(int k) {
  if (k < 2) throw std::invalid_argument("dumbbell requires k >= 2");
  std::vector<std::tuple<std::uint64_t, std::uint64_t, double>> edges;
  for (int side = 0; side < 2; ++side) {
    int base = side * k;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) edges.emplace_back(base + i, base + j, 1.0);
  }
  edges.emplace_back(k - 1, k, 1.0);
  return Graph::from_edges(edges);
}

Graph make_ring_of_cliques(int r, int k) {
  if (r < 2 || k < 2) throw std::invalid_argument("ring_of_cliques requires r >= 2, k >= 2");
  std::vector<std::tuple<std::uint64_t, std::uint64_t, double>> edges;
  for (int c = 0; c < r; ++c) {
    int base = c * k;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) edges.emplace_back(base + i, base + j, 1.0);
    edges.emplace_back(base + k - 1, ((c + 1) % r) * k, 1.0);
  }
  return Graph::from_edges(edges);
}

VertexSet::VertexSet(const Graph& g, std::vector<Vertex> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (Vertex v : members_) {
    if (v < 0 || v >= g.vertex_count())
      throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
    volume_ += g.degree(v);
  }
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

VertexSet full_vertex_set(const Graph& g) {
  std::vector<Vertex> all(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) all[v] = v;
  return VertexSet(g, std::move(all));
}

CutStats conductance(const Graph& g, const VertexSet& s) {
  if (s.empty()) throw std::invalid_argument("conductance of empty set");
  double boundary = 0.0;
  for (Vertex v : s.members())
    for (const auto& nb : g.neighbors(v))
      if (!s.contains(nb.to)) boundary += nb.weight;
  return {s.volume(), boundary, boundary / s.volume()};
}

Distribution::Distribution(std::vector<std::pair<Vertex, double>> entries)
    : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
  for (std::size_t i = 1; i < entries_.size(); ++i)
    if (entries_[i].first == entries_[i - 1].first)
      throw std::invalid_argument("duplicate vertex in distribution");
  std::erase_if(entries_, [](const auto& e) { return e.second == 0.0; });
  for (const auto& [v, m] : entries_) {
    if (m < 0.0) throw std::invalid_argument("negative mass in distribution");
    total_ += m;
  }
  if (total_ > 1.0 + 1e-12) throw std::invalid_argument("distribution mass exceeds 1");
}

Distribution Distribution::point_mass(Vertex v) { return Distribution({{v, 1.0}}); }

double Distribution::mass(Vertex v) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                             [](const auto& e, Vertex x) { return e.first < x; });
  if (it != entries_.end() && it->first == v) return it->second;
  return 0.0;
}

Distribution stationary(const Graph& g, const VertexSet& s) {
  if (s.empty()) throw std::invalid_argument("stationary distribution of empty set");
  std::vector<std::pair<Vertex, double>> entries;
  entries.reserve(s.size());
  for (Vertex v : s.members()) entries.emplace_back(v, g.degree(v) / s.volume());
  return Distribution(std::move(entries));
}

Distribution stationary(const Graph& g) { return stationary(g, full_vertex_set(g)); }

}  // namespace evocut
