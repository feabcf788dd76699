#include "evocut/verify.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "evocut/esp.hpp"
#include "evocut/ls_curve.hpp"
#include "evocut/mixing.hpp"
#include "evocut/oracles.hpp"
#include "evocut/walks.hpp"

namespace evocut {

bool VerifyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

void add(VerifyReport& report, const std::string& name, bool pass, std::string detail = "") {
  report.checks.push_back({name, pass, std::move(detail)});
}

void graph_suite(VerifyReport& report, const Graph& g) {
  double worst = 0.0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    double d = 0.0;
    for (const auto& nb : g.neighbors(v)) d += nb.weight;
    worst = std::max(worst, std::abs(d - g.degree(v)));
  }
  add(report, "graph/degree-consistency", worst <= 1e-12, "max error " + fmt(worst));

  bool symmetric = true;
  for (int v = 0; v < g.vertex_count() && symmetric; ++v)
    for (const auto& nb : g.neighbors(v))
      if (g.edge_weight(nb.to, v) != nb.weight) {
        symmetric = false;
        break;
      }
  add(report, "graph/symmetry", symmetric);

  add(report, "graph/phi-of-V-is-zero", conductance(g, full_vertex_set(g)).phi == 0.0);
  add(report, "graph/parse-serialize-roundtrip", parse_edge_list(write_edge_list(g)) == g);
}

void walks_suite(VerifyReport& report, const Graph& g) {
  const WalkOperator lazy(g, true);
  double worst_chain = 1e300, worst_identity = 0.0;
  bool half_volume = true;
  for (const auto& s : fixture_sets(g)) {
    const double phi = conductance(g, s).phi;
    double prev = 1.0;
    for (int t = 1; t <= 20; ++t) {
      const double cur = expected_remain(lazy, s, t);
      worst_chain = std::min(worst_chain, cur - (1.0 - phi / 2.0) * prev);
      prev = cur;
    }
    worst_identity =
        std::max(worst_identity, std::abs(expected_remain(lazy, s, 1) - (1.0 - phi / 2.0)));
    for (int t : {5, 20})
      if (good_core(lazy, s, t).volume() < s.volume() / 2.0) half_volume = false;
  }
  add(report, "walks/monotone-remain-chain", worst_chain >= -1e-9,
      "min slack " + fmt(worst_chain));
  add(report, "walks/one-step-identity", worst_identity <= 1e-10,
      "max error " + fmt(worst_identity));
  add(report, "walks/good-core-half-volume", half_volume);
}

void curve_suite(VerifyReport& report, const Graph& g) {
  const WalkOperator lazy(g, true);
  const double mu = g.total_volume();
  bool shape_ok = true, dominance_ok = true, chord_ok = true;

  const int seeds = std::min(8, g.vertex_count());
  for (int v = 0; v < seeds; ++v) {
    Distribution p = Distribution::point_mass(v);
    LSCurve prev_curve = build_curve(g, p);
    for (int t = 1; t <= 10; ++t) {
      Distribution q = lazy.step(p);
      const LSCurve curve = build_curve(g, q);

      double last_x = -1.0, last_slope = 1e300;
      for (std::size_t i = 0; i < curve.points.size(); ++i) {
        const auto& [x, y] = curve.points[i];
        if (x <= last_x) shape_ok = false;
        if (i > 0) {
          const double slope = (y - curve.points[i - 1].second) / (x - curve.points[i - 1].first);
          if (slope > last_slope + 1e-12) shape_ok = false;
          last_slope = slope;
        }
        last_x = x;
      }

      for (const auto& [x, y] : curve.points)
        if (y > evaluate_curve(prev_curve, x) + 1e-9) dominance_ok = false;
      for (const auto& [x, y] : prev_curve.points)
        if (evaluate_curve(curve, x) > y + 1e-9) dominance_ok = false;

      const auto sweep = threshold_sweep(g, q);
      for (std::size_t i = 0; i + 1 < sweep.order.size(); ++i) {
        const double x = sweep.prefix_volume[i];
        // chain conductance of the half-lazy walk: half the cut ratio
        const double big_phi = 0.5 * sweep.prefix_phi[i];
        if (big_phi <= 0.0) continue;
        const double spread = 2.0 * big_phi * std::min(x, mu - x);
        const double chord =
            0.5 * (evaluate_curve(prev_curve, x - spread) + evaluate_curve(prev_curve, x + spread));
        if (evaluate_curve(curve, x) > chord + 1e-9) chord_ok = false;
      }

      p = std::move(q);
      prev_curve = curve;
    }
  }
  add(report, "curve/monotone-concave", shape_ok);
  add(report, "curve/walk-step-dominance", dominance_ok);
  add(report, "curve/chord-inequality", chord_ok);
}

void esp_suite(VerifyReport& report, const Graph& g) {
  bool kernel_sums = true, gauge_bound = true, martingale = true;
  double worst_gauge = 1e300, worst_martingale = 0.0;
  for (const auto& s : fixture_sets(g)) {
    const auto kernel = esp_kernel(g, s);
    double total = 0.0;
    for (const auto& [next, prob] : kernel) total += prob;
    if (std::abs(total - 1.0) > 1e-12) kernel_sums = false;

    const double phi = conductance(g, s).phi;
    const double psi = growth_gauge(g, s);
    worst_gauge = std::min(worst_gauge, psi - phi * phi / 8.0);
    if (psi < phi * phi / 8.0 - 1e-12) gauge_bound = false;

    // One-step optional sampling: sum K-hat sqrt(mu(S)/mu(S')) / (1-psi) = 1.
    double identity = 0.0;
    for (const auto& [next, prob] : kernel) {
      if (next.empty()) continue;
      const double khat = next.volume() / s.volume() * prob;
      identity += khat * std::sqrt(s.volume() / next.volume());
    }
    identity /= 1.0 - psi;
    worst_martingale = std::max(worst_martingale, std::abs(identity - 1.0));
    if (std::abs(identity - 1.0) > 1e-9) martingale = false;
  }
  add(report, "esp/kernel-probabilities-sum-to-1", kernel_sums);
  add(report, "esp/growth-gauge-bound", gauge_bound, "min slack " + fmt(worst_gauge));
  add(report, "esp/martingale-identity", martingale, "max error " + fmt(worst_martingale));
}

void mixing_suite(VerifyReport& report, const Graph& g) {
  if (!g.connected()) {
    add(report, "mixing/skipped-disconnected", true, "walk never mixes");
    return;
  }
  if (g.vertex_count() > 64) {
    add(report, "mixing/skipped-size", true, "n > 64");
    return;
  }
  const double eps = 0.5;
  const auto tau_u = uniform_mixing_time(g, eps);
  const auto tau_tv = tv_mixing_time(g, eps);
  add(report, "mixing/tv-below-uniform", tau_u && tau_tv && *tau_tv <= *tau_u,
      tau_u ? "tau_tv " + std::to_string(*tau_tv) + ", tau_uniform " + std::to_string(*tau_u)
            : "walk did not mix within cap");

  if (g.vertex_count() <= 22 && tau_u) {
    const auto opt = exact_min_conductance(g);
    if (opt.phi > 0.0) {
      const double js = jerrum_sinclair_upper(g, opt.phi, eps);
      add(report, "mixing/jerrum-sinclair-upper", *tau_u <= js,
          "tau " + std::to_string(*tau_u) + " vs bound " + fmt(js));
      const double gamma = g.total_volume() / 4.0;
      if (gamma >= 1.0) {
        const double phi_gamma = exact_expansion_profile(g, gamma).phi;
        if (phi_gamma > 0.0) {
          const double lower = mixing_lower_bound(g.total_volume(), gamma, phi_gamma);
          add(report, "mixing/profile-lower-bound",
              std::ceil(std::max(0.0, lower)) <= static_cast<double>(*tau_u),
              "lower " + fmt(lower));
        }
      }
    }
  }

  bool even_ok = true;
  for (const auto& s : fixture_sets(g, 6))
    for (int t : {1, 3})
      if (!nonlazy_even_remain_check(g, s, t).holds) even_ok = false;
  add(report, "mixing/nonlazy-even-remain", even_ok);
}

}  // namespace

std::vector<VertexSet> fixture_sets(const Graph& g, std::size_t max_sets) {
  std::vector<VertexSet> sets;
  std::set<std::vector<Vertex>> seen;
  auto push = [&](std::vector<Vertex> members) {
    if (sets.size() >= max_sets) return;
    VertexSet s(g, std::move(members));
    if (s.empty() || s.size() >= static_cast<std::size_t>(g.vertex_count())) return;
    if (seen.insert(s.members()).second) sets.push_back(std::move(s));
  };

  for (int v = 0; v < g.vertex_count() && v < 4; ++v) push({v});
  for (int v = 0; v < g.vertex_count() && v < 3; ++v) {
    std::vector<Vertex> ball{v};
    for (const auto& nb : g.neighbors(v)) ball.push_back(nb.to);
    push(std::move(ball));
  }
  // threshold prefixes of a short walk from vertex 0
  const WalkOperator lazy(g, true);
  Distribution p = Distribution::point_mass(0);
  for (int t = 0; t < 3; ++t) p = lazy.step(p);
  const auto sweep = threshold_sweep(g, p);
  for (std::size_t i = 0; i + 1 < sweep.order.size() && i < 4; ++i)
    push({sweep.order.begin(), sweep.order.begin() + i + 1});
  return sets;
}

VerifyReport run_verify_suite(const Graph& g, const std::string& suite) {
  static const std::vector<std::pair<std::string, void (*)(VerifyReport&, const Graph&)>>
      suites = {{"graph", graph_suite},
                {"walks", walks_suite},
                {"curve", curve_suite},
                {"esp", esp_suite},
                {"mixing", mixing_suite}};
  VerifyReport report;
  bool matched = false;
  for (const auto& [name, run] : suites) {
    if (suite == "all" || suite == name) {
      run(report, g);
      matched = true;
    }
  }
  if (!matched) throw std::invalid_argument("unknown suite '" + suite + "'");
  return report;
}

}  // namespace evocut
