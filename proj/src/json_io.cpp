#include "evocut/json_io.hpp"

#include <algorithm>

namespace evocut {

Json set_to_json(const Graph& g, const VertexSet& s) {
  std::vector<std::uint64_t> ids;
  ids.reserve(s.size());
  for (Vertex v : s.members()) ids.push_back(g.original_id(v));
  std::sort(ids.begin(), ids.end());
  return Json(ids);
}

Json distribution_to_json(const Graph& g, const Distribution& p) {
  std::vector<std::pair<std::uint64_t, double>> items;
  for (const auto& [v, m] : p.entries()) items.emplace_back(g.original_id(v), m);
  std::sort(items.begin(), items.end());
  Json out = Json::object();
  for (const auto& [id, m] : items) out[std::to_string(id)] = m;
  return out;
}

Json curve_to_json(const LSCurve& curve) {
  Json pts = Json::array();
  for (const auto& [x, y] : curve.points) pts.push_back(Json::array({x, y}));
  return pts;
}

Json sweep_result_to_json(const Graph& g, const SweepResult& r) {
  Json out = Json::object();
  out["set"] = set_to_json(g, r.set);
  out["phi"] = r.phi;
  out["volume"] = r.volume;
  out["seed"] = r.seed >= 0 ? Json(g.original_id(r.seed)) : Json(nullptr);
  out["t"] = r.step;
  out["threshold_index"] = r.threshold_index;
  return out;
}

Json cut_result_to_json(const Graph& g, const CutResult& r) {
  Json out = Json::object();
  out["set"] = set_to_json(g, r.set);
  out["phi"] = r.phi;
  out["volume"] = r.volume;
  out["provenance"] = {{"algorithm", r.provenance.algorithm},
                       {"start", g.original_id(r.provenance.start)},
                       {"copy", r.provenance.copy},
                       {"step", r.provenance.step}};
  return out;
}

Json path_step_to_json(const Graph& g, const PathStep& step) {
  Json out = Json::object();
  out["set"] = set_to_json(g, step.set);
  out["volume"] = step.volume;
  out["phi"] = step.phi;
  out["psi"] = step.psi;
  out["martingale"] = step.martingale;
  out["work"] = step.work;
  return out;
}

Json sample_path_to_json(const Graph& g, const SamplePath& path) {
  Json steps = Json::array();
  for (const auto& step : path.steps) steps.push_back(path_step_to_json(g, step));
  const char* outcome = path.outcome == PathOutcome::Stopped    ? "stopped"
                        : path.outcome == PathOutcome::Absorbed ? "absorbed"
                                                                : "horizon";
  return Json{{"steps", std::move(steps)}, {"outcome", outcome}};
}

Json mixing_report_to_json(const MixingReport& report) {
  Json out = Json::object();
  out["epsilon"] = report.epsilon;
  out["lazy"] = report.lazy;
  out["tau_uniform"] = report.tau_uniform ? Json(*report.tau_uniform) : Json(nullptr);
  out["tau_tv"] = report.tau_tv ? Json(*report.tau_tv) : Json(nullptr);
  out["gamma"] = report.gamma ? Json(*report.gamma) : Json(nullptr);
  out["phi_gamma"] = report.phi_gamma ? Json(*report.phi_gamma) : Json(nullptr);
  out["lower_bound"] = report.lower_bound ? Json(*report.lower_bound) : Json(nullptr);
  out["jerrum_sinclair_upper"] =
      report.jerrum_sinclair_upper ? Json(*report.jerrum_sinclair_upper) : Json(nullptr);
  return out;
}

Json profile_point_to_json(const Graph& g, const ProfilePoint& p) {
  Json out = Json::object();
  out["gamma"] = p.gamma;
  out["set"] = set_to_json(g, p.best_set);
  out["phi"] = p.phi;
  out["volume"] = p.volume;
  return out;
}

Json abs_report_to_json(const Graph& g, const AbsCheckReport& report) {
  Json out = Json::object();
  out["premise_satisfied"] = report.premise_satisfied;
  if (report.premise_satisfied) {
    out["eta"] = report.eta_star;
    out["rank"] = report.rank;
    out["horizon"] = report.horizon;
    out["volume_bound"] = report.volume_bound;
    out["phi_bound"] = report.phi_bound;
    out["found"] = report.found ? sweep_result_to_json(g, *report.found) : Json(nullptr);
    out["conclusion_volume_ok"] = report.conclusion_volume_ok;
    out["conclusion_phi_ok"] = report.conclusion_phi_ok;
    out["witness"] = {{"vertex", g.original_id(report.witness)},
                      {"return_probability", report.witness_return},
                      {"bound", report.witness_bound},
                      {"holds", report.witness_ok}};
  }
  return out;
}

}  // namespace evocut
