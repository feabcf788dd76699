#pragma once

#include <string>

#include "json.hpp"

#include "evocut/esp.hpp"
#include "evocut/graph.hpp"
#include "evocut/ls_curve.hpp"
#include "evocut/mixing.hpp"
#include "evocut/oracles.hpp"

namespace evocut {

// Key order is fixed so identical runs print byte-identical payloads.
using Json = nlohmann::ordered_json;

Json set_to_json(const Graph& g, const VertexSet& s);          // sorted original ids
Json distribution_to_json(const Graph& g, const Distribution& p);
Json curve_to_json(const LSCurve& curve);
Json sweep_result_to_json(const Graph& g, const SweepResult& r);
Json cut_result_to_json(const Graph& g, const CutResult& r);
Json sample_path_to_json(const Graph& g, const SamplePath& path);
Json path_step_to_json(const Graph& g, const PathStep& step);
Json mixing_report_to_json(const MixingReport& report);
Json profile_point_to_json(const Graph& g, const ProfilePoint& p);
Json abs_report_to_json(const Graph& g, const AbsCheckReport& report);

}  // namespace evocut
