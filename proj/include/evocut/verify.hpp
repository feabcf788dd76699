#pragma once

#include <string>
#include <vector>

#include "evocut/graph.hpp"

namespace evocut {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

// Deterministic invariant suites over the given graph. Suites: graph, walks,
// curve, esp, mixing, all. Sampling-based checks live in the test suite, not
// here, so `verify` needs no seed.
VerifyReport run_verify_suite(const Graph& g, const std::string& suite);

// Deterministic family of nonempty proper test sets derived from the graph:
// singletons, one-step balls, and threshold sets of a short walk.
std::vector<VertexSet> fixture_sets(const Graph& g, std::size_t max_sets = 12);

}  // namespace evocut
