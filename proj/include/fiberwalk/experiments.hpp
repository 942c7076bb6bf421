#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fiberwalk/cone.hpp"
#include "fiberwalk/io.hpp"
#include "fiberwalk/presets.hpp"

namespace fiberwalk {

struct RunOptions {
  unsigned threads = 1;
  std::size_t cap = 1'000'000;
  bool dump = false;
  /// When false, elapsed_ms is null so reports are byte-identical across runs.
  bool timing = true;
};

struct ExperimentOutcome {
  Json report;
  int exit_code = 0;
};

std::vector<std::string> experiment_names();

/// Wraps the result in {"experiment", "params", "result", "elapsed_ms"}.
/// Unknown names throw a usage error; other errors give exit code 1 and an
/// "error" object in place of "result".
ExperimentOutcome run_experiment(const std::string& name, const Json& params, const RunOptions& options = {});

/// Contents of data/expectations.json at build time.
std::string_view pinned_expectations_text();
Json pinned_expectations();

struct InteriorFacets {
  std::vector<Functional> facets;
  /// "double-description" or "k2n-inequalities".
  std::string source;
  std::size_t rank = 0;
};

/// Cone facets when the rank budget allows, else the K_{2,N-2} inequalities
/// together with the coordinate functionals.
InteriorFacets interior_facets(const Preset& p, const MarginMap& am, const FacetLimits& limits = {});

/// One summary row: verdicts, prime count, facet source.
Json summary_row(const std::string& preset);
/// Rows for c4, c5, k23, g48, square-pyramid compared against expectations.
Json run_summary(const Json& expectations, const RunOptions& options = {});

}  // namespace fiberwalk
