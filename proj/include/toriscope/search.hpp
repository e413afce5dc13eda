#pragma once

// Polytope analysis reports and the reproducible search loop
// gen-fan -> support -> chisel_reduce -> analyze (-> shrink).

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "toriscope/fan.hpp"
#include "toriscope/report.hpp"

namespace toriscope {

enum ExitCode : int { exit_ok = 0, exit_error = 1, exit_parse = 2, exit_caps = 3, exit_discovery = 10 };

struct AnalyzeOptions {
  /// Above this many lattice points the degree-3 test is replaced by a random probe.
  std::size_t limit_points = 120;
  std::size_t probe_trials = 100;
  std::uint64_t seed = 0;
  bool timings = false;
  HilbertOptions hilbert;
};

struct Verdict {
  std::string name;
  std::optional<bool> value;  // empty when not applicable or undecided
  Json witness;
  std::string note;
};

struct Discovery {
  std::string kind;
  bool known_fixture = false;
};

struct AnalysisReport {
  LatticePolytope polytope;
  Json provenance;
  std::vector<Verdict> verdicts;
  std::vector<Discovery> discoveries;
  Json timings;  // null unless requested

  const Verdict& verdict(const std::string& name) const;
  Json to_json() const;
};

/// Names of the verdicts in report order.
const std::vector<std::string>& verdict_names();

/// Fixture polytopes that are known to trigger a discovery class.
bool is_known_fixture(const LatticePolytope& p);
LatticePolytope known_non_normal_fixture();

AnalysisReport analyze(const LatticePolytope& p, const AnalyzeOptions& options = {}, Json provenance = nullptr);

struct SearchConfig {
  std::uint64_t seed = 0;
  std::size_t dim = 3;
  std::size_t max_extra_rays = 20;
  std::size_t max_cones = 150;
  std::size_t num_points = 8;
  std::int64_t coord_bound = 1;
  std::size_t iterations = 5;
  std::size_t start_iteration = 0;
  /// "auto" switches to extreme rays above Picard rank 10.
  std::string mode = "auto";
  std::size_t limit_points = 120;
  std::size_t max_candidates = 2'000'000;
  bool shrink = false;
  bool inject_fixture = false;
  double max_seconds = 0;  // 0: no wall-time cap
  bool timings = false;

  std::vector<std::string> pipeline() const;
  Json to_json() const;
};

SupportMode resolve_mode(const std::string& mode, const Fan& fan);

/// Writes one JSON object per line and returns the exit code.
int run_search(const SearchConfig& config, std::ostream& out);

}  // namespace toriscope
