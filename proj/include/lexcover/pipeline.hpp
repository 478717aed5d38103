#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lexcover/backbone.hpp"
#include "lexcover/break_spec.hpp"
#include "lexcover/pattern.hpp"

namespace lexcover {

struct PipelineConfig {
  int order = 4;
  std::size_t bound = kDefaultBound;
  bool skip_iterative = false;
  bool many_leap = false;
  std::uint64_t instance_budget = kDefaultInstanceBudget;
  /// Checkpoint file for beta and the refined universe; resumed if present.
  std::optional<std::string> state_path;
  /// Brute-force check of the final break (default: n <= 7).
  std::optional<bool> verify;
  /// Free-form progress lines (with timings); never part of the report.
  std::function<void(const std::string&)> log;
};

/// Sizes and counts of one run, plus bookkeeping.
struct RunReport {
  int order = 0;
  std::optional<std::size_t> bb1;  // empty when the sweep was skipped
  std::size_t bb2 = 0;
  std::size_t rounds = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::optional<std::pair<std::size_t, std::size_t>> cover_size_range;
  std::size_t forced = 0;
  std::size_t residual = 0;
  std::size_t opt = 0;
  std::size_t enc_size = 0;
  std::size_t bb1_not_in_bb2 = 0;
  std::optional<std::uint64_t> solutions;
  std::optional<std::uint64_t> expected;
  std::vector<std::pair<std::string, double>> timings;  // seconds per phase

  bool verified_ok() const { return !solutions || solutions == expected; }
};

/// Deterministic report; timings only when asked.
nlohmann::ordered_json to_json(const RunReport& report, bool with_timings = false);

struct PipelineResult {
  BreakSpec spec;
  RunReport report;
};

PipelineResult run_pipeline(const PipelineConfig& cfg);

}  // namespace lexcover
