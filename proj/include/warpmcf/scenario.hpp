#pragma once

#include <string>

#include "warpmcf/config.hpp"

namespace warpmcf {

// Process exit codes of the CLI.
constexpr int kExitPass = 0;
constexpr int kExitViolation = 2;
constexpr int kExitBlowup = 3;
constexpr int kExitConfigError = 4;

/// Execute the full pipeline for one config: geometry -> initial state ->
/// constants -> flow -> monitors; write per-monitor CSV series, snapshots at
/// cadence and a final JSON report (constants + config echo + verdicts) into
/// the output directory. Returns the process exit code.
/// `resume` optionally restarts from a state snapshot (monitors are skipped
/// on resumed segments; the run continues to the configured horizon).
int run_scenario(const RunConfig& cfg, const std::string& output_root = "",
                 const std::string& resume = "");

/// Counterexample pipeline: profile-curve flow, CSV of the two graph
/// measures, JSON verdict.
int run_counterexample_scenario(const ParsedCounterexample& parsed,
                                const std::string& output_root = "");

/// Static oracle conformance: curvature, first variation and the pointwise
/// identities over the named catalog pairs. Writes a JSON report; returns 0
/// iff every check passed.
int run_verify(const std::string& output_path, bool print_catalog);

}  // namespace warpmcf
