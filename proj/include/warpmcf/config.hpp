#pragma once

#include <map>
#include <string>
#include <vector>

#include "warpmcf/counterexample.hpp"
#include "warpmcf/flow.hpp"
#include "warpmcf/graph_state.hpp"

namespace warpmcf {

/// Flat key-value run configuration (one `key = value` per line, `#`
/// comments, sections by dotted prefixes). Parsing is not fail-fast: every
/// schema violation is collected with its key path.
struct RunConfig {
  // base.*
  std::string base_kind;            // required
  double L1 = 2.0 * 3.14159265358979323846;
  double L2 = 2.0 * 3.14159265358979323846;
  double truncation_radius = 0.0;   // required for polar kinds
  std::string base_profile_csv;

  // warp.*
  std::string warp_kind = "constant-one";
  double warp_a = 1.5, warp_b = 0.5;
  int warp_axis = 0;
  std::string warp_profile_csv;

  // grid.*
  int n1 = 64, n2 = 64;

  // init.*
  InitialData init;

  // flow.*
  Scheme scheme = Scheme::Euler;
  DtPolicy dt_policy;               // cfl 0.4 by default
  double T = 0.0;                   // required, > 0
  double stop_sup_h = 0.0;

  // sample.*
  int sample_count = 50;
  std::string sample_mode = "uniform";  // | log
  double sample_t_min = 1e-4;

  // monitors.*
  std::vector<std::string> monitors = {"gradient", "frakg", "regularization", "graph"};
  double tol_coeff = 8.0;
  double decay_k = 0.0;             // < 0 enables the decay monitor
  double nu_perturb = 0.0;          // negative-control fixture
  int constants_sample_m = 96;

  // truncation.*
  double compare_radius = 0.0;      // optional second radius (sensitivity)

  // snapshot.* / output.* / seed
  int snapshot_count = 4;
  std::string output_dir = "out";
  unsigned long long seed = 1;

  std::map<std::string, std::string> echo;  // raw key-values as parsed
};

struct ConfigError {
  std::string key;
  std::string message;
};

struct ParsedConfig {
  RunConfig config;
  std::vector<ConfigError> errors;
  bool ok() const { return errors.empty(); }
};

ParsedConfig parse_config(const std::string& text);
ParsedConfig parse_config_file(const std::string& path);

/// Counterexample configs share the same format with scenario.* keys.
struct ParsedCounterexample {
  CounterexampleConfig config;
  std::string output_dir = "out";
  std::map<std::string, std::string> echo;
  std::vector<ConfigError> errors;
  bool ok() const { return errors.empty(); }
};

ParsedCounterexample parse_counterexample_config(const std::string& text);
ParsedCounterexample parse_counterexample_file(const std::string& path);

/// Materialize the geometry described by a valid config.
GeometryPtr build_geometry(const RunConfig& cfg);

}  // namespace warpmcf
