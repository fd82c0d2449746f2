#include "warpmcf/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace warpmcf {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::map<std::string, std::string> tokenize(const std::string& text,
                                            std::vector<ConfigError>& errors) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line.substr(0, line.find('#')));
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      errors.push_back({"line " + std::to_string(lineno), "expected `key = value`"});
      continue;
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string val = trim(stripped.substr(eq + 1));
    if (key.empty() || val.empty()) {
      errors.push_back({"line " + std::to_string(lineno), "empty key or value"});
      continue;
    }
    if (kv.count(key)) errors.push_back({key, "duplicate assignment"});
    kv[key] = val;
  }
  return kv;
}

/// Typed extraction that records consumption and collects violations.
struct Extractor {
  std::map<std::string, std::string>& kv;
  std::vector<ConfigError>& errors;
  std::vector<std::string> consumed;

  bool has(const std::string& key) const { return kv.count(key) > 0; }

  void take(const std::string& key) { consumed.push_back(key); }

  void number(const std::string& key, double& out) {
    if (!has(key)) return;
    take(key);
    try {
      std::size_t pos = 0;
      const double v = std::stod(kv[key], &pos);
      if (pos != kv[key].size()) throw std::invalid_argument("trailing junk");
      out = v;
    } catch (...) {
      errors.push_back({key, "expected a number, got `" + kv[key] + "`"});
    }
  }

  void integer(const std::string& key, int& out) {
    if (!has(key)) return;
    take(key);
    try {
      std::size_t pos = 0;
      const long v = std::stol(kv[key], &pos);
      if (pos != kv[key].size()) throw std::invalid_argument("trailing junk");
      out = static_cast<int>(v);
    } catch (...) {
      errors.push_back({key, "expected an integer, got `" + kv[key] + "`"});
    }
  }

  void uinteger(const std::string& key, unsigned long long& out) {
    if (!has(key)) return;
    take(key);
    try {
      out = std::stoull(kv[key]);
    } catch (...) {
      errors.push_back({key, "expected an unsigned integer, got `" + kv[key] + "`"});
    }
  }

  void text(const std::string& key, std::string& out) {
    if (!has(key)) return;
    take(key);
    out = kv[key];
  }

  void finish() {
    for (const auto& [key, val] : kv) {
      (void)val;
      if (std::find(consumed.begin(), consumed.end(), key) == consumed.end())
        errors.push_back({key, "unknown key"});
    }
  }
};

const std::vector<std::string> kBaseKinds = {"flat-circle", "flat-torus", "euclidean-polar",
                                             "hyperbolic-polar", "rotsym-radial"};
const std::vector<std::string> kWarpKinds = {"constant-one", "cosh-r", "torus-bump",
                                             "tabulated-radial"};
const std::vector<std::string> kInitKinds = {"constant", "sinusoid", "gaussian-bump",
                                             "lipschitz-cone", "tanh-ramp"};

bool is_polar_kind(const std::string& k) {
  return k == "euclidean-polar" || k == "hyperbolic-polar" || k == "rotsym-radial";
}

}  // namespace

ParsedConfig parse_config(const std::string& text) {
  ParsedConfig out;
  RunConfig& c = out.config;
  auto kv = tokenize(text, out.errors);
  c.echo = kv;
  Extractor ex{kv, out.errors, {}};

  ex.text("base.kind", c.base_kind);
  ex.number("base.L", c.L1);
  if (kv.count("base.L")) c.L2 = c.L1;
  ex.number("base.L1", c.L1);
  ex.number("base.L2", c.L2);
  ex.number("base.truncation_radius", c.truncation_radius);
  ex.text("base.profile_csv", c.base_profile_csv);

  ex.text("warp.kind", c.warp_kind);
  ex.number("warp.a", c.warp_a);
  ex.number("warp.b", c.warp_b);
  ex.integer("warp.axis", c.warp_axis);
  ex.text("warp.profile_csv", c.warp_profile_csv);

  int res = 0;
  ex.integer("grid.resolution", res);
  if (res > 0) c.n1 = c.n2 = res;
  ex.integer("grid.n1", c.n1);
  ex.integer("grid.n2", c.n2);

  ex.text("init.kind", c.init.kind);
  ex.number("init.amplitude", c.init.amplitude);
  ex.number("init.k1", c.init.k1);
  ex.number("init.k2", c.init.k2);
  ex.number("init.width", c.init.width);
  ex.number("init.center1", c.init.center1);
  ex.number("init.center2", c.init.center2);
  ex.number("init.steepness", c.init.steepness);

  std::string scheme = "euler", policy = "cfl";
  ex.text("flow.scheme", scheme);
  ex.text("flow.dt_policy", policy);
  ex.number("flow.cfl", c.dt_policy.cfl_fraction);
  ex.number("flow.dt", c.dt_policy.fixed_dt);
  ex.number("flow.T", c.T);
  ex.number("flow.stop_sup_h", c.stop_sup_h);

  ex.integer("sample.count", c.sample_count);
  ex.text("sample.mode", c.sample_mode);
  ex.number("sample.t_min", c.sample_t_min);

  std::string monitors_csv;
  ex.text("monitors.enabled", monitors_csv);
  ex.number("monitors.tol_coeff", c.tol_coeff);
  ex.number("monitors.decay_k", c.decay_k);
  ex.number("monitors.nu_perturb", c.nu_perturb);
  ex.integer("constants.sample_m", c.constants_sample_m);
  ex.number("truncation.compare_radius", c.compare_radius);

  ex.integer("snapshot.count", c.snapshot_count);
  ex.text("output.dir", c.output_dir);
  ex.uinteger("seed", c.seed);
  ex.finish();

  // Semantic validation (all violations collected, none fail-fast).
  auto err = [&](const std::string& key, const std::string& msg) {
    out.errors.push_back({key, msg});
  };

  if (c.base_kind.empty()) {
    err("base.kind", "required (one of flat-circle, flat-torus, euclidean-polar, "
                     "hyperbolic-polar, rotsym-radial)");
  } else if (std::find(kBaseKinds.begin(), kBaseKinds.end(), c.base_kind) == kBaseKinds.end()) {
    err("base.kind", "unknown base kind `" + c.base_kind + "`");
  }
  if (is_polar_kind(c.base_kind) && !(c.truncation_radius > 0.0))
    err("base.truncation_radius", "required (> 0) for polar base kinds");
  if (c.base_kind == "rotsym-radial" && c.base_profile_csv.empty())
    err("base.profile_csv", "required for rotsym-radial bases");

  if (std::find(kWarpKinds.begin(), kWarpKinds.end(), c.warp_kind) == kWarpKinds.end())
    err("warp.kind", "unknown warp kind `" + c.warp_kind + "`");
  if (c.warp_kind == "tabulated-radial" && c.warp_profile_csv.empty())
    err("warp.profile_csv", "required for tabulated-radial warps");

  if (std::find(kInitKinds.begin(), kInitKinds.end(), c.init.kind) == kInitKinds.end())
    err("init.kind", "unknown initial data kind `" + c.init.kind + "`");

  if (c.n1 < 16 || (c.base_kind != "flat-circle" && c.n2 < 16))
    err("grid.n1", "resolution must be >= 16 per axis");

  if (scheme == "euler") c.scheme = Scheme::Euler;
  else if (scheme == "rk2") c.scheme = Scheme::Rk2;
  else err("flow.scheme", "must be euler or rk2");
  if (c.scheme == Scheme::Rk2 && is_polar_kind(c.base_kind))
    err("flow.scheme", "rk2 is not offered on polar charts");

  if (policy == "cfl") c.dt_policy.cfl = true;
  else if (policy == "fixed") c.dt_policy.cfl = false;
  else err("flow.dt_policy", "must be cfl or fixed");
  if (c.dt_policy.cfl && !(c.dt_policy.cfl_fraction > 0.0 && c.dt_policy.cfl_fraction <= 0.9))
    err("flow.cfl", "cfl fraction must lie in (0, 0.9]");
  if (!c.dt_policy.cfl && !(c.dt_policy.fixed_dt > 0.0))
    err("flow.dt", "fixed dt policy needs flow.dt > 0");

  if (!(c.T > 0.0)) err("flow.T", "required horizon, must be > 0");

  if (c.sample_count < 1) err("sample.count", "must be >= 1");
  if (c.sample_mode != "uniform" && c.sample_mode != "log")
    err("sample.mode", "must be uniform or log");
  if (c.sample_mode == "log" && !(c.sample_t_min > 0.0 && c.sample_t_min < c.T))
    err("sample.t_min", "log sampling needs 0 < t_min < T");

  if (!monitors_csv.empty()) {
    c.monitors.clear();
    if (monitors_csv == "all") {
      c.monitors = {"gradient", "frakg", "regularization", "decay", "graph"};
    } else if (monitors_csv != "none") {
      std::istringstream ms(monitors_csv);
      std::string item;
      while (std::getline(ms, item, ',')) {
        item = trim(item);
        if (item != "gradient" && item != "frakg" && item != "regularization" &&
            item != "decay" && item != "graph")
          err("monitors.enabled", "unknown monitor `" + item + "`");
        else
          c.monitors.push_back(item);
      }
    }
  }
  const bool wants_decay =
      std::find(c.monitors.begin(), c.monitors.end(), "decay") != c.monitors.end();
  if (wants_decay && !(c.decay_k < 0.0))
    err("monitors.decay_k", "the decay monitor needs an ambient ceiling k < 0");
  if (c.snapshot_count < 0) err("snapshot.count", "must be >= 0");
  return out;
}

ParsedConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    ParsedConfig bad;
    bad.errors.push_back({path, "cannot open config file"});
    return bad;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

ParsedCounterexample parse_counterexample_config(const std::string& text) {
  ParsedCounterexample out;
  CounterexampleConfig& c = out.config;
  auto kv = tokenize(text, out.errors);
  out.echo = kv;
  Extractor ex{kv, out.errors, {}};

  ex.text("scenario.kind", c.scenario);
  ex.integer("scenario.multiplicity", c.multiplicity);
  ex.integer("scenario.nodes", c.nodes);
  ex.number("scenario.T", c.T);
  ex.number("scenario.cfl", c.cfl);
  ex.number("scenario.u_max", c.u_max);
  ex.number("scenario.steepness", c.steepness);
  ex.number("scenario.r_max", c.r_max);
  ex.number("scenario.slope", c.slope);
  ex.number("scenario.sphere_radius", c.sphere_radius);
  ex.number("scenario.fail_threshold", c.fail_threshold);
  ex.integer("scenario.samples", c.sample_count);
  ex.number("scenario.perturbation", c.perturbation);
  ex.uinteger("seed", c.seed);
  ex.text("output.dir", out.output_dir);
  ex.finish();

  auto err = [&](const std::string& key, const std::string& msg) {
    out.errors.push_back({key, msg});
  };
  if (c.scenario != "steep-equidistant-graph" && c.scenario != "geodesic-sphere" &&
      c.scenario != "tilted-disc")
    err("scenario.kind", "unknown scenario `" + c.scenario + "`");
  if (c.multiplicity < 2) err("scenario.multiplicity", "must be >= 2");
  if (c.nodes < 32) err("scenario.nodes", "must be >= 32");
  if (!(c.T > 0.0)) err("scenario.T", "must be > 0");
  if (!(c.cfl > 0.0 && c.cfl <= 0.9)) err("scenario.cfl", "must lie in (0, 0.9]");
  if (!(c.r_max > 0.0)) err("scenario.r_max", "must be > 0");
  return out;
}

ParsedCounterexample parse_counterexample_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    ParsedCounterexample bad;
    bad.errors.push_back({path, "cannot open config file"});
    return bad;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_counterexample_config(ss.str());
}

GeometryPtr build_geometry(const RunConfig& c) {
  BaseManifold base = [&] {
    if (c.base_kind == "flat-circle") return BaseManifold::flat_circle(c.L1);
    if (c.base_kind == "flat-torus") return BaseManifold::flat_torus(c.L1, c.L2);
    if (c.base_kind == "euclidean-polar") return BaseManifold::euclidean_polar(c.truncation_radius);
    if (c.base_kind == "hyperbolic-polar")
      return BaseManifold::hyperbolic_polar(c.truncation_radius);
    if (c.base_kind == "rotsym-radial")
      return BaseManifold::rot_sym(load_radial_csv(c.base_profile_csv), c.truncation_radius);
    throw std::runtime_error("unknown base kind " + c.base_kind);
  }();
  WarpFactor warp = [&] {
    if (c.warp_kind == "constant-one") return WarpFactor::constant_one();
    if (c.warp_kind == "cosh-r") return WarpFactor::cosh_r();
    if (c.warp_kind == "torus-bump") return WarpFactor::torus_bump(c.warp_a, c.warp_b, c.warp_axis);
    if (c.warp_kind == "tabulated-radial")
      return WarpFactor::tabulated_radial(load_radial_csv(c.warp_profile_csv));
    throw std::runtime_error("unknown warp kind " + c.warp_kind);
  }();
  const int n2 = base.dim() == 1 ? 1 : c.n2;
  return std::make_shared<GridGeometry>(std::move(base), std::move(warp), c.n1, n2);
}

}  // namespace warpmcf
