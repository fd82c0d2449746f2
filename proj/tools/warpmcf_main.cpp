#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "warpmcf/scenario.hpp"

namespace {

std::string output_root_from_env() {
  const char* v = std::getenv("WARPMCF_OUT_ROOT");
  return v ? std::string(v) : std::string();
}

void print_config_errors(const std::vector<warpmcf::ConfigError>& errors) {
  std::fprintf(stderr, "config errors:\n");
  for (const auto& e : errors) std::fprintf(stderr, "  %s: %s\n", e.key.c_str(), e.message.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mean curvature flow of graphs in warped products M x_phi R"};
  app.require_subcommand(1);

  std::string flow_config, resume_path;
  auto* flow = app.add_subcommand("flow", "run a graph-flow scenario from a config file");
  flow->add_option("config", flow_config, "path to the key-value config")->required();
  flow->add_option("--resume", resume_path, "restart from a state snapshot");

  bool catalog = false;
  std::string verify_out;
  auto* verify = app.add_subcommand("verify", "run the finite-difference conformance checks");
  verify->add_flag("--catalog", catalog, "print the (base, warp) catalog and exit");
  verify->add_option("--output", verify_out, "also write the JSON report here");

  std::string ce_config;
  auto* ce = app.add_subcommand("counterexample", "equivariant profile-curve scenarios in H^3");
  ce->add_option("config", ce_config, "path to the key-value config")->required();

  std::string sweep_config, sweep_param;
  auto* sweep = app.add_subcommand("sweep", "run a scenario over a parameter list");
  sweep->add_option("config", sweep_config, "path to the key-value config")->required();
  sweep->add_option("--param", sweep_param, "key=v1,v2,... override per run")->required();

  CLI11_PARSE(app, argc, argv);
  const std::string root = output_root_from_env();

  try {
    if (*flow) {
      auto parsed = warpmcf::parse_config_file(flow_config);
      if (!parsed.ok()) {
        print_config_errors(parsed.errors);
        return warpmcf::kExitConfigError;
      }
      const int code = warpmcf::run_scenario(parsed.config, root, resume_path);
      std::fprintf(stdout, "[flow] %s -> exit %d\n", parsed.config.output_dir.c_str(), code);
      return code;
    }
    if (*verify) {
      return warpmcf::run_verify(verify_out, catalog);
    }
    if (*ce) {
      auto parsed = warpmcf::parse_counterexample_file(ce_config);
      if (!parsed.ok()) {
        print_config_errors(parsed.errors);
        return warpmcf::kExitConfigError;
      }
      const int code = warpmcf::run_counterexample_scenario(parsed, root);
      std::fprintf(stdout, "[counterexample] %s -> exit %d\n", parsed.output_dir.c_str(), code);
      return code;
    }
    if (*sweep) {
      const std::size_t eq = sweep_param.find('=');
      if (eq == std::string::npos) {
        std::fprintf(stderr, "--param needs key=v1,v2,...\n");
        return warpmcf::kExitConfigError;
      }
      const std::string key = sweep_param.substr(0, eq);
      std::stringstream vals(sweep_param.substr(eq + 1));
      std::string val;
      int worst = 0;
      while (std::getline(vals, val, ',')) {
        std::ifstream in(sweep_config);
        if (!in) {
          std::fprintf(stderr, "cannot open %s\n", sweep_config.c_str());
          return warpmcf::kExitConfigError;
        }
        // Drop any existing assignment of the swept key, then append ours.
        std::stringstream text;
        std::string line;
        while (std::getline(in, line)) {
          const std::size_t e = line.find('=');
          std::string k = e == std::string::npos ? "" : line.substr(0, e);
          k.erase(std::remove_if(k.begin(), k.end(), ::isspace), k.end());
          if (k != key) text << line << "\n";
        }
        text << key << " = " << val << "\n";
        auto parsed = warpmcf::parse_config(text.str());
        if (!parsed.ok()) {
          print_config_errors(parsed.errors);
          return warpmcf::kExitConfigError;
        }
        parsed.config.output_dir += "/" + key + "=" + val;
        std::fprintf(stdout, "[sweep] %s = %s\n", key.c_str(), val.c_str());
        worst = std::max(worst, warpmcf::run_scenario(parsed.config, root));
      }
      return worst;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
