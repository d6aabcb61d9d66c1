// conedn <subcommand> --config <path> [--out <dir>] [--seed <u64>]
//
// Exit status: 0 all checks pass, 1 a check failed (JSON still written),
// 2 configuration or domain error, 3 numerical or I/O failure.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "conedn/conedn.h"

namespace {

int fail(cdn_status s) {
  std::fprintf(stderr, "conedn: %s: %s\n", cdn_status_name(s), cdn_last_error());
  return (s == CDN_ERR_CONFIG || s == CDN_ERR_DOMAIN) ? 2 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> subcommands{"angle",  "symbol",      "extend",       "solve",
                                             "bounds", "shape-check", "cancel-check", "stokes",
                                             "equilibrium", "norms"};
  CLI::App app{"Dirichlet-Neumann operator on perturbed cones"};
  std::string sub, config_path, out_dir;
  std::uint64_t seed = 0;
  app.add_option("subcommand", sub, "computation to run")
      ->required()
      ->check(CLI::IsMember(subcommands));
  app.add_option("--config,-c", config_path, "YAML configuration file")->check(CLI::ExistingFile);
  auto* out_opt = app.add_option("--out,-o", out_dir, "output directory (overrides output.dir)");
  auto* seed_opt = app.add_option("--seed", seed, "random seed (overrides seed)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  cdn_config* cfg = nullptr;
  cdn_status st = config_path.empty() ? cdn_config_create(&cfg)
                                      : cdn_config_load_file(config_path.c_str(), &cfg);
  if (st != CDN_OK) return fail(st);
  if (*out_opt && (st = cdn_config_set(cfg, "output.dir", out_dir.c_str())) != CDN_OK) {
    cdn_config_destroy(cfg);
    return fail(st);
  }
  if (*seed_opt &&
      (st = cdn_config_set(cfg, "seed", std::to_string(seed).c_str())) != CDN_OK) {
    cdn_config_destroy(cfg);
    return fail(st);
  }

  cdn_report* rep = nullptr;
  st = cdn_run(sub.c_str(), cfg, &rep);
  const std::string dir = cdn_config_output_dir(cfg);
  cdn_config_destroy(cfg);
  if (st != CDN_OK) return fail(st);

  std::printf("%s\n", cdn_report_json(rep));
  st = cdn_report_write(rep, dir.c_str());
  const int pass = cdn_report_pass(rep);
  cdn_report_destroy(rep);
  if (st != CDN_OK) return fail(st);
  std::printf("%s: %s (artifacts in %s)\n", sub.c_str(), pass ? "PASS" : "FAIL", dir.c_str());
  return pass ? 0 : 1;
}
