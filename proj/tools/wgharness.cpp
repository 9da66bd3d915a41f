// wgharness: configuration-driven sweep campaigns for the waveguide
// Strichartz/NLS laboratory.
//
//   wgharness <command> [--config <path>] --seed <u64> --out <dir> [--workers <n>]
//
// Commands: selftest, bilinear-sweep, measure-sweep, extremizer-check,
// nls-run, report.  Exit codes: 0 ok, 1 assertion failed, 2 usage/config
// error.  WGLAB_OUT and WGLAB_WORKERS override --out/--workers.

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"

#include "wglab/campaign.hpp"

int main(int argc, char** argv) {
  CLI::App app{"waveguide Strichartz/NLS laboratory harness"};
  app.require_subcommand(1);

  wglab::Campaign c;
  c.id = "campaign";
  c.output_dir = "out";

  const std::vector<std::string> commands = {"selftest",         "bilinear-sweep",
                                             "measure-sweep",    "extremizer-check",
                                             "nls-run",          "report"};
  for (const std::string& name : commands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", c.config_path, "key = value config file");
    sub->add_option("--seed", c.seed, "random seed");
    sub->add_option("--out", c.output_dir, "output directory");
    sub->add_option("--workers", c.workers, "worker count (recorded; execution is sequential)");
    sub->add_option("--id", c.id, "campaign id");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  c.command = app.get_subcommands().front()->get_name();

  if (const char* env = std::getenv("WGLAB_OUT")) c.output_dir = env;
  if (const char* env = std::getenv("WGLAB_WORKERS")) c.workers = std::atoi(env);
  if (c.workers < 1) c.workers = 1;

  return wglab::run_campaign(c);
}
