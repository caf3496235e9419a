// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include <CLI11.hpp>

#include "emlattice/cli.hpp"

int main(int argc, char** argv) {
  using emlattice::cli::JobSpec;
  JobSpec job;
  CLI::App app{"Exact local Euler-Maclaurin sums, mu-functions and Ehrhart quasipolynomials"};
  app.add_option("command", job.command, "count|sum|contributions|mu|ehrhart|genfun|selftest")
      ->required()
      ->check(CLI::IsMember({"count", "sum", "contributions", "mu", "ehrhart", "genfun", "selftest"}));
  app.add_option("--input", job.input, "polytope or cone JSON file (or inline JSON)");
  app.add_option("--poly", job.poly, "polynomial, e.g. \"x1^20*x2 + 3/2*x2^2\"");
  app.add_option("--order", job.order, "series order (mu and genfun default to 4)");
  app.add_option("--q", job.q_path, "JSON file with the scalar product matrix");
  app.add_option("--format", job.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--jobs", job.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--cache", job.cache_path, "persistent mu-cache file");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return emlattice::cli::kUsage;
  }
  return emlattice::cli::run(job, std::cout, std::cerr);
}
