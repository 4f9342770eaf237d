#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "summa/cli.hpp"

namespace {

int run(const std::string& subcommand, const std::string& config_path,
        const std::string& out_path, const std::string& format,
        const summa::cli::Overrides& overrides) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot open config file '" << config_path << "'\n";
    return 2;
  }
  summa::io::json config;
  try {
    in >> config;
  } catch (const std::exception& e) {
    std::cerr << "error: config parse failed: " << e.what() << "\n";
    return 2;
  }

  summa::cli::RunResult result;
  try {
    result = summa::cli::run_subcommand(subcommand, config, overrides);
  } catch (const summa::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  const std::string& rendered =
      format == "markdown" ? result.markdown : result.csv;
  if (out_path.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open output file '" << out_path << "'\n";
      return 2;
    }
    out << rendered;
  }
  return result.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "summa: generalized-convergence classifiers and convex-duality "
      "verification experiments"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  std::string format = "csv";
  summa::cli::Overrides overrides;
  long long seed_flag = -1;
  bool seed_set = false;
  long long depth_flag = 0;
  bool depth_set = false;
  double tol_exact = 0, tol_numeric = 0, tol_sampled = 0;
  bool tex = false, tnum = false, tsam = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config path")->required();
    cmd->add_option("--out", out_path, "output path (stdout when omitted)");
    cmd->add_option("--format", format, "csv | markdown")
        ->check(CLI::IsMember({"csv", "markdown"}));
    cmd->add_option("--seed", seed_flag, "override config seed")
        ->each([&](const std::string&) { seed_set = true; });
    cmd->add_option("--depth", depth_flag, "override numeric depth")
        ->each([&](const std::string&) { depth_set = true; });
    cmd->add_option("--tol-exact", tol_exact, "exact-path tolerance")
        ->each([&](const std::string&) { tex = true; });
    cmd->add_option("--tol-numeric", tol_numeric, "numeric-path tolerance")
        ->each([&](const std::string&) { tnum = true; });
    cmd->add_option("--tol-sampled", tol_sampled, "sampled-geometry tolerance")
        ->each([&](const std::string&) { tsam = true; });
    cmd->add_option("--jobs", overrides.jobs, "parallel instance workers");
  };

  auto* classify = app.add_subcommand(
      "classify", "classify sequences under the configured methods");
  auto* regularity = app.add_subcommand(
      "regularity", "run the regularity falsifier over configured matrices");
  auto* verify = app.add_subcommand(
      "verify", "run a verification experiment batch");
  add_common(classify);
  add_common(regularity);
  add_common(verify);

  CLI11_PARSE(app, argc, argv);

  // Seed precedence: --seed flag, then SUMMA_SEED, then the config file.
  if (const char* env = std::getenv("SUMMA_SEED"); env && !seed_set) {
    overrides.seed = std::strtoull(env, nullptr, 10);
  }
  if (seed_set) overrides.seed = summa::u64(seed_flag);
  if (depth_set) overrides.depth = depth_flag;
  if (tex) overrides.tol_exact = tol_exact;
  if (tnum) overrides.tol_numeric = tol_numeric;
  if (tsam) overrides.tol_sampled = tol_sampled;

  const std::string subcommand = classify->parsed()     ? "classify"
                                 : regularity->parsed() ? "regularity"
                                                        : "verify";
  return run(subcommand, config_path, out_path, format, overrides);
}
