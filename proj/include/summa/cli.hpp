#pragma once

#include <optional>
#include <string>
#include <vector>

#include "summa/common.hpp"
#include "summa/serialize.hpp"

namespace summa::cli {

/// Command-line overrides applied on top of the config document.
/// Precedence: flag > SUMMA_SEED env var > config field > default.
struct Overrides {
  std::optional<u64> seed;
  std::optional<i64> depth;
  std::optional<double> tol_exact;
  std::optional<double> tol_numeric;
  std::optional<double> tol_sampled;
  int jobs = 1;
};

struct RunResult {
  std::string csv;
  std::string markdown;
  int violations = 0;
  int hypothesis_unmet = 0;
  int errors = 0;

  /// Exit-status contract: 0 all satisfied; 1 theorem/regularity violation
  /// (or evaluation error); 2 config error (raised as ConfigError before a
  /// result exists); 3 hypothesis-unmet-only failures.
  int exit_code() const {
    if (violations > 0 || errors > 0) return 1;
    if (hypothesis_unmet > 0) return 3;
    return 0;
  }
};

/// One CSV row per (sequence, method):
/// sequence_id, method, status, limit, exactness, depth, last_term
RunResult run_classify(const io::json& config, const Overrides& ov = {});

/// Wraps the regularity falsifier over the configured matrices.
RunResult run_regularity(const io::json& config, const Overrides& ov = {});

/// Verification experiments. config["experiment"] selects one of
/// simons | theorem31 | cor33 | rainwater | audit; instances come from
/// explicit body/generating_set/sequences fields or a seeded "suite" block.
/// CSV columns: instance_id, experiment, lhs, rhs, M, satisfied,
/// exactness_lhs, exactness_rhs, witness.
RunResult run_verify(const io::json& config, const Overrides& ov = {});

/// Dispatch by subcommand name (classify | regularity | verify).
RunResult run_subcommand(const std::string& subcommand, const io::json& config,
                         const Overrides& ov = {});

/// Shortest round-trip decimal rendering; the CSV number format.
std::string format_double(double x);

}  // namespace summa::cli
