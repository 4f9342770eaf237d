#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "summa/common.hpp"
#include "summa/seqcore.hpp"

namespace summa::summability {

using seqcore::SequenceSpec;

/// Infinite matrix A = (a_nk) given as an entry generator plus enough row
/// metadata to certify truncation: either exact row support (row-finite) or
/// a tail bound sum_{k>K} |a_nk| <= tail_bound(n, K), nonincreasing in K.
/// Regularity and positivity are declared properties of a family, never
/// inferred from finite data.
class SummabilityMatrix {
 public:
  using Entry = std::function<double(i64 n, i64 k)>;
  using RowSupport = std::function<std::pair<i64, i64>(i64 n)>;
  using TailBound = std::function<double(i64 n, i64 K)>;

  static SummabilityMatrix row_finite(std::string name, Entry entry,
                                      RowSupport support, bool declared_regular,
                                      bool positive);
  static SummabilityMatrix tail_bounded(std::string name, Entry entry,
                                        TailBound tail, bool declared_regular,
                                        bool positive);

  double entry(i64 n, i64 k) const { return entry_(n, k); }
  bool has_row_support() const { return bool(support_); }
  std::pair<i64, i64> row_support(i64 n) const { return support_(n); }
  bool has_tail_bound() const { return bool(tail_); }
  double tail_bound(i64 n, i64 K) const { return tail_(n, K); }
  bool declared_regular() const { return declared_regular_; }
  bool positive() const { return positive_; }
  const std::string& name() const { return name_; }
  /// Weights for round-tripping the riesz builtin; empty otherwise.
  const std::vector<double>& riesz_weights() const { return riesz_weights_; }

 private:
  SummabilityMatrix() = default;
  friend SummabilityMatrix builtin_matrix(const std::string&,
                                          std::span<const double>);
  std::string name_;
  Entry entry_;
  RowSupport support_;
  TailBound tail_;
  bool declared_regular_ = false;
  bool positive_ = false;
  std::vector<double> riesz_weights_;
};

/// Named builtin families, all positive, regular and row-finite:
///   cesaro        - a_nk = 1/n for k <= n
///   identity      - a_nk = [n == k]
///   riesz         - a_nk = w_k / W_n for k <= n; the weight list is repeated
///                   cyclically and must be strictly positive
/// Throws UnknownName for anything else.
SummabilityMatrix builtin_matrix(const std::string& name,
                                 std::span<const double> weights = {});

/// Intentionally broken matrices used to exercise the falsifier:
///   row_sum_2     - a_nk = 2/n for k <= n (row sums 2)
///   sticky_column - a_n1 = 1 for all n (column 1 does not vanish)
/// Neither is declared regular.
SummabilityMatrix doctored_matrix(const std::string& name);

/// sum_k a_nk s_k for row n, truncated where tail_bound * sup|s| < 1e-12.
/// Throws TailNotBounded when neither row support nor a certifying tail
/// bound is available.
double transform(const SummabilityMatrix& A, const SequenceSpec& s, i64 n);

struct ToeplitzSubVerdict {
  bool consistent = true;
  i64 witness = -1;     // row n or column k, depending on the condition
  double value = 0.0;   // offending quantity
  std::string detail;
};

struct ToeplitzReport {
  ToeplitzSubVerdict row_norms;       // sup_n sum_k |a_nk| < inf
  ToeplitzSubVerdict row_sums_to_one; // sum_k a_nk -> 1
  ToeplitzSubVerdict columns_to_zero; // a_nk -> 0 for each k
  i64 depth = 0;
  double tol = 0.0;
  bool all_consistent() const {
    return row_norms.consistent && row_sums_to_one.consistent &&
           columns_to_zero.consistent;
  }
};

/// Checks the three regularity conditions on finite evidence. Can refute,
/// never prove. Throws DeclaredRegularContradiction when a declared-regular
/// matrix is refuted.
ToeplitzReport toeplitz_falsify(const SummabilityMatrix& A, i64 depth,
                                double tol);

/// sum_k a_nk |s_k - x|^p for row n. Requires a positive matrix.
double strong_term(const SummabilityMatrix& A, const SequenceSpec& s, double x,
                   double p, i64 n);

/// sum_k a_nk |s_k - x|^{p_k} with a strictly positive eventually periodic
/// exponent sequence.
double strong_term_maddox(const SummabilityMatrix& A, const SequenceSpec& s,
                          double x, const SequenceSpec& exponents, i64 n);

/// sum_k a_nk [ |s_k - x| >= eps ] for row n. Requires a positive matrix.
double a_statistical_term(const SummabilityMatrix& A, const SequenceSpec& s,
                          double x, double eps, i64 n);

/// (1/n^2) sum_{i,j<=n} |s_i - s_j|, exactly.
double pre_cauchy_mean_term(const SequenceSpec& s, i64 n);

/// (1/n^2) |{(i,j) in [1,n]^2 : |s_i - s_j| >= eps}|, exactly.
double pre_cauchy_count_term(const SequenceSpec& s, double eps, i64 n);

/// Exact limit of the pre-Cauchy mean term for an eventually periodic
/// sequence: the average pairwise absolute gap over the period block.
double pre_cauchy_mean_limit_exact(const SequenceSpec& s);

/// Shift sets for F_A evaluation. Exhaustive mode exploits periodicity
/// (shifts beyond the preperiod reduce mod the period); explicit mode takes
/// a user-supplied shift list and is labeled numeric by callers.
struct ShiftPolicy {
  enum class Mode { Exhaustive, Explicit };
  Mode mode = Mode::Exhaustive;
  std::vector<i64> shifts;

  static ShiftPolicy exhaustive() { return {}; }
  static ShiftPolicy explicit_set(std::vector<i64> s) {
    return {Mode::Explicit, std::move(s)};
  }
};

/// sup_l | sum_k a_nk s_{k+l} - x | for row n, exact in exhaustive mode.
/// Throws ExhaustiveRequiresPeriodic for non-periodic s in exhaustive mode.
double fa_term(const SummabilityMatrix& A, const SequenceSpec& s, double x,
               i64 n, const ShiftPolicy& shifts = ShiftPolicy::exhaustive());

/// Classification outcome for one (sequence, method) pair. Exact verdicts
/// carry a closed-form justification; Unknown never claims a limit.
struct ConvergenceVerdict {
  enum class Status { Converges, Diverges, Unknown };
  Status status = Status::Unknown;
  double limit = 0.0;  // meaningful only when status == Converges
  bool exact = false;
  std::string method;
  std::string justification;  // nonempty on exact verdicts
  std::string witness;        // nonempty on Diverges
  i64 depth = 0;
  std::vector<std::pair<i64, double>> samples;  // terms at sampled depths

  bool converges() const { return status == Status::Converges; }
  bool diverges() const { return status == Status::Diverges; }

  static ConvergenceVerdict converges_to(std::string method, double limit,
                                         bool exact, std::string justification);
  static ConvergenceVerdict diverges_with(std::string method,
                                          std::string witness, bool exact,
                                          std::string justification);
  static ConvergenceVerdict unknown(std::string method, i64 depth);
};

struct ClassifyOptions {
  i64 depth = 100'000;
  double numeric_tol = 1e-3;
};

ConvergenceVerdict classify_ordinary(const SequenceSpec& s,
                                     const ClassifyOptions& opt = {});

/// A-statistical convergence. Exact where structure permits: eventually
/// periodic sequences decide via per-value period densities; indicators with
/// declared density decide under the Cesaro matrix. Requires A positive and
/// declared regular.
ConvergenceVerdict classify_statistical(const SummabilityMatrix& A,
                                        const SequenceSpec& s,
                                        const ClassifyOptions& opt = {});

/// Strong A-p convergence, same exact structure as classify_statistical.
ConvergenceVerdict classify_strong(const SummabilityMatrix& A,
                                   const SequenceSpec& s, double p,
                                   const ClassifyOptions& opt = {});

ConvergenceVerdict classify_pre_cauchy(const SequenceSpec& s,
                                       const ClassifyOptions& opt = {});

/// Almost convergence. Eventually periodic sequences converge to the period
/// mean (windowed Cesaro means converge uniformly in the shift for periodic
/// tails); indicators with a vanishing window bound converge to the off
/// value; otherwise Unknown.
ConvergenceVerdict classify_almost(const SequenceSpec& s,
                                   const ClassifyOptions& opt = {});

struct ConnorReport {
  ConvergenceVerdict statistical;
  ConvergenceVerdict strong;
  bool limits_agree = false;       // same status, limits within tolerance
  bool strong_implies_stat = true; // no witnessed violation at this depth
  bool stat_implies_strong = true;
  std::string detail;
};

/// Evaluates the statistical and strong-p verdicts side by side and reports
/// agreement plus any witnessed violation of either implication between them.
ConnorReport connor_crosscheck(const SequenceSpec& s,
                               const SummabilityMatrix& A, double p, i64 depth);

}  // namespace summa::summability
