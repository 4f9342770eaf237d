#pragma once

#include <optional>
#include <string>
#include <vector>

#include "summa/common.hpp"
#include "summa/convexdual.hpp"
#include "summa/seqcore.hpp"
#include "summa/summability.hpp"

namespace summa::simonslab {

using convexdual::DualBody;
using convexdual::GeneratingSet;
using convexdual::Vec;
using seqcore::SequenceSpec;
using seqcore::VectorSequence;
using summability::ShiftPolicy;
using summability::SummabilityMatrix;

/// The quasi-additive map families the experiments run over. Each kind fixes
/// the coordinate map P_n and its quasi-additivity constant M:
///   Identity        P_n(s) = |s_n|                                M = 1
///   StrongMatrix    P_n(s) = sum_k a_nk |s_k|^p        (p >= 1)   M = 2^{p-1}
///   StrongMatrixRoot  the p-th root of the above       (p >= 1)   M = 1
///   Maddox          P_n(s) = sum_k a_nk |s_k|^{p_k}    (p_k >= 1) M = 2^{r-1}
///   PreCauchyMean   P_n(s) = (1/n^2) sum_{i,j<=n} |s_i - s_j|     M = 1
///   FAShiftSup      P_n(s) = sup_l |sum_k a_nk s_{k+l}|           M = 1
/// P(0) = 0 holds for every kind.
enum class PMapKind {
  Identity,
  StrongMatrix,
  StrongMatrixRoot,
  Maddox,
  PreCauchyMean,
  FAShiftSup
};

class PMapSpec {
 public:
  static PMapSpec identity();
  static PMapSpec strong_matrix(SummabilityMatrix A, double p);
  static PMapSpec strong_matrix_root(SummabilityMatrix A, double p);
  static PMapSpec maddox(SummabilityMatrix A, SequenceSpec exponents);
  static PMapSpec pre_cauchy_mean();
  static PMapSpec fa_shift_sup(SummabilityMatrix A,
                               ShiftPolicy shifts = ShiftPolicy::exhaustive());

  PMapKind kind() const { return kind_; }
  double quasi_additivity_m() const;
  double exponent() const { return p_; }
  double exponent_sup() const { return r_; }  // r for Maddox, p otherwise
  const SummabilityMatrix& matrix() const;
  const SequenceSpec& exponents() const;
  const ShiftPolicy& shifts() const { return shifts_; }
  bool has_matrix() const { return bool(matrix_); }
  /// CSV-safe label, e.g. "strong(cesaro p=2)".
  std::string label() const;

 private:
  PMapSpec() = default;
  PMapKind kind_ = PMapKind::Identity;
  std::optional<SummabilityMatrix> matrix_;
  double p_ = 1.0;
  double r_ = 1.0;
  std::optional<SequenceSpec> exponents_;
  ShiftPolicy shifts_;
};

/// P_n(s) for the given kind; delegates to the summability terms.
double pmap_term(const PMapSpec& P, const SequenceSpec& s, i64 n);

struct ValueWithExactness {
  double value = 0.0;
  bool exact = false;
};

/// limsup_n P_n(s). Exact closed forms where structure permits (eventually
/// periodic data under the Cesaro matrix, indicators with declared density);
/// otherwise a tail-sample estimate at `depth`, labeled numeric.
ValueWithExactness pmap_limsup(const PMapSpec& P, const SequenceSpec& s,
                               i64 depth = 100'000);

/// limsup_n s_n without absolute values, as used by the Simons equality:
/// exact for eventually periodic data (max over the period block).
ValueWithExactness signed_limsup(const SequenceSpec& s, i64 depth = 100'000);

struct SupOptions {
  i64 depth = 100'000;
  int ball_directions = 2000;
  u64 ball_seed = 0xba11d1c5ull;
};

struct SupLimsupResult {
  double value = 0.0;
  bool exact = false;  // false whenever any contributing evaluation sampled
  Vec argmax;
};

/// sup over the body (or set) of limsup_n P_n(x*(xs)). Polytopes reduce to
/// their extreme points: each P_n is convex, x* -> x*(xs) is linear, and a
/// decreasing limit of convex functions is convex, so the sup is attained at
/// a vertex. Balls are sampled over seeded directions and labeled
/// approximate.
SupLimsupResult sup_limsup(const PMapSpec& P, const DualBody& K,
                           const VectorSequence& xs, const SupOptions& = {});
SupLimsupResult sup_limsup(const PMapSpec& P, const GeneratingSet& B,
                           const VectorSequence& xs, const SupOptions& = {});

/// Same reduction for the signed limsup of the Simons equality.
SupLimsupResult sup_signed_limsup(const DualBody& K, const VectorSequence& xs,
                                  const SupOptions& = {});
SupLimsupResult sup_signed_limsup(const GeneratingSet& B,
                                  const VectorSequence& xs,
                                  const SupOptions& = {});

struct CheckOptions {
  Tolerances tols;
  i64 depth = 100'000;
  int ball_directions = 2000;
  bool waive_generation_check = false;
  /// Generation verdict precomputed by the caller (saves re-probing a large
  /// sampled set for every sequence over the same body/set pair).
  std::optional<bool> generation_known;
};

struct TheoremReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double factor_m = 1.0;
  bool satisfied = false;
  bool lhs_exact = false;
  bool rhs_exact = false;
  bool hypothesis_checked = false;
  bool hypothesis_met = true;
  Vec lhs_argmax;
  Vec rhs_argmax;
  std::string detail;
};

/// Simons equality: sup over K of limsup x*(x_n) against the same sup over
/// B, satisfied iff |lhs - rhs| <= tol (M = 1). The generation hypothesis is
/// recorded, never thrown, so negative experiments can observe the gap.
TheoremReport check_simons(const DualBody& K, const GeneratingSet& B,
                           const VectorSequence& xs,
                           const CheckOptions& opt = {});

/// The quasi-additive bound: sup_K limsup P_n(x*(xs)) <= M sup_B limsup
/// P_n(x*(xs)). Throws HypothesisNotVerified when B fails the generation
/// check and the waiver flag is absent.
TheoremReport check_pmap_bound(const PMapSpec& P, const DualBody& K,
                               const GeneratingSet& B, const VectorSequence& xs,
                               const CheckOptions& opt = {});

/// Equality for the constant-exponent strong matrix family (root form).
/// Both sides are compared in power form: equality of the p-th roots is
/// equality of the powers.
TheoremReport check_strong_equality(const DualBody& K, const GeneratingSet& B,
                                    const SummabilityMatrix& A, double p,
                                    const VectorSequence& xs,
                                    const CheckOptions& opt = {});

struct AuditCheck {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct AuditReport {
  std::vector<AuditCheck> checks;
  double audited_m = 1.0;
  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

/// Sampled audit of the map conditions: P(0) = 0 exactly, midpoint convexity
/// of P_n, quasi-additivity at the declared (or claimed) M, and a
/// continuity-at-0 ladder. Lower semicontinuity with respect to pointwise
/// convergence on bounded sets is not certifiable from finitely many
/// samples; only a truncation spot check runs, and the report says so.
AuditReport pmap_condition_audit(const PMapSpec& P, int samples, u64 seed,
                                 std::optional<double> claimed_m = std::nullopt);

enum class RainwaterMethod { Strong, Statistical, FA, PreCauchy };

struct RainwaterSpec {
  RainwaterMethod method = RainwaterMethod::Strong;
  std::optional<SummabilityMatrix> matrix;
  double p = 1.0;
  std::optional<SequenceSpec> exponents;  // Maddox-style strong method
};

struct RainwaterReport {
  enum class Status { Holds, Violated, NotApplicable };
  Status status = Status::Holds;
  std::optional<Vec> witness;  // violating probe / failing hypothesis point
  std::string detail;
  int probes_checked = 0;
  bool generation_ok = true;
};

struct RainwaterOptions {
  i64 depth = 100'000;
  double numeric_tol = 1e-3;
  int probe_directions = 1000;
  u64 probe_seed = 0x9a1b5eedull;
};

/// Checks a convergence-transfer statement: if x*(x_n) converges to x*(x) in
/// the method for every b in B (verified first; otherwise NotApplicable),
/// then the same holds under every probe functional (ambient polytope
/// vertices plus seeded sphere directions). Exponent sequences with
/// inf p_k = q < 1 are normalized to p_k / q first.
RainwaterReport rainwater_check(const GeneratingSet& B, const VectorSequence& xs,
                                const Vec& x, const RainwaterSpec& method,
                                const RainwaterOptions& opt = {});

// ---- seeded experiment instances ----

struct SuiteParams {
  std::vector<int> dims = {2, 3, 4};
  int min_vertices = 4;
  int max_vertices = 12;
  int max_period = 8;
  int max_preperiod = 3;
  double value_lo = -1.0;
  double value_hi = 1.0;
  bool constant_sequences = false;
};

struct Instance {
  DualBody body;
  GeneratingSet generating_set;
  VectorSequence xs;
};

/// Deterministic random instance: a polytope with its extreme points as the
/// generating set and an eventually periodic vector sequence.
Instance generate_instance(const SuiteParams& params, u64 seed, u64 index);

/// Random vector sequence only (for experiments with a fixed body/set).
VectorSequence generate_sequence(const SuiteParams& params, int dim, u64 seed,
                                 u64 index);

}  // namespace summa::simonslab
