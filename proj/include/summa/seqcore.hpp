#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "summa/common.hpp"

namespace summa::seqcore {

/// Subset of the positive integers with countable structure attached:
/// membership, the counting function |S ∩ [1,n]|, an optional declared
/// natural density, and an optional window bound
/// maxcount(n) >= sup_l |S ∩ (l, l+n]|.
///
/// Builtins (squares, powers_of_two) carry closed forms for everything;
/// custom sets fall back to an O(n) counting loop when no counter is given.
class IntegerSetSpec {
 public:
  using Membership = std::function<bool(i64)>;
  using Counter = std::function<i64(i64)>;

  static IntegerSetSpec squares();
  static IntegerSetSpec powers_of_two();
  static IntegerSetSpec custom(std::string name, Membership member,
                               std::optional<double> density = std::nullopt,
                               Counter count = nullptr,
                               Counter maxcount = nullptr);

  bool member(i64 k) const;
  /// |S ∩ [1, n]|. Nondecreasing; count(n) - count(n-1) == member(n).
  i64 count(i64 n) const;
  std::optional<double> density() const { return density_; }
  /// Window bound, if declared: maxcount(n) >= sup_l |S ∩ (l, l+n]| >= count(n).
  std::optional<i64> maxcount(i64 n) const;
  bool has_maxcount() const { return bool(maxcount_); }

  /// Declared structural facts (true for both builtins).
  bool infinite() const { return infinite_; }
  bool infinite_complement() const { return infinite_complement_; }
  /// maxcount(n)/n -> 0 is known analytically.
  bool window_density_vanishes() const { return window_density_vanishes_; }

  const std::string& name() const { return name_; }

 private:
  IntegerSetSpec() = default;
  std::string name_;
  Membership member_;
  Counter count_;
  Counter maxcount_;
  std::optional<double> density_;
  bool infinite_ = false;
  bool infinite_complement_ = false;
  bool window_density_vanishes_ = false;
};

struct SequenceSpec;

/// s_k = preperiod[k-1] for k <= |preperiod|, then the period block repeats.
/// The period is never empty.
struct EventuallyPeriodic {
  std::vector<double> preperiod;
  std::vector<double> period;
};

/// s_k = on_value when k is in the support, off_value otherwise.
struct SparseIndicator {
  IntegerSetSpec support;
  double on_value = 0.0;
  double off_value = 0.0;
};

/// s_k = sum_i coefficients[i] * parts[i](k). Sizes match.
struct LinearCombo {
  std::vector<double> coefficients;
  std::vector<SequenceSpec> parts;
};

/// Symbolic bounded scalar sequence, 1-based. Immutable after construction;
/// all operations on it are pure.
struct SequenceSpec {
  std::variant<EventuallyPeriodic, SparseIndicator, LinearCombo> node;

  static SequenceSpec periodic(std::vector<double> period);
  static SequenceSpec periodic(std::vector<double> preperiod,
                               std::vector<double> period);
  static SequenceSpec constant(double c);
  static SequenceSpec indicator(IntegerSetSpec support, double on, double off);
  static SequenceSpec combo(std::vector<double> coefficients,
                            std::vector<SequenceSpec> parts);

  bool is_eventually_periodic() const {
    return std::holds_alternative<EventuallyPeriodic>(node);
  }
  bool is_indicator() const {
    return std::holds_alternative<SparseIndicator>(node);
  }
  bool is_combo() const { return std::holds_alternative<LinearCombo>(node); }
};

/// s_k for k >= 1. Totally defined.
double value_at(const SequenceSpec& spec, i64 k);

/// A finite bound with |s_k| <= bound for every k. Computable for every
/// variant.
double sup_bound(const SequenceSpec& spec);

/// Exact limsup: max over the period block (the values attained infinitely
/// often are exactly the period values). Accepts EventuallyPeriodic or any
/// combo reducible to one; throws NotExactlyComputable otherwise.
double limsup_exact(const SequenceSpec& spec);

/// Arithmetic mean of the period block. Same domain as limsup_exact.
double period_mean(const SequenceSpec& spec);

/// Collapses a combo of eventually periodic parts into a single
/// EventuallyPeriodic spec: preperiod length = max over parts, period length
/// = lcm over parts, values by pointwise evaluation. Throws NotClosed if any
/// part involves a SparseIndicator.
SequenceSpec reduce_combo(const LinearCombo& combo);

/// EventuallyPeriodic view of a spec if one exists (the spec itself, or the
/// reduction of a closed combo). Empty for indicator-bearing specs.
std::optional<EventuallyPeriodic> try_reduce(const SequenceSpec& spec);

/// Bounded sequence (x_n) in R^d given coordinatewise.
struct VectorSequence {
  std::vector<SequenceSpec> coordinates;

  explicit VectorSequence(std::vector<SequenceSpec> coords);
  int dimension() const { return int(coordinates.size()); }
  /// Common bound R: |x_n[i]| <= R for every n and coordinate i.
  double bound() const;
  /// All coordinates reducible to EventuallyPeriodic.
  bool exact() const;
};

/// The scalar sequence k -> <x_star, x_k>, reduced to EventuallyPeriodic when
/// every coordinate admits it. Throws DimensionMismatch.
SequenceSpec apply_functional(std::span<const double> x_star,
                              const VectorSequence& xs);

}  // namespace summa::seqcore
