#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace summa {

using i64 = std::int64_t;
using u64 = std::uint64_t;

/// Tolerance tiers used throughout the library.
///   exact   - closed-form paths (double arithmetic, no sampling)
///   numeric - depth-limited term evaluation
///   sampled - sphere-sampling geometry
struct Tolerances {
  double exact = 1e-9;
  double numeric = 1e-3;
  double sampled = 1e-2;
};

// Error taxonomy. Each failure mode gets its own type so callers can
// distinguish contract violations from numeric trouble.
struct NotExactlyComputable : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotClosed : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnknownName : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TailNotBounded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MatrixNotPositive : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ExponentNotPositive : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ExhaustiveRequiresPeriodic : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DeclaredRegularContradiction : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SubsetViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct Indeterminate : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct HypothesisNotVerified : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// splitmix64. Every random draw in the project flows through this generator,
/// so any sampled result is fully determined by a single 64-bit seed.
/// Gaussians come from Box-Muller on consecutive uniform pairs.
class SplitMix64 {
 public:
  explicit SplitMix64(u64 seed) : state_(seed) {}

  u64 next_u64() {
    u64 z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [lo, hi], inclusive.
  i64 uniform_int(i64 lo, i64 hi) {
    return lo + i64(next_u64() % u64(hi - lo + 1));
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  /// Stream split: derive an independent generator for item `index`.
  SplitMix64 fork(u64 index) const {
    return SplitMix64(state_ + 0x9e3779b97f4a7c15ull * (index + 1));
  }

 private:
  u64 state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace summa
