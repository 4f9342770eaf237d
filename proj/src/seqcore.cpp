#include "summa/seqcore.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace summa::seqcore {

namespace {

i64 isqrt(i64 n) {
  if (n <= 0) return 0;
  i64 r = i64(std::sqrt(double(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

constexpr i64 kMaxReducedPeriod = 10'000'000;

}  // namespace

IntegerSetSpec IntegerSetSpec::squares() {
  IntegerSetSpec s;
  s.name_ = "squares";
  s.member_ = [](i64 k) {
    const i64 r = isqrt(k);
    return r * r == k;
  };
  s.count_ = [](i64 n) { return isqrt(n); };
  // Squares in (l, l+n] are j^2 for j in an interval of length <= sqrt(n)+1.
  s.maxcount_ = [](i64 n) { return isqrt(n) + 1; };
  s.density_ = 0.0;
  s.infinite_ = true;
  s.infinite_complement_ = true;
  s.window_density_vanishes_ = true;
  return s;
}

IntegerSetSpec IntegerSetSpec::powers_of_two() {
  IntegerSetSpec s;
  s.name_ = "powers_of_two";
  s.member_ = [](i64 k) { return k >= 1 && (u64(k) & u64(k - 1)) == 0; };
  s.count_ = [](i64 n) {
    return n >= 1 ? i64(std::bit_width(u64(n))) : 0;
  };
  // Any window of length n holds at most floor(log2 n) + 2 powers of two.
  s.maxcount_ = [](i64 n) {
    return n >= 1 ? i64(std::bit_width(u64(n))) + 1 : 0;
  };
  s.density_ = 0.0;
  s.infinite_ = true;
  s.infinite_complement_ = true;
  s.window_density_vanishes_ = true;
  return s;
}

IntegerSetSpec IntegerSetSpec::custom(std::string name, Membership member,
                                      std::optional<double> density,
                                      Counter count, Counter maxcount) {
  IntegerSetSpec s;
  s.name_ = std::move(name);
  s.member_ = std::move(member);
  s.density_ = density;
  s.count_ = std::move(count);
  s.maxcount_ = std::move(maxcount);
  return s;
}

bool IntegerSetSpec::member(i64 k) const { return k >= 1 && member_(k); }

i64 IntegerSetSpec::count(i64 n) const {
  if (n < 1) return 0;
  if (count_) return count_(n);
  i64 c = 0;
  for (i64 k = 1; k <= n; ++k) c += member_(k) ? 1 : 0;
  return c;
}

std::optional<i64> IntegerSetSpec::maxcount(i64 n) const {
  if (!maxcount_) return std::nullopt;
  return maxcount_(n);
}

SequenceSpec SequenceSpec::periodic(std::vector<double> period) {
  return periodic({}, std::move(period));
}

SequenceSpec SequenceSpec::periodic(std::vector<double> preperiod,
                                    std::vector<double> period) {
  if (period.empty())
    throw std::invalid_argument("SequenceSpec: period must be nonempty");
  SequenceSpec s;
  s.node = EventuallyPeriodic{std::move(preperiod), std::move(period)};
  return s;
}

SequenceSpec SequenceSpec::constant(double c) { return periodic({c}); }

SequenceSpec SequenceSpec::indicator(IntegerSetSpec support, double on,
                                     double off) {
  SequenceSpec s;
  s.node = SparseIndicator{std::move(support), on, off};
  return s;
}

SequenceSpec SequenceSpec::combo(std::vector<double> coefficients,
                                 std::vector<SequenceSpec> parts) {
  if (coefficients.size() != parts.size())
    throw std::invalid_argument(
        "SequenceSpec: combo coefficient/part count mismatch");
  SequenceSpec s;
  s.node = LinearCombo{std::move(coefficients), std::move(parts)};
  return s;
}

double value_at(const SequenceSpec& spec, i64 k) {
  if (k < 1) throw std::invalid_argument("value_at: index must be >= 1");
  if (const auto* ep = std::get_if<EventuallyPeriodic>(&spec.node)) {
    const i64 pre = i64(ep->preperiod.size());
    if (k <= pre) return ep->preperiod[size_t(k - 1)];
    const i64 m = i64(ep->period.size());
    return ep->period[size_t((k - pre - 1) % m)];
  }
  if (const auto* si = std::get_if<SparseIndicator>(&spec.node)) {
    return si->support.member(k) ? si->on_value : si->off_value;
  }
  const auto& combo = std::get<LinearCombo>(spec.node);
  double v = 0.0;
  for (size_t i = 0; i < combo.parts.size(); ++i)
    v += combo.coefficients[i] * value_at(combo.parts[i], k);
  return v;
}

double sup_bound(const SequenceSpec& spec) {
  if (const auto* ep = std::get_if<EventuallyPeriodic>(&spec.node)) {
    double b = 0.0;
    for (double v : ep->preperiod) b = std::max(b, std::abs(v));
    for (double v : ep->period) b = std::max(b, std::abs(v));
    return b;
  }
  if (const auto* si = std::get_if<SparseIndicator>(&spec.node))
    return std::max(std::abs(si->on_value), std::abs(si->off_value));
  const auto& combo = std::get<LinearCombo>(spec.node);
  double b = 0.0;
  for (size_t i = 0; i < combo.parts.size(); ++i)
    b += std::abs(combo.coefficients[i]) * sup_bound(combo.parts[i]);
  return b;
}

std::optional<EventuallyPeriodic> try_reduce(const SequenceSpec& spec) {
  if (const auto* ep = std::get_if<EventuallyPeriodic>(&spec.node)) return *ep;
  if (spec.is_indicator()) return std::nullopt;

  const auto& combo = std::get<LinearCombo>(spec.node);
  std::vector<EventuallyPeriodic> parts;
  parts.reserve(combo.parts.size());
  for (const auto& p : combo.parts) {
    auto r = try_reduce(p);
    if (!r) return std::nullopt;
    parts.push_back(std::move(*r));
  }

  i64 pre = 0;
  i64 m = 1;
  for (const auto& p : parts) {
    pre = std::max(pre, i64(p.preperiod.size()));
    m = std::lcm(m, i64(p.period.size()));
    if (m > kMaxReducedPeriod)
      throw NotClosed("reduce_combo: lcm of part periods is too large");
  }

  auto part_value = [](const EventuallyPeriodic& ep, i64 k) {
    const i64 p = i64(ep.preperiod.size());
    if (k <= p) return ep.preperiod[size_t(k - 1)];
    return ep.period[size_t((k - p - 1) % i64(ep.period.size()))];
  };

  EventuallyPeriodic out;
  out.preperiod.resize(size_t(pre));
  out.period.resize(size_t(m));
  for (i64 k = 1; k <= pre + m; ++k) {
    double v = 0.0;
    for (size_t i = 0; i < parts.size(); ++i)
      v += combo.coefficients[i] * part_value(parts[i], k);
    if (k <= pre)
      out.preperiod[size_t(k - 1)] = v;
    else
      out.period[size_t(k - pre - 1)] = v;
  }
  return out;
}

SequenceSpec reduce_combo(const LinearCombo& combo) {
  SequenceSpec wrapped;
  wrapped.node = combo;
  auto reduced = try_reduce(wrapped);
  if (!reduced)
    throw NotClosed("reduce_combo: combo contains a SparseIndicator part");
  SequenceSpec out;
  out.node = std::move(*reduced);
  return out;
}

namespace {

const EventuallyPeriodic& require_periodic(const SequenceSpec& spec,
                                           std::optional<EventuallyPeriodic>& hold) {
  if (const auto* ep = std::get_if<EventuallyPeriodic>(&spec.node)) return *ep;
  hold = try_reduce(spec);
  if (!hold)
    throw NotExactlyComputable(
        "operation requires an eventually periodic sequence");
  return *hold;
}

}  // namespace

double limsup_exact(const SequenceSpec& spec) {
  std::optional<EventuallyPeriodic> hold;
  const auto& ep = require_periodic(spec, hold);
  return *std::max_element(ep.period.begin(), ep.period.end());
}

double period_mean(const SequenceSpec& spec) {
  std::optional<EventuallyPeriodic> hold;
  const auto& ep = require_periodic(spec, hold);
  double sum = 0.0;
  for (double v : ep.period) sum += v;
  return sum / double(ep.period.size());
}

VectorSequence::VectorSequence(std::vector<SequenceSpec> coords)
    : coordinates(std::move(coords)) {
  if (coordinates.empty())
    throw std::invalid_argument("VectorSequence: dimension must be >= 1");
}

double VectorSequence::bound() const {
  double b = 0.0;
  for (const auto& c : coordinates) b = std::max(b, sup_bound(c));
  return b;
}

bool VectorSequence::exact() const {
  for (const auto& c : coordinates)
    if (!try_reduce(c)) return false;
  return true;
}

SequenceSpec apply_functional(std::span<const double> x_star,
                              const VectorSequence& xs) {
  if (i64(x_star.size()) != xs.dimension())
    throw DimensionMismatch("apply_functional: functional dimension " +
                            std::to_string(x_star.size()) +
                            " vs sequence dimension " +
                            std::to_string(xs.dimension()));
  LinearCombo combo;
  combo.coefficients.assign(x_star.begin(), x_star.end());
  combo.parts = xs.coordinates;

  SequenceSpec wrapped;
  wrapped.node = combo;
  if (auto reduced = try_reduce(wrapped)) {
    SequenceSpec out;
    out.node = std::move(*reduced);
    return out;
  }
  return wrapped;
}

}  // namespace summa::seqcore
