#include "summa/summability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace summa::summability {

using seqcore::EventuallyPeriodic;
using seqcore::SparseIndicator;
using seqcore::try_reduce;
using seqcore::value_at;

namespace {

constexpr double kTruncationThreshold = 1e-12;
constexpr i64 kMaxTruncationIndex = i64(1) << 22;
constexpr double kRowNormCap = 1e6;

double power(double base, double p) {
  if (p == 1.0) return base;
  if (p == 2.0) return base * base;
  return std::pow(base, p);
}

/// sum over row n of a_nk * f(k), truncated per the matrix metadata.
/// f_bound must dominate |f| on the row.
double row_sum(const SummabilityMatrix& A, i64 n,
               const std::function<double(i64)>& f, double f_bound) {
  i64 lo = 1, hi = 0;
  if (A.has_row_support()) {
    std::tie(lo, hi) = A.row_support(n);
  } else if (A.has_tail_bound()) {
    lo = 1;
    hi = std::max<i64>(2 * n, 16);
    while (A.tail_bound(n, hi) * std::max(f_bound, 1e-30) >=
           kTruncationThreshold) {
      if (hi >= kMaxTruncationIndex)
        throw TailNotBounded("row " + std::to_string(n) +
                             ": tail bound does not certify truncation");
      hi *= 2;
    }
  } else {
    throw TailNotBounded("matrix '" + A.name() +
                         "' has neither row support nor a tail bound");
  }
  double sum = 0.0;
  for (i64 k = lo; k <= hi; ++k) {
    const double a = A.entry(n, k);
    if (a != 0.0) sum += a * f(k);
  }
  return sum;
}

std::vector<i64> depth_ladder(i64 depth) {
  std::vector<i64> out;
  i64 n = 10;
  while (n < depth) {
    out.push_back(n);
    n = std::max(n + 1, i64(double(n) * 1.9));
  }
  out.push_back(depth);
  return out;
}

/// Trend of a nonnegative term expected to vanish when the property holds.
struct Trend {
  enum class Kind { Vanishes, Persists, Inconclusive } kind;
  double last = 0.0;
  std::vector<std::pair<i64, double>> samples;
};

Trend vanishing_trend(const std::function<double(i64)>& term, i64 depth,
                      double tol) {
  Trend t{Trend::Kind::Inconclusive, 0.0, {}};
  for (i64 n : depth_ladder(depth)) t.samples.emplace_back(n, term(n));
  t.last = t.samples.back().second;
  if (t.last <= tol) {
    t.kind = Trend::Kind::Vanishes;
    return t;
  }
  // Persisting means clearly above tolerance and not decaying across the
  // last half of the ladder.
  const size_t mid = t.samples.size() / 2;
  const double midval = t.samples[mid].second;
  if (t.last > 10.0 * tol && t.last >= 0.5 * midval)
    t.kind = Trend::Kind::Persists;
  return t;
}

bool period_is_constant(const EventuallyPeriodic& ep, double tol) {
  for (double v : ep.period)
    if (std::abs(v - ep.period.front()) > tol) return false;
  return true;
}

std::pair<double, double> period_min_max(const EventuallyPeriodic& ep) {
  auto [lo, hi] = std::minmax_element(ep.period.begin(), ep.period.end());
  return {*lo, *hi};
}

}  // namespace

SummabilityMatrix SummabilityMatrix::row_finite(std::string name, Entry entry,
                                                RowSupport support,
                                                bool declared_regular,
                                                bool positive) {
  SummabilityMatrix m;
  m.name_ = std::move(name);
  m.entry_ = std::move(entry);
  m.support_ = std::move(support);
  m.declared_regular_ = declared_regular;
  m.positive_ = positive;
  return m;
}

SummabilityMatrix SummabilityMatrix::tail_bounded(std::string name, Entry entry,
                                                  TailBound tail,
                                                  bool declared_regular,
                                                  bool positive) {
  SummabilityMatrix m;
  m.name_ = std::move(name);
  m.entry_ = std::move(entry);
  m.tail_ = std::move(tail);
  m.declared_regular_ = declared_regular;
  m.positive_ = positive;
  return m;
}

SummabilityMatrix builtin_matrix(const std::string& name,
                                 std::span<const double> weights) {
  if (name == "cesaro") {
    return SummabilityMatrix::row_finite(
        "cesaro",
        [](i64 n, i64 k) { return k <= n ? 1.0 / double(n) : 0.0; },
        [](i64 n) { return std::pair<i64, i64>{1, n}; },
        /*declared_regular=*/true, /*positive=*/true);
  }
  if (name == "identity") {
    return SummabilityMatrix::row_finite(
        "identity", [](i64 n, i64 k) { return n == k ? 1.0 : 0.0; },
        [](i64 n) { return std::pair<i64, i64>{n, n}; },
        /*declared_regular=*/true, /*positive=*/true);
  }
  if (name == "riesz") {
    if (weights.empty())
      throw std::invalid_argument("riesz matrix requires a weight list");
    for (double w : weights)
      if (!(w > 0.0))
        throw std::invalid_argument("riesz weights must be strictly positive");
    std::vector<double> w(weights.begin(), weights.end());
    const i64 cycle = i64(w.size());
    double cycle_sum = 0.0;
    std::vector<double> prefix(w.size() + 1, 0.0);
    for (size_t i = 0; i < w.size(); ++i) {
      cycle_sum += w[i];
      prefix[i + 1] = cycle_sum;
    }
    auto weight_at = [w, cycle](i64 k) {
      return w[size_t((k - 1) % cycle)];
    };
    auto weight_prefix = [prefix, cycle, cycle_sum](i64 n) {
      return double(n / cycle) * cycle_sum + prefix[size_t(n % cycle)];
    };
    SummabilityMatrix m = SummabilityMatrix::row_finite(
        "riesz",
        [weight_at, weight_prefix](i64 n, i64 k) {
          return k <= n ? weight_at(k) / weight_prefix(n) : 0.0;
        },
        [](i64 n) { return std::pair<i64, i64>{1, n}; },
        /*declared_regular=*/true, /*positive=*/true);
    m.riesz_weights_ = std::move(w);
    return m;
  }
  throw UnknownName("unknown builtin matrix '" + name + "'");
}

SummabilityMatrix doctored_matrix(const std::string& name) {
  if (name == "row_sum_2") {
    return SummabilityMatrix::row_finite(
        "doctored_row_sum_2",
        [](i64 n, i64 k) { return k <= n ? 2.0 / double(n) : 0.0; },
        [](i64 n) { return std::pair<i64, i64>{1, n}; },
        /*declared_regular=*/false, /*positive=*/true);
  }
  if (name == "sticky_column") {
    return SummabilityMatrix::row_finite(
        "doctored_sticky_column",
        [](i64, i64 k) { return k == 1 ? 1.0 : 0.0; },
        [](i64) { return std::pair<i64, i64>{1, 1}; },
        /*declared_regular=*/false, /*positive=*/true);
  }
  throw UnknownName("unknown doctored matrix '" + name + "'");
}

double transform(const SummabilityMatrix& A, const SequenceSpec& s, i64 n) {
  return row_sum(A, n, [&](i64 k) { return value_at(s, k); }, sup_bound(s));
}

ToeplitzReport toeplitz_falsify(const SummabilityMatrix& A, i64 depth,
                                double tol) {
  if (depth < 10)
    throw std::invalid_argument("toeplitz_falsify: depth must be >= 10");
  ToeplitzReport report;
  report.depth = depth;
  report.tol = tol;

  double worst_norm = 0.0;
  i64 worst_norm_row = 1;
  for (i64 n : depth_ladder(depth)) {
    // row_sum multiplies entries by f; feed f = sign to accumulate |a_nk|.
    const double abs_sum = row_sum(
        A, n, [&](i64 k) { return A.entry(n, k) >= 0.0 ? 1.0 : -1.0; }, 1.0);
    if (abs_sum > worst_norm) {
      worst_norm = abs_sum;
      worst_norm_row = n;
    }
  }
  report.row_norms.value = worst_norm;
  report.row_norms.witness = worst_norm_row;
  if (worst_norm > kRowNormCap) {
    report.row_norms.consistent = false;
    report.row_norms.detail = "row absolute sums exceed cap";
  } else {
    report.row_norms.detail = "max sampled row absolute sum";
  }

  const double final_row_sum =
      row_sum(A, depth, [](i64) { return 1.0; }, 1.0);
  report.row_sums_to_one.value = final_row_sum;
  report.row_sums_to_one.witness = depth;
  if (std::abs(final_row_sum - 1.0) > tol) {
    report.row_sums_to_one.consistent = false;
    report.row_sums_to_one.detail = "row sum at depth outside [1-tol, 1+tol]";
  } else {
    report.row_sums_to_one.detail = "row sum at depth";
  }

  const i64 columns = std::min<i64>(depth, 32);
  for (i64 k = 1; k <= columns; ++k) {
    const double v = A.entry(depth, k);
    if (std::abs(v) > tol) {
      report.columns_to_zero.consistent = false;
      report.columns_to_zero.witness = k;
      report.columns_to_zero.value = v;
      report.columns_to_zero.detail = "column entry at depth above tol";
      break;
    }
  }
  if (report.columns_to_zero.consistent)
    report.columns_to_zero.detail = "all sampled columns vanish at depth";

  if (A.declared_regular() && !report.all_consistent())
    throw DeclaredRegularContradiction(
        "matrix '" + A.name() +
        "' is declared regular but refuted by finite evidence at depth " +
        std::to_string(depth));
  return report;
}

namespace {

void require_positive(const SummabilityMatrix& A, const char* op) {
  if (!A.positive())
    throw MatrixNotPositive(std::string(op) + " requires a positive matrix; '" +
                            A.name() + "' is not flagged positive");
}

}  // namespace

double strong_term(const SummabilityMatrix& A, const SequenceSpec& s, double x,
                   double p, i64 n) {
  require_positive(A, "strong_term");
  if (!(p > 0.0))
    throw std::invalid_argument("strong_term: exponent must be positive");
  return row_sum(
      A, n, [&](i64 k) { return power(std::abs(value_at(s, k) - x), p); },
      power(sup_bound(s) + std::abs(x), std::max(p, 1.0)) + 1.0);
}

double strong_term_maddox(const SummabilityMatrix& A, const SequenceSpec& s,
                          double x, const SequenceSpec& exponents, i64 n) {
  require_positive(A, "strong_term_maddox");
  auto ep = try_reduce(exponents);
  if (!ep)
    throw NotExactlyComputable(
        "strong_term_maddox: exponent sequence must be eventually periodic");
  for (double v : ep->preperiod)
    if (!(v > 0.0))
      throw ExponentNotPositive("maddox exponents must be strictly positive");
  for (double v : ep->period)
    if (!(v > 0.0))
      throw ExponentNotPositive("maddox exponents must be strictly positive");
  SequenceSpec exp_spec;
  exp_spec.node = *ep;
  const double base_bound = sup_bound(s) + std::abs(x);
  const double r = std::max(
      *std::max_element(ep->period.begin(), ep->period.end()),
      ep->preperiod.empty()
          ? 0.0
          : *std::max_element(ep->preperiod.begin(), ep->preperiod.end()));
  return row_sum(
      A, n,
      [&](i64 k) {
        return power(std::abs(value_at(s, k) - x), value_at(exp_spec, k));
      },
      power(std::max(base_bound, 1.0), r) + 1.0);
}

double a_statistical_term(const SummabilityMatrix& A, const SequenceSpec& s,
                          double x, double eps, i64 n) {
  require_positive(A, "a_statistical_term");
  if (!(eps > 0.0))
    throw std::invalid_argument("a_statistical_term: eps must be positive");
  return row_sum(
      A, n,
      [&](i64 k) { return std::abs(value_at(s, k) - x) >= eps ? 1.0 : 0.0; },
      1.0);
}

double pre_cauchy_mean_term(const SequenceSpec& s, i64 n) {
  if (n < 1) throw std::invalid_argument("pre_cauchy_mean_term: n >= 1");
  std::vector<double> v(static_cast<size_t>(n));
  for (i64 k = 1; k <= n; ++k) v[size_t(k - 1)] = value_at(s, k);
  std::sort(v.begin(), v.end());
  // sum_{i<j} (v_j - v_i) over the sorted values; ordered pairs double it.
  double sum = 0.0, prefix = 0.0;
  for (i64 j = 0; j < n; ++j) {
    sum += v[size_t(j)] * double(j) - prefix;
    prefix += v[size_t(j)];
  }
  return 2.0 * sum / (double(n) * double(n));
}

double pre_cauchy_count_term(const SequenceSpec& s, double eps, i64 n) {
  if (n < 1) throw std::invalid_argument("pre_cauchy_count_term: n >= 1");
  if (!(eps > 0.0))
    throw std::invalid_argument("pre_cauchy_count_term: eps must be positive");
  std::vector<double> v(static_cast<size_t>(n));
  for (i64 k = 1; k <= n; ++k) v[size_t(k - 1)] = value_at(s, k);
  std::sort(v.begin(), v.end());
  // For each j, count i with v_j - v_i >= eps via a moving lower pointer.
  i64 pairs = 0;
  i64 lo = 0;
  for (i64 j = 0; j < n; ++j) {
    while (lo < n && v[size_t(j)] - v[size_t(lo)] >= eps) ++lo;
    pairs += lo;
  }
  return 2.0 * double(pairs) / (double(n) * double(n));
}

double pre_cauchy_mean_limit_exact(const SequenceSpec& s) {
  auto ep = try_reduce(s);
  if (ep) {
    std::vector<double> v = ep->period;
    std::sort(v.begin(), v.end());
    const i64 m = i64(v.size());
    double sum = 0.0, prefix = 0.0;
    for (i64 j = 0; j < m; ++j) {
      sum += v[size_t(j)] * double(j) - prefix;
      prefix += v[size_t(j)];
    }
    return 2.0 * sum / (double(m) * double(m));
  }
  if (const auto* si = std::get_if<SparseIndicator>(&s.node)) {
    if (auto d = si->support.density()) {
      return 2.0 * (*d) * (1.0 - *d) *
             std::abs(si->on_value - si->off_value);
    }
  }
  throw NotExactlyComputable(
      "pre_cauchy_mean_limit_exact: no closed form for this spec");
}

double fa_term(const SummabilityMatrix& A, const SequenceSpec& s, double x,
               i64 n, const ShiftPolicy& shifts) {
  std::vector<i64> shift_set;
  if (shifts.mode == ShiftPolicy::Mode::Exhaustive) {
    auto ep = try_reduce(s);
    if (!ep)
      throw ExhaustiveRequiresPeriodic(
          "fa_term: exhaustive shifts require an eventually periodic sequence");
    const i64 pre = i64(ep->preperiod.size());
    const i64 m = i64(ep->period.size());
    // Shifts l >= pre agree with some l' in [pre, pre + m) modulo the period,
    // so this finite set realizes the sup over all l >= 0.
    shift_set.resize(size_t(pre + m));
    std::iota(shift_set.begin(), shift_set.end(), i64(0));
  } else {
    shift_set = shifts.shifts;
    if (shift_set.empty())
      throw std::invalid_argument("fa_term: explicit shift set is empty");
  }
  const double bound = sup_bound(s);
  double sup = 0.0;
  for (i64 l : shift_set) {
    const double v =
        row_sum(A, n, [&](i64 k) { return value_at(s, k + l); }, bound);
    sup = std::max(sup, std::abs(v - x));
  }
  return sup;
}

ConvergenceVerdict ConvergenceVerdict::converges_to(std::string method,
                                                    double limit, bool exact,
                                                    std::string justification) {
  ConvergenceVerdict v;
  v.status = Status::Converges;
  v.limit = limit;
  v.exact = exact;
  v.method = std::move(method);
  v.justification = std::move(justification);
  return v;
}

ConvergenceVerdict ConvergenceVerdict::diverges_with(std::string method,
                                                     std::string witness,
                                                     bool exact,
                                                     std::string justification) {
  ConvergenceVerdict v;
  v.status = Status::Diverges;
  v.exact = exact;
  v.method = std::move(method);
  v.witness = std::move(witness);
  v.justification = std::move(justification);
  return v;
}

ConvergenceVerdict ConvergenceVerdict::unknown(std::string method, i64 depth) {
  ConvergenceVerdict v;
  v.status = Status::Unknown;
  v.method = std::move(method);
  v.depth = depth;
  return v;
}

namespace {

constexpr double kExactTol = 1e-9;

std::string period_witness(const EventuallyPeriodic& ep) {
  auto [lo, hi] = period_min_max(ep);
  return "period attains " + std::to_string(lo) + " and " + std::to_string(hi) +
         " infinitely often";
}

}  // namespace

ConvergenceVerdict classify_ordinary(const SequenceSpec& s,
                                     const ClassifyOptions& opt) {
  const char* method = "ordinary";
  if (auto ep = try_reduce(s)) {
    if (period_is_constant(*ep, kExactTol))
      return ConvergenceVerdict::converges_to(method, ep->period.front(), true,
                                              "constant period block");
    return ConvergenceVerdict::diverges_with(method, period_witness(*ep), true,
                                             "non-constant period block");
  }
  const auto& si = std::get<SparseIndicator>(s.node);
  if (std::abs(si.on_value - si.off_value) <= kExactTol)
    return ConvergenceVerdict::converges_to(method, si.off_value, true,
                                            "indicator with equal values");
  if (si.support.infinite() && si.support.infinite_complement())
    return ConvergenceVerdict::diverges_with(
        method, "both indicator values occur infinitely often", true,
        "infinite support and complement");
  // No structure to decide; report the tail oscillation numerically.
  auto v = ConvergenceVerdict::unknown(method, opt.depth);
  double lo = value_at(s, opt.depth), hi = lo;
  for (i64 k = std::max<i64>(1, opt.depth - 1000); k <= opt.depth; ++k) {
    const double x = value_at(s, k);
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  if (hi - lo <= opt.numeric_tol) {
    return ConvergenceVerdict::converges_to(method, 0.5 * (lo + hi), false,
                                            "");
  }
  v.samples.emplace_back(opt.depth, hi - lo);
  return v;
}

namespace {

void require_statistical_pre(const SummabilityMatrix& A) {
  require_positive(A, "statistical classification");
  if (!A.declared_regular())
    throw std::invalid_argument(
        "statistical classification requires a declared-regular matrix");
}

/// Shared exact structure for statistical and strong classification: both
/// decide the same way on the structured specs handled here.
///   - eventually periodic: convergent iff the period block is constant
///   - indicator with declared density, Cesaro matrix: density 0 -> off
///     value, density 1 -> on value, otherwise diverges (distinct values)
std::optional<ConvergenceVerdict> exact_density_verdict(
    const SummabilityMatrix& A, const SequenceSpec& s, const char* method) {
  if (auto ep = try_reduce(s)) {
    if (period_is_constant(*ep, kExactTol))
      return ConvergenceVerdict::converges_to(method, ep->period.front(), true,
                                              "constant period block");
    return ConvergenceVerdict::diverges_with(
        method, period_witness(*ep), true,
        "each period value has density 1/period_len per occurrence");
  }
  const auto* si = std::get_if<SparseIndicator>(&s.node);
  if (!si) return std::nullopt;
  if (std::abs(si->on_value - si->off_value) <= kExactTol)
    return ConvergenceVerdict::converges_to(method, si->off_value, true,
                                            "indicator with equal values");
  if (A.name() == "cesaro") {
    if (auto d = si->support.density()) {
      if (*d == 0.0)
        return ConvergenceVerdict::converges_to(method, si->off_value, true,
                                                "support density 0");
      if (*d == 1.0)
        return ConvergenceVerdict::converges_to(method, si->on_value, true,
                                                "support density 1");
      return ConvergenceVerdict::diverges_with(
          method, "support density " + std::to_string(*d), true,
          "both values carry positive density");
    }
  }
  return std::nullopt;
}

}  // namespace

ConvergenceVerdict classify_statistical(const SummabilityMatrix& A,
                                        const SequenceSpec& s,
                                        const ClassifyOptions& opt) {
  require_statistical_pre(A);
  const std::string method = "statistical(" + A.name() + ")";
  if (auto exact = exact_density_verdict(A, s, method.c_str())) return *exact;

  // Numeric fallback: the A-transform estimates the candidate limit; the
  // eps-masses must then vanish along the ladder.
  const double candidate = transform(A, s, opt.depth);
  auto worst_term = [&](i64 n) {
    double t = 0.0;
    for (double eps : {1e-1, 1e-2})
      t = std::max(t, a_statistical_term(A, s, candidate, eps, n));
    return t;
  };
  Trend trend = vanishing_trend(worst_term, opt.depth, opt.numeric_tol);
  ConvergenceVerdict v;
  switch (trend.kind) {
    case Trend::Kind::Vanishes:
      v = ConvergenceVerdict::converges_to(method, candidate, false, "");
      break;
    case Trend::Kind::Persists:
      v = ConvergenceVerdict::diverges_with(
          method, "eps-mass persists at depth", false, "");
      break;
    default:
      v = ConvergenceVerdict::unknown(method, opt.depth);
  }
  v.depth = opt.depth;
  v.samples = std::move(trend.samples);
  return v;
}

ConvergenceVerdict classify_strong(const SummabilityMatrix& A,
                                   const SequenceSpec& s, double p,
                                   const ClassifyOptions& opt) {
  require_statistical_pre(A);
  if (!(p > 0.0))
    throw std::invalid_argument("classify_strong: exponent must be positive");
  const std::string method = "strong(" + A.name() + " p=" + std::to_string(p) +
                             ")";
  if (auto exact = exact_density_verdict(A, s, method.c_str())) return *exact;

  // Numeric decision shared with the statistical classifier: on bounded
  // sequences the two methods are equivalent, and the eps-mass criterion is
  // exponent-independent, so strong-p and strong-q verdicts cannot drift
  // apart at the tolerance boundary. The strong term itself is reported as
  // a diagnostic.
  const double candidate = transform(A, s, opt.depth);
  auto worst_mass = [&](i64 n) {
    double t = 0.0;
    for (double eps : {1e-1, 1e-2})
      t = std::max(t, a_statistical_term(A, s, candidate, eps, n));
    return t;
  };
  Trend trend = vanishing_trend(worst_mass, opt.depth, opt.numeric_tol);
  ConvergenceVerdict v;
  switch (trend.kind) {
    case Trend::Kind::Vanishes:
      v = ConvergenceVerdict::converges_to(method, candidate, false, "");
      break;
    case Trend::Kind::Persists:
      v = ConvergenceVerdict::diverges_with(method,
                                            "strong term persists at depth",
                                            false, "");
      break;
    default:
      v = ConvergenceVerdict::unknown(method, opt.depth);
  }
  v.depth = opt.depth;
  v.samples = std::move(trend.samples);
  v.samples.emplace_back(opt.depth,
                         strong_term(A, s, candidate, p, opt.depth));
  return v;
}

ConvergenceVerdict classify_pre_cauchy(const SequenceSpec& s,
                                       const ClassifyOptions& opt) {
  const char* method = "pre_cauchy";
  // Closed form where available: the mean-term limit decides.
  bool have_exact = true;
  double limit = 0.0;
  try {
    limit = pre_cauchy_mean_limit_exact(s);
  } catch (const NotExactlyComputable&) {
    have_exact = false;
  }
  if (have_exact) {
    if (limit <= kExactTol)
      return ConvergenceVerdict::converges_to(
          method, 0.0, true, "pairwise-gap mean over the period vanishes");
    auto v = ConvergenceVerdict::diverges_with(
        method, "mean-term limit " + std::to_string(limit), true,
        "pairwise-gap mean over the period");
    v.samples.emplace_back(0, limit);
    return v;
  }
  Trend trend =
      vanishing_trend([&](i64 n) { return pre_cauchy_mean_term(s, n); },
                      std::min<i64>(opt.depth, 20'000), opt.numeric_tol);
  ConvergenceVerdict v;
  switch (trend.kind) {
    case Trend::Kind::Vanishes:
      v = ConvergenceVerdict::converges_to(method, 0.0, false, "");
      break;
    case Trend::Kind::Persists:
      v = ConvergenceVerdict::diverges_with(
          method, "mean term persists at depth", false, "");
      break;
    default:
      v = ConvergenceVerdict::unknown(method, opt.depth);
  }
  v.depth = opt.depth;
  v.samples = std::move(trend.samples);
  return v;
}

ConvergenceVerdict classify_almost(const SequenceSpec& s,
                                   const ClassifyOptions& opt) {
  const char* method = "almost";
  if (auto ep = try_reduce(s)) {
    SequenceSpec reduced;
    reduced.node = *ep;
    return ConvergenceVerdict::converges_to(
        method, period_mean(reduced), true,
        "windowed Cesaro means of a periodic tail converge uniformly in the "
        "shift");
  }
  const auto& si = std::get<SparseIndicator>(s.node);
  if (std::abs(si.on_value - si.off_value) <= kExactTol)
    return ConvergenceVerdict::converges_to(method, si.off_value, true,
                                            "indicator with equal values");
  if (si.support.window_density_vanishes())
    return ConvergenceVerdict::converges_to(
        method, si.off_value, true,
        "window bound maxcount(n)/n vanishes uniformly in the shift");
  if (si.support.has_maxcount()) {
    const double ratio =
        double(*si.support.maxcount(opt.depth)) / double(opt.depth);
    if (ratio * std::abs(si.on_value - si.off_value) <= opt.numeric_tol) {
      auto v = ConvergenceVerdict::converges_to(method, si.off_value, false,
                                                "");
      v.depth = opt.depth;
      v.samples.emplace_back(opt.depth, ratio);
      return v;
    }
  }
  return ConvergenceVerdict::unknown(method, opt.depth);
}

ConnorReport connor_crosscheck(const SequenceSpec& s,
                               const SummabilityMatrix& A, double p,
                               i64 depth) {
  ConnorReport r;
  ClassifyOptions opt;
  opt.depth = depth;
  r.statistical = classify_statistical(A, s, opt);
  r.strong = classify_strong(A, s, p, opt);

  const bool both_converge = r.statistical.converges() && r.strong.converges();
  const bool both_diverge = r.statistical.diverges() && r.strong.diverges();
  if (both_converge) {
    r.limits_agree = std::abs(r.statistical.limit - r.strong.limit) <= 1e-6;
  } else {
    r.limits_agree = both_diverge;
  }
  if (r.strong.converges() && r.statistical.diverges()) {
    r.strong_implies_stat = false;
    r.detail = "strong convergence without statistical convergence";
  }
  if (r.statistical.converges() && r.strong.diverges()) {
    r.stat_implies_strong = false;
    r.detail = "statistical convergence without strong convergence (bounded)";
  }
  if (r.detail.empty())
    r.detail = r.limits_agree ? "verdicts agree" : "verdicts inconclusive";
  return r;
}

}  // namespace summa::summability
