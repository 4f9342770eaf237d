#include "summa/simonslab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace summa::simonslab {

using convexdual::dot;
using convexdual::extreme_points;
using convexdual::i_generates;
using convexdual::sphere_directions;
using seqcore::apply_functional;
using seqcore::EventuallyPeriodic;
using seqcore::SparseIndicator;
using seqcore::sup_bound;
using seqcore::try_reduce;
using seqcore::value_at;
using summability::fa_term;
using summability::pre_cauchy_mean_limit_exact;
using summability::pre_cauchy_mean_term;
using summability::strong_term;
using summability::strong_term_maddox;

namespace {

double power(double base, double p) {
  if (p == 1.0) return base;
  if (p == 2.0) return base * base;
  return std::pow(base, p);
}

}  // namespace

PMapSpec PMapSpec::identity() {
  PMapSpec p;
  p.kind_ = PMapKind::Identity;
  return p;
}

PMapSpec PMapSpec::strong_matrix(SummabilityMatrix A, double p) {
  if (!(p >= 1.0))
    throw std::invalid_argument("strong_matrix map requires p >= 1");
  if (!A.positive())
    throw MatrixNotPositive("strong_matrix map requires a positive matrix");
  PMapSpec s;
  s.kind_ = PMapKind::StrongMatrix;
  s.matrix_ = std::move(A);
  s.p_ = p;
  s.r_ = p;
  return s;
}

PMapSpec PMapSpec::strong_matrix_root(SummabilityMatrix A, double p) {
  PMapSpec s = strong_matrix(std::move(A), p);
  s.kind_ = PMapKind::StrongMatrixRoot;
  return s;
}

PMapSpec PMapSpec::maddox(SummabilityMatrix A, SequenceSpec exponents) {
  if (!A.positive())
    throw MatrixNotPositive("maddox map requires a positive matrix");
  auto ep = try_reduce(exponents);
  if (!ep)
    throw NotExactlyComputable(
        "maddox map requires an eventually periodic exponent sequence");
  double r = 1.0;
  for (double v : ep->preperiod) {
    if (!(v >= 1.0))
      throw ExponentNotPositive("maddox map requires exponents >= 1");
    r = std::max(r, v);
  }
  for (double v : ep->period) {
    if (!(v >= 1.0))
      throw ExponentNotPositive("maddox map requires exponents >= 1");
    r = std::max(r, v);
  }
  PMapSpec s;
  s.kind_ = PMapKind::Maddox;
  s.matrix_ = std::move(A);
  s.exponents_ = std::move(exponents);
  s.r_ = r;
  return s;
}

PMapSpec PMapSpec::pre_cauchy_mean() {
  PMapSpec p;
  p.kind_ = PMapKind::PreCauchyMean;
  return p;
}

PMapSpec PMapSpec::fa_shift_sup(SummabilityMatrix A, ShiftPolicy shifts) {
  PMapSpec s;
  s.kind_ = PMapKind::FAShiftSup;
  s.matrix_ = std::move(A);
  s.shifts_ = std::move(shifts);
  return s;
}

double PMapSpec::quasi_additivity_m() const {
  switch (kind_) {
    case PMapKind::Identity:
    case PMapKind::StrongMatrixRoot:
    case PMapKind::PreCauchyMean:
    case PMapKind::FAShiftSup:
      return 1.0;
    case PMapKind::StrongMatrix:
      return power(2.0, p_ - 1.0);
    case PMapKind::Maddox:
      return power(2.0, r_ - 1.0);
  }
  return 1.0;
}

const SummabilityMatrix& PMapSpec::matrix() const {
  if (!matrix_) throw std::logic_error("this map kind has no matrix");
  return *matrix_;
}

const SequenceSpec& PMapSpec::exponents() const {
  if (!exponents_) throw std::logic_error("this map kind has no exponents");
  return *exponents_;
}

std::string PMapSpec::label() const {
  switch (kind_) {
    case PMapKind::Identity:
      return "identity";
    case PMapKind::StrongMatrix:
      return "strong(" + matrix().name() + " p=" + std::to_string(p_) + ")";
    case PMapKind::StrongMatrixRoot:
      return "strong_root(" + matrix().name() + " p=" + std::to_string(p_) +
             ")";
    case PMapKind::Maddox:
      return "maddox(" + matrix().name() + " r=" + std::to_string(r_) + ")";
    case PMapKind::PreCauchyMean:
      return "pre_cauchy_mean";
    case PMapKind::FAShiftSup:
      return "fa_shift_sup(" + matrix().name() + ")";
  }
  return "?";
}

double pmap_term(const PMapSpec& P, const SequenceSpec& s, i64 n) {
  switch (P.kind()) {
    case PMapKind::Identity:
      return std::abs(value_at(s, n));
    case PMapKind::StrongMatrix:
      return strong_term(P.matrix(), s, 0.0, P.exponent(), n);
    case PMapKind::StrongMatrixRoot:
      return std::pow(strong_term(P.matrix(), s, 0.0, P.exponent(), n),
                      1.0 / P.exponent());
    case PMapKind::Maddox:
      return strong_term_maddox(P.matrix(), s, 0.0, P.exponents(), n);
    case PMapKind::PreCauchyMean:
      return pre_cauchy_mean_term(s, n);
    case PMapKind::FAShiftSup:
      return fa_term(P.matrix(), s, 0.0, n, P.shifts());
  }
  return 0.0;
}

namespace {

/// Tail-sample estimate of limsup_n P_n(s). Coarse geometric samples across
/// [depth/4, depth]; the identity kind additionally scans a dense tail
/// window, since its terms are cheap and oscillate.
double numeric_limsup(const PMapSpec& P, const SequenceSpec& s, i64 depth) {
  double best = 0.0;
  i64 n = std::max<i64>(depth / 4, 8);
  while (n < depth) {
    best = std::max(best, pmap_term(P, s, n));
    n = std::max(n + 1, i64(double(n) * 1.12));
  }
  best = std::max(best, pmap_term(P, s, depth));
  if (P.kind() == PMapKind::Identity) {
    for (i64 k = std::max<i64>(1, depth - 2000); k <= depth; ++k)
      best = std::max(best, pmap_term(P, s, k));
  }
  return best;
}

bool is_cesaro(const PMapSpec& P) {
  return P.has_matrix() && P.matrix().name() == "cesaro";
}

double period_mean_of(const EventuallyPeriodic& ep,
                      const std::function<double(double)>& f) {
  double sum = 0.0;
  for (double v : ep.period) sum += f(v);
  return sum / double(ep.period.size());
}

}  // namespace

ValueWithExactness pmap_limsup(const PMapSpec& P, const SequenceSpec& s,
                               i64 depth) {
  const auto ep = try_reduce(s);
  const auto* si = std::get_if<SparseIndicator>(&s.node);

  switch (P.kind()) {
    case PMapKind::Identity: {
      if (ep) {
        double best = 0.0;
        for (double v : ep->period) best = std::max(best, std::abs(v));
        return {best, true};
      }
      if (si && si->support.infinite() && si->support.infinite_complement())
        return {std::max(std::abs(si->on_value), std::abs(si->off_value)),
                true};
      break;
    }
    case PMapKind::StrongMatrix:
    case PMapKind::StrongMatrixRoot: {
      const double p = P.exponent();
      std::optional<double> powered;
      if (ep && is_cesaro(P)) {
        // Cesaro means of an eventually periodic sequence converge to the
        // period mean; the preperiod washes out.
        powered = period_mean_of(*ep, [p](double v) {
          return power(std::abs(v), p);
        });
      } else if (si && is_cesaro(P)) {
        if (auto d = si->support.density()) {
          powered = *d * power(std::abs(si->on_value), p) +
                    (1.0 - *d) * power(std::abs(si->off_value), p);
        }
      }
      if (powered) {
        if (P.kind() == PMapKind::StrongMatrixRoot)
          return {std::pow(*powered, 1.0 / p), true};
        return {*powered, true};
      }
      break;
    }
    case PMapKind::Maddox: {
      if (ep && is_cesaro(P)) {
        const auto pe = try_reduce(P.exponents());
        // |s_k|^{p_k} is itself eventually periodic with period
        // lcm(period_s, period_p); its Cesaro limit is the block mean taken
        // just past the combined preperiod.
        const i64 pre = std::max(i64(ep->preperiod.size()),
                                 i64(pe->preperiod.size()));
        const i64 block =
            std::lcm(i64(ep->period.size()), i64(pe->period.size()));
        SequenceSpec s_ep, p_ep;
        s_ep.node = *ep;
        p_ep.node = *pe;
        double sum = 0.0;
        for (i64 k = pre + 1; k <= pre + block; ++k)
          sum += power(std::abs(value_at(s_ep, k)), value_at(p_ep, k));
        return {sum / double(block), true};
      }
      break;
    }
    case PMapKind::PreCauchyMean: {
      SequenceSpec probe = s;
      try {
        return {pre_cauchy_mean_limit_exact(probe), true};
      } catch (const NotExactlyComputable&) {
      }
      break;
    }
    case PMapKind::FAShiftSup: {
      if (ep && is_cesaro(P) &&
          P.shifts().mode == ShiftPolicy::Mode::Exhaustive) {
        // Shifted window averages of a periodic tail converge to the period
        // mean uniformly in the shift, so the limit of the sup is |mean|.
        SequenceSpec reduced;
        reduced.node = *ep;
        return {std::abs(seqcore::period_mean(reduced)), true};
      }
      break;
    }
  }
  return {numeric_limsup(P, s, depth), false};
}

ValueWithExactness signed_limsup(const SequenceSpec& s, i64 depth) {
  if (auto ep = try_reduce(s)) {
    return {*std::max_element(ep->period.begin(), ep->period.end()), true};
  }
  if (const auto* si = std::get_if<SparseIndicator>(&s.node)) {
    if (si->support.infinite() && si->support.infinite_complement())
      return {std::max(si->on_value, si->off_value), true};
  }
  double best = -std::numeric_limits<double>::infinity();
  for (i64 k = std::max<i64>(1, depth - 5000); k <= depth; ++k)
    best = std::max(best, value_at(s, k));
  return {best, false};
}

namespace {

template <typename Eval>
SupLimsupResult sup_over_points(const std::vector<Vec>& pts,
                                const VectorSequence& xs, Eval eval) {
  SupLimsupResult out;
  out.value = -std::numeric_limits<double>::infinity();
  out.exact = true;
  for (const auto& p : pts) {
    const SequenceSpec s = apply_functional(p, xs);
    const ValueWithExactness v = eval(s);
    if (!v.exact) out.exact = false;
    if (v.value > out.value) {
      out.value = v.value;
      out.argmax = p;
    }
  }
  if (pts.empty()) {
    out.value = 0.0;
    out.argmax.clear();
  }
  return out;
}

template <typename Eval>
SupLimsupResult sup_over_body(const DualBody& K, const VectorSequence& xs,
                              const SupOptions& opt, Eval eval) {
  if (K.is_polytope()) {
    return sup_over_points(extreme_points(K.as_polytope()), xs, eval);
  }
  const auto& ball = K.as_ball();
  auto dirs = sphere_directions(ball.dim, opt.ball_directions, opt.ball_seed);
  for (auto& u : dirs)
    for (double& x : u) x *= ball.radius;
  SupLimsupResult out = sup_over_points(dirs, xs, eval);
  out.exact = false;  // continuum sup approximated by finitely many probes
  return out;
}

}  // namespace

SupLimsupResult sup_limsup(const PMapSpec& P, const DualBody& K,
                           const VectorSequence& xs, const SupOptions& opt) {
  if (K.dimension() != xs.dimension())
    throw DimensionMismatch("sup_limsup: body/sequence dimension mismatch");
  return sup_over_body(K, xs, opt, [&](const SequenceSpec& s) {
    return pmap_limsup(P, s, opt.depth);
  });
}

SupLimsupResult sup_limsup(const PMapSpec& P, const GeneratingSet& B,
                           const VectorSequence& xs, const SupOptions& opt) {
  if (B.ambient().dimension() != xs.dimension())
    throw DimensionMismatch("sup_limsup: set/sequence dimension mismatch");
  return sup_over_points(B.points(), xs, [&](const SequenceSpec& s) {
    return pmap_limsup(P, s, opt.depth);
  });
}

SupLimsupResult sup_signed_limsup(const DualBody& K, const VectorSequence& xs,
                                  const SupOptions& opt) {
  if (K.dimension() != xs.dimension())
    throw DimensionMismatch("sup_signed_limsup: dimension mismatch");
  return sup_over_body(K, xs, opt, [&](const SequenceSpec& s) {
    return signed_limsup(s, opt.depth);
  });
}

SupLimsupResult sup_signed_limsup(const GeneratingSet& B,
                                  const VectorSequence& xs,
                                  const SupOptions& opt) {
  if (B.ambient().dimension() != xs.dimension())
    throw DimensionMismatch("sup_signed_limsup: dimension mismatch");
  return sup_over_points(B.points(), xs, [&](const SequenceSpec& s) {
    return signed_limsup(s, opt.depth);
  });
}

namespace {

SupOptions sup_options_from(const CheckOptions& opt) {
  SupOptions s;
  s.depth = opt.depth;
  s.ball_directions = opt.ball_directions;
  return s;
}

/// Generation hypothesis for a check. Uses the exact LP path for polytopes
/// and sampled support probing for balls.
bool generation_holds(const DualBody& K, const GeneratingSet& B,
                      const CheckOptions& opt) {
  if (opt.generation_known) return *opt.generation_known;
  const double tol = K.is_polytope() ? opt.tols.exact : opt.tols.sampled;
  return i_generates(B, K, tol).generates;
}

}  // namespace

TheoremReport check_simons(const DualBody& K, const GeneratingSet& B,
                           const VectorSequence& xs, const CheckOptions& opt) {
  TheoremReport r;
  if (!opt.waive_generation_check) {
    r.hypothesis_checked = true;
    r.hypothesis_met = generation_holds(K, B, opt);
  }
  const SupOptions sopt = sup_options_from(opt);
  const auto lhs = sup_signed_limsup(K, xs, sopt);
  const auto rhs = sup_signed_limsup(B, xs, sopt);
  r.lhs = lhs.value;
  r.rhs = rhs.value;
  r.lhs_exact = lhs.exact;
  r.rhs_exact = rhs.exact;
  r.lhs_argmax = lhs.argmax;
  r.rhs_argmax = rhs.argmax;
  r.factor_m = 1.0;
  const double tol =
      (lhs.exact && rhs.exact) ? opt.tols.exact : opt.tols.sampled;
  r.satisfied = std::abs(r.lhs - r.rhs) <= tol;
  r.detail = "simons equality";
  return r;
}

TheoremReport check_pmap_bound(const PMapSpec& P, const DualBody& K,
                               const GeneratingSet& B, const VectorSequence& xs,
                               const CheckOptions& opt) {
  TheoremReport r;
  if (!opt.waive_generation_check) {
    r.hypothesis_checked = true;
    r.hypothesis_met = generation_holds(K, B, opt);
    if (!r.hypothesis_met)
      throw HypothesisNotVerified(
          "check_pmap_bound: B does not generate K (pass the waiver flag to "
          "run anyway)");
  }
  const SupOptions sopt = sup_options_from(opt);
  const auto lhs = sup_limsup(P, K, xs, sopt);
  const auto rhs = sup_limsup(P, B, xs, sopt);
  r.lhs = lhs.value;
  r.rhs = rhs.value;
  r.lhs_exact = lhs.exact;
  r.rhs_exact = rhs.exact;
  r.lhs_argmax = lhs.argmax;
  r.rhs_argmax = rhs.argmax;
  r.factor_m = P.quasi_additivity_m();
  const double tol =
      (lhs.exact && rhs.exact) ? opt.tols.exact : opt.tols.sampled;
  r.satisfied = r.lhs <= r.factor_m * r.rhs + tol;
  r.detail = P.label();
  return r;
}

TheoremReport check_strong_equality(const DualBody& K, const GeneratingSet& B,
                                    const SummabilityMatrix& A, double p,
                                    const VectorSequence& xs,
                                    const CheckOptions& opt) {
  if (!(p >= 1.0))
    throw std::invalid_argument("check_strong_equality requires p >= 1");
  // Power form on both sides; sup and limsup commute with t -> t^{1/p}.
  TheoremReport r =
      check_pmap_bound(PMapSpec::strong_matrix(A, p), K, B, xs, opt);
  r.factor_m = 1.0;
  const double tol =
      (r.lhs_exact && r.rhs_exact) ? opt.tols.exact : opt.tols.sampled;
  r.satisfied = std::abs(r.lhs - r.rhs) <= tol;
  r.detail = "strong-matrix equality (power form, p=" + std::to_string(p) + ")";
  return r;
}

namespace {

SequenceSpec random_bounded_spec(SplitMix64& rng, int max_period,
                                 int max_preperiod, double lo, double hi) {
  const i64 m = rng.uniform_int(1, max_period);
  const i64 pre = rng.uniform_int(0, max_preperiod);
  std::vector<double> preperiod(static_cast<size_t>(pre));
      std::vector<double> period(static_cast<size_t>(m));
  for (double& v : preperiod) v = rng.uniform(lo, hi);
  for (double& v : period) v = rng.uniform(lo, hi);
  return SequenceSpec::periodic(std::move(preperiod), std::move(period));
}

SequenceSpec scale_spec(const SequenceSpec& s, double factor) {
  return seqcore::reduce_combo(
      seqcore::LinearCombo{{factor}, {s}});
}

SequenceSpec midpoint_spec(const SequenceSpec& a, const SequenceSpec& b) {
  return seqcore::reduce_combo(seqcore::LinearCombo{{0.5, 0.5}, {a, b}});
}

SequenceSpec sum_spec(const SequenceSpec& a, const SequenceSpec& b) {
  return seqcore::reduce_combo(seqcore::LinearCombo{{1.0, 1.0}, {a, b}});
}

/// First `count` values frozen, zero afterwards. Pointwise approximation of
/// s used by the truncation spot check.
SequenceSpec truncate_spec(const SequenceSpec& s, i64 count) {
  std::vector<double> head(static_cast<size_t>(count));
  for (i64 k = 1; k <= count; ++k) head[size_t(k - 1)] = value_at(s, k);
  return SequenceSpec::periodic(std::move(head), {0.0});
}

/// Sampled sup of row absolute sums, used to size the continuity ladder.
double row_norm_estimate(const PMapSpec& P) {
  if (!P.has_matrix()) return 1.0;
  const auto& A = P.matrix();
  double worst = 1.0;
  for (i64 n : {1, 2, 5, 10, 20, 50}) {
    double sum = 0.0;
    auto [lo, hi] = A.row_support(n);
    for (i64 k = lo; k <= hi; ++k) sum += std::abs(A.entry(n, k));
    worst = std::max(worst, sum);
  }
  return worst;
}

}  // namespace

AuditReport pmap_condition_audit(const PMapSpec& P, int samples, u64 seed,
                                 std::optional<double> claimed_m) {
  if (samples < 100)
    throw std::invalid_argument("pmap_condition_audit: samples >= 100");
  AuditReport report;
  report.audited_m = claimed_m.value_or(P.quasi_additivity_m());
  SplitMix64 rng(seed);
  constexpr double kSlack = 1e-9;
  const std::vector<i64> term_indices = {1, 2, 3, 5, 8, 13, 21, 34, 50};

  {
    AuditCheck c{"zero_maps_to_zero", true, ""};
    const SequenceSpec zero = SequenceSpec::constant(0.0);
    for (i64 n : term_indices) {
      if (pmap_term(P, zero, n) != 0.0) {
        c.passed = false;
        c.detail = "P(0) term nonzero at n=" + std::to_string(n);
        break;
      }
    }
    if (c.passed) c.detail = "P(0) = 0 exactly at all sampled n";
    report.checks.push_back(std::move(c));
  }

  {
    AuditCheck c{"midpoint_convexity", true, ""};
    for (int t = 0; t < samples && c.passed; ++t) {
      const auto x = random_bounded_spec(rng, 6, 2, -1.0, 1.0);
      const auto y = random_bounded_spec(rng, 6, 2, -1.0, 1.0);
      const auto mid = midpoint_spec(x, y);
      for (i64 n : term_indices) {
        const double lhs = pmap_term(P, mid, n);
        const double rhs = 0.5 * (pmap_term(P, x, n) + pmap_term(P, y, n));
        if (lhs > rhs + kSlack) {
          c.passed = false;
          c.detail = "REFUTED at n=" + std::to_string(n) + ": P((x+y)/2) = " +
                     std::to_string(lhs) + " > " + std::to_string(rhs);
          break;
        }
      }
    }
    if (c.passed) c.detail = "no violation across sampled pairs";
    report.checks.push_back(std::move(c));
  }

  {
    AuditCheck c{"quasi_additivity", true, ""};
    const double m = report.audited_m;
    // The constant pair stresses the bound hardest for the power kinds.
    std::vector<std::pair<SequenceSpec, SequenceSpec>> pairs;
    pairs.emplace_back(SequenceSpec::constant(1.0), SequenceSpec::constant(1.0));
    for (int t = 0; t < samples; ++t)
      pairs.emplace_back(random_bounded_spec(rng, 6, 2, -1.0, 1.0),
                         random_bounded_spec(rng, 6, 2, -1.0, 1.0));
    for (const auto& [x, y] : pairs) {
      const auto s = sum_spec(x, y);
      for (i64 n : term_indices) {
        const double lhs = pmap_term(P, s, n);
        const double rhs = m * (pmap_term(P, x, n) + pmap_term(P, y, n));
        if (lhs > rhs + kSlack) {
          c.passed = false;
          c.detail = "REFUTED at n=" + std::to_string(n) + " with M=" +
                     std::to_string(m) + ": P(x+y) = " + std::to_string(lhs) +
                     " > " + std::to_string(rhs);
          break;
        }
      }
      if (!c.passed) break;
    }
    if (c.passed)
      c.detail = "P(x+y) <= M (P(x) + P(y)) at M=" + std::to_string(m);
    report.checks.push_back(std::move(c));
  }

  {
    AuditCheck c{"continuity_at_zero", true, ""};
    const double kappa = row_norm_estimate(P);
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
      const double delta = eps / (2.0 * std::max(1.0, kappa));
      for (int t = 0; t < 8 && c.passed; ++t) {
        auto raw = random_bounded_spec(rng, 6, 2, -1.0, 1.0);
        const double b = sup_bound(raw);
        if (b <= 0.0) continue;
        const auto y = scale_spec(raw, delta / b);
        for (i64 n : term_indices) {
          if (pmap_term(P, y, n) > eps + kSlack) {
            c.passed = false;
            c.detail = "term exceeds eps=" + std::to_string(eps) +
                       " at delta=" + std::to_string(delta);
            break;
          }
        }
      }
      if (!c.passed) break;
    }
    if (c.passed) c.detail = "ladder eps in {1e-1..1e-6} passed";
    report.checks.push_back(std::move(c));
  }

  {
    // Pointwise lower semicontinuity on bounded sets is not certifiable from
    // finitely many samples; this only spot-checks the truncation family,
    // which converges pointwise to s.
    AuditCheck c{"lsc_truncation_spot_check", true, ""};
    for (int t = 0; t < 16 && c.passed; ++t) {
      const auto y = random_bounded_spec(rng, 6, 2, -1.0, 1.0);
      for (i64 n : {i64(3), i64(7), i64(15)}) {
        const i64 big = 8 * std::max<i64>(n, 16);
        const double truncated = pmap_term(P, truncate_spec(y, big), n);
        const double full = pmap_term(P, y, n);
        if (full > truncated + 1e-6) {
          c.passed = false;
          c.detail = "P_n(s) exceeds the deep-truncation value at n=" +
                     std::to_string(n);
          break;
        }
      }
    }
    if (c.passed)
      c.detail =
          "liminf consistency along truncations (full tau_p lsc not "
          "machine-checkable)";
    report.checks.push_back(std::move(c));
  }

  return report;
}

namespace {

struct MethodVerdict {
  bool holds = false;
  bool exact = false;
  std::string detail;
};

/// Does the scalar sequence converge to `target` in the given method?
/// Exact path for eventually periodic data under the Cesaro matrix;
/// depth-limited term evaluation otherwise.
MethodVerdict method_converges(const RainwaterSpec& method,
                               const SequenceSpec& s, double target,
                               const RainwaterOptions& opt) {
  constexpr double kExactTol = 1e-9;
  const auto ep = try_reduce(s);
  switch (method.method) {
    case RainwaterMethod::Strong: {
      const auto& A = method.matrix.value();
      if (ep && A.name() == "cesaro") {
        double worst = 0.0;
        for (double v : ep->period) worst = std::max(worst, std::abs(v - target));
        return {worst <= kExactTol, true,
                "strong term limit is the period mean of |s-x|^p"};
      }
      double term;
      if (method.exponents) {
        term = strong_term_maddox(A, s, target, *method.exponents, opt.depth);
      } else {
        term = strong_term(A, s, target, method.p, opt.depth);
      }
      return {term <= opt.numeric_tol, false, "strong term at depth"};
    }
    case RainwaterMethod::Statistical: {
      const auto& A = method.matrix.value();
      summability::ClassifyOptions copt;
      copt.depth = opt.depth;
      copt.numeric_tol = opt.numeric_tol;
      const auto v = summability::classify_statistical(A, s, copt);
      const double tol = v.exact ? kExactTol : opt.numeric_tol;
      return {v.converges() && std::abs(v.limit - target) <= tol, v.exact,
              "statistical classifier"};
    }
    case RainwaterMethod::FA: {
      const auto& A = method.matrix.value();
      if (ep && A.name() == "cesaro") {
        SequenceSpec reduced;
        reduced.node = *ep;
        return {std::abs(seqcore::period_mean(reduced) - target) <= kExactTol,
                true, "shifted window means converge to the period mean"};
      }
      const double term = fa_term(A, s, target, opt.depth,
                                  ep ? ShiftPolicy::exhaustive()
                                     : ShiftPolicy::explicit_set(
                                           {0, 1, 2, 3, 5, 8, 13, 21, 34}));
      return {term <= opt.numeric_tol, false, "fa term at depth"};
    }
    case RainwaterMethod::PreCauchy: {
      summability::ClassifyOptions copt;
      copt.depth = opt.depth;
      copt.numeric_tol = opt.numeric_tol;
      const auto v = summability::classify_pre_cauchy(s, copt);
      return {v.converges(), v.exact, "pre-Cauchy classifier"};
    }
  }
  return {};
}

}  // namespace

RainwaterReport rainwater_check(const GeneratingSet& B, const VectorSequence& xs,
                                const Vec& x, const RainwaterSpec& method_in,
                                const RainwaterOptions& opt) {
  const int d = B.ambient().dimension();
  if (xs.dimension() != d || int(x.size()) != d)
    throw DimensionMismatch("rainwater_check: dimension mismatch");
  if (method_in.method != RainwaterMethod::PreCauchy && !method_in.matrix)
    throw std::invalid_argument("rainwater_check: method requires a matrix");

  RainwaterSpec method = method_in;
  // Exponent sequences with inf p_k = q < 1 are replaced by p_k/q; on
  // bounded sequences the two strong methods agree.
  if (method.exponents) {
    const auto pe = try_reduce(*method.exponents);
    if (!pe)
      throw NotExactlyComputable(
          "rainwater_check: exponent sequence must be eventually periodic");
    double q = std::numeric_limits<double>::infinity();
    for (double v : pe->preperiod) q = std::min(q, v);
    for (double v : pe->period) q = std::min(q, v);
    if (!(q > 0.0))
      throw ExponentNotPositive("rainwater_check: exponents must be positive");
    if (q < 1.0) {
      auto scaled = *pe;
      for (double& v : scaled.preperiod) v /= q;
      for (double& v : scaled.period) v /= q;
      SequenceSpec s;
      s.node = std::move(scaled);
      method.exponents = std::move(s);
    }
  }

  RainwaterReport report;

  // Hypothesis: the method converges under every b in B.
  for (const auto& b : B.points()) {
    const SequenceSpec s = apply_functional(b, xs);
    const double target = dot(b, x);
    const MethodVerdict v = method_converges(method, s, target, opt);
    if (!v.holds) {
      report.status = RainwaterReport::Status::NotApplicable;
      report.witness = b;
      report.detail = "hypothesis fails on a generating point (" + v.detail +
                      ")";
      return report;
    }
  }

  // Conclusion under probe functionals: ambient polytope vertices plus
  // seeded sphere directions.
  std::vector<Vec> probes;
  if (B.ambient().is_polytope())
    probes = extreme_points(B.ambient().as_polytope());
  auto dirs = sphere_directions(d, opt.probe_directions, opt.probe_seed);
  probes.insert(probes.end(), dirs.begin(), dirs.end());

  for (const auto& u : probes) {
    const SequenceSpec s = apply_functional(u, xs);
    const double target = dot(u, x);
    const MethodVerdict v = method_converges(method, s, target, opt);
    if (!v.holds) {
      report.status = RainwaterReport::Status::Violated;
      report.witness = u;
      report.detail = "conclusion fails under a probe functional (" + v.detail +
                      ")";
      report.probes_checked = int(probes.size());
      return report;
    }
  }
  report.status = RainwaterReport::Status::Holds;
  report.probes_checked = int(probes.size());
  report.detail = "conclusion verified at every probe";
  return report;
}

Instance generate_instance(const SuiteParams& params, u64 seed, u64 index) {
  SplitMix64 rng = SplitMix64(seed).fork(index);
  const int d = params.dims[size_t(rng.uniform_int(0, i64(params.dims.size()) - 1))];
  const i64 nv = rng.uniform_int(params.min_vertices, params.max_vertices);
  std::vector<Vec> vertices(static_cast<size_t>(nv), Vec(static_cast<size_t>(d)));
  for (auto& v : vertices)
    for (double& coord : v) coord = rng.uniform(params.value_lo, params.value_hi);
  DualBody body = DualBody::polytope(vertices);
  GeneratingSet gset = GeneratingSet::finite_points(
      extreme_points(body.as_polytope()), body);

  std::vector<SequenceSpec> coords;
  coords.reserve(size_t(d));
  for (int i = 0; i < d; ++i) {
    if (params.constant_sequences) {
      coords.push_back(SequenceSpec::constant(
          rng.uniform(params.value_lo, params.value_hi)));
    } else {
      const i64 m = rng.uniform_int(1, params.max_period);
      const i64 pre = rng.uniform_int(0, params.max_preperiod);
      std::vector<double> preperiod(static_cast<size_t>(pre));
      std::vector<double> period(static_cast<size_t>(m));
      for (double& v : preperiod) v = rng.uniform(params.value_lo, params.value_hi);
      for (double& v : period) v = rng.uniform(params.value_lo, params.value_hi);
      coords.push_back(
          SequenceSpec::periodic(std::move(preperiod), std::move(period)));
    }
  }
  return Instance{std::move(body), std::move(gset),
                  VectorSequence(std::move(coords))};
}

VectorSequence generate_sequence(const SuiteParams& params, int dim, u64 seed,
                                 u64 index) {
  SplitMix64 rng = SplitMix64(seed).fork(index ^ 0x5eacull);
  std::vector<SequenceSpec> coords;
  coords.reserve(size_t(dim));
  for (int i = 0; i < dim; ++i) {
    if (params.constant_sequences) {
      coords.push_back(SequenceSpec::constant(
          rng.uniform(params.value_lo, params.value_hi)));
    } else {
      const i64 m = rng.uniform_int(1, params.max_period);
      const i64 pre = rng.uniform_int(0, params.max_preperiod);
      std::vector<double> preperiod(static_cast<size_t>(pre));
      std::vector<double> period(static_cast<size_t>(m));
      for (double& v : preperiod) v = rng.uniform(params.value_lo, params.value_hi);
      for (double& v : period) v = rng.uniform(params.value_lo, params.value_hi);
      coords.push_back(
          SequenceSpec::periodic(std::move(preperiod), std::move(period)));
    }
  }
  return VectorSequence(std::move(coords));
}

}  // namespace summa::simonslab
