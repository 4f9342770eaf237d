#include "summa/convexdual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace summa::convexdual {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

DualBody DualBody::polytope(std::vector<Vec> vertices) {
  if (vertices.empty())
    throw std::invalid_argument("polytope: vertex list must be nonempty");
  const size_t d = vertices.front().size();
  if (d == 0) throw std::invalid_argument("polytope: dimension must be >= 1");
  for (const auto& v : vertices) {
    if (v.size() != d)
      throw DimensionMismatch("polytope: inconsistent vertex dimensions");
    for (double x : v)
      if (!std::isfinite(x))
        throw std::invalid_argument("polytope: vertices must be finite");
  }
  DualBody b;
  b.body_ = VPolytope{std::move(vertices)};
  return b;
}

DualBody DualBody::ball(double radius, int dim) {
  if (!(radius > 0.0)) throw std::invalid_argument("ball: radius must be > 0");
  if (dim < 1) throw std::invalid_argument("ball: dimension must be >= 1");
  DualBody b;
  b.body_ = EuclideanBall{radius, dim};
  return b;
}

int DualBody::dimension() const {
  if (is_polytope()) return int(as_polytope().vertices.front().size());
  return as_ball().dim;
}

bool DualBody::contains(std::span<const double> p, double tol) const {
  if (int(p.size()) != dimension())
    throw DimensionMismatch("contains: point dimension mismatch");
  if (is_polytope()) return conv_contains(as_polytope().vertices, p, tol);
  return norm2(p) <= as_ball().radius + tol;
}

namespace {

Vec normalized(Vec v) {
  const double n = norm2(v);
  if (n <= 0.0)
    throw std::invalid_argument("direction must be nonzero");
  for (double& x : v) x /= n;
  return v;
}

}  // namespace

std::vector<Vec> sphere_directions(int dim, int count, u64 seed) {
  SplitMix64 rng(seed);
  std::vector<Vec> dirs;
  dirs.reserve(size_t(count));
  while (int(dirs.size()) < count) {
    Vec v(static_cast<size_t>(dim));
    double n2 = 0.0;
    for (double& x : v) {
      x = rng.gaussian();
      n2 += x * x;
    }
    if (n2 < 1e-24) continue;
    const double n = std::sqrt(n2);
    for (double& x : v) x /= n;
    dirs.push_back(std::move(v));
  }
  return dirs;
}

GeneratingSet GeneratingSet::finite_points(std::vector<Vec> points,
                                           DualBody ambient) {
  const int d = ambient.dimension();
  for (const auto& p : points)
    if (int(p.size()) != d)
      throw DimensionMismatch("finite_points: point dimension mismatch");
  return GeneratingSet(std::move(points), std::move(ambient), std::nullopt);
}

GeneratingSet GeneratingSet::sphere_sample(SphereSampleParams params,
                                           DualBody ambient) {
  if (ambient.is_polytope())
    throw std::invalid_argument(
        "sphere_sample: ambient body must be a Euclidean ball");
  if (params.count <= 0)
    throw std::invalid_argument("sphere_sample: count must be positive");
  const auto& ball = ambient.as_ball();
  std::optional<SphereCap> cap = params.excluded_cap;
  double cos_cap = 2.0;  // nothing excluded
  if (cap) {
    cap->direction = normalized(cap->direction);
    cos_cap = std::cos(cap->angular_radius);
  }
  SplitMix64 rng(params.seed);
  std::vector<Vec> pts;
  pts.reserve(size_t(params.count));
  i64 attempts = 0;
  const i64 max_attempts = i64(params.count) * 1000 + 1000;
  while (int(pts.size()) < params.count) {
    if (++attempts > max_attempts)
      throw std::runtime_error(
          "sphere_sample: rejection sampling failed (cap too large?)");
    Vec v(static_cast<size_t>(ball.dim));
    double n2 = 0.0;
    for (double& x : v) {
      x = rng.gaussian();
      n2 += x * x;
    }
    if (n2 < 1e-24) continue;
    const double n = std::sqrt(n2);
    for (double& x : v) x /= n;
    if (cap && dot(v, cap->direction) >= cos_cap) continue;
    for (double& x : v) x *= ball.radius;
    pts.push_back(std::move(v));
  }
  SphereSampleParams stored = params;
  stored.excluded_cap = cap;
  return GeneratingSet(std::move(pts), std::move(ambient), stored);
}

double support_value(const DualBody& body, std::span<const double> v) {
  if (int(v.size()) != body.dimension())
    throw DimensionMismatch("support_value: direction dimension mismatch");
  if (body.is_polytope()) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& vertex : body.as_polytope().vertices)
      best = std::max(best, dot(vertex, v));
    return best;
  }
  return body.as_ball().radius * norm2(v);
}

namespace {

constexpr double kPivotEps = 1e-11;

/// Dense phase-1 simplex for the hull-membership feasibility system.
/// Returns the optimal artificial mass (the L1 residual); throws
/// Indeterminate on breakdown.
double phase1_residual(std::span<const Vec> points,
                       std::span<const double> target) {
  const int d = int(target.size());
  const int m = d + 1;                 // coordinate rows + convexity row
  const int npts = int(points.size());
  const int ncols = npts + m;          // points, then artificials

  // tableau[i][j], j < ncols, plus rhs column.
  std::vector<std::vector<double>> T(size_t(m),
                                     std::vector<double>(size_t(ncols + 1), 0.0));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < npts; ++j) T[size_t(i)][size_t(j)] = points[size_t(j)][size_t(i)];
    T[size_t(i)][size_t(ncols)] = target[size_t(i)];
  }
  for (int j = 0; j < npts; ++j) T[size_t(d)][size_t(j)] = 1.0;
  T[size_t(d)][size_t(ncols)] = 1.0;

  for (int i = 0; i < m; ++i) {
    if (T[size_t(i)][size_t(ncols)] < 0.0)
      for (int j = 0; j <= ncols; ++j) T[size_t(i)][size_t(j)] = -T[size_t(i)][size_t(j)];
    T[size_t(i)][size_t(npts + i)] = 1.0;
  }

  std::vector<int> basis(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) basis[size_t(i)] = npts + i;

  // Reduced cost row for minimizing the artificial sum: z_j = c_j - sum_i T_ij
  // (artificials cost 1, structural columns cost 0, basis is all artificial).
  std::vector<double> z(static_cast<size_t>(ncols + 1), 0.0);
  for (int j = 0; j <= ncols; ++j) {
    double colsum = 0.0;
    for (int i = 0; i < m; ++i) colsum += T[size_t(i)][size_t(j)];
    const double cost = (j >= npts && j < ncols) ? 1.0 : 0.0;
    z[size_t(j)] = cost - colsum;
  }

  const i64 max_iters = 2000 + 40 * i64(ncols);
  for (i64 iter = 0;; ++iter) {
    if (iter > max_iters)
      throw Indeterminate("conv_contains: simplex iteration cap exceeded");

    // Bland: entering column is the lowest index with negative reduced cost.
    int enter = -1;
    for (int j = 0; j < ncols; ++j) {
      if (z[size_t(j)] < -kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;

    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < m; ++i) {
      const double a = T[size_t(i)][size_t(enter)];
      if (a > kPivotEps) {
        const double ratio = T[size_t(i)][size_t(ncols)] / a;
        if (leave < 0 || ratio < best_ratio - kPivotEps ||
            (std::abs(ratio - best_ratio) <= kPivotEps &&
             basis[size_t(i)] < basis[size_t(leave)])) {
          leave = i;
          best_ratio = ratio;
        }
      }
    }
    if (leave < 0)
      throw Indeterminate("conv_contains: unbounded pivot in phase 1");

    auto& prow = T[size_t(leave)];
    const double pivot = prow[size_t(enter)];
    for (int j = 0; j <= ncols; ++j) prow[size_t(j)] /= pivot;
    for (int i = 0; i < m; ++i) {
      if (i == leave) continue;
      const double factor = T[size_t(i)][size_t(enter)];
      if (factor == 0.0) continue;
      for (int j = 0; j <= ncols; ++j)
        T[size_t(i)][size_t(j)] -= factor * prow[size_t(j)];
    }
    const double zfactor = z[size_t(enter)];
    if (zfactor != 0.0)
      for (int j = 0; j <= ncols; ++j) z[size_t(j)] -= zfactor * prow[size_t(j)];
    basis[size_t(leave)] = enter;
  }

  double residual = 0.0;
  for (int i = 0; i < m; ++i)
    if (basis[size_t(i)] >= npts) residual += T[size_t(i)][size_t(ncols)];
  return residual;
}

}  // namespace

bool conv_contains(std::span<const Vec> points, std::span<const double> target,
                   double tol) {
  if (points.empty())
    throw std::invalid_argument("conv_contains: point list must be nonempty");
  for (const auto& p : points)
    if (p.size() != target.size())
      throw DimensionMismatch("conv_contains: dimension mismatch");
  return phase1_residual(points, target) <= tol;
}

std::vector<Vec> extreme_points(const VPolytope& poly) {
  constexpr double kTol = 1e-9;
  std::vector<Vec> pts;
  // Near-duplicates collapse first; otherwise each copy hides the other.
  for (const auto& p : poly.vertices) {
    bool dup = false;
    for (const auto& q : pts) {
      double dist2 = 0.0;
      for (size_t i = 0; i < p.size(); ++i)
        dist2 += (p[i] - q[i]) * (p[i] - q[i]);
      if (dist2 <= kTol * kTol) {
        dup = true;
        break;
      }
    }
    if (!dup) pts.push_back(p);
  }

  // A non-extreme point stays removable no matter which other non-extreme
  // points were dropped before it, so one pass against the current working
  // set suffices.
  std::vector<Vec> kept;
  for (size_t i = 0; i < pts.size(); ++i) {
    std::vector<Vec> others(kept);
    others.insert(others.end(), pts.begin() + ptrdiff_t(i) + 1, pts.end());
    if (others.empty() || !conv_contains(others, pts[i], kTol))
      kept.push_back(pts[i]);
  }
  return kept;
}

namespace {

void require_subset(const GeneratingSet& B, const DualBody& K) {
  constexpr double kTol = 1e-9;
  for (const auto& b : B.points())
    if (!K.contains(b, kTol))
      throw SubsetViolation("generating set point lies outside the body");
}

std::string vec_to_string(const Vec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(v[i]);
  }
  s += ')';
  return s;
}

}  // namespace

BoundaryVerdict is_boundary(const GeneratingSet& B, const DualBody& K,
                            int probes, double attain_tol, u64 probe_seed) {
  require_subset(B, K);
  BoundaryVerdict verdict;

  if (K.is_polytope() && !B.is_sample()) {
    const auto ext = extreme_points(K.as_polytope());
    int covered = 0;
    for (const auto& v : ext) {
      bool found = false;
      for (const auto& b : B.points()) {
        double dist2 = 0.0;
        for (size_t i = 0; i < v.size(); ++i)
          dist2 += (v[i] - b[i]) * (v[i] - b[i]);
        if (dist2 <= 1e-18) {
          found = true;
          break;
        }
      }
      if (found) {
        ++covered;
      } else if (!verdict.witness) {
        verdict.witness = v;  // generic directions peak only at this vertex
      }
    }
    verdict.exact = true;
    verdict.attained_fraction = ext.empty() ? 1.0 : double(covered) / double(ext.size());
    verdict.is_boundary = covered == int(ext.size());
    verdict.detail = verdict.is_boundary
                         ? "all extreme points represented"
                         : "extreme point of K missing from B: " +
                               vec_to_string(*verdict.witness);
    return verdict;
  }

  // Sampled path: probe directions and ask whether some b attains the
  // support value within attain_tol.
  const auto dirs = sphere_directions(K.dimension(), probes, probe_seed);
  int attained = 0;
  double worst_gap = -1.0;
  for (const auto& u : dirs) {
    const double target = support_value(K, u);
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& b : B.points()) best = std::max(best, dot(b, u));
    const double gap = target - best;
    if (gap <= attain_tol) {
      ++attained;
    } else if (gap > worst_gap) {
      worst_gap = gap;
      verdict.witness = u;
    }
  }
  verdict.exact = false;
  verdict.attained_fraction = probes > 0 ? double(attained) / double(probes) : 1.0;
  verdict.is_boundary = attained == probes;
  verdict.detail = verdict.is_boundary
                       ? "all probe directions attained within tol"
                       : "support gap " + std::to_string(worst_gap) +
                             " at direction " + vec_to_string(*verdict.witness);
  return verdict;
}

GenerationVerdict i_generates(const GeneratingSet& B, const DualBody& K,
                              double tol, int probes, u64 probe_seed) {
  require_subset(B, K);
  GenerationVerdict verdict;

  if (K.is_polytope() && !B.is_sample()) {
    const auto ext = extreme_points(K.as_polytope());
    for (const auto& v : ext) {
      if (!conv_contains(B.points(), v, 1e-9)) {
        verdict.generates = false;
        verdict.exact = true;
        verdict.witness = v;
        verdict.detail =
            "extreme point outside conv(B): " + vec_to_string(v);
        return verdict;
      }
    }
    verdict.generates = true;
    verdict.exact = true;
    verdict.detail = "conv(B) covers every extreme point of K";
    return verdict;
  }

  const auto dirs = sphere_directions(K.dimension(), probes, probe_seed);
  double worst_gap = 0.0;
  for (const auto& u : dirs) {
    const double target = support_value(K, u);
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& b : B.points()) best = std::max(best, dot(b, u));
    const double gap = target - best;
    if (gap > worst_gap) {
      worst_gap = gap;
      verdict.witness = u;
    }
  }
  verdict.worst_gap = worst_gap;
  verdict.generates = worst_gap <= tol;
  verdict.exact = false;
  verdict.detail = "max support deficiency " + std::to_string(worst_gap) +
                   " over " + std::to_string(probes) + " probe directions";
  if (verdict.generates) verdict.witness.reset();
  return verdict;
}

}  // namespace summa::convexdual
