#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "summa/common.hpp"

namespace summa::convexdual {

using Vec = std::vector<double>;

struct VPolytope {
  std::vector<Vec> vertices;  // nonempty, all finite, shared dimension
};

struct EuclideanBall {
  double radius = 1.0;  // > 0, centered at the origin
  int dim = 1;
};

/// Weak*-compact convex body in the finite-dimensional model: either the
/// convex hull of finitely many points or a centered Euclidean ball.
class DualBody {
 public:
  static DualBody polytope(std::vector<Vec> vertices);
  static DualBody ball(double radius, int dim);

  int dimension() const;
  bool is_polytope() const { return std::holds_alternative<VPolytope>(body_); }
  const VPolytope& as_polytope() const { return std::get<VPolytope>(body_); }
  const EuclideanBall& as_ball() const { return std::get<EuclideanBall>(body_); }

  /// Membership within tol (hull feasibility for polytopes, norm test for
  /// balls).
  bool contains(std::span<const double> p, double tol) const;

 private:
  DualBody() = default;
  std::variant<VPolytope, EuclideanBall> body_;
};

struct SphereCap {
  Vec direction;          // normalized on construction
  double angular_radius;  // radians
};

struct SphereSampleParams {
  int count = 0;
  u64 seed = 0;
  std::optional<SphereCap> excluded_cap;
};

/// Candidate subset B of an ambient body: an explicit finite point set or a
/// deterministic sphere sample (normalized Gaussian tuples from splitmix64,
/// rejecting points inside the excluded cap). Immutable; the point list is
/// materialized once at construction.
class GeneratingSet {
 public:
  static GeneratingSet finite_points(std::vector<Vec> points, DualBody ambient);
  static GeneratingSet sphere_sample(SphereSampleParams params,
                                     DualBody ambient);

  const std::vector<Vec>& points() const { return points_; }
  const DualBody& ambient() const { return ambient_; }
  bool is_sample() const { return bool(sample_); }
  const std::optional<SphereSampleParams>& sample_params() const {
    return sample_;
  }

 private:
  GeneratingSet(std::vector<Vec> pts, DualBody ambient,
                std::optional<SphereSampleParams> sample)
      : points_(std::move(pts)),
        ambient_(std::move(ambient)),
        sample_(std::move(sample)) {}
  std::vector<Vec> points_;
  DualBody ambient_;
  std::optional<SphereSampleParams> sample_;
};

/// h_K(v) = sup over K of the inner product with v. Max over vertices for
/// polytopes, radius * |v| for balls.
double support_value(const DualBody& body, std::span<const double> v);

/// Membership of `target` in the convex hull of `points`, decided by a dense
/// phase-1 simplex with Bland's rule: find lambda >= 0, sum lambda = 1,
/// sum lambda_i p_i = target with L1 residual <= tol. Numeric breakdown is
/// reported as Indeterminate, never as false.
bool conv_contains(std::span<const Vec> points, std::span<const double> target,
                   double tol);

/// Minimal sublist spanning the same hull: drops every point contained in
/// the hull of the others (tolerance 1e-9).
std::vector<Vec> extreme_points(const VPolytope& poly);

struct BoundaryVerdict {
  bool is_boundary = false;
  bool exact = false;            // polytope/finite path is exact
  double attained_fraction = 0;  // probes (or extreme points) attained
  std::optional<Vec> witness;    // direction (ball) or missed vertex (polytope)
  std::string detail;
};

/// Whether every direction attains its supremum over K on B.
/// Polytope K with finite B: exact (B must cover the extreme points within
/// 1e-9; generic directions are maximized at a unique vertex). Ball K:
/// sampled over `probes` seeded directions with attainment tolerance
/// `attain_tol`. Throws SubsetViolation if some b lies outside K.
BoundaryVerdict is_boundary(const GeneratingSet& B, const DualBody& K,
                            int probes, double attain_tol = 1e-3,
                            u64 probe_seed = 0x5eedb0a7d5ull);

struct GenerationVerdict {
  bool generates = false;
  bool exact = false;
  std::optional<Vec> witness;  // missing vertex or deficient direction
  double worst_gap = 0.0;      // support deficiency on the sampled path
  std::string detail;
};

/// Closed-convex-hull generation test (the finite-dimensional reading of
/// (I)-generation). Polytope K with finite B: exact via hull membership of
/// every extreme point (tolerance 1e-9). Ball K: approximate, the support of
/// conv B must reach radius - tol in every probe direction.
GenerationVerdict i_generates(const GeneratingSet& B, const DualBody& K,
                              double tol, int probes = 1000,
                              u64 probe_seed = 0x16e7a7e5eedull);

/// `count` unit directions in dimension `dim`, deterministic in `seed`.
std::vector<Vec> sphere_directions(int dim, int count, u64 seed);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace summa::convexdual
