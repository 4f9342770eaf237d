#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "summa/convexdual.hpp"

using namespace summa;
using namespace summa::convexdual;

namespace {

std::vector<Vec> cross_polytope_vertices() {
  return {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
}

/// Rejection oracle for hull membership in d=2: the target is outside iff
/// some sampled direction separates it from every point with margin > tol.
bool oracle_outside(const std::vector<Vec>& pts, const Vec& target,
                    double tol) {
  const int dirs = 10'000;
  for (int i = 0; i < dirs; ++i) {
    const double theta = 2.0 * 3.14159265358979323846 * double(i) / dirs;
    const Vec u = {std::cos(theta), std::sin(theta)};
    double best = -1e300;
    for (const auto& p : pts) best = std::max(best, dot(p, u));
    if (dot(target, u) > best + tol) return true;
  }
  return false;
}

bool same_point(const Vec& a, const Vec& b, double tol = 1e-9) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

}  // namespace

TEST_CASE("support_value") {
  const auto cross = DualBody::polytope(cross_polytope_vertices());
  const double v[] = {3.0, 4.0};
  CHECK(support_value(cross, v) == 4.0);

  const auto disk = DualBody::ball(1.0, 2);
  CHECK(support_value(disk, v) == doctest::Approx(5.0));

  const double zero[] = {0.0, 0.0};
  CHECK(support_value(cross, zero) == 0.0);
  CHECK(support_value(disk, zero) == 0.0);

  const double bad[] = {1.0};
  CHECK_THROWS_AS(support_value(cross, bad), DimensionMismatch);
}

TEST_CASE("support_value is sublinear") {
  SplitMix64 rng(60);
  for (int t = 0; t < 30; ++t) {
    const int d = int(rng.uniform_int(2, 4));
    std::vector<Vec> vertices(size_t(rng.uniform_int(3, 8)), Vec(size_t(d)));
    for (auto& vert : vertices)
      for (double& x : vert) x = rng.uniform(-1, 1);
    const auto body = rng.uniform01() < 0.5
                          ? DualBody::polytope(vertices)
                          : DualBody::ball(rng.uniform(0.5, 2.0), d);
    Vec u(static_cast<size_t>(d));
    Vec v(static_cast<size_t>(d));
    Vec sum(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
      u[size_t(i)] = rng.uniform(-2, 2);
      v[size_t(i)] = rng.uniform(-2, 2);
      sum[size_t(i)] = u[size_t(i)] + v[size_t(i)];
    }
    REQUIRE(support_value(body, sum) <=
            support_value(body, u) + support_value(body, v) + 1e-9);
    const double alpha = rng.uniform(0.0, 3.0);
    Vec scaled(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) scaled[size_t(i)] = alpha * u[size_t(i)];
    REQUIRE(support_value(body, scaled) ==
            doctest::Approx(alpha * support_value(body, u)).epsilon(1e-9));
  }
}

TEST_CASE("conv_contains basics") {
  const auto pts = cross_polytope_vertices();
  CHECK(conv_contains(pts, Vec{0, 0}, 1e-9));
  CHECK(!conv_contains(pts, Vec{2, 0}, 1e-9));
  CHECK(conv_contains(std::vector<Vec>{{1, 0}, {0, 1}}, Vec{0.5, 0.5}, 1e-9));
  // boundary point
  CHECK(conv_contains(pts, Vec{0.5, 0.5}, 1e-9));
  CHECK(!conv_contains(pts, Vec{0.501, 0.5}, 1e-9));
}

TEST_CASE("conv_contains agrees with the separating-direction oracle") {
  SplitMix64 rng(61);
  int inside = 0, outside = 0;
  for (int t = 0; t < 150; ++t) {
    const int npts = int(rng.uniform_int(3, 9));
    std::vector<Vec> pts(size_t(npts), Vec(2));
    for (auto& p : pts) {
      p[0] = rng.uniform(-1, 1);
      p[1] = rng.uniform(-1, 1);
    }
    const Vec target = {rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2)};
    const bool lp_inside = conv_contains(pts, target, 1e-9);
    // The angular oracle has blind spots near the boundary; only targets it
    // can certify either way count.
    const bool clearly_outside = oracle_outside(pts, target, 1e-3);
    const bool clearly_inside = !oracle_outside(pts, target, -1e-3);
    if (clearly_outside) {
      REQUIRE(!lp_inside);
      ++outside;
    } else if (clearly_inside) {
      REQUIRE(lp_inside);
      ++inside;
    }
  }
  // the sample must exercise both sides
  CHECK(inside > 20);
  CHECK(outside > 20);
}

TEST_CASE("extreme_points") {
  SUBCASE("drops interior and midpoints") {
    const auto ext = extreme_points(
        VPolytope{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {0, 0}}});
    CHECK(ext.size() == 4);
    const auto ext2 = extreme_points(VPolytope{{{1, 0}, {0, 1}, {0.5, 0.5}}});
    CHECK(ext2.size() == 2);
  }
  SUBCASE("keeps an already-minimal set") {
    const auto square = VPolytope{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
    CHECK(extreme_points(square).size() == 4);
  }
  SUBCASE("collapses duplicates to one copy") {
    const auto ext = extreme_points(VPolytope{{{1, 0}, {1, 0}, {0, 1}}});
    CHECK(ext.size() == 2);
  }
  SUBCASE("idempotent and order-independent") {
    SplitMix64 rng(62);
    for (int t = 0; t < 20; ++t) {
      std::vector<Vec> pts(size_t(rng.uniform_int(4, 10)), Vec(3));
      for (auto& p : pts)
        for (double& x : p) x = rng.uniform(-1, 1);
      auto ext = extreme_points(VPolytope{pts});
      auto twice = extreme_points(VPolytope{ext});
      REQUIRE(twice.size() == ext.size());

      std::vector<Vec> shuffled = pts;
      for (size_t i = shuffled.size(); i > 1; --i)
        std::swap(shuffled[i - 1],
                  shuffled[size_t(rng.uniform_int(0, i64(i) - 1))]);
      auto ext_perm = extreme_points(VPolytope{shuffled});
      REQUIRE(ext_perm.size() == ext.size());
      for (const auto& p : ext) {
        bool found = false;
        for (const auto& q : ext_perm) found = found || same_point(p, q);
        REQUIRE(found);
      }
    }
  }
}

TEST_CASE("is_boundary on polytopes") {
  const auto cross = DualBody::polytope(cross_polytope_vertices());
  const auto all4 =
      GeneratingSet::finite_points(cross_polytope_vertices(), cross);
  const auto v1 = is_boundary(all4, cross, 0);
  CHECK(v1.is_boundary);
  CHECK(v1.exact);

  const auto three =
      GeneratingSet::finite_points({{1, 0}, {-1, 0}, {0, 1}}, cross);
  const auto v2 = is_boundary(three, cross, 0);
  CHECK(!v2.is_boundary);
  CHECK(v2.exact);
  REQUIRE(v2.witness.has_value());
  CHECK(same_point(*v2.witness, {0, -1}));
  // the witness direction is maximized over K exactly at the missing vertex
  CHECK(support_value(cross, *v2.witness) == 1.0);

  SUBCASE("subset violation") {
    const auto outside = GeneratingSet::finite_points({{2, 0}}, cross);
    CHECK_THROWS_AS(is_boundary(outside, cross, 10), SubsetViolation);
  }
}

TEST_CASE("is_boundary on the disk: finite samples fail inside the cap") {
  const auto disk = DualBody::ball(1.0, 2);
  SphereSampleParams params;
  params.count = 10'000;
  params.seed = 701;
  params.excluded_cap = SphereCap{{0.0, -1.0}, 0.3};
  const auto B = GeneratingSet::sphere_sample(params, disk);
  const auto v = is_boundary(B, disk, 1000);
  CHECK(!v.is_boundary);
  CHECK(!v.exact);
  REQUIRE(v.witness.has_value());
  // worst deficiency sits inside the excluded cap
  const double angle_to_cap =
      std::acos(std::clamp(-(*v.witness)[1], -1.0, 1.0));
  CHECK(angle_to_cap <= 0.3 + 0.05);
  CHECK(v.attained_fraction > 0.9);
  CHECK(v.attained_fraction < 1.0);
}

TEST_CASE("i_generates exact path") {
  const auto cross = DualBody::polytope(cross_polytope_vertices());
  const auto all4 =
      GeneratingSet::finite_points(cross_polytope_vertices(), cross);
  const auto v1 = i_generates(all4, cross, 1e-9);
  CHECK(v1.generates);
  CHECK(v1.exact);

  const auto three =
      GeneratingSet::finite_points({{1, 0}, {-1, 0}, {0, 1}}, cross);
  const auto v2 = i_generates(three, cross, 1e-9);
  CHECK(!v2.generates);
  CHECK(v2.exact);
  REQUIRE(v2.witness.has_value());
  CHECK(same_point(*v2.witness, {0, -1}));
}

TEST_CASE("i_generates on the disk tolerates a removed point") {
  const auto disk = DualBody::ball(1.0, 2);
  SphereSampleParams params;
  params.count = 10'000;
  params.seed = 702;
  params.excluded_cap = SphereCap{{1.0, 0.0}, 0.08};
  const auto B = GeneratingSet::sphere_sample(params, disk);
  const auto v = i_generates(B, disk, 1e-2);
  CHECK(v.generates);
  CHECK(!v.exact);
  CHECK(v.worst_gap < 1e-2);

  // a wide cap takes a visible bite out of the hull
  params.excluded_cap = SphereCap{{1.0, 0.0}, 0.5};
  params.seed = 703;
  const auto wide = GeneratingSet::sphere_sample(params, disk);
  const auto v2 = i_generates(wide, disk, 1e-2);
  CHECK(!v2.generates);
  CHECK(v2.worst_gap > 0.1);
}

TEST_CASE("boundary implies generation on random polytopes") {
  SplitMix64 rng(63);
  for (int t = 0; t < 25; ++t) {
    const int d = int(rng.uniform_int(2, 4));
    std::vector<Vec> pts(size_t(rng.uniform_int(d + 1, 9)), Vec(size_t(d)));
    for (auto& p : pts)
      for (double& x : p) x = rng.uniform(-1, 1);
    const auto body = DualBody::polytope(pts);
    const auto B =
        GeneratingSet::finite_points(extreme_points(body.as_polytope()), body);
    const auto boundary = is_boundary(B, body, 0);
    REQUIRE(boundary.is_boundary);
    REQUIRE(i_generates(B, body, 1e-9).generates);
  }
}

TEST_CASE("sphere sampling is deterministic in the seed") {
  const auto disk = DualBody::ball(2.0, 3);
  SphereSampleParams params;
  params.count = 50;
  params.seed = 9090;
  const auto a = GeneratingSet::sphere_sample(params, disk);
  const auto b = GeneratingSet::sphere_sample(params, disk);
  REQUIRE(a.points().size() == b.points().size());
  for (size_t i = 0; i < a.points().size(); ++i) {
    REQUIRE(a.points()[i] == b.points()[i]);
    CHECK(norm2(a.points()[i]) == doctest::Approx(2.0).epsilon(1e-12));
  }
}
