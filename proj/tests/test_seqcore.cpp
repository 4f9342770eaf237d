#include <doctest.h>

#include <cmath>

#include "summa/seqcore.hpp"
#include "summa/serialize.hpp"

using namespace summa;
using namespace summa::seqcore;

namespace {

SequenceSpec alternating01() { return SequenceSpec::periodic({1.0, 0.0}); }

SequenceSpec random_periodic(SplitMix64& rng, int max_period = 6,
                             int max_pre = 3) {
  const i64 m = rng.uniform_int(1, max_period);
  const i64 pre = rng.uniform_int(0, max_pre);
  std::vector<double> preperiod(static_cast<size_t>(pre));
      std::vector<double> period(static_cast<size_t>(m));
  for (double& v : preperiod) v = rng.uniform(-2.0, 2.0);
  for (double& v : period) v = rng.uniform(-2.0, 2.0);
  return SequenceSpec::periodic(std::move(preperiod), std::move(period));
}

}  // namespace

TEST_CASE("value_at reads each variant") {
  CHECK(value_at(alternating01(), 3) == 1.0);
  CHECK(value_at(SequenceSpec::indicator(IntegerSetSpec::squares(), 1, 0), 9) ==
        1.0);
  const auto combo = SequenceSpec::combo(
      {2.0, -1.0}, {SequenceSpec::constant(1.0), SequenceSpec::constant(1.0)});
  CHECK(value_at(combo, 5) == 1.0);

  // eventually periodic phase: preperiod first, then the period block
  const auto s = SequenceSpec::periodic({5.0}, {-1.0, 2.0});
  CHECK(value_at(s, 1) == 5.0);
  CHECK(value_at(s, 2) == -1.0);
  CHECK(value_at(s, 3) == 2.0);
  CHECK(value_at(s, 4) == -1.0);
}

TEST_CASE("integer sets: builtin closed forms match brute force") {
  for (const auto& set :
       {IntegerSetSpec::squares(), IntegerSetSpec::powers_of_two()}) {
    i64 brute = 0;
    for (i64 n = 1; n <= 2000; ++n) {
      brute += set.member(n) ? 1 : 0;
      CHECK(set.count(n) == brute);
      CHECK(set.count(n) - set.count(n - 1) == (set.member(n) ? 1 : 0));
      REQUIRE(set.maxcount(n).has_value());
      CHECK(*set.maxcount(n) >= set.count(n));
    }
    CHECK(set.density() == 0.0);
  }
}

TEST_CASE("squares window bound dominates every window") {
  const auto set = IntegerSetSpec::squares();
  for (i64 n : {5, 17, 100}) {
    const i64 bound = *set.maxcount(n);
    for (i64 l = 0; l <= 3000; ++l) {
      i64 c = 0;
      for (i64 k = l + 1; k <= l + n; ++k) c += set.member(k) ? 1 : 0;
      REQUIRE(c <= bound);
    }
  }
}

TEST_CASE("limsup_exact on periodic structure") {
  CHECK(limsup_exact(alternating01()) == 1.0);
  CHECK(limsup_exact(SequenceSpec::periodic({5.0}, {-1.0})) == -1.0);
  CHECK(limsup_exact(SequenceSpec::periodic({0.3, 0.7, 0.5})) == 0.7);
  CHECK_THROWS_AS(
      limsup_exact(SequenceSpec::indicator(IntegerSetSpec::squares(), 1, 0)),
      NotExactlyComputable);
}

TEST_CASE("limsup equals the deep window max") {
  SplitMix64 rng(41);
  for (int t = 0; t < 50; ++t) {
    const auto s = random_periodic(rng);
    const auto& ep = std::get<EventuallyPeriodic>(s.node);
    const i64 pre = i64(ep.preperiod.size());
    const i64 n_deep = pre + 10 * i64(ep.period.size()) + 7;
    double window_max = value_at(s, pre + 1);
    for (i64 k = pre + 1; k <= n_deep; ++k)
      window_max = std::max(window_max, value_at(s, k));
    CHECK(limsup_exact(s) == doctest::Approx(window_max).epsilon(1e-12));
  }
}

TEST_CASE("period_mean") {
  CHECK(period_mean(alternating01()) == 0.5);
  CHECK(period_mean(SequenceSpec::constant(3.25)) == 3.25);
  CHECK(period_mean(SequenceSpec::periodic({1, 2, 3, 6})) == 3.0);
}

TEST_CASE("reduce_combo closed forms") {
  // complementary alternation sums to the constant 1
  const auto a = SequenceSpec::periodic({1, 0});
  const auto b = SequenceSpec::periodic({0, 1});
  const auto sum = reduce_combo(LinearCombo{{1, 1}, {a, b}});
  const auto& ep = std::get<EventuallyPeriodic>(sum.node);
  CHECK(ep.period == std::vector<double>{1.0, 1.0});

  const auto scaled = reduce_combo(LinearCombo{{2}, {a}});
  CHECK(std::get<EventuallyPeriodic>(scaled.node).period ==
        std::vector<double>{2.0, 0.0});

  // lcm(2,3) = 6; frozen from pointwise evaluation of the two addends
  const auto c = SequenceSpec::periodic({1, 0, 0});
  const auto mixed = reduce_combo(LinearCombo{{1, 1}, {a, c}});
  const auto& mep = std::get<EventuallyPeriodic>(mixed.node);
  REQUIRE(mep.period.size() == 6);
  CHECK(mep.period == std::vector<double>{2, 0, 1, 1, 1, 0});

  CHECK_THROWS_AS(
      reduce_combo(LinearCombo{
          {1.0},
          {SequenceSpec::indicator(IntegerSetSpec::squares(), 1, 0)}}),
      NotClosed);
}

TEST_CASE("reduce_combo agrees with direct evaluation pointwise") {
  SplitMix64 rng(1234);
  for (int t = 0; t < 40; ++t) {
    const int parts = int(rng.uniform_int(1, 4));
    std::vector<double> coeffs;
    std::vector<SequenceSpec> specs;
    for (int i = 0; i < parts; ++i) {
      coeffs.push_back(rng.uniform(-3.0, 3.0));
      specs.push_back(random_periodic(rng));
    }
    const LinearCombo combo{coeffs, specs};
    SequenceSpec direct;
    direct.node = combo;
    const auto reduced = reduce_combo(combo);
    for (i64 k = 1; k <= 1000; ++k)
      REQUIRE(value_at(reduced, k) ==
              doctest::Approx(value_at(direct, k)).epsilon(1e-12));
  }
}

TEST_CASE("sup_bound dominates sampled values") {
  SplitMix64 rng(99);
  std::vector<SequenceSpec> corpus;
  for (int t = 0; t < 10; ++t) corpus.push_back(random_periodic(rng));
  corpus.push_back(SequenceSpec::indicator(IntegerSetSpec::squares(), 2.5, -1));
  corpus.push_back(SequenceSpec::combo(
      {0.5, -2.0}, {corpus[0], SequenceSpec::indicator(
                                   IntegerSetSpec::powers_of_two(), 1, 0)}));
  for (const auto& s : corpus) {
    const double b = sup_bound(s);
    for (i64 k = 1; k <= 100'000; k = k < 128 ? k + 1 : k * 2 + 1)
      REQUIRE(std::abs(value_at(s, k)) <= b + 1e-12);
  }
}

TEST_CASE("apply_functional") {
  const VectorSequence xs({SequenceSpec::periodic({-1, 1}),
                           SequenceSpec::constant(1.0)});
  SUBCASE("projection onto the first coordinate") {
    const double e1[] = {1.0, 0.0};
    const auto s = apply_functional(e1, xs);
    const auto& ep = std::get<EventuallyPeriodic>(s.node);
    CHECK(ep.period == std::vector<double>{-1.0, 1.0});
  }
  SUBCASE("zero functional") {
    const double z[] = {0.0, 0.0};
    const auto s = apply_functional(z, xs);
    for (i64 k = 1; k <= 10; ++k) CHECK(value_at(s, k) == 0.0);
  }
  SUBCASE("sum of coordinates") {
    const double ones[] = {1.0, 1.0};
    const auto s = apply_functional(ones, xs);
    const auto& ep = std::get<EventuallyPeriodic>(s.node);
    CHECK(ep.period == std::vector<double>{0.0, 2.0});
  }
  SUBCASE("dimension mismatch") {
    const double bad[] = {1.0, 2.0, 3.0};
    CHECK_THROWS_AS(apply_functional(bad, xs), DimensionMismatch);
  }
}

TEST_CASE("apply_functional is linear in the functional") {
  SplitMix64 rng(7);
  const VectorSequence xs(
      {random_periodic(rng), random_periodic(rng), random_periodic(rng)});
  for (int t = 0; t < 20; ++t) {
    std::vector<double> u(3), v(3), w(3);
    const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
    for (int i = 0; i < 3; ++i) {
      u[i] = rng.uniform(-1, 1);
      v[i] = rng.uniform(-1, 1);
      w[i] = a * u[i] + b * v[i];
    }
    const auto su = apply_functional(u, xs);
    const auto sv = apply_functional(v, xs);
    const auto sw = apply_functional(w, xs);
    for (i64 k = 1; k <= 60; ++k)
      REQUIRE(value_at(sw, k) ==
              doctest::Approx(a * value_at(su, k) + b * value_at(sv, k))
                  .epsilon(1e-10));
  }
}

TEST_CASE("vector sequence invariants") {
  CHECK_THROWS_AS(VectorSequence({}), std::invalid_argument);
  const VectorSequence xs({SequenceSpec::periodic({-3, 1}),
                           SequenceSpec::constant(0.5)});
  CHECK(xs.dimension() == 2);
  CHECK(xs.bound() == 3.0);
  CHECK(xs.exact());
  const VectorSequence with_indicator(
      {SequenceSpec::indicator(IntegerSetSpec::squares(), 1, 0)});
  CHECK(!with_indicator.exact());
}

TEST_CASE("json round trip is bit-exact") {
  SplitMix64 rng(2024);
  std::vector<SequenceSpec> corpus;
  for (int t = 0; t < 20; ++t) corpus.push_back(random_periodic(rng));
  corpus.push_back(SequenceSpec::indicator(IntegerSetSpec::powers_of_two(),
                                           rng.uniform(-1, 1),
                                           rng.uniform(-1, 1)));
  corpus.push_back(SequenceSpec::combo(
      {rng.uniform(-1, 1), rng.uniform(-1, 1)}, {corpus[0], corpus[1]}));

  for (const auto& s : corpus) {
    const auto j = io::to_json(s);
    const auto back = io::sequence_from_json(j);
    CHECK(io::to_json(back).dump() == j.dump());
    for (i64 k = 1; k <= 200; ++k) {
      // bitwise equality, not approximate
      REQUIRE(value_at(back, k) == value_at(s, k));
    }
  }
}
