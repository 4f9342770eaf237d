#include <doctest.h>

#include <cmath>

#include "summa/summability.hpp"

using namespace summa;
using namespace summa::seqcore;
using namespace summa::summability;

namespace {

SequenceSpec alternating01() { return SequenceSpec::periodic({1.0, 0.0}); }

SequenceSpec squares_indicator(double on = 1.0, double off = 0.0) {
  return SequenceSpec::indicator(IntegerSetSpec::squares(), on, off);
}

// brute-force oracles, kept independent of the implementation paths

double brute_transform(const SummabilityMatrix& A, const SequenceSpec& s,
                       i64 n, i64 kmax) {
  double sum = 0.0;
  for (i64 k = 1; k <= kmax; ++k) sum += A.entry(n, k) * value_at(s, k);
  return sum;
}

double brute_pre_cauchy_mean(const SequenceSpec& s, i64 n) {
  double sum = 0.0;
  for (i64 i = 1; i <= n; ++i)
    for (i64 j = 1; j <= n; ++j)
      sum += std::abs(value_at(s, i) - value_at(s, j));
  return sum / (double(n) * double(n));
}

double brute_pre_cauchy_count(const SequenceSpec& s, double eps, i64 n) {
  i64 c = 0;
  for (i64 i = 1; i <= n; ++i)
    for (i64 j = 1; j <= n; ++j)
      if (std::abs(value_at(s, i) - value_at(s, j)) >= eps) ++c;
  return double(c) / (double(n) * double(n));
}

double brute_fa_term(const SummabilityMatrix& A, const SequenceSpec& s,
                     double x, i64 n, i64 max_shift) {
  double sup = 0.0;
  for (i64 l = 0; l <= max_shift; ++l) {
    double sum = 0.0;
    for (i64 k = 1; k <= n; ++k) sum += A.entry(n, k) * value_at(s, k + l);
    sup = std::max(sup, std::abs(sum - x));
  }
  return sup;
}

SequenceSpec random_periodic(SplitMix64& rng, int max_period = 6,
                             int max_pre = 3, double lo = -1, double hi = 1) {
  const i64 m = rng.uniform_int(1, max_period);
  const i64 pre = rng.uniform_int(0, max_pre);
  std::vector<double> preperiod(static_cast<size_t>(pre));
  std::vector<double> period(static_cast<size_t>(m));
  for (double& v : preperiod) v = rng.uniform(lo, hi);
  for (double& v : period) v = rng.uniform(lo, hi);
  return SequenceSpec::periodic(std::move(preperiod), std::move(period));
}

// Bounded corpus mixing all spec variants.
std::vector<SequenceSpec> bounded_corpus(u64 seed, int count) {
  SplitMix64 rng(seed);
  std::vector<SequenceSpec> out;
  while (int(out.size()) < count) {
    const double pick = rng.uniform01();
    if (pick < 0.55) {
      out.push_back(random_periodic(rng));
    } else if (pick < 0.7) {
      // constant-tail convergent spec
      std::vector<double> pre;
      const i64 plen = rng.uniform_int(0, 4);
      for (i64 i = 0; i < plen; ++i) pre.push_back(rng.uniform(-1, 1));
      out.push_back(SequenceSpec::periodic(std::move(pre),
                                           {rng.uniform(-1, 1)}));
    } else if (pick < 0.85) {
      const auto set = rng.uniform01() < 0.5 ? IntegerSetSpec::squares()
                                             : IntegerSetSpec::powers_of_two();
      out.push_back(SequenceSpec::indicator(set, rng.uniform(-1, 1),
                                            rng.uniform(-1, 1)));
    } else {
      out.push_back(SequenceSpec::combo(
          {rng.uniform(-1, 1), rng.uniform(-1, 1)},
          {random_periodic(rng),
           SequenceSpec::indicator(IntegerSetSpec::squares(),
                                   rng.uniform(-1, 1), rng.uniform(-1, 1))}));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("builtin matrices") {
  const auto cesaro = builtin_matrix("cesaro");
  CHECK(cesaro.entry(3, 2) == doctest::Approx(1.0 / 3));
  CHECK(cesaro.entry(2, 3) == 0.0);
  CHECK(cesaro.positive());
  CHECK(cesaro.declared_regular());

  const auto id = builtin_matrix("identity");
  CHECK(id.entry(7, 7) == 1.0);
  CHECK(id.entry(7, 6) == 0.0);

  const double w1[] = {1.0};
  const auto riesz1 = builtin_matrix("riesz", w1);
  for (i64 n : {1, 2, 5, 40})
    for (i64 k = 1; k <= n + 2; ++k)
      CHECK(riesz1.entry(n, k) == doctest::Approx(cesaro.entry(n, k)));

  CHECK_THROWS_AS(builtin_matrix("hilbert"), UnknownName);
  const double bad[] = {1.0, 0.0};
  CHECK_THROWS_AS(builtin_matrix("riesz", bad), std::invalid_argument);
}

TEST_CASE("riesz weights cycle") {
  const double w[] = {1.0, 3.0};
  const auto r = builtin_matrix("riesz", w);
  // W_4 = 1+3+1+3 = 8
  CHECK(r.entry(4, 1) == doctest::Approx(1.0 / 8));
  CHECK(r.entry(4, 2) == doctest::Approx(3.0 / 8));
  CHECK(r.entry(4, 5) == 0.0);
}

TEST_CASE("transform") {
  const auto cesaro = builtin_matrix("cesaro");
  CHECK(transform(cesaro, alternating01(), 4) == doctest::Approx(0.5));
  CHECK(transform(cesaro, alternating01(), 5) == doctest::Approx(3.0 / 5));
  CHECK(transform(cesaro, squares_indicator(), 100) == doctest::Approx(0.1));

  SUBCASE("matches the brute-force row sum") {
    SplitMix64 rng(5);
    for (int t = 0; t < 10; ++t) {
      const auto s = random_periodic(rng);
      for (i64 n : {1, 3, 17, 64})
        CHECK(transform(cesaro, s, n) ==
              doctest::Approx(brute_transform(cesaro, s, n, n)).epsilon(1e-12));
    }
  }
}

TEST_CASE("transform with tail-bounded rows") {
  // a_nk = 2^-k with tail(K) = 2^-K
  const auto geo = SummabilityMatrix::tail_bounded(
      "geometric",
      [](i64, i64 k) { return std::pow(2.0, -double(k)); },
      [](i64, i64 K) { return std::pow(2.0, -double(K)); },
      /*declared_regular=*/false, /*positive=*/true);
  const double v = transform(geo, SequenceSpec::constant(1.0), 1);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-9));

  const auto no_meta = SummabilityMatrix::tail_bounded(
      "bad", [](i64, i64) { return 0.1; }, [](i64, i64) { return 1.0; }, false,
      true);
  CHECK_THROWS_AS(transform(no_meta, SequenceSpec::constant(1.0), 1),
                  TailNotBounded);
}

TEST_CASE("toeplitz falsifier") {
  const double w[] = {2.0, 1.0};
  CHECK(toeplitz_falsify(builtin_matrix("cesaro"), 10'000, 1e-3)
            .all_consistent());
  CHECK(toeplitz_falsify(builtin_matrix("riesz", w), 10'000, 1e-3)
            .all_consistent());
  CHECK(toeplitz_falsify(builtin_matrix("identity"), 10'000, 1e-3)
            .all_consistent());

  const auto bad_sum = doctored_matrix("row_sum_2");
  const auto r1 = toeplitz_falsify(bad_sum, 100, 1e-3);
  CHECK(!r1.row_sums_to_one.consistent);
  CHECK(r1.row_sums_to_one.value == doctest::Approx(2.0));

  const auto sticky = doctored_matrix("sticky_column");
  const auto r2 = toeplitz_falsify(sticky, 100, 1e-3);
  CHECK(!r2.columns_to_zero.consistent);
  CHECK(r2.columns_to_zero.witness == 1);

  // declared-regular matrices must not survive refutation
  const auto liar = SummabilityMatrix::row_finite(
      "liar", [](i64 n, i64 k) { return k <= n ? 2.0 / double(n) : 0.0; },
      [](i64 n) { return std::pair<i64, i64>{1, n}; },
      /*declared_regular=*/true, /*positive=*/true);
  CHECK_THROWS_AS(toeplitz_falsify(liar, 100, 1e-3),
                  DeclaredRegularContradiction);
}

TEST_CASE("strong_term") {
  const auto cesaro = builtin_matrix("cesaro");
  for (i64 n : {1, 2, 7, 100})
    CHECK(strong_term(cesaro, alternating01(), 0.5, 2.0, n) ==
          doctest::Approx(0.25).epsilon(1e-12));
  for (double p : {0.5, 1.0, 3.0})
    CHECK(strong_term(cesaro, SequenceSpec::constant(2.0), 2.0, p, 50) == 0.0);
  CHECK(strong_term(cesaro, squares_indicator(), 0.0, 3.0, 100) ==
        doctest::Approx(0.1));

  const auto signed_matrix = SummabilityMatrix::row_finite(
      "signed", [](i64 n, i64 k) { return k <= n ? -1.0 / double(n) : 0.0; },
      [](i64 n) { return std::pair<i64, i64>{1, n}; }, false, false);
  CHECK_THROWS_AS(strong_term(signed_matrix, alternating01(), 0.0, 1.0, 3),
                  MatrixNotPositive);
}

TEST_CASE("strong_term_maddox") {
  const auto cesaro = builtin_matrix("cesaro");
  const auto pexp = SequenceSpec::periodic({1.0, 2.0});
  // s_1=1 -> |1|^1, s_2=0, s_3=1 -> |1|^1, s_4=0; mean over 4 rows
  CHECK(strong_term_maddox(cesaro, alternating01(), 0.0, pexp, 4) ==
        doctest::Approx(0.5));
  CHECK(strong_term_maddox(cesaro, SequenceSpec::constant(1.5), 1.5, pexp, 9) ==
        0.0);

  SUBCASE("constant exponents collapse to strong_term") {
    SplitMix64 rng(11);
    for (int t = 0; t < 15; ++t) {
      const auto s = random_periodic(rng);
      const double p = rng.uniform(0.5, 3.0);
      const double x = rng.uniform(-1, 1);
      const auto const_exp = SequenceSpec::constant(p);
      for (i64 n : {2, 9, 33})
        CHECK(strong_term_maddox(cesaro, s, x, const_exp, n) ==
              doctest::Approx(strong_term(cesaro, s, x, p, n)).epsilon(1e-12));
    }
  }

  CHECK_THROWS_AS(strong_term_maddox(cesaro, alternating01(), 0.0,
                                     SequenceSpec::periodic({1.0, -1.0}), 3),
                  ExponentNotPositive);
}

TEST_CASE("a_statistical_term") {
  const auto cesaro = builtin_matrix("cesaro");
  CHECK(a_statistical_term(cesaro, alternating01(), 0.5, 0.4, 10) ==
        doctest::Approx(1.0));
  CHECK(a_statistical_term(cesaro, squares_indicator(), 0.0, 0.5, 100) ==
        doctest::Approx(0.1));
  CHECK(a_statistical_term(cesaro, SequenceSpec::constant(7.0), 7.0, 0.1, 42) ==
        0.0);

  SUBCASE("nonnegative and nonincreasing in eps") {
    SplitMix64 rng(17);
    for (int t = 0; t < 10; ++t) {
      const auto s = random_periodic(rng);
      const double x = rng.uniform(-1, 1);
      for (i64 n : {3, 10, 57}) {
        double prev = 2.0;
        for (double eps : {0.05, 0.1, 0.4, 0.9, 1.7}) {
          const double v = a_statistical_term(cesaro, s, x, eps, n);
          REQUIRE(v >= 0.0);
          REQUIRE(v <= prev + 1e-12);
          prev = v;
        }
      }
    }
  }
}

TEST_CASE("classify_statistical") {
  const auto cesaro = builtin_matrix("cesaro");
  const auto v1 = classify_statistical(cesaro, squares_indicator());
  CHECK(v1.converges());
  CHECK(v1.limit == 0.0);
  CHECK(v1.exact);

  const auto v2 = classify_statistical(cesaro, alternating01());
  CHECK(v2.diverges());
  CHECK(v2.exact);

  const auto v3 = classify_statistical(cesaro, SequenceSpec::constant(2.5));
  CHECK(v3.converges());
  CHECK(v3.limit == 2.5);
  CHECK(v3.exact);
}

TEST_CASE("pre-Cauchy terms match the brute-force oracle") {
  CHECK(pre_cauchy_mean_term(alternating01(), 4) == doctest::Approx(0.5));
  CHECK(pre_cauchy_count_term(alternating01(), 0.5, 4) == doctest::Approx(0.5));
  for (i64 n : {1, 5, 12})
    CHECK(pre_cauchy_mean_term(SequenceSpec::constant(3.0), n) == 0.0);

  SplitMix64 rng(23);
  for (int t = 0; t < 12; ++t) {
    const auto s = t % 3 == 0 ? squares_indicator(rng.uniform(-1, 1),
                                                  rng.uniform(-1, 1))
                              : random_periodic(rng);
    for (i64 n : {1, 2, 9, 40}) {
      CHECK(pre_cauchy_mean_term(s, n) ==
            doctest::Approx(brute_pre_cauchy_mean(s, n)).epsilon(1e-11));
      for (double eps : {0.1, 0.6})
        CHECK(pre_cauchy_count_term(s, eps, n) ==
              doctest::Approx(brute_pre_cauchy_count(s, eps, n))
                  .epsilon(1e-12));
    }
  }
}

TEST_CASE("classify_pre_cauchy") {
  const auto v1 = classify_pre_cauchy(alternating01());
  CHECK(v1.diverges());
  CHECK(v1.exact);
  CHECK(pre_cauchy_mean_limit_exact(alternating01()) == doctest::Approx(0.5));

  CHECK(classify_pre_cauchy(SequenceSpec::constant(9.0)).converges());

  const auto v2 =
      classify_pre_cauchy(SequenceSpec::periodic({0.0}, {3.0, 3.0, 3.0}));
  CHECK(v2.converges());
  CHECK(v2.exact);

  // density-0 indicator is pre-Cauchy
  CHECK(classify_pre_cauchy(squares_indicator()).converges());
}

TEST_CASE("fa_term") {
  const auto cesaro = builtin_matrix("cesaro");
  CHECK(fa_term(cesaro, alternating01(), 0.5, 2) == doctest::Approx(0.0));
  CHECK(fa_term(cesaro, alternating01(), 0.5, 3) ==
        doctest::Approx(1.0 / 6).epsilon(1e-12));
  CHECK(fa_term(cesaro, SequenceSpec::constant(2.0), 2.0, 9) ==
        doctest::Approx(0.0).epsilon(1e-12));

  SUBCASE("exhaustive shifts match a deep explicit sweep") {
    SplitMix64 rng(31);
    for (int t = 0; t < 10; ++t) {
      const auto s = random_periodic(rng);
      for (i64 n : {2, 5, 11})
        CHECK(fa_term(cesaro, s, 0.25, n) ==
              doctest::Approx(brute_fa_term(cesaro, s, 0.25, n, 60))
                  .epsilon(1e-12));
    }
  }

  CHECK_THROWS_AS(fa_term(cesaro, squares_indicator(), 0.0, 5),
                  ExhaustiveRequiresPeriodic);
  // explicit shifts still evaluate for non-periodic data (numeric label)
  const double v = fa_term(cesaro, squares_indicator(), 0.0, 100,
                           ShiftPolicy::explicit_set({0, 7}));
  CHECK(v >= 0.0);
}

TEST_CASE("classify_almost") {
  const auto v1 = classify_almost(alternating01());
  CHECK(v1.converges());
  CHECK(v1.limit == 0.5);
  CHECK(v1.exact);

  const auto v2 = classify_almost(squares_indicator());
  CHECK(v2.converges());
  CHECK(v2.limit == 0.0);
  CHECK(v2.exact);

  const auto v3 = classify_almost(SequenceSpec::constant(-4.0));
  CHECK(v3.converges());
  CHECK(v3.limit == -4.0);
}

TEST_CASE("connor crosscheck") {
  const auto cesaro = builtin_matrix("cesaro");
  const auto r1 = connor_crosscheck(squares_indicator(), cesaro, 2.0, 10'000);
  CHECK(r1.statistical.converges());
  CHECK(r1.strong.converges());
  CHECK(r1.limits_agree);

  const auto r2 = connor_crosscheck(alternating01(), cesaro, 1.0, 10'000);
  CHECK(r2.statistical.diverges());
  CHECK(r2.strong.diverges());
  CHECK(r2.limits_agree);

  const auto r3 = connor_crosscheck(SequenceSpec::constant(1.0), cesaro, 0.5,
                                    10'000);
  CHECK(r3.statistical.converges());
  CHECK(r3.strong.converges());
  CHECK(r3.limits_agree);
}

// ---- module-level properties over the randomized corpus ----

TEST_CASE("regularity consistency: builtins preserve limits of convergent specs") {
  SplitMix64 rng(77);
  const double w[] = {1.0, 2.0, 0.5};
  const std::vector<SummabilityMatrix> matrices = {
      builtin_matrix("cesaro"), builtin_matrix("identity"),
      builtin_matrix("riesz", w)};
  for (int t = 0; t < 12; ++t) {
    // convergent = constant tail
    std::vector<double> pre;
    const i64 plen = rng.uniform_int(0, 4);
    for (i64 i = 0; i < plen; ++i) pre.push_back(rng.uniform(-1, 1));
    const double limit = rng.uniform(-1, 1);
    const auto s = SequenceSpec::periodic(std::move(pre), {limit});
    for (const auto& A : matrices) {
      // The transform error at depth n is (preperiod mass)/n for these
      // families; the 2n/n extrapolation cancels it and pins the limit.
      const i64 n = 10'000;
      const double extrapolated =
          2.0 * transform(A, s, 2 * n) - transform(A, s, n);
      CHECK(extrapolated == doctest::Approx(limit).epsilon(1e-6));
    }
  }
}

TEST_CASE("strong-p, strong-q and statistical verdicts agree on the corpus") {
  const auto cesaro = builtin_matrix("cesaro");
  ClassifyOptions opt;
  opt.depth = 20'000;
  const auto corpus = bounded_corpus(2025, 60);
  for (const auto& s : corpus) {
    const auto stat = classify_statistical(cesaro, s, opt);
    std::vector<ConvergenceVerdict> strongs;
    for (double p : {0.5, 1.0, 2.0, 3.0})
      strongs.push_back(classify_strong(cesaro, s, p, opt));
    for (const auto& st : strongs) {
      // implications never witnessed in either direction
      REQUIRE(!(st.converges() && stat.diverges()));
      REQUIRE(!(stat.converges() && st.diverges()));
      if (st.converges() && stat.converges())
        REQUIRE(std::abs(st.limit - stat.limit) <= 1e-3);
    }
    for (size_t i = 1; i < strongs.size(); ++i) {
      REQUIRE(strongs[i].converges() == strongs[0].converges());
      REQUIRE(strongs[i].diverges() == strongs[0].diverges());
    }
  }
}

TEST_CASE("statistically convergent implies statistically pre-Cauchy") {
  const auto cesaro = builtin_matrix("cesaro");
  ClassifyOptions opt;
  opt.depth = 20'000;
  for (const auto& s : bounded_corpus(31337, 60)) {
    const auto stat = classify_statistical(cesaro, s, opt);
    if (stat.converges() && stat.exact) {
      const auto pc = classify_pre_cauchy(s, opt);
      REQUIRE(pc.converges());
    }
  }
}

TEST_CASE("mean term and count term vanish together") {
  for (const auto& s : bounded_corpus(404, 40)) {
    const i64 n = 4000;
    const double mean = pre_cauchy_mean_term(s, n);
    for (double eps : {0.1, 0.5}) {
      const double count = pre_cauchy_count_term(s, eps, n);
      // count <= mean/eps (Markov) and mean <= eps + 2*bound*count
      REQUIRE(count <= mean / eps + 1e-9);
      const double bound = sup_bound(s);
      REQUIRE(mean <= eps + 2.0 * bound * count + 1e-9);
    }
  }
}

TEST_CASE("convergent implies almost convergent to the same limit") {
  SplitMix64 rng(555);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> pre;
    const i64 plen = rng.uniform_int(0, 4);
    for (i64 i = 0; i < plen; ++i) pre.push_back(rng.uniform(-1, 1));
    const double limit = rng.uniform(-1, 1);
    const auto s = SequenceSpec::periodic(std::move(pre), {limit});
    const auto almost = classify_almost(s);
    REQUIRE(almost.converges());
    REQUIRE(almost.limit == doctest::Approx(limit));
  }
}
