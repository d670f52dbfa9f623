#include <array>
#include <cmath>

#include "cab/reservoir.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cab;
using test::make_spec;

TEST_CASE("derived gaps") {
  const Gaps g1 = derived_gaps(make_spec({0.6, 0.4}, {0.5, 0.5}));
  CHECK(g1.delta_bar == doctest::Approx(0.2));
  CHECK(g1.delta_underbar == doctest::Approx(0.2));
  CHECK(g1.delta_min == doctest::Approx(0.2));

  const Gaps g2 = derived_gaps(make_spec({0.9, 0.5, 0.1}, {1.0 / 3, 1.0 / 3, 1.0 / 3}));
  CHECK(g2.delta_bar == doctest::Approx(0.8));
  CHECK(g2.delta_underbar == doctest::Approx(0.4));
  CHECK(g2.delta_min == doctest::Approx(0.4));

  const Gaps g3 = derived_gaps(make_spec({1.0, 0.0}, {0.5, 0.5}));
  CHECK(g3.delta_bar == doctest::Approx(1.0));
  CHECK(g3.delta_underbar == doctest::Approx(1.0));
  CHECK(g3.delta_min == doctest::Approx(1.0));
}

TEST_CASE("spec validation rejects malformed inputs") {
  CHECK_THROWS_AS(make_spec({0.4, 0.6}, {0.5, 0.5}).validate(), DomainError);
  CHECK_THROWS_AS(make_spec({0.6, 0.6}, {0.5, 0.5}).validate(), DomainError);
  CHECK_THROWS_AS(make_spec({0.6}, {1.0}).validate(), DomainError);  // K=1
  CHECK_THROWS_AS(make_spec({0.6, 0.4}, {0.6, 0.5}).validate(), DomainError);
  CHECK_THROWS_AS(make_spec({0.6, 0.4}, {1.0, 0.0}).validate(), DomainError);
  CHECK_THROWS_AS(make_spec({1.2, 0.4}, {0.5, 0.5}).validate(), DomainError);
  // Uniform support must stay inside [0,1].
  CHECK_THROWS_AS(
      make_spec({0.95, 0.4}, {0.5, 0.5}, RewardFamily::UniformAround, 0.1)
          .validate(),
      DomainError);
  CHECK_NOTHROW(
      make_spec({0.5, 0.4}, {0.5, 0.5}, RewardFamily::UniformAround, 0.1)
          .validate());
}

TEST_CASE("near-degenerate reservoir returns the dominant type") {
  Reservoir res(make_spec({0.6, 0.4}, {1.0 - 1e-12, 1e-12}));
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const ArmState arm = res.query_arm(rng);
    CHECK(res.type_of(arm) == 0);
    CHECK(arm.arm_id() == i);
    CHECK(arm.pulls() == 0);
  }
}

TEST_CASE("query frequencies match alpha (CLT band)") {
  Reservoir res(test::setup1());
  Rng rng(2024);
  const long n = 1000000;
  long type1 = 0;
  for (long i = 0; i < n; ++i)
    if (res.type_of(res.query_arm(rng)) == 0) ++type1;
  const double freq = static_cast<double>(type1) / static_cast<double>(n);
  CHECK(freq == doctest::Approx(0.5).epsilon(0.004));  // 0.5 +/- 0.002
}

TEST_CASE("query frequencies pass a chi-square test, 3 cells") {
  Reservoir res(test::setup2());
  Rng rng(99);
  const long n = 1000000;
  std::array<long, 3> counts{0, 0, 0};
  for (long i = 0; i < n; ++i)
    counts[static_cast<std::size_t>(res.type_of(res.query_arm(rng)))] += 1;
  const double expected = static_cast<double>(n) / 3.0;
  double chi2 = 0.0;
  for (long c : counts) {
    const double d = static_cast<double>(c) - expected;
    chi2 += d * d / expected;
  }
  CHECK(chi2 < 13.8155);  // p ~ 0.001 at 2 dof
}

TEST_CASE("point-mass pulls are constant") {
  Reservoir res(make_spec({0.7, 0.3}, {1.0 - 1e-12, 1e-12}, RewardFamily::PointMass));
  Rng type_rng(1), reward_rng(2);
  ArmState arm = res.query_arm(type_rng);
  for (int i = 0; i < 100; ++i) CHECK(res.pull_arm(arm, reward_rng) == 0.7);
  CHECK(arm.pulls() == 100);
  CHECK(arm.reward_sum() == doctest::Approx(70.0));
}

TEST_CASE("bernoulli sample mean within the 3-sigma band") {
  Reservoir res(make_spec({0.6, 0.4}, {1.0 - 1e-12, 1e-12}));
  Rng type_rng(3), reward_rng(4);
  ArmState arm = res.query_arm(type_rng);
  REQUIRE(res.type_of(arm) == 0);
  const long n = 100000;
  double sum = 0.0;
  for (long i = 0; i < n; ++i) sum += res.pull_arm(arm, reward_rng);
  // 3 sigma = 3 sqrt(0.24 / 1e5) ~ 0.00465
  CHECK(sum / static_cast<double>(n) == doctest::Approx(0.6).epsilon(0.0078));
}

TEST_CASE("uniform rewards stay inside the stated support") {
  Reservoir res(make_spec({0.5, 0.3}, {1.0 - 1e-12, 1e-12},
                          RewardFamily::UniformAround, 0.1),
                true);
  Rng type_rng(5), reward_rng(6);
  ArmState arm = res.query_arm(type_rng);
  for (int i = 0; i < 20000; ++i) {
    const double r = res.pull_arm(arm, reward_rng);
    CHECK(r >= 0.4);
    CHECK(r <= 0.6);
  }
  CHECK(arm.reward_log().size() == 20000);
}

TEST_CASE("reward log length tracks pulls and stays in [0,1]") {
  Reservoir res(test::setup1(), true);
  Rng type_rng(8), reward_rng(9);
  ArmState arm = res.query_arm(type_rng);
  for (int i = 0; i < 500; ++i) res.pull_arm(arm, reward_rng);
  CHECK(static_cast<long>(arm.reward_log().size()) == arm.pulls());
  for (double r : arm.reward_log()) {
    CHECK(r >= 0.0);
    CHECK(r <= 1.0);
  }
}

TEST_CASE("regret increment is the type gap") {
  const ReservoirSpec s1 = test::setup1();
  Reservoir r1(s1);
  Rng rng(11);
  const Gaps gaps = derived_gaps(s1);
  bool saw_optimal = false, saw_inferior = false;
  for (int i = 0; i < 200; ++i) {
    const ArmState arm = r1.query_arm(rng);
    const double inc = r1.regret_increment(arm);
    CHECK(inc >= 0.0);
    CHECK(inc <= gaps.delta_bar);
    if (r1.type_of(arm) == 0) {
      CHECK(inc == 0.0);
      saw_optimal = true;
    } else {
      CHECK(inc == doctest::Approx(0.2));
      saw_inferior = true;
    }
  }
  CHECK(saw_optimal);
  CHECK(saw_inferior);

  Reservoir r2(make_spec({0.9, 0.5, 0.1}, {1e-12, 1e-12, 1.0 - 2e-12}));
  const ArmState worst = r2.query_arm(rng);
  REQUIRE(r2.type_of(worst) == 2);
  CHECK(r2.regret_increment(worst) == doctest::Approx(0.8));
}

TEST_CASE("bernoulli pull stream has no lag-1 autocorrelation") {
  Reservoir res(make_spec({0.6, 0.4}, {1.0 - 1e-12, 1e-12}));
  Rng type_rng(13), reward_rng(14);
  ArmState arm = res.query_arm(type_rng);
  const long n = 100000;
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i)
    xs[static_cast<std::size_t>(i)] = res.pull_arm(arm, reward_rng);
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(n);
  double num = 0.0, den = 0.0;
  for (long i = 0; i < n; ++i) {
    const double d = xs[static_cast<std::size_t>(i)] - mean;
    den += d * d;
    if (i + 1 < n) num += d * (xs[static_cast<std::size_t>(i + 1)] - mean);
  }
  CHECK(std::abs(num / den) < 3.0 / std::sqrt(static_cast<double>(n)));
}
