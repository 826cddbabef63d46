#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "samplan/criteria.hpp"
#include "samplan/dist.hpp"

using namespace samplan;

TEST_SUITE("criteria") {

TEST_CASE("criterion validation") {
  const auto mid = TwoPointCriterion::mid();
  CHECK(mid.aql_quality() == 0.01);
  CHECK(mid.aql_bound() == 0.95);
  CHECK(mid.lq_quality() == 0.07);
  CHECK(mid.lq_bound() == 0.05);
  CHECK(mid.is_mid_default());
  CHECK_THROWS_AS(TwoPointCriterion(0.07, 0.95, 0.01, 0.05), DomainError);
  CHECK_THROWS_AS(TwoPointCriterion(0.01, 0.05, 0.07, 0.95), DomainError);
  CHECK_THROWS_AS(TwoPointCriterion(0.0, 0.95, 0.07, 0.05), DomainError);
  CHECK_THROWS_AS(TwoPointCriterion(0.01, 1.0, 0.07, 0.05), DomainError);
  CHECK(!TwoPointCriterion(0.01, 0.95, 0.5, 0.05).is_mid_default());
}

TEST_CASE("quality level grid") {
  const QualityLevelGrid grid(100);
  CHECK(grid.contains(0.07));
  CHECK(grid.contains(0.0));
  CHECK(grid.contains(1.0));
  CHECK(!grid.contains(0.075));
  CHECK(grid.ceil_level(0.07) == 7);
  CHECK(grid.ceil_level(0.071) == 8);
  CHECK(QualityLevelGrid(14).ceil_level(0.07) == 1);
  CHECK(QualityLevelGrid(43).ceil_level(0.01) == 1);
}

TEST_CASE("binomial admissibility") {
  const auto v = admissible_binomial(SamplingPlan(88, 2));
  CHECK(v.admissible);
  CHECK(v.oc_at_a < 0.95);
  CHECK(v.oc_at_b < 0.05);
  CHECK(v.binding_point == BindingPoint::Lq);
  CHECK(v.margin_a == 0.95 - v.oc_at_a);
  CHECK(!admissible_binomial(SamplingPlan(88, 3)).admissible);
  const auto one = admissible_binomial(SamplingPlan(1, 0));
  CHECK(!one.admissible);
  CHECK(one.oc_at_b == doctest::Approx(0.93));
  CHECK(one.oc_at_a == doctest::Approx(0.99));
  CHECK(one.binding_point == BindingPoint::Both);
  // For c = 3 the AQL side is the one that fails just below the minimum.
  const auto below = admissible_binomial(SamplingPlan(137, 3));
  CHECK(!below.admissible);
  CHECK(below.binding_point == BindingPoint::Aql);
  CHECK(below.oc_at_b < 0.05);
}

TEST_CASE("strict inequality at the bound") {
  const auto crit = TwoPointCriterion::mid();
  CHECK(!judge(0.95, 0.01, crit).admissible);
  CHECK(!judge(0.5, 0.05, crit).admissible);
  CHECK(judge(std::nextafter(0.95, 0.0), std::nextafter(0.05, 0.0), crit).admissible);
  CHECK(judge(0.95, 0.05, crit).binding_point == BindingPoint::Both);
  CHECK(judge(0.0, 0.0, crit).binding_point == BindingPoint::None);
}

TEST_CASE("extended admissibility") {
  CHECK(admissible_extended(16, SamplingPlan(15, 0)).admissible);
  CHECK(!admissible_extended(15, SamplingPlan(14, 0)).admissible);
  CHECK(admissible_extended(981, SamplingPlan(88, 2)).admissible);
  CHECK(!admissible_extended(980, SamplingPlan(88, 2)).admissible);
  const auto below = admissible_extended(150, SamplingPlan(100, 2));
  CHECK(below.structural);
  CHECK(!below.admissible);
  CHECK_THROWS_AS(admissible_extended(50, SamplingPlan(60, 0)), DomainError);
}

TEST_CASE("discrete admissibility") {
  CHECK(admissible_discrete(43, SamplingPlan(22, 0)).admissible);
  CHECK(!admissible_discrete(42, SamplingPlan(22, 0)).admissible);
  const auto v = admissible_discrete(14, SamplingPlan(13, 0));
  CHECK(!v.admissible);
  CHECK(v.binding_point == BindingPoint::Lq);
  CHECK(v.oc_at_b == doctest::Approx(1.0 / 14.0).epsilon(1e-14));
}

TEST_CASE("lot size lower bound") {
  CHECK(lot_size_lower_bound(0) == 1);
  CHECK(lot_size_lower_bound(1) == 101);
  CHECK(lot_size_lower_bound(2) == 201);
  CHECK(lot_size_lower_bound(5) == 501);
  CHECK(lot_size_lower_bound(1, TwoPointCriterion(0.03, 0.95, 0.1, 0.05)) == 34);
}

TEST_CASE("anti-monotone in n") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 150; ++trial) {
    const std::int64_t big_n = std::uniform_int_distribution<std::int64_t>(16, 1500)(rng);
    const std::int64_t c = std::uniform_int_distribution<std::int64_t>(0, 3)(rng);
    bool seen_ext = false, seen_disc = false, seen_bin = false;
    for (std::int64_t n = std::max<std::int64_t>(c, 1); n <= std::min<std::int64_t>(big_n, 250); ++n) {
      const SamplingPlan plan(n, c);
      const bool ext = admissible_extended(big_n, plan).admissible;
      const bool disc = admissible_discrete(big_n, plan).admissible;
      const bool bin = admissible_binomial(plan).admissible;
      if (seen_ext) CHECK(ext);
      if (seen_disc) CHECK(disc);
      if (seen_bin) CHECK(bin);
      seen_ext |= ext;
      seen_disc |= disc;
      seen_bin |= bin;
    }
  }
}

TEST_CASE("zero acceptance: extended implies discrete") {
  for (std::int64_t big_n = 16; big_n <= 1200; big_n += 7)
    for (std::int64_t n = 1; n <= std::min<std::int64_t>(big_n, 60); ++n)
      if (admissible_extended(big_n, SamplingPlan(n, 0)).admissible) CHECK(admissible_discrete(big_n, SamplingPlan(n, 0)).admissible);
}

}
