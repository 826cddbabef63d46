#include <doctest.h>

#include <cmath>

#include "samplan/optimize.hpp"

using namespace samplan;

namespace {
std::int64_t n_of(const SampleSearch& s) {
  REQUIRE(s.plan);
  return s.plan->n();
}
}  // namespace

TEST_SUITE("optimize") {

TEST_CASE("binomial minima") {
  const std::int64_t expected[] = {42, 66, 88, 138, 199, 263};
  for (std::int64_t c = 0; c <= 5; ++c) {
    const auto s = min_sample_binomial(c);
    CHECK(s.status == SearchStatus::Found);
    CHECK(n_of(s) == expected[c]);
    CHECK(s.plan->c() == c);
  }
  // (1-0.5)^5 < 0.05 already, but 0.99^5 = 0.951 is not below P_a.
  CHECK(n_of(min_sample_binomial(0, TwoPointCriterion(0.01, 0.95, 0.5, 0.05))) == 6);
  CHECK(min_sample_binomial(3, TwoPointCriterion::mid(), 100).status == SearchStatus::NoSolution);
}

TEST_CASE("brute force agrees with the binomial search") {
  const TwoPointCriterion crit(0.01, 0.95, 0.5, 0.05);
  std::int64_t brute = 0;
  for (std::int64_t n = 1;; ++n)
    if (admissible_binomial(SamplingPlan(n, 0), crit).admissible) {
      brute = n;
      break;
    }
  CHECK(brute == 6);
  CHECK(std::pow(0.5, 5) < 0.05);
  CHECK(std::pow(0.99, 5) >= 0.95);
  CHECK(std::pow(0.99, 6) < 0.95);
}

TEST_CASE("poisson minima") {
  const std::int64_t expected[] = {43, 68, 90, 137, 198, 262};
  for (std::int64_t c = 0; c <= 5; ++c) CHECK(n_of(min_sample_poisson(c)) == expected[c]);
}

TEST_CASE("extended minima") {
  CHECK(n_of(min_sample_extended(16, 0)) == 15);
  CHECK(n_of(min_sample_extended(3063, 0)) == 41);
  CHECK(n_of(min_sample_extended(3064, 0)) == 42);
  CHECK(n_of(min_sample_extended(660, 0)) == 41);
  CHECK(n_of(min_sample_extended(659, 0)) == 40);
  CHECK(n_of(min_sample_extended(256, 2)) == 124);
  CHECK(n_of(min_sample_extended(512, 2)) == 95);
  CHECK(n_of(min_sample_extended(1024, 2)) == 88);
  const auto small = min_sample_extended(15, 0);
  CHECK(small.status == SearchStatus::FullInspectionOnly);
  CHECK(n_of(small) == 15);
  CHECK(min_sample_extended(1, 0).status == SearchStatus::NoSolution);
  const auto structural = min_sample_extended(200, 2);
  CHECK(structural.status == SearchStatus::StructurallyInadmissible);
  CHECK(structural.lot_bound == 201);
  CHECK(!structural.plan);
}

TEST_CASE("saturation at the binomial minimum") {
  CHECK(n_of(min_sample_extended(3064, 0)) == 42);
  CHECK(n_of(min_sample_extended(1947, 1)) == 65);
  CHECK(n_of(min_sample_extended(1948, 1)) == 66);
  CHECK(n_of(min_sample_extended(3412, 2)) == 87);
  CHECK(n_of(min_sample_extended(3413, 2)) == 88);
  for (std::int64_t big_n : {5000, 20000, 1'000'000}) {
    CHECK(n_of(min_sample_extended(big_n, 0)) == 42);
    CHECK(n_of(min_sample_extended(big_n, 1)) == 66);
    CHECK(n_of(min_sample_extended(big_n, 2)) == 88);
  }
}

TEST_CASE("discrete minima") {
  CHECK(n_of(min_sample_discrete(42, 0)) == 26);
  CHECK(n_of(min_sample_discrete(43, 0)) == 22);
  CHECK(n_of(min_sample_discrete(3064, 0)) <= 42);
  const auto tiny = min_sample_discrete(14, 0);
  CHECK(tiny.status == SearchStatus::FullInspectionOnly);
  CHECK(n_of(tiny) == 14);
}

TEST_CASE("minimality certificates") {
  for (std::int64_t big_n = 16; big_n <= 2000; big_n += 37) {
    for (std::int64_t c = 0; c <= 2; ++c) {
      const auto s = min_sample_extended(big_n, c);
      if (s.status != SearchStatus::Found) continue;
      CHECK(admissible_extended(big_n, *s.plan).admissible);
      if (s.plan->n() > std::max<std::int64_t>(c, 1))
        CHECK(!admissible_extended(big_n, SamplingPlan(s.plan->n() - 1, c)).admissible);
    }
  }
}

TEST_CASE("zero acceptance is non-decreasing and bounded by 42") {
  std::int64_t prev = 0;
  for (std::int64_t big_n = 16; big_n <= 4000; ++big_n) {
    const std::int64_t n = n_of(min_sample_extended(big_n, 0));
    CHECK(n >= prev);
    CHECK(n <= 42);
    prev = n;
  }
}

TEST_CASE("lot intervals") {
  auto iv = lot_interval(SamplingPlan(55, 1));
  REQUIRE(iv);
  CHECK(iv->lot_from == 139);
  CHECK(iv->lot_to == 142);
  iv = lot_interval(SamplingPlan(66, 1));
  REQUIRE(iv);
  CHECK(iv->lot_from == 119);
  CHECK(iv->unbounded());
  iv = lot_interval(SamplingPlan(86, 2));
  REQUIRE(iv);
  CHECK(*iv == LotInterval{86, 2, 1454, 1469});
  iv = lot_interval(SamplingPlan(88, 2));
  REQUIRE(iv);
  CHECK(iv->lot_from == 981);
  CHECK(iv->unbounded());
  CHECK(!lot_interval(SamplingPlan(54, 1)));
  CHECK(!lot_interval(SamplingPlan(85, 2)));
}

TEST_CASE("lot intervals match a brute-force scan") {
  for (const auto& plan : {SamplingPlan(55, 1), SamplingPlan(60, 1), SamplingPlan(62, 1), SamplingPlan(86, 2),
                           SamplingPlan(87, 2), SamplingPlan(30, 0), SamplingPlan(40, 0)}) {
    const auto iv = lot_interval(plan);
    REQUIRE(iv);
    const std::int64_t scan_to = iv->lot_to ? *iv->lot_to + 500 : iv->lot_from + 3000;
    for (std::int64_t big_n = plan.n(); big_n <= scan_to; ++big_n)
      CHECK_MESSAGE(admissible_extended(big_n, plan).admissible == iv->contains(big_n), to_string(plan), " N=", big_n);
  }
}

TEST_CASE("risk summary") {
  auto r = risk_summary(SamplingPlan(50, 0), OcModel::binomial());
  CHECK(std::fabs(r.alpha * 100 - 39.5) <= 0.05);
  CHECK(std::fabs(r.beta * 100 - 2.66) <= 0.05);
  REQUIRE(r.q_a);
  REQUIRE(r.q_b);
  CHECK(std::fabs(*r.q_a * 100 - 0.103) <= 0.05);
  CHECK(std::fabs(*r.q_b * 100 - 5.82) <= 0.05);
  r = risk_summary(SamplingPlan(42, 0), OcModel::binomial());
  CHECK(std::fabs(r.alpha * 100 - 34.4) <= 0.05);
  CHECK(std::fabs(r.beta * 100 - 4.75) <= 0.05);
  CHECK(std::fabs(*r.q_b * 100 - 6.88) <= 0.05);
  r = risk_summary(SamplingPlan(7, 7), OcModel::binomial());
  CHECK(r.alpha == 0.0);
  CHECK(r.beta == 1.0);
  CHECK(!r.q_a);
  CHECK(!risk_summary(SamplingPlan(30, 0), OcModel::hypergeometric_extended(61)).alpha_operational);
  CHECK(risk_summary(SamplingPlan(35, 0), OcModel::hypergeometric_extended(104)).alpha_operational);
}

TEST_CASE("quality roots") {
  const SamplingPlan plan(88, 2);
  const auto qa = quality_at_probability(plan, 0.95, OcModel::binomial());
  const auto qb = quality_at_probability(plan, 0.05, OcModel::binomial());
  REQUIRE(qa);
  REQUIRE(qb);
  CHECK(std::fabs(*qa * 100 - 0.936) <= 0.001);
  CHECK(std::fabs(*qb * 100 - 6.98) <= 0.01);
  CHECK(std::fabs(binomial_oc(*qa, plan) - 0.95) <= 1e-10);
  CHECK(binomial_oc(*qb - 1e-8, plan) > 0.05);
  CHECK(binomial_oc(*qb + 1e-8, plan) < 0.05);
  CHECK(!quality_at_probability(plan, 1.0, OcModel::binomial()));
  const auto fin = quality_at_probability(plan, 0.05, OcModel::hypergeometric_extended(2000));
  REQUIRE(fin);
  CHECK(std::fabs(hypergeom_oc_extended(*fin * 2000, 2000, plan) - 0.05) <= 1e-10);
}

TEST_CASE("interval tables") {
  const auto c0 = interval_table(0);
  bool found = false;
  for (const auto& row : c0)
    if (row.interval.lot_from == 660) {
      found = true;
      CHECK(row.interval.lot_to == 3063);
      CHECK(row.interval.n == 41);
      CHECK(std::fabs(row.at_from.beta * 100 - 4.63) <= 0.005);
      CHECK(std::fabs(row.at_to.beta * 100 - 5.00) <= 0.005);
      CHECK(row.at_to.beta < 0.05);
    }
  CHECK(found);
  CHECK(c0.front().interval.lot_from == 15);
  CHECK(c0.back().interval.unbounded());

  const auto c1 = interval_table(1);
  const auto row60 = std::find_if(c1.begin(), c1.end(), [](const auto& r) { return r.interval.n == 60; });
  REQUIRE(row60 != c1.end());
  CHECK(row60->interval == LotInterval{60, 1, 127, 277});
  CHECK(std::fabs(row60->at_from.alpha * 100 - 5.04) <= 0.005);
  CHECK(std::fabs(row60->at_to.alpha * 100 - 10.10) <= 0.005);
  CHECK(std::fabs(row60->at_from.beta * 100 - 2.61) <= 0.005);

  const auto c2 = interval_table(2, TwoPointCriterion::mid(), 130);
  const auto row95 = std::find_if(c2.begin(), c2.end(), [](const auto& r) { return r.interval.n == 95; });
  REQUIRE(row95 != c2.end());
  CHECK(row95->interval.lot_from == 508);
  CHECK(std::fabs(row95->at_from.alpha * 100 - 5.00) <= 0.005);
  CHECK(std::fabs(row95->at_from.beta * 100 - 2.28) <= 0.005);
  CHECK(std::fabs(row95->at_to.beta * 100 - 3.39) <= 0.005);
  CHECK(c2.back().interval.n == 130);
}

TEST_CASE("every tabulated endpoint satisfies the criterion") {
  for (std::int64_t c = 0; c <= 2; ++c)
    for (const auto& row : interval_table(c)) {
      const SamplingPlan plan(row.interval.n, c);
      CHECK(admissible_extended(row.interval.lot_from, plan).admissible);
      if (row.interval.lot_to) CHECK(admissible_extended(*row.interval.lot_to, plan).admissible);
      else CHECK(admissible_binomial(plan).admissible);
    }
}

}
