#include <doctest.h>

#include <cmath>
#include <random>

#include "samplan/dist.hpp"
#include "samplan/oracle.hpp"

using namespace samplan;
using namespace samplan::oracle;

TEST_SUITE("oracle") {

TEST_CASE("rational hypergeometric OC") {
  CHECK(hypergeom_oc_rational(1, 16, SamplingPlan(15, 0)).to_string() == "1/16");
  const auto r = hypergeom_oc_rational(2, 20, SamplingPlan(10, 1));
  CHECK(r.to_string() == "29/38");
  CHECK(r.to_double() == doctest::Approx(29.0 / 38.0).epsilon(1e-16));
  CHECK(hypergeom_oc_rational(0, 20, SamplingPlan(10, 1)).to_string() == "1/1");
  CHECK(hypergeom_oc_rational(20, 20, SamplingPlan(10, 1)).to_string() == "0/1");
  CHECK_THROWS_AS(hypergeom_oc_rational(1, kRationalLotLimit + 1, SamplingPlan(10, 1)), DomainError);
}

TEST_CASE("double kernel agrees with the rational oracle") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 300; ++trial) {
    const std::int64_t big_n = std::uniform_int_distribution<std::int64_t>(1, 3000)(rng);
    const std::int64_t n = std::uniform_int_distribution<std::int64_t>(1, std::min<std::int64_t>(big_n, 400))(rng);
    const std::int64_t c = std::uniform_int_distribution<std::int64_t>(0, std::min<std::int64_t>(n, 10))(rng);
    const std::int64_t m = std::uniform_int_distribution<std::int64_t>(0, big_n)(rng);
    const SamplingPlan plan(n, c);
    const double exact = hypergeom_oc_rational(m, big_n, plan).to_double();
    const double fast = hypergeom_oc_exact(m, big_n, plan);
    CHECK(std::fabs(fast - exact) <= 1e-12 * std::max(exact, 2.2250738585072014e-308));
  }
}

TEST_CASE("high-precision extended OC") {
  const auto v = hypergeom_oc_extended_hp(defectives_at(0.07, 16), 16, SamplingPlan(15, 0));
  CHECK(v > 0);
  CHECK(v < 0.05);
  CHECK(std::fabs(v.convert_to<double>() - hypergeom_oc_extended(0.07 * 16, 16, SamplingPlan(15, 0))) < 1e-12);
  CHECK(hypergeom_oc_extended_hp(HighFloat(2), 20, SamplingPlan(10, 1)) ==
        hypergeom_oc_rational(2, 20, SamplingPlan(10, 1)).to_high_float());
  CHECK(defectives_at(0.07, 100) == HighFloat(7));
}

TEST_CASE("audit") {
  for (const auto& [big_n, plan] : {std::pair{981, SamplingPlan(88, 2)}, {980, SamplingPlan(88, 2)},
                                    {16, SamplingPlan(15, 0)}, {15, SamplingPlan(14, 0)}, {43, SamplingPlan(22, 0)}}) {
    const auto a = audit_extended(big_n, plan);
    CHECK(a.agrees);
    CHECK(a.admissible == admissible_extended(big_n, plan).admissible);
  }
  const auto s = audit_extended(150, SamplingPlan(100, 2));
  CHECK(s.structural);
  CHECK(!s.admissible);
}

TEST_CASE("Monte Carlo corner cases") {
  const auto none = monte_carlo_oc(0, 100, SamplingPlan(10, 0), 1000, 1);
  CHECK(none.estimate == 1.0);
  const auto all = monte_carlo_oc(100, 100, SamplingPlan(10, 0), 1000, 1);
  CHECK(all.estimate == 0.0);
  CHECK(all.rng == kRngAlgorithm);
  CHECK_THROWS_AS(monte_carlo_oc(101, 100, SamplingPlan(10, 0), 10, 1), DomainError);
  CHECK_THROWS_AS(monte_carlo_oc(1, 100, SamplingPlan(10, 0), 0, 1), DomainError);
}

TEST_CASE("Monte Carlo matches the exact OC") {
  const auto r = monte_carlo_oc(7, 100, SamplingPlan(20, 1), 200000, 42);
  const double exact = hypergeom_oc_exact(7, 100, SamplingPlan(20, 1));
  CHECK(std::fabs(r.estimate - exact) < 4 * r.std_error);
  CHECK(r.std_error == doctest::Approx(std::sqrt(r.estimate * (1 - r.estimate) / 200000)));
  const auto sparse = monte_carlo_oc(70'000, 10'000'000, SamplingPlan(88, 2), 50000, 9);
  const double sparse_exact = hypergeom_oc_exact(70'000, 10'000'000, SamplingPlan(88, 2));
  CHECK(std::fabs(sparse.estimate - sparse_exact) < 4 * sparse.std_error);
}

TEST_CASE("Monte Carlo is reproducible across worker counts") {
  const auto one = monte_carlo_oc(5, 60, SamplingPlan(12, 0), 50000, 2024, 1);
  const auto many = monte_carlo_oc(5, 60, SamplingPlan(12, 0), 50000, 2024, 7);
  CHECK(one.acceptances == many.acceptances);
  CHECK(monte_carlo_oc(5, 60, SamplingPlan(12, 0), 50000, 2025).acceptances != one.acceptances);
}

}
