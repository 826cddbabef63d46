#pragma once

// Independent verification backends: exact rational hypergeometric OC,
// a high-precision evaluation of the gamma-extended OC, and a Monte Carlo
// lot-sampling simulator.

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "samplan/criteria.hpp"
#include "samplan/plan.hpp"

namespace samplan::oracle {

using BigInt = boost::multiprecision::cpp_int;
using HighFloat = boost::multiprecision::cpp_bin_float_50;

/// Largest lot accepted by the rational evaluator.
inline constexpr std::int64_t kRationalLotLimit = 100'000;

/// Non-negative rational in lowest terms.
struct ExactProbability {
  BigInt numerator;
  BigInt denominator{1};

  /// Correctly scaled even when both terms overflow a double.
  double to_double() const;
  HighFloat to_high_float() const;
  /// "p/q" in lowest terms.
  std::string to_string() const;
};

ExactProbability hypergeom_oc_rational(std::int64_t defectives, std::int64_t lot_size, const SamplingPlan& plan);

/// Extended hypergeometric OC at 50 significant digits, evaluated through
/// falling factorials rather than log-gamma. Not clamped.
HighFloat hypergeom_oc_extended_hp(const HighFloat& defectives, std::int64_t lot_size, const SamplingPlan& plan);

/// Defective count p*N at high precision; exact when p*N is an integer up to
/// decimal rounding of p.
HighFloat defectives_at(double quality, std::int64_t lot_size);

struct ExtendedAudit {
  HighFloat oc_at_a;
  HighFloat oc_at_b;
  bool admissible = false;   // strict inequalities at high precision
  bool structural = false;   // excluded by the lot-size bound
  bool agrees = false;       // double-precision verdict is the same
};

ExtendedAudit audit_extended(std::int64_t lot_size, const SamplingPlan& plan,
                             const TwoPointCriterion& crit = TwoPointCriterion::mid());

/// Generator identifier recorded with every simulation: mt19937_64 streams,
/// one per shard, seeded by splitmix64 from the master seed, Lemire bounded
/// integers, partial Fisher-Yates.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64+splitmix64/16-shards/lemire/partial-fisher-yates";
inline constexpr int kShards = 16;

struct SimulationResult {
  std::int64_t trials = 0;
  std::int64_t acceptances = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t seed = 0;
  std::string rng;
};

/// Deterministic in (arguments, seed); the worker count only changes speed.
SimulationResult monte_carlo_oc(std::int64_t defectives, std::int64_t lot_size, const SamplingPlan& plan,
                                std::int64_t trials, std::uint64_t seed, unsigned workers = 1);

}  // namespace samplan::oracle
