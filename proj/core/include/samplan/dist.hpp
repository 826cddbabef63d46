#pragma once

// Operating-characteristic kernels: probability that a single-sampling plan
// accepts a lot, under the binomial, Poisson and hypergeometric models.
//
// All functions are pure and safe to call concurrently.

#include <cstdint>
#include <optional>
#include <string_view>

#include "samplan/plan.hpp"

namespace samplan {

/// ln|Gamma(x)| together with the sign of Gamma(x). At the poles
/// (x = 0, -1, -2, ...) sign is 0 and log_abs is +infinity, so that callers
/// can map the term to a vanishing reciprocal.
struct SignedLogGamma {
  long double log_abs;
  int sign;

  bool is_pole() const noexcept { return sign == 0; }
};

SignedLogGamma log_gamma_signed(long double x) noexcept;

/// Cumulative binomial acceptance probability sum_{k<=c} C(n,k) p^k (1-p)^(n-k).
double binomial_oc(double p, const SamplingPlan& plan);

/// Cumulative Poisson approximation sum_{k<=c} e^(-np) (np)^k / k!.
/// Cross-checking only; admissibility decisions never use it.
double poisson_oc(double p, const SamplingPlan& plan);

/// Exact hypergeometric acceptance probability for a lot of size N holding M
/// defectives (integer M).
double hypergeom_oc_exact(std::int64_t defectives, std::int64_t lot_size, const SamplingPlan& plan);

/// Hypergeometric acceptance probability with every factorial continued
/// through x! = Gamma(x+1), so the defective count may be any real in [0, N].
/// Summands whose denominator hits a gamma pole vanish; the sum is clamped to
/// [0,1].
double hypergeom_oc_extended(double defectives, std::int64_t lot_size, const SamplingPlan& plan);

enum class OcKind { Binomial, Poisson, HypergeometricExact, HypergeometricExtended };

std::string_view to_string(OcKind kind) noexcept;

/// Parses the CLI spellings: binomial, poisson, hyper-exact, hyper-ext.
std::optional<OcKind> parse_oc_kind(std::string_view text) noexcept;

/// Distribution used to evaluate an OC curve; hypergeometric variants carry
/// the lot size.
class OcModel {
 public:
  static OcModel binomial() noexcept { return OcModel(OcKind::Binomial, std::nullopt); }
  static OcModel poisson() noexcept { return OcModel(OcKind::Poisson, std::nullopt); }
  static OcModel hypergeometric_exact(std::int64_t lot_size);
  static OcModel hypergeometric_extended(std::int64_t lot_size);

  OcKind kind() const noexcept { return kind_; }
  std::optional<std::int64_t> lot_size() const noexcept { return lot_size_; }
  bool finite_lot() const noexcept { return lot_size_.has_value(); }

  /// OC at quality level p. The exact hypergeometric variant only accepts
  /// levels on the grid {0, 1/N, ..., 1}.
  double evaluate(double p, const SamplingPlan& plan) const;

  /// OC as a continuous function of p: the exact hypergeometric variant is
  /// evaluated through its gamma extension.
  double evaluate_continuous(double p, const SamplingPlan& plan) const;

 private:
  OcModel(OcKind kind, std::optional<std::int64_t> lot_size) noexcept : kind_(kind), lot_size_(lot_size) {}

  OcKind kind_;
  std::optional<std::int64_t> lot_size_;
};

namespace detail {

/// p*N rounded to the nearest integer when it is within 1e-9 (relative) of
/// one; used so that decimal levels such as 0.07*100 land on the grid.
std::optional<std::int64_t> snap_to_integer(double value) noexcept;

}  // namespace detail

}  // namespace samplan
