#include "samplan/dist.hpp"

#include <math.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace samplan {
namespace {


void require_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quality level must lie in [0,1], got " + std::to_string(p));
}

void require_fits(std::int64_t lot_size, const SamplingPlan& plan) {
  if (lot_size < 1) throw DomainError("lot size must be positive");
  if (plan.n() > lot_size) throw DomainError("sample size exceeds lot size");
}

// Reentrant ln|Gamma(x)| for x > 0; glibc's lgammal writes the global signgam.
long double lgamma_positive(long double x) noexcept {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgammal_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

// sin(pi x) with exact argument reduction, so that values near integers
// keep their relative accuracy.
long double sin_pi(long double x) noexcept {
  long double r = x - 2.0L * std::nearbyint(x / 2.0L);  // r in [-1, 1]
  int sign = 1;
  if (r < 0) {
    r = -r;
    sign = -1;
  }
  if (r > 0.5L) r = 1.0L - r;
  return sign * std::sin(std::numbers::pi_v<long double> * r);
}

long double log_binomial(long double a, long double b) noexcept {
  return lgamma_positive(a + 1) - lgamma_positive(b + 1) - lgamma_positive(a - b + 1);
}

struct SignedTerm {
  long double log_abs;
  int sign;
};

// sum_i sign_i * exp(log_abs_i), shifted by the largest magnitude.
long double signed_log_sum(const std::vector<SignedTerm>& terms) noexcept {
  if (terms.empty()) return 0.0L;
  long double peak = -std::numeric_limits<long double>::infinity();
  for (const auto& t : terms) peak = std::max(peak, t.log_abs);
  if (!std::isfinite(peak)) return 0.0L;
  long double scaled = 0.0L;
  for (const auto& t : terms) scaled += t.sign * std::exp(t.log_abs - peak);
  if (scaled == 0.0L) return 0.0L;
  return scaled * std::exp(peak);
}

double clamp_unit(long double value) noexcept {
  return static_cast<double>(std::clamp(value, 0.0L, 1.0L));
}

}  // namespace

SignedLogGamma log_gamma_signed(long double x) noexcept {
  if (std::isnan(x)) return {x, 1};
  if (x > 0) return {lgamma_positive(x), 1};
  if (x == std::floor(x)) return {std::numeric_limits<long double>::infinity(), 0};
  // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x)).
  const long double s = sin_pi(x);
  return {std::log(std::numbers::pi_v<long double>) - std::log(std::fabs(s)) - lgamma_positive(1 - x),
          s < 0 ? -1 : 1};
}

double binomial_oc(double p, const SamplingPlan& plan) {
  require_probability(p);
  const std::int64_t n = plan.n();
  const std::int64_t c = plan.c();
  if (c >= n || p == 0.0) return 1.0;
  if (p == 1.0) return 0.0;

  // term_{k+1} = term_k * (n-k)/(k+1) * p/(1-p), carried in log space.
  const long double log_q = std::log1p(-static_cast<long double>(p));
  const long double log_odds = std::log(static_cast<long double>(p)) - log_q;
  std::vector<SignedTerm> terms;
  terms.reserve(static_cast<std::size_t>(c) + 1);
  long double log_term = static_cast<long double>(n) * log_q;
  for (std::int64_t k = 0; k <= c; ++k) {
    terms.push_back({log_term, 1});
    log_term += std::log(static_cast<long double>(n - k) / static_cast<long double>(k + 1)) + log_odds;
  }
  return clamp_unit(signed_log_sum(terms));
}

double poisson_oc(double p, const SamplingPlan& plan) {
  require_probability(p);
  if (p == 0.0) return 1.0;
  const long double mean = static_cast<long double>(plan.n()) * p;
  const long double log_mean = std::log(mean);
  std::vector<SignedTerm> terms;
  terms.reserve(static_cast<std::size_t>(plan.c()) + 1);
  long double log_term = -mean;
  for (std::int64_t k = 0; k <= plan.c(); ++k) {
    terms.push_back({log_term, 1});
    log_term += log_mean - std::log(static_cast<long double>(k + 1));
  }
  return clamp_unit(signed_log_sum(terms));
}

double hypergeom_oc_exact(std::int64_t defectives, std::int64_t lot_size, const SamplingPlan& plan) {
  require_fits(lot_size, plan);
  if (defectives < 0 || defectives > lot_size) throw DomainError("defective count must lie in [0, N]");
  const std::int64_t big_m = defectives;
  const std::int64_t big_n = lot_size;
  const std::int64_t n = plan.n();
  const std::int64_t conforming = big_n - big_m;

  const std::int64_t k_lo = std::max<std::int64_t>(0, n - conforming);
  const std::int64_t k_hi = std::min({plan.c(), big_m, n});
  if (k_lo > k_hi) return 0.0;
  if (k_lo == 0 && k_hi == std::min(big_m, n)) return 1.0;  // whole support accepted

  // First summand from log-binomials, the rest by the term ratio
  //   t_{k+1} / t_k = (M-k)(n-k) / ((k+1)(N-M-n+k+1)).
  std::vector<SignedTerm> terms;
  terms.reserve(static_cast<std::size_t>(k_hi - k_lo) + 1);
  long double log_term = log_binomial(big_m, k_lo) + log_binomial(conforming, n - k_lo) - log_binomial(big_n, n);
  for (std::int64_t k = k_lo; k <= k_hi; ++k) {
    terms.push_back({log_term, 1});
    if (k == k_hi) break;
    const long double num = static_cast<long double>(big_m - k) * static_cast<long double>(n - k);
    const long double den = static_cast<long double>(k + 1) * static_cast<long double>(conforming - n + k + 1);
    log_term += std::log(num / den);
  }
  return clamp_unit(signed_log_sum(terms));
}

double hypergeom_oc_extended(double defectives, std::int64_t lot_size, const SamplingPlan& plan) {
  require_fits(lot_size, plan);
  if (!(defectives >= 0.0 && defectives <= static_cast<double>(lot_size)))
    throw DomainError("defective count must lie in [0, N]");

  const long double big_m = defectives;
  const long double big_n = static_cast<long double>(lot_size);
  const long double n = static_cast<long double>(plan.n());
  const std::int64_t k_max = std::min(plan.c(), plan.n());

  // Factors independent of k: M! (N-M)! n! (N-n)! / N!.
  const long double log_common = lgamma_positive(big_m + 1) + lgamma_positive(big_n - big_m + 1) +
                                 lgamma_positive(n + 1) + lgamma_positive(big_n - n + 1) -
                                 lgamma_positive(big_n + 1);

  std::vector<SignedTerm> terms;
  terms.reserve(static_cast<std::size_t>(k_max) + 1);
  for (std::int64_t k = 0; k <= k_max; ++k) {
    const long double kk = static_cast<long double>(k);
    const SignedLogGamma defective_rest = log_gamma_signed(big_m - kk + 1);
    const SignedLogGamma conforming_rest = log_gamma_signed(big_n - big_m - n + kk + 1);
    if (defective_rest.is_pole() || conforming_rest.is_pole()) continue;
    const long double log_abs = log_common - lgamma_positive(kk + 1) - lgamma_positive(n - kk + 1) -
                                defective_rest.log_abs - conforming_rest.log_abs;
    terms.push_back({log_abs, defective_rest.sign * conforming_rest.sign});
  }
  const long double sum = signed_log_sum(terms);
  // Outside the integer grid the partial sum is not a probability and may
  // leave [0,1] (e.g. M < c); only a non-finite result is an error.
  if (!std::isfinite(sum)) throw NumericalError("extended hypergeometric sum is not finite");
  return clamp_unit(sum);
}

std::string_view to_string(OcKind kind) noexcept {
  switch (kind) {
    case OcKind::Binomial: return "binomial";
    case OcKind::Poisson: return "poisson";
    case OcKind::HypergeometricExact: return "hyper-exact";
    case OcKind::HypergeometricExtended: return "hyper-ext";
  }
  return "unknown";
}

std::optional<OcKind> parse_oc_kind(std::string_view text) noexcept {
  if (text == "binomial") return OcKind::Binomial;
  if (text == "poisson") return OcKind::Poisson;
  if (text == "hyper-exact") return OcKind::HypergeometricExact;
  if (text == "hyper-ext") return OcKind::HypergeometricExtended;
  return std::nullopt;
}

OcModel OcModel::hypergeometric_exact(std::int64_t lot_size) {
  if (lot_size < 1) throw DomainError("lot size must be positive");
  return OcModel(OcKind::HypergeometricExact, lot_size);
}

OcModel OcModel::hypergeometric_extended(std::int64_t lot_size) {
  if (lot_size < 1) throw DomainError("lot size must be positive");
  return OcModel(OcKind::HypergeometricExtended, lot_size);
}

double OcModel::evaluate(double p, const SamplingPlan& plan) const {
  if (kind_ != OcKind::HypergeometricExact) return evaluate_continuous(p, plan);
  require_probability(p);
  const auto level = detail::snap_to_integer(p * static_cast<double>(*lot_size_));
  if (!level) throw DomainError("quality level is not a multiple of 1/N");
  return hypergeom_oc_exact(*level, *lot_size_, plan);
}

double OcModel::evaluate_continuous(double p, const SamplingPlan& plan) const {
  switch (kind_) {
    case OcKind::Binomial: return binomial_oc(p, plan);
    case OcKind::Poisson: return poisson_oc(p, plan);
    case OcKind::HypergeometricExact:
    case OcKind::HypergeometricExtended:
      require_probability(p);
      return hypergeom_oc_extended(p * static_cast<double>(*lot_size_), *lot_size_, plan);
  }
  throw DomainError("unknown OC model");
}

namespace detail {

std::optional<std::int64_t> snap_to_integer(double value) noexcept {
  if (!std::isfinite(value)) return std::nullopt;
  const double nearest = std::nearbyint(value);
  if (std::fabs(value - nearest) <= 1e-9 * std::max(1.0, std::fabs(value)))
    return static_cast<std::int64_t>(nearest);
  return std::nullopt;
}

}  // namespace detail
}  // namespace samplan
