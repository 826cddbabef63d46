#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace samplan {

/// Raised when an argument lies outside the mathematical domain of an operation
/// (probability outside [0,1], more defectives than items, sample larger than lot).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a numerical procedure cannot deliver a result it guarantees
/// (non-monotone search certificate, failed root polish, non-finite sum).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Attribute single-sampling plan: inspect n items, accept the lot when at
/// most c of them are defective.
class SamplingPlan {
 public:
  SamplingPlan(std::int64_t sample_size, std::int64_t acceptance_number)
      : n_(sample_size), c_(acceptance_number) {
    if (n_ < 1) throw DomainError("sample size must be at least 1");
    if (c_ < 0) throw DomainError("acceptance number must be non-negative");
    if (c_ > n_) throw DomainError("acceptance number cannot exceed sample size");
  }

  std::int64_t n() const noexcept { return n_; }
  std::int64_t c() const noexcept { return c_; }

  friend auto operator<=>(const SamplingPlan&, const SamplingPlan&) = default;

 private:
  std::int64_t n_;
  std::int64_t c_;
};

inline std::string to_string(const SamplingPlan& plan) {
  return "(" + std::to_string(plan.n()) + "," + std::to_string(plan.c()) + ")";
}

}  // namespace samplan
