#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace mwcalc {

/// Raised when an enumeration or recursion would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Raised on malformed experiment configuration.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Neumaier-compensated accumulator. The corner sums computed throughout the
/// library are alternating and cancel catastrophically for smooth functions
/// at nearby points; plain summation is not good enough there.
class CompensatedSum {
public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// mt19937_64 with hand-rolled double conversion so that streams are
/// bit-identical across standard library implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi] inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(eng_() % span);
  }

  /// Standard normal via Box-Muller (deterministic, two uniforms per pair).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    constexpr double two_pi = 6.283185307179586476925286766559;
    spare_ = mag * std::sin(two_pi * u2);
    have_spare_ = true;
    return mag * std::cos(two_pi * u2);
  }

private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

inline bool nearly_equal(double a, double b, double tol) {
  return std::abs(a - b) <= tol;
}

}  // namespace mwcalc
