#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <limits>
#include <span>

namespace polymerdyn {

// Returns log(sum_i exp(xs[i])); -inf for an empty range or all -inf terms.
inline double log_sum_exp(std::span<const double> xs) {
  if (xs.empty()) return -std::numeric_limits<double>::infinity();
  const double hi = *std::max_element(xs.begin(), xs.end());
  if (!std::isfinite(hi)) return hi;
  double sum = 0.0;
  for (double x : xs) sum += std::exp(x - hi);
  return hi + std::log(sum);
}

inline double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (a == -std::numeric_limits<double>::infinity()) return a;
  return a + std::log1p(std::exp(b - a));
}

// Nonnegative real stored as its natural logarithm; zero is -inf.
class LogValue {
 public:
  constexpr LogValue() = default;

  static constexpr LogValue from_log(double log_value) { return LogValue(log_value); }
  static LogValue from_linear(double x) { return LogValue(std::log(x)); }
  static constexpr LogValue zero() { return LogValue(-std::numeric_limits<double>::infinity()); }
  static constexpr LogValue one() { return LogValue(0.0); }

  constexpr double log() const { return log_; }
  double linear() const { return std::exp(log_); }
  bool is_zero() const { return log_ == -std::numeric_limits<double>::infinity(); }

  friend LogValue operator*(LogValue a, LogValue b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return LogValue(a.log_ + b.log_);
  }
  friend LogValue operator+(LogValue a, LogValue b) { return LogValue(log_add(a.log_, b.log_)); }
  LogValue& operator*=(LogValue o) { return *this = *this * o; }
  LogValue& operator+=(LogValue o) { return *this = *this + o; }

  friend constexpr auto operator<=>(LogValue a, LogValue b) { return a.log_ <=> b.log_; }
  friend constexpr bool operator==(LogValue a, LogValue b) { return a.log_ == b.log_; }

 private:
  constexpr explicit LogValue(double l) : log_(l) {}
  double log_ = -std::numeric_limits<double>::infinity();
};

}  // namespace polymerdyn
