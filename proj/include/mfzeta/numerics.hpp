#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>

namespace mfzeta {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

/// Streaming log(sum exp(x_k)) with a running max shift. The result depends
/// on insertion order only through rounding, so callers feed terms in a fixed
/// (lexicographic) order.
class LogSumExp {
 public:
  void add(double x) {
    if (x == kNegInf) return;
    if (x <= shift_) {
      sum_ += std::exp(x - shift_);
    } else {
      sum_ = sum_ * std::exp(shift_ - x) + 1.0;
      shift_ = x;
    }
  }

  /// Adds `count` copies of exp(x).
  void add(double x, std::uint64_t count) {
    if (count == 0) return;
    add(x + std::log(static_cast<double>(count)));
  }

  void merge(const LogSumExp& other) {
    if (other.empty()) return;
    add(other.value());
  }

  bool empty() const { return shift_ == kNegInf; }
  double value() const { return empty() ? kNegInf : shift_ + std::log(sum_); }

 private:
  double shift_ = kNegInf;
  double sum_ = 0.0;
};

inline double log_add_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

struct RootResult {
  double root = 0.0;
  double residual = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  int iterations = 0;
};

/// Expands [lo, hi] until a strictly decreasing `f` changes sign across it.
/// Throws BracketFailure after `max_expansions` doublings.
void expand_bracket_decreasing(const std::function<double(double)>& f,
                               double& lo, double& hi,
                               int max_expansions = 200);

/// Bisection for a strictly decreasing `f` with f(lo) >= 0 >= f(hi). Runs until
/// the bracket is no wider than `tol` or cannot be split further in double
/// precision.
RootResult bisect_decreasing(const std::function<double(double)>& f, double lo,
                             double hi, double tol = 1e-14);

/// Golden-section search for the minimum of a convex function on [lo, hi].
/// Returns the abscissa.
double golden_section_min(const std::function<double(double)>& f, double lo,
                          double hi, double tol = 1e-11);

}  // namespace mfzeta
