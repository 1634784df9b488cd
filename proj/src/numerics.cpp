#include "mfzeta/numerics.hpp"

#include <string>

#include "mfzeta/errors.hpp"

namespace mfzeta {

void expand_bracket_decreasing(const std::function<double(double)>& f,
                               double& lo, double& hi, int max_expansions) {
  double step = std::max(1.0, hi - lo);
  int expansions = 0;
  while (!(f(lo) >= 0.0)) {
    if (++expansions > max_expansions) {
      throw Error(ErrorCode::BracketFailure,
                  "no positive value left of " + std::to_string(lo));
    }
    hi = lo;
    lo -= step;
    step *= 2.0;
  }
  step = std::max(1.0, hi - lo);
  expansions = 0;
  while (!(f(hi) <= 0.0)) {
    if (++expansions > max_expansions) {
      throw Error(ErrorCode::BracketFailure,
                  "no negative value right of " + std::to_string(hi));
    }
    lo = hi;
    hi += step;
    step *= 2.0;
  }
}

RootResult bisect_decreasing(const std::function<double(double)>& f, double lo,
                             double hi, double tol) {
  RootResult out;
  double flo = f(lo);
  double fhi = f(hi);
  if (std::isnan(flo) || std::isnan(fhi) || flo < 0.0 || fhi > 0.0) {
    throw Error(ErrorCode::BracketFailure, "endpoints do not bracket a root");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (std::isnan(fm)) {
      throw Error(ErrorCode::NoConvergence, "NaN during bisection");
    }
    if (fm > 0.0) {
      lo = mid;
      flo = fm;
    } else if (fm < 0.0) {
      hi = mid;
      fhi = fm;
    } else {
      lo = hi = mid;
      flo = fhi = 0.0;
    }
    ++out.iterations;
  }
  out.lo = lo;
  out.hi = hi;
  // Report whichever endpoint has the smaller residual.
  if (std::abs(flo) <= std::abs(fhi)) {
    out.root = lo;
    out.residual = flo;
  } else {
    out.root = hi;
    out.residual = fhi;
  }
  return out;
}

double golden_section_min(const std::function<double(double)>& f, double lo,
                          double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol * (1.0 + std::abs(a) + std::abs(b))) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? c : d;
}

}  // namespace mfzeta
