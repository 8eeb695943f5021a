#include "qc1d/root_finding.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qc1d {

RootResult bisect_root(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return {lo, 0.0, 0, lo, hi};
  if (fhi == 0.0) return {hi, 0.0, 0, lo, hi};
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::runtime_error("bisect_root: endpoints do not bracket a sign change");

  const double blo = lo, bhi = hi;
  int it = 0;
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;  // interval collapsed in floating point
    const double fm = f(mid);
    ++it;
    if (fm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }

  double root = 0.5 * (lo + hi);
  // Newton polish; the slope comes from a central difference since callers
  // supply f as an opaque scalar function.
  for (int k = 0; k < 3; ++k) {
    const double h = 1e-7 * std::max(std::abs(root), 1.0);
    const double slope = (f(root + h) - f(root - h)) / (2.0 * h);
    if (slope == 0.0 || !std::isfinite(slope)) break;
    const double next = root - f(root) / slope;
    if (!(next > blo && next < bhi)) break;
    root = next;
  }
  return {root, f(root), it, blo, bhi};
}

RootResult scan_and_bisect(const std::function<double(double)>& f, double lo, double hi,
                           int grid_points) {
  if (!(lo > 0.0 && hi > lo)) throw std::invalid_argument("scan_and_bisect: need 0 < lo < hi");
  const double llo = std::log(lo), lhi = std::log(hi);
  double x_prev = lo;
  double f_prev = f(lo);
  for (int i = 1; i <= grid_points; ++i) {
    const double x = std::exp(llo + (lhi - llo) * i / grid_points);
    const double fx = f(x);
    if (std::isfinite(f_prev) && std::isfinite(fx) && f_prev != 0.0 &&
        (fx == 0.0 || (fx > 0.0) != (f_prev > 0.0))) {
      return bisect_root(f, x_prev, x);
    }
    if (std::isfinite(fx)) {
      x_prev = x;
      f_prev = fx;
    }
  }
  throw std::runtime_error("scan_and_bisect: no sign change in (" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
}

}  // namespace qc1d
