#pragma once

#include <functional>

namespace qc1d {

struct RootResult {
  double root;
  double residual;
  int iterations;
  double bracket_lo;
  double bracket_hi;
};

/// Bisection on a sign-changing bracket, run until the interval collapses
/// in floating point, followed by a guarded Newton polish with a central
/// finite-difference slope.
RootResult bisect_root(const std::function<double(double)>& f, double lo, double hi);

/// Scans a log-spaced grid over (lo, hi] for the first sign change of f
/// (non-finite samples are skipped), then calls bisect_root.  Throws
/// std::runtime_error if no bracket is found.
RootResult scan_and_bisect(const std::function<double(double)>& f, double lo, double hi,
                           int grid_points = 240);

}  // namespace qc1d
