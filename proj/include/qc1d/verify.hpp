#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qc1d {

struct CheckResult {
  std::string group;
  std::string name;
  bool passed;
  std::string detail;
};

/// Runs the library's internal identity suites:
///   fd       finite-difference checks of gradients and Hessians
///   prop31   atomistic uniform-state eigenvalue identity
///   prop32   QCL uniform-state eigenvalue identity
///   prop33   QNL uniform-state sign criterion
///   ghost    ghost-force identity at the uniform state
///   lambdak  lambda_K bounds for the QCE Hessian at y_F
///   mueps    mu_eps against a brute-force eigen-oracle
/// group_filter: empty or "all" runs everything.  The seed drives the
/// randomized deformation samples; identical seeds reproduce identical runs.
std::vector<CheckResult> run_verification(const std::string& group_filter, std::uint64_t seed);

}  // namespace qc1d
