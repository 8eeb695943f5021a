#pragma once

#include <optional>
#include <vector>

#include "qc1d/chain.hpp"
#include "qc1d/energy.hpp"
#include "qc1d/potential.hpp"

namespace qc1d {

/// Interface correction profile g_hat': -1/2 at elements -K-1 and K+2,
/// +1/2 at elements -K+1 and K, zero elsewhere.  Sums to zero and is
/// antisymmetric under the strain mirror l -> 1-l.
StrainVector ghost_profile(const ChainParams& params);

/// The zero-mean displacement with backward difference ghost_profile().
Displacement ghost_displacement(const ChainParams& params);

/// First variation of the QCE energy at the uniform state y_F: the
/// interface truncation error ("ghost force"),
///   u  ->  -phi'(2F) <g_hat', u'>,
/// returned with canonical zero-mean coefficients -phi'(2F) g_hat'_l.
FirstVariation ghost_force(const Potential& p, const ChainParams& params);

/// First-order corrected uniform state y_F + delta1 * g_hat: element
/// strains F -+ delta1/2 on the four interface elements, F elsewhere.
/// Solves phi''_F <(y-y_F)', u'> = phi'(2F) <g_hat', u'> exactly.
Deformation approx_equilibrium(const Potential& p, const ChainParams& params);

struct NewtonOptions {
  int max_iterations = 50;
  double residual_tol = 1e-12;  // max |g_l - mean(g)| (strain-dual, l-inf flavor)
  double step_tol = 1e-12;      // ||step'||_inf
  int max_step_halvings = 10;   // step rejection when an iterate leaves admissibility
  double strain_guard = 1e-8;
  double singular_tol = 1e-14;  // smallest |eigenvalue| of the projected Hessian
};

enum class SolveStatus { Converged, MaxIterations, SingularHessian, InadmissibleIterate };
const char* to_string(SolveStatus s);

struct EquilibriumBranch {
  Deformation solution;
  double residual_norm;
  int newton_iterations;
  bool converged;
  SolveStatus status;
  std::vector<double> residual_history;
};

/// Undamped Newton iteration on the projected equations E'_qce(y)[u] = 0
/// for all zero-mean u, each step solving the strain-coordinate Hessian on
/// the sum-zero subspace (same projected factorization as the eigen path).
/// Inadmissible iterates reject the step and halve it.  Failure states are
/// reported in `status`, never thrown: near the fold they are data.
EquilibriumBranch newton_solve(const Potential& p, const ChainParams& params,
                               const Deformation& initial, const NewtonOptions& options = {});

/// newton_solve started from approx_equilibrium.
EquilibriumBranch solve_qce_equilibrium(const Potential& p, const ChainParams& params,
                                        const NewtonOptions& options = {});

/// Accuracy of the first-order correction over a Morse stiffness grid:
/// rows (delta1, delta2, ||(y_qce - y_hat)'||_inf) with a least-squares
/// log-log fit of the error against delta1^2 + delta1*delta2.  Each row
/// uses the potential's own energy-minimizing strain unless fixed_strain
/// is given.  Failed rows are flagged and skipped by the fit.
struct ScalingRow {
  double alpha;
  double strain;
  double delta1;
  double delta2;
  double error;
  bool ok;
};
struct ScalingStudy {
  std::vector<ScalingRow> rows;
  double fitted_slope;
};
ScalingStudy lemma_scaling_study(const std::vector<double>& alphas, const ChainParams& params,
                                 std::optional<double> fixed_strain = std::nullopt);

}  // namespace qc1d
