#pragma once

#include <Eigen/Dense>
#include <optional>

#include "qc1d/chain.hpp"
#include "qc1d/energy.hpp"
#include "qc1d/potential.hpp"

namespace qc1d {

/// Coercivity of a second variation on the zero-mean subspace:
/// lambda_min = inf { E''[u,u] : ||u'||_{l2_eps} = 1 }.  Note the
/// normalization is the strain norm ||u'||, not ||u||; the two differ by a
/// Poincare factor.
struct StabilityReport {
  double lambda_min;
  bool stable;  // lambda_min > 0
  std::optional<double> analytic_prediction;
  ModelKind model;
  ChainParams params;
  Eigen::VectorXd minimizing_strain;  // ||.||_{l2_eps} = 1
};

/// Orthonormal basis of the sum-zero subspace, i.e. the orthogonal
/// complement of the all-ones vector, as a dim x (dim-1) matrix.
Eigen::MatrixXd sum_zero_basis(int dim);

/// Smallest eigenvalue of the strain matrix restricted to sum-zero strains.
/// Exact constraint handling: project with sum_zero_basis, then run a dense
/// self-adjoint eigensolver.  Throws std::runtime_error on solver failure.
StabilityReport coercivity_eigenvalue(const HessianForm& h);

/// Coercivity eigenvalue of model m at the uniform state y_F, with the
/// closed-form prediction attached where one exists (atomistic, QCL, QNL).
StabilityReport uniform_state_stability(const ModelKind& m, const Potential& p,
                                        const ChainParams& params);

/// mu_eps = 2 sin(pi*eps/2)/eps: the smallest ratio ||u''|| / ||u'|| over
/// zero-mean periodic displacements; tends to pi as eps -> 0.
struct SpectralConstants {
  double mu_eps;
  double eps;
};
SpectralConstants mu_eps(int n_half);
SpectralConstants mu_eps(const ChainParams& params);

/// Sharp uniform-state stability constant of the atomistic model,
/// a_F - eps^2 mu_eps^2 phi''(2F).  Requires phi''(2F) <= 0 (tension side);
/// throws std::domain_error otherwise instead of computing a misleading
/// value.
double atomistic_stability_constant(const Potential& p, double F, const ChainParams& params);

/// Asymptotic upper bound for the coercivity of the QCE Hessian at its own
/// equilibrium branch: phi''_F * min of the two interface test-function
/// values and the bulk modulus ratio, with the O(delta^2) remainder
/// dropped.  Records which branch attains the min.
struct QceBoundReport {
  enum class Branch { InterfaceAtK, InterfaceAtKPlus2, BulkModulus };
  double min_of_three;
  Branch branch;
};
QceBoundReport qce_asymptotic_bound(const Potential& p, double F);

/// Locates the strain where the QCE Hessian at the uniform state y_F loses
/// positive definiteness (bisection of the coercivity eigenvalue over the
/// given bracket) and reports lambda_k = -a_F / phi''(2F) there, the
/// effective next-nearest weight in the criterion a_F + lambda_k phi''(2F) = 0.
struct LambdaKReport {
  double lambda_k;         // in [1/2, 1] for all tested lattices
  double critical_strain;  // zero crossing of the coercivity eigenvalue
};
LambdaKReport qce_uniform_lambda_k(const Potential& p, const ChainParams& params, double bracket_lo,
                                   double bracket_hi);

/// Normalized displacement whose strain is +-sqrt(1/(2 eps)) on one mirror
/// pair of interface elements and zero elsewhere; ||w'||_{l2_eps} = 1.
/// AtK loads elements K and -K+1, AtKPlus2 loads K+2 and -K-1.
enum class InterfaceTestVariant { AtK, AtKPlus2 };
Displacement interface_test_function(const ChainParams& params, InterfaceTestVariant variant);

}  // namespace qc1d
