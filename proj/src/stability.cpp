#include "qc1d/stability.hpp"

#include <cmath>
#include <stdexcept>

#include "qc1d/root_finding.hpp"

namespace qc1d {

Eigen::MatrixXd sum_zero_basis(int dim) {
  // Full Householder Q of the all-ones column; columns 1..dim-1 span its
  // orthogonal complement exactly.
  Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(dim, 1);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(ones);
  Eigen::MatrixXd q = qr.householderQ();
  return q.rightCols(dim - 1);
}

StabilityReport coercivity_eigenvalue(const HessianForm& h) {
  const int m = h.at.params.sites();
  const Eigen::MatrixXd basis = sum_zero_basis(m);
  const Eigen::MatrixXd projected =
      basis.transpose() * h.strain_matrix.selfadjointView<Eigen::Lower>() * basis;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(projected);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("coercivity_eigenvalue: eigensolver failed to converge");

  const double lambda = solver.eigenvalues()[0];
  Eigen::VectorXd strain = basis * solver.eigenvectors().col(0);
  // Normalize to ||e||_{l2_eps} = 1; the eps factors cancel in the Rayleigh
  // quotient, so lambda needs no rescaling.
  strain /= lp_norm(strain, h.at.params.eps(), 2.0);

  return {lambda, lambda > 0.0, std::nullopt, h.model, h.at.params, std::move(strain)};
}

StabilityReport uniform_state_stability(const ModelKind& m, const Potential& p,
                                        const ChainParams& params) {
  const HessianForm h = second_variation(m, Deformation::uniform(params), p);
  StabilityReport report = coercivity_eigenvalue(h);
  const Moduli mod = moduli(p, params.strain);
  switch (m.family) {
    case ModelKind::Family::Atomistic:
      if (mod.phi_pp_2F <= 0.0)
        report.analytic_prediction = atomistic_stability_constant(p, params.strain, params);
      break;
    case ModelKind::Family::Qcl:
    case ModelKind::Family::Qnl:
      report.analytic_prediction = mod.a_F;
      break;
    default:
      break;
  }
  return report;
}

SpectralConstants mu_eps(int n_half) {
  if (n_half < 2) throw std::invalid_argument("mu_eps: n_half must be >= 2");
  const double eps = 1.0 / n_half;
  return {2.0 * std::sin(M_PI * eps / 2.0) / eps, eps};
}

SpectralConstants mu_eps(const ChainParams& params) { return mu_eps(params.n_half); }

double atomistic_stability_constant(const Potential& p, double F, const ChainParams& params) {
  const Moduli m = moduli(p, F);
  if (m.phi_pp_2F > 0.0)
    throw std::domain_error(
        "atomistic_stability_constant: requires phi''(2F) <= 0 (got strain in the compressive "
        "regime F < r_*/2)");
  const double mu = mu_eps(params).mu_eps;
  const double eps = params.eps();
  return m.a_F - eps * eps * mu * mu * m.phi_pp_2F;
}

QceBoundReport qce_asymptotic_bound(const Potential& p, double F) {
  const Moduli m = moduli(p, F);
  if (m.phi_pp_F <= 0.0)
    throw std::domain_error("qce_asymptotic_bound: nearest-neighbor bond not convex at strain " +
                            std::to_string(F));
  const double d = m.phi_pp_2F / m.phi_pp_F;
  const double c = m.phi_ppp_F * m.phi_p_2F / (2.0 * m.phi_pp_F * m.phi_pp_F);
  const double at_k = 1.0 + 3.0 * d + (c - 1.5 * d);         // weak bond next to element K
  const double at_k2 = 1.0 + 3.0 * d - (c - 1.5 * d);        // weak bond next to element K+2
  const double bulk = m.a_F / m.phi_pp_F;

  QceBoundReport report{};
  report.branch = QceBoundReport::Branch::InterfaceAtK;
  double best = at_k;
  if (at_k2 < best) {
    best = at_k2;
    report.branch = QceBoundReport::Branch::InterfaceAtKPlus2;
  }
  if (bulk < best) {
    best = bulk;
    report.branch = QceBoundReport::Branch::BulkModulus;
  }
  report.min_of_three = m.phi_pp_F * best;
  return report;
}

LambdaKReport qce_uniform_lambda_k(const Potential& p, const ChainParams& params, double bracket_lo,
                                   double bracket_hi) {
  const auto lambda_of = [&](double F) {
    return uniform_state_stability(ModelKind::qce(), p, params.with_strain(F)).lambda_min;
  };
  RootResult root = bisect_root(lambda_of, bracket_lo, bracket_hi);
  const Moduli m = moduli(p, root.root);
  if (m.phi_pp_2F >= 0.0)
    throw std::domain_error("qce_uniform_lambda_k: phi''(2F) must be negative near the crossing");
  return {-m.a_F / m.phi_pp_2F, root.root};
}

Displacement interface_test_function(const ChainParams& params, InterfaceTestVariant variant) {
  const int k = params.k_interface;
  const double a = std::sqrt(0.5 / params.eps());
  Eigen::VectorXd strain = Eigen::VectorXd::Zero(params.sites());
  if (variant == InterfaceTestVariant::AtK) {
    strain[params.site_index(k)] = a;
    strain[params.site_index(-k + 1)] = -a;
  } else {
    strain[params.site_index(k + 2)] = a;
    strain[params.site_index(-k - 1)] = -a;
  }
  return strain_to_displacement(StrainVector(params, std::move(strain)));
}

}  // namespace qc1d
