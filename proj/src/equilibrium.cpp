#include "qc1d/equilibrium.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qc1d/critical_strain.hpp"
#include "qc1d/stability.hpp"

namespace qc1d {

StrainVector ghost_profile(const ChainParams& params) {
  const int k = params.k_interface;
  Eigen::VectorXd g = Eigen::VectorXd::Zero(params.sites());
  g[params.site_index(-k - 1)] = -0.5;
  g[params.site_index(k + 2)] = -0.5;
  g[params.site_index(-k + 1)] = 0.5;
  g[params.site_index(k)] = 0.5;
  return StrainVector(params, std::move(g));
}

Displacement ghost_displacement(const ChainParams& params) {
  return strain_to_displacement(ghost_profile(params));
}

FirstVariation ghost_force(const Potential& p, const ChainParams& params) {
  const double phi_p_2F = p.derivative(2.0 * params.strain, 1);
  Eigen::VectorXd g = -phi_p_2F * ghost_profile(params).values();
  return {params, std::move(g)};
}

Deformation approx_equilibrium(const Potential& p, const ChainParams& params) {
  const double delta1 = deltas(p, params.strain).delta1;
  const Displacement ghat = ghost_displacement(params);
  return Deformation(params, Displacement(params, delta1 * ghat.values()));
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIterations: return "max-iterations";
    case SolveStatus::SingularHessian: return "singular-hessian";
    case SolveStatus::InadmissibleIterate: return "inadmissible-iterate";
  }
  return "?";
}

EquilibriumBranch newton_solve(const Potential& p, const ChainParams& params,
                               const Deformation& initial, const NewtonOptions& options) {
  if (!params.same_lattice(initial.params))
    throw std::invalid_argument("newton_solve: initial guess lives on a different lattice");

  const int m = params.sites();
  const double eps = params.eps();
  const double F = params.strain;
  const Eigen::MatrixXd basis = sum_zero_basis(m);
  const ModelKind model = ModelKind::qce();

  // Work on the perturbation strain e = u'; element strains are F + e.
  Eigen::VectorXd e = backward_difference(initial.perturbation.values(), eps);
  e.array() += initial.strain() - F;  // rebase if the guess carried another strain

  const auto make_state = [&](const Eigen::VectorXd& strain) {
    return Deformation(params,
                       strain_to_displacement(StrainVector(params, strain - Eigen::VectorXd::Constant(
                                                                        m, strain.mean()))));
  };
  const auto admissible = [&](const Eigen::VectorXd& strain) {
    for (int i = 0; i < m; ++i) {
      const double a = F + strain[i];
      const double b = 2.0 * F + strain[i] + strain[(i + 1) % m];
      if (!(a > options.strain_guard && b > options.strain_guard)) return false;
    }
    return true;
  };

  std::vector<double> history;
  auto fail = [&](SolveStatus status, double residual, int iterations) {
    return EquilibriumBranch{make_state(e), residual, iterations, false, status, history};
  };

  if (!admissible(e)) return fail(SolveStatus::InadmissibleIterate, 0.0, 0);

  for (int it = 0; it < options.max_iterations; ++it) {
    const Deformation y = make_state(e);
    const FirstVariation g = first_variation(model, y, p);
    const double residual = g.dual_norm();
    history.push_back(residual);
    if (residual <= options.residual_tol)
      return {y, residual, it, true, SolveStatus::Converged, history};

    const HessianForm h = second_variation(model, y, p);
    const Eigen::MatrixXd projected = basis.transpose() * h.strain_matrix * basis;
    const Eigen::VectorXd rhs = -basis.transpose() * g.centered();

    Eigen::LDLT<Eigen::MatrixXd> ldlt(projected);
    Eigen::VectorXd coeffs =
        ldlt.info() == Eigen::Success ? ldlt.solve(rhs).eval() : Eigen::VectorXd();
    const bool solve_bad = coeffs.size() == 0 || !coeffs.allFinite() ||
                           (projected * coeffs - rhs).cwiseAbs().maxCoeff() >
                               1e-6 * std::max(1.0, rhs.cwiseAbs().maxCoeff());
    if (solve_bad) {
      // Confirm against the spectrum before reporting singularity.
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(projected, Eigen::EigenvaluesOnly);
      if (es.info() == Eigen::Success &&
          es.eigenvalues().cwiseAbs().minCoeff() < options.singular_tol)
        return fail(SolveStatus::SingularHessian, residual, it);
      if (coeffs.size() == 0 || !coeffs.allFinite())
        return fail(SolveStatus::SingularHessian, residual, it);
    }

    Eigen::VectorXd step = basis * coeffs;
    double t = 1.0;
    int halvings = 0;
    while (halvings < options.max_step_halvings && !admissible(e + t * step)) {
      t *= 0.5;
      ++halvings;
    }
    if (!admissible(e + t * step)) return fail(SolveStatus::InadmissibleIterate, residual, it);
    e += t * step;

    // Once the accepted step drops below step_tol the iteration cannot move
    // further; evaluate the residual at the new point and report stagnation
    // if the tolerance is still not met.
    if ((t * step.array()).abs().maxCoeff() <= options.step_tol) {
      const Deformation yf = make_state(e);
      const double r = first_variation(model, yf, p).dual_norm();
      history.push_back(r);
      const bool ok = r <= options.residual_tol;
      return {yf, r, it + 1, ok, ok ? SolveStatus::Converged : SolveStatus::MaxIterations, history};
    }
  }

  const Deformation y = make_state(e);
  const double r = first_variation(model, y, p).dual_norm();
  return {y, r, options.max_iterations, false, SolveStatus::MaxIterations, history};
}

EquilibriumBranch solve_qce_equilibrium(const Potential& p, const ChainParams& params,
                                        const NewtonOptions& options) {
  return newton_solve(p, params, approx_equilibrium(p, params), options);
}

ScalingStudy lemma_scaling_study(const std::vector<double>& alphas, const ChainParams& params,
                                 std::optional<double> fixed_strain) {
  ScalingStudy study;
  std::vector<double> xs, ys;
  for (double alpha : alphas) {
    ScalingRow row{alpha, 0.0, 0.0, 0.0, 0.0, false};
    try {
      const MorsePotential p(alpha);
      row.strain = fixed_strain ? *fixed_strain : solve_F0(p).value;
      const ChainParams at = params.with_strain(row.strain);
      const DeltaParams d = deltas(p, row.strain);
      row.delta1 = d.delta1;
      row.delta2 = d.delta2;
      const Deformation yhat = approx_equilibrium(p, at);
      const EquilibriumBranch branch = newton_solve(p, at, yhat);
      if (branch.converged) {
        const Eigen::VectorXd diff =
            branch.solution.element_strains() - yhat.element_strains();
        row.error = diff.cwiseAbs().maxCoeff();
        row.ok = true;
        xs.push_back(std::log(row.delta1 * row.delta1 + row.delta1 * row.delta2));
        ys.push_back(std::log(row.error));
      }
    } catch (const std::exception&) {
      row.ok = false;
    }
    study.rows.push_back(row);
  }

  // Least-squares slope of log(error) against log(delta1^2 + delta1*delta2).
  study.fitted_slope = std::numeric_limits<double>::quiet_NaN();
  const int n = static_cast<int>(xs.size());
  if (n >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    study.fitted_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return study;
}

}  // namespace qc1d
