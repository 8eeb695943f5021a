#include "qc1d/verify.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <sstream>

#include "qc1d/critical_strain.hpp"
#include "qc1d/energy.hpp"
#include "qc1d/equilibrium.hpp"
#include "qc1d/stability.hpp"

namespace qc1d {

namespace {

struct Suite {
  std::vector<CheckResult> results;
  void record(const std::string& group, const std::string& name, bool passed, double measured,
              double bound) {
    std::ostringstream detail;
    detail << "measured " << measured << " vs bound " << bound;
    results.push_back({group, name, passed, detail.str()});
  }
};

Displacement random_admissible(const ChainParams& params, std::mt19937_64& rng,
                               double strain_fraction = 0.15) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd u(params.sites());
  for (int i = 0; i < params.sites(); ++i) u[i] = dist(rng);
  Displacement d(params, u);
  const double reach = backward_difference(d).values().cwiseAbs().maxCoeff();
  const double scale = reach > 0 ? strain_fraction * params.strain / reach : 0.0;
  return Displacement(params, scale * d.values());
}

// Site-basis Hessian eps * D^T M D, where D is the backward difference map.
Eigen::MatrixXd site_hessian(const HessianForm& h) {
  const int m = h.at.params.sites();
  const double eps = h.at.params.eps();
  Eigen::MatrixXd diff = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    diff(i, i) = 1.0 / eps;
    diff(i, (i + m - 1) % m) = -1.0 / eps;
  }
  return eps * diff.transpose() * h.strain_matrix * diff;
}

void check_finite_differences(Suite& suite, const ModelKind& model, const Potential& p,
                              const ChainParams& params, std::mt19937_64& rng, int samples) {
  const double h = 1e-5;
  double worst_grad = 0.0, worst_hess = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Deformation y(params, random_admissible(params, rng));
    const int m = params.sites();

    const Eigen::VectorXd grad = site_gradient(first_variation(model, y, p));
    Eigen::VectorXd grad_fd(m);
    for (int i = 0; i < m; ++i) {
      Eigen::VectorXd up = y.perturbation.values();
      up[i] += h;
      Eigen::VectorXd dn = y.perturbation.values();
      dn[i] -= h;
      // Bypass the mean-shift: a single-site bump changes only two strains,
      // and the energy is translation invariant anyway.
      const double ep = energy(model, Deformation(params, Displacement(params, up)), p);
      const double em = energy(model, Deformation(params, Displacement(params, dn)), p);
      grad_fd[i] = (ep - em) / (2.0 * h);
    }
    const double gscale = std::max(1.0, grad.cwiseAbs().maxCoeff());
    worst_grad = std::max(worst_grad, (grad - grad_fd).cwiseAbs().maxCoeff() / gscale);

    const Eigen::MatrixXd hess = site_hessian(second_variation(model, y, p));
    Eigen::MatrixXd hess_fd(m, m);
    for (int i = 0; i < m; ++i) {
      Eigen::VectorXd up = y.perturbation.values();
      up[i] += h;
      Eigen::VectorXd dn = y.perturbation.values();
      dn[i] -= h;
      const Eigen::VectorXd gp =
          site_gradient(first_variation(model, Deformation(params, Displacement(params, up)), p));
      const Eigen::VectorXd gm =
          site_gradient(first_variation(model, Deformation(params, Displacement(params, dn)), p));
      hess_fd.col(i) = (gp - gm) / (2.0 * h);
    }
    const double hscale = std::max(1.0, hess.cwiseAbs().maxCoeff());
    worst_hess = std::max(worst_hess, (hess - hess_fd).cwiseAbs().maxCoeff() / hscale);
  }
  suite.record("fd", model.name() + " gradient", worst_grad <= 1e-6, worst_grad, 1e-6);
  suite.record("fd", model.name() + " hessian", worst_hess <= 1e-5, worst_hess, 1e-5);
}

void run_fd(Suite& suite, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const MorsePotential p(5.0);
  const ChainParams params(8, 2, 1.02);
  for (const ModelKind& model :
       {ModelKind::atomistic(), ModelKind::qcl(), ModelKind::qce(), ModelKind::qnl(),
        ModelKind::gfc(params.strain)})
    check_finite_differences(suite, model, p, params, rng, 5);
}

void run_prop31(Suite& suite) {
  const MorsePotential p(5.0);
  const double f0 = solve_F0(p).value;
  for (int n : {8, 16, 40}) {
    const ChainParams base(n, 2, 1.0);
    const double fa = solve_Fa_star(p, base).value;
    double worst = 0.0;
    for (int j = 1; j <= 10; ++j) {
      const double f = f0 + j * (fa - f0) / 11.0;
      const ChainParams params(n, 2, f);
      const StabilityReport r = uniform_state_stability(ModelKind::atomistic(), p, params);
      worst = std::max(worst, std::abs(r.lambda_min - *r.analytic_prediction) /
                                  std::abs(moduli(p, f).a_F));
    }
    suite.record("prop31", "atomistic identity N=" + std::to_string(n), worst <= 1e-9, worst, 1e-9);
  }
}

void run_prop32(Suite& suite) {
  const MorsePotential p(5.0);
  const double f0 = solve_F0(p).value;
  const double fc = solve_Fc_star(p).value;
  double worst = 0.0;
  for (int j = 1; j <= 10; ++j) {
    const double f = f0 + j * 0.9 * (fc - f0) / 10.0;
    const ChainParams params(16, 4, f);
    const StabilityReport r = uniform_state_stability(ModelKind::qcl(), p, params);
    worst = std::max(worst, std::abs(r.lambda_min - *r.analytic_prediction));
  }
  suite.record("prop32", "qcl eigenvalue equals a_F", worst <= 1e-10, worst, 1e-10);
}

void run_prop33(Suite& suite) {
  const MorsePotential p(5.0);
  const double f0 = solve_F0(p).value;
  const double fc = solve_Fc_star(p).value;
  double worst = 0.0;
  bool signs = true;
  for (int j = 1; j <= 12; ++j) {
    const double f = f0 + j * (1.1 * (fc - f0)) / 12.0;  // straddles the crossing
    const ChainParams params(16, 4, f);
    const StabilityReport r = uniform_state_stability(ModelKind::qnl(), p, params);
    const double a_f = moduli(p, f).a_F;
    worst = std::max(worst, std::abs(r.lambda_min - a_f));
    if (std::abs(a_f) > 1e-9 && (r.lambda_min > 0) != (a_f > 0)) signs = false;
  }
  suite.record("prop33", "qnl eigenvalue tracks a_F", signs && worst <= 1e-8, worst, 1e-8);
}

void run_ghost(Suite& suite) {
  const MorsePotential p(5.0);
  for (auto [n, k] : {std::pair{8, 2}, {40, 10}, {100, 20}}) {
    const ChainParams params(n, k, 1.05);
    const Eigen::VectorXd assembled =
        first_variation(ModelKind::qce(), Deformation::uniform(params), p).centered();
    const Eigen::VectorXd predicted = ghost_force(p, params).coefficients;
    const double err = (assembled - predicted).cwiseAbs().maxCoeff();
    const double bound = 1e-13 * std::max(1.0, predicted.cwiseAbs().maxCoeff());
    suite.record("ghost", "ghost force N=" + std::to_string(n), err <= bound, err, bound);
  }
}

void run_lambdak(Suite& suite) {
  const MorsePotential p(5.0);
  const double f0 = solve_F0(p).value;
  const double fc = solve_Fc_star(p).value;
  for (auto [n, k] : {std::pair{16, 4}, {40, 10}}) {
    const ChainParams params(n, k, 1.0);
    const LambdaKReport r = qce_uniform_lambda_k(p, params, f0, fc);
    const bool ok = r.lambda_k >= 0.5 && r.lambda_k <= 1.0;
    suite.record("lambdak", "lambda_K N=" + std::to_string(n), ok, r.lambda_k, 1.0);
  }
}

void run_mueps(Suite& suite) {
  double worst = 0.0;
  for (int n : {8, 16, 40}) {
    const double eps = 1.0 / n;
    const int m = 2 * n;
    // Brute force: smallest ||forward difference of e|| / ||e|| over
    // sum-zero strains, via the projected difference operator.
    Eigen::MatrixXd diff = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      diff(i, i) = -1.0 / eps;
      diff(i, (i + 1) % m) = 1.0 / eps;
    }
    const Eigen::MatrixXd basis = sum_zero_basis(m);
    const Eigen::MatrixXd projected = basis.transpose() * diff.transpose() * diff * basis;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(projected, Eigen::EigenvaluesOnly);
    const double brute = std::sqrt(solver.eigenvalues()[0]);
    worst = std::max(worst, std::abs(brute - mu_eps(n).mu_eps));
  }
  suite.record("mueps", "formula vs eigen-oracle", worst <= 1e-10, worst, 1e-10);
}

}  // namespace

std::vector<CheckResult> run_verification(const std::string& group_filter, std::uint64_t seed) {
  Suite suite;
  const auto wants = [&](const char* group) {
    return group_filter.empty() || group_filter == "all" || group_filter == group;
  };
  if (wants("fd")) run_fd(suite, seed);
  if (wants("prop31")) run_prop31(suite);
  if (wants("prop32")) run_prop32(suite);
  if (wants("prop33")) run_prop33(suite);
  if (wants("ghost")) run_ghost(suite);
  if (wants("lambdak")) run_lambdak(suite);
  if (wants("mueps")) run_mueps(suite);
  return suite.results;
}

}  // namespace qc1d
