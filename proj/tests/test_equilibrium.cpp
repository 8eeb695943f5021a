#include <doctest.h>

#include <cmath>
#include <random>

#include "qc1d/critical_strain.hpp"
#include "qc1d/equilibrium.hpp"
#include "qc1d/stability.hpp"
#include "support/oracles.hpp"

using namespace qc1d;

namespace {

// Constant-slope potential with zero curvature everywhere: any state has a
// singular Hessian while the interface residual stays nonzero.
class FlatCurvaturePotential final : public Potential {
 public:
  double derivative(double r, int order) const override {
    if (r <= 0.0) throw std::domain_error("r <= 0");
    if (order == 0) return r < 1.5 ? r : 2.0 * r;
    if (order == 1) return r < 1.5 ? 1.0 : 2.0;
    return 0.0;
  }
  double inflection_radius() const override { return 1.5; }
  std::string id() const override { return "flat-curvature-test"; }
};

// Operator norm of (strain matrix - phi''_F * identity) from bounded strain
// profiles into the strain-dual: max over row pairs of half the minimal
// translated l1 distance.
double interface_operator_norm(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  double best = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      Eigen::VectorXd diff = m.row(a) - m.row(b);
      std::vector<double> entries(diff.data(), diff.data() + n);
      std::nth_element(entries.begin(), entries.begin() + n / 2, entries.end());
      const double median = entries[n / 2];
      best = std::max(best, (diff.array() - median).abs().sum() / 2.0);
    }
  }
  return best;
}

}  // namespace

TEST_SUITE_BEGIN("equilibrium");

TEST_CASE("ghost profile shape") {
  const ChainParams params(16, 4, 1.05);
  const StrainVector g = ghost_profile(params);
  const int k = params.k_interface;
  int nonzero = 0;
  for (int i = 0; i < params.sites(); ++i)
    if (g.values()[i] != 0.0) ++nonzero;
  CHECK(nonzero == 4);
  CHECK(g[-k - 1] == -0.5);
  CHECK(g[k + 2] == -0.5);
  CHECK(g[-k + 1] == 0.5);
  CHECK(g[k] == 0.5);
  CHECK(std::abs(g.values().sum()) == 0.0);
  // The strain profile is mirror-symmetric under l -> 1-l; equivalently the
  // underlying displacement is odd about atom 0.
  for (int l = -params.n_half + 1; l <= params.n_half; ++l) CHECK(g[l] == g[1 - l]);
  const Displacement ghat = ghost_displacement(params);
  CHECK(std::abs(ghat[0]) <= 1e-14);
  CHECK(std::abs(ghat[params.n_half]) <= 1e-14);
  for (int l = 1; l < params.n_half; ++l)
    CHECK(ghat[-l] == doctest::Approx(-ghat[l]).epsilon(1e-13).scale(1.0));
}

TEST_CASE("ghost force equals the assembled QCE first variation at y_F") {
  const MorsePotential p(5.0);
  for (const auto& [n, k] : std::vector<std::pair<int, int>>{{8, 2}, {40, 10}}) {
    const ChainParams params(n, k, 1.07);
    const FirstVariation gf = ghost_force(p, params);
    const Eigen::VectorXd assembled =
        first_variation(ModelKind::qce(), Deformation::uniform(params), p).centered();
    CHECK((gf.coefficients - assembled).cwiseAbs().maxCoeff() <=
          1e-14 * std::max(1.0, assembled.cwiseAbs().maxCoeff()));
  }

  // Functional sign convention: ghost_force + phi'(2F) <g_hat', .> = 0.
  const ChainParams params(16, 4, 1.07);
  const FirstVariation gf = ghost_force(p, params);
  const double phi_p = p.derivative(2.0 * params.strain, 1);
  const Eigen::VectorXd ghat = ghost_profile(params).values();
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 5; ++trial) {
    const Displacement u = qc1d::testing::random_admissible(params, rng);
    const double lhs = gf.apply(u);
    const double rhs =
        -phi_p * inner_product(ghat, backward_difference(u).values(), params.eps());
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13).scale(1.0));
  }

  // Pairing with the profile's own displacement: -phi'(2F) <g_hat', g_hat'>
  // with <g_hat', g_hat'> = eps (four entries of +-1/2).
  CHECK(gf.apply(ghost_displacement(params)) ==
        doctest::Approx(-phi_p * params.eps()).epsilon(1e-13));

  // The ghost force vanishes where phi'(2F) does (2F at the well minimum).
  const ChainParams half(16, 4, 0.5);
  CHECK(ghost_force(p, half).dual_norm() == 0.0);
  CHECK(first_variation(ModelKind::qce(), Deformation::uniform(half), p).dual_norm() <= 1e-14);
}

TEST_CASE("first-order corrected state") {
  const MorsePotential p(5.0);
  const ChainParams params(16, 4, 1.07);
  const double d1 = deltas(p, params.strain).delta1;
  const Deformation yhat = approx_equilibrium(p, params);
  const Eigen::VectorXd s = yhat.element_strains();
  const int k = params.k_interface;
  const double f = params.strain;
  for (int l = -params.n_half + 1; l <= params.n_half; ++l) {
    double expected = f;
    if (l == -k - 1 || l == k + 2) expected = f - 0.5 * d1;
    if (l == -k + 1 || l == k) expected = f + 0.5 * d1;
    CHECK(s[params.site_index(l)] == doctest::Approx(expected).epsilon(1e-14));
  }

  // Defining linear system, checked by direct substitution.
  const Moduli mod = moduli(p, f);
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 5; ++trial) {
    const Displacement u = qc1d::testing::random_admissible(params, rng);
    const Eigen::VectorXd du = backward_difference(u).values();
    const Eigen::VectorXd dy = backward_difference(yhat.perturbation).values();
    const double lhs = mod.phi_pp_F * inner_product(dy, du, params.eps());
    const double rhs =
        mod.phi_p_2F * inner_product(ghost_profile(params).values(), du, params.eps());
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12).scale(1.0));
  }

  // Zero correction when phi'(2F) = 0.
  const ChainParams half(16, 4, 0.5);
  CHECK(approx_equilibrium(p, half).perturbation.values().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("newton solve: convergence, symmetry, quadratic tail") {
  const MorsePotential p(5.0);
  const double f0 = solve_F0(p).value;
  const ChainParams params(40, 10, f0);
  const EquilibriumBranch branch = solve_qce_equilibrium(p, params);
  REQUIRE(branch.converged);
  CHECK(branch.status == SolveStatus::Converged);
  CHECK(branch.residual_norm <= 1e-12);
  CHECK(first_variation(ModelKind::qce(), branch.solution, p).dual_norm() <= 1e-12);

  // Solution stays close to the first-order corrected state.
  const DeltaParams d = deltas(p, f0);
  const Eigen::VectorXd gap =
      branch.solution.element_strains() - approx_equilibrium(p, params).element_strains();
  CHECK(gap.cwiseAbs().maxCoeff() <= 10.0 * (d.delta1 * d.delta1 + d.delta1 * d.delta2));

  // Mirror symmetry of the solved strains: s_l = s_{1-l}.
  const Eigen::VectorXd s = branch.solution.element_strains();
  for (int l = -params.n_half + 1; l <= params.n_half; ++l)
    CHECK(s[params.site_index(l)] ==
          doctest::Approx(s[params.site_index(1 - l)]).epsilon(1e-11));

  // Quadratic tail: each late residual is at most the square of its
  // predecessor up to a bounded factor.
  const auto& hist = branch.residual_history;
  REQUIRE(hist.size() >= 3);
  for (size_t i = 1; i + 1 < hist.size(); ++i)
    if (hist[i] < 1e-4) CHECK(hist[i + 1] <= 100.0 * hist[i] * hist[i] + 1e-15);

  // Uniform state solves the problem when the ghost coefficient vanishes.
  const ChainParams half(16, 4, 0.5);
  const EquilibriumBranch trivial = newton_solve(p, half, Deformation::uniform(half));
  CHECK(trivial.converged);
  CHECK(trivial.newton_iterations == 0);
  CHECK(trivial.solution.perturbation.values().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("newton solve failure modes are distinguishable") {
  const MorsePotential p(5.0);
  const ChainParams params(40, 10, 1.0);

  // Inadmissible initial state is rejected immediately.
  Eigen::VectorXd bad = Eigen::VectorXd::Zero(params.sites());
  bad[10] = 10.0;
  bad[11] = -10.0;
  const EquilibriumBranch inadmissible =
      newton_solve(p, params, Deformation(params, Displacement(params, bad)));
  CHECK_FALSE(inadmissible.converged);
  CHECK(inadmissible.status == SolveStatus::InadmissibleIterate);

  // Zero curvature with nonzero residual: singular Hessian.
  const FlatCurvaturePotential flat;
  const EquilibriumBranch singular =
      newton_solve(flat, params, Deformation::uniform(params));
  CHECK_FALSE(singular.converged);
  CHECK(singular.status == SolveStatus::SingularHessian);

  // Past the fold no elastic solution exists; the corrector reports failure
  // rather than inventing one.
  const double fc = solve_Fc_star(p).value;
  const EquilibriumBranch past = solve_qce_equilibrium(p, params.with_strain(0.999 * fc));
  CHECK_FALSE(past.converged);
  CHECK(past.status != SolveStatus::Converged);
}

TEST_CASE("correction error is stable under period refinement") {
  // The interface correction itself does not see N; the zero-mean constraint
  // adds a uniform O(1/N) background, so the l-inf error drifts by well
  // under a percent between N = 40 and N = 100 (measured ~0.2%) and the
  // far-field strain deviation halves when N doubles.
  const MorsePotential p(4.0);
  const double f0 = solve_F0(p).value;
  double errors[2], far[2];
  int idx = 0;
  for (int n : {40, 100}) {
    const ChainParams params(n, 10, f0);
    const EquilibriumBranch branch = solve_qce_equilibrium(p, params);
    REQUIRE(branch.converged);
    errors[idx] = (branch.solution.element_strains().array() -
                   approx_equilibrium(p, params).element_strains().array())
                      .abs()
                      .maxCoeff();
    far[idx] = std::abs(branch.solution.element_strains()[params.site_index(n)] - f0);
    ++idx;
  }
  CHECK(std::abs(errors[0] - errors[1]) <= 0.01 * errors[0]);
  CHECK(far[0] / far[1] == doctest::Approx(100.0 / 40.0).epsilon(0.05));
}

TEST_CASE("scaling study: slope near one, error decreasing in stiffness") {
  const ChainParams params(40, 10, 1.0);
  const ScalingStudy study = lemma_scaling_study({3, 4, 5, 6, 7, 8}, params);
  REQUIRE(study.rows.size() == 6);
  double previous = std::numeric_limits<double>::infinity();
  for (const ScalingRow& row : study.rows) {
    REQUIRE(row.ok);
    CHECK(row.error < previous);
    previous = row.error;
  }
  CHECK(study.fitted_slope >= 0.9);
  CHECK(study.fitted_slope <= 1.1);

  // Rows that cannot be built are flagged, not fatal.
  const ScalingStudy flagged = lemma_scaling_study({0.5, 5.0}, params);
  CHECK_FALSE(flagged.rows[0].ok);
  CHECK(flagged.rows[1].ok);
}

TEST_CASE("corrected-state Hessian stays near phi''_F times the strain metric") {
  // Dual operator-norm distance is O(delta): slope fit over the stiffness
  // grid, plus the sharp 5*delta2 bound at the uniform state.
  std::vector<double> log_delta, log_norm;
  for (double alpha : {3.0, 4.0, 5.0, 6.0, 7.0}) {
    const MorsePotential p(alpha);
    const double f0 = solve_F0(p).value;
    const ChainParams params(16, 4, f0);
    const Moduli mod = moduli(p, f0);
    const DeltaParams d = deltas(p, f0);

    const HessianForm at_hat = second_variation(ModelKind::qce(), approx_equilibrium(p, params), p);
    const int m = params.sites();
    const double norm_hat = interface_operator_norm(
        at_hat.strain_matrix - mod.phi_pp_F * Eigen::MatrixXd::Identity(m, m));
    log_delta.push_back(std::log(d.delta));
    log_norm.push_back(std::log(norm_hat / mod.phi_pp_F));

    const HessianForm at_uniform =
        second_variation(ModelKind::qce(), Deformation::uniform(params), p);
    const double norm_uniform = interface_operator_norm(
        at_uniform.strain_matrix - mod.phi_pp_F * Eigen::MatrixXd::Identity(m, m));
    CHECK(norm_uniform <= 5.0 * d.delta2 * mod.phi_pp_F * (1.0 + 1e-9));
  }
  const int n = static_cast<int>(log_delta.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sx += log_delta[i];
    sy += log_norm[i];
    sxx += log_delta[i] * log_delta[i];
    sxy += log_delta[i] * log_norm[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope >= 0.9);
}

TEST_SUITE_END();
