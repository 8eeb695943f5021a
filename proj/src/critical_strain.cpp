#include "qc1d/critical_strain.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qc1d/energy.hpp"
#include "qc1d/equilibrium.hpp"
#include "qc1d/root_finding.hpp"
#include "qc1d/stability.hpp"

namespace qc1d {

namespace {

constexpr double kFoldTol = 1e-8;        // localization of the QCE fold in F
constexpr double kFractureFactor = 10.0;  // max strain > 10 F counts as fractured

CriticalStrainResult pack(double value, StrainKind kind, const Potential& p,
                          std::optional<ChainParams> params, const RootResult& root) {
  return {value, kind, p.id(), std::move(params),
          SolverMeta{root.bracket_lo, root.bracket_hi, root.iterations, root.residual}};
}

// Stability criteria all change sign between F0 and the convexity limit of
// the nearest-neighbor bond; scanning (F0, 3 F0] finds the first crossing.
RootResult stability_root(const Potential& p, const std::function<double(double)>& psi) {
  const double f0 = solve_F0(p).value;
  return scan_and_bisect(psi, f0 * (1.0 + 1e-9), 3.0 * f0);
}

}  // namespace

const char* to_string(StrainKind k) {
  switch (k) {
    case StrainKind::F0: return "F0";
    case StrainKind::FaStar: return "Fa_star";
    case StrainKind::FcStar: return "Fc_star";
    case StrainKind::FtildeQce: return "Ftilde_qce";
    case StrainKind::FqceStar: return "Fqce_star";
    case StrainKind::FqceAtYF: return "Fqce_at_yF";
  }
  return "?";
}

CriticalStrainResult solve_F0(const Potential& p) {
  const auto psi = [&](double f) { return p.derivative(f, 1) + 2.0 * p.derivative(2.0 * f, 1); };
  // The well minimum of both families sits at r = 1; the next-nearest
  // attraction pulls F0 below it.  A scan over (0.4, 1.2] brackets the root.
  RootResult root = scan_and_bisect(psi, 0.4, 1.2);
  return pack(root.root, StrainKind::F0, p, std::nullopt, root);
}

CriticalStrainResult solve_Fc_star(const Potential& p) {
  const auto psi = [&](double f) { return moduli(p, f).a_F; };
  RootResult root = stability_root(p, psi);
  return pack(root.root, StrainKind::FcStar, p, std::nullopt, root);
}

CriticalStrainResult solve_Fa_star(const Potential& p, const ChainParams& params) {
  const double mu = mu_eps(params).mu_eps;
  const double eps = params.eps();
  const auto psi = [&](double f) {
    return p.derivative(f, 2) + (4.0 - eps * eps * mu * mu) * p.derivative(2.0 * f, 2);
  };
  RootResult root = stability_root(p, psi);
  return pack(root.root, StrainKind::FaStar, p, params, root);
}

CriticalStrainResult solve_Ftilde_qce(const Potential& p) {
  const auto psi = [&](double f) {
    const Moduli m = moduli(p, f);
    return m.phi_pp_F + 1.5 * m.phi_pp_2F + m.phi_ppp_F * m.phi_p_2F / (2.0 * m.phi_pp_F);
  };
  // psi has a pole at the convexity limit r_* of the nearest-neighbor bond
  // (division by phi''_F) and tends to -inf just below it whenever the
  // interface correction term is attractive, so (F0, r_*) brackets the root
  // directly.  A grid scan risks stepping over the root/pole pair for stiff
  // potentials, where the two nearly coincide.
  const double f0 = solve_F0(p).value;
  const double lo = f0 * (1.0 + 1e-9);
  const double hi = p.inflection_radius() * (1.0 - 1e-6);
  RootResult root;
  if (hi > lo && psi(lo) > 0.0 && psi(hi) < 0.0) {
    root = bisect_root(psi, lo, hi);
  } else {
    // Degenerate potentials (no next-nearest contribution) keep psi finite
    // through r_*; fall back to the generic scan.
    root = scan_and_bisect(psi, lo, 3.0 * f0, 400);
  }
  return pack(root.root, StrainKind::FtildeQce, p, std::nullopt, root);
}

CriticalStrainResult solve_Fqce_star(const Potential& p, const ChainParams& params) {
  const double f0 = solve_F0(p).value;
  const double fc = solve_Fc_star(p).value;

  EquilibriumBranch branch = solve_qce_equilibrium(p, params.with_strain(f0));
  if (!branch.converged)
    throw std::runtime_error("solve_Fqce_star: no equilibrium at F0 (" +
                             std::string(to_string(branch.status)) + ")");

  // Classification of one strain: corrector from the given predictor, then
  // fracture and coercivity checks on the converged state.
  const auto classify = [&](double f, const Deformation& predictor,
                            EquilibriumBranch& out) -> bool {
    out = newton_solve(p, params.with_strain(f), predictor.with_strain(f));
    if (!out.converged) return false;
    if (out.solution.element_strains().maxCoeff() > kFractureFactor * f) return false;
    const HessianForm h = second_variation(ModelKind::qce(), out.solution, p);
    return coercivity_eigenvalue(h).lambda_min > 0.0;
  };

  double f_lo = f0;                       // last strain with a verified stable solution
  Deformation y_lo = branch.solution;
  double f_hi = std::numeric_limits<double>::quiet_NaN();  // first past-critical strain
  const double df = (fc - f0) / 50.0;
  int probes = 0;

  while (std::isnan(f_hi) || f_hi - f_lo > kFoldTol) {
    const double f_try = std::isnan(f_hi) ? f_lo + df : 0.5 * (f_lo + f_hi);
    EquilibriumBranch probe = branch;
    ++probes;
    if (classify(f_try, y_lo, probe)) {
      f_lo = f_try;
      y_lo = probe.solution;
    } else {
      f_hi = f_try;
    }
    if (probes > 400)
      throw std::runtime_error("solve_Fqce_star: continuation stalled near F = " +
                               std::to_string(f_try));
  }

  RootResult meta{f_lo, 0.0, probes, f_hi - f_lo};
  meta.bracket_lo = f_lo;
  meta.bracket_hi = f_hi;
  return pack(f_lo, StrainKind::FqceStar, p, params, meta);
}

CriticalStrainResult solve_Fqce_at_yF(const Potential& p, const ChainParams& params) {
  const double f0 = solve_F0(p).value;
  const double fc = solve_Fc_star(p).value;
  const LambdaKReport report = qce_uniform_lambda_k(p, params, f0, fc);
  RootResult meta{report.critical_strain, 0.0, 0, 0.0};
  meta.bracket_lo = f0;
  meta.bracket_hi = fc;
  return pack(report.critical_strain, StrainKind::FqceAtYF, p, params, meta);
}

ErrConstant c_err(const Potential& p) {
  const double f0 = solve_F0(p).value;
  const double fc = solve_Fc_star(p).value;
  const double denom = (p.derivative(fc, 3) + 8.0 * p.derivative(2.0 * fc, 3)) * (f0 - fc);
  if (denom == 0.0) throw std::domain_error("c_err: vanishing denominator");
  return {std::abs(M_PI * M_PI * p.derivative(2.0 * fc, 2) / denom), p.id()};
}

std::vector<SweepRow> sweep_alpha(const std::vector<double>& alphas, const ChainParams& params) {
  std::vector<SweepRow> rows;
  rows.reserve(alphas.size());
  for (double alpha : alphas) {
    SweepRow row{};
    row.alpha = alpha;
    row.ok = false;
    try {
      const MorsePotential p(alpha);
      row.f0 = solve_F0(p).value;
      row.fc_star = solve_Fc_star(p).value;
      row.fa_star = solve_Fa_star(p, params).value;
      row.ftilde_qce = solve_Ftilde_qce(p).value;
      row.fqce_star = solve_Fqce_star(p, params).value;
      row.fqce_at_yf = solve_Fqce_at_yF(p, params).value;
      const double span = std::abs(row.fc_star - row.f0);
      row.relerr_qce = std::abs(row.fqce_star - row.fc_star) / span;
      row.relerr_tilde = std::abs(row.ftilde_qce - row.fc_star) / span;
      row.ok = true;
    } catch (const std::exception& e) {
      row.note = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace qc1d
