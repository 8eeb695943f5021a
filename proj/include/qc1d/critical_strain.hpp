#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qc1d/chain.hpp"
#include "qc1d/potential.hpp"

namespace qc1d {

/// The six critical strains of the chain models.  F0, FcStar and FtildeQce
/// are lattice-independent; the others depend on (N, K).
enum class StrainKind {
  F0,         // energy-minimizing macroscopic strain: phi'(F) + 2 phi'(2F) = 0
  FaStar,     // atomistic stability limit: phi''(F) + (4 - eps^2 mu^2) phi''(2F) = 0
  FcStar,     // QCL/QNL stability limit: a_F = 0
  FtildeQce,  // asymptotic QCE prediction: phi''_F + 3/2 phi''_2F + phi'''_F phi'_2F/(2 phi''_F) = 0
  FqceStar,   // fold of the stable elastic QCE branch (numerical continuation)
  FqceAtYF,   // loss of positive definiteness of the QCE Hessian at the uniform state
};
const char* to_string(StrainKind k);

struct SolverMeta {
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

struct CriticalStrainResult {
  double value;
  StrainKind kind;
  std::string potential_id;
  std::optional<ChainParams> params;  // absent for lattice-independent kinds
  SolverMeta meta;
};

CriticalStrainResult solve_F0(const Potential& p);
CriticalStrainResult solve_Fc_star(const Potential& p);
CriticalStrainResult solve_Fa_star(const Potential& p, const ChainParams& params);
CriticalStrainResult solve_Ftilde_qce(const Potential& p);

/// Maximal strain carrying a stable elastic QCE equilibrium: continuation
/// in F from F0 (predictor: previous solution, corrector: Newton), with an
/// iterate classified past-critical when the corrector fails, the solution
/// fractures (max strain > 10 F) or its coercivity eigenvalue drops to or
/// below zero; the stable/unstable boundary is then bisected to 1e-8.
/// Throws std::runtime_error with diagnostics if no bracket can be set up.
CriticalStrainResult solve_Fqce_star(const Potential& p, const ChainParams& params);

/// Zero crossing in F of the coercivity eigenvalue of the QCE Hessian at
/// the uniform state y_F.  Since the dead-load correction is linear, this
/// is also the stability limit of the corrected (gfc) energy at y_F.
CriticalStrainResult solve_Fqce_at_yF(const Potential& p, const ChainParams& params);

/// Leading relative-error constant between the atomistic and QCL/QNL
/// critical strains:
///   C_err = | pi^2 phi''(2Fc) / ((phi'''(Fc) + 8 phi'''(2Fc)) (F0 - Fc)) |.
struct ErrConstant {
  double value;
  std::string potential_id;
};
ErrConstant c_err(const Potential& p);

/// One row of the Morse stiffness sweep; relerr_qce and relerr_tilde are
/// |F - Fc*| / |Fc* - F0| for F = Fqce* and F = Ftilde respectively.
struct SweepRow {
  double alpha;
  double f0;
  double fc_star;
  double fa_star;
  double ftilde_qce;
  double fqce_star;
  double fqce_at_yf;
  double relerr_qce;
  double relerr_tilde;
  bool ok;
  std::string note;
};

/// Per-alpha rows are independent; a failed row is flagged in `note` and
/// the sweep continues.
std::vector<SweepRow> sweep_alpha(const std::vector<double>& alphas, const ChainParams& params);

}  // namespace qc1d
