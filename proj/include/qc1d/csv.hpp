#pragma once

#include <string>
#include <vector>

#include "qc1d/critical_strain.hpp"
#include "qc1d/equilibrium.hpp"

namespace qc1d {

/// Full round-trip formatting (17 significant digits) so that golden CSV
/// files stay byte-stable across runs.
std::string format_full(double value);

/// Header "potential,c_err"; one row per descriptor.
std::string table_cerr_csv(const std::vector<std::string>& potential_descriptors);

/// Header "alpha,F0,Fc_star,Fa_star,Ftilde_qce,Fqce_star,Fqce_at_yF,relerr_qce,relerr_tilde".
/// Failed rows emit "nan" fields; row order follows the input.
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Header "quantity,value": the six critical strains of one potential.
std::string critical_strains_csv(const Potential& p, const ChainParams& params);

/// Header "alpha,strain,delta1,delta2,error".
std::string lemma_scaling_csv(const ScalingStudy& study);

}  // namespace qc1d
