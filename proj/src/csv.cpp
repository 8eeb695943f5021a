#include "qc1d/csv.hpp"

#include <cstdio>
#include <stdexcept>
#include <limits>
#include <sstream>

namespace qc1d {

std::string format_full(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string table_cerr_csv(const std::vector<std::string>& potential_descriptors) {
  std::ostringstream out;
  out << "potential,c_err\n";
  for (const auto& descriptor : potential_descriptors) {
    const auto p = make_potential(descriptor);
    try {
      out << p->id() << ',' << format_full(c_err(*p).value) << '\n';
    } catch (const std::exception& e) {
      throw std::runtime_error("row '" + p->id() + "': " + e.what());
    }
  }
  return out.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "alpha,F0,Fc_star,Fa_star,Ftilde_qce,Fqce_star,Fqce_at_yF,relerr_qce,relerr_tilde\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& r : rows) {
    out << format_full(r.alpha);
    for (double v : {r.f0, r.fc_star, r.fa_star, r.ftilde_qce, r.fqce_star, r.fqce_at_yf,
                     r.relerr_qce, r.relerr_tilde})
      out << ',' << format_full(r.ok ? v : nan);
    out << '\n';
  }
  return out.str();
}

std::string critical_strains_csv(const Potential& p, const ChainParams& params) {
  std::ostringstream out;
  out << "quantity,value\n";
  out << "F0," << format_full(solve_F0(p).value) << '\n';
  out << "Fc_star," << format_full(solve_Fc_star(p).value) << '\n';
  out << "Fa_star," << format_full(solve_Fa_star(p, params).value) << '\n';
  out << "Ftilde_qce," << format_full(solve_Ftilde_qce(p).value) << '\n';
  out << "Fqce_star," << format_full(solve_Fqce_star(p, params).value) << '\n';
  out << "Fqce_at_yF," << format_full(solve_Fqce_at_yF(p, params).value) << '\n';
  return out.str();
}

std::string lemma_scaling_csv(const ScalingStudy& study) {
  std::ostringstream out;
  out << "alpha,strain,delta1,delta2,error\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& r : study.rows) {
    out << format_full(r.alpha) << ',' << format_full(r.strain) << ',' << format_full(r.delta1)
        << ',' << format_full(r.delta2) << ',' << format_full(r.ok ? r.error : nan) << '\n';
  }
  return out.str();
}

}  // namespace qc1d
