#include "qc1d/potential.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qc1d {

namespace {

void check_args(double r, int order) {
  if (r <= 0.0) throw std::domain_error("potential: r must be positive, got " + std::to_string(r));
  if (order < 0 || order > 4)
    throw std::domain_error("potential: derivative order must be in 0..4, got " + std::to_string(order));
}

}  // namespace

MorsePotential::MorsePotential(double alpha) : alpha_(alpha) {
  if (alpha < 1.0)
    throw std::invalid_argument("MorsePotential: alpha must be >= 1, got " + std::to_string(alpha));
}

double MorsePotential::derivative(double r, int order) const {
  check_args(r, order);
  const double e2 = std::exp(-2.0 * alpha_ * (r - 1.0));
  const double e1 = std::exp(-alpha_ * (r - 1.0));
  return std::pow(-2.0 * alpha_, order) * e2 - 2.0 * std::pow(-alpha_, order) * e1;
}

double MorsePotential::inflection_radius() const { return 1.0 + std::log(2.0) / alpha_; }

std::string MorsePotential::id() const {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "morse:alpha=%g", alpha_);
  return buf;
}

double LennardJonesPotential::derivative(double r, int order) const {
  check_args(r, order);
  // d^k/dr^k r^-n = (-1)^k n(n+1)...(n+k-1) r^(-n-k)
  static constexpr double c12[5] = {1.0, 12.0, 156.0, 2184.0, 32760.0};
  static constexpr double c6[5] = {1.0, 6.0, 42.0, 336.0, 3024.0};
  const double sign = (order % 2 == 0) ? 1.0 : -1.0;
  return sign * (c12[order] * std::pow(r, -12 - order) - 2.0 * c6[order] * std::pow(r, -6 - order));
}

double LennardJonesPotential::inflection_radius() const { return std::pow(13.0 / 7.0, 1.0 / 6.0); }

std::unique_ptr<Potential> make_potential(std::string_view descriptor) {
  if (descriptor == "lj") return std::make_unique<LennardJonesPotential>();
  constexpr std::string_view prefix = "morse:alpha=";
  if (descriptor.substr(0, prefix.size()) == prefix) {
    const std::string value(descriptor.substr(prefix.size()));
    size_t used = 0;
    double alpha = 0.0;
    try {
      alpha = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty())
      throw std::invalid_argument("make_potential: bad alpha in '" + std::string(descriptor) + "'");
    return std::make_unique<MorsePotential>(alpha);
  }
  throw std::invalid_argument("make_potential: unknown potential '" + std::string(descriptor) +
                              "' (expected 'morse:alpha=<value>' or 'lj')");
}

double cauchy_born(const Potential& p, double r, int order) {
  if (order < 0 || order > 2)
    throw std::domain_error("cauchy_born: derivative order must be in 0..2");
  const double factor = static_cast<double>(1 << order);  // 2^k from the chain rule
  return p.derivative(r, order) + factor * p.derivative(2.0 * r, order);
}

Moduli moduli(const Potential& p, double F) {
  if (F <= 0.0) throw std::domain_error("moduli: strain must be positive");
  Moduli m;
  m.phi_pp_F = p.derivative(F, 2);
  m.phi_pp_2F = p.derivative(2.0 * F, 2);
  m.a_F = m.phi_pp_F + 4.0 * m.phi_pp_2F;
  m.phi_ppp_F = p.derivative(F, 3);
  m.phi_p_2F = p.derivative(2.0 * F, 1);
  m.phi_ppp_2F = p.derivative(2.0 * F, 3);
  return m;
}

DeltaParams deltas(const Potential& p, double F) {
  const Moduli m = moduli(p, F);
  if (m.phi_pp_F <= 0.0)
    throw std::domain_error("deltas: nearest-neighbor bond not convex at strain " + std::to_string(F));
  DeltaParams d;
  d.delta1 = m.phi_p_2F / m.phi_pp_F;
  d.delta2 = -m.phi_pp_2F / m.phi_pp_F;
  d.delta3 = m.phi_ppp_2F / m.phi_pp_F;
  d.delta = std::max({std::abs(d.delta1), std::abs(d.delta2), std::abs(d.delta3)});
  return d;
}

}  // namespace qc1d
