#include "qc1d/chain.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qc1d {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

ChainParams::ChainParams(int n, int k, double f) : n_half(n), k_interface(k), strain(f) {
  // N >= 8 and 2 <= K <= N-4 keep the interface stencils (which touch
  // elements +-(K+2)) disjoint from their mirror images and from the wrap.
  require(n >= 8, "ChainParams: n_half must be >= 8, got " + std::to_string(n));
  require(k >= 2 && k <= n - 4,
          "ChainParams: k_interface must satisfy 2 <= K <= N-4, got K=" + std::to_string(k) +
              " with N=" + std::to_string(n));
  require(f > 0.0, "ChainParams: strain must be positive, got " + std::to_string(f));
}

Displacement::Displacement(ChainParams params, Eigen::VectorXd site_values)
    : params_(params), values_(std::move(site_values)) {
  require(values_.size() == params_.sites(),
          "Displacement: expected " + std::to_string(params_.sites()) + " site values, got " +
              std::to_string(values_.size()));
  removed_mean_ = values_.mean();
  values_.array() -= removed_mean_;
}

Displacement Displacement::zero(const ChainParams& params) {
  return Displacement(params, Eigen::VectorXd::Zero(params.sites()));
}

StrainVector::StrainVector(ChainParams params, Eigen::VectorXd values)
    : params_(params), values_(std::move(values)) {
  require(values_.size() == params_.sites(),
          "StrainVector: expected " + std::to_string(params_.sites()) + " values, got " +
              std::to_string(values_.size()));
  const double scale = values_.cwiseAbs().maxCoeff();
  const double tol = 1e-12 * std::max(scale, 1.0);
  require(std::abs(values_.sum()) <= tol, "StrainVector: entries must sum to zero");
}

Deformation::Deformation(ChainParams p, Displacement u) : params(p), perturbation(std::move(u)) {
  require(params.same_lattice(perturbation.params()),
          "Deformation: perturbation lives on a different lattice");
}

Deformation Deformation::uniform(const ChainParams& params) {
  return Deformation(params, Displacement::zero(params));
}

Eigen::VectorXd Deformation::element_strains() const {
  Eigen::VectorXd e = backward_difference(perturbation.values(), params.eps());
  e.array() += params.strain;
  return e;
}

Eigen::VectorXd Deformation::site_positions() const {
  const int m = params.sites();
  Eigen::VectorXd y(m);
  for (int i = 0; i < m; ++i)
    y[i] = params.strain * params.site_label(i) * params.eps() + perturbation.values()[i];
  return y;
}

Deformation Deformation::with_strain(double f) const {
  return Deformation(params.with_strain(f), Displacement(params.with_strain(f), perturbation.values()));
}

Eigen::VectorXd backward_difference(const Eigen::VectorXd& u, double eps) {
  const int m = static_cast<int>(u.size());
  Eigen::VectorXd e(m);
  e[0] = (u[0] - u[m - 1]) / eps;
  for (int i = 1; i < m; ++i) e[i] = (u[i] - u[i - 1]) / eps;
  return e;
}

Eigen::VectorXd second_difference(const Eigen::VectorXd& u, double eps) {
  const int m = static_cast<int>(u.size());
  Eigen::VectorXd d(m);
  for (int i = 0; i < m; ++i) {
    const double up = u[(i + 1) % m];
    const double um = u[(i + m - 1) % m];
    d[i] = (up - 2.0 * u[i] + um) / (eps * eps);
  }
  return d;
}

StrainVector backward_difference(const Displacement& u) {
  return StrainVector(u.params(), backward_difference(u.values(), u.params().eps()));
}

StrainVector second_difference(const Displacement& u) {
  return StrainVector(u.params(), second_difference(u.values(), u.params().eps()));
}

Displacement strain_to_displacement(const StrainVector& e) {
  const auto& v = e.values();
  const double scale = std::max(v.cwiseAbs().maxCoeff(), 1.0);
  if (std::abs(v.sum()) > 1e-12 * scale)
    throw std::invalid_argument("strain_to_displacement: strain entries must sum to zero");
  const int m = static_cast<int>(v.size());
  const double eps = e.params().eps();
  Eigen::VectorXd u(m);
  u[0] = 0.0;  // cumulative sum; the Displacement constructor removes the mean
  for (int i = 1; i < m; ++i) u[i] = u[i - 1] + eps * v[i];
  return Displacement(e.params(), std::move(u));
}

double lp_norm(const Eigen::VectorXd& v, double eps, double p) {
  if (std::isinf(p)) return v.cwiseAbs().maxCoeff();
  if (p == 1.0) return eps * v.cwiseAbs().sum();
  if (p == 2.0) return std::sqrt(eps * v.squaredNorm());
  throw std::invalid_argument("lp_norm: p must be 1, 2 or infinity");
}

double lp_norm(const StrainVector& v, double p) { return lp_norm(v.values(), v.params().eps(), p); }

double inner_product(const Eigen::VectorXd& u, const Eigen::VectorXd& v, double eps) {
  if (u.size() != v.size()) throw std::invalid_argument("inner_product: length mismatch");
  return eps * u.dot(v);
}

double inner_product(const StrainVector& u, const StrainVector& v) {
  return inner_product(u.values(), v.values(), u.params().eps());
}

}  // namespace qc1d
