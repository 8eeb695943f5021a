#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qc1d/chain.hpp"
#include "qc1d/potential.hpp"

namespace qc1d {

/// The five energy functionals on the periodic chain.
///  - Atomistic: full nearest + next-nearest pair interaction energy.
///  - Qcl: local (continuum) approximation, Cauchy-Born density everywhere.
///  - Qce: energy-based coupling, atomistic atom-energies on {-K..K} and
///    continuum ones elsewhere; inconsistent at the interface.
///  - Qnl: quasi-nonlocal coupling; keeps next-nearest bonds that touch the
///    atomistic region and splits Cauchy-Born terms outside; consistent.
///  - Gfc: dead-load corrected QCE, E_qce(y) - E'_qce(y_Fbar)[y - y_Fbar],
///    linearized about the uniform state with strain Fbar.
struct ModelKind {
  enum class Family { Atomistic, Qcl, Qce, Qnl, Gfc };

  Family family;
  double linearization_strain;  // Gfc only

  static ModelKind atomistic() { return {Family::Atomistic, 0.0}; }
  static ModelKind qcl() { return {Family::Qcl, 0.0}; }
  static ModelKind qce() { return {Family::Qce, 0.0}; }
  static ModelKind qnl() { return {Family::Qnl, 0.0}; }
  static ModelKind gfc(double linearization_strain) { return {Family::Gfc, linearization_strain}; }

  std::string name() const;
};

/// One energy term: weight * phi(argument), where the argument is the
/// element strain (Nearest), the sum of two consecutive element strains
/// (NextNearest, elements e and e+1), or twice the element strain
/// (CauchyBorn).  Weights carry the eps factor and the interface
/// half-weights.
enum class BondType { Nearest, NextNearest, CauchyBorn };

struct Bond {
  BondType type;
  int element;  // storage index in [0, 2N)
  double weight;
};

/// Aggregated bond list; summing weight * phi(argument) over it reproduces
/// energy().  This is the single assembly source for all models.
std::vector<Bond> bond_inventory(const ModelKind& model, const ChainParams& params);

/// First variation in strain-dual form, E'(y)[u] = eps * sum_l g_l u'_l.
/// The coefficients are defined up to an additive constant (strains sum to
/// zero); they are stored as assembled per element.
struct FirstVariation {
  ChainParams params;
  Eigen::VectorXd coefficients;

  double apply(const Displacement& u) const;
  Eigen::VectorXd centered() const;  // g - mean(g)
  /// max_l |g_l - mean(g)|: the strain-dual residual norm used by the
  /// equilibrium solver.
  double dual_norm() const;
};

/// Second variation in strain coordinates, E''(y)[u,v] = eps * u'^T M v'.
/// M is symmetric; nearest and Cauchy-Born bonds load the diagonal, a
/// next-nearest bond couples consecutive elements (with periodic wrap).
struct HessianForm {
  ModelKind model;
  Deformation at;
  Eigen::MatrixXd strain_matrix;

  double apply(const Displacement& u, const Displacement& v) const;
  double quadratic(const Displacement& u) const { return apply(u, u); }
  double quadratic_strain(const Eigen::VectorXd& strain) const;
};

/// Stored energy per period.  Throws std::domain_error naming the offending
/// bond if any evaluated strain argument is below the admissibility guard.
double energy(const ModelKind& model, const Deformation& y, const Potential& p);

FirstVariation first_variation(const ModelKind& model, const Deformation& y, const Potential& p);

HessianForm second_variation(const ModelKind& model, const Deformation& y, const Potential& p);

/// Sitewise energy gradient dE/dy_l = g_l - g_{l+1}, recovered from the
/// strain-dual coefficients by differencing (periodic wrap).
Eigen::VectorXd site_gradient(const FirstVariation& g);

}  // namespace qc1d
