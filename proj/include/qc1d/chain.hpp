#pragma once

#include <Eigen/Dense>

namespace qc1d {

/// Periodic chain of 2N lattice sites l = -N+1, ..., N with reference
/// spacing eps = 1/N.  Storage index is i = l + N - 1; every periodic
/// access goes through site_index() so there is exactly one wrap rule.
struct ChainParams {
  int n_half;        // N
  int k_interface;   // K, half width of the atomistic region {-K, ..., K}
  double strain;     // F, macroscopic strain (element strain of the uniform state)

  ChainParams(int n_half, int k_interface, double strain);

  int sites() const { return 2 * n_half; }
  double eps() const { return 1.0 / n_half; }

  /// Storage index for an arbitrary integer site/element label.
  int site_index(int label) const {
    const int m = sites();
    int i = (label + n_half - 1) % m;
    return i < 0 ? i + m : i;
  }
  /// Inverse of site_index on [0, 2N).
  int site_label(int index) const { return index - n_half + 1; }

  ChainParams with_strain(double f) const { return {n_half, k_interface, f}; }
  bool same_lattice(const ChainParams& o) const {
    return n_half == o.n_half && k_interface == o.k_interface;
  }
};

/// 2N-periodic site displacement with zero mean.  Construction subtracts
/// the mean (Newton iterates drift by roundoff); mean_before_shift() is
/// kept so tests can validate inputs strictly.
class Displacement {
 public:
  Displacement(ChainParams params, Eigen::VectorXd site_values);
  static Displacement zero(const ChainParams& params);

  const ChainParams& params() const { return params_; }
  const Eigen::VectorXd& values() const { return values_; }
  double operator[](int label) const { return values_[params_.site_index(label)]; }
  double mean_before_shift() const { return removed_mean_; }

 private:
  ChainParams params_;
  Eigen::VectorXd values_;
  double removed_mean_ = 0.0;
};

/// Element strains e_l = u'_l, l = -N+1, ..., N.  Periodicity of the
/// underlying displacement forces the entries to sum to zero.
class StrainVector {
 public:
  StrainVector(ChainParams params, Eigen::VectorXd values);

  const ChainParams& params() const { return params_; }
  const Eigen::VectorXd& values() const { return values_; }
  double operator[](int label) const { return values_[params_.site_index(label)]; }

 private:
  ChainParams params_;
  Eigen::VectorXd values_;
};

/// Deformation y = y_F + u with site positions y_l = F*l*eps + u_l.
/// Element strains are y'_l = F + u'_l; admissibility (y'_l > 0) is
/// enforced where energies are evaluated, not here.
struct Deformation {
  ChainParams params;
  Displacement perturbation;

  Deformation(ChainParams params, Displacement perturbation);
  static Deformation uniform(const ChainParams& params);

  double strain() const { return params.strain; }
  Eigen::VectorXd element_strains() const;
  Eigen::VectorXd site_positions() const;
  /// Same perturbation rebased to a new macroscopic strain (continuation predictor).
  Deformation with_strain(double f) const;
};

// Difference operators on raw periodic arrays (index 0 <-> site -N+1).
Eigen::VectorXd backward_difference(const Eigen::VectorXd& site_values, double eps);
Eigen::VectorXd second_difference(const Eigen::VectorXd& site_values, double eps);

StrainVector backward_difference(const Displacement& u);
StrainVector second_difference(const Displacement& u);

/// Unique zero-mean displacement with backward_difference(u) == e.
/// Rejects strain data that does not sum to zero within 1e-12 * max|e|.
Displacement strain_to_displacement(const StrainVector& e);

/// Weighted norm (sum_l eps |v_l|^p)^(1/p); p must be 1, 2 or infinity.
double lp_norm(const Eigen::VectorXd& values, double eps, double p);
double lp_norm(const StrainVector& v, double p);

/// Weighted inner product eps * sum_l u_l v_l.
double inner_product(const Eigen::VectorXd& u, const Eigen::VectorXd& v, double eps);
double inner_product(const StrainVector& u, const StrainVector& v);

}  // namespace qc1d
