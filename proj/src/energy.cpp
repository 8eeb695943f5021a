#include "qc1d/energy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qc1d {

namespace {

// LJ blows up at zero separation; fail loudly instead of returning inf.
constexpr double kStrainGuard = 1e-8;

const char* bond_name(BondType t) {
  switch (t) {
    case BondType::Nearest: return "nearest-neighbor";
    case BondType::NextNearest: return "next-nearest-neighbor";
    case BondType::CauchyBorn: return "Cauchy-Born";
  }
  return "?";
}

void check_admissible(double argument, BondType type, int element_label) {
  if (!(argument > kStrainGuard))
    throw std::domain_error(std::string("inadmissible ") + bond_name(type) + " bond at element " +
                            std::to_string(element_label) + " (strain argument " +
                            std::to_string(argument) + ")");
}

// Per-element bond weights; pair[i] belongs to the strain pair (i, i+1 mod 2N).
struct Weights {
  Eigen::VectorXd nearest;
  Eigen::VectorXd pair;
  Eigen::VectorXd cauchy_born;
};

Weights model_weights(ModelKind::Family family, const ChainParams& params) {
  const int m = params.sites();
  const double eps = params.eps();
  const int k = params.k_interface;
  Weights w{Eigen::VectorXd::Zero(m), Eigen::VectorXd::Zero(m), Eigen::VectorXd::Zero(m)};

  switch (family) {
    case ModelKind::Family::Atomistic:
      w.nearest.setConstant(eps);
      w.pair.setConstant(eps);
      break;
    case ModelKind::Family::Qcl:
      w.nearest.setConstant(eps);
      w.cauchy_born.setConstant(eps);
      break;
    case ModelKind::Family::Qce:
    case ModelKind::Family::Gfc:
      // Atom-energy split: each atom contributes half of its two nearest
      // bonds and half of either its two next-nearest bonds (atomistic
      // region) or the two Cauchy-Born substitutes (continuum region).
      for (int label = -params.n_half + 1; label <= params.n_half; ++label) {
        w.nearest[params.site_index(label)] += 0.5 * eps;
        w.nearest[params.site_index(label + 1)] += 0.5 * eps;
        if (std::abs(label) <= k) {
          w.pair[params.site_index(label - 1)] += 0.5 * eps;
          w.pair[params.site_index(label + 1)] += 0.5 * eps;
        } else {
          w.cauchy_born[params.site_index(label)] += 0.5 * eps;
          w.cauchy_born[params.site_index(label + 1)] += 0.5 * eps;
        }
      }
      break;
    case ModelKind::Family::Qnl:
      // Next-nearest bonds are kept wherever an endpoint atom lies in the
      // atomistic region, i.e. for bond centers in {-K-1, ..., K+1}; the
      // remaining ones are replaced by split Cauchy-Born terms.
      w.nearest.setConstant(eps);
      for (int center = -k - 1; center <= k + 1; ++center)
        w.pair[params.site_index(center)] += eps;
      for (int label = -params.n_half + 1; label <= params.n_half; ++label) {
        if (label >= -k - 1 && label <= k + 1) continue;
        w.cauchy_born[params.site_index(label)] += 0.5 * eps;
        w.cauchy_born[params.site_index(label + 1)] += 0.5 * eps;
      }
      break;
  }
  return w;
}

ChainParams gfc_reference(const ModelKind& model, const ChainParams& params) {
  return params.with_strain(model.linearization_strain);
}

}  // namespace

std::string ModelKind::name() const {
  switch (family) {
    case Family::Atomistic: return "atomistic";
    case Family::Qcl: return "qcl";
    case Family::Qce: return "qce";
    case Family::Qnl: return "qnl";
    case Family::Gfc: return "gfc";
  }
  return "?";
}

std::vector<Bond> bond_inventory(const ModelKind& model, const ChainParams& params) {
  const Weights w = model_weights(model.family, params);
  std::vector<Bond> bonds;
  bonds.reserve(3 * params.sites());
  for (int i = 0; i < params.sites(); ++i) {
    if (w.nearest[i] != 0.0) bonds.push_back({BondType::Nearest, i, w.nearest[i]});
    if (w.pair[i] != 0.0) bonds.push_back({BondType::NextNearest, i, w.pair[i]});
    if (w.cauchy_born[i] != 0.0) bonds.push_back({BondType::CauchyBorn, i, w.cauchy_born[i]});
  }
  return bonds;
}

double FirstVariation::apply(const Displacement& u) const {
  return inner_product(centered(), backward_difference(u.values(), params.eps()), params.eps());
}

Eigen::VectorXd FirstVariation::centered() const {
  return coefficients.array() - coefficients.mean();
}

double FirstVariation::dual_norm() const { return centered().cwiseAbs().maxCoeff(); }

double HessianForm::apply(const Displacement& u, const Displacement& v) const {
  const double eps = at.params.eps();
  const Eigen::VectorXd du = backward_difference(u.values(), eps);
  const Eigen::VectorXd dv = backward_difference(v.values(), eps);
  return eps * du.dot(strain_matrix * dv);
}

double HessianForm::quadratic_strain(const Eigen::VectorXd& strain) const {
  return at.params.eps() * strain.dot(strain_matrix * strain);
}

double energy(const ModelKind& model, const Deformation& y, const Potential& p) {
  const ChainParams& params = y.params;
  const Weights w = model_weights(model.family, params);
  const Eigen::VectorXd s = y.element_strains();
  const int m = params.sites();

  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    const int j = (i + 1) % m;
    if (w.nearest[i] != 0.0) {
      check_admissible(s[i], BondType::Nearest, params.site_label(i));
      total += w.nearest[i] * p.derivative(s[i], 0);
    }
    if (w.pair[i] != 0.0) {
      check_admissible(s[i] + s[j], BondType::NextNearest, params.site_label(i));
      total += w.pair[i] * p.derivative(s[i] + s[j], 0);
    }
    if (w.cauchy_born[i] != 0.0) {
      check_admissible(s[i], BondType::CauchyBorn, params.site_label(i));
      total += w.cauchy_born[i] * p.derivative(2.0 * s[i], 0);
    }
  }

  if (model.family == ModelKind::Family::Gfc) {
    const ChainParams ref = gfc_reference(model, params);
    const FirstVariation g0 = first_variation(ModelKind::qce(), Deformation::uniform(ref), p);
    const Eigen::VectorXd rel = s.array() - model.linearization_strain;
    total -= params.eps() * g0.coefficients.dot(rel);
  }
  return total;
}

FirstVariation first_variation(const ModelKind& model, const Deformation& y, const Potential& p) {
  const ChainParams& params = y.params;
  const Weights w = model_weights(model.family, params);
  const Eigen::VectorXd s = y.element_strains();
  const int m = params.sites();
  const double eps = params.eps();

  Eigen::VectorXd g = Eigen::VectorXd::Zero(m);
  for (int i = 0; i < m; ++i) {
    const int j = (i + 1) % m;
    if (w.nearest[i] != 0.0) {
      check_admissible(s[i], BondType::Nearest, params.site_label(i));
      g[i] += w.nearest[i] * p.derivative(s[i], 1) / eps;
    }
    if (w.pair[i] != 0.0) {
      check_admissible(s[i] + s[j], BondType::NextNearest, params.site_label(i));
      const double v = w.pair[i] * p.derivative(s[i] + s[j], 1) / eps;
      g[i] += v;
      g[j] += v;
    }
    if (w.cauchy_born[i] != 0.0) {
      check_admissible(s[i], BondType::CauchyBorn, params.site_label(i));
      g[i] += w.cauchy_born[i] * 2.0 * p.derivative(2.0 * s[i], 1) / eps;
    }
  }

  if (model.family == ModelKind::Family::Gfc) {
    const ChainParams ref = gfc_reference(model, params);
    g -= first_variation(ModelKind::qce(), Deformation::uniform(ref), p).coefficients;
  }
  return {params, std::move(g)};
}

HessianForm second_variation(const ModelKind& model, const Deformation& y, const Potential& p) {
  const ChainParams& params = y.params;
  // The correction term of the Gfc energy is linear, so its Hessian is the
  // plain QCE one.
  const ModelKind::Family family =
      model.family == ModelKind::Family::Gfc ? ModelKind::Family::Qce : model.family;
  const Weights w = model_weights(family, params);
  const Eigen::VectorXd s = y.element_strains();
  const int m = params.sites();
  const double eps = params.eps();

  Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    const int j = (i + 1) % m;
    if (w.nearest[i] != 0.0) {
      check_admissible(s[i], BondType::Nearest, params.site_label(i));
      mat(i, i) += w.nearest[i] * p.derivative(s[i], 2) / eps;
    }
    if (w.pair[i] != 0.0) {
      check_admissible(s[i] + s[j], BondType::NextNearest, params.site_label(i));
      const double c = w.pair[i] * p.derivative(s[i] + s[j], 2) / eps;
      mat(i, i) += c;
      mat(j, j) += c;
      mat(i, j) += c;
      mat(j, i) += c;
    }
    if (w.cauchy_born[i] != 0.0) {
      check_admissible(s[i], BondType::CauchyBorn, params.site_label(i));
      mat(i, i) += w.cauchy_born[i] * 4.0 * p.derivative(2.0 * s[i], 2) / eps;
    }
  }
  return {model, y, std::move(mat)};
}

Eigen::VectorXd site_gradient(const FirstVariation& g) {
  const int m = static_cast<int>(g.coefficients.size());
  Eigen::VectorXd f(m);
  for (int i = 0; i < m; ++i) f[i] = g.coefficients[i] - g.coefficients[(i + 1) % m];
  return f;
}

}  // namespace qc1d
