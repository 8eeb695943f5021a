#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace qc1d {

/// Pair interaction potential, smooth on (0, inf), with closed-form
/// derivatives up to order 4.  Derivatives are analytic per potential;
/// order-4 accuracy is needed downstream and numerical differentiation
/// would not provide it.
class Potential {
 public:
  virtual ~Potential() = default;

  /// k-th derivative of phi at r, k = 0..4, r > 0.
  virtual double derivative(double r, int order) const = 0;

  /// Turning point r_* between the convex and concave regions of phi.
  virtual double inflection_radius() const = 0;

  /// Canonical descriptor, e.g. "morse:alpha=3.5" or "lj".
  virtual std::string id() const = 0;

  double operator()(double r) const { return derivative(r, 0); }
};

/// phi_a(r) = exp(-2a(r-1)) - 2 exp(-a(r-1)); well minimum at r = 1,
/// inflection at r_* = 1 + ln(2)/a.
class MorsePotential final : public Potential {
 public:
  explicit MorsePotential(double alpha);
  double derivative(double r, int order) const override;
  double inflection_radius() const override;
  std::string id() const override;
  double alpha() const { return alpha_; }

 private:
  double alpha_;
};

/// phi(r) = r^-12 - 2 r^-6; well minimum at r = 1, inflection at
/// r_* = (13/7)^(1/6).
class LennardJonesPotential final : public Potential {
 public:
  double derivative(double r, int order) const override;
  double inflection_radius() const override;
  std::string id() const override { return "lj"; }
};

/// Parses "morse:alpha=<value>" or "lj".
std::unique_ptr<Potential> make_potential(std::string_view descriptor);

/// Cauchy-Born stored energy density phi_cb(r) = phi(r) + phi(2r),
/// derivatives up to order 2 via the chain rule.
double cauchy_born(const Potential& p, double r, int order);

/// Derivative values of phi at a strain F and at 2F that drive the
/// stability analysis.  a_F = phi''(F) + 4 phi''(2F) is the Cauchy-Born
/// elastic modulus.
struct Moduli {
  double phi_pp_F;    // phi''(F)
  double phi_pp_2F;   // phi''(2F)
  double a_F;         // phi''(F) + 4 phi''(2F)
  double phi_ppp_F;   // phi'''(F)
  double phi_p_2F;    // phi'(2F)
  double phi_ppp_2F;  // phi'''(2F)
};
Moduli moduli(const Potential& p, double F);

/// Smallness parameters of the next-nearest-neighbour interaction
/// relative to the nearest-neighbour stiffness:
///   delta1 = phi'(2F)/phi''(F), delta2 = -phi''(2F)/phi''(F),
///   delta3 = phi'''(2F)/phi''(F), delta = max of the absolute values.
/// Requires phi''(F) > 0.
struct DeltaParams {
  double delta1;
  double delta2;
  double delta3;
  double delta;
};
DeltaParams deltas(const Potential& p, double F);

}  // namespace qc1d
