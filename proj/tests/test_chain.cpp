#include <doctest.h>

#include <cmath>
#include <random>

#include "qc1d/chain.hpp"

using namespace qc1d;

TEST_SUITE_BEGIN("chain");

TEST_CASE("params validation") {
  CHECK_NOTHROW(ChainParams(8, 2, 1.0));
  CHECK_NOTHROW(ChainParams(40, 36, 0.5));
  CHECK_THROWS_AS(ChainParams(7, 2, 1.0), std::invalid_argument);   // N too small
  CHECK_THROWS_AS(ChainParams(8, 1, 1.0), std::invalid_argument);   // K too small
  CHECK_THROWS_AS(ChainParams(8, 5, 1.0), std::invalid_argument);   // K > N-4
  CHECK_THROWS_AS(ChainParams(8, 2, 0.0), std::invalid_argument);   // F <= 0
  CHECK_THROWS_AS(ChainParams(8, 2, -1.0), std::invalid_argument);

  const ChainParams params(8, 2, 1.0);
  CHECK(params.eps() == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(params.sites() == 16);
  CHECK(params.site_index(-7) == 0);
  CHECK(params.site_index(8) == 15);
  CHECK(params.site_index(9) == params.site_index(-7));   // wrap right
  CHECK(params.site_index(-8) == params.site_index(8));   // wrap left
  for (int i = 0; i < params.sites(); ++i) CHECK(params.site_index(params.site_label(i)) == i);
}

TEST_CASE("displacement constructor removes the mean") {
  const ChainParams params(8, 2, 1.0);
  Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(16, 0.0, 3.0);
  const Displacement u(params, v);
  CHECK(std::abs(u.values().mean()) <= 1e-15);
  CHECK(u.mean_before_shift() == doctest::Approx(v.mean()).epsilon(1e-14));

  // Constant shifts vanish entirely.
  const Displacement shifted(params, v.array() + 7.5);
  CHECK((shifted.values() - u.values()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("backward difference: zero, hand-computed stencil, telescoping sum") {
  const ChainParams params(8, 2, 1.0);
  CHECK(backward_difference(Displacement::zero(params)).values().cwiseAbs().maxCoeff() == 0.0);

  // Two-period hand case on the raw operator: eps = 1/2, sites l = -1..2,
  // u = (0, a, 0, -a) wraps to u' = 2(a, a, -a, -a).
  const double a = 0.7;
  Eigen::VectorXd u(4);
  u << 0.0, a, 0.0, -a;
  const Eigen::VectorXd strain = backward_difference(u, 0.5);
  CHECK(strain[0] == doctest::Approx(2 * a).epsilon(1e-15));
  CHECK(strain[1] == doctest::Approx(2 * a).epsilon(1e-15));
  CHECK(strain[2] == doctest::Approx(-2 * a).epsilon(1e-15));
  CHECK(strain[3] == doctest::Approx(-2 * a).epsilon(1e-15));
  CHECK(std::abs(strain.sum()) <= 1e-15);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd raw(params.sites());
    for (int i = 0; i < raw.size(); ++i) raw[i] = dist(rng);
    const StrainVector e = backward_difference(Displacement(params, raw));
    CHECK(std::abs(e.values().sum()) <= 1e-12 * std::max(1.0, e.values().cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("second difference identities") {
  const ChainParams params(8, 2, 1.0);
  CHECK(second_difference(Displacement::zero(params)).values().cwiseAbs().maxCoeff() == 0.0);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd raw(params.sites());
  for (int i = 0; i < raw.size(); ++i) raw[i] = dist(rng);
  const Displacement u(params, raw);
  const Eigen::VectorXd d1 = backward_difference(u).values();
  const Eigen::VectorXd d2 = second_difference(u).values();
  const int m = params.sites();
  for (int i = 0; i < m; ++i) {
    // u''_l * eps = u'_{l+1} - u'_l links the two operators.
    CHECK(d2[i] * params.eps() == doctest::Approx(d1[(i + 1) % m] - d1[i]).epsilon(1e-12));
  }
}

TEST_CASE("sinusoidal strain attains the spectral ratio 2 sin(pi eps/2)/eps") {
  for (int n : {8, 32}) {
    const ChainParams params(n, 2, 1.0);
    const double eps = params.eps();
    Eigen::VectorXd strain(params.sites());
    for (int i = 0; i < params.sites(); ++i)
      strain[i] = std::sin(eps * params.site_label(i) * M_PI);
    const Displacement u = strain_to_displacement(StrainVector(params, strain));
    const double ratio = lp_norm(second_difference(u), 2.0) / lp_norm(backward_difference(u), 2.0);
    CHECK(ratio == doctest::Approx(2.0 * std::sin(M_PI * eps / 2.0) / eps).epsilon(1e-12));
  }
}

TEST_CASE("lp norms and inner product") {
  const ChainParams params(8, 2, 1.0);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(16);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(16);
  CHECK(lp_norm(zero, params.eps(), 2.0) == 0.0);
  CHECK(lp_norm(ones, params.eps(), 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(lp_norm(ones, params.eps(), 1.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(lp_norm(ones, params.eps(), std::numeric_limits<double>::infinity()) == 1.0);
  CHECK_THROWS_AS(lp_norm(ones, params.eps(), 3.0), std::invalid_argument);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd v(16);
  for (int i = 0; i < 16; ++i) v[i] = dist(rng);
  const double n2 = lp_norm(v, params.eps(), 2.0);
  CHECK(inner_product(v, v, params.eps()) == doctest::Approx(n2 * n2).epsilon(1e-14));
  CHECK(inner_product(v, zero, params.eps()) == 0.0);

  const Displacement u(params, v);  // zero mean
  CHECK(std::abs(inner_product(ones, u.values(), params.eps())) <= 1e-14);
}

TEST_CASE("strain_to_displacement: cumulative-sum oracle and round trip") {
  // Raw two-period oracle: e = c*(1,-1,1,-1), eps = 1/2.  Cumulative sum
  // times eps, then mean shift, gives u = c*(1,-1,1,-1)/4; the backward
  // difference recovers e.
  const double c = 0.3;
  Eigen::VectorXd expected(4);
  expected << 0.25 * c, -0.25 * c, 0.25 * c, -0.25 * c;
  Eigen::VectorXd target(4);
  target << c, -c, c, -c;
  CHECK((backward_difference(expected, 0.5) - target).cwiseAbs().maxCoeff() <= 1e-15);

  const ChainParams params(8, 2, 1.0);
  CHECK(strain_to_displacement(StrainVector(params, Eigen::VectorXd::Zero(16)))
            .values()
            .cwiseAbs()
            .maxCoeff() == 0.0);

  CHECK_THROWS_AS(StrainVector(params, Eigen::VectorXd::Ones(16)), std::invalid_argument);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd raw(16);
    for (int i = 0; i < 16; ++i) raw[i] = dist(rng);
    const Displacement u(params, raw);
    const Displacement back = strain_to_displacement(backward_difference(u));
    const double scale = std::max(1.0, u.values().cwiseAbs().maxCoeff());
    CHECK((back.values() - u.values()).cwiseAbs().maxCoeff() <= 1e-12 * scale);
  }
}

TEST_CASE("deformation strains and positions") {
  const ChainParams params(8, 2, 1.1);
  const Deformation y = Deformation::uniform(params);
  CHECK((y.element_strains().array() - 1.1).abs().maxCoeff() <= 1e-15);
  const Eigen::VectorXd pos = y.site_positions();
  for (int i = 0; i < params.sites(); ++i)
    CHECK(pos[i] == doctest::Approx(1.1 * params.site_label(i) * params.eps()).epsilon(1e-14));

  const Deformation rebased = y.with_strain(1.3);
  CHECK(rebased.strain() == 1.3);
  CHECK((rebased.element_strains().array() - 1.3).abs().maxCoeff() <= 1e-15);
}

TEST_SUITE_END();
