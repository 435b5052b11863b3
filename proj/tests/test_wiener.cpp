#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "beurling/wiener.hpp"

using namespace beurling;

namespace {

const LaurentPolynomial kTwoPlusZ{{0, 2.0}, {1, 1.0}};
const LaurentPolynomial kTwoMinusZ{{0, 2.0}, {1, -1.0}};
const LaurentPolynomial kTwoZPlusZSquared{{1, 2.0}, {2, 1.0}};
const LaurentPolynomial kSymmetric{{-1, 1.0}, {0, 3.0}, {1, 1.0}};
const LaurentPolynomial kSymmetricShifted{{1, 1.0}, {2, 3.0}, {3, 1.0}};

std::vector<LaurentPolynomial> sample_f() { return {kTwoPlusZ, kTwoMinusZ, kTwoZPlusZSquared, kSymmetric, kSymmetricShifted}; }

std::vector<WeightSpec> matrix_weights() {
  return {WeightSpec::constant(), WeightSpec::exponential(1.0), WeightSpec::polynomial(2.0),
          WeightSpec::geometric(2.0, 2.0), WeightSpec::logarithmic(), WeightSpec::polypow(),
          WeightSpec::exponential(0.1)};
}

double exact_inverse_of_two_z_plus_z2(std::int64_t n) {
  if (n < -1) return 0.0;
  return (n % 2 == 0 ? -1.0 : 1.0) / std::ldexp(1.0, static_cast<int>(n + 2));
}

}  // namespace

TEST(ConstructNu, ConstantWeightIsCaseOne) {
  for (const auto& f : sample_f()) {
    const auto nu = construct_nu(f, WeightSpec::constant(), 0.1);
    EXPECT_EQ(nu.which, NuCase::I);
    EXPECT_EQ(nu.r1, 1.0);
    EXPECT_EQ(nu.r2, 1.0);
    EXPECT_EQ(to_string(nu.nu), "const");
  }
}

TEST(ConstructNu, TwoMinusZUnderExponentialWeight) {
  const auto nu = construct_nu(kTwoMinusZ, WeightSpec::exponential(1.0), 0.05);
  EXPECT_EQ(nu.which, NuCase::IV);
  EXPECT_NEAR(nu.zero_outer, 2.0, 1e-15);
  EXPECT_NEAR(nu.r1, 1.95, 1e-15);
  EXPECT_NEAR(nu.r2, 1.0 / std::numbers::e, 1e-15);
  EXPECT_GT(min_modulus(kTwoMinusZ, Annulus{nu.r2, nu.r1}).value, 0.0);
}

TEST(ConstructNu, TwoZPlusZSquaredUnderGeometricWeight) {
  const auto nu = construct_nu(kTwoZPlusZSquared, WeightSpec::geometric(2.0, 2.0), 0.5);
  EXPECT_EQ(nu.which, NuCase::IV);
  EXPECT_NEAR(nu.r1, 1.5, 1e-15);
  EXPECT_EQ(nu.r2, 0.5);
  EXPECT_EQ(nu.zero_inner, 0.0);
}

TEST(ConstructNu, OneSidedCases) {
  const auto two = construct_nu(kTwoMinusZ, WeightSpec::two_sided(3.0, 1.0), 0.1);
  EXPECT_EQ(two.which, NuCase::II);
  EXPECT_EQ(two.r2, 1.0);
  EXPECT_NEAR(two.r1, 1.9, 1e-15);

  const auto three = construct_nu(LaurentPolynomial{{0, 1.0}, {1, -2.0}}, WeightSpec::two_sided(1.0, 0.25), 0.1);
  EXPECT_EQ(three.which, NuCase::III);
  EXPECT_EQ(three.r1, 1.0);
  EXPECT_NEAR(three.r2, 0.55, 1e-15);
}

TEST(ConstructNu, Errors) {
  EXPECT_THROW(construct_nu(LaurentPolynomial{{0, 1.0}, {2, -1.0}}, WeightSpec::exponential(1.0)), NumericalError);
  EXPECT_THROW(construct_nu(kTwoPlusZ, WeightSpec::constant(), 0.0), ArgumentError);
  EXPECT_THROW(construct_nu(kTwoPlusZ, WeightSpec::constant(), 1.0), ArgumentError);
  EXPECT_THROW(construct_nu(LaurentPolynomial{}, WeightSpec::constant()), NumericalError);
}

TEST(ConstructNu, LargerEpsilonPullsRadiiTowardsOne) {
  const auto w = WeightSpec::exponential(3.0);
  const LaurentPolynomial both{{-1, 1.0}, {0, -2.5}, {1, 1.0}};  // zeros at 1/2 and 2
  double last_r1 = kInfinity, last_r2 = 0.0;
  for (double eps : {0.05, 0.1, 0.3, 0.5, 0.9}) {
    const auto nu = construct_nu(both, w, eps);
    EXPECT_LT(nu.r1, last_r1) << eps;
    EXPECT_GT(nu.r2, last_r2) << eps;
    last_r1 = nu.r1;
    last_r2 = nu.r2;
  }
}

TEST(ConstructNu, ClauseMatrix) {
  for (const auto& w : matrix_weights()) {
    const auto rho = rho_bounds(w);
    for (const auto& f : sample_f()) {
      for (double eps : {0.05, 0.1, 0.5}) {
        const auto nu = construct_nu(f, w, eps);
        EXPECT_LE(rho.rho2, nu.r2);
        EXPECT_LE(nu.r2, 1.0);
        EXPECT_LE(1.0, nu.r1);
        EXPECT_LE(nu.r1, rho.rho1);
        EXPECT_TRUE(pointwise_leq(nu.nu, w, 128)) << to_string(w);
        EXPECT_EQ(is_constant(nu.nu), is_constant(w)) << to_string(w);
        for (double r : zero_radii(f)) EXPECT_FALSE(r >= nu.r2 && r <= nu.r1) << to_string(w);
      }
    }
  }
}

TEST(Invert, Identity) {
  const auto nu = construct_nu(LaurentPolynomial::identity(), WeightSpec::exponential(1.0));
  const auto inv = invert(LaurentPolynomial::identity(), nu, 16, 256);
  EXPECT_NEAR(std::abs(inv.coeffs[0] - 1.0), 0.0, 1e-15);
  for (std::int64_t n = -16; n <= 16; ++n)
    if (n != 0) {
      EXPECT_LT(std::abs(inv.coeffs[n]), 1e-15) << n;
    }
  EXPECT_NEAR(inv.norm, 1.0, 1e-14);
}

TEST(Invert, TwoZPlusZSquaredSeries) {
  const auto nu = construct_nu(kTwoZPlusZSquared, WeightSpec::geometric(2.0, 2.0), 0.5);
  const auto inv = invert(kTwoZPlusZSquared, nu, 64, 4096);
  for (std::int64_t n = -64; n <= 64; ++n) EXPECT_NEAR(std::abs(inv.coeffs[n] - exact_inverse_of_two_z_plus_z2(n)), 0.0, 1e-12) << n;
  ASSERT_TRUE(inv.tail.has_value());
  EXPECT_NEAR(inv.tail->outer_rate, 2.0, 1e-12);
  EXPECT_EQ(inv.tail->inner_rate, 0.0);
}

TEST(Invert, GeometricSeriesOfTwoPlusZ) {
  const auto nu = construct_nu(kTwoPlusZ, WeightSpec::constant());
  const auto inv = invert(kTwoPlusZ, nu, 64, 4096);
  for (std::int64_t n = 0; n <= 64; ++n) {
    const double exact = (n % 2 == 0 ? 1.0 : -1.0) / std::ldexp(1.0, static_cast<int>(n + 1));
    EXPECT_NEAR(std::abs(inv.coeffs[n] - exact), 0.0, 1e-15) << n;
  }
  for (std::int64_t n = -64; n < 0; ++n) EXPECT_LT(std::abs(inv.coeffs[n]), 1e-18) << n;
}

TEST(Invert, TwoSidedInverse) {
  // 1/(z + 3 + 1/z) = z / ((z - a)(z - b)) with a b = 1: c_n = a^{|n|} / (a - b) where a = (-3 + sqrt 5) / 2.
  const double a = (-3.0 + std::sqrt(5.0)) / 2.0, b = 1.0 / a;
  const auto nu = construct_nu(kSymmetric, WeightSpec::exponential(1.0), 0.1);
  const auto inv = invert(kSymmetric, nu, 64, 4096);
  for (std::int64_t n = -64; n <= 64; ++n) {
    const double exact = std::pow(a, double(std::abs(n))) / (a - b);
    EXPECT_NEAR(std::abs(inv.coeffs[n] - exact), 0.0, 1e-15 + 1e-12 * std::abs(exact)) << n;
  }
}

TEST(Invert, Preconditions) {
  const auto nu = construct_nu(kTwoPlusZ, WeightSpec::constant());
  EXPECT_THROW(invert(kTwoPlusZ, nu, 0, 4096), ArgumentError);
  EXPECT_THROW(invert(kTwoPlusZ, nu, 64, 1000), ArgumentError);
  EXPECT_THROW(invert(kTwoPlusZ, nu, 64, 64), ArgumentError);
}

TEST(Invert, ZeroOnTheSamplingAnnulusIsRejected) {
  // nu built for 2 - z samples out to about |z| = 2; 1.5 - z vanishes on the way.
  const auto nu = construct_nu(kTwoMinusZ, WeightSpec::constant());
  EXPECT_THROW(invert(LaurentPolynomial{{0, 1.5}, {1, -1.0}}, nu, 64, 4096), NumericalError);
}

TEST(Invert, ZeroHuggingTheUnitCircleIsRejected) {
  EXPECT_THROW(construct_nu(LaurentPolynomial{{0, 1.0 + 1e-9}, {1, -1.0}}, WeightSpec::exponential(1.0)),
               NumericalError);
}

TEST(WienerReport, ClassicalCase) {
  const auto rep = wiener_report(kTwoPlusZ, WeightSpec::constant(), 0.1, 64, 4096);
  EXPECT_TRUE(rep.clause_summable);
  EXPECT_TRUE(rep.clause_constancy);
  EXPECT_TRUE(rep.clause_dominated);
  EXPECT_TRUE(rep.passed());
  EXPECT_NEAR(rep.under_nu.bound, 1.0, 1e-12);
  EXPECT_LT(rep.residual, 1e-15);
}

TEST(WienerReport, ExponentialWeight) {
  const auto rep = wiener_report(kTwoMinusZ, WeightSpec::exponential(1.0), 0.05, 64, 4096);
  EXPECT_TRUE(rep.passed());
  // sum_{n >= 0} 1.95^n / 2^{n+1} = (1/2) / (1 - 0.975) = 20; no negative-index terms.
  EXPECT_NEAR(rep.under_nu.bound, 20.0, 1e-8);
  EXPECT_NEAR(rep.under_nu.ratio_pos, 0.975, 1e-15);
}

TEST(WienerReport, TwoZPlusZSquaredUnderGeometricWeight) {
  const auto rep = wiener_report(kTwoZPlusZSquared, WeightSpec::geometric(2.0, 2.0), 0.5, 64, 4096);
  EXPECT_TRUE(rep.clause_summable);
  EXPECT_NEAR(rep.under_nu.ratio_pos, 0.75, 1e-15);
  EXPECT_EQ(rep.under_omega.verdict, Summability::Verdict::Divergent);
  EXPECT_TRUE(rep.passed());
}

TEST(WienerReport, ResidualWithinBoundAcrossMatrix) {
  for (const auto& w : matrix_weights())
    for (const auto& f : sample_f()) {
      const auto rep = wiener_report(f, w, 0.1, 64, 4096);
      EXPECT_TRUE(rep.passed()) << to_string(w) << " residual " << rep.residual << " bound " << rep.residual_bound;
    }
}

TEST(WienerReport, ResidualDecaysGeometricallyInN) {
  const auto w = WeightSpec::exponential(1.0);
  for (const auto& f : {kTwoMinusZ, kSymmetric}) {
    const auto nu = construct_nu(f, w, 0.5);
    const double rate = truncation_rate(nu);
    double previous = 0.0;
    for (std::int64_t n : {8, 16, 32}) {
      const auto inv = invert(f, nu, n, 1024);
      const double residual = inversion_residual(f, inv);
      EXPECT_LE(residual, inv.norm * weighted_norm(f, nu.nu) * std::pow(rate, double(n)) * 1.01) << n;
      if (previous > 0.0) {
        EXPECT_LT(residual, previous * std::pow(rate, double(n) / 2.0) * 4.0) << n;
      }
      previous = residual;
    }
  }
}
