#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "beurling/series.hpp"

using namespace beurling;

namespace {

LaurentPolynomial random_poly(std::mt19937_64& rng, int lo_min, int hi_max) {
  std::uniform_int_distribution<int> edge(lo_min, hi_max);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int lo = edge(rng), hi = edge(rng);
  if (lo > hi) std::swap(lo, hi);
  std::vector<cplx> c;
  for (int n = lo; n <= hi; ++n) c.emplace_back(u(rng), u(rng));
  return LaurentPolynomial::from_dense(lo, c);
}

double coefficient_scale(const LaurentPolynomial& f) {
  double s = 0.0;
  for (const auto& [n, c] : f.terms()) s = std::max(s, std::abs(c));
  return s;
}

struct WarningCapture {
  std::vector<std::string> seen;
  WarningCapture() {
    set_warning_handler([this](const std::string& m) { seen.push_back(m); });
  }
  ~WarningCapture() { set_warning_handler(nullptr); }
};

}  // namespace

TEST(LaurentPolynomial, CanonicalForm) {
  const LaurentPolynomial p{{-2, 0.0}, {0, 1.0}, {3, 0.0}};
  EXPECT_EQ(p.low(), 0);
  EXPECT_EQ(p.high(), 0);
  EXPECT_EQ(p.terms().size(), 1u);
  EXPECT_TRUE(LaurentPolynomial::from_dense(5, {0.0, 1e-301}).is_zero());
  EXPECT_TRUE((p - p).is_zero());
}

TEST(LaurentPolynomial, DuplicateIndicesRejected) {
  EXPECT_THROW((LaurentPolynomial{{1, 1.0}, {1, 2.0}}), ArgumentError);
}

TEST(LaurentPolynomial, SparseIndexingAndTruncation) {
  const LaurentPolynomial p{{-1, 0.5}, {0, 1.0}, {3, -2.0}};
  EXPECT_EQ(p[-1], cplx(0.5));
  EXPECT_EQ(p[2], cplx(0.0));
  EXPECT_EQ(p[100], cplx(0.0));
  EXPECT_EQ(p.truncated(0, 2), LaurentPolynomial::identity());
  EXPECT_TRUE(p.truncated(1, 2).is_zero());
}

TEST(Evaluate, Examples) {
  const LaurentPolynomial f{{1, 2.0}, {2, 1.0}};
  EXPECT_EQ(evaluate(f, 1.0), cplx(3.0));
  EXPECT_EQ(evaluate(f, -2.0), cplx(0.0));
  EXPECT_EQ(evaluate(LaurentPolynomial::identity(), cplx(0.3, -7.0)), cplx(1.0));
}

TEST(Evaluate, NegativePowersAndOrigin) {
  const LaurentPolynomial g{{-1, 1.0}, {0, 3.0}, {1, 1.0}};
  EXPECT_NEAR(std::abs(evaluate(g, 2.0) - cplx(5.5)), 0.0, 1e-15);
  EXPECT_THROW(evaluate(g, 0.0), NumericalError);
  EXPECT_EQ(evaluate(LaurentPolynomial{{0, 2.0}, {1, 1.0}}, 0.0), cplx(2.0));
  EXPECT_EQ(evaluate(LaurentPolynomial{}, 1.0), cplx(0.0));
}

TEST(Convolve, Examples) {
  const LaurentPolynomial a{{-1, 0.5}, {0, 1.0}, {3, -2.0}};
  EXPECT_EQ(convolve(LaurentPolynomial::identity(), a), a);
  EXPECT_EQ(convolve(LaurentPolynomial{{0, 1.0}, {1, 1.0}}, LaurentPolynomial{{0, 1.0}, {1, -1.0}}),
            (LaurentPolynomial{{0, 1.0}, {2, -1.0}}));
  EXPECT_TRUE(convolve(a, LaurentPolynomial{}).is_zero());
}

TEST(Convolve, TruncatedInverseOfTwoZPlusZSquared) {
  // 1/(2z + z^2) = sum_{n >= -1} (-1)^{n+1} z^n / 2^{n+2}, truncated at N = 40.
  std::vector<std::pair<std::int64_t, cplx>> terms;
  for (std::int64_t n = -1; n <= 40; ++n)
    terms.emplace_back(n, (n % 2 == 0 ? -1.0 : 1.0) / std::ldexp(1.0, static_cast<int>(n + 2)));
  const auto product = convolve(LaurentPolynomial{{1, 2.0}, {2, 1.0}}, LaurentPolynomial::from_terms(terms));
  const auto residual = product - LaurentPolynomial::identity();
  for (std::int64_t n = residual.low(); n <= residual.high(); ++n)
    EXPECT_LE(std::abs(residual[n]), std::ldexp(1.0, -41)) << n;
}

TEST(Convolve, TruncatedMatchesFullOnWindow) {
  std::mt19937_64 rng(3);
  for (int c = 0; c < 50; ++c) {
    const auto a = random_poly(rng, -6, 6), b = random_poly(rng, -6, 6);
    const auto full = convolve(a, b);
    const auto part = convolve_truncated(a, b, -3, 4);
    for (std::int64_t n = -3; n <= 4; ++n) EXPECT_NEAR(std::abs(part[n] - full[n]), 0.0, 1e-14);
    EXPECT_EQ(part, full.truncated(-3, 4));
  }
}

TEST(SampleOnCircle, Examples) {
  const auto one = sample_on_circle(LaurentPolynomial::identity(), 1.0, 8);
  for (cplx v : one.values) EXPECT_EQ(v, cplx(1.0));

  const auto z = sample_on_circle(LaurentPolynomial{{1, 1.0}}, 2.0, 8);
  for (std::size_t k = 0; k < 8; ++k)
    EXPECT_NEAR(std::abs(z.values[k] - 2.0 * std::polar(1.0, 2.0 * std::numbers::pi * double(k) / 8.0)), 0.0, 1e-15);

  const auto onez = sample_on_circle(LaurentPolynomial{{0, 1.0}, {1, 1.0}}, 1.0, 8);
  for (std::size_t k = 0; k < 8; ++k)
    EXPECT_NEAR(std::abs(onez.values[k] - (1.0 + std::polar(1.0, 2.0 * std::numbers::pi * double(k) / 8.0))), 0.0,
                1e-15);
}

TEST(SampleOnCircle, Preconditions) {
  EXPECT_THROW(sample_on_circle(LaurentPolynomial::identity(), 1.0, 12), ArgumentError);
  EXPECT_THROW(sample_on_circle(LaurentPolynomial{{-4, 1.0}, {4, 1.0}}, 1.0, 16), ArgumentError);
  EXPECT_THROW(sample_on_circle(LaurentPolynomial::identity(), 0.0, 8), ArgumentError);
}

TEST(CoefficientsFromSamples, RoundTripExample) {
  const LaurentPolynomial a{{-1, 0.5}, {0, 1.0}, {3, -2.0}};
  const auto back = coefficients_from_samples(sample_on_circle(a, 1.0, 16), -4, 4);
  for (std::int64_t n = -4; n <= 4; ++n) EXPECT_NEAR(std::abs(back[n] - a[n]), 0.0, 1e-13) << n;
}

TEST(CoefficientsFromSamples, GeometricSeriesOracle) {
  const auto s = sample_function_on_circle([](cplx z) { return 1.0 / (2.0 + z); }, 1.0, 128);
  const auto c = coefficients_from_samples(s, 0, 40);
  for (std::int64_t n = 0; n <= 40; ++n) {
    const double exact = (n % 2 == 0 ? 1.0 : -1.0) / std::ldexp(1.0, static_cast<int>(n + 1));
    EXPECT_NEAR(std::abs(c[n] - exact), 0.0, 1e-12) << n;
  }
}

TEST(CoefficientsFromSamples, ZeroFunction) {
  const auto s = sample_function_on_circle([](cplx) { return cplx(0.0); }, 1.0, 64);
  EXPECT_TRUE(coefficients_from_samples(s, -10, 10).is_zero());
}

TEST(CoefficientsFromSamples, WindowChecks) {
  const auto s = sample_on_circle(LaurentPolynomial::identity(), 1.0, 16);
  EXPECT_THROW(coefficients_from_samples(s, 0, 16), ArgumentError);
  EXPECT_THROW(coefficients_from_samples(s, 3, 2), ArgumentError);
  WarningCapture capture;
  coefficients_from_samples(s, -5, 5);
  ASSERT_EQ(capture.seen.size(), 1u);
  EXPECT_NE(capture.seen.front().find("aliasing"), std::string::npos);
  capture.seen.clear();
  coefficients_from_samples(s, -3, 3);
  EXPECT_TRUE(capture.seen.empty());
}

TEST(ZeroRadii, Examples) {
  const auto a = zero_radii(LaurentPolynomial{{1, 2.0}, {2, 1.0}});
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a[0], 0.0);
  EXPECT_NEAR(a[1], 2.0, 1e-12);

  const auto b = zero_radii(LaurentPolynomial{{0, 2.0}, {1, 1.0}});
  ASSERT_EQ(b.size(), 1u);
  EXPECT_NEAR(b[0], 2.0, 1e-15);

  const auto c = zero_radii(LaurentPolynomial{{0, 1.0}, {2, -1.0}});
  ASSERT_EQ(c.size(), 2u);
  EXPECT_NEAR(c[0], 1.0, 1e-12);
  EXPECT_NEAR(c[1], 1.0, 1e-12);
}

TEST(ZeroRadii, NegativeShiftAndDegenerateInputs) {
  // z^{-1} (1 - 4z^2) / 2: zeros at +-1/2, no contribution from the shift.
  const auto r = zero_radii(LaurentPolynomial{{-1, 0.5}, {1, -2.0}});
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0], 0.5, 1e-12);
  EXPECT_NEAR(r[1], 0.5, 1e-12);
  EXPECT_TRUE(zero_radii(LaurentPolynomial{{-3, 4.0}}).empty());
  EXPECT_THROW(zero_radii(LaurentPolynomial{}), ArgumentError);
}

TEST(ZeroRadii, MultipleRootsPassTheResidualBound) {
  // (z - 1.5)^4
  const LaurentPolynomial f{{0, 5.0625}, {1, -13.5}, {2, 13.5}, {3, -6.0}, {4, 1.0}};
  const auto r = zero_radii(f);
  ASSERT_EQ(r.size(), 4u);
  for (double x : r) EXPECT_NEAR(x, 1.5, 1e-3);
}

TEST(Properties, EvaluationIsAHomomorphism) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> radius(0.5, 2.0), angle(0.0, 2.0 * std::numbers::pi);
  for (int c = 0; c < 1000; ++c) {
    const auto a = random_poly(rng, -8, 8), b = random_poly(rng, -8, 8);
    const cplx z = std::polar(radius(rng), angle(rng));
    const cplx lhs = evaluate(convolve(a, b), z), rhs = evaluate(a, z) * evaluate(b, z);
    EXPECT_LE(std::abs(lhs - rhs), 1e-10 * std::max(std::abs(rhs), 1e-300) + 1e-13) << c;
  }
}

TEST(Properties, DftRoundTrip) {
  std::mt19937_64 rng(12);
  for (int c = 0; c < 1000; ++c) {
    const auto a = random_poly(rng, -8, 8);
    const auto back = coefficients_from_samples(sample_on_circle(a, 1.0, 64), -16, 15);
    for (std::int64_t n = -16; n <= 15; ++n) ASSERT_NEAR(std::abs(back[n] - a[n]), 0.0, 1e-12) << c << " " << n;
  }
}

TEST(Properties, DftRoundTripOffTheUnitCircle) {
  // Dividing by r^n amplifies rounding in the samples by max_k r^{k-n}.
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> radius(0.5, 2.0);
  for (int c = 0; c < 1000; ++c) {
    const auto a = random_poly(rng, -8, 8);
    const double r = radius(rng);
    const auto back = coefficients_from_samples(sample_on_circle(a, r, 64), -16, 15);
    for (std::int64_t n = -16; n <= 15; ++n) {
      const double cond = std::max(std::pow(r, double(a.low() - n)), std::pow(r, double(a.high() - n)));
      ASSERT_NEAR(std::abs(back[n] - a[n]), 0.0, 1e-12 * std::max(1.0, cond)) << c << " " << n;
    }
  }
}

TEST(Properties, RadiusIndependenceInsideZeroFreeAnnulus) {
  // 1 / ((z - 3)(z - 1/3)) is analytic on 1/3 < |z| < 3.
  auto g = [](cplx z) { return 1.0 / ((z - 3.0) * (z - 1.0 / 3.0)); };
  for (double r : {0.6, 0.8, 1.25, 1.6}) {
    const auto a = coefficients_from_samples(sample_function_on_circle(g, 1.0, 1024), -30, 30);
    const auto b = coefficients_from_samples(sample_function_on_circle(g, r, 1024), -30, 30);
    for (std::int64_t n = -30; n <= 30; ++n) EXPECT_NEAR(std::abs(a[n] - b[n]), 0.0, 1e-8) << r << " " << n;
  }
}

TEST(Properties, RootsHaveSmallResidual) {
  std::mt19937_64 rng(13);
  for (int c = 0; c < 1000; ++c) {
    auto f = random_poly(rng, -6, 6);
    if (f.is_zero()) continue;
    const double scale = coefficient_scale(f);
    const auto roots = zeros(f);
    EXPECT_EQ(roots.size(), static_cast<std::size_t>(f.high() - std::min<std::int64_t>(f.low(), 0)));
    for (cplx z : roots) {
      if (z == 0.0) continue;
      double size = 0.0;
      for (const auto& [n, a] : f.terms()) size += std::abs(a) * std::pow(std::abs(z), double(n - f.low()));
      const double residual = std::abs(evaluate(f, z)) * std::pow(std::abs(z), -double(f.low()));
      EXPECT_LT(residual, 1e-8 * std::max(scale, size)) << c;
    }
  }
}
