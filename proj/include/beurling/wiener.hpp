#pragma once

// Weighted inversion: for a Laurent polynomial f with no zero on the unit
// circle, build a weight nu <= w whose Gelfand annulus avoids every zero
// of f, then compute the coefficients of 1/f in l1(Z, nu).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include "beurling/algebra.hpp"
#include "beurling/error.hpp"
#include "beurling/series.hpp"
#include "beurling/weights.hpp"

namespace beurling {

inline constexpr double kDefaultEpsilon = 0.1;
inline constexpr std::int64_t kDefaultTruncation = 64;
inline constexpr std::size_t kDefaultSamples = 4096;
/// Zeros closer than this to the unit circle count as zeros on it.
inline constexpr double kUnitCircleTol = 1e-8;
/// Smallest |f| tolerated on the sampling annulus.
inline constexpr double kConditioningFloor = 1e-10;

/// Which of the two radii of w sit at 1.
enum class NuCase {
  I,    ///< rho2 = 1 = rho1
  II,   ///< rho2 = 1 < rho1
  III,  ///< rho2 < 1 = rho1
  IV,   ///< rho2 < 1 < rho1
};

inline const char* to_string(NuCase c) {
  switch (c) {
    case NuCase::I: return "i";
    case NuCase::II: return "ii";
    case NuCase::III: return "iii";
    case NuCase::IV: return "iv";
  }
  return "?";
}

struct NuConstruction {
  WeightSpec nu;
  double r1 = 1.0;
  double r2 = 1.0;
  NuCase which = NuCase::I;
  double epsilon = kDefaultEpsilon;
  /// [r2, r1]: zero-free for f and contained in the Gelfand annulus of w.
  Annulus safe_annulus;
  /// Smallest zero modulus above 1 (infinity if none).
  double zero_outer = kInfinity;
  /// Largest zero modulus below 1 (0 if none).
  double zero_inner = 0.0;
  RadiusPair omega_radii;
};

/// Pick r1 and r2 between 1 and the nearest zero moduli of f, shrunk
/// towards 1 by the factor (1 - epsilon) and clipped to the Gelfand
/// annulus of w, and form nu(n) = r1^n (n >= 0), r2^n (n <= 0). When w has
/// both radii equal to 1 the construction returns nu = w.
inline NuConstruction construct_nu(const LaurentPolynomial& f, const WeightSpec& w, double epsilon = kDefaultEpsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ArgumentError("epsilon must lie in (0, 1)");
  if (f.is_zero()) throw NumericalError("f vanishes on the unit circle (f is the zero element)");

  NuConstruction out;
  out.epsilon = epsilon;
  for (double r : zero_radii(f)) {
    if (std::abs(r - 1.0) <= kUnitCircleTol)
      throw NumericalError("f vanishes on the unit circle (zero of modulus " + detail::format_double(r) + ")");
    if (r > 1.0) out.zero_outer = std::min(out.zero_outer, r);
    if (r < 1.0) out.zero_inner = std::max(out.zero_inner, r);
  }

  const auto rho = rho_bounds(w);
  out.omega_radii = rho;
  const bool inner_trivial = rho.rho2 == 1.0, outer_trivial = rho.rho1 == 1.0;
  out.which = inner_trivial ? (outer_trivial ? NuCase::I : NuCase::II) : (outer_trivial ? NuCase::III : NuCase::IV);

  out.r1 = outer_trivial ? 1.0
                         : std::min(rho.rho1, std::isinf(out.zero_outer)
                                                  ? kInfinity
                                                  : 1.0 + (1.0 - epsilon) * (out.zero_outer - 1.0));
  out.r2 = inner_trivial ? 1.0 : std::max(rho.rho2, 1.0 - (1.0 - epsilon) * (1.0 - out.zero_inner));

  out.nu = out.which == NuCase::I ? w : WeightSpec::two_sided(out.r1, out.r2);
  out.safe_annulus = {out.r2, out.r1};

  if (!(rho.rho2 <= out.r2 && out.r2 <= 1.0 && 1.0 <= out.r1 && out.r1 <= rho.rho1))
    throw NumericalError("nu radii escaped the Gelfand annulus of the weight");
  if (out.zero_outer <= out.r1 || out.zero_inner >= out.r2)
    throw NumericalError("nu annulus contains a zero of f");
  return out;
}

/// Radii at which invert() samples 1/f: just inside the nearest zero
/// moduli, at the distance where the aliased mass (r / m+)^(M - 2N) drops
/// below 2^-60, and never inside the nu annulus itself. Reading c_n close to
/// the singularity keeps the rounding error relative to |c_n| nearly flat in n.
/// When one side holds no zero (the origin aside) 1/f is analytic there
/// apart from a pole at 0, so sampling a factor 2 further out is exact up to
/// aliasing and damps rounding noise by 2^-|n|.
struct SamplingRadii {
  double outer = 1.0;
  double inner = 1.0;
};

inline SamplingRadii sampling_radii(const NuConstruction& nu, std::int64_t truncation, std::size_t samples) {
  const double margin = 60.0 * std::numbers::ln2 / static_cast<double>(static_cast<std::int64_t>(samples) - 2 * truncation);
  SamplingRadii r{nu.r1, nu.r2};
  r.outer = std::isfinite(nu.zero_outer) ? std::max(nu.r1, nu.zero_outer * std::exp(-margin)) : 2.0 * nu.r1;
  r.inner = nu.zero_inner > 0.0 ? std::min(nu.r2, nu.zero_inner * std::exp(margin)) : 0.5 * nu.r2;
  return r;
}

/// Coefficients c_n, |n| <= truncation, of 1/f in l1(Z, nu). Indices n >= 0
/// are read from samples of 1/f outside the unit circle and n < 0 from
/// samples inside it (see sampling_radii), so each side comes from where
/// its Cauchy estimate is sharpest.
inline BeurlingElement invert(const LaurentPolynomial& f, const NuConstruction& nu,
                              std::int64_t truncation = kDefaultTruncation, std::size_t samples = kDefaultSamples) {
  if (truncation < 1) throw ArgumentError("truncation must be >= 1");
  if (!detail::is_power_of_two(samples)) throw ArgumentError("sample count must be a power of two");
  if (static_cast<std::int64_t>(samples) < 2 * (truncation + 1))
    throw ArgumentError("sample count must be at least 2 * (truncation + 1)");

  const auto radii = sampling_radii(nu, truncation, samples);
  const auto floor = min_modulus(f, Annulus{radii.inner, radii.outer}, 9,
                                 static_cast<int>(std::min<std::size_t>(samples, 1024)));
  if (floor.value < kConditioningFloor)
    throw NumericalError("f is ill-conditioned on the sampling annulus (min |f| = " +
                         detail::format_double(floor.value) + ")");

  auto reciprocal = [&](cplx z) { return 1.0 / evaluate(f, z); };
  const auto outer = sample_function_on_circle(reciprocal, radii.outer, samples);
  auto pos = coefficients_from_samples(outer, 0, truncation);
  LaurentPolynomial neg;
  if (radii.inner == radii.outer) {
    neg = coefficients_from_samples(outer, -truncation, -1);
  } else {
    const auto inner = sample_function_on_circle(reciprocal, radii.inner, samples);
    neg = coefficients_from_samples(inner, -truncation, -1);
  }
  return BeurlingElement::make(neg + pos, nu.nu,
                               TailModel::geometric(nu.zero_outer, nu.zero_inner, -truncation, truncation));
}

/// ||f * c - delta_0||_nu for a computed inverse c.
inline double inversion_residual(const LaurentPolynomial& f, const BeurlingElement& inverse) {
  return weighted_norm(convolve(f, inverse.coeffs) - LaurentPolynomial::identity(), inverse.weight);
}

/// Geometric rate max(r1 / m+, m- / r2) at which truncation errors decay.
inline double truncation_rate(const NuConstruction& nu) {
  const double pos = std::isinf(nu.zero_outer) ? 0.0 : nu.r1 / nu.zero_outer;
  const double neg = nu.zero_inner / nu.r2;
  return std::max(pos, neg);
}

struct WienerReport {
  NuConstruction construction;
  BeurlingElement inverse;
  Summability under_nu;
  Summability under_omega;
  /// 1/f summable against nu.
  bool clause_summable = false;
  /// nu constant exactly when w is.
  bool clause_constancy = false;
  /// nu <= w on the checked window.
  bool clause_dominated = false;
  double residual = 0.0;
  /// ||f||_nu * (C rate^N + T + C 1e-12): C the certified norm of the
  /// inverse, T its modelled tail under nu past the window.
  double residual_bound = 0.0;
  bool residual_ok = false;

  bool passed() const { return clause_summable && clause_constancy && clause_dominated && residual_ok; }
};

inline constexpr std::int64_t kClauseWindow = 128;

inline WienerReport wiener_report(const LaurentPolynomial& f, const WeightSpec& w, double epsilon = kDefaultEpsilon,
                                  std::int64_t truncation = kDefaultTruncation,
                                  std::size_t samples = kDefaultSamples) {
  WienerReport rep;
  rep.construction = construct_nu(f, w, epsilon);
  rep.inverse = invert(f, rep.construction, truncation, samples);
  rep.under_nu = classify_summability(rep.inverse);
  rep.under_omega = classify_summability(rep.inverse.reweighted(w));
  rep.clause_summable = rep.under_nu.verdict == Summability::Verdict::Convergent;
  rep.clause_constancy = is_constant(rep.construction.nu) == is_constant(w);
  rep.clause_dominated = pointwise_leq(rep.construction.nu, w, kClauseWindow);

  rep.residual = inversion_residual(f, rep.inverse);
  const double certified = rep.clause_summable ? rep.under_nu.bound : rep.inverse.norm;
  const double f_norm = weighted_norm(f, rep.construction.nu);
  const double tail = rep.clause_summable ? rep.under_nu.tail_estimate : 0.0;
  rep.residual_bound =
      f_norm * (certified * std::pow(truncation_rate(rep.construction), static_cast<double>(truncation)) + tail +
                certified * 1e-12);
  rep.residual_ok = rep.residual <= rep.residual_bound;
  return rep;
}

}  // namespace beurling
