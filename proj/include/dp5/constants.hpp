#pragma once

// Ingredients of the leading constant c = alpha * omega_infinity * theta_1.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "dp5/arith.hpp"

namespace dp5 {

/// The value printed for V1 in the literature; inconsistent with V1 = 3 alpha / 5.
inline const char* const kLiteratureV1 = "1/180";

struct PolytopeVolumes {
  mpq_class by_slicing;
  mpq_class by_triangulation;
};

/// Both exact volumes of the V1 polytope.
PolytopeVolumes polytope_volumes();

/// V1; throws std::logic_error if the two methods disagree.
mpq_class polytope_volume();

/// 5 V1 / 3; throws std::logic_error unless it equals 1/144.
mpq_class alpha();

struct OmegaControls {
  double cutoff = 32.0;          // W
  double tolerance = 1e-8;       // relative tolerance on each quadrature piece
  unsigned max_depth = 4;        // bisection depth of the adaptive rule
  double tail_constant = 0.0;    // K in the tail bound K W^-3; 0 means kOmegaTailConstant
};

/// Empirical constant for vol(infinity) - vol(W) <= K W^-3. The increments
/// vol(W) - vol(W/2) = 7K/W^3 measured at W = 16, 32, 64 give K = 8.00 +- 0.01;
/// 10 leaves a margin. Not a proven bound.
inline constexpr double kOmegaTailConstant = 10.0;

struct OmegaResult {
  double cutoff = 0.0;
  double volume = 0.0;             // z-volume of the truncated region
  double value = 0.0;              // 3/2 * volume
  double quadrature_error = 0.0;   // on value, change against a coarser pass
  double tail_bound = 0.0;         // on value, 3/2 K W^-3
  double error = 0.0;              // quadrature_error + tail_bound
  double target = 0.0;             // 2 pi^2
};

/// (3/2) vol{(u, v, w) : all 12 path products |z_ij z_jk z_kl| <= 1, all |z_ij| <= W}
/// with (z12, z23, z34) = (u, v, w), z13 = v - w, z24 = v - u, z14 = v - w - u.
/// The u-fibre is measured exactly; (v, w) uses nested adaptive Gauss-Kronrod.
OmegaResult omega_infinity(const OmegaControls& controls = {});

/// The same volume after z12 = y3, z23 = y1, z34 = y1 - y2: the region
/// {max_P |P(y)| <= 1, |y_i| <= W, |y_i - y_j| <= W}, fibred over y1 using the
/// expanded cubic forms.
OmegaResult omega_infinity_y(const OmegaControls& controls = {});

struct MonteCarloResult {
  double volume = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
};

/// Uniform sampling of the z-region inside [-W, W]^3 (mt19937_64, fixed seed).
MonteCarloResult omega_volume_monte_carlo(double W, std::uint64_t samples, std::uint64_t seed = 20240601);

/// The u-length of the fibre over (v, w); exposed for tests.
double omega_fibre_length(double v, double w, double W);

struct Theta1Result {
  i64 prime_limit = 0;
  double partial = 0.0;   // product over p <= P
  double lower = 0.0;     // partial * exp(-tail_log)
  double upper = 0.0;     // partial (every factor is < 1)
  double tail_log = 0.0;  // bound on -log(theta1 / partial)
  double tail_abs() const { return upper - lower; }
};

/// Euler factor (1 - 1/p)^5 (1 + 5/p + 1/p^2).
mpq_class theta1_factor(i64 p);

/// Exact partial product over p <= P.
mpq_class theta1_partial(i64 P);

/// Partial product with tail bound from |log factor(p)| <= 15/p^2 for p >= 7.
Theta1Result theta1(i64 P);

struct ConstantsReport {
  mpq_class v1;
  mpq_class v1_slicing;
  mpq_class v1_triangulation;
  mpq_class alpha;
  bool literature_v1_consistent = false;
  OmegaResult omega;
  Theta1Result theta1;
  double c = 0.0;
  double c_lower = 0.0;
  double c_upper = 0.0;
};

struct ConstantsControls {
  OmegaControls omega;
  i64 prime_limit = 1'000'000;
};

ConstantsReport leading_constant(const ConstantsControls& controls = {});

/// c B (log B)^4; requires B >= 3.
double predicted_count(double c, double B);

}  // namespace dp5
