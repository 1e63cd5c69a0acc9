#pragma once

// Moebius data (d, e), the lattice G(a', d, e) of admissible (a12, a23, a34),
// and the arithmetic densities theta_0, theta(a', T), theta(a').

#include <gmpxx.h>

#include <array>
#include <vector>

#include "dp5/arith.hpp"

namespace dp5 {

using Quad = std::array<i64, 4>;

struct MoebiusDatum {
  Quad d{1, 1, 1, 1};
  Quad e{1, 1, 1, 1};

  /// f_ij = [d_i; d_j] e_k e_l with {k, l} the complement of {i, j}.
  i64 f(int i, int j) const;
  /// e3 e4 [d1; d2; (d3; d4)].
  i64 b12() const;
  /// e1 [d2; d3; d4].
  i64 b23() const;
  /// e2 [d1; d3; d4].
  i64 b34() const;
  /// mu(d1) ... mu(d4) mu(e1) ... mu(e4).
  int mu() const;

  /// (d_i; a_j) = 1 for i != j, e_i | a_i, every component squarefree.
  bool admissible(const Quad& a) const;
};

/// (a12, a23, a34) such that the dependent coordinates are integral and
/// f_ij | a_ij for all six pairs. Requires (a1; a4) = 1.
bool lattice_membership(const Quad& a, const MoebiusDatum& m, i64 a12, i64 a23, i64 a34);

/// Triangular description of G(a', d, e):
///   a12 = 0 (mod m12),
///   a23 = gamma23(a12) (mod m23),
///   a34 = gamma34(a12, a23) (mod m34).
/// Basis columns (m12, c21, c31), (0, m23, c32), (0, 0, m34).
struct LatticeDescription {
  i64 m12 = 1, m23 = 1, m34 = 1;
  i64 c21 = 0, c31 = 0, c32 = 0;

  /// Residue of a23 modulo m23; a12 must be a multiple of m12.
  i64 gamma23(i64 a12) const;
  /// Residue of a34 modulo m34; (a12, a23) must satisfy the first two congruences.
  i64 gamma34(i64 a12, i64 a23) const;
  bool contains(i64 a12, i64 a23, i64 a34) const;
  i128 covolume() const;
};

/// Hermite normal form of G(a', d, e) obtained by imposing the six divisibility
/// conditions one at a time. Requires (a1; a4) = 1.
LatticeDescription lattice_normal_form(const Quad& a, const MoebiusDatum& m);

/// 1 iff a1..a4 are pairwise coprime.
int theta0(const Quad& a);

/// Euler factor of theta(a') at p: 1 - 4/p^2 + 3/p^3 if p does not divide
/// a1 a2 a3 a4, else (1 - 1/p)(1 - 1/p^2).
mpq_class theta_euler_factor(const Quad& a, i64 p);

/// Exact truncated density: sum over admissible squarefree (d, e) with all
/// components <= T of mu(d, e) / (b12 b23 b34). Requires theta0(a) = 1 and
/// 1 <= T <= kThetaExactCeiling.
inline constexpr i64 kThetaExactCeiling = 300;
mpq_class theta_truncated(const Quad& a, i64 T);

/// The same sum in double precision. Memory grows like (2 sqrt T)^4 doubles.
inline constexpr i64 kThetaValueCeiling = 1000;
double theta_truncated_value(const Quad& a, i64 T);

struct EulerProduct {
  i64 prime_limit = 0;
  double partial = 0.0;  // product over p <= P and over all p | a1 a2 a3 a4
  double lower = 0.0;    // rigorous enclosure of the infinite product
  double upper = 0.0;
  double tail = 0.0;     // bound on |log(full / partial)|
};

/// theta(a') as a product over primes with tail bound: for p > P not dividing
/// a1 a2 a3 a4 the factor lies in (1 - 4/p^2, 1), and sum_{p > P} 4/p^2 <= 4/P.
EulerProduct theta_euler(const Quad& a, i64 P);

/// Exact partial product over p <= P and all p | a1 a2 a3 a4.
mpq_class theta_euler_partial(const Quad& a, i64 P);

/// All admissible datums whose moduli f_ij stay within the given bounds,
/// ordered by d then e lexicographically.
std::vector<MoebiusDatum> admissible_datums(const Quad& a, const std::array<i64, 6>& f_bounds);

struct MoebiusIdentityResult {
  i64 lhs = 0;          // |A(W, a', B)|
  i64 rhs = 0;          // signed lattice counts
  i64 datums = 0;       // (d, e) pairs with nonempty intersection
  i64 datums_tried = 0; // all (d, e) pairs enumerated
  bool holds() const { return lhs == rhs; }
};

/// Two-sided brute force of the Moebius inversion identity. Requires theta0(a) = 1,
/// all a_i > 0 and 1 <= B <= 200; throws std::invalid_argument otherwise.
MoebiusIdentityResult moebius_identity_check(const Quad& a, i64 B, i64 W);

}  // namespace dp5
