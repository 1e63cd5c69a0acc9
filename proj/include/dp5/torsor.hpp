#pragma once

// Universal torsor coordinates (a1..a4; a12..a34), the five torsor equations,
// coprimality, the parameterization of U, and the Weyl involutions s_l.

#include <array>
#include <compare>
#include <optional>
#include <string>

#include "dp5/arith.hpp"
#include "dp5/geometry.hpp"

namespace dp5 {

/// Ten nonzero integers. Vertices a1..a4, edges a_ij for i < j.
struct TorsorPoint {
  i64 a1 = 0, a2 = 0, a3 = 0, a4 = 0;
  i64 a12 = 0, a13 = 0, a14 = 0, a23 = 0, a24 = 0, a34 = 0;

  /// a_i for i in 1..4.
  i64 vertex(int i) const;
  i64& vertex(int i);
  /// a_ij for distinct i, j in 1..4 (order irrelevant).
  i64 edge(int i, int j) const;
  i64& edge(int i, int j);

  /// Order (a1, a2, a3, a4, a12, a13, a14, a23, a24, a34).
  std::array<i64, 10> to_array() const;
  static TorsorPoint from_array(const std::array<i64, 10>& v);

  std::string to_string() const;

  friend auto operator<=>(const TorsorPoint&, const TorsorPoint&) = default;
};

/// The twelve Hamiltonian paths i-j-k-l of K4 up to reversal, each giving the
/// monomial a_ij a_j a_jk a_k a_kl.
inline constexpr std::array<std::array<int, 4>, 12> kPaths{{
    {1, 2, 3, 4}, {1, 2, 4, 3}, {1, 3, 2, 4}, {1, 3, 4, 2}, {1, 4, 2, 3}, {1, 4, 3, 2},
    {2, 1, 3, 4}, {2, 1, 4, 3}, {2, 3, 1, 4}, {2, 4, 1, 3}, {3, 1, 2, 4}, {3, 2, 1, 4},
}};

/// Residuals of the five torsor equations (all zero on the torsor).
std::array<i128, 5> torsor_residuals(const TorsorPoint& t);
bool check_torsor_equations(const TorsorPoint& t);

/// (a_i;a_j) = (a_i;a_jk) = (a_ij;a_ik) = 1 for all admissible index choices.
bool check_coprimality(const TorsorPoint& t);

/// Nonzero, torsor equations and coprimality.
bool is_valid(const TorsorPoint& t);

/// |a_ij a_j a_jk a_k a_kl| for each entry of kPaths. Throws std::overflow_error.
std::array<i128, 12> path_monomials(const TorsorPoint& t);
i128 torsor_height(const TorsorPoint& t);
/// Early-exit test of torsor_height(t) <= B without forming full products beyond B.
bool torsor_height_at_most(const TorsorPoint& t, i64 B);

/// Canonical representative (a_i > 0, a23 > 0) over p. Throws std::domain_error off U.
TorsorPoint parameterize(const ProjectivePoint& p);

/// y1 = a2 a3 a23, y2 = a1 a3 a13, y3 = a1 a2 a12, then normalized.
/// Throws std::invalid_argument if the torsor equations fail or a coordinate is zero.
ProjectivePoint project(const TorsorPoint& t);

/// Flip the sign of a_i together with its three edges.
TorsorPoint flip_vertex(const TorsorPoint& t, int i);
/// Flip all six edges (the sign of y).
TorsorPoint flip_edges(const TorsorPoint& t);
/// The unique member of the 2^5 sign orbit with a_i > 0 and a23 > 0.
TorsorPoint canonical_representative(const TorsorPoint& t);
/// All 32 members of the sign orbit, sorted.
std::array<TorsorPoint, 32> sign_orbit(const TorsorPoint& t);

/// s_l: with {i,j,k} the complement of l, swap a_ij<->a_k, a_ik<->a_j, a_jk<->a_i,
/// then negate a1 (l=1), a12 (l=2), a34 (l=3) or a4 (l=4).
TorsorPoint weyl_involution(int l, const TorsorPoint& t);

/// Q_0 = |a1 a2 a3 a4| and Q_l = |a_ij a_ik a_jk a_l|; s_l swaps Q_0 and Q_l.
std::array<i128, 5> skew_quintuples(const TorsorPoint& t);

enum class DependentStatus { ok, congruence_fails, a1_a4_not_coprime };

struct DependentResult {
  DependentStatus status = DependentStatus::ok;
  i64 a13 = 0, a24 = 0, a14 = 0;
};

/// a13 = (a2 a23 - a4 a34)/a1, a24 = (a3 a23 - a1 a12)/a4,
/// a14 = (a2 a3 a23 - a3 a4 a34 - a1 a2 a12)/(a1 a4).
DependentResult dependent_coordinates(const std::array<i64, 4>& a, i64 a12, i64 a23, i64 a34);

/// |a_i a_j a_k| <= |a_ij a_ik a_jk| for every triple.
bool satisfies_symmetry(const TorsorPoint& t);

/// B_ij = (B |a1 a2 a3 a4|)^(1/3) / (a_i a_j), in edge order (12, 13, 14, 23, 24, 34).
std::array<double, 6> typical_sizes(double B, const std::array<i64, 4>& a);

/// z_ij = a_ij / B_ij, same order.
std::array<double, 6> z_coordinates(const TorsorPoint& t, double B);

}  // namespace dp5
