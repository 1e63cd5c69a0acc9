#pragma once

// The plane side of the quintic del Pezzo surface: points of P^2(Q), the
// twelve anticanonical cubics vanishing at (1:0:0), (0:1:0), (0:0:1), (1:1:1),
// the anticanonical height, and the open set U away from the ten lines.

#include <array>
#include <compare>
#include <string>

#include "dp5/arith.hpp"

namespace dp5 {

/// Largest coordinate magnitude accepted by evaluate_forms/height (2^31).
inline constexpr i64 kMaxCoordinate = i64{1} << 31;

/// Primitive integer triple with first nonzero coordinate positive.
class ProjectivePoint {
 public:
  /// Divides out the content and fixes the sign. Throws std::invalid_argument on (0,0,0).
  static ProjectivePoint normalized(i64 y1, i64 y2, i64 y3);

  /// Accepts only triples that already are primitive and sign-normalized;
  /// throws std::invalid_argument otherwise.
  ProjectivePoint(i64 y1, i64 y2, i64 y3);

  i64 y1() const { return y_[0]; }
  i64 y2() const { return y_[1]; }
  i64 y3() const { return y_[2]; }
  const std::array<i64, 3>& coords() const { return y_; }

  std::string to_string() const;

  friend auto operator<=>(const ProjectivePoint&, const ProjectivePoint&) = default;

 private:
  struct Unchecked {};
  ProjectivePoint(Unchecked, i64 y1, i64 y2, i64 y3) : y_{y1, y2, y3} {}
  std::array<i64, 3> y_;
};

/// Monomials y1^a y2^b y3^c with a+b+c = 3, in the order used by CubicForm::coefficients.
inline constexpr std::array<std::array<int, 3>, 10> kCubicMonomials{{
    {3, 0, 0}, {2, 1, 0}, {2, 0, 1}, {1, 2, 0}, {1, 1, 1},
    {1, 0, 2}, {0, 3, 0}, {0, 2, 1}, {0, 1, 2}, {0, 0, 3},
}};

/// One member of the anticanonical basis.
///   family 1: Y_i Y_j (Y_i - Y_k)
///   family 2: Y_j (Y_i - Y_j)(Y_i - Y_k)
/// with (i, j, k) a permutation of (1, 2, 3).
struct CubicForm {
  int family;
  int i, j, k;
  std::array<int, 10> coefficients;  // expanded, over kCubicMonomials

  i128 evaluate(i128 y1, i128 y2, i128 y3) const;
  double evaluate(double y1, double y2, double y3) const;
  std::string to_string() const;
};

/// The twelve forms: family 1 in lexicographic (i, k) order, then family 2 likewise.
const std::array<CubicForm, 12>& anticanonical_basis();

std::array<i128, 12> evaluate_forms(const ProjectivePoint& p);

/// y1 y2 y3 != 0 and the coordinates pairwise distinct.
bool is_in_U(const ProjectivePoint& p);

/// max |P(y)| / gcd P(y) over the basis. Throws std::domain_error off U and
/// std::overflow_error for coordinates beyond kMaxCoordinate.
i128 height(const ProjectivePoint& p);

/// Same quantity on raw coordinates in the fast 64-bit range (|y_i| <= 2^20);
/// assumes (y1, y2, y3) is a primitive point of U.
i64 height_small(i64 y1, i64 y2, i64 y3);

}  // namespace dp5
