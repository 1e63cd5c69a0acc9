#include "dp5/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace dp5 {

namespace {

using Linear = std::array<int, 3>;

Linear unit(int idx) {
  Linear l{0, 0, 0};
  l[idx - 1] = 1;
  return l;
}

Linear difference(int a, int b) {
  Linear l{0, 0, 0};
  l[a - 1] += 1;
  l[b - 1] -= 1;
  return l;
}

std::array<int, 10> expand(const Linear& f, const Linear& g, const Linear& h) {
  std::array<int, 10> c{};
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 3; ++y) {
      for (int z = 0; z < 3; ++z) {
        std::array<int, 3> e{0, 0, 0};
        ++e[x];
        ++e[y];
        ++e[z];
        auto it = std::find(kCubicMonomials.begin(), kCubicMonomials.end(), e);
        c[static_cast<std::size_t>(it - kCubicMonomials.begin())] += f[x] * g[y] * h[z];
      }
    }
  }
  return c;
}

std::array<CubicForm, 12> build_basis() {
  std::array<CubicForm, 12> basis{};
  const std::array<std::pair<int, int>, 6> ik{{{1, 2}, {1, 3}, {2, 1}, {2, 3}, {3, 1}, {3, 2}}};
  std::size_t n = 0;
  for (int family = 1; family <= 2; ++family) {
    for (auto [i, k] : ik) {
      int j = 6 - i - k;
      CubicForm f{family, i, j, k, {}};
      f.coefficients = family == 1 ? expand(unit(i), unit(j), difference(i, k))
                                   : expand(unit(j), difference(i, j), difference(i, k));
      basis[n++] = f;
    }
  }
  return basis;
}

void check_range(const ProjectivePoint& p) {
  for (i64 v : p.coords()) {
    if (abs64(v) > kMaxCoordinate) {
      throw std::overflow_error("coordinate " + std::to_string(v) + " exceeds 2^31");
    }
  }
}

}  // namespace

ProjectivePoint ProjectivePoint::normalized(i64 y1, i64 y2, i64 y3) {
  i64 g = gcd(gcd(y1, y2), y3);
  if (g == 0) throw std::invalid_argument("(0,0,0) is not a projective point");
  y1 /= g;
  y2 /= g;
  y3 /= g;
  i64 lead = y1 != 0 ? y1 : (y2 != 0 ? y2 : y3);
  if (lead < 0) {
    y1 = -y1;
    y2 = -y2;
    y3 = -y3;
  }
  return ProjectivePoint(Unchecked{}, y1, y2, y3);
}

ProjectivePoint::ProjectivePoint(i64 y1, i64 y2, i64 y3) : y_{y1, y2, y3} {
  if (normalized(y1, y2, y3) != *this) {
    throw std::invalid_argument("(" + std::to_string(y1) + "," + std::to_string(y2) + "," +
                                std::to_string(y3) + ") is not primitive and sign-normalized");
  }
}

std::string ProjectivePoint::to_string() const {
  return "(" + std::to_string(y_[0]) + ":" + std::to_string(y_[1]) + ":" +
         std::to_string(y_[2]) + ")";
}

i128 CubicForm::evaluate(i128 y1, i128 y2, i128 y3) const {
  const std::array<i128, 3> y{y1, y2, y3};
  auto yi = y[i - 1], yj = y[j - 1], yk = y[k - 1];
  if (family == 1) return checked_mul(checked_mul(yi, yj), yi - yk);
  return checked_mul(checked_mul(yj, yi - yj), yi - yk);
}

double CubicForm::evaluate(double y1, double y2, double y3) const {
  const std::array<double, 3> y{y1, y2, y3};
  double yi = y[i - 1], yj = y[j - 1], yk = y[k - 1];
  return family == 1 ? yi * yj * (yi - yk) : yj * (yi - yj) * (yi - yk);
}

std::string CubicForm::to_string() const {
  auto Y = [](int idx) { return "Y" + std::to_string(idx); };
  if (family == 1) return Y(i) + Y(j) + "(" + Y(i) + "-" + Y(k) + ")";
  return Y(j) + "(" + Y(i) + "-" + Y(j) + ")(" + Y(i) + "-" + Y(k) + ")";
}

const std::array<CubicForm, 12>& anticanonical_basis() {
  static const std::array<CubicForm, 12> basis = build_basis();
  return basis;
}

std::array<i128, 12> evaluate_forms(const ProjectivePoint& p) {
  check_range(p);
  std::array<i128, 12> out{};
  const auto& basis = anticanonical_basis();
  for (std::size_t n = 0; n < basis.size(); ++n) out[n] = basis[n].evaluate(i128{p.y1()}, i128{p.y2()}, i128{p.y3()});
  return out;
}

bool is_in_U(const ProjectivePoint& p) {
  i64 y1 = p.y1(), y2 = p.y2(), y3 = p.y3();
  return y1 != 0 && y2 != 0 && y3 != 0 && y1 != y2 && y1 != y3 && y2 != y3;
}

i128 height(const ProjectivePoint& p) {
  if (!is_in_U(p)) throw std::domain_error(p.to_string() + " lies on one of the lines");
  auto values = evaluate_forms(p);
  i128 mx = 0, g = 0;
  for (i128 v : values) {
    mx = std::max(mx, abs128(v));
    g = gcd(g, v);
  }
  return mx / g;
}

i64 height_small(i64 y1, i64 y2, i64 y3) {
  // Family 1 then family 2, same order as anticanonical_basis().
  const i64 d12 = y1 - y2, d13 = y1 - y3, d23 = y2 - y3;
  const i64 v[12] = {
      y1 * y3 * d12,  y1 * y2 * d13,   y2 * y3 * -d12, y2 * y1 * d23,
      y3 * y2 * -d13, y3 * y1 * -d23,  y3 * d13 * d12, y2 * d12 * d13,
      y3 * d23 * -d12, y1 * -d12 * d23, y2 * d23 * -d13, y1 * -d13 * -d23,
  };
  i64 mx = 0, g = 0;
  for (i64 x : v) {
    mx = std::max(mx, abs64(x));
    g = gcd(g, x);
  }
  return mx / g;
}

}  // namespace dp5
