#include "dp5/torsor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dp5 {

namespace {

int edge_slot(int i, int j) {
  if (i > j) std::swap(i, j);
  switch (i * 10 + j) {
    case 12: return 0;
    case 13: return 1;
    case 14: return 2;
    case 23: return 3;
    case 24: return 4;
    case 34: return 5;
    default: throw std::out_of_range("edge index");
  }
}

std::array<int, 3> complement(int l) {
  std::array<int, 3> out{};
  int c = 0;
  for (int x = 1; x <= 4; ++x) {
    if (x != l) out[c++] = x;
  }
  return out;
}

i64 to_i64(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("value exceeds 64 bits");
  return static_cast<i64>(v);
}

}  // namespace

i64 TorsorPoint::vertex(int i) const {
  return const_cast<TorsorPoint*>(this)->vertex(i);
}

i64& TorsorPoint::vertex(int i) {
  switch (i) {
    case 1: return a1;
    case 2: return a2;
    case 3: return a3;
    case 4: return a4;
    default: throw std::out_of_range("vertex index");
  }
}

i64 TorsorPoint::edge(int i, int j) const {
  return const_cast<TorsorPoint*>(this)->edge(i, j);
}

i64& TorsorPoint::edge(int i, int j) {
  i64* e[6] = {&a12, &a13, &a14, &a23, &a24, &a34};
  return *e[edge_slot(i, j)];
}

std::array<i64, 10> TorsorPoint::to_array() const {
  return {a1, a2, a3, a4, a12, a13, a14, a23, a24, a34};
}

TorsorPoint TorsorPoint::from_array(const std::array<i64, 10>& v) {
  return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9]};
}

std::string TorsorPoint::to_string() const {
  auto v = to_array();
  std::string s = "(";
  for (std::size_t n = 0; n < v.size(); ++n) {
    if (n > 0) s += n == 4 ? "; " : ",";
    s += std::to_string(v[n]);
  }
  return s + ")";
}

std::array<i128, 5> torsor_residuals(const TorsorPoint& t) {
  auto m = [](i64 x, i64 y) { return static_cast<i128>(x) * y; };
  return {
      m(t.a4, t.a14) - m(t.a3, t.a13) + m(t.a2, t.a12),
      m(t.a4, t.a24) - m(t.a3, t.a23) + m(t.a1, t.a12),
      m(t.a4, t.a34) - m(t.a2, t.a23) + m(t.a1, t.a13),
      m(t.a3, t.a34) - m(t.a2, t.a24) + m(t.a1, t.a14),
      m(t.a12, t.a34) - m(t.a13, t.a24) + m(t.a23, t.a14),
  };
}

bool check_torsor_equations(const TorsorPoint& t) {
  auto r = torsor_residuals(t);
  return std::all_of(r.begin(), r.end(), [](i128 v) { return v == 0; });
}

bool check_coprimality(const TorsorPoint& t) {
  for (int i = 1; i <= 4; ++i) {
    for (int j = 1; j <= 4; ++j) {
      if (j == i) continue;
      if (gcd(t.vertex(i), t.vertex(j)) != 1) return false;
      for (int k = j + 1; k <= 4; ++k) {
        if (k == i) continue;
        if (gcd(t.vertex(i), t.edge(j, k)) != 1) return false;
        if (gcd(t.edge(i, j), t.edge(i, k)) != 1) return false;
      }
    }
  }
  return true;
}

bool is_valid(const TorsorPoint& t) {
  auto v = t.to_array();
  if (std::any_of(v.begin(), v.end(), [](i64 x) { return x == 0; })) return false;
  return check_torsor_equations(t) && check_coprimality(t);
}

std::array<i128, 12> path_monomials(const TorsorPoint& t) {
  std::array<i128, 12> out{};
  for (std::size_t n = 0; n < kPaths.size(); ++n) {
    auto [i, j, k, l] = kPaths[n];
    i128 v = abs128(t.edge(i, j));
    v = checked_mul(v, abs128(t.vertex(j)));
    v = checked_mul(v, abs128(t.edge(j, k)));
    v = checked_mul(v, abs128(t.vertex(k)));
    v = checked_mul(v, abs128(t.edge(k, l)));
    out[n] = v;
  }
  return out;
}

i128 torsor_height(const TorsorPoint& t) {
  auto m = path_monomials(t);
  return *std::max_element(m.begin(), m.end());
}

bool torsor_height_at_most(const TorsorPoint& t, i64 B) {
  for (auto [i, j, k, l] : kPaths) {
    const i64 factors[5] = {t.edge(i, j), t.vertex(j), t.edge(j, k), t.vertex(k), t.edge(k, l)};
    i128 v = 1;
    for (i64 f : factors) {
      v *= abs128(f);
      if (v > B) return false;
    }
  }
  return true;
}

TorsorPoint parameterize(const ProjectivePoint& p) {
  if (!is_in_U(p)) throw std::domain_error(p.to_string() + " is not in U");
  const i64 y1 = p.y1(), y2 = p.y2(), y3 = p.y3();
  TorsorPoint t;
  t.a1 = gcd(y2, y3);
  t.a2 = gcd(y1, y3);
  t.a3 = gcd(y1, y2);
  t.a4 = gcd(y1 - y2, y1 - y3);
  t.a12 = y3 / (t.a1 * t.a2);
  t.a13 = y2 / (t.a1 * t.a3);
  t.a23 = y1 / (t.a2 * t.a3);
  t.a14 = (y2 - y3) / (t.a1 * t.a4);
  t.a24 = (y1 - y3) / (t.a2 * t.a4);
  t.a34 = (y1 - y2) / (t.a3 * t.a4);
  return t;
}

ProjectivePoint project(const TorsorPoint& t) {
  if (!check_torsor_equations(t)) throw std::invalid_argument(t.to_string() + " is off the torsor");
  const i128 y1 = checked_mul(checked_mul(t.a2, t.a3), t.a23);
  const i128 y2 = checked_mul(checked_mul(t.a1, t.a3), t.a13);
  const i128 y3 = checked_mul(checked_mul(t.a1, t.a2), t.a12);
  if (y1 == 0 || y2 == 0 || y3 == 0) throw std::invalid_argument(t.to_string() + " has a zero coordinate");
  return ProjectivePoint::normalized(to_i64(y1), to_i64(y2), to_i64(y3));
}

TorsorPoint flip_vertex(const TorsorPoint& t, int i) {
  TorsorPoint s = t;
  s.vertex(i) = -s.vertex(i);
  for (int j = 1; j <= 4; ++j) {
    if (j != i) s.edge(i, j) = -s.edge(i, j);
  }
  return s;
}

TorsorPoint flip_edges(const TorsorPoint& t) {
  TorsorPoint s = t;
  s.a12 = -s.a12;
  s.a13 = -s.a13;
  s.a14 = -s.a14;
  s.a23 = -s.a23;
  s.a24 = -s.a24;
  s.a34 = -s.a34;
  return s;
}

TorsorPoint canonical_representative(const TorsorPoint& t) {
  TorsorPoint s = t;
  for (int i = 1; i <= 4; ++i) {
    if (s.vertex(i) < 0) s = flip_vertex(s, i);
  }
  if (s.a23 < 0) s = flip_edges(s);
  return s;
}

std::array<TorsorPoint, 32> sign_orbit(const TorsorPoint& t) {
  std::array<TorsorPoint, 32> out{};
  for (int mask = 0; mask < 32; ++mask) {
    TorsorPoint s = t;
    for (int i = 1; i <= 4; ++i) {
      if (mask & (1 << (i - 1))) s = flip_vertex(s, i);
    }
    if (mask & 16) s = flip_edges(s);
    out[static_cast<std::size_t>(mask)] = s;
  }
  std::sort(out.begin(), out.end());
  return out;
}

TorsorPoint weyl_involution(int l, const TorsorPoint& t) {
  if (l < 1 || l > 4) throw std::out_of_range("weyl_involution: l must be in 1..4");
  auto [i, j, k] = complement(l);
  TorsorPoint s = t;
  std::swap(s.edge(i, j), s.vertex(k));
  std::swap(s.edge(i, k), s.vertex(j));
  std::swap(s.edge(j, k), s.vertex(i));
  switch (l) {
    case 1: s.a1 = -s.a1; break;
    case 2: s.a12 = -s.a12; break;
    case 3: s.a34 = -s.a34; break;
    default: s.a4 = -s.a4; break;
  }
  return s;
}

std::array<i128, 5> skew_quintuples(const TorsorPoint& t) {
  std::array<i128, 5> q{};
  q[0] = checked_mul(checked_mul(abs128(t.a1), abs128(t.a2)), checked_mul(abs128(t.a3), abs128(t.a4)));
  for (int l = 1; l <= 4; ++l) {
    auto [i, j, k] = complement(l);
    q[static_cast<std::size_t>(l)] =
        checked_mul(checked_mul(abs128(t.edge(i, j)), abs128(t.edge(i, k))),
                    checked_mul(abs128(t.edge(j, k)), abs128(t.vertex(l))));
  }
  return q;
}

DependentResult dependent_coordinates(const std::array<i64, 4>& a, i64 a12, i64 a23, i64 a34) {
  const auto [a1, a2, a3, a4] = a;
  if (a1 == 0 || a2 == 0 || a3 == 0 || a4 == 0) {
    throw std::invalid_argument("dependent_coordinates: a_i must be nonzero");
  }
  DependentResult r;
  if (gcd(a1, a4) != 1) {
    r.status = DependentStatus::a1_a4_not_coprime;
    return r;
  }
  const i128 n13 = static_cast<i128>(a2) * a23 - static_cast<i128>(a4) * a34;
  const i128 n24 = static_cast<i128>(a3) * a23 - static_cast<i128>(a1) * a12;
  if (n13 % a1 != 0 || n24 % a4 != 0) {
    r.status = DependentStatus::congruence_fails;
    return r;
  }
  const i128 n14 = checked_mul(checked_mul(a2, a3), a23) - checked_mul(checked_mul(a3, a4), a34) -
                   checked_mul(checked_mul(a1, a2), a12);
  r.a13 = to_i64(n13 / a1);
  r.a24 = to_i64(n24 / a4);
  r.a14 = to_i64(n14 / (static_cast<i128>(a1) * a4));
  return r;
}

bool satisfies_symmetry(const TorsorPoint& t) {
  for (int l = 1; l <= 4; ++l) {
    auto [i, j, k] = complement(l);
    i128 lhs = checked_mul(checked_mul(abs128(t.vertex(i)), abs128(t.vertex(j))), abs128(t.vertex(k)));
    i128 rhs = checked_mul(checked_mul(abs128(t.edge(i, j)), abs128(t.edge(i, k))), abs128(t.edge(j, k)));
    if (lhs > rhs) return false;
  }
  return true;
}

std::array<double, 6> typical_sizes(double B, const std::array<i64, 4>& a) {
  const double A = std::fabs(static_cast<double>(a[0]) * a[1] * a[2] * a[3]);
  const double base = std::cbrt(B * A);
  const std::array<std::pair<int, int>, 6> ij{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  std::array<double, 6> out{};
  for (std::size_t n = 0; n < 6; ++n) {
    out[n] = base / std::fabs(static_cast<double>(a[ij[n].first]) * a[ij[n].second]);
  }
  return out;
}

std::array<double, 6> z_coordinates(const TorsorPoint& t, double B) {
  auto b = typical_sizes(B, {t.a1, t.a2, t.a3, t.a4});
  const i64 e[6] = {t.a12, t.a13, t.a14, t.a23, t.a24, t.a34};
  std::array<double, 6> z{};
  for (std::size_t n = 0; n < 6; ++n) z[n] = static_cast<double>(e[n]) / b[n];
  return z;
}

}  // namespace dp5
