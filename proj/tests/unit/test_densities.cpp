#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "dp5/densities.hpp"

using namespace dp5;

namespace {

std::vector<MoebiusDatum> grid_datums(const Quad& a) {
  std::vector<MoebiusDatum> out;
  for (int code = 0; code < 6561; ++code) {
    MoebiusDatum m;
    int c = code;
    for (int i = 0; i < 4; ++i, c /= 3) m.d[i] = 1 + c % 3;
    for (int i = 0; i < 4; ++i, c /= 3) m.e[i] = 1 + c % 3;
    if (m.admissible(a)) out.push_back(m);
  }
  return out;
}

// Direct sum over (d, e) with components <= T; with q > 0 only terms having
// some component equal to q.
mpq_class theta_brute(const Quad& a, i64 T, i64 q = 0) {
  std::vector<i64> sq;
  for (i64 v = 1; v <= T; ++v) {
    if (is_squarefree(v)) sq.push_back(v);
  }
  mpq_class s = 0;
  MoebiusDatum m;
  for (i64 d1 : sq) for (i64 d2 : sq) for (i64 d3 : sq) for (i64 d4 : sq) {
    m.d = {d1, d2, d3, d4};
    for (i64 e1 : sq) for (i64 e2 : sq) for (i64 e3 : sq) for (i64 e4 : sq) {
      m.e = {e1, e2, e3, e4};
      if (!m.admissible(a)) continue;
      if (q > 0 && std::max({d1, d2, d3, d4, e1, e2, e3, e4}) != q) continue;
      s += mpq_class(m.mu(), i64{m.b12()} * m.b23() * m.b34());
    }
  }
  return s;
}

}  // namespace

TEST_CASE("moduli of a datum") {
  MoebiusDatum m;
  m.d = {2, 1, 1, 1};
  CHECK(m.f(1, 2) == 2);
  CHECK(m.f(1, 3) == 2);
  CHECK(m.f(1, 4) == 2);
  CHECK(m.f(2, 3) == 1);
  CHECK(m.b12() == 2);
  CHECK(m.b23() == 1);
  CHECK(m.b34() == 2);
  CHECK(m.mu() == -1);
  m.e = {1, 1, 3, 1};
  CHECK(m.f(1, 2) == 6);
  CHECK(m.f(3, 4) == 1);
  CHECK_FALSE(m.admissible({1, 1, 1, 1}));
  CHECK(m.admissible({1, 1, 3, 1}));
  CHECK_FALSE(MoebiusDatum{{2, 1, 1, 1}, {1, 1, 1, 1}}.admissible({1, 2, 1, 1}));
}

TEST_CASE("membership examples") {
  MoebiusDatum unit;
  MoebiusDatum two{{2, 1, 1, 1}, {1, 1, 1, 1}};
  for (i64 x = -6; x <= 6; ++x) {
    for (i64 y = -6; y <= 6; ++y) {
      for (i64 z = -6; z <= 6; ++z) {
        CHECK(lattice_membership({1, 1, 1, 1}, unit, x, y, z));
        CHECK(lattice_membership({1, 1, 1, 1}, two, x, y, z) == (x % 2 == 0 && (y - z) % 2 == 0));
      }
    }
  }
  CHECK_THROWS_AS(lattice_membership({2, 1, 1, 2}, unit, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("normal form examples") {
  auto L = lattice_normal_form({1, 1, 1, 1}, MoebiusDatum{});
  CHECK(L.m12 == 1);
  CHECK(L.m23 == 1);
  CHECK(L.m34 == 1);
  CHECK(L.gamma23(5) == 0);
  CHECK(L.gamma34(5, 7) == 0);
  auto L2 = lattice_normal_form({1, 1, 1, 1}, MoebiusDatum{{2, 1, 1, 1}, {1, 1, 1, 1}});
  CHECK(L2.m12 == 2);
  CHECK(L2.m23 == 1);
  CHECK(L2.m34 == 2);
  CHECK(L2.covolume() == 4);
}

TEST_CASE("normal form equals membership on a box, with the closed-form moduli") {
  const i64 R = 12;
  for (Quad a : {Quad{1, 1, 1, 1}, Quad{3, 2, 1, 1}, Quad{1, 1, 2, 3}}) {
    for (const auto& m : grid_datums(a)) {
      auto L = lattice_normal_form(a, m);
      CHECK(L.m12 == m.b12());
      CHECK(L.m23 == a[3] * m.b23());
      CHECK(L.m34 == a[0] * m.b34());
      CHECK(L.covolume() == i128{a[0]} * a[3] * m.b12() * m.b23() * m.b34());
      const i64 g34 = gcd(m.d[2], m.d[3]);
      const i64 g23 = lcm(m.d[2], gcd(m.d[0], m.d[3]));
      for (i64 x = -R; x <= R; ++x) {
        for (i64 y = -R; y <= R; ++y) {
          for (i64 z = -R; z <= R; ++z) {
            const bool in = lattice_membership(a, m, x, y, z);
            if (in != L.contains(x, y, z)) {
              FAIL("mismatch at " << x << "," << y << "," << z);
            }
            if (in) {
              CHECK(x % g34 == 0);
              CHECK(y % g23 == 0);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("lattice density approaches the inverse covolume") {
  const Quad a{3, 2, 1, 1};
  const MoebiusDatum m{{1, 1, 2, 1}, {3, 1, 1, 1}};
  const auto L = lattice_normal_form(a, m);
  const i64 R = 40;
  i64 hits = 0;
  for (i64 x = -R; x <= R; ++x)
    for (i64 y = -R; y <= R; ++y)
      for (i64 z = -R; z <= R; ++z) hits += lattice_membership(a, m, x, y, z);
  const double side = 2.0 * R + 1;
  const double expected = side * side * side / static_cast<double>(L.covolume());
  // Boundary allowance: one layer per face, scaled by the largest modulus.
  const double allowance = 6.0 * side * side * static_cast<double>(std::max({L.m12, L.m23, L.m34}));
  CHECK(std::fabs(hits - expected) <= allowance / static_cast<double>(L.covolume()) + 1);
}

TEST_CASE("theta0") {
  CHECK(theta0({1, 1, 1, 1}) == 1);
  CHECK(theta0({2, 4, 1, 1}) == 0);
  CHECK(theta0({3, 2, 1, 1}) == 1);
}

TEST_CASE("theta_truncated examples and brute-force oracle") {
  CHECK(theta_truncated({1, 1, 1, 1}, 1) == 1);
  CHECK(theta_truncated({1, 1, 1, 1}, 2) == mpq_class(3, 8));
  // T = 3 misses d_i = 6, so it is not the product of the p = 2 and p = 3 factors (1/4).
  CHECK(theta_truncated({1, 1, 1, 1}, 3) == mpq_class(47, 216));
  for (Quad a : {Quad{1, 1, 1, 1}, Quad{3, 2, 1, 1}, Quad{1, 2, 3, 5}}) {
    for (i64 T : {2, 3, 5, 7}) {
      CAPTURE(T);
      CHECK(theta_truncated(a, T) == theta_brute(a, T));
    }
  }
  CHECK_THROWS_AS(theta_truncated({2, 4, 1, 1}, 5), std::invalid_argument);
}

TEST_CASE("double-precision truncation agrees with the exact one") {
  for (Quad a : {Quad{1, 1, 1, 1}, Quad{3, 2, 1, 1}}) {
    for (i64 T : {10, 47, 100}) {
      CHECK(theta_truncated_value(a, T) == doctest::Approx(theta_truncated(a, T).get_d()).epsilon(1e-12));
    }
  }
}

TEST_CASE("theta truncation: a new prime q only adds terms containing q") {
  const Quad a{1, 1, 1, 1};
  for (Quad b : {a, Quad{1, 1, 7, 1}}) {
    CHECK(theta_truncated(b, 7) - theta_truncated(b, 6) == theta_brute(b, 7, 7));
  }
  CHECK(theta_truncated(a, 12) == theta_truncated(a, 11));  // 12 is not squarefree
  CHECK(theta_truncated(a, 13) != theta_truncated(a, 12));
}

TEST_CASE("Euler factors and product") {
  CHECK(theta_euler_factor({1, 1, 1, 1}, 2) == mpq_class(3, 8));
  CHECK(theta_euler_factor({3, 2, 1, 1}, 3) == theta_euler_factor({9, 2, 1, 1}, 3));
  CHECK(theta_euler_factor({3, 2, 1, 1}, 3) == mpq_class(2, 3) * mpq_class(8, 9));
  auto e = theta_euler({1, 1, 1, 1}, 1000);
  CHECK(e.lower <= e.upper);
  CHECK(e.upper < 1.0);
  CHECK(e.lower > 0.0);
  CHECK(e.partial == doctest::Approx(theta_euler_partial({1, 1, 1, 1}, 100).get_d()).epsilon(2e-2));
  auto finer = theta_euler({1, 1, 1, 1}, 100000);
  CHECK(finer.partial >= e.lower);
  CHECK(finer.partial <= e.upper);
  // A large prime of a' enters the partial product even beyond P.
  CHECK(theta_euler_partial({101, 1, 1, 1}, 10) ==
        theta_euler_partial({1, 1, 1, 1}, 10) * mpq_class(100, 101) * mpq_class(101 * 101 - 1, 101 * 101));
}

TEST_CASE("truncated density converges like tau / sqrt(T)") {
  for (Quad a : {Quad{1, 1, 1, 1}, Quad{3, 2, 1, 1}}) {
    auto e = theta_euler(a, 100000);
    const double tau = static_cast<double>(divisor_count(a[0] * a[1] * a[2] * a[3]));
    for (i64 T : {10, 100}) {
      const double diff = std::fabs(theta_truncated_value(a, T) - e.partial);
      CHECK(diff <= tau / std::sqrt(static_cast<double>(T)));
    }
  }
}

TEST_CASE("Moebius identity on small boxes") {
  auto r = moebius_identity_check({1, 1, 1, 1}, 12, 12);
  CHECK(r.holds());
  CHECK(r.lhs > 0);
  auto s = moebius_identity_check({3, 2, 1, 1}, 20, 20);
  CHECK(s.holds());
  CHECK(s.lhs > 0);
  CHECK_THROWS_AS(moebius_identity_check({2, 4, 1, 1}, 12, 12), std::invalid_argument);
  // A tight restriction changes both sides together.
  auto t = moebius_identity_check({1, 1, 1, 1}, 20, 1);
  CHECK(t.holds());
  CHECK(t.lhs < moebius_identity_check({1, 1, 1, 1}, 20, 20).lhs);
}
