#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "dp5/geometry.hpp"
#include "dp5/torsor.hpp"

using namespace dp5;

namespace {

const TorsorPoint kT123{1, 1, 1, 1, 3, 2, -1, 1, -2, -1};
const TorsorPoint kT236{3, 2, 1, 1, 1, 1, -1, 1, -2, -1};

// Height over all 24 orderings, independent of the kPaths table.
i128 height_by_permutations(const TorsorPoint& t) {
  std::array<int, 4> p{1, 2, 3, 4};
  i128 best = 0;
  do {
    i128 v = abs128(t.edge(p[0], p[1])) * abs128(t.vertex(p[1])) * abs128(t.edge(p[1], p[2])) *
             abs128(t.vertex(p[2])) * abs128(t.edge(p[2], p[3]));
    best = std::max(best, v);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

std::vector<TorsorPoint> canonical_points(i64 R) {
  std::vector<TorsorPoint> out;
  for (i64 y1 = 1; y1 <= R; ++y1) {
    for (i64 y2 = -R; y2 <= R; ++y2) {
      for (i64 y3 = -R; y3 <= R; ++y3) {
        if (gcd(gcd(y1, y2), y3) != 1) continue;
        ProjectivePoint p(y1, y2, y3);
        if (is_in_U(p)) out.push_back(parameterize(p));
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("torsor equation examples") {
  CHECK(check_torsor_equations(kT123));
  CHECK(check_torsor_equations(kT236));
  TorsorPoint ones{1, 1, 1, 1, 1, 1, 1, 1, 1, 1};
  CHECK_FALSE(check_torsor_equations(ones));
  CHECK(torsor_residuals(ones)[0] == 1);
}

TEST_CASE("coprimality examples") {
  TorsorPoint ones{1, -1, 1, 1, -1, 1, 1, 1, -1, 1};
  CHECK(check_coprimality(ones));
  TorsorPoint shared = ones;
  shared.a1 = shared.a2 = 2;
  CHECK_FALSE(check_coprimality(shared));
  CHECK(check_coprimality(kT236));
  TorsorPoint edges = kT123;
  edges.a12 = 6;
  edges.a13 = 4;
  CHECK_FALSE(check_coprimality(edges));
}

TEST_CASE("torsor height examples") {
  CHECK(torsor_height(kT123) == 12);
  CHECK(torsor_height(kT236) == 12);
  CHECK(torsor_height_at_most(kT123, 12));
  CHECK_FALSE(torsor_height_at_most(kT123, 11));
  TorsorPoint big = kT123;
  big.a12 = i64{1} << 62;
  big.a23 = i64{1} << 62;
  big.a34 = i64{1} << 62;
  CHECK_THROWS_AS(torsor_height(big), std::overflow_error);
  CHECK_FALSE(torsor_height_at_most(big, 1000));
}

TEST_CASE("parameterize examples") {
  CHECK(parameterize(ProjectivePoint(1, 2, 3)) == kT123);
  CHECK(parameterize(ProjectivePoint(2, 3, 6)) == kT236);
  CHECK(parameterize(ProjectivePoint(1, -1, 2)) == TorsorPoint{1, 1, 1, 1, 2, -1, -3, 1, -1, 2});
  CHECK_THROWS_AS(parameterize(ProjectivePoint(1, 1, 2)), std::domain_error);
}

TEST_CASE("project examples and sign quotient") {
  CHECK(project(kT123) == ProjectivePoint(1, 2, 3));
  CHECK(project(kT236) == ProjectivePoint(2, 3, 6));
  for (const auto& s : sign_orbit(kT123)) {
    CHECK(project(s) == ProjectivePoint(1, 2, 3));
    CHECK(canonical_representative(s) == kT123);
  }
  std::set<TorsorPoint> distinct;
  for (const auto& s : sign_orbit(kT236)) distinct.insert(s);
  CHECK(distinct.size() == 32);
  TorsorPoint off = kT123;
  off.a12 = 4;
  CHECK_THROWS_AS(project(off), std::invalid_argument);
}

TEST_CASE("weyl involution examples") {
  auto s = weyl_involution(1, kT123);
  CHECK(s == TorsorPoint{-1, -1, -2, 1, 3, 2, -1, 1, 1, 1});
  CHECK(check_torsor_equations(s));
  CHECK(torsor_height(s) == 12);
  CHECK_THROWS_AS(weyl_involution(5, kT123), std::out_of_range);
}

TEST_CASE("dependent coordinates examples") {
  auto r = dependent_coordinates({1, 1, 1, 1}, 3, 1, -1);
  CHECK(r.status == DependentStatus::ok);
  CHECK(r.a13 == 2);
  CHECK(r.a24 == -2);
  CHECK(r.a14 == -1);
  r = dependent_coordinates({3, 2, 1, 1}, 1, 1, -1);
  CHECK(r.status == DependentStatus::ok);
  CHECK(r.a13 == 1);
  CHECK(r.a24 == -2);
  CHECK(r.a14 == -1);
  CHECK(dependent_coordinates({2, 1, 1, 4}, 1, 1, 1).status == DependentStatus::a1_a4_not_coprime);
  CHECK(dependent_coordinates({3, 2, 1, 1}, 1, 1, 0).status == DependentStatus::congruence_fails);
  for (i64 x = -5; x <= 5; ++x) {
    CHECK(dependent_coordinates({1, 1, 1, 1}, x, 2 * x + 1, 7 - x).status == DependentStatus::ok);
  }
}

TEST_CASE("symmetry, typical sizes and z-coordinates") {
  TorsorPoint ones{1, 1, 1, 1, 1, 1, 1, 1, 1, 1};
  CHECK(satisfies_symmetry(ones));
  for (double b : typical_sizes(1.0, {1, 1, 1, 1})) CHECK(b == doctest::Approx(1.0));
  auto z = z_coordinates(kT123, 12.0);
  CHECK(z[0] == doctest::Approx(3.0 / std::cbrt(12.0)));
}

TEST_CASE("round trip, validity and height agreement on a box") {
  for (const auto& t : canonical_points(30)) {
    auto p = project(t);
    CHECK(is_valid(t));
    CHECK(parameterize(p) == t);
    CHECK(torsor_height(t) == height(p));
    CHECK(torsor_height(t) == height_by_permutations(t));
    CHECK(t.a1 > 0);
    CHECK(t.a23 > 0);
  }
}

TEST_CASE("weyl involutions on a box") {
  for (const auto& t : canonical_points(20)) {
    const auto q = skew_quintuples(t);
    std::multiset<i128> paths;
    for (i128 v : path_monomials(t)) paths.insert(v);
    for (int l = 1; l <= 4; ++l) {
      auto s = weyl_involution(l, t);
      CHECK(weyl_involution(l, s) == t);
      CHECK(is_valid(s));
      std::multiset<i128> spaths;
      for (i128 v : path_monomials(s)) spaths.insert(v);
      CHECK(spaths == paths);
      auto qs = skew_quintuples(s);
      CHECK(qs[0] == q[static_cast<std::size_t>(l)]);
      CHECK(qs[static_cast<std::size_t>(l)] == q[0]);
    }
  }
}

TEST_CASE("dependent-coordinate closure on random inputs") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<i64> small(1, 40), mid(-2000, 2000);
  int tested = 0;
  while (tested < 100000) {
    std::array<i64, 4> a{small(rng), small(rng), small(rng), small(rng)};
    if (gcd(a[0], a[3]) != 1) {
      CHECK(dependent_coordinates(a, 1, 1, 1).status == DependentStatus::a1_a4_not_coprime);
      continue;
    }
    i64 a23 = mid(rng);
    i64 a12 = first_in_class(mid(rng), mod_inverse(a[0], a[3]) * floor_mod(a[2] * a23, a[3]), a[3]);
    i64 a34 = first_in_class(mid(rng), mod_inverse(a[3], a[0]) * floor_mod(a[1] * a23, a[0]), a[0]);
    auto r = dependent_coordinates(a, a12, a23, a34);
    REQUIRE(r.status == DependentStatus::ok);
    TorsorPoint t{a[0], a[1], a[2], a[3], a12, r.a13, r.a14, a23, r.a24, a34};
    auto res = torsor_residuals(t);
    // The first three equations hold by construction; the last two follow.
    CHECK(res[0] == 0);
    CHECK(res[1] == 0);
    CHECK(res[2] == 0);
    CHECK(res[3] == 0);
    CHECK(res[4] == 0);
    ++tested;
  }
}
