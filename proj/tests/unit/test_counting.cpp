#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "dp5/counting.hpp"

using namespace dp5;

namespace {

CountOptions with_workers(int w, Strategy s = Strategy::full) {
  CountOptions o;
  o.workers = w;
  o.strategy = s;
  return o;
}

}  // namespace

TEST_CASE("B = 1 has no points") {
  CHECK(count_direct(1).count == 0);
  CHECK(count_torsor(1).count == 0);
  CHECK(enumerate_points(1, Method::torsor).empty());
}

TEST_CASE("small counts match an independent brute-force script") {
  // Oracle values from a Python enumeration of the height formula.
  CHECK(count_direct(12).count == 60);
  CHECK(count_torsor(12).count == 60);
  CHECK(count_torsor(30).count == 180);
  CHECK(count_torsor(50).count == 420);
}

TEST_CASE("direct and torsor counts agree") {
  for (i64 B : {10, 12, 50, 100, 150, 200}) {
    CAPTURE(B);
    CHECK(count_direct(B).count == count_torsor(B).count);
  }
}

TEST_CASE("ceilings are enforced") {
  CountOptions o;
  o.direct_ceiling = 50;
  CHECK_THROWS_AS(count_direct(51, o), std::invalid_argument);
  CHECK_THROWS_AS(count_torsor(0), std::invalid_argument);
  o.torsor_ceiling = 10;
  CHECK_THROWS_AS(count_torsor(11, o), std::invalid_argument);
}

TEST_CASE("counts do not depend on the number of workers or the strategy") {
  for (i64 B : {100, 777, 2000}) {
    CAPTURE(B);
    const i64 ref = count_torsor(B, with_workers(1)).count;
    CHECK(count_torsor(B, with_workers(3)).count == ref);
    CHECK(count_torsor(B, with_workers(1, Strategy::weyl_reduced)).count == ref);
    CHECK(count_torsor(B, with_workers(2, Strategy::weyl_reduced)).count == ref);
  }
  for (i64 B = 1; B <= 300; B += 7) {
    CHECK(count_torsor(B, with_workers(1, Strategy::weyl_reduced)).count == count_torsor(B).count);
  }
}

TEST_CASE("enumeration: both methods give the same sorted stream") {
  for (i64 B : {12, 60}) {
    auto d = enumerate_points(B, Method::direct, with_workers(2));
    auto t = enumerate_points(B, Method::torsor, with_workers(3));
    REQUIRE(d.size() == t.size());
    CHECK(static_cast<i64>(d.size()) == count_torsor(B).count);
    for (std::size_t n = 0; n < d.size(); ++n) {
      CHECK(d[n].point == t[n].point);
      CHECK(d[n].height == t[n].height);
      CHECK(d[n].torsor == t[n].torsor);
      CHECK(is_valid(t[n].torsor));
      CHECK(torsor_height(t[n].torsor) == height(t[n].point));
      if (n > 0) {
        CHECK(std::make_pair(t[n - 1].height, t[n - 1].point) < std::make_pair(t[n].height, t[n].point));
      }
    }
  }
  auto pts = enumerate_points(12, Method::torsor);
  for (auto y : {ProjectivePoint(1, 2, 3), ProjectivePoint(2, 3, 6), ProjectivePoint(1, -1, 2)}) {
    CHECK(std::any_of(pts.begin(), pts.end(), [&](const PointRecord& r) { return r.point == y; }));
  }
}

TEST_CASE("histograms reproduce the counter and are monotone") {
  auto direct = cumulative(height_histogram(120, Method::direct));
  auto torsor = cumulative(height_histogram(120, Method::torsor));
  CHECK(direct == torsor);
  for (i64 B : {1, 12, 37, 100, 120}) CHECK(torsor[static_cast<std::size_t>(B)] == count_torsor(B).count);
  CHECK(std::is_sorted(torsor.begin(), torsor.end()));
}

TEST_CASE("height bound implies the coordinate box (exhaustive on the torsor side)") {
  const i64 B = 200;
  for (const auto& r : enumerate_points(B, Method::torsor)) {
    const auto& t = r.torsor;
    CHECK(abs128(i128{t.a2} * t.a3 * t.a23) <= B);
    CHECK(abs128(i128{t.a1} * t.a3 * t.a13) <= B);
    CHECK(abs128(i128{t.a1} * t.a2 * t.a12) <= B);
    for (i64 y : r.point.coords()) CHECK(abs64(y) <= B);
    const auto& y = r.point.coords();
    CHECK(abs64(y[0] - y[1]) <= B);
    CHECK(abs64(y[0] - y[2]) <= B);
    CHECK(abs64(y[1] - y[2]) <= B);
  }
}

TEST_CASE("cusp statistics partition the count") {
  auto s = cusp_statistics(12);
  i64 sum = 0;
  for (auto [k, c] : s.buckets) sum += c;
  CHECK(sum == s.total);
  CHECK(s.total == 60);
  // (1:2:3) has max|z| = 3 / 12^(1/3), about 1.31, in bucket k = 0.
  auto z = z_coordinates(parameterize(ProjectivePoint(1, 2, 3)), 12.0);
  double mx = 0;
  for (double v : z) mx = std::max(mx, std::fabs(v));
  CHECK(mx == doctest::Approx(3.0 / std::cbrt(12.0)));
  CHECK(s.buckets.count(0) == 1);
}
