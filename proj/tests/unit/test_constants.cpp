#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "dp5/constants.hpp"
#include "dp5/geometry.hpp"

using namespace dp5;

namespace {

// Slicing by s = x1 + x2 + x3 + x4: the slice is a simplex of edge s - 4m with
// m = max(0, (2s - 1) / 3), so V1 = int_0^{1/2} s^3/6 + int_{1/2}^{4/5} ((4 - 5s)/3)^3/6.
mpq_class v1_by_sum_slices() {
  mpq_class half(1, 2), three_halves(3, 2);
  mpq_class first = half * half * half * half / 24;
  mpq_class second = three_halves * three_halves * three_halves * three_halves / (4 * 27 * 6 * 5);
  return first + second;
}

// Midpoint-rule fibre over y1 straight from the expanded cubic forms.
double fibre_from_forms(double y2, double y3, double W, int n) {
  const double h = 2 * W / n;
  double total = 0;
  for (int i = 0; i < n; ++i) {
    const double y1 = -W + (i + 0.5) * h;
    if (std::fabs(y1 - y2) > W || std::fabs(y1 - y3) > W) continue;
    double m = 0;
    for (const auto& f : anticanonical_basis()) m = std::max(m, std::fabs(f.evaluate(y1, y2, y3)));
    if (m <= 1) total += h;
  }
  return total;
}

OmegaControls quick(double W) {
  OmegaControls c;
  c.cutoff = W;
  c.max_depth = 2;
  c.tolerance = 1e-6;
  return c;
}

}  // namespace

TEST_CASE("V1 agrees across three computations and alpha = 1/144") {
  auto v = polytope_volumes();
  CHECK(v.by_slicing == mpq_class(1, 240));
  CHECK(v.by_triangulation == mpq_class(1, 240));
  CHECK(v1_by_sum_slices() == mpq_class(1, 240));
  CHECK(alpha() == mpq_class(1, 144));
  CHECK(mpq_class(kLiteratureV1) != 3 * alpha() / 5);
}

TEST_CASE("theta1 Euler factors") {
  CHECK(theta1_factor(2) == mpq_class(15, 128));
  CHECK(theta1_factor(3) == mpq_class(800, 2187));
  CHECK(theta1_partial(3) == mpq_class(15, 128) * mpq_class(800, 2187));
  for (i64 p : primes_up_to(100000)) {
    const double f = theta1_factor(p).get_d();
    REQUIRE(f < 1.0);
    if (p >= 7) REQUIRE(std::fabs(std::log(f)) <= 15.0 / (double(p) * double(p)));
  }
}

TEST_CASE("theta1 enclosures are nested") {
  const auto fine = theta1(1'000'000);
  for (i64 P : {1000, 10000, 100000}) {
    const auto t = theta1(P);
    CHECK(t.lower <= fine.lower);
    CHECK(fine.upper <= t.upper * (1 + 1e-12));
    CHECK(t.tail_log == doctest::Approx(15.0 / double(P)));
  }
  CHECK(fine.partial == doctest::Approx(0.0157221).epsilon(1e-5));
  CHECK(theta1(2).partial == doctest::Approx(15.0 / 128));
  CHECK_THROWS_AS(theta1(1), std::invalid_argument);
}

TEST_CASE("fibre length matches the cubic forms") {
  const double W = 8;
  const double pts[][2] = {{0.3, 0.7}, {-0.4, 0.9}, {1.3, -0.2}, {0.05, 2.0}, {0.6, 0.6}, {3.0, 2.9}};
  for (const auto& p : pts) {
    CHECK(omega_fibre_length(p[0], p[1], W) == doctest::Approx(fibre_from_forms(p[0], p[1], W, 400000)).epsilon(1e-3));
  }
  CHECK(omega_fibre_length(9, 0, W) == 0);
  CHECK(omega_fibre_length(4, -5, W) == 0);
}

TEST_CASE("omega volume grows with W and matches the y-fibration") {
  double prev = 0;
  for (double W : {2.0, 4.0, 8.0}) {
    auto z = omega_infinity(quick(W));
    auto y = omega_infinity_y(quick(W));
    CHECK(z.volume > prev);
    CHECK(y.volume == doctest::Approx(z.volume).epsilon(1e-6));
    CHECK(z.value == doctest::Approx(1.5 * z.volume));
    prev = z.volume;
  }
  CHECK_THROWS_AS(omega_infinity(quick(1.0)), std::invalid_argument);
}

TEST_CASE("Monte Carlo agrees with quadrature at W = 2") {
  auto q = omega_infinity(quick(2));
  auto mc = omega_volume_monte_carlo(2, 1'000'000);
  CHECK(std::fabs(mc.volume - q.volume) <= 4 * mc.standard_error);
  CHECK(mc.samples == 1'000'000);
}

TEST_CASE("predicted count") {
  CHECK(predicted_count(1.0, std::exp(2.0)) == doctest::Approx(16 * std::exp(2.0)));
  CHECK(predicted_count(0.5, 1000) == doctest::Approx(0.5 * 1000 * std::pow(std::log(1000.0), 4)));
  CHECK_THROWS_AS(predicted_count(1.0, 2), std::invalid_argument);
}

TEST_CASE("theta1 partial products decrease and satisfy the Cauchy bound") {
  double prev = 1.0;
  for (i64 P : {2, 3, 5, 7, 100, 1000}) {
    const double v = theta1(P).partial;
    CHECK(v < prev);
    CHECK(v > 0);
    prev = v;
  }
  for (i64 P : {1000, 10000, 100000}) {
    const auto a = theta1(P), b = theta1(2 * P);
    CHECK(std::fabs(b.partial - a.partial) <= a.tail_abs());
  }
}

TEST_CASE("omega increments shrink within the tail constant") {
  std::vector<double> vol;
  for (double W : {4.0, 8.0, 16.0, 32.0}) vol.push_back(omega_infinity(quick(W)).volume);
  for (std::size_t n = 1; n < vol.size(); ++n) {
    const double W = 4.0 * std::pow(2.0, double(n - 1));
    const double inc = vol[n] - vol[n - 1];
    CHECK(inc > 0);
    CHECK(inc <= kOmegaTailConstant / (W * W * W));
    if (n >= 2) CHECK(inc < vol[n - 1] - vol[n - 2]);
  }
}

TEST_CASE("leading constant brackets and predicted count identity") {
  ConstantsControls c;
  c.omega = quick(16);
  c.prime_limit = 100000;
  auto r = leading_constant(c);
  CHECK(r.c > 0);
  CHECK(r.c_lower <= r.c);
  CHECK(r.c <= r.c_upper);
  const double ideal = 2 * M_PI * M_PI / 144.0;
  CHECK(r.c_lower <= ideal * r.theta1.upper);
  CHECK(ideal * r.theta1.lower <= r.c_upper);
  CHECK(predicted_count(r.c, 3) / (3 * std::pow(std::log(3.0), 4)) == doctest::Approx(r.c));
  CHECK_FALSE(r.literature_v1_consistent);
}
