#include "dp5/constants.hpp"

#include <algorithm>
#include <array>
#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <random>
#include <stdexcept>

#include "dp5/geometry.hpp"
#include "dp5/polytope.hpp"
#include "dp5/torsor.hpp"

namespace dp5 {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();

struct Quadratic {
  double c0 = 0, c1 = 0, c2 = 0;
  double at(double u) const { return (c2 * u + c1) * u + c0; }
};

struct Linear {
  double c0 = 0, c1 = 0;  // c0 + c1 u
};

// Adds the real roots of q(u) = level inside (lo, hi) to `out`.
void roots_at_level(const Quadratic& q, double level, double lo, double hi, std::vector<double>& out) {
  const double a = q.c2, b = q.c1, c = q.c0 - level;
  auto keep = [&](double r) {
    if (r > lo && r < hi) out.push_back(r);
  };
  if (a == 0.0) {
    if (b != 0.0) keep(-c / b);
    return;
  }
  const double disc = b * b - 4 * a * c;
  if (disc < 0) return;
  const double s = std::sqrt(disc);
  const double t = -0.5 * (b + std::copysign(s, b));
  if (t != 0.0) {
    keep(t / a);
    keep(c / t);
  } else {
    keep(0.0);
  }
}

// Measure of {u in [lo, hi] : |q(u)| <= 1 for every q}. Between consecutive
// roots of q = +-1 the constraint set is constant, so midpoints decide.
template <std::size_t N>
double fibre_measure(const std::array<Quadratic, N>& qs, double lo, double hi) {
  if (hi <= lo) return 0.0;
  std::vector<double> cuts{lo, hi};
  for (const auto& q : qs) {
    roots_at_level(q, 1.0, lo, hi, cuts);
    roots_at_level(q, -1.0, lo, hi, cuts);
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t n = 0; n + 1 < cuts.size(); ++n) {
    const double a = cuts[n], b = cuts[n + 1];
    if (b <= a) continue;
    const double mid = 0.5 * (a + b);
    bool inside = true;
    for (const auto& q : qs) {
      if (std::fabs(q.at(mid)) > 1.0) {
        inside = false;
        break;
      }
    }
    if (inside) total += b - a;
  }
  return total;
}

Quadratic multiply(const Linear& x, const Linear& y, const Linear& z) {
  // At most two of the three factors depend on u along any path.
  const double c0 = x.c0 * y.c0 * z.c0;
  const double c1 = x.c1 * y.c0 * z.c0 + x.c0 * y.c1 * z.c0 + x.c0 * y.c0 * z.c1;
  const double c2 = x.c1 * y.c1 * z.c0 + x.c1 * y.c0 * z.c1 + x.c0 * y.c1 * z.c1;
  return {c0, c1, c2};
}

double z_fibre(double v, double w, double W) {
  if (std::fabs(v) > W || std::fabs(w) > W || std::fabs(v - w) > W) return 0.0;
  // Edge order 12, 13, 14, 23, 24, 34 as linear functions of u = z12.
  const std::array<Linear, 6> z{{{0, 1}, {v - w, 0}, {v - w, -1}, {v, 0}, {v, -1}, {w, 0}}};
  auto edge = [&](int i, int j) -> const Linear& {
    if (i > j) std::swap(i, j);
    static const int slot[5][5] = {{0}, {0, 0, 0, 1, 2}, {0, 0, 0, 3, 4}, {0, 1, 3, 0, 5}, {0, 2, 4, 5, 0}};
    return z[static_cast<std::size_t>(slot[i][j])];
  };
  std::array<Quadratic, 12> qs;
  for (std::size_t n = 0; n < kPaths.size(); ++n) {
    auto [i, j, k, l] = kPaths[n];
    qs[n] = multiply(edge(i, j), edge(j, k), edge(k, l));
  }
  const double lo = std::max({-W, v - W, v - w - W});
  const double hi = std::min({W, v + W, v - w + W});
  return fibre_measure(qs, lo, hi);
}

double y_fibre(double y2, double y3, double W) {
  if (std::fabs(y2) > W || std::fabs(y3) > W || std::fabs(y2 - y3) > W) return 0.0;
  std::array<Quadratic, 12> qs;
  const auto& basis = anticanonical_basis();
  const double p2[4] = {1, y2, y2 * y2, y2 * y2 * y2};
  const double p3[4] = {1, y3, y3 * y3, y3 * y3 * y3};
  for (std::size_t n = 0; n < basis.size(); ++n) {
    double c[4] = {0, 0, 0, 0};
    for (std::size_t m = 0; m < kCubicMonomials.size(); ++m) {
      auto [a, b, e] = kCubicMonomials[m];
      c[a] += basis[n].coefficients[m] * p2[b] * p3[e];
    }
    if (c[3] != 0.0) throw std::logic_error("basis form is cubic in y1");
    qs[n] = {c[0], c[1], c[2]};
  }
  const double lo = std::max({-W, y2 - W, y3 - W});
  const double hi = std::min({W, y2 + W, y3 + W});
  return fibre_measure(qs, lo, hi);
}

// Cut points for [lo, hi] graded geometrically towards each singular point.
// The fibres form ridges of width about 1/s^2 along t = 0 and t = s and an
// r^(-1/2) peak at the origin; a plain adaptive rule samples straight past them.
std::vector<double> graded_cuts(double lo, double hi, std::initializer_list<double> points) {
  std::vector<double> cuts{lo, hi};
  for (double p : points) {
    if (p > lo && p < hi) cuts.push_back(p);
    for (double r = std::ldexp(1.0, -20); r < hi - lo; r *= 4) {
      for (double x : {p - r, p + r}) {
        if (x > lo && x < hi) cuts.push_back(x);
      }
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

template <class F>
double integrate_pieces(F f, const std::vector<double>& cuts, unsigned depth, double tolerance) {
  using boost::math::quadrature::gauss_kronrod;
  double total = 0.0;
  for (std::size_t n = 0; n + 1 < cuts.size(); ++n) {
    total += gauss_kronrod<double, 15>::integrate(f, cuts[n], cuts[n + 1], depth, tolerance);
  }
  return total;
}

// Integral of fibre(s, t) over the hexagon |s|, |t|, |s - t| <= W.
template <class Fibre>
double region_volume(Fibre fibre, double W, unsigned depth, double tolerance) {
  auto inner = [&](double s) {
    return integrate_pieces([&](double t) { return fibre(s, t, W); },
                            graded_cuts(std::max(-W, s - W), std::min(W, s + W), {0.0, s}), depth, tolerance);
  };
  return integrate_pieces(inner, graded_cuts(-W, W, {0.0}), depth, tolerance);
}

// The Kronrod error estimates are far too pessimistic on these piecewise
// smooth integrands, so the quadrature error is taken as the change against
// a pass two bisection levels shallower.
template <class Fibre>
OmegaResult integrate_region(Fibre fibre, const OmegaControls& c) {
  const double W = c.cutoff;
  if (!(W >= 2.0)) throw std::invalid_argument("omega_infinity: cutoff W must be >= 2");
  const double volume = region_volume(fibre, W, c.max_depth, c.tolerance);
  const unsigned coarse_depth = c.max_depth >= 2 ? c.max_depth - 2 : 0;
  const double coarse = region_volume(fibre, W, coarse_depth, c.tolerance * 100);
  OmegaResult r;
  r.cutoff = W;
  r.volume = volume;
  r.value = 1.5 * volume;
  r.quadrature_error = 1.5 * std::fabs(volume - coarse);
  const double K = c.tail_constant > 0 ? c.tail_constant : kOmegaTailConstant;
  r.tail_bound = 1.5 * K / (W * W * W);
  r.error = r.quadrature_error + r.tail_bound;
  r.target = 2 * kPi * kPi;
  return r;
}

}  // namespace

PolytopeVolumes polytope_volumes() {
  const auto P = v1_polytope();
  return {volume_by_slicing(P), volume_by_triangulation(P)};
}

mpq_class polytope_volume() {
  auto v = polytope_volumes();
  if (v.by_slicing != v.by_triangulation) {
    throw std::logic_error("V1: slicing and triangulation disagree");
  }
  return v.by_slicing;
}

mpq_class alpha() {
  mpq_class a = 5 * polytope_volume() / 3;
  if (a != mpq_class(1, 144)) throw std::logic_error("alpha = 5 V1 / 3 is not 1/144");
  return a;
}

double omega_fibre_length(double v, double w, double W) { return z_fibre(v, w, W); }

OmegaResult omega_infinity(const OmegaControls& controls) {
  return integrate_region(z_fibre, controls);
}

OmegaResult omega_infinity_y(const OmegaControls& controls) {
  return integrate_region(y_fibre, controls);
}

MonteCarloResult omega_volume_monte_carlo(double W, std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("omega_volume_monte_carlo: need samples");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-W, W);
  std::uint64_t hits = 0;
  for (std::uint64_t n = 0; n < samples; ++n) {
    const double u = coord(rng), v = coord(rng), w = coord(rng);
    const double z[5][5] = {
        {0, 0, 0, 0, 0},
        {0, 0, u, v - w, v - w - u},
        {0, u, 0, v, v - u},
        {0, v - w, v, 0, w},
        {0, v - w - u, v - u, w, 0},
    };
    bool inside = std::fabs(v - w) <= W && std::fabs(v - u) <= W && std::fabs(v - w - u) <= W;
    for (std::size_t p = 0; p < kPaths.size() && inside; ++p) {
      auto [i, j, k, l] = kPaths[p];
      inside = std::fabs(z[i][j] * z[j][k] * z[k][l]) <= 1.0;
    }
    hits += inside;
  }
  const double box = 8 * W * W * W;
  const double frac = static_cast<double>(hits) / static_cast<double>(samples);
  return {box * frac, box * std::sqrt(frac * (1 - frac) / static_cast<double>(samples)), samples};
}

mpq_class theta1_factor(i64 p) {
  const mpq_class x(1, p);
  mpq_class f = 1 - x;
  mpq_class f5 = f * f * f * f * f;
  return f5 * (1 + 5 * x + x * x);
}

mpq_class theta1_partial(i64 P) {
  mpq_class out = 1;
  for (i64 p : primes_up_to(P)) out *= theta1_factor(p);
  return out;
}

Theta1Result theta1(i64 P) {
  if (P < 2) throw std::invalid_argument("theta1: prime limit must be >= 2");
  auto log_factor = [](i64 p) {
    const long double x = 1.0L / static_cast<long double>(p);
    return 5 * std::log1p(-x) + std::log1p(5 * x + x * x);
  };
  long double s = 0;
  for (i64 p : primes_up_to(P)) s += log_factor(p);
  Theta1Result r;
  r.prime_limit = P;
  r.partial = static_cast<double>(std::exp(s));
  // Primes below 7 beyond P enter exactly; from 7 on |log f(p)| <= 15/p^2 and
  // sum_{n > M} 15/n^2 <= 15/M with M = max(P, 6).
  long double tail = 0;
  for (i64 p : {2, 3, 5}) {
    if (p > P) tail += -log_factor(p);
  }
  tail += 15.0L / static_cast<long double>(std::max<i64>(P, 6));
  r.tail_log = static_cast<double>(tail);
  r.upper = r.partial;
  r.lower = static_cast<double>(std::exp(s - tail));
  return r;
}

ConstantsReport leading_constant(const ConstantsControls& controls) {
  ConstantsReport r;
  auto v = polytope_volumes();
  r.v1_slicing = v.by_slicing;
  r.v1_triangulation = v.by_triangulation;
  r.v1 = polytope_volume();
  r.alpha = alpha();
  r.literature_v1_consistent = mpq_class(kLiteratureV1) == 3 * r.alpha / 5;
  r.omega = omega_infinity(controls.omega);
  r.theta1 = theta1(controls.prime_limit);
  const double a = r.alpha.get_d();
  r.c = a * r.omega.value * r.theta1.partial;
  r.c_lower = a * (r.omega.value - r.omega.error) * r.theta1.lower;
  r.c_upper = a * (r.omega.value + r.omega.error) * r.theta1.upper;
  return r;
}

double predicted_count(double c, double B) {
  if (B < 3) throw std::invalid_argument("predicted_count: B must be >= 3");
  const double L = std::log(B);
  return c * B * L * L * L * L;
}

}  // namespace dp5
