#include "dp5/densities.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <stdexcept>

#include "dp5/torsor.hpp"

namespace dp5 {

namespace {

using Column = std::array<i128, 3>;
using Basis = std::array<Column, 3>;  // basis[c] is a column vector

// (g, x, y) with x a + y b = g >= 0.
std::array<i128, 3> ext_gcd(i128 a, i128 b) {
  i128 r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    i128 q = r0 / r1, tmp;
    tmp = r0 - q * r1; r0 = r1; r1 = tmp;
    tmp = s0 - q * s1; s0 = s1; s1 = tmp;
    tmp = t0 - q * t1; t0 = t1; t1 = tmp;
  }
  if (r0 < 0) return {-r0, -s0, -t0};
  return {r0, s0, t0};
}

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Unimodular combination of columns p and q clearing row r of column q.
template <std::size_t N, class Cols>
void clear_entry(Cols& cols, std::size_t r, std::size_t p, std::size_t q) {
  i128 a = cols[p][r], b = cols[q][r];
  if (b == 0) return;
  auto [g, x, y] = ext_gcd(a, b);
  auto cp = cols[p], cq = cols[q];
  for (std::size_t i = 0; i < N; ++i) {
    cols[p][i] = checked_add(checked_mul(x, cp[i]), checked_mul(y, cq[i]));
    cols[q][i] = checked_add(checked_mul(-b / g, cp[i]), checked_mul(a / g, cq[i]));
  }
}

// Lower-triangular Hermite form with positive diagonal and reduced off-diagonals.
void hermite(Basis& m) {
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t q = r + 1; q < 3; ++q) clear_entry<3>(m, r, r, q);
    if (m[r][r] == 0) throw std::logic_error("lattice is not of full rank");
    if (m[r][r] < 0) {
      for (auto& v : m[r]) v = -v;
    }
  }
  for (std::size_t r = 1; r < 3; ++r) {
    for (std::size_t c = 0; c < r; ++c) {
      i128 k = floor_div(m[c][r], m[r][r]);
      for (std::size_t i = 0; i < 3; ++i) m[c][i] -= k * m[r][i];
    }
  }
}

// Restricts the lattice spanned by m to vectors v with w . v = 0 (mod mod).
void impose(Basis& m, const Column& w, i128 mod) {
  // Row (w . m_0, w . m_1, w . m_2, mod); column operations reduce it to (g, 0, 0, 0)
  // and the last three columns of the transform span the kernel.
  std::array<std::array<i128, 5>, 4> cols{};  // entry 0: row value, 1..4: transform
  for (std::size_t c = 0; c < 3; ++c) {
    i128 s = 0;
    for (std::size_t i = 0; i < 3; ++i) s = checked_add(s, checked_mul(w[i], m[c][i]));
    cols[c][0] = s % mod;
    cols[c][1 + c] = 1;
  }
  cols[3][0] = mod;
  cols[3][4] = 1;
  for (std::size_t q = 1; q < 4; ++q) clear_entry<5>(cols, 0, 0, q);
  Basis next{};
  for (std::size_t k = 0; k < 3; ++k) {
    const auto& u = cols[k + 1];
    for (std::size_t i = 0; i < 3; ++i) {
      i128 s = 0;
      for (std::size_t c = 0; c < 3; ++c) s = checked_add(s, checked_mul(m[c][i], u[1 + c]));
      next[k][i] = s;
    }
  }
  m = next;
  hermite(m);
}

i64 narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("lattice entry exceeds 64 bits");
  return static_cast<i64>(v);
}

std::array<int, 2> complement_pair(int i, int j) {
  std::array<int, 2> out{};
  int c = 0;
  for (int x = 1; x <= 4; ++x) {
    if (x != i && x != j) out[c++] = x;
  }
  return out;
}

i64 product(const Quad& a) {
  i128 p = 1;
  for (i64 v : a) p = checked_mul(p, abs128(v));
  return narrow(p);
}

// Sum over squarefree e | a_i with e <= T of mu(e)/e.
mpq_class e_factor(i64 a, i64 T) {
  mpq_class s = 0;
  for (i64 e : squarefree_divisors(abs64(a))) {
    if (e <= T) s += mpq_class(moebius(e), e);
  }
  return s;
}

// Number of the three moduli [d1;d2;(d3;d4)], [d2;d3;d4], [d1;d3;d4] that a
// prime divides when it divides exactly the d_i with i in `mask` (bit i-1).
int moduli_hit(unsigned mask) {
  const bool in1 = mask & 1u, in2 = mask & 2u, in3 = mask & 4u, in4 = mask & 8u;
  return int(in1 || in2 || (in3 && in4)) + int(in2 || in3 || in4) + int(in1 || in3 || in4);
}

// Admissible primes: p may divide d_i only if it divides no a_j with j != i.
std::array<bool, 4> allowed_slots(const Quad& a, i64 p) {
  std::array<bool, 4> ok{};
  for (int i = 0; i < 4; ++i) {
    ok[i] = true;
    for (int j = 0; j < 4; ++j) {
      if (j != i && a[j] % p == 0) ok[i] = false;
    }
  }
  return ok;
}

// Distinct values floor(T/n), ascending, with rank lookup.
struct FloorValues {
  std::vector<i64> values;
  explicit FloorValues(i64 T) {
    for (i64 n = 1; n <= T; n = T / (T / n) + 1) values.push_back(T / n);
    values.push_back(0);
    std::sort(values.begin(), values.end());
  }
  std::size_t rank(i64 v) const {
    return static_cast<std::size_t>(std::lower_bound(values.begin(), values.end(), v) - values.begin());
  }
  std::size_t size() const { return values.size(); }
};

// The d-part of theta(a', T) is a sum over states (floor(T/d_1), ..., floor(T/d_4));
// primes are added in decreasing order.
template <class OnPrime>
void for_each_prime_desc(i64 T, OnPrime on_prime) {
  auto ps = primes_up_to(T);
  for (auto it = ps.rbegin(); it != ps.rend(); ++it) on_prime(*it);
}

void require_theta_input(const Quad& a, i64 T) {
  if (theta0(a) != 1) throw std::invalid_argument("theta: a' must be pairwise coprime");
  for (i64 v : a) {
    if (v == 0) throw std::invalid_argument("theta: a_i must be nonzero");
  }
  if (T < 1) throw std::invalid_argument("theta: T must be >= 1");
}

}  // namespace

i64 MoebiusDatum::f(int i, int j) const {
  auto [k, l] = complement_pair(i, j);
  return lcm(d[i - 1], d[j - 1]) * e[k - 1] * e[l - 1];
}

i64 MoebiusDatum::b12() const { return e[2] * e[3] * lcm(lcm(d[0], d[1]), gcd(d[2], d[3])); }

i64 MoebiusDatum::b23() const { return e[0] * lcm(lcm(d[1], d[2]), d[3]); }

i64 MoebiusDatum::b34() const { return e[1] * lcm(lcm(d[0], d[2]), d[3]); }

int MoebiusDatum::mu() const {
  int s = 1;
  for (i64 v : d) s *= moebius(v);
  for (i64 v : e) s *= moebius(v);
  return s;
}

bool MoebiusDatum::admissible(const Quad& a) const {
  for (int i = 0; i < 4; ++i) {
    if (d[i] < 1 || e[i] < 1 || !is_squarefree(d[i]) || !is_squarefree(e[i])) return false;
    if (a[i] % e[i] != 0) return false;
    for (int j = 0; j < 4; ++j) {
      if (j != i && gcd(d[i], a[j]) != 1) return false;
    }
  }
  return true;
}

bool lattice_membership(const Quad& a, const MoebiusDatum& m, i64 a12, i64 a23, i64 a34) {
  auto r = dependent_coordinates(a, a12, a23, a34);
  if (r.status == DependentStatus::a1_a4_not_coprime) {
    throw std::invalid_argument("lattice_membership: (a1; a4) must be 1");
  }
  if (r.status != DependentStatus::ok) return false;
  return a12 % m.f(1, 2) == 0 && r.a13 % m.f(1, 3) == 0 && r.a14 % m.f(1, 4) == 0 &&
         a23 % m.f(2, 3) == 0 && r.a24 % m.f(2, 4) == 0 && a34 % m.f(3, 4) == 0;
}

i64 LatticeDescription::gamma23(i64 a12) const {
  const i128 t = a12 / m12;
  return floor_mod(narrow(t * c21 % m23), m23);
}

i64 LatticeDescription::gamma34(i64 a12, i64 a23) const {
  const i128 t = a12 / m12;
  const i128 s = (a23 - t * c21) / m23;
  const i128 v = (t * c31 + s * c32) % m34;
  return floor_mod(narrow(v), m34);
}

bool LatticeDescription::contains(i64 a12, i64 a23, i64 a34) const {
  if (a12 % m12 != 0) return false;
  if (floor_mod(a23 - gamma23(a12), m23) != 0) return false;
  return floor_mod(a34 - gamma34(a12, a23), m34) == 0;
}

i128 LatticeDescription::covolume() const { return i128{m12} * m23 * m34; }

LatticeDescription lattice_normal_form(const Quad& a, const MoebiusDatum& m) {
  const auto [a1, a2, a3, a4] = a;
  if (gcd(a1, a4) != 1) throw std::invalid_argument("lattice_normal_form: (a1; a4) must be 1");
  Basis b{};
  for (std::size_t i = 0; i < 3; ++i) b[i][i] = 1;
  // Coordinates (a12, a23, a34); each row is (w, modulus) for w . x = 0 (mod modulus).
  impose(b, {1, 0, 0}, m.f(1, 2));
  impose(b, {0, 1, 0}, m.f(2, 3));
  impose(b, {0, 0, 1}, m.f(3, 4));
  impose(b, {0, a2, -a4}, i128{a1} * m.f(1, 3));
  impose(b, {-a1, a3, 0}, i128{a4} * m.f(2, 4));
  impose(b, {-i128{a1} * a2, i128{a2} * a3, -i128{a3} * a4}, i128{a1} * a4 * m.f(1, 4));
  LatticeDescription L;
  L.m12 = narrow(b[0][0]);
  L.c21 = narrow(b[0][1]);
  L.c31 = narrow(b[0][2]);
  L.m23 = narrow(b[1][1]);
  L.c32 = narrow(b[1][2]);
  L.m34 = narrow(b[2][2]);
  return L;
}

int theta0(const Quad& a) {
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (gcd(a[i], a[j]) != 1) return 0;
    }
  }
  return 1;
}

mpq_class theta_euler_factor(const Quad& a, i64 p) {
  const mpq_class x(1, p);
  for (i64 v : a) {
    if (v % p == 0) return (1 - x) * (1 - x * x);
  }
  return 1 - 4 * x * x + 3 * x * x * x;
}

mpq_class theta_truncated(const Quad& a, i64 T) {
  require_theta_input(a, T);
  if (T > kThetaExactCeiling) {
    throw std::invalid_argument("theta_truncated: T above the exact ceiling " +
                                std::to_string(kThetaExactCeiling));
  }
  // Values are stored as numerators over D = prod_{p <= T} p^3, so every
  // transition divides exactly.
  mpz_class D = 1;
  for (i64 p : primes_up_to(T)) D *= mpz_class(p) * p * p;
  using State = std::array<i64, 4>;
  std::map<State, mpz_class> states{{State{T, T, T, T}, D}};
  for_each_prime_desc(T, [&](i64 p) {
    const auto ok = allowed_slots(a, p);
    for (auto it = states.begin(); it != states.end(); ++it) {
      const State q = it->first;
      if (std::max({q[0], q[1], q[2], q[3]}) < p) continue;
      const mpz_class old = it->second;
      for (unsigned mask = 1; mask < 16; ++mask) {
        State next = q;
        bool fits = true;
        int bits = 0;
        for (int i = 0; i < 4 && fits; ++i) {
          if (!(mask & (1u << i))) continue;
          fits = ok[i] && q[i] >= p;
          next[i] = q[i] / p;
          ++bits;
        }
        if (!fits) continue;
        mpz_class w = old;
        for (int k = moduli_hit(mask); k > 0; --k) mpz_divexact_ui(w.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(p));
        if (bits % 2 == 1) w = -w;
        states[next] += w;
      }
    }
  });
  mpz_class sum = 0;
  for (const auto& [q, v] : states) sum += v;
  mpq_class out(sum, D);
  out.canonicalize();
  for (i64 v : a) out *= e_factor(v, T);
  return out;
}

double theta_truncated_value(const Quad& a, i64 T) {
  require_theta_input(a, T);
  if (T > kThetaValueCeiling) {
    throw std::invalid_argument("theta_truncated_value: T above " + std::to_string(kThetaValueCeiling));
  }
  const FloorValues fv(T);
  const std::size_t V = fv.size();
  auto key = [V](const std::array<std::size_t, 4>& r) {
    return ((r[0] * V + r[1]) * V + r[2]) * V + r[3];
  };
  // Dense table over ranks; keys are ordered like the states, and every
  // transition lowers the key, so an ascending in-place sweep reads only
  // values from before the current prime.
  std::vector<double> value(V * V * V * V, 0.0);
  std::vector<std::size_t> active{key({V - 1, V - 1, V - 1, V - 1})};
  value[active[0]] = 1.0;
  for_each_prime_desc(T, [&](i64 p) {
    const auto ok = allowed_slots(a, p);
    double weight[16];
    for (unsigned mask = 1; mask < 16; ++mask) {
      weight[mask] = std::pow(static_cast<double>(p), -moduli_hit(mask)) *
                     ((__builtin_popcount(mask) % 2) ? -1.0 : 1.0);
    }
    std::vector<std::size_t> created;
    for (std::size_t k : active) {
      std::array<std::size_t, 4> r{k / (V * V * V), k / (V * V) % V, k / V % V, k % V};
      std::array<i64, 4> q{};
      for (int i = 0; i < 4; ++i) q[i] = fv.values[r[i]];
      const double old = value[k];
      if (old == 0.0) continue;
      for (unsigned mask = 1; mask < 16; ++mask) {
        auto nr = r;
        bool fits = true;
        for (int i = 0; i < 4 && fits; ++i) {
          if (!(mask & (1u << i))) continue;
          fits = ok[i] && q[i] >= p;
          nr[i] = fv.rank(q[i] / p);
        }
        if (!fits) continue;
        const std::size_t nk = key(nr);
        if (value[nk] == 0.0) created.push_back(nk);
        value[nk] += weight[mask] * old;
      }
    }
    active.insert(active.end(), created.begin(), created.end());
    std::sort(active.begin(), active.end());
    active.erase(std::unique(active.begin(), active.end()), active.end());
  });
  long double sum = 0;
  for (std::size_t k : active) sum += value[k];
  double out = static_cast<double>(sum);
  for (i64 v : a) out *= e_factor(v, T).get_d();
  return out;
}

mpq_class theta_euler_partial(const Quad& a, i64 P) {
  auto ps = primes_up_to(P);
  for (auto [p, e] : factorize(product(a))) {
    if (p > P) ps.push_back(p);
  }
  mpq_class out = 1;
  for (i64 p : ps) out *= theta_euler_factor(a, p);
  return out;
}

EulerProduct theta_euler(const Quad& a, i64 P) {
  if (theta0(a) != 1) throw std::invalid_argument("theta_euler: a' must be pairwise coprime");
  if (P < 2) throw std::invalid_argument("theta_euler: prime limit must be >= 2");
  auto ps = primes_up_to(P);
  for (auto [p, e] : factorize(product(a))) {
    if (p > P) ps.push_back(p);
  }
  long double log_sum = 0;
  for (i64 p : ps) log_sum += std::log(theta_euler_factor(a, p).get_d());
  EulerProduct r;
  r.prime_limit = P;
  r.partial = static_cast<double>(std::exp(log_sum));
  // -log(1 - 4/n^2) <= (4/n^2) / (1 - 4/(P+1)^2) for n > P.
  const double q = static_cast<double>(P + 1);
  r.tail = (4.0 / static_cast<double>(P)) / (1.0 - 4.0 / (q * q));
  r.upper = r.partial;
  r.lower = r.partial * std::exp(-r.tail);
  return r;
}

std::vector<MoebiusDatum> admissible_datums(const Quad& a, const std::array<i64, 6>& f_bounds) {
  // Bound index for the pair (i, j), i < j, in the order 12, 13, 14, 23, 24, 34.
  auto bound = [&](int i, int j) {
    static const int slot[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return f_bounds[static_cast<std::size_t>(slot[i][j])];
  };
  const i64 dmax = *std::max_element(f_bounds.begin(), f_bounds.end());
  std::array<std::vector<i64>, 4> dchoices, echoices;
  for (int i = 0; i < 4; ++i) {
    for (i64 v = 1; v <= dmax; ++v) {
      if (!is_squarefree(v)) continue;
      bool ok = true;
      for (int j = 0; j < 4; ++j) {
        if (j != i && gcd(v, a[j]) != 1) ok = false;
      }
      if (ok) dchoices[i].push_back(v);
    }
    echoices[i] = squarefree_divisors(abs64(a[i]));
  }
  std::vector<MoebiusDatum> out;
  MoebiusDatum m;
  auto d_fits = [&](int upto) {
    for (int j = 0; j < upto; ++j) {
      if (lcm(m.d[j], m.d[upto]) > bound(j, upto)) return false;
    }
    return true;
  };
  for (i64 d1 : dchoices[0]) {
    m.d[0] = d1;
    for (i64 d2 : dchoices[1]) {
      m.d[1] = d2;
      if (!d_fits(1)) continue;
      for (i64 d3 : dchoices[2]) {
        m.d[2] = d3;
        if (!d_fits(2)) continue;
        for (i64 d4 : dchoices[3]) {
          m.d[3] = d4;
          if (!d_fits(3)) continue;
          for (i64 e1 : echoices[0]) {
            for (i64 e2 : echoices[1]) {
              for (i64 e3 : echoices[2]) {
                for (i64 e4 : echoices[3]) {
                  m.e = {e1, e2, e3, e4};
                  bool fits = true;
                  for (int i = 0; i < 4 && fits; ++i) {
                    for (int j = i + 1; j < 4 && fits; ++j) fits = m.f(i + 1, j + 1) <= bound(i, j);
                  }
                  if (fits) out.push_back(m);
                }
              }
            }
          }
        }
      }
    }
  }
  return out;
}

MoebiusIdentityResult moebius_identity_check(const Quad& a, i64 B, i64 W) {
  if (theta0(a) != 1) throw std::invalid_argument("moebius_identity_check: theta0(a') = 0");
  for (i64 v : a) {
    if (v < 1) throw std::invalid_argument("moebius_identity_check: a_i must be positive");
  }
  if (B < 1 || B > 200 || W < 1) throw std::invalid_argument("moebius_identity_check: need 1 <= B <= 200, W >= 1");
  const auto [a1, a2, a3, a4] = a;
  const i128 A = product(a);
  const i128 W3BA = i128{W} * W * W * B * A;
  // Every point with height <= B has |a_ij a_i a_j| <= B (a middle edge of a path).
  const i64 M12 = B / (a1 * a2), M23 = B / (a2 * a3), M34 = B / (a3 * a4);

  // In S^(W): nonzero, height <= B and |a_ij| <= W B_ij, i.e. (|a_ij| a_i a_j)^3 <= W^3 B A.
  auto in_region = [&](TorsorPoint& t, i64 a12, i64 a23, i64 a34, const DependentResult& r) {
    t.a12 = a12;
    t.a23 = a23;
    t.a34 = a34;
    t.a13 = r.a13;
    t.a24 = r.a24;
    t.a14 = r.a14;
    if (r.a13 == 0 || r.a24 == 0 || r.a14 == 0) return false;
    if (!torsor_height_at_most(t, B)) return false;
    for (int i = 1; i <= 4; ++i) {
      for (int j = i + 1; j <= 4; ++j) {
        i128 s = abs128(t.edge(i, j)) * t.vertex(i) * t.vertex(j);
        if (s * s * s > W3BA) return false;
      }
    }
    return true;
  };

  MoebiusIdentityResult res;
  TorsorPoint t{a1, a2, a3, a4, 0, 0, 0, 0, 0, 0};
  for (i64 a12 = -M12; a12 <= M12; ++a12) {
    if (a12 == 0) continue;
    for (i64 a23 = -M23; a23 <= M23; ++a23) {
      if (a23 == 0) continue;
      for (i64 a34 = -M34; a34 <= M34; ++a34) {
        if (a34 == 0) continue;
        auto r = dependent_coordinates(a, a12, a23, a34);
        if (r.status != DependentStatus::ok) continue;
        if (in_region(t, a12, a23, a34, r) && check_coprimality(t)) ++res.lhs;
      }
    }
  }

  std::array<i64, 6> bounds{};
  {
    std::size_t n = 0;
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) bounds[n++] = B / (a[i] * a[j]);
    }
  }
  for (const auto& m : admissible_datums(a, bounds)) {
    ++res.datums_tried;
    const int mu = m.mu();
    if (mu == 0) continue;
    const auto L = lattice_normal_form(a, m);
    i64 c = 0;
    for (i64 a12 = first_in_class(-M12, 0, L.m12); a12 <= M12; a12 += L.m12) {
      if (a12 == 0) continue;
      for (i64 a23 = first_in_class(-M23, L.gamma23(a12), L.m23); a23 <= M23; a23 += L.m23) {
        if (a23 == 0) continue;
        for (i64 a34 = first_in_class(-M34, L.gamma34(a12, a23), L.m34); a34 <= M34; a34 += L.m34) {
          if (a34 == 0) continue;
          assert(lattice_membership(a, m, a12, a23, a34));
          auto r = dependent_coordinates(a, a12, a23, a34);
          if (in_region(t, a12, a23, a34, r)) ++c;
        }
      }
    }
    if (c != 0) ++res.datums;
    res.rhs += mu * c;
  }
  return res;
}

}  // namespace dp5
