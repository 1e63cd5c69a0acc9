#include "dp5/arith.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dp5 {

i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("128-bit product overflow");
  return r;
}

i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("128-bit sum overflow");
  return r;
}

i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

i128 gcd(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i64 lcm(i64 a, i64 b) {
  if (a == 0 || b == 0) return 0;
  i128 r = checked_mul(abs64(a) / gcd(a, b), abs64(b));
  if (r > INT64_MAX) throw std::overflow_error("lcm exceeds 64 bits");
  return static_cast<i64>(r);
}

i64 mod_inverse(i64 a, i64 m) {
  if (m < 1) throw std::domain_error("mod_inverse: modulus must be positive");
  if (m == 1) return 0;
  i64 r0 = floor_mod(a, m), r1 = m;
  i64 s0 = 1, s1 = 0;
  while (r1 != 0) {
    i64 q = r0 / r1;
    i64 t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) throw std::domain_error("mod_inverse: not invertible");
  return floor_mod(s0, m);
}

std::vector<i64> primes_up_to(i64 n) {
  std::vector<i64> out;
  if (n < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  for (i64 p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    out.push_back(p);
    for (i64 q = p * p; q <= n; q += p) composite[q] = true;
  }
  return out;
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
  if (n < 1) throw std::domain_error("factorize: n must be positive");
  std::vector<std::pair<i64, int>> out;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_squarefree(i64 n) {
  for (auto [p, e] : factorize(abs64(n))) {
    if (e > 1) return false;
  }
  return n != 0;
}

int moebius(i64 n) {
  int s = 1;
  for (auto [p, e] : factorize(abs64(n))) {
    if (e > 1) return 0;
    s = -s;
  }
  return s;
}

i64 radical(i64 n) {
  i64 r = 1;
  for (auto [p, e] : factorize(abs64(n))) r *= p;
  return r;
}

i64 divisor_count(i64 n) {
  i64 t = 1;
  for (auto [p, e] : factorize(abs64(n))) t *= e + 1;
  return t;
}

std::vector<i64> squarefree_divisors(i64 n) {
  std::vector<i64> out{1};
  for (auto [p, e] : factorize(n)) {
    std::size_t k = out.size();
    for (std::size_t i = 0; i < k; ++i) out.push_back(out[i] * p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  // Digits by magnitude so the minimum value never gets negated.
  std::string s;
  while (v != 0) {
    int d = static_cast<int>(v % 10);
    s.push_back(static_cast<char>('0' + (d < 0 ? -d : d)));
    v /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace dp5
