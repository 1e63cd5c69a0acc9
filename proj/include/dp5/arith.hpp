#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dp5 {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

/// Product that throws std::overflow_error instead of wrapping.
i128 checked_mul(i128 a, i128 b);
i128 checked_add(i128 a, i128 b);

inline i64 abs64(i64 v) { return v < 0 ? -v : v; }
inline i128 abs128(i128 v) { return v < 0 ? -v : v; }

/// Nonnegative gcd; gcd(0, 0) = 0.
i64 gcd(i64 a, i64 b);
i128 gcd(i128 a, i128 b);
i64 lcm(i64 a, i64 b);

/// Representative of a mod m in [0, m); m >= 1.
inline i64 floor_mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

/// Inverse of a modulo m in [0, m). Throws std::domain_error unless gcd(a, m) = 1.
/// For m = 1 the answer is 0.
i64 mod_inverse(i64 a, i64 m);

/// Smallest value >= lo that is congruent to r mod m.
inline i64 first_in_class(i64 lo, i64 r, i64 m) { return lo + floor_mod(r - lo, m); }

std::vector<i64> primes_up_to(i64 n);

/// Factorization into (prime, exponent) pairs by trial division; n >= 1.
std::vector<std::pair<i64, int>> factorize(i64 n);

bool is_squarefree(i64 n);
int moebius(i64 n);
i64 radical(i64 n);
i64 divisor_count(i64 n);

/// Positive squarefree divisors of n (n >= 1), ascending.
std::vector<i64> squarefree_divisors(i64 n);

std::string to_string(i128 v);

}  // namespace dp5
