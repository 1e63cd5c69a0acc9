#pragma once

// Exact counters for N_{U,H}(B): direct enumeration in P^2 and congruence-stepped
// enumeration on the torsor. Both return the number of points of U with height <= B.

#include <map>
#include <string>
#include <vector>

#include "dp5/arith.hpp"
#include "dp5/geometry.hpp"
#include "dp5/torsor.hpp"

namespace dp5 {

enum class Method { direct, torsor };

/// full: every canonical torsor point. weyl_reduced: only points whose
/// |a1 a2 a3 a4| is minimal among the five skew quintuples, each weighted by
/// 5 / (number of minimizers); agrees with full exactly.
enum class Strategy { full, weyl_reduced };

std::string to_string(Method m);
std::string to_string(Strategy s);
Method parse_method(const std::string& s);
Strategy parse_strategy(const std::string& s);

struct CountOptions {
  int workers = 0;  // 0: DP5_WORKERS, else hardware concurrency
  i64 direct_ceiling = 2000;
  i64 torsor_ceiling = 10'000'000;
  Strategy strategy = Strategy::full;
};

/// Resolved worker count for the given options (always >= 1).
int resolve_workers(const CountOptions& opts);

struct CountReport {
  i64 height_bound = 0;
  Method method = Method::torsor;
  Strategy strategy = Strategy::full;
  i64 count = 0;
  double elapsed = 0.0;
  u64 candidates_visited = 0;
  int workers = 1;
};

/// Throws std::invalid_argument for B < 1 or B above the direct ceiling.
CountReport count_direct(i64 B, const CountOptions& opts = {});
/// Throws std::invalid_argument for B < 1 or B above the torsor ceiling.
CountReport count_torsor(i64 B, const CountOptions& opts = {});
CountReport count(i64 B, Method method, const CountOptions& opts = {});

struct PointRecord {
  ProjectivePoint point;
  i64 height;
  TorsorPoint torsor;
};

/// Every point of U with height <= B, ordered by (height, y1, y2, y3).
std::vector<PointRecord> enumerate_points(i64 B, Method method, const CountOptions& opts = {});

/// hist[h] = number of points of height exactly h, for 0 <= h <= Bmax.
std::vector<i64> height_histogram(i64 Bmax, Method method, const CountOptions& opts = {});

/// Running sums of a histogram: out[B] = number of points with height <= B.
std::vector<i64> cumulative(const std::vector<i64>& hist);

struct CuspStatistics {
  i64 height_bound = 0;
  i64 total = 0;
  /// k -> number of points with 2^k <= max|z_ij| < 2^(k+1).
  std::map<int, i64> buckets;
};

CuspStatistics cusp_statistics(i64 B, const CountOptions& opts = {});

}  // namespace dp5
