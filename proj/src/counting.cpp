#include "dp5/counting.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace dp5 {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_bound(i64 B, i64 ceiling, const char* what) {
  if (B < 1) throw std::invalid_argument(std::string(what) + ": height bound must be >= 1");
  if (B > ceiling) {
    throw std::invalid_argument(std::string(what) + ": height bound " + std::to_string(B) +
                                " exceeds the ceiling " + std::to_string(ceiling));
  }
}

// Runs body(worker) on `workers` threads and waits; exceptions are rethrown.
template <class Body>
void run_workers(int workers, Body body) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::thread> threads;
  for (int w = 1; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        body(w);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  try {
    body(0);
  } catch (...) {
    errors[0] = std::current_exception();
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Height if it is at most B, otherwise B + 1. The gcd of the first two form
// values bounds the full gcd from above, which rejects most candidates early.
i64 height_if_at_most(i64 y1, i64 y2, i64 y3, i64 B) {
  const i64 d12 = y1 - y2, d13 = y1 - y3, d23 = y2 - y3;
  const i64 v[12] = {
      y1 * y3 * d12,  y1 * y2 * d13,   y2 * y3 * -d12, y2 * y1 * d23,
      y3 * y2 * -d13, y3 * y1 * -d23,  y3 * d13 * d12, y2 * d12 * d13,
      y3 * d23 * -d12, y1 * -d12 * d23, y2 * d23 * -d13, y1 * -d13 * -d23,
  };
  i64 mx = 0;
  for (i64 x : v) mx = std::max(mx, abs64(x));
  i64 g = gcd(v[0], v[1]);
  if (mx > B * g) return B + 1;
  for (int n = 2; n < 12 && g > 1; ++n) g = gcd(g, v[n]);
  return mx / g <= B ? mx / g : B + 1;
}

// Visits every primitive point of U with y1 > 0, |y_i| <= R and |y_i - y_j| <= R,
// and its height. Each y_i and y_i - y_j is a vertex-vertex-edge product, so a
// height <= R forces this box.
// Worker w takes the y1 values congruent to w modulo workers.
template <class Visit>
void direct_sweep(i64 R, int worker, int workers, Visit visit) {
  for (i64 y1 = 1 + worker; y1 <= R; y1 += workers) {
    for (i64 y2 = y1 - R; y2 <= R; ++y2) {
      if (y2 == 0 || y2 == y1) continue;
      const i64 g12 = gcd(y1, y2);
      const i64 lo = std::max(y1, y2) - R, hi = std::min(y1, y2) + R;
      for (i64 y3 = std::max(-R, lo); y3 <= std::min(R, hi); ++y3) {
        if (y3 == 0 || y3 == y1 || y3 == y2) continue;
        if (g12 != 1 && gcd(g12, y3) != 1) continue;
        visit(y1, y2, y3, height_if_at_most(y1, y2, y3, R));
      }
    }
  }
}

// Enumerates canonical torsor points with torsor_height <= B. The a' loop runs
// over (a2, a3) pairs, which are dealt round-robin to workers. Every range
// below is implied by one of the twelve path monomials:
//   a23 <= B / max(a2a3, a1a2, a2a4, a1a3, a3a4)
//   |a12| <= B / max(a1a2, a1a3, a1a4, a2a3, a2a4), B / (a2a3 a23), B / (a1a2 a23)
//   |a34| <= B / max(a3a4, a1a3, a1a4, a2a3, a2a4), B / (a3a4 a23), B / (a2a3 a23 |a12|)
// In reduced mode a' is further restricted by |a1a2a3a4|^5 <= B^4, which holds
// whenever Q_0 is the smallest skew quintuple (their product is at most B^4).
// visit(t, minimizers) receives minimizers = 1 in full mode.
template <class Visit>
void torsor_sweep(i64 B, bool reduced, int worker, int workers, u64& visited, Visit visit) {
  const i128 B4 = i128{B} * B * B * B;
  auto pow5_exceeds = [&](i128 A) {
    i128 v = 1;
    for (int n = 0; n < 5; ++n) {
      v *= A;
      if (v > B4) return true;
    }
    return false;
  };
  i64 pair_index = -1;
  for (i64 a2 = 1; a2 <= B; ++a2) {
    for (i64 a3 = 1; a2 * a3 <= B; ++a3) {
      if (gcd(a2, a3) != 1) continue;
      if (++pair_index % workers != worker) continue;
      for (i64 a1 = 1; a1 * std::max(a2, a3) <= B; ++a1) {
        if (gcd(a1, a2) != 1 || gcd(a1, a3) != 1) continue;
        if (reduced && pow5_exceeds(i128{a1} * a2 * a3)) break;
        const i64 m123 = std::max({a1, a2, a3});
        for (i64 a4 = 1; a4 * m123 <= B; ++a4) {
          if (gcd(a4, a1) != 1 || gcd(a4, a2) != 1 || gcd(a4, a3) != 1) continue;
          if (reduced && pow5_exceeds(i128{a1} * a2 * a3 * a4)) break;
          const i64 inv14 = mod_inverse(a1, a4), inv41 = mod_inverse(a4, a1);
          const i64 p12 = a1 * a2, p13 = a1 * a3, p14 = a1 * a4;
          const i64 p23 = a2 * a3, p24 = a2 * a4, p34 = a3 * a4;
          const i64 max23 = B / std::max({p23, p12, p24, p13, p34});
          const i64 max12_base = B / std::max({p12, p13, p14, p23, p24});
          const i64 max34_base = B / std::max({p34, p13, p14, p23, p24});
          TorsorPoint t{a1, a2, a3, a4, 0, 0, 0, 0, 0, 0};
          for (i64 a23 = 1; a23 <= max23; ++a23) {
            if (gcd(a23, a1) != 1 || gcd(a23, a4) != 1) continue;
            const i64 max12 = std::min({max12_base, B / (p23 * a23), B / (p12 * a23)});
            const i64 max34_a23 = std::min(max34_base, B / (p34 * a23));
            // a12 = a1^{-1} a3 a23 (mod a4), a34 = a4^{-1} a2 a23 (mod a1).
            const i64 r12 = floor_mod(inv14 * floor_mod(a3 * a23, a4), a4);
            const i64 r34 = floor_mod(inv41 * floor_mod(a2 * a23, a1), a1);
            for (i64 a12 = first_in_class(-max12, r12, a4); a12 <= max12; a12 += a4) {
              if (a12 == 0) continue;
              ++visited;
              if (gcd(a12, a23) != 1 || gcd(a12, a3) != 1 || gcd(a12, a4) != 1) continue;
              const i64 max34 = std::min(max34_a23, B / (p23 * a23 * abs64(a12)));
              for (i64 a34 = first_in_class(-max34, r34, a1); a34 <= max34; a34 += a1) {
                if (a34 == 0) continue;
                ++visited;
                t.a12 = a12;
                t.a23 = a23;
                t.a34 = a34;
                t.a13 = (a2 * a23 - a4 * a34) / a1;
                t.a24 = (a3 * a23 - a1 * a12) / a4;
                t.a14 = (p23 * a23 - p34 * a34 - p12 * a12) / p14;
                if (t.a13 == 0 || t.a24 == 0 || t.a14 == 0) continue;
                if (!torsor_height_at_most(t, B)) continue;
                int minimizers = 1;
                if (reduced) {
                  auto q = skew_quintuples(t);
                  bool minimal = true;
                  for (int l = 1; l <= 4 && minimal; ++l) {
                    if (q[static_cast<std::size_t>(l)] < q[0]) minimal = false;
                    if (q[static_cast<std::size_t>(l)] == q[0]) ++minimizers;
                  }
                  if (!minimal) continue;
                }
                if (!check_coprimality(t)) continue;
                visit(t, minimizers);
              }
            }
          }
        }
      }
    }
  }
}

}  // namespace

std::string to_string(Method m) { return m == Method::direct ? "direct" : "torsor"; }

std::string to_string(Strategy s) { return s == Strategy::full ? "full" : "weyl_reduced"; }

Method parse_method(const std::string& s) {
  if (s == "direct") return Method::direct;
  if (s == "torsor") return Method::torsor;
  throw std::invalid_argument("unknown method '" + s + "'");
}

Strategy parse_strategy(const std::string& s) {
  if (s == "full") return Strategy::full;
  if (s == "weyl_reduced") return Strategy::weyl_reduced;
  throw std::invalid_argument("unknown strategy '" + s + "'");
}

int resolve_workers(const CountOptions& opts) {
  if (opts.workers > 0) return opts.workers;
  if (const char* env = std::getenv("DP5_WORKERS")) {
    int w = std::atoi(env);
    if (w > 0) return w;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

CountReport count_direct(i64 B, const CountOptions& opts) {
  check_bound(B, opts.direct_ceiling, "count_direct");
  const auto t0 = Clock::now();
  const int workers = resolve_workers(opts);
  std::vector<i64> counts(static_cast<std::size_t>(workers), 0);
  std::vector<u64> visits(static_cast<std::size_t>(workers), 0);
  run_workers(workers, [&](int w) {
    i64 c = 0;
    u64 v = 0;
    direct_sweep(B, w, workers, [&](i64, i64, i64, i64 h) {
      ++v;
      if (h <= B) ++c;
    });
    counts[static_cast<std::size_t>(w)] = c;
    visits[static_cast<std::size_t>(w)] = v;
  });
  CountReport r;
  r.height_bound = B;
  r.method = Method::direct;
  for (i64 c : counts) r.count += c;
  for (u64 v : visits) r.candidates_visited += v;
  r.workers = workers;
  r.elapsed = seconds_since(t0);
  return r;
}

CountReport count_torsor(i64 B, const CountOptions& opts) {
  check_bound(B, opts.torsor_ceiling, "count_torsor");
  const auto t0 = Clock::now();
  const int workers = resolve_workers(opts);
  const bool reduced = opts.strategy == Strategy::weyl_reduced;
  // In reduced mode each point contributes 5/minimizers; 60 * that is 300/minimizers.
  std::vector<i64> sums(static_cast<std::size_t>(workers), 0);
  std::vector<u64> visits(static_cast<std::size_t>(workers), 0);
  run_workers(workers, [&](int w) {
    i64 s = 0;
    u64 v = 0;
    torsor_sweep(B, reduced, w, workers, v, [&](const TorsorPoint&, int minimizers) {
      s += reduced ? 300 / minimizers : 1;
    });
    sums[static_cast<std::size_t>(w)] = s;
    visits[static_cast<std::size_t>(w)] = v;
  });
  CountReport r;
  r.height_bound = B;
  r.method = Method::torsor;
  r.strategy = opts.strategy;
  i64 total = 0;
  for (i64 s : sums) total += s;
  if (reduced) {
    if (total % 60 != 0) throw std::logic_error("weyl_reduced weights do not sum to an integer");
    total /= 60;
  }
  r.count = total;
  for (u64 v : visits) r.candidates_visited += v;
  r.workers = workers;
  r.elapsed = seconds_since(t0);
  return r;
}

CountReport count(i64 B, Method method, const CountOptions& opts) {
  return method == Method::direct ? count_direct(B, opts) : count_torsor(B, opts);
}

std::vector<PointRecord> enumerate_points(i64 B, Method method, const CountOptions& opts) {
  const int workers = resolve_workers(opts);
  std::vector<std::vector<PointRecord>> parts(static_cast<std::size_t>(workers));
  if (method == Method::direct) {
    check_bound(B, opts.direct_ceiling, "enumerate_points");
    run_workers(workers, [&](int w) {
      direct_sweep(B, w, workers, [&](i64 y1, i64 y2, i64 y3, i64 h) {
        if (h > B) return;
        ProjectivePoint p(y1, y2, y3);
        parts[static_cast<std::size_t>(w)].push_back({p, h, parameterize(p)});
      });
    });
  } else {
    check_bound(B, opts.torsor_ceiling, "enumerate_points");
    run_workers(workers, [&](int w) {
      u64 visited = 0;
      torsor_sweep(B, false, w, workers, visited, [&](const TorsorPoint& t, int) {
        parts[static_cast<std::size_t>(w)].push_back(
            {project(t), static_cast<i64>(torsor_height(t)), t});
      });
    });
  }
  std::vector<PointRecord> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  std::sort(out.begin(), out.end(), [](const PointRecord& x, const PointRecord& y) {
    if (x.height != y.height) return x.height < y.height;
    return x.point < y.point;
  });
  return out;
}

std::vector<i64> height_histogram(i64 Bmax, Method method, const CountOptions& opts) {
  const int workers = resolve_workers(opts);
  const auto size = static_cast<std::size_t>(Bmax) + 1;
  std::vector<std::vector<i64>> parts(static_cast<std::size_t>(workers), std::vector<i64>(size, 0));
  if (method == Method::direct) {
    check_bound(Bmax, opts.direct_ceiling, "height_histogram");
    run_workers(workers, [&](int w) {
      auto& hist = parts[static_cast<std::size_t>(w)];
      direct_sweep(Bmax, w, workers, [&](i64, i64, i64, i64 h) {
        if (h <= Bmax) ++hist[static_cast<std::size_t>(h)];
      });
    });
  } else {
    check_bound(Bmax, opts.torsor_ceiling, "height_histogram");
    run_workers(workers, [&](int w) {
      auto& hist = parts[static_cast<std::size_t>(w)];
      u64 visited = 0;
      torsor_sweep(Bmax, false, w, workers, visited, [&](const TorsorPoint& t, int) {
        ++hist[static_cast<std::size_t>(torsor_height(t))];
      });
    });
  }
  std::vector<i64> hist(size, 0);
  for (const auto& p : parts) {
    for (std::size_t h = 0; h < size; ++h) hist[h] += p[h];
  }
  return hist;
}

std::vector<i64> cumulative(const std::vector<i64>& hist) {
  std::vector<i64> out(hist.size(), 0);
  i64 run = 0;
  for (std::size_t h = 0; h < hist.size(); ++h) out[h] = run += hist[h];
  return out;
}

CuspStatistics cusp_statistics(i64 B, const CountOptions& opts) {
  check_bound(B, opts.torsor_ceiling, "cusp_statistics");
  const int workers = resolve_workers(opts);
  std::vector<std::map<int, i64>> parts(static_cast<std::size_t>(workers));
  run_workers(workers, [&](int w) {
    auto& buckets = parts[static_cast<std::size_t>(w)];
    u64 visited = 0;
    torsor_sweep(B, false, w, workers, visited, [&](const TorsorPoint& t, int) {
      double mx = 0.0;
      for (double z : z_coordinates(t, static_cast<double>(B))) mx = std::max(mx, std::fabs(z));
      ++buckets[static_cast<int>(std::floor(std::log2(mx)))];
    });
  });
  CuspStatistics s;
  s.height_bound = B;
  for (const auto& p : parts) {
    for (auto [k, c] : p) {
      s.buckets[k] += c;
      s.total += c;
    }
  }
  return s;
}

}  // namespace dp5
