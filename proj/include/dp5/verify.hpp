#pragma once

// Verification suites shared by `dp5 verify` and the acceptance binary.

#include <string>
#include <vector>

#include "dp5/densities.hpp"
#include "json.hpp"

namespace dp5 {

struct CheckResult {
  std::string name;
  nlohmann::json parameters = nlohmann::json::object();
  bool passed = true;
  i64 checked = 0;
  i64 failures = 0;
  std::string first_failure;  // empty when passed

  void fail(const std::string& what);
};

enum class Suite { torsor, lattice, moebius, weyl, all };

std::string to_string(Suite s);
Suite parse_suite(const std::string& s);

struct VerifyControls {
  i64 torsor_height = 200;        // round trip and direct/torsor histograms
  i64 weyl_height = 100;
  i64 lattice_radius = 12;        // membership box [-R, R]^3
  i64 covolume_radius = 200;      // box for the index count
  std::vector<Quad> lattice_quads{{1, 1, 1, 1}, {3, 2, 1, 1}, {1, 1, 2, 3}};
  std::vector<Quad> moebius_quads{{1, 1, 1, 1}, {3, 2, 1, 1}, {1, 2, 3, 5}};
  std::vector<i64> moebius_heights{12, 20};
  int workers = 0;
};

/// Every point of height <= B: parameterize/project round trip, validity,
/// torsor height = height, and the enumerated torsor point is the canonical one.
CheckResult check_round_trip(i64 B, int workers = 0);

/// Height histograms of both counters agree up to B, so the counts agree for
/// every bound in 1..B.
CheckResult check_cross_validation(i64 B, int workers = 0);

/// For every enumerated point and every s_l: s_l^2 = id on the whole sign orbit,
/// the image orbit is well defined, enumerated, of equal height, and s_l
/// permutes the enumerated set.
CheckResult check_weyl_closure(i64 B, int workers = 0);

/// Normal form versus membership on [-R, R]^3 for all admissible datums with
/// components in {1, 2, 3}, plus the closed-form moduli.
CheckResult check_lattice_box(const std::vector<Quad>& quads, i64 R);

/// Points of G in [-L, L]^3 (counted class by class from the normal form)
/// against (2L + 1)^3 / covolume, within a boundary allowance of one layer per face.
CheckResult check_lattice_covolume(const std::vector<Quad>& quads, i64 L);

/// Both sides of the Moebius identity with no restriction (W = B).
CheckResult check_moebius(const std::vector<Quad>& quads, const std::vector<i64>& heights);

std::vector<CheckResult> run_suite(Suite s, const VerifyControls& controls = {});

/// {"suite", "passed", "checks": [...]}; no timing.
nlohmann::json suite_json(Suite s, const std::vector<CheckResult>& checks);
nlohmann::json to_json(const CheckResult& c);

}  // namespace dp5
