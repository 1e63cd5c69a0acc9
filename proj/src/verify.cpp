#include "dp5/verify.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dp5/counting.hpp"
#include "dp5/torsor.hpp"

namespace dp5 {

namespace {

CountOptions options(int workers, i64 B) {
  CountOptions o;
  o.workers = workers;
  o.direct_ceiling = std::max(o.direct_ceiling, B);
  return o;
}

nlohmann::json quads_json(const std::vector<Quad>& quads) {
  auto arr = nlohmann::json::array();
  for (const auto& a : quads) arr.push_back(a);
  return arr;
}

std::vector<MoebiusDatum> small_datums(const Quad& a) {
  std::vector<MoebiusDatum> out;
  for (int code = 0; code < 6561; ++code) {
    MoebiusDatum m;
    int c = code;
    for (int i = 0; i < 4; ++i, c /= 3) m.d[static_cast<std::size_t>(i)] = 1 + c % 3;
    for (int i = 0; i < 4; ++i, c /= 3) m.e[static_cast<std::size_t>(i)] = 1 + c % 3;
    if (m.admissible(a)) out.push_back(m);
  }
  return out;
}

std::string datum_string(const Quad& a, const MoebiusDatum& m) {
  std::ostringstream s;
  s << "a'=(" << a[0] << "," << a[1] << "," << a[2] << "," << a[3] << ") d=(" << m.d[0] << "," << m.d[1] << ","
    << m.d[2] << "," << m.d[3] << ") e=(" << m.e[0] << "," << m.e[1] << "," << m.e[2] << "," << m.e[3] << ")";
  return s.str();
}

CheckResult make_check(std::string name, nlohmann::json parameters) {
  CheckResult r;
  r.name = std::move(name);
  r.parameters = std::move(parameters);
  return r;
}

// Number of x in [-L, L] with x = r (mod m).
i64 class_count(i64 r, i64 m, i64 L) {
  const i64 first = first_in_class(-L, r, m);
  return first > L ? 0 : (L - first) / m + 1;
}

}  // namespace

void CheckResult::fail(const std::string& what) {
  passed = false;
  ++failures;
  if (first_failure.empty()) first_failure = what;
}

std::string to_string(Suite s) {
  switch (s) {
    case Suite::torsor: return "torsor";
    case Suite::lattice: return "lattice";
    case Suite::moebius: return "moebius";
    case Suite::weyl: return "weyl";
    case Suite::all: return "all";
  }
  return "?";
}

Suite parse_suite(const std::string& s) {
  for (Suite v : {Suite::torsor, Suite::lattice, Suite::moebius, Suite::weyl, Suite::all}) {
    if (to_string(v) == s) return v;
  }
  throw std::invalid_argument("unknown suite: " + s);
}

CheckResult check_round_trip(i64 B, int workers) {
  CheckResult r = make_check("round_trip", {{"height_bound", B}});
  const auto opts = options(workers, B);
  const auto direct = enumerate_points(B, Method::direct, opts);
  for (const auto& rec : direct) {
    ++r.checked;
    try {
      const TorsorPoint t = parameterize(rec.point);
      if (!is_valid(t)) r.fail("invalid torsor point over " + rec.point.to_string());
      else if (canonical_representative(t) != t) r.fail("non-canonical lift of " + rec.point.to_string());
      else if (project(t) != rec.point) r.fail("project(parameterize(p)) != p at " + rec.point.to_string());
      else if (torsor_height(t) != rec.height) r.fail("height mismatch at " + rec.point.to_string());
    } catch (const std::exception& e) {
      r.fail(rec.point.to_string() + ": " + e.what());
    }
  }
  const auto torsor = enumerate_points(B, Method::torsor, opts);
  bool same = torsor.size() == direct.size();
  for (std::size_t n = 0; same && n < torsor.size(); ++n) {
    same = torsor[n].point == direct[n].point && torsor[n].height == direct[n].height &&
           torsor[n].torsor == parameterize(direct[n].point);
  }
  if (!same) r.fail("direct and torsor enumerations differ");
  r.parameters["points"] = static_cast<i64>(direct.size());
  return r;
}

CheckResult check_cross_validation(i64 B, int workers) {
  CheckResult r = make_check("cross_validation", {{"height_bounds", {1, B}}});
  const auto opts = options(workers, B);
  const auto direct = cumulative(height_histogram(B, Method::direct, opts));
  const auto torsor = cumulative(height_histogram(B, Method::torsor, opts));
  for (i64 b = 1; b <= B; ++b) {
    ++r.checked;
    const auto i = static_cast<std::size_t>(b);
    if (direct[i] != torsor[i]) {
      r.fail("N(" + std::to_string(b) + "): direct " + std::to_string(direct[i]) + ", torsor " +
             std::to_string(torsor[i]));
    }
  }
  r.parameters["count_at_bound"] = direct.back();
  return r;
}

CheckResult check_weyl_closure(i64 B, int workers) {
  CheckResult r = make_check("weyl_closure", {{"height_bound", B}});
  const auto points = enumerate_points(B, Method::torsor, options(workers, B));
  std::set<TorsorPoint> enumerated;
  for (const auto& p : points) enumerated.insert(p.torsor);
  for (int l = 1; l <= 4; ++l) {
    std::set<TorsorPoint> image;
    for (const auto& p : points) {
      ++r.checked;
      const std::string where = "s" + std::to_string(l) + " at " + p.torsor.to_string();
      const TorsorPoint target = canonical_representative(weyl_involution(l, p.torsor));
      bool ok = true;
      for (const auto& member : sign_orbit(p.torsor)) {
        const TorsorPoint s = weyl_involution(l, member);
        ok = ok && weyl_involution(l, s) == member && canonical_representative(s) == target;
      }
      if (!ok) r.fail(where + ": not an involution on the orbit");
      else if (!enumerated.count(target)) r.fail(where + ": image not enumerated");
      else if (torsor_height(target) != p.height) r.fail(where + ": height changed");
      image.insert(target);
    }
    if (image.size() != enumerated.size()) r.fail("s" + std::to_string(l) + " is not a bijection");
  }
  r.parameters["points"] = static_cast<i64>(points.size());
  return r;
}

CheckResult check_lattice_box(const std::vector<Quad>& quads, i64 R) {
  CheckResult r =
      make_check("lattice_normal_form", {{"radius", R}, {"quads", quads_json(quads)}, {"datum_range", {1, 3}}});
  i64 datums = 0;
  for (const auto& a : quads) {
    for (const auto& m : small_datums(a)) {
      ++datums;
      const auto L = lattice_normal_form(a, m);
      if (L.m12 != m.b12() || L.m23 != a[3] * m.b23() || L.m34 != a[0] * m.b34()) {
        r.fail("moduli differ from closed form for " + datum_string(a, m));
      }
      for (i64 x = -R; x <= R; ++x) {
        for (i64 y = -R; y <= R; ++y) {
          for (i64 z = -R; z <= R; ++z) {
            ++r.checked;
            if (lattice_membership(a, m, x, y, z) != L.contains(x, y, z)) {
              r.fail(datum_string(a, m) + " at (" + std::to_string(x) + "," + std::to_string(y) + "," +
                     std::to_string(z) + ")");
            }
          }
        }
      }
    }
  }
  r.parameters["datums"] = datums;
  return r;
}

CheckResult check_lattice_covolume(const std::vector<Quad>& quads, i64 L) {
  CheckResult r =
      make_check("lattice_covolume", {{"radius", L}, {"quads", quads_json(quads)}, {"datum_range", {1, 3}}});
  double worst = 0.0;
  for (const auto& a : quads) {
    for (const auto& m : small_datums(a)) {
      ++r.checked;
      const auto G = lattice_normal_form(a, m);
      const i128 formula = i128{a[0]} * a[3] * m.b12() * m.b23() * m.b34();
      if (G.covolume() != formula) r.fail("covolume formula fails for " + datum_string(a, m));
      i64 hits = 0;
      for (i64 x = first_in_class(-L, 0, G.m12); x <= L; x += G.m12) {
        const i64 g23 = G.gamma23(x);
        for (i64 y = first_in_class(-L, g23, G.m23); y <= L; y += G.m23) {
          hits += class_count(G.gamma34(x, y), G.m34, L);
        }
      }
      const double side = 2.0 * static_cast<double>(L) + 1;
      const double vol = static_cast<double>(formula);
      const double expected = side * side * side / vol;
      const double modulus = static_cast<double>(std::max({G.m12, G.m23, G.m34}));
      const double allowance = 6.0 * side * side * modulus / vol + 1;
      const double dev = std::fabs(static_cast<double>(hits) - expected);
      worst = std::max(worst, dev / allowance);
      if (dev > allowance) r.fail("box count off for " + datum_string(a, m));
    }
  }
  r.parameters["worst_deviation_over_allowance"] = worst;
  return r;
}

CheckResult check_moebius(const std::vector<Quad>& quads, const std::vector<i64>& heights) {
  CheckResult r = make_check("moebius_identity", {{"quads", quads_json(quads)}, {"heights", heights}});
  auto rows = nlohmann::json::array();
  for (const auto& a : quads) {
    for (i64 B : heights) {
      ++r.checked;
      const auto m = moebius_identity_check(a, B, B);
      rows.push_back({{"quad", a}, {"height", B}, {"lhs", m.lhs}, {"rhs", m.rhs}, {"datums", m.datums}});
      if (!m.holds()) {
        r.fail("a'=(" + std::to_string(a[0]) + "," + std::to_string(a[1]) + "," + std::to_string(a[2]) + "," +
               std::to_string(a[3]) + ") B=" + std::to_string(B) + ": " + std::to_string(m.lhs) +
               " != " + std::to_string(m.rhs));
      }
    }
  }
  r.parameters["cases"] = rows;
  return r;
}

std::vector<CheckResult> run_suite(Suite s, const VerifyControls& c) {
  std::vector<CheckResult> out;
  const bool all = s == Suite::all;
  if (all || s == Suite::torsor) {
    out.push_back(check_round_trip(c.torsor_height, c.workers));
    out.push_back(check_cross_validation(c.torsor_height, c.workers));
  }
  if (all || s == Suite::lattice) {
    out.push_back(check_lattice_box(c.lattice_quads, c.lattice_radius));
    out.push_back(check_lattice_covolume(c.lattice_quads, c.covolume_radius));
  }
  if (all || s == Suite::moebius) out.push_back(check_moebius(c.moebius_quads, c.moebius_heights));
  if (all || s == Suite::weyl) out.push_back(check_weyl_closure(c.weyl_height, c.workers));
  return out;
}

nlohmann::json to_json(const CheckResult& c) {
  nlohmann::json j{{"name", c.name},       {"parameters", c.parameters}, {"passed", c.passed},
                   {"checked", c.checked}, {"failures", c.failures}};
  if (!c.first_failure.empty()) j["first_failure"] = c.first_failure;
  return j;
}

nlohmann::json suite_json(Suite s, const std::vector<CheckResult>& checks) {
  auto arr = nlohmann::json::array();
  bool passed = true;
  for (const auto& c : checks) {
    arr.push_back(to_json(c));
    passed = passed && c.passed;
  }
  return {{"suite", to_string(s)}, {"passed", passed}, {"checks", arr}};
}

}  // namespace dp5
