#include "dp5/report.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace dp5 {

namespace {

constexpr const char* kPointsHeader = "y1,y2,y3,height,a1,a2,a3,a4,a12,a13,a14,a23,a24,a34";

}  // namespace

nlohmann::json to_json(const CountReport& r) {
  return {{"height_bound", r.height_bound},
          {"method", to_string(r.method)},
          {"strategy", to_string(r.strategy)},
          {"count", r.count},
          {"candidates_visited", r.candidates_visited}};
}

nlohmann::json to_json(const OmegaResult& r) {
  return {{"cutoff", r.cutoff},
          {"volume", r.volume},
          {"value", r.value},
          {"quadrature_error", r.quadrature_error},
          {"tail_bound", r.tail_bound},
          {"error", r.error},
          {"target", r.target},
          {"relative_deviation", (r.value - r.target) / r.target}};
}

nlohmann::json to_json(const Theta1Result& r) {
  return {{"prime_limit", r.prime_limit}, {"partial", r.partial}, {"lower", r.lower},
          {"upper", r.upper},             {"tail_log", r.tail_log}};
}

nlohmann::json to_json(const ConstantsReport& r) {
  return {{"v1", r.v1.get_str()},
          {"v1_slicing", r.v1_slicing.get_str()},
          {"v1_triangulation", r.v1_triangulation.get_str()},
          {"alpha", r.alpha.get_str()},
          {"literature_v1", kLiteratureV1},
          {"literature_v1_consistent", r.literature_v1_consistent},
          {"omega_infinity", to_json(r.omega)},
          {"theta1", to_json(r.theta1)},
          {"c", r.c},
          {"c_lower", r.c_lower},
          {"c_upper", r.c_upper}};
}

nlohmann::json to_json(const MonteCarloResult& r) {
  return {{"volume", r.volume}, {"standard_error", r.standard_error}, {"samples", r.samples}};
}

nlohmann::json to_json(const CuspStatistics& s) {
  auto buckets = nlohmann::json::array();
  for (auto [k, n] : s.buckets) buckets.push_back({{"log2_lower", k}, {"count", n}});
  return {{"height_bound", s.height_bound}, {"total", s.total}, {"buckets", buckets}};
}

void write_points_csv(std::ostream& out, const std::vector<PointRecord>& points) {
  out << kPointsHeader << '\n';
  for (const auto& r : points) {
    out << r.point.y1() << ',' << r.point.y2() << ',' << r.point.y3() << ',' << r.height;
    for (i64 v : r.torsor.to_array()) out << ',' << v;
    out << '\n';
  }
}

std::vector<PointRecord> read_points_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kPointsHeader) throw std::runtime_error("points CSV: bad header");
  std::vector<PointRecord> out;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::istringstream s(line);
    std::array<i64, 14> v{};
    std::string field;
    std::size_t n = 0;
    while (std::getline(s, field, ',')) {
      if (n == v.size()) throw std::runtime_error("points CSV: too many fields in row " + std::to_string(row));
      try {
        std::size_t used = 0;
        v[n] = std::stoll(field, &used);
        if (used != field.size()) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        throw std::runtime_error("points CSV: bad field '" + field + "' in row " + std::to_string(row));
      }
      ++n;
    }
    if (n != v.size()) throw std::runtime_error("points CSV: short row " + std::to_string(row));
    std::array<i64, 10> t{};
    std::copy(v.begin() + 4, v.end(), t.begin());
    out.push_back({ProjectivePoint(v[0], v[1], v[2]), v[3], TorsorPoint::from_array(t)});
  }
  return out;
}

}  // namespace dp5
