#pragma once

// JSON and CSV forms of the result types. Timing never enters the result
// objects; callers keep it under a separate "timing" key.

#include <iosfwd>
#include <vector>

#include "dp5/constants.hpp"
#include "dp5/counting.hpp"
#include "json.hpp"

namespace dp5 {

inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const CountReport& r);
nlohmann::json to_json(const OmegaResult& r);
nlohmann::json to_json(const Theta1Result& r);
nlohmann::json to_json(const ConstantsReport& r);
nlohmann::json to_json(const MonteCarloResult& r);
nlohmann::json to_json(const CuspStatistics& s);

/// y1,y2,y3,height,a1,a2,a3,a4,a12,a13,a14,a23,a24,a34
void write_points_csv(std::ostream& out, const std::vector<PointRecord>& points);

/// Parses a stream written by write_points_csv; throws std::runtime_error on malformed rows.
std::vector<PointRecord> read_points_csv(std::istream& in);

}  // namespace dp5
