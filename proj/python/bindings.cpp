#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "dp5/cli.hpp"
#include "dp5/constants.hpp"
#include "dp5/counting.hpp"
#include "dp5/densities.hpp"
#include "dp5/geometry.hpp"
#include "dp5/report.hpp"
#include "dp5/torsor.hpp"
#include "dp5/verify.hpp"

namespace py = pybind11;
using namespace dp5;

namespace {

py::object to_py(i128 v) {
  return py::reinterpret_steal<py::object>(PyLong_FromString(to_string(v).c_str(), nullptr, 10));
}

py::object to_py(const mpq_class& q) { return py::module_::import("fractions").attr("Fraction")(q.get_str()); }

py::tuple to_py(const ProjectivePoint& p) { return py::make_tuple(p.y1(), p.y2(), p.y3()); }

CountOptions count_options(const std::string& strategy, int workers) {
  CountOptions o;
  o.strategy = parse_strategy(strategy);
  o.workers = workers;
  return o;
}

std::string dumps(const nlohmann::json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of dp5: heights, torsor parameterization, counting and constants";

  py::register_exception<std::domain_error>(m, "DomainError", PyExc_ValueError);

  m.def(
      "normalize", [](i64 y1, i64 y2, i64 y3) { return to_py(ProjectivePoint::normalized(y1, y2, y3)); },
      py::arg("y1"), py::arg("y2"), py::arg("y3"));
  m.def(
      "in_U", [](i64 y1, i64 y2, i64 y3) { return is_in_U(ProjectivePoint::normalized(y1, y2, y3)); },
      py::arg("y1"), py::arg("y2"), py::arg("y3"));
  m.def(
      "height", [](i64 y1, i64 y2, i64 y3) { return to_py(height(ProjectivePoint::normalized(y1, y2, y3))); },
      py::arg("y1"), py::arg("y2"), py::arg("y3"));
  m.def(
      "parameterize",
      [](i64 y1, i64 y2, i64 y3) { return parameterize(ProjectivePoint::normalized(y1, y2, y3)).to_array(); },
      py::arg("y1"), py::arg("y2"), py::arg("y3"));
  m.def(
      "project", [](const std::array<i64, 10>& t) { return to_py(project(TorsorPoint::from_array(t))); },
      py::arg("torsor"));
  m.def(
      "torsor_height", [](const std::array<i64, 10>& t) { return to_py(torsor_height(TorsorPoint::from_array(t))); },
      py::arg("torsor"));
  m.def(
      "is_valid", [](const std::array<i64, 10>& t) { return is_valid(TorsorPoint::from_array(t)); },
      py::arg("torsor"));
  m.def(
      "weyl_involution",
      [](int l, const std::array<i64, 10>& t) {
        return canonical_representative(weyl_involution(l, TorsorPoint::from_array(t))).to_array();
      },
      py::arg("l"), py::arg("torsor"));

  m.def(
      "count",
      [](i64 B, const std::string& method, const std::string& strategy, int workers) {
        const auto opts = count_options(strategy, workers);
        py::gil_scoped_release release;
        return count(B, parse_method(method), opts).count;
      },
      py::arg("B"), py::arg("method") = "torsor", py::arg("strategy") = "full", py::arg("workers") = 0);
  m.def(
      "enumerate_points",
      [](i64 B, const std::string& method, int workers) {
        std::vector<PointRecord> points;
        {
          py::gil_scoped_release release;
          points = enumerate_points(B, parse_method(method), count_options("full", workers));
        }
        py::list out;
        for (const auto& p : points) out.append(py::make_tuple(to_py(p.point), p.height, p.torsor.to_array()));
        return out;
      },
      py::arg("B"), py::arg("method") = "torsor", py::arg("workers") = 0);
  m.def(
      "cumulative_counts",
      [](i64 B, const std::string& method, int workers) {
        py::gil_scoped_release release;
        return cumulative(height_histogram(B, parse_method(method), count_options("full", workers)));
      },
      py::arg("B"), py::arg("method") = "torsor", py::arg("workers") = 0);

  m.def(
      "theta_truncated", [](const Quad& a, i64 T) { return to_py(theta_truncated(a, T)); }, py::arg("a"),
      py::arg("T"));
  m.def(
      "theta_euler",
      [](const Quad& a, i64 P) {
        const auto e = theta_euler(a, P);
        return py::make_tuple(e.partial, e.lower, e.upper);
      },
      py::arg("a"), py::arg("P"));
  m.def(
      "moebius_identity",
      [](const Quad& a, i64 B) {
        const auto r = moebius_identity_check(a, B, B);
        return py::make_tuple(r.lhs, r.rhs);
      },
      py::arg("a"), py::arg("B"));

  m.def("alpha", [] { return to_py(alpha()); });
  m.def("polytope_volume", [] { return to_py(polytope_volume()); });
  m.def("theta1_partial", [](i64 P) { return to_py(theta1_partial(P)); }, py::arg("P"));
  m.def(
      "theta1", [](i64 P) { return dumps(to_json(theta1(P))); }, py::arg("P"));
  m.def(
      "omega_infinity",
      [](double W, double tolerance, unsigned depth) {
        OmegaControls c;
        c.cutoff = W;
        c.tolerance = tolerance;
        c.max_depth = depth;
        py::gil_scoped_release release;
        return dumps(to_json(omega_infinity(c)));
      },
      py::arg("W") = 32.0, py::arg("tolerance") = 1e-8, py::arg("depth") = 4u);
  m.def("predicted_count", &predicted_count, py::arg("c"), py::arg("B"));

  m.def(
      "verify",
      [](const std::string& suite, int workers) {
        VerifyControls c;
        c.workers = workers;
        const Suite s = parse_suite(suite);
        std::vector<CheckResult> checks;
        {
          py::gil_scoped_release release;
          checks = run_suite(s, c);
        }
        return dumps(suite_json(s, checks));
      },
      py::arg("suite") = "all", py::arg("workers") = 0);

  m.def(
      "run",
      [](const std::string& subcommand, const std::vector<i64>& heights, const std::string& method,
         const std::string& strategy, const std::string& suite, i64 prime_limit, double cutoff, double tolerance,
         unsigned depth, std::uint64_t samples, int workers, std::optional<double> constant,
         const std::string& format) {
        RunConfig c;
        c.subcommand = subcommand;
        c.heights = heights;
        c.method = parse_method(method);
        c.strategy = parse_strategy(strategy);
        c.suite = parse_suite(suite);
        c.prime_limit = prime_limit;
        c.omega.cutoff = cutoff;
        c.omega.tolerance = tolerance;
        c.omega.max_depth = depth;
        c.samples = samples;
        c.workers = workers;
        c.constant = constant;
        c.format = parse_format(format);
        validate(c);
        std::ostringstream out;
        int status;
        {
          py::gil_scoped_release release;
          status = run(c, out);
        }
        return py::make_tuple(status, out.str());
      },
      py::arg("subcommand"), py::arg("heights") = std::vector<i64>{100}, py::arg("method") = "torsor",
      py::arg("strategy") = "full", py::arg("suite") = "all", py::arg("prime_limit") = 1'000'000,
      py::arg("cutoff") = 32.0, py::arg("tolerance") = 1e-8, py::arg("depth") = 4u, py::arg("samples") = 0,
      py::arg("workers") = 0, py::arg("constant") = py::none(), py::arg("format") = "json");
}
