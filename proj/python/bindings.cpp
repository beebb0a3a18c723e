#include "cellab/acceptance.hpp"
#include "cellab/cel.hpp"
#include "cellab/config.hpp"
#include "cellab/dimdrop.hpp"
#include "cellab/errors.hpp"
#include "cellab/witness.hpp"

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace cellab;

namespace {

// Results cross the boundary as JSON text; the package decodes them.
std::string dump(const nlohmann::json& j) { return j.dump(); }

SampledMatrixField field_from_array(const py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>& a,
                                    const Tolerances& tol) {
  if (a.ndim() != 3 || a.shape(1) != a.shape(2))
    throw ArgumentError("expected an array of shape (grid, n, n)");
  const auto grid = static_cast<std::size_t>(a.shape(0));
  const auto n = static_cast<Eigen::Index>(a.shape(1));
  auto view = a.unchecked<3>();
  std::vector<ComplexMatrix> samples(grid, ComplexMatrix(n, n));
  for (std::size_t g = 0; g < grid; ++g)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        samples[g](i, j) = view(static_cast<py::ssize_t>(g), i, j);
  return SampledMatrixField(std::move(samples), Flavor::unitary, tol);
}

// Python ints of any size, or decimal strings.
BigInt big(const py::object& v) { return parse_integer(py::str(v).cast<std::string>()); }

Tolerances tolerances_from(const std::string& json_text) {
  if (json_text.empty()) return {};
  nlohmann::json j = nlohmann::json::object();
  j["tolerances"] = nlohmann::json::parse(json_text);
  return config_from_json(j).tol;
}

}  // namespace

PYBIND11_MODULE(_cellab, m) {
  m.doc() = "exponential length bounds and Jiang-Su tower experiments";

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  py::register_exception<ArgumentError>(m, "ArgumentError", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", error.ptr());
  py::register_exception<CollisionError>(m, "CollisionError", error.ptr());
  py::register_exception<CuError>(m, "CuError", error.ptr());
  py::register_exception<InvariantError>(m, "InvariantError", error.ptr());
  py::register_exception<FlavorError>(m, "FlavorError", error.ptr());
  py::register_exception<RangeError>(m, "RangeError", error.ptr());
  py::register_exception<BranchCutError>(m, "BranchCutError", error.ptr());

  m.def("scalar_cel", [](const std::vector<double>& alpha) { return scalar_cel(alpha); }, py::arg("alpha"),
        "min_k max_t |alpha(t) - 2k pi| for sampled angles in radians");
  m.def(
      "scalar_cel_exact",
      [](const std::string& fn_json) {
        const ExactScalarCel v = scalar_cel_exact(piecewise_linear_from_json(nlohmann::json::parse(fn_json)));
        return py::make_tuple(v.value.str(), to_string(v.shift));
      },
      py::arg("fn_json"), "exact value for a piecewise-linear angle in units of pi; returns (value, shift)");

  m.def(
      "cel_lower_distinct",
      [](const py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>& u,
         const std::string& tol) {
        const Tolerances t = tolerances_from(tol);
        return dump(to_json(cel_lower_distinct(field_from_array(u, t), t)));
      },
      py::arg("u"), py::arg("tolerances") = "");
  m.def(
      "cu_upper_bound",
      [](const py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>& u, std::size_t s_steps,
         const std::string& tol) {
        const Tolerances t = tolerances_from(tol);
        const CuPath p = cu_upper_bound_path(field_from_array(u, t), t, s_steps);
        nlohmann::json j{{"length", p.length},
                         {"measured_length", p.measured_length},
                         {"endpoint_error", p.endpoint_error},
                         {"epsilon_report", p.epsilon_report},
                         {"max_branch_norm", p.max_branch_norm}};
        for (const auto& s : p.shifts) j["shifts"].push_back(to_string(s));
        return dump(j);
      },
      py::arg("u"), py::arg("s_steps") = 16, py::arg("tolerances") = "");
  m.def(
      "geodesic_upper_bound",
      [](const py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>& u,
         const std::string& tol) {
        const Tolerances t = tolerances_from(tol);
        return geodesic_upper_bound(field_from_array(u, t), t);
      },
      py::arg("u"), py::arg("tolerances") = "");

  m.def(
      "pan_wang_report",
      [](long long k, std::size_t grid_size, bool with_path) {
        PanWangOptions options;
        options.grid_size = grid_size;
        options.with_path = with_path;
        return dump(to_json(pan_wang_report(k, options)));
      },
      py::arg("k"), py::arg("grid_size") = 2049, py::arg("with_path") = true);
  m.def(
      "chi_report",
      [](long long L, const std::string& c, const std::string& d, const py::object& pad) {
        const SymbolicElement x({{PiecewiseLinearFn::identity(), 1}});
        return dump(to_json(chi_report(L, x, parse_rational(c), parse_rational(d), big(pad))));
      },
      py::arg("L"), py::arg("c") = "3/10", py::arg("d") = "7/10", py::arg("pad") = "0");
  m.def(
      "jiangsu_report",
      [](int m_stage, int n_stage, long long block_k) {
        if (m_stage < 1 || n_stage <= m_stage) throw ArgumentError("need 1 <= m < n");
        return dump(to_json(jiangsu_witness(build_tower(n_stage), m_stage, n_stage, block_k)));
      },
      py::arg("m"), py::arg("n"), py::arg("block_k") = 1);
  m.def("minimal_chi_L", [](const std::string& floor) { return minimal_chi_L(parse_pi_multiple(floor).coeff); },
        py::arg("floor"));
  m.def(
      "jiangsu_floor",
      [](const py::object& q, unsigned r) { return PiMultiple{jiangsu_floor(big(q), r)}.str(); }, py::arg("q"),
      py::arg("r"));

  m.def(
      "build_tower",
      [](int count) {
        if (count < 1) throw ArgumentError("count must be at least 1");
        return dump(tower_to_json(build_tower(count)));
      },
      py::arg("count"));
  m.def(
      "one_step_patterns",
      [](int stage) {
        if (stage < 1) throw ArgumentError("stage must be at least 1");
        const auto stages = build_tower(stage + 1);
        return dump(to_json(one_step_patterns(stages[static_cast<std::size_t>(stage - 1)])));
      },
      py::arg("stage"));
  m.def(
      "dichotomy_count", [](const py::object& p, const py::object& q) { return to_string(dichotomy_count(big(p), big(q))); },
      py::arg("p"), py::arg("q"));
  m.def("is_prime", [](const py::object& n) { return is_prime(big(n)); }, py::arg("n"));

  m.def("acceptance_suites", &acceptance_suites);
  m.def(
      "run_acceptance",
      [](const std::string& suite, const std::string& config_json) {
        RunConfig config;
        if (!config_json.empty()) config = config_from_json(nlohmann::json::parse(config_json));
        std::vector<CriterionResult> results;
        {
          py::gil_scoped_release release;
          results = run_acceptance(suite, config);
        }
        return dump(to_json(results));
      },
      py::arg("suite") = "all", py::arg("config") = "");
}
