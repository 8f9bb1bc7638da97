#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "scenred/exact.hpp"
#include "scenred/heuristics.hpp"
#include "scenred/io.hpp"
#include "scenred/limits.hpp"
#include "scenred/milp.hpp"
#include "scenred/quantize.hpp"
#include "scenred/transport.hpp"

namespace py = pybind11;
using namespace scenred;

namespace {

Metric make_metric(double l, const std::string& norm) { return Metric(l, parse_norm(norm)); }

std::vector<std::vector<double>> plan_rows(const TransportPlan& plan) {
  std::vector<std::vector<double>> rows(plan.rows, std::vector<double>(plan.cols));
  for (std::size_t i = 0; i < plan.rows; ++i) {
    for (std::size_t j = 0; j < plan.cols; ++j) rows[i][j] = plan(i, j);
  }
  return rows;
}

py::dict gap_report_dict(const GapReport& r) {
  py::list entries;
  for (const auto& e : r.entries) {
    py::dict d;
    d["algorithm"] = e.algorithm;
    d["value"] = e.value;
    d["image_value"] = e.image_value;
    d["gap"] = e.gap;
    d["seconds"] = e.seconds;
    entries.append(d);
  }
  py::dict out;
  out["reference"] = r.reference;
  out["reference_value"] = r.reference_value;
  out["m"] = r.m;
  out["n_pre"] = r.n_pre;
  out["m_clamped"] = r.m_clamped;
  out["entries"] = entries;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Wasserstein scenario reduction";

  auto base = py::register_exception<Error>(m, "ScenredError", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());

  py::class_<Distribution>(m, "Distribution")
      .def(py::init<std::vector<Point>, std::vector<double>>(), py::arg("points"),
           py::arg("weights"))
      .def_static("uniform", &Distribution::uniform, py::arg("points"))
      .def_property_readonly("points", &Distribution::points)
      .def_property_readonly("weights", &Distribution::weights)
      .def_property_readonly("dim", &Distribution::dim)
      .def("__len__", &Distribution::size)
      .def("validate",
           [](const Distribution& d, bool uniform, bool distinct) {
             return validate(d, uniform, distinct);
           },
           py::arg("require_uniform") = false, py::arg("require_distinct") = false)
      .def("__repr__", [](const Distribution& d) {
        return "<Distribution n=" + std::to_string(d.size()) + " dim=" + std::to_string(d.dim()) +
               ">";
      });

  py::class_<ReductionResult>(m, "ReductionResult")
      .def_readonly("support", &ReductionResult::support)
      .def_readonly("weights", &ReductionResult::weights)
      .def_readonly("value", &ReductionResult::value)
      .def_readonly("algorithm", &ReductionResult::algorithm)
      .def_readonly("iterations", &ReductionResult::iterations)
      .def_readonly("evaluations", &ReductionResult::evaluations)
      .def_readonly("selected", &ReductionResult::selected)
      .def_property_readonly("cells", [](const ReductionResult& r) { return r.partition.cells(); })
      .def("distribution", &ReductionResult::distribution)
      .def("__repr__", [](const ReductionResult& r) {
        return "<ReductionResult " + r.algorithm + " m=" + std::to_string(r.support.size()) +
               " value=" + format_number(r.value) + ">";
      });

  py::class_<BoundReport>(m, "BoundReport")
      .def_readonly("n", &BoundReport::n)
      .def_readonly("m", &BoundReport::m)
      .def_readonly("l", &BoundReport::l)
      .def_readonly("reduction_factor", &BoundReport::reduction_factor)
      .def_readonly("c_upper", &BoundReport::c_upper)
      .def_readonly("c1_lower", &BoundReport::c1_lower)
      .def_readonly("kappa_upper", &BoundReport::kappa_upper)
      .def_readonly("kappa_lower", &BoundReport::kappa_lower);

  m.def("powered_distance",
        [](const Point& a, const Point& b, double l, const std::string& norm) {
          if (a.size() != b.size()) throw InvalidArgument("dimension mismatch");
          return powered_distance(a, b, make_metric(l, norm));
        },
        py::arg("a"), py::arg("b"), py::arg("l") = 1.0, py::arg("norm") = "2");

  m.def("wasserstein",
        [](const Distribution& p, const Distribution& q, double l, const std::string& norm) {
          const auto r = wasserstein(p, q, make_metric(l, norm));
          return py::make_tuple(r.value, plan_rows(r.plan));
        },
        py::arg("p"), py::arg("q"), py::arg("l") = 1.0, py::arg("norm") = "2",
        "Returns (value, plan) with plan as a list of rows.");

  m.def("dist_to_support",
        [](const Distribution& p, const std::vector<Point>& support, double l,
           const std::string& norm) {
          const auto r = dist_to_support(p, support, make_metric(l, norm));
          return py::make_tuple(r.value, r.reduced);
        },
        py::arg("p"), py::arg("support"), py::arg("l") = 1.0, py::arg("norm") = "2");

  m.def("dupacova_greedy",
        [](const Distribution& p, std::size_t k, double l, const std::string& norm) {
          return dupacova_greedy(p, k, make_metric(l, norm));
        },
        py::arg("p"), py::arg("m"), py::arg("l") = 1.0, py::arg("norm") = "2");

  m.def("k_means",
        [](const Distribution& p, std::size_t k, double l, const std::string& norm,
           std::optional<std::vector<Point>> init, std::uint64_t seed) {
          const KMeansInit start = init ? KMeansInit{*init} : KMeansInit{seed};
          return k_means_generalized(p, k, make_metric(l, norm), start);
        },
        py::arg("p"), py::arg("m"), py::arg("l") = 2.0, py::arg("norm") = "2",
        py::arg("init") = py::none(), py::arg("seed") = 0);

  m.def("local_search",
        [](const Distribution& p, std::size_t k, double l, const std::string& norm,
           std::optional<std::vector<std::size_t>> init, double epsilon,
           const std::string& strategy) {
          LocalSearchOptions opt;
          opt.epsilon = epsilon;
          if (strategy == "first") {
            opt.strategy = SwapStrategy::FirstFit;
          } else if (strategy != "best") {
            throw InvalidArgument("strategy must be 'best' or 'first'");
          }
          LocalSearchInit start;
          if (init) start = *init;
          return local_search(p, k, make_metric(l, norm), start, opt);
        },
        py::arg("p"), py::arg("m"), py::arg("l") = 1.0, py::arg("norm") = "2",
        py::arg("init") = py::none(), py::arg("epsilon") = 0.0, py::arg("strategy") = "best");

  m.def("discrete_exact",
        [](const Distribution& p, std::size_t k, double l, const std::string& norm,
           double budget) { return discrete_exact(p, k, make_metric(l, norm), {budget}); },
        py::arg("p"), py::arg("m"), py::arg("l") = 1.0, py::arg("norm") = "2",
        py::arg("budget") = 1e7);

  m.def("continuous_exact",
        [](const Distribution& p, std::size_t k, double l, const std::string& norm,
           double budget) {
          ContinuousExactOptions opt;
          opt.budget = budget;
          return continuous_exact(p, k, make_metric(l, norm), opt);
        },
        py::arg("p"), py::arg("m"), py::arg("l") = 1.0, py::arg("norm") = "2",
        py::arg("budget") = 1e7);

  m.def("continuous_polish",
        [](const ReductionResult& r, const Distribution& p, double l, const std::string& norm) {
          return continuous_polish(r, p, make_metric(l, norm));
        },
        py::arg("result"), py::arg("p"), py::arg("l") = 2.0, py::arg("norm") = "2");

  m.def("export_milp",
        [](const Distribution& p, std::size_t k, const std::string& formulation, double l,
           const std::string& norm) {
          const Metric metric = make_metric(l, norm);
          if (formulation == "discrete") return to_lp_format(milp_discrete(p, k, metric));
          if (formulation == "continuous") return to_lp_format(milp_continuous(p, k, metric));
          throw InvalidArgument("formulation must be 'discrete' or 'continuous'");
        },
        py::arg("p"), py::arg("m"), py::arg("formulation") = "discrete", py::arg("l") = 1.0,
        py::arg("norm") = "2");

  m.def("limit_bounds", &limit_bounds, py::arg("n"), py::arg("m"), py::arg("l") = 2.0);
  m.def("a_priori_m", &a_priori_m, py::arg("p"), py::arg("target"), py::arg("l") = 2.0);
  m.def("gen_worst_case", &gen_worst_case, py::arg("n"), py::arg("d"));
  m.def("gen_kappa_tight", &gen_kappa_tight, py::arg("l"), py::arg("n"), py::arg("m"),
        py::arg("d") = py::none(), py::arg("big_m") = py::none());
  m.def("gen_adversarial",
        [](const std::string& family, std::size_t z, double eps, std::size_t d) {
          return gen_adversarial(parse_family(family), z, eps, d);
        },
        py::arg("family"), py::arg("z"), py::arg("eps") = 1e-3, py::arg("d") = 2);

  m.def("normal_experiment",
        [](std::size_t n, const std::vector<std::size_t>& ms, const std::vector<std::size_t>& ds,
           double c, std::size_t trials, std::uint64_t seed, std::size_t restarts) {
          NormalExperimentOptions opt;
          opt.restarts = restarts;
          return normal_experiment(n, ms, ds, c, trials, seed, opt).to_csv();
        },
        py::arg("n"), py::arg("m"), py::arg("d"), py::arg("c") = 2.97, py::arg("trials") = 100,
        py::arg("seed") = 0, py::arg("restarts") = 10, "Returns the table as CSV text.");

  m.def("quantize",
        [](const std::string& image, std::size_t colors, const std::string& algo,
           std::size_t pre, const std::string& out) {
          QuantizeOptions opt;
          opt.n_pre = pre;
          const auto r = quantize_image(read_ppm(image), colors, parse_palette_algorithm(algo), opt);
          if (!out.empty()) write_ppm(out, r.remapped);
          std::vector<std::vector<int>> palette;
          for (const auto& c : r.palette) palette.push_back({c[0], c[1], c[2]});
          return py::make_tuple(palette, gap_report_dict(r.report));
        },
        py::arg("image"), py::arg("colors"), py::arg("algo") = "loc1", py::arg("pre") = 64,
        py::arg("out") = "", "Returns (palette, report) for a binary PPM file.");

  m.def("read_distribution", &read_distribution, py::arg("path"));
  m.def("write_distribution", &write_distribution, py::arg("path"), py::arg("dist"));
}
