#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <optional>
#include <vector>

#include "mcmo/airfoil.hpp"
#include "mcmo/airfoil_geometry.hpp"
#include "mcmo/dense_network.hpp"
#include "mcmo/engine.hpp"
#include "mcmo/kursawe.hpp"
#include "mcmo/pareto.hpp"
#include "mcmo/problem.hpp"
#include "mcmo/run_config.hpp"
#include "mcmo/runner.hpp"
#include "mcmo/scalarization.hpp"

namespace py = pybind11;
using namespace mcmo;

namespace {

std::vector<AxisScale> parse_scales(const std::vector<std::string>& names) {
    std::vector<AxisScale> scales;
    scales.reserve(names.size());
    for (const auto& n : names) {
        if (n == "linear") {
            scales.push_back(AxisScale::Linear);
        } else if (n == "log10") {
            scales.push_back(AxisScale::Log10);
        } else {
            throw std::invalid_argument("scale must be 'linear' or 'log10', got '" + n + "'");
        }
    }
    return scales;
}

std::vector<std::array<double, 2>> to_points(const std::vector<std::pair<double, double>>& xs) {
    std::vector<std::array<double, 2>> pts;
    pts.reserve(xs.size());
    for (const auto& [a, b] : xs) pts.push_back({a, b});
    return pts;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Multi-condition multi-objective optimization engine (C++ core)";

    py::class_<BoxSpace>(m, "BoxSpace")
        .def(py::init([](std::vector<double> lower, std::vector<double> upper,
                         std::vector<std::string> scale) {
                 if (scale.empty()) scale.assign(lower.size(), "linear");
                 return BoxSpace(std::move(lower), std::move(upper), parse_scales(scale));
             }),
             py::arg("lower"), py::arg("upper"), py::arg("scale") = std::vector<std::string>{})
        .def_property_readonly("dim", &BoxSpace::dim)
        .def("normalize",
             [](const BoxSpace& s, std::vector<double> raw) { return s.normalize(raw); })
        .def("denormalize",
             [](const BoxSpace& s, std::vector<double> n) { return s.denormalize(n); })
        .def("contains",
             [](const BoxSpace& s, std::vector<double> raw) { return s.contains(raw); });

    m.def("dominates",
          [](std::vector<double> a, std::vector<double> b) { return dominates(a, b); },
          py::arg("a"), py::arg("b"),
          "Strict Pareto dominance (minimization): a is no worse everywhere and "
          "strictly better somewhere.");

    m.def("chebyshev",
          [](std::vector<double> f, std::vector<double> w, std::vector<double> f_star) {
              return chebyshev(f, WeightVector(std::move(w)), f_star);
          },
          py::arg("f"), py::arg("w"), py::arg("f_star"));
    m.def("reward",
          [](std::vector<double> f, std::vector<double> w, std::vector<double> f_star) {
              return reward(f, WeightVector(std::move(w)), f_star);
          },
          py::arg("f"), py::arg("w"), py::arg("f_star"));
    m.def("sample_weight",
          [](int m_objectives, std::uint64_t seed) {
              Rng rng(seed);
              const auto w = sample_weight(m_objectives, rng);
              return std::vector<double>(w.values().begin(), w.values().end());
          },
          py::arg("m"), py::arg("seed"));

    m.def("hypervolume_2d",
          [](std::vector<std::pair<double, double>> points, std::pair<double, double> ref) {
              return hypervolume_2d(to_points(points), {ref.first, ref.second});
          },
          py::arg("points"), py::arg("reference"));
    m.def("pareto_filter",
          [](std::vector<std::pair<double, double>> points) {
              ParetoFront2D front;
              for (int i = 0; i < static_cast<int>(points.size()); ++i) {
                  front.insert(points[i].first, points[i].second, i, i);
              }
              std::vector<int> indices;
              for (const auto& e : front.entries()) indices.push_back(e.record_index);
              return indices;
          },
          py::arg("points"),
          "Indices of the non-dominated points, sorted by the first objective.");

    m.def("kursawe_g",
          [](std::vector<double> x) {
              const auto g = kursawe_g(x);
              return std::make_pair(g[0], g[1]);
          },
          py::arg("x"));
    m.def("kursawe",
          [](std::vector<double> x, double theta) {
              const auto f = kursawe_modified(x, theta);
              return std::make_pair(f[0], f[1]);
          },
          py::arg("x"), py::arg("theta"));
    m.def("kursawe_oracle_front",
          [](double theta, long budget, std::uint64_t seed) {
              const auto front = real_front_oracle(theta, budget, seed);
              std::vector<std::pair<double, double>> out;
              out.reserve(front.size());
              for (const auto& p : front) out.emplace_back(p[0], p[1]);
              return out;
          },
          py::arg("theta"), py::arg("budget") = 100000, py::arg("seed") = 1);

    m.def("kt_airfoil",
          [](double mu_x, double mu_y, double beta, int n_points) {
              const auto geo = kt_transform(mu_x, mu_y, beta, n_points);
              std::vector<std::pair<double, double>> pts;
              pts.reserve(geo.points.size());
              for (const auto& p : geo.points) pts.emplace_back(p[0], p[1]);
              return pts;
          },
          py::arg("mu_x"), py::arg("mu_y"), py::arg("beta"), py::arg("n_points") = 200);
    m.def("trailing_edge_angle",
          [](std::vector<std::pair<double, double>> points) {
              AirfoilGeometry geo;
              for (const auto& [x, y] : points) geo.points.push_back({x, y});
              return trailing_edge_angle(geo);
          },
          py::arg("points"));
    m.def("mock_aero",
          [](double mu_x, double mu_y, double beta, double alpha, double reynolds) {
              const auto c = mock_aero(mu_x, mu_y, beta, alpha, reynolds);
              return std::make_pair(c.cl, c.cd);
          },
          py::arg("mu_x"), py::arg("mu_y"), py::arg("beta"), py::arg("alpha"),
          py::arg("reynolds"), "Deterministic surrogate (C_L, C_D).");
    m.def("airfoil_objectives",
          [](double cl, double cd) {
              const auto f = airfoil_objectives({cl, cd});
              return std::make_pair(f[0], f[1]);
          },
          py::arg("cl"), py::arg("cd"));

    py::class_<DenseNetwork>(m, "DenseNetwork")
        .def_static("load", &DenseNetwork::load, py::arg("path"))
        .def("save", &DenseNetwork::save, py::arg("path"))
        .def("forward",
             [](const DenseNetwork& net, std::vector<double> input) {
                 return net.forward(input);
             },
             py::arg("input"))
        .def_property_readonly("widths", &DenseNetwork::widths)
        .def_property_readonly("param_count", &DenseNetwork::param_count);

    m.def("run_optimize",
          [](const std::string& config_json, const std::string& out_dir, bool progress) {
              const auto summary =
                  run_optimize(RunConfig::from_json_text(config_json), out_dir, progress);
              py::dict d;
              d["episodes"] = summary.episodes;
              d["evaluations"] = summary.evaluations;
              d["failed_evaluations"] = summary.failed_evaluations;
              d["final_hv_avg"] = summary.final_hv_avg;
              d["stopped_early"] = summary.stopped_early;
              d["run_dir"] = summary.run_dir;
              return d;
          },
          py::arg("config_json"), py::arg("out_dir"), py::arg("progress") = false,
          "Train from a JSON config string; writes records, HV history, "
          "checkpoints, and the manifest into out_dir.");
    m.def("run_analyze",
          [](const std::string& run_dir, int cells,
             std::optional<std::pair<double, double>> reference, std::string out_dir) {
              std::optional<std::array<double, 2>> ref;
              if (reference) ref = std::array<double, 2>{reference->first, reference->second};
              const auto summary = run_analyze(run_dir, cells, ref, out_dir);
              py::dict d;
              d["cells"] = summary.cells;
              d["hv_avg"] = summary.hv_avg;
              d["records"] = summary.records;
              d["front_members"] = summary.front_members;
              d["fronts_path"] = summary.fronts_path;
              d["hv_report_path"] = summary.hv_report_path;
              return d;
          },
          py::arg("run_dir"), py::arg("cells") = 100, py::arg("reference") = py::none(),
          py::arg("out_dir") = std::string());
}
