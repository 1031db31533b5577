#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mcf/dimacs.hpp"
#include "mcf/generate.hpp"
#include "mcf/oracle.hpp"
#include "mcf/planar/rdivision.hpp"
#include "mcf/solver.hpp"

namespace py = pybind11;

namespace {

mcf::SolveOptions make_options(const std::string& algo, int r, bool heavy,
                               const mcf::Instance* inst) {
    mcf::SolveOptions opt;
    if (algo == "general") opt.algo = mcf::Algo::general;
    else if (algo == "dial") opt.algo = mcf::Algo::dial;
    else if (algo == "planar") opt.algo = mcf::Algo::planar;
    else throw py::value_error("algo must be general|dial|planar");
    opt.planar_r = r;
    opt.heavy_checks = heavy;
    if (inst && opt.algo == mcf::Algo::planar && !inst->rotation.empty())
        opt.rotation = &inst->rotation;
    return opt;
}

py::dict solution_dict(const mcf::Solution& sol) {
    py::dict d;
    d["feasible"] = sol.feasible;
    d["cost"] = sol.cost;
    d["certified"] = sol.certified;
    std::vector<int> flow(sol.flow.begin(), sol.flow.end());
    d["flow"] = flow;
    d["prices"] = sol.prices;
    d["shift"] = sol.shift;
    d["eps"] = sol.final_eps;
    d["scales"] = sol.scales.size();
    return d;
}

}  // namespace

PYBIND11_MODULE(_unitmcf, m) {
    m.doc() = "unit-capacity min-cost circulation / flow solver";

    py::class_<mcf::MultiGraph>(m, "MultiGraph")
        .def(py::init<int>(), py::arg("n"))
        .def("add_edge", &mcf::MultiGraph::add_edge, py::arg("tail"), py::arg("head"),
             py::arg("cost"))
        .def_property_readonly("n", &mcf::MultiGraph::num_vertices)
        .def_property_readonly("m", &mcf::MultiGraph::num_original);

    py::class_<mcf::Instance>(m, "Instance")
        .def_readonly("graph", &mcf::Instance::graph)
        .def_readonly("rotation", &mcf::Instance::rotation);

    m.def("parse_instance", [](const std::string& text) { return mcf::parse_instance(text); });
    m.def("serialize_instance",
          [](const mcf::Instance& inst) { return mcf::serialize_instance(inst); });

    m.def(
        "generate",
        [](const std::string& kind, int rows, int cols, int n, std::int64_t m_edges,
           std::int64_t cmin, std::int64_t cmax, int mult, std::uint64_t seed) {
            mcf::InstanceSpec spec;
            if (kind == "grid") spec.kind = mcf::GenKind::grid;
            else if (kind == "tri") spec.kind = mcf::GenKind::triangulation;
            else if (kind == "random") spec.kind = mcf::GenKind::random_multigraph;
            else throw py::value_error("kind must be grid|tri|random");
            spec.rows = rows;
            spec.cols = cols;
            spec.n = n;
            spec.m = m_edges;
            spec.cost_min = cmin;
            spec.cost_max = cmax;
            spec.multiplicity = mult;
            spec.seed = seed;
            return mcf::generate(spec);
        },
        py::arg("kind"), py::arg("rows") = 0, py::arg("cols") = 0, py::arg("n") = 0,
        py::arg("m") = 0, py::arg("cmin") = -10, py::arg("cmax") = 10, py::arg("mult") = 1,
        py::arg("seed") = 0);

    m.def(
        "min_cost_circulation",
        [](const mcf::MultiGraph& g, const std::string& algo, int r, bool heavy) {
            return solution_dict(mcf::min_cost_circulation(g, make_options(algo, r, heavy, nullptr)));
        },
        py::arg("graph"), py::arg("algo") = "dial", py::arg("r") = 0,
        py::arg("heavy_checks") = false);

    m.def(
        "solve_instance",
        [](const mcf::Instance& inst, const std::string& algo, int r, bool heavy) {
            return solution_dict(
                mcf::min_cost_circulation(inst.graph, make_options(algo, r, heavy, &inst)));
        },
        py::arg("instance"), py::arg("algo") = "dial", py::arg("r") = 0,
        py::arg("heavy_checks") = false);

    m.def(
        "min_cost_st_flow",
        [](const mcf::MultiGraph& g, int s, int t, std::int64_t value, const std::string& algo,
           int r) {
            return solution_dict(
                mcf::min_cost_st_flow(g, s, t, value, make_options(algo, r, false, nullptr)));
        },
        py::arg("graph"), py::arg("source"), py::arg("sink"), py::arg("value"),
        py::arg("algo") = "dial", py::arg("r") = 0);

    m.def("exhaustive_circulation_cost", &mcf::exhaustive_circulation_cost);
    m.def("cycle_canceling_circulation_cost", &mcf::cycle_canceling_circulation_cost);

    m.def("certify", [](const mcf::MultiGraph& g, const py::dict& sol_dict,
                        const std::string& kind) {
        mcf::Solution sol;
        sol.is_circulation = kind == "circulation";
        sol.cost = sol_dict["cost"].cast<std::int64_t>();
        for (int x : sol_dict["flow"].cast<std::vector<int>>())
            sol.flow.push_back(static_cast<std::int8_t>(x));
        sol.prices = sol_dict["prices"].cast<mcf::Prices>();
        sol.shift = sol_dict["shift"].cast<int>();
        sol.final_eps = sol_dict["eps"].cast<mcf::Price>();
        std::string why;
        bool ok = mcf::certify(sol, g, &why);
        return py::make_tuple(ok, why);
    });

    py::register_exception<mcf::parse_error>(m, "ParseError");
    py::register_exception<mcf::invariant_error>(m, "InvariantError");
}
