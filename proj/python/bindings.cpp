#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "finsleroid/angle.hpp"
#include "finsleroid/check.hpp"
#include "finsleroid/cospace.hpp"
#include "finsleroid/geodesic.hpp"
#include "finsleroid/plane.hpp"
#include "finsleroid/quasieuclid.hpp"
#include "finsleroid/shape.hpp"
#include "finsleroid/tensors.hpp"
#include "finsleroid/twovector.hpp"

namespace py = pybind11;
using namespace finsleroid;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finsleroid geometry kernels";

  auto err = py::register_exception<Error>(m, "FinsleroidError", PyExc_ValueError);
  (void)err;

  py::class_<Param>(m, "Param")
      .def(py::init(&make_param), py::arg("g"))
      .def_readonly("g", &Param::g)
      .def_readonly("h", &Param::h)
      .def_readonly("G", &Param::G)
      .def_readonly("g_plus", &Param::g_plus)
      .def_readonly("g_minus", &Param::g_minus)
      .def("__repr__", [](const Param& p) { return "Param(g=" + std::to_string(p.g) + ")"; });

  py::class_<Space>(m, "Space")
      .def(py::init<int>(), py::arg("N"))
      .def(py::init<const Mat&>(), py::arg("r"))
      .def_property_readonly("N", &Space::N)
      .def_property_readonly("r", &Space::r)
      .def_property_readonly("det_r", &Space::det_r);

  py::class_<ScalarForms>(m, "ScalarForms")
      .def_readonly("q", &ScalarForms::q)
      .def_readonly("Z", &ScalarForms::Z)
      .def_readonly("B", &ScalarForms::B)
      .def_readonly("A", &ScalarForms::A)
      .def_readonly("L", &ScalarForms::L)
      .def_readonly("Phi", &ScalarForms::Phi)
      .def_readonly("J", &ScalarForms::J)
      .def_readonly("K", &ScalarForms::K);

  m.def("scalar_forms", &scalar_forms, py::arg("p"), py::arg("sp"), py::arg("R"));
  m.def("fmf", &fmf, py::arg("p"), py::arg("sp"), py::arg("R"));
  m.def("metric", &metric, py::arg("p"), py::arg("sp"), py::arg("R"));
  m.def("metric_inverse", &metric_inverse, py::arg("p"), py::arg("sp"), py::arg("R"));
  m.def("metric_det", &metric_det, py::arg("p"), py::arg("sp"), py::arg("R"));
  m.def("indicatrix_curvature",
        [](const Param& p, const Space& sp, const Vec& R) { return curvature_S(p, sp, R).indicatrix_curvature(); });

  m.def("fhf", &fhf, py::arg("p"), py::arg("sp"), py::arg("Rhat"));
  m.def("to_costate", &to_costate, py::arg("p"), py::arg("sp"), py::arg("R"));
  m.def("from_costate", &from_costate, py::arg("p"), py::arg("sp"), py::arg("Rhat"));

  m.def("sigma", &sigma, py::arg("p"), py::arg("sp"), py::arg("R"));
  m.def("mu", &mu, py::arg("p"), py::arg("sp"), py::arg("t"));
  m.def("n_metric", [](const Param& p, const Space& sp, const Vec& t) { return n_metric(p, sp, t).lower; });

  m.def("geodesic_boundary", [](const Param& p, const Space& sp, const Vec& t1, const Vec& t2) {
    const auto bd = connect(p, sp, t1, t2);
    py::dict d;
    d["a"] = bd.a;
    d["b"] = bd.b;
    d["delta_s"] = bd.delta_s;
    d["alpha"] = bd.alpha;
    d["radial"] = bd.radial;
    return d;
  });
  m.def("finsleroid_geodesic", &finsleroid_geodesic, py::arg("p"), py::arg("sp"), py::arg("R1"), py::arg("R2"),
        py::arg("s"));

  m.def("fins_angle", [](const Param& p, const Space& sp, const Vec& R1, const Vec& R2) {
    const auto a = fins_angle(p, sp, R1, R2);
    return py::make_tuple(a.alpha, a.scalar_product, a.ominus_sq);
  });
  m.def("qe_angle", &qe_angle, py::arg("p"), py::arg("sp"), py::arg("t1"), py::arg("t2"));

  m.def("n2", [](const Param& p, const Space& sp, const Vec& t1, const Vec& t2) { return n2(p, sp, t1, t2).n; });
  m.def("G2", &G2, py::arg("p"), py::arg("sp"), py::arg("R"), py::arg("S"));

  m.def("indicatrix_length", &indicatrix_length, py::arg("p"));
  m.def("gen_trig", [](const Param& p, double f) {
    const auto t = gen_trig(p, f);
    return py::make_tuple(t.Cos, t.Sin, t.Cos_star);
  });
  m.def("indicatrix_profile", [](const Param& p, int n) {
    std::vector<std::tuple<double, double, double>> out;
    for (const auto& pt : indicatrix_profile(p, n)) out.emplace_back(pt.f, pt.q, pt.Z);
    return out;
  });
  m.def("shape_report", [](const Param& p) {
    const auto s = shape_report(p);
    py::dict d;
    d["q_star"] = s.q_star;
    d["altitude"] = s.altitude;
    d["width"] = s.width;
    d["Z1"] = s.Z1;
    d["Z2"] = s.Z2;
    d["q_2star"] = s.q_2star;
    d["Z_2star"] = s.Z_2star;
    return d;
  });

  m.def(
      "run_checks",
      [](std::uint64_t seed, int samples) {
        CheckConfig cfg;
        cfg.seed = seed;
        cfg.samples = samples;
        const auto rep = run_checks(cfg);
        py::dict d;
        for (const auto& r : rep.results) d[py::str(r.name)] = py::make_tuple(r.residual, r.tol, r.passed);
        return d;
      },
      py::arg("seed") = default_check_seed, py::arg("samples") = 40);
}
