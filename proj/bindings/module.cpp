#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sl2avg/action.hpp"
#include "sl2avg/averages.hpp"
#include "sl2avg/group.hpp"
#include "sl2avg/io.hpp"
#include "sl2avg/quadrature.hpp"
#include "sl2avg/representation.hpp"
#include "sl2avg/spectral.hpp"
#include "sl2avg/spherical.hpp"

namespace py = pybind11;
using namespace sl2avg;

PYBIND11_MODULE(_core, m) {
    m.doc() = "radial-flow averages on the modular quotient of SL(2,R)";

    // group layer
    py::class_<GroupElement>(m, "GroupElement")
        .def(py::init<>())
        .def(py::init([](double a, double b, double c, double d) {
                 return GroupElement{a, b, c, d};
             }),
             py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"))
        .def_readonly("a", &GroupElement::a)
        .def_readonly("b", &GroupElement::b)
        .def_readonly("c", &GroupElement::c)
        .def_readonly("d", &GroupElement::d)
        .def("det", &GroupElement::det)
        .def("inverse", &GroupElement::inverse)
        .def("__repr__", [](const GroupElement& g) {
            return "GroupElement(" + format_real(g.a) + ", " + format_real(g.b) + ", " +
                   format_real(g.c) + ", " + format_real(g.d) + ")";
        });
    py::class_<CartanKAK>(m, "CartanKAK")
        .def_readonly("theta1", &CartanKAK::theta1)
        .def_readonly("t", &CartanKAK::t)
        .def_readonly("theta2", &CartanKAK::theta2);
    py::class_<IwasawaNAK>(m, "IwasawaNAK")
        .def_readonly("x", &IwasawaNAK::x)
        .def_readonly("u", &IwasawaNAK::u)
        .def_readonly("theta", &IwasawaNAK::theta);
    m.def("identity", &identity);
    m.def("geodesic", &geodesic, py::arg("t"));
    m.def("rotation", &rotation, py::arg("theta"));
    m.def("upper_unipotent", &upper_unipotent, py::arg("x"));
    m.def("compose", &compose, py::arg("g"), py::arg("h"));
    m.def("cartan", &cartan, py::arg("g"));
    m.def("iwasawa", &iwasawa, py::arg("g"));
    m.def("from_cartan", &from_cartan, py::arg("kak"));
    m.def("from_iwasawa", &from_iwasawa, py::arg("nak"));
    m.def("entry_distance", &entry_distance, py::arg("g"), py::arg("h"));

    // representation parameters
    py::enum_<RepKind>(m, "RepKind")
        .value("principal_even", RepKind::principal_even)
        .value("principal_odd", RepKind::principal_odd)
        .value("complementary", RepKind::complementary)
        .value("discrete_or_limit", RepKind::discrete_or_limit)
        .value("trivial", RepKind::trivial);
    py::enum_<KParity>(m, "KParity")
        .value("even", KParity::even)
        .value("odd", KParity::odd)
        .value("none", KParity::none);
    py::class_<RepParam>(m, "RepParam")
        .def_static("principal_even", &RepParam::principal_even, py::arg("lam"))
        .def_static("principal_odd", &RepParam::principal_odd, py::arg("lam"))
        .def_static("complementary", &RepParam::complementary, py::arg("s"))
        .def_static("discrete_or_limit", &RepParam::discrete_or_limit, py::arg("k"),
                    py::arg("sign"))
        .def_static("trivial", &RepParam::trivial)
        .def("kind", &RepParam::kind)
        .def("alpha", &RepParam::alpha)
        .def("eps_tau", &RepParam::eps_tau)
        .def("parity", &RepParam::parity)
        .def("coefficients_vanish", &RepParam::coefficients_vanish)
        .def("label", &RepParam::label)
        .def("__repr__", &RepParam::label);

    // quadrature control
    py::class_<QuadratureSpec>(m, "QuadratureSpec")
        .def(py::init<>())
        .def_readwrite("rel_tol", &QuadratureSpec::rel_tol)
        .def_readwrite("max_nodes", &QuadratureSpec::max_nodes)
        .def_readwrite("grading", &QuadratureSpec::grading);

    // matrix coefficients
    py::class_<SphericalValue> sv(m, "SphericalValue");
    py::enum_<SphericalValue::Status>(sv, "Status")
        .value("converged", SphericalValue::Status::converged)
        .value("node_budget_exhausted", SphericalValue::Status::node_budget_exhausted)
        .value("exact_zero", SphericalValue::Status::exact_zero);
    sv.def_readonly("value", &SphericalValue::value)
        .def_readonly("err_estimate", &SphericalValue::err_estimate)
        .def_readonly("nodes_used", &SphericalValue::nodes_used)
        .def_readonly("status", &SphericalValue::status);
    m.def("phi", &phi, py::arg("m"), py::arg("n"), py::arg("rep"), py::arg("t"),
          py::arg("spec") = QuadratureSpec{});
    m.def("phi_derivative", &phi_derivative, py::arg("m"), py::arg("n"), py::arg("rep"),
          py::arg("t"), py::arg("spec") = QuadratureSpec{});
    m.def("xi", &xi, py::arg("t"), py::arg("spec") = QuadratureSpec{});
    m.def("xi_agm", &xi_agm, py::arg("t"));
    m.def("decay_bound", &decay_bound, py::arg("rep"), py::arg("t"), py::arg("B"));
    m.def("symmetry_check", &symmetry_check, py::arg("m"), py::arg("n"), py::arg("rep"),
          py::arg("t"), py::arg("spec") = QuadratureSpec{});
    m.def("zonal_bound", &zonal_bound, py::arg("rep"), py::arg("t"),
          py::arg("spec") = QuadratureSpec{});
    m.def("unit_normalization_ratio", &unit_normalization_ratio, py::arg("m"), py::arg("n"),
          py::arg("rep"));

    // model-space operators
    py::class_<CircleModelVector>(m, "CircleModelVector")
        .def(py::init<KParity, int>(), py::arg("parity"), py::arg("truncation"))
        .def("set", &CircleModelVector::set, py::arg("k"), py::arg("amplitude"))
        .def("get", &CircleModelVector::get, py::arg("k"))
        .def("coeffs", &CircleModelVector::coeffs)
        .def("parity", &CircleModelVector::parity)
        .def("truncation", &CircleModelVector::truncation)
        .def("norm", &CircleModelVector::norm)
        .def("is_zero", &CircleModelVector::is_zero, py::arg("tol") = 0.0);
    py::class_<DirectImage>(m, "DirectImage")
        .def_readonly("image", &DirectImage::image)
        .def_readonly("tail_ratio", &DirectImage::tail_ratio);
    py::class_<TailBound>(m, "TailBound")
        .def_readonly("exact", &TailBound::exact)
        .def_readonly("paper_bound", &TailBound::paper_bound);
    m.def("apply_sigma_model", &apply_sigma_model, py::arg("rep"), py::arg("t"), py::arg("n"),
          py::arg("m"), py::arg("v"), py::arg("spec") = QuadratureSpec{});
    m.def("apply_at_direct", &apply_at_direct, py::arg("rep"), py::arg("t"), py::arg("v"),
          py::arg("nodes"));
    m.def("derivative_multiplier_check", &derivative_multiplier_check, py::arg("rep"),
          py::arg("t"), py::arg("n"), py::arg("m"), py::arg("v"), py::arg("h") = 1e-4,
          py::arg("spec") = QuadratureSpec{});
    m.def(
        "in_sigma_eps",
        [](const RepParam& rep, double eps, double B) {
            return in_sigma_eps(rep, SpectralSetParams{eps, B});
        },
        py::arg("rep"), py::arg("eps"), py::arg("B"));
    m.def("tail_bound", &tail_bound, py::arg("N"), py::arg("eps"), py::arg("delta"),
          py::arg("f_norm"));

    // quotient action and sampling
    py::class_<IntMatrix>(m, "IntMatrix")
        .def_readonly("a", &IntMatrix::a)
        .def_readonly("b", &IntMatrix::b)
        .def_readonly("c", &IntMatrix::c)
        .def_readonly("d", &IntMatrix::d)
        .def("to_group", &IntMatrix::to_group);
    py::class_<ActionPoint>(m, "ActionPoint")
        .def_readonly("rep", &ActionPoint::rep)
        .def_readonly("re_z", &ActionPoint::re_z)
        .def_readonly("im_z", &ActionPoint::im_z)
        .def_readonly("theta", &ActionPoint::theta)
        .def("fiber_rotated", &ActionPoint::fiber_rotated, py::arg("phi"))
        .def("__repr__", [](const ActionPoint& p) {
            return "ActionPoint(z=" + format_real(p.re_z) + "+" + format_real(p.im_z) +
                   "j, theta=" + format_real(p.theta) + ")";
        });
    py::class_<ReduceResult>(m, "ReduceResult")
        .def_readonly("gamma", &ReduceResult::gamma)
        .def_readonly("point", &ReduceResult::point);
    py::class_<SampleSet>(m, "SampleSet")
        .def_readonly("points", &SampleSet::points)
        .def_readonly("seed", &SampleSet::seed);
    py::class_<IntegrateResult>(m, "IntegrateResult")
        .def_readonly("mean", &IntegrateResult::mean)
        .def_readonly("std_err", &IntegrateResult::std_err)
        .def_readonly("used", &IntegrateResult::used)
        .def_readonly("excluded", &IntegrateResult::excluded);
    py::class_<Observable>(m, "Observable")
        .def_readonly("k_support", &Observable::k_support)
        .def_readonly("p_sup", &Observable::p_sup)
        .def_readonly("known_mean", &Observable::known_mean)
        .def_readonly("description", &Observable::description)
        .def("__call__", [](const Observable& f, const ActionPoint& p) { return f.eval(p); });
    py::class_<KFiniteDecomposition>(m, "KFiniteDecomposition")
        .def_readonly("components", &KFiniteDecomposition::components)
        .def_readonly("max_residual", &KFiniteDecomposition::max_residual)
        .def_readonly("ok", &KFiniteDecomposition::ok);
    m.def("reduce", &reduce, py::arg("g"));
    m.def("act", &act, py::arg("g"), py::arg("x"));
    m.def("sample", &sample, py::arg("seed"), py::arg("count"));
    m.def("integrate", &integrate, py::arg("f"), py::arg("s"));
    m.def("chi_project", &chi_project, py::arg("n"), py::arg("f"), py::arg("k_nodes"));
    m.def("kfinite_decompose", &kfinite_decompose, py::arg("f"), py::arg("n_max"),
          py::arg("check"), py::arg("k_nodes"));
    m.def("make_constant", &make_constant, py::arg("value") = std::complex<double>{1.0, 0.0});
    m.def("make_bump", &make_bump);
    m.def("make_im_power", &make_im_power, py::arg("a"));
    m.def("make_k_twist", &make_k_twist, py::arg("n"));
    m.def("make_abs", &make_abs, py::arg("f"));
    m.def("observable_library", [] {
        py::dict d;
        for (const auto& [name, f] : observable_library()) d[py::str(name)] = f;
        return d;
    });
    m.def("measure_integral", &measure_integral, py::arg("h"), py::arg("nodes_phi") = 96,
          py::arg("nodes_u") = 256);
    m.def("ks_statistic", &ks_statistic, py::arg("xs"), py::arg("ys"));

    // averaging operators
    py::class_<BumpFunction>(m, "BumpFunction")
        .def_static("cubic_default", &BumpFunction::cubic_default)
        .def_static("box", &BumpFunction::box, py::arg("lo"), py::arg("hi"))
        .def("value", &BumpFunction::value, py::arg("u"))
        .def("lo", &BumpFunction::lo)
        .def("hi", &BumpFunction::hi)
        .def("reversed", &BumpFunction::reversed)
        .def("describe", &BumpFunction::describe);
    py::class_<TimeGrid>(m, "TimeGrid")
        .def(py::init<std::vector<double>, std::string>(), py::arg("values"),
             py::arg("description") = std::string("grid"))
        .def_static("uniform", &TimeGrid::uniform, py::arg("lo"), py::arg("hi"), py::arg("step"),
                    py::arg("description") = std::string(""))
        .def_readonly("values", &TimeGrid::values)
        .def_readonly("description", &TimeGrid::description);
    py::class_<ConvergenceReport>(m, "ConvergenceReport")
        .def_readonly("t", &ConvergenceReport::t)
        .def_readonly("values", &ConvergenceReport::values)
        .def_readonly("limit", &ConvergenceReport::limit)
        .def_readonly("max_dev", &ConvergenceReport::max_dev)
        .def_readonly("rms_dev", &ConvergenceReport::rms_dev);
    m.def("sigma_apply", &sigma_apply, py::arg("t"), py::arg("f"), py::arg("x"),
          py::arg("k_nodes") = 256);
    m.def("sigma_nm_apply", &sigma_nm_apply, py::arg("t"), py::arg("n"), py::arg("m"),
          py::arg("f"), py::arg("x"), py::arg("k_nodes") = 256);
    m.def("gamma_eta_apply", &gamma_eta_apply, py::arg("t"), py::arg("n"), py::arg("m"),
          py::arg("f"), py::arg("x"), py::arg("eta"), py::arg("s_nodes") = 64,
          py::arg("k_nodes") = 256);
    m.def("semi_radial_apply", &semi_radial_apply, py::arg("t"), py::arg("f"), py::arg("x"),
          py::arg("eta"), py::arg("s_nodes") = 64, py::arg("k_nodes") = 256);
    m.def("maximal_function", &maximal_function, py::arg("f"), py::arg("x"), py::arg("grid"),
          py::arg("eta"), py::arg("s_nodes") = 64, py::arg("k_nodes") = 256, py::arg("n") = 0,
          py::arg("m") = 0);
    m.def("convergence_study", &convergence_study, py::arg("f"), py::arg("s"), py::arg("grid"),
          py::arg("eta"), py::arg("s_nodes") = 64, py::arg("k_nodes") = 256,
          py::arg("k_nodes_per_t") = std::vector<int>{});
}
