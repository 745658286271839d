// pybind11 surface over the spectral core: transforms, multiplier
// operators, norms, the stepper and the frequency-splitting diagnostics.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "aqg/diagnostics.hpp"
#include "aqg/dynamics.hpp"
#include "aqg/fft.hpp"
#include "aqg/inequality.hpp"
#include "aqg/norms.hpp"
#include "aqg/operators.hpp"
#include "aqg/rng.hpp"

namespace py = pybind11;
using namespace aqg;

namespace {

using ComplexArray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;
using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

SpectralField to_field(const GridSpec& g, const ComplexArray& a) {
    if (a.ndim() != 2 || a.shape(0) != g.n1 || a.shape(1) != g.n2)
        throw std::invalid_argument("coefficient array must have shape (n1, n2)");
    SpectralField f(g);
    std::copy(a.data(), a.data() + g.size(), f.coeffs().begin());
    return f;
}

ComplexArray from_field(const SpectralField& f) {
    const GridSpec& g = f.grid();
    ComplexArray a({g.n1, g.n2});
    std::copy(f.coeffs().begin(), f.coeffs().end(), a.mutable_data());
    return a;
}

RealField to_real(const GridSpec& g, const RealArray& a) {
    if (a.ndim() != 2 || a.shape(0) != g.n1 || a.shape(1) != g.n2)
        throw std::invalid_argument("field array must have shape (n1, n2)");
    RealField f(g);
    std::copy(a.data(), a.data() + g.size(), f.values.begin());
    return f;
}

RealArray from_real(const RealField& f) {
    const GridSpec& g = f.grid;
    RealArray a({g.n1, g.n2});
    std::copy(f.values.begin(), f.values.end(), a.mutable_data());
    return a;
}

}  // namespace

PYBIND11_MODULE(_aqglab, m) {
    m.doc() = "spectral toolkit for the anisotropic quasi-geostrophic equation";

    py::class_<GridSpec>(m, "Grid")
        .def(py::init<int, int, double, double>(), py::arg("n1"), py::arg("n2"),
             py::arg("l1") = 6.283185307179586, py::arg("l2") = 6.283185307179586)
        .def_readonly("n1", &GridSpec::n1)
        .def_readonly("n2", &GridSpec::n2)
        .def_readonly("l1", &GridSpec::l1)
        .def_readonly("l2", &GridSpec::l2)
        .def("__repr__", [](const GridSpec& g) {
            return "Grid(" + std::to_string(g.n1) + ", " + std::to_string(g.n2) + ")";
        });

    py::class_<DissipationParams>(m, "DissipationParams")
        .def(py::init<double, double, double, double>(), py::arg("alpha"), py::arg("beta"),
             py::arg("mu") = 1.0, py::arg("nu") = 1.0)
        .def_readonly("alpha", &DissipationParams::alpha)
        .def_readonly("beta", &DissipationParams::beta)
        .def_readonly("mu", &DissipationParams::mu)
        .def_readonly("nu", &DissipationParams::nu);

    m.def("forward", [](const GridSpec& g, const RealArray& a) {
        return from_field(forward_transform(to_real(g, a)));
    }, py::arg("grid"), py::arg("values"), "collocation values to Fourier amplitudes");

    m.def("inverse", [](const GridSpec& g, const ComplexArray& a) {
        return from_real(inverse_transform(to_field(g, a)));
    }, py::arg("grid"), py::arg("coeffs"), "Fourier amplitudes to collocation values");

    m.def("fractional_partial", [](const GridSpec& g, const ComplexArray& a, int axis, double sigma) {
        return from_field(fractional_partial(to_field(g, a), axis, sigma));
    }, py::arg("grid"), py::arg("coeffs"), py::arg("axis"), py::arg("sigma"));

    m.def("fractional_laplacian", [](const GridSpec& g, const ComplexArray& a, double sigma) {
        return from_field(fractional_laplacian(to_field(g, a), sigma));
    }, py::arg("grid"), py::arg("coeffs"), py::arg("sigma"));

    m.def("riesz_velocity", [](const GridSpec& g, const ComplexArray& a) {
        VelocityField u = riesz_velocity(to_field(g, a));
        return py::make_tuple(from_field(u.u1), from_field(u.u2));
    }, py::arg("grid"), py::arg("coeffs"));

    m.def("friedrichs_project", [](const GridSpec& g, const ComplexArray& a, double radius) {
        return from_field(friedrichs_project(to_field(g, a), radius));
    }, py::arg("grid"), py::arg("coeffs"), py::arg("radius"));

    m.def("two_thirds_mask", [](const GridSpec& g, const ComplexArray& a) {
        return from_field(two_thirds_mask(to_field(g, a)));
    }, py::arg("grid"), py::arg("coeffs"));

    m.def("sobolev_norm", [](const GridSpec& g, const ComplexArray& a, double s, bool homogeneous) {
        return sobolev_norm(to_field(g, a), SobolevIndex{s, homogeneous});
    }, py::arg("grid"), py::arg("coeffs"), py::arg("s"), py::arg("homogeneous") = false);

    m.def("dissipation_symbol", [](double xi1, double xi2, const DissipationParams& p) {
        return dissipation_symbol(xi1, xi2, p);
    }, py::arg("xi1"), py::arg("xi2"), py::arg("params"));

    m.def("critical_exponent", [](double alpha, double beta) {
        return critical_exponent(DissipationParams(alpha, beta));
    }, py::arg("alpha"), py::arg("beta"));

    m.def("classify_region", [](double alpha, double beta) {
        return to_string(classify_region(alpha, beta));
    }, py::arg("alpha"), py::arg("beta"));

    m.def("nonlinear_term", [](const GridSpec& g, const ComplexArray& a, bool dealias) {
        return from_field(nonlinear_term(to_field(g, a), dealias ? Dealias::TwoThirds : Dealias::None));
    }, py::arg("grid"), py::arg("coeffs"), py::arg("dealias") = true);

    m.def("frequency_split", [](const GridSpec& g, const ComplexArray& a,
                                const DissipationParams& p, double delta) {
        FrequencySplit sp = frequency_split(to_field(g, a), p, delta);
        return py::make_tuple(from_field(sp.low), from_field(sp.high));
    }, py::arg("grid"), py::arg("coeffs"), py::arg("params"), py::arg("delta"));

    m.def("split_initial_data", [](const GridSpec& g, const ComplexArray& a, double eps, double s) {
        SplitInitialData sp = split_initial_data(to_field(g, a), eps, s);
        return py::make_tuple(sp.radius, from_field(sp.low), from_field(sp.high));
    }, py::arg("grid"), py::arg("coeffs"), py::arg("eps"), py::arg("s"));

    m.def("random_field", [](const GridSpec& g, std::uint64_t seed, double kmin, double kmax,
                             double amplitude) {
        return from_field(random_bandlimited_field(g, seed, kmin, kmax, amplitude));
    }, py::arg("grid"), py::arg("seed"), py::arg("kmin"), py::arg("kmax"),
       py::arg("amplitude") = 1.0);

    py::class_<Stepper>(m, "Stepper")
        .def(py::init([](const GridSpec& g, const DissipationParams& p, double dt, bool dealias,
                         bool masked, std::optional<double> galerkin_radius) {
                 StepperConfig cfg;
                 cfg.dt = dt;
                 cfg.dealias = dealias ? Dealias::TwoThirds : Dealias::None;
                 cfg.nonlinearity = masked ? Nonlinearity::Masked : Nonlinearity::Full;
                 const GalerkinLevel level = galerkin_radius
                                                 ? GalerkinLevel::truncated(*galerkin_radius)
                                                 : GalerkinLevel::full();
                 return Stepper(g, p, cfg, level);
             }),
             py::arg("grid"), py::arg("params"), py::arg("dt"), py::arg("dealias") = true,
             py::arg("masked_nonlinearity") = false, py::arg("galerkin_radius") = std::nullopt)
        .def("step", [](const Stepper& st, const GridSpec& g, const ComplexArray& a) {
            TrajectoryState s{0.0, to_field(g, a)};
            return from_field(st.step(s).theta);
        }, py::arg("grid"), py::arg("coeffs"), "advance the coefficients by one step");

    m.def("symbol_bound_ratio", [](double xi1, double xi2, const DissipationParams& p) {
        return symbol_bound_ratio(xi1, xi2, p);
    }, py::arg("xi1"), py::arg("xi2"), py::arg("params"));
}
