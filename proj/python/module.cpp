#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "qtt/errors.hpp"
#include "qtt/periodic.hpp"
#include "qtt/potential.hpp"
#include "qtt/spm.hpp"
#include "qtt/transfer.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

qtt::CantorVariant variant_from_string(const std::string& name) {
  if (name == "standard") return qtt::CantorVariant::kStandard;
  if (name == "svc") return qtt::CantorVariant::kSmithVolterra;
  throw std::invalid_argument("cantor variant must be 'standard' or 'svc'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Transmission coefficients and stationary-phase tunneling times for "
      "one-dimensional piecewise-constant potentials and their periodic "
      "repetitions (units 2m = hbar = c = 1, so E = k^2).";

  py::register_exception<qtt::DegenerateMatrixError>(
      m, "DegenerateMatrixError", PyExc_ArithmeticError);
  py::register_exception<qtt::OutOfRegimeError>(m, "OutOfRegimeError",
                                                PyExc_ValueError);
  py::register_exception<qtt::ResonanceProximityError>(
      m, "ResonanceProximityError", PyExc_ArithmeticError);

  py::class_<qtt::Segment>(m, "Segment")
      .def(py::init<double, double>(), "width"_a, "height"_a)
      .def_readonly("width", &qtt::Segment::width)
      .def_readonly("height", &qtt::Segment::height)
      .def("__repr__", [](const qtt::Segment& s) {
        return "Segment(width=" + std::to_string(s.width) +
               ", height=" + std::to_string(s.height) + ")";
      });

  py::class_<qtt::PiecewiseConstantPotential>(m, "PiecewiseConstantPotential")
      .def(py::init<std::vector<qtt::Segment>>(), "segments"_a)
      .def_property_readonly("segments",
                             &qtt::PiecewiseConstantPotential::segments)
      .def_property_readonly("total_width",
                             &qtt::PiecewiseConstantPotential::total_width)
      .def_property_readonly("barrier_width",
                             &qtt::PiecewiseConstantPotential::barrier_width)
      .def_property_readonly("max_height",
                             &qtt::PiecewiseConstantPotential::max_height)
      .def("__eq__", [](const qtt::PiecewiseConstantPotential& a,
                        const qtt::PiecewiseConstantPotential& b) {
        return a == b;
      })
      .def("__repr__", [](const qtt::PiecewiseConstantPotential& p) {
        return "PiecewiseConstantPotential(" +
               std::to_string(p.segments().size()) + " segments, b=" +
               std::to_string(p.total_width()) + ")";
      });

  m.def("make_rectangular", &qtt::make_rectangular, "height"_a, "width"_a,
        "Single constant barrier (or well) covering [0, width].");
  m.def(
      "make_segments",
      [](const std::vector<std::pair<double, double>>& pairs) {
        std::vector<qtt::Segment> segments;
        segments.reserve(pairs.size());
        for (const auto& [w, h] : pairs) segments.push_back({w, h});
        return qtt::make_segments(std::move(segments));
      },
      "segments"_a, "Potential from (width, height) pairs, in order.");
  m.def(
      "make_cantor",
      [](const std::string& variant, int level, double height,
         double total_width, double ratio) {
        return qtt::make_cantor(variant_from_string(variant), level, height,
                                total_width, ratio);
      },
      "variant"_a, "level"_a, "height"_a, "total_width"_a,
      "ratio"_a = 1.0 / 3.0,
      "Cantor ('standard', middle `ratio`) or Smith-Volterra-Cantor ('svc', "
      "middle 1/4^j at step j) barrier arrangement.");

  py::class_<qtt::ScaledMatrix2>(m, "ScaledMatrix2")
      .def_readonly("m11", &qtt::ScaledMatrix2::m11)
      .def_readonly("m12", &qtt::ScaledMatrix2::m12)
      .def_readonly("m21", &qtt::ScaledMatrix2::m21)
      .def_readonly("m22", &qtt::ScaledMatrix2::m22)
      .def_readonly("scale", &qtt::ScaledMatrix2::scale)
      .def("det_stored", &qtt::ScaledMatrix2::det_stored);

  py::class_<qtt::TransmissionCoefficient>(m, "TransmissionCoefficient")
      .def_readonly("log_magnitude",
                    &qtt::TransmissionCoefficient::log_magnitude)
      .def_readonly("phase", &qtt::TransmissionCoefficient::phase)
      .def_readonly("energy", &qtt::TransmissionCoefficient::energy)
      .def_property_readonly("v", &qtt::TransmissionCoefficient::v)
      .def_property_readonly("sqrt_v", &qtt::TransmissionCoefficient::sqrt_v)
      .def_property_readonly("amplitude",
                             &qtt::TransmissionCoefficient::amplitude);

  m.def("segment_matrix", &qtt::segment_matrix, "energy"_a, "height"_a,
        "width"_a, "x0"_a = 0.0);
  m.def("cell_matrix", &qtt::cell_matrix, "energy"_a, "potential"_a,
        "x0"_a = 0.0);
  m.def("transmission", &qtt::transmission, "matrix"_a, "energy"_a);
  m.def(
      "transmission_at",
      [](const qtt::PiecewiseConstantPotential& p, double energy) {
        return qtt::transmission(qtt::cell_matrix(energy, p), energy);
      },
      "potential"_a, "energy"_a,
      "Transmission coefficient of a potential at one energy.");
  m.def("reflection", &qtt::reflection, "matrix"_a);
  m.def(
      "reflection_at",
      [](const qtt::PiecewiseConstantPotential& p, double energy) {
        return qtt::reflection(qtt::cell_matrix(energy, p));
      },
      "potential"_a, "energy"_a);
  m.def("wrap_phase", &qtt::wrap_phase, "angle"_a);
  m.def("unwrap_phase", &qtt::unwrap_phase, "wrapped"_a);

  py::class_<qtt::PeriodicSpec>(m, "PeriodicSpec")
      .def(py::init<int, double, double>(), "repetitions"_a, "gap"_a,
           "cell_width"_a)
      .def_readonly("repetitions", &qtt::PeriodicSpec::repetitions)
      .def_readonly("gap", &qtt::PeriodicSpec::gap)
      .def_readonly("period", &qtt::PeriodicSpec::period)
      .def_property_readonly("cell_width", &qtt::PeriodicSpec::cell_width);

  py::class_<qtt::ChebyshevRatios>(m, "ChebyshevRatios")
      .def_readonly("sigma", &qtt::ChebyshevRatios::sigma)
      .def_readonly("rho", &qtt::ChebyshevRatios::rho)
      .def_readonly("near_singular", &qtt::ChebyshevRatios::near_singular);

  m.def("chebyshev_ratios", &qtt::chebyshev_ratios, "x"_a, "n"_a);
  m.def("bloch_parameter", &qtt::bloch_parameter, "cell"_a, "k"_a,
        "period"_a);

  py::class_<qtt::PeriodicTransmission>(m, "PeriodicTransmission")
      .def_readonly("chi", &qtt::PeriodicTransmission::chi)
      .def_readonly("phase", &qtt::PeriodicTransmission::phase)
      .def_readonly("total_phase", &qtt::PeriodicTransmission::total_phase)
      .def_readonly("log_magnitude",
                    &qtt::PeriodicTransmission::log_magnitude)
      .def_readonly("energy", &qtt::PeriodicTransmission::energy)
      .def_readonly("near_singular",
                    &qtt::PeriodicTransmission::near_singular);

  m.def("t_periodic", &qtt::t_periodic, "cell"_a, "spec"_a, "k"_a);
  m.def("direct_array", &qtt::direct_array, "cell"_a, "spec"_a);

  py::enum_<qtt::TimeMethod>(m, "TimeMethod")
      .value("NUMERIC_SPM", qtt::TimeMethod::kNumericSpm)
      .value("RECT_ANALYTIC", qtt::TimeMethod::kRectAnalytic)
      .value("PERIODIC_SPM", qtt::TimeMethod::kPeriodicSpm);

  py::class_<qtt::TunnelingTimeResult>(m, "TunnelingTimeResult")
      .def_readonly("tau", &qtt::TunnelingTimeResult::tau)
      .def_readonly("phase_derivative",
                    &qtt::TunnelingTimeResult::phase_derivative)
      .def_readonly("geometric_term",
                    &qtt::TunnelingTimeResult::geometric_term)
      .def_readonly("method", &qtt::TunnelingTimeResult::method)
      .def_readonly("energy", &qtt::TunnelingTimeResult::energy);

  m.def("phase_derivative", &qtt::phase_derivative, "phase_fn"_a, "energy"_a,
        "step"_a = std::nullopt);
  m.def("tunneling_time_single", &qtt::tunneling_time_single, "potential"_a,
        "energy"_a, "step"_a = std::nullopt);
  m.def("tunneling_time_rect_analytic", &qtt::tunneling_time_rect_analytic,
        "height"_a, "width"_a, "energy"_a);
  m.def("hartman_limit_rect", &qtt::hartman_limit_rect, "height"_a,
        "energy"_a);
  m.def("tunneling_time_periodic", &qtt::tunneling_time_periodic, "cell"_a,
        "spec"_a, "energy"_a, "step"_a = std::nullopt);

  py::class_<qtt::SaturationScan>(m, "SaturationScan")
      .def_readonly("tau", &qtt::SaturationScan::tau)
      .def_readonly("tau_limit_estimate",
                    &qtt::SaturationScan::tau_limit_estimate)
      .def_readonly("converged", &qtt::SaturationScan::converged);

  m.def("saturation_scan", &qtt::saturation_scan, "cell_family"_a, "energy"_a,
        "thickness_grid"_a, "tolerance"_a = 1e-6, "step"_a = std::nullopt);

#ifdef QTT_VERSION
  m.attr("__version__") = QTT_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
