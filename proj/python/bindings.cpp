#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "steerkit/runner.hpp"

namespace py = pybind11;
using namespace steerkit;
using runner::json;

namespace {

using Command = json (*)(const runner::RunConfig &);

// config and result travel as JSON text; the Python layer converts to and from dicts
std::string call(Command cmd, const std::string &config) {
  json parsed;
  try {
    parsed = json::parse(config);
  } catch (const json::parse_error &e) {
    throw runner::ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
  auto cfg = runner::parse_config(parsed);
  py::gil_scoped_release release;
  return cmd(cfg).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "steerkit native core";
  m.attr("SCHEMA_VERSION") = runner::kSchemaVersion;

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> config_error;
  config_error.call_once_and_store_result(
      [&]() { return py::exception<runner::ConfigError>(m, "ConfigError", PyExc_ValueError); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const runner::ConfigError &e) {
      const py::object &type = config_error.get_stored();
      py::object inst = type(e.what());
      inst.attr("path") = e.path();
      PyErr_SetObject(type.ptr(), inst.ptr());
    }
  });

  m.def("build", [](const std::string &c) { return call(runner::cmd_build, c); });
  m.def("spectrum", [](const std::string &c) { return call(runner::cmd_spectrum, c); });
  m.def("steer", [](const std::string &c) { return call(runner::cmd_steer, c); });
  m.def("classify", [](const std::string &c) { return call(runner::cmd_classify, c); });
  m.def("glassfloor", [](const std::string &c) { return call(runner::cmd_glassfloor, c); });
  m.def("fit", [](const std::string &c) { return call(runner::cmd_fit, c); });
  m.def(
      "ensemble",
      [](const std::string &c, const std::string &out) {
        auto cfg = runner::parse_config(json::parse(c));
        py::gil_scoped_release release;
        return runner::cmd_ensemble(cfg, out).dump();
      },
      py::arg("config"), py::arg("out") = "");

  m.def(
      "temperature_floor",
      [](const std::vector<std::pair<double, double>> &levels, double degeneracy, double e_gs, double p) {
        std::vector<glassfloor::Level> spec;
        for (auto &[e, mult] : levels) spec.push_back({e, mult});
        auto t = glassfloor::temperature_floor(spec, degeneracy, e_gs, p);
        return py::dict(py::arg("T") = t.t, py::arg("beta") = t.beta, py::arg("infinite") = t.infinite,
                        py::arg("residual") = t.residual);
      },
      py::arg("levels"), py::arg("degeneracy"), py::arg("e_gs"), py::arg("p"),
      "T with ground Gibbs weight 1 - p; levels are (energy, multiplicity) pairs");
  m.def("realization_seed", &runner::realization_seed, py::arg("master"), py::arg("index"));
}
