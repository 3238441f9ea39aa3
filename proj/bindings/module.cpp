#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

#include "covacap/capacity.hpp"
#include "covacap/config.hpp"
#include "covacap/errors.hpp"
#include "covacap/majorization.hpp"

namespace py = pybind11;

namespace {

// Every entry point takes the JSON config text and returns (report_json,
// exit_code); the python wrapper turns these into dicts.
std::pair<std::string, int> run_command(const std::string& command,
                                        const std::string& config_json,
                                        int level) {
  const covacap::ChannelConfig cfg =
      covacap::parse_config_json(covacap::ordered_json::parse(config_json));
  covacap::RunResult result = [&] {
    if (command == "describe") return covacap::run_describe(cfg);
    if (command == "capacity") return covacap::run_capacity(cfg);
    if (command == "verify") return covacap::run_verify(cfg, level);
    throw covacap::ValidationError("unknown command \"" + command + "\"");
  }();
  return {result.report.dump(), result.exit_code};
}

std::vector<covacap::Rational> parse_rationals(
    const std::vector<std::string>& texts) {
  std::vector<covacap::Rational> out;
  out.reserve(texts.size());
  for (const std::string& t : texts) out.push_back(covacap::Rational::parse(t));
  return out;
}

}  // namespace

PYBIND11_MODULE(_covacap, m) {
  m.doc() =
      "capacities of mixed unitary channels generated by projective group "
      "representations";

  py::register_exception<covacap::Error>(m, "CovacapError");

  m.def("run_command", &run_command, py::arg("command"), py::arg("config_json"),
        py::arg("level") = 1,
        "Run describe/capacity/verify on a JSON config string; returns "
        "(report_json, exit_code).");

  m.def(
      "theorem_capacity",
      [](int n, const std::vector<std::string>& p, double log_base) {
        const covacap::ClosedForm cf = covacap::theorem_capacity(
            n, covacap::ProbVector::from_rationals(parse_rationals(p)),
            log_base);
        return std::make_pair(cf.entropy_p, cf.capacity);
      },
      py::arg("n"), py::arg("p"), py::arg("log_base") = 2.0,
      "Closed-form (entropy_p, capacity) from exact coset weights given as "
      "\"num/den\" strings.");

  m.def("qubit_capacity_from_lambdas", &covacap::qubit_capacity_from_lambdas,
        py::arg("lambda_x"), py::arg("lambda_y"), py::arg("lambda_z"),
        py::arg("log_base") = 2.0,
        "Qubit capacity from the three signed channel eigenvalues.");

  m.def(
      "majorizes",
      [](const std::vector<double>& mu, const std::vector<double>& nu,
         double tol) {
        return covacap::majorizes(covacap::ProbVector::from_doubles(mu),
                                  covacap::ProbVector::from_doubles(nu), tol);
      },
      py::arg("mu"), py::arg("nu"), py::arg("tol") = 1e-9,
      "Does mu majorize nu?  Sorting and zero-padding happen internally.");

  m.attr("__version__") = "1.0.0";
}
