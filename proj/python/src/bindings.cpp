// Copyright 2026 The densecode Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "densecode/analysis.hpp"
#include "densecode/commands.hpp"
#include "densecode/error.hpp"
#include "densecode/protocol.hpp"
#include "densecode/states.hpp"

namespace py = pybind11;
using namespace densecode;

namespace {

std::tuple<int, std::string, std::string> cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"densecode"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = 0;
  {
    py::gil_scoped_release release;
    code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  }
  return {code, out.str(), err.str()};
}

}  // namespace

PYBIND11_MODULE(_densecode, m) {
  m.doc() = "Native core of the densecode package.";

  m.def("run_cli", &cli, py::arg("args"),
        "Runs a densecode subcommand in-process and returns (exit_code, stdout, stderr).");

  m.def(
      "parse_spectrum", [](const std::string& text) {
        const SchmidtSpectrum s = parse_spectrum(text);
        const auto v = s.values();
        return std::vector<double>(v.begin(), v.end());
      }, py::arg("text"));
  m.def(
      "compute_r", [](const std::vector<double>& l) { return compute_R(SchmidtSpectrum::from_values(l)); },
      py::arg("spectrum"));
  m.def(
      "gamma_closed_form", [](const std::vector<double>& l) { return gamma_closed_form(SchmidtSpectrum::from_values(l)); },
      py::arg("spectrum"));
  m.def(
      "p1_bound_general", [](const std::vector<double>& l) { return p1_bound_general(SchmidtSpectrum::from_values(l)); },
      py::arg("spectrum"));
  m.def(
      "p1_equal_tail",
      [](std::size_t d, double lambda0) {
        const EqualTailP1 r = p1_equal_tail(d, lambda0);
        return std::make_pair(r.exact, r.bound);
      },
      py::arg("d"), py::arg("lambda0"), "Returns (exact p1, upper bound) for an equal-tail spectrum.");
  m.def(
      "uniformity_witness",
      [](const std::vector<double>& l) {
        const UniformityWitness w = uniformity_witness(SchmidtSpectrum::from_values(l));
        return std::make_pair(w.value, w.is_uniform);
      },
      py::arg("spectrum"));

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);
}
