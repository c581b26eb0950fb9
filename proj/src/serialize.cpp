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

#include "densecode/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "densecode/error.hpp"

namespace densecode {
namespace {

std::string format_decimal(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

Json defects_to_json(const std::map<std::string, double>& defects) {
  Json out = Json::object();
  for (const auto& [name, value] : defects) out[name] = value;
  return out;
}

Json probabilities(const std::vector<double>& ps) {
  Json out = Json::array();
  for (double p : ps) out.push_back(round_probability(p));
  return out;
}

}  // namespace

double round_probability(double p) {
  if (std::abs(p) < 1e-15) return 0.0;
  return std::strtod(format_decimal(p).c_str(), nullptr);
}

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw PreconditionError("matrix JSON: expected nested arrays");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  CMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (j[r].size() != cols) throw PreconditionError("matrix JSON: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      const Json& e = j[r][c];
      if (!e.is_array() || e.size() != 2) throw PreconditionError("matrix JSON: entries must be [re, im]");
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

Json vector_to_json(const CVector& v) {
  Json out = Json::array();
  for (std::size_t k = 0; k < v.size(); ++k) out.push_back({v[k].real(), v[k].imag()});
  return out;
}

Json spectrum_to_json(const SchmidtSpectrum& s) {
  Json out = Json::array();
  if (s.exact()) {
    for (const auto& r : *s.exact()) out.push_back(r.to_string());
  } else {
    for (double v : s.values()) out.push_back(format_decimal(v));
  }
  return out;
}

Json tolerances_to_json(const Tolerances& tol) {
  return Json{{"orthonormality", tol.orthonormality}, {"equality", tol.equality},
              {"invariant", tol.invariant},           {"certificate", tol.certificate},
              {"support", tol.support},               {"rank", tol.rank},
              {"support_eigenvalue", tol.support_eigenvalue}, {"hermitian", tol.hermitian}};
}

std::string seed_to_string(Seed seed) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%llX", static_cast<unsigned long long>(seed));
  return buf;
}

Json bundle_to_json(const ProtocolBundle& b, const Tolerances& tol) {
  Json out;
  out["schema"] = kSchemaVersion;
  out["kind"] = "bundle";
  out["d"] = b.dim();
  out["spectrum"] = spectrum_to_json(b.spectrum);
  out["seed"] = seed_to_string(b.seed);
  out["tolerances"] = tolerances_to_json(tol);
  out["R"] = b.r;
  out["gamma"] = b.gamma;
  out["p1"] = round_probability(b.p1);
  out["p_t"] = round_probability(b.p_t);
  out["p_y"] = round_probability(b.p_y);
  out["final_message_success"] = round_probability(1.0 - success_probability(b));
  Json msgs = Json::array();
  for (const auto& u : b.messages.unitaries()) msgs.push_back(matrix_to_json(u));
  out["messages"] = std::move(msgs);
  out["M"] = matrix_to_json(b.m);
  out["T"] = matrix_to_json(b.t);
  out["Y"] = matrix_to_json(b.y);
  out["C"] = matrix_to_json(b.c);
  out["dilation"] = matrix_to_json(b.dilation.u_tilde);
  out["defects"] = defects_to_json(b.defects);
  return out;
}

Json distribution_to_json(const OutcomeDistribution& dist) {
  return Json{{"outcome", probabilities(dist.outcome)},
              {"undetected", round_probability(dist.undetected)},
              {"aborted", round_probability(dist.aborted)}};
}

Json simulation_to_json(const SimulationReport& r) {
  Json out;
  out["schema"] = kSchemaVersion;
  out["kind"] = "simulation";
  out["message"] = r.message_sent;
  out["variant"] = to_string(r.variant);
  out["trials"] = r.trials;
  out["seed"] = seed_to_string(r.seed);
  out["histogram"] = r.outcome_histogram;
  out["undetected"] = r.undetected;
  out["aborted"] = r.aborted;
  std::vector<double> freq;
  for (auto c : r.outcome_histogram) freq.push_back(static_cast<double>(c) / static_cast<double>(r.trials));
  out["frequencies"] = probabilities(freq);
  return out;
}

Json message_set_to_json(const UnitaryMessageSet& set, const SchmidtSpectrum& s, Seed seed) {
  Json out;
  out["schema"] = kSchemaVersion;
  out["kind"] = "message-set";
  out["d"] = set.dim();
  out["spectrum"] = spectrum_to_json(s);
  out["seed"] = seed_to_string(seed);
  out["certificate_defect"] = certify_distinguishable(set, make_schmidt_state(s)).gram_defect;
  Json us = Json::array();
  for (const auto& u : set.unitaries()) us.push_back(matrix_to_json(u));
  out["unitaries"] = std::move(us);
  return out;
}

UnitaryMessageSet message_set_from_json(const Json& j) {
  if (!j.contains("unitaries")) throw PreconditionError("message-set JSON: missing \"unitaries\"");
  if (j.contains("schema") && j["schema"] != kSchemaVersion) {
    throw PreconditionError("message-set JSON: unsupported schema " + j["schema"].dump());
  }
  std::vector<CMatrix> us;
  for (const auto& m : j["unitaries"]) us.push_back(matrix_from_json(m));
  return UnitaryMessageSet(std::move(us));
}

Json impossibility_to_json(const ImpossibilityReport& r) {
  Json out;
  out["schema"] = kSchemaVersion;
  out["kind"] = "identity-report";
  out["case"] = r.case_tag;
  out["x"] = r.x;
  out["swapped"] = r.swapped;
  out["gamma_row"] = r.gamma_row;
  out["b"] = r.b;
  if (r.hypotheses_hold()) {
    out["E"] = matrix_to_json(r.e_mat);
    out["W"] = matrix_to_json(r.w_mat);
  }
  out["defects"] = defects_to_json(r.defects);
  return out;
}

Json support_to_json(const SupportContainmentReport& r) {
  Json out;
  out["schema"] = kSchemaVersion;
  out["kind"] = "support-report";
  out["reference_rank"] = r.reference_rank;
  Json outcomes = Json::array();
  for (const auto& o : r.outcomes) {
    outcomes.push_back(Json{{"probability", round_probability(o.probability)}, {"rank", o.rank}, {"residual", o.residual}});
  }
  out["outcomes"] = std::move(outcomes);
  out["max_residual"] = r.max_residual;
  out["pass"] = r.pass;
  return out;
}

std::string bounds_to_csv(const std::vector<BoundsRow>& rows) {
  std::ostringstream os;
  os << "d,lambda0,p1_exact,p1_bound_general,p1_bound_equal_tail\n";
  for (const auto& r : rows) {
    os << r.d << ',' << format_decimal(r.lambda0) << ',' << format_decimal(r.p1_exact) << ','
       << format_decimal(r.p1_bound_general) << ',' << format_decimal(r.p1_bound_equal_tail) << '\n';
  }
  return os.str();
}

std::string simulation_to_csv(const SimulationReport& r) {
  std::ostringstream os;
  os << "outcome,count\n";
  for (std::size_t j = 0; j < r.outcome_histogram.size(); ++j) os << j << ',' << r.outcome_histogram[j] << '\n';
  os << "undetected," << r.undetected << '\n';
  os << "aborted," << r.aborted << '\n';
  return os.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace densecode
