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

#include "densecode/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "densecode/analysis.hpp"
#include "densecode/encoding.hpp"
#include "densecode/error.hpp"
#include "densecode/protocol.hpp"
#include "densecode/rational.hpp"
#include "densecode/serialize.hpp"
#include "densecode/states.hpp"
#include "densecode/verify.hpp"

namespace densecode {
namespace {

constexpr const char* kExampleSpectrum = "81/160,79/160";

struct RunConfig {
  std::string spectrum;
  std::size_t d = 0;
  std::size_t message = 0;
  std::size_t trials = 1000;
  std::string variant = "measure";
  Seed seed = kDefaultSeed;
  std::string format;
  std::string out;
  std::string suite = "all";
  std::string messages_file;
  std::vector<std::string> lambda0;
  std::size_t points = 50;
  std::size_t count = 0;
  std::size_t max_restarts = 20;
  unsigned threads = 0;
  Tolerances tol;
};

// A failed check that should end the process with exit code 1.
struct CheckFailure : DenseCodeError {
  using DenseCodeError::DenseCodeError;
};

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw DenseCodeError("cannot open output file " + cfg.out);
  file << text;
}

SchmidtSpectrum spectrum_from(const RunConfig& cfg) {
  SchmidtSpectrum s = parse_spectrum(cfg.spectrum.empty() ? kExampleSpectrum : cfg.spectrum);
  if (cfg.d != 0 && s.dim() != cfg.d) {
    throw PreconditionError("--spectrum has " + std::to_string(s.dim()) + " coefficients but --d is " +
                            std::to_string(cfg.d));
  }
  return s;
}

UnitaryMessageSet messages_for(const RunConfig& cfg, const SchmidtSpectrum& s) {
  const std::size_t d = s.dim();
  if (!cfg.messages_file.empty()) {
    std::ifstream in(cfg.messages_file);
    if (!in) throw DenseCodeError("cannot read message file " + cfg.messages_file);
    return message_set_from_json(Json::parse(in));
  }
  if (d == 2) return qubit_example_messages();
  const auto w = uniformity_witness(s);
  if (w.is_uniform) {
    const UnitaryMessageSet weyl = weyl_set(d);
    return UnitaryMessageSet(std::vector<CMatrix>(weyl.unitaries().begin(), weyl.unitaries().end() - 2));
  }
  const SearchResult found = search_message_set(s, d * d - 2, derive_seed(cfg.seed, 0x5EA));
  if (!found.set) {
    throw CheckFailure("no perfectly distinguishable message set found (best Gram defect " +
                       std::to_string(found.best_defect) + "); supply one with --messages");
  }
  return *found.set;
}

std::string format_or(const RunConfig& cfg, const char* fallback) {
  const std::string f = cfg.format.empty() ? fallback : cfg.format;
  if (f != "json" && f != "csv") throw PreconditionError("--format must be json or csv");
  return f;
}

// ---------------------------------------------------------------- commands

int cmd_example_d2(const RunConfig& cfg, std::ostream& out) {
  const SchmidtSpectrum s = parse_spectrum(kExampleSpectrum);
  const ProtocolBundle b = build_bundle(s, qubit_example_messages(), cfg.seed, cfg.tol);
  const Decoder dec = build_decoder(b);
  const OutcomeDistribution no_measure = outcome_distribution(b, dec, b.final_message(), Variant::kNoMeasure);
  const OutcomeDistribution measured = outcome_distribution(b, dec, b.final_message(), Variant::kMeasureAncilla);

  struct Expect {
    const char* name;
    double value;
    const char* exact;
  };
  const std::vector<Expect> expects{
      {"gamma_0", b.gamma[0], "320/6561"},
      {"gamma_1", b.gamma[1], "0"},
      {"p1", b.p1, "2/81"},
      {"p_t", b.p_t, "79/162"},
      {"p_y", b.p_y, "79/162"},
      {"success_probability", 1.0 - success_probability(b), "79/81"},
      {"measured_outcome_2", measured.outcome[2], "79/81"},
      {"no_measure_outcome_0", no_measure.outcome[0], "1/80"},
      {"no_measure_outcome_1", no_measure.outcome[1], "0"},
      {"no_measure_outcome_2", no_measure.outcome[2], "79/80"},
  };
  Json checks = Json::array();
  bool ok = true;
  for (const auto& e : expects) {
    const double target = Rational::parse(e.exact).to_double();
    const double dev = std::abs(e.value - target);
    const bool pass = dev <= cfg.tol.equality;
    ok = ok && pass;
    checks.push_back(Json{{"name", e.name},
                          {"value", round_probability(e.value)},
                          {"exact", e.exact},
                          {"deviation", dev},
                          {"pass", pass}});
  }
  Json doc;
  doc["schema"] = kSchemaVersion;
  doc["kind"] = "example-d2";
  doc["spectrum"] = spectrum_to_json(s);
  doc["messages"] = "I, X";
  doc["seed"] = seed_to_string(cfg.seed);
  doc["checks"] = std::move(checks);
  doc["no_measure_distribution"] = distribution_to_json(no_measure);
  doc["measured_distribution"] = distribution_to_json(measured);
  doc["pass"] = ok;
  emit(cfg, out, dump(doc));
  return ok ? 0 : 1;
}

int cmd_bundle(const RunConfig& cfg, std::ostream& out) {
  format_or(cfg, "json");
  const SchmidtSpectrum s = spectrum_from(cfg);
  const ProtocolBundle b = build_bundle(s, messages_for(cfg, s), cfg.seed, cfg.tol);
  emit(cfg, out, dump(bundle_to_json(b, cfg.tol)));
  return 0;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  const std::string fmt = format_or(cfg, "json");
  if (cfg.trials == 0) throw PreconditionError("--trials must be at least 1");
  const SchmidtSpectrum s = spectrum_from(cfg);
  const ProtocolBundle b = build_bundle(s, messages_for(cfg, s), cfg.seed, cfg.tol);
  const Decoder dec = build_decoder(b);
  const Variant variant = parse_variant(cfg.variant);
  const SimulationReport rep = simulate(b, dec, cfg.message, cfg.trials, variant, cfg.seed, cfg.threads);
  if (fmt == "csv") {
    emit(cfg, out, simulation_to_csv(rep));
    return 0;
  }
  Json doc = simulation_to_json(rep);
  doc["spectrum"] = spectrum_to_json(s);
  doc["expected"] = distribution_to_json(outcome_distribution(b, dec, cfg.message, variant));
  emit(cfg, out, dump(doc));
  return 0;
}

int cmd_bounds(const RunConfig& cfg, std::ostream& out) {
  const std::string fmt = format_or(cfg, "csv");
  std::vector<std::size_t> dims;
  if (cfg.d != 0) {
    dims.push_back(cfg.d);
  } else {
    for (std::size_t d = 2; d <= 7; ++d) dims.push_back(d);
  }
  std::vector<BoundsRow> rows;
  for (std::size_t d : dims) {
    std::vector<double> grid;
    if (!cfg.lambda0.empty()) {
      for (const auto& text : cfg.lambda0) grid.push_back(Rational::parse(text).to_double());
    } else {
      if (cfg.points == 0) throw PreconditionError("--points must be at least 1");
      const double lo = 1.0 / static_cast<double>(d);
      const double hi = static_cast<double>(d) / static_cast<double>(d * d - 2);
      for (std::size_t k = 0; k < cfg.points; ++k) {
        grid.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(cfg.points));
      }
    }
    for (double lam0 : grid) {
      const EqualTailP1 et = p1_equal_tail(d, lam0);
      const double general = p1_bound_general(SchmidtSpectrum::equal_tail(d, lam0));
      if (et.exact > et.bound + cfg.tol.equality || et.bound > general + cfg.tol.equality) {
        throw CheckFailure("bound ordering violated at d=" + std::to_string(d) + ", lambda0=" + std::to_string(lam0));
      }
      rows.push_back(BoundsRow{d, lam0, et.exact, general, et.bound});
    }
  }
  if (fmt == "csv") {
    emit(cfg, out, bounds_to_csv(rows));
    return 0;
  }
  Json doc;
  doc["schema"] = kSchemaVersion;
  doc["kind"] = "bounds";
  Json arr = Json::array();
  for (const auto& r : rows) {
    arr.push_back(Json{{"d", r.d},
                       {"lambda0", r.lambda0},
                       {"p1_exact", round_probability(r.p1_exact)},
                       {"p1_bound_general", round_probability(r.p1_bound_general)},
                       {"p1_bound_equal_tail", round_probability(r.p1_bound_equal_tail)}});
  }
  doc["rows"] = std::move(arr);
  emit(cfg, out, dump(doc));
  return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  format_or(cfg, "json");
  VerifyOptions opt;
  opt.d = cfg.d == 0 ? 2 : cfg.d;
  opt.seed = cfg.seed;
  opt.tol = cfg.tol;
  const auto reports = run_suites(cfg.suite, opt);
  Json doc;
  doc["schema"] = kSchemaVersion;
  doc["kind"] = "verify";
  doc["seed"] = seed_to_string(cfg.seed);
  doc["tolerances"] = tolerances_to_json(cfg.tol);
  Json suites = Json::array();
  bool ok = true;
  for (const auto& r : reports) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
      checks.push_back(Json{{"name", c.name},
                            {"defect", c.defect},
                            {"tolerance", c.tolerance},
                            {"pass", c.pass},
                            {"detail", c.detail}});
    }
    suites.push_back(Json{{"suite", r.suite}, {"pass", r.pass()}, {"checks", std::move(checks)}});
    ok = ok && r.pass();
  }
  doc["suites"] = std::move(suites);
  doc["pass"] = ok;
  emit(cfg, out, dump(doc));
  return ok ? 0 : 1;
}

int cmd_search(const RunConfig& cfg, std::ostream& out) {
  format_or(cfg, "json");
  const SchmidtSpectrum s = spectrum_from(cfg);
  const std::size_t count = cfg.count == 0 ? s.dim() * s.dim() - 2 : cfg.count;
  SearchOptions opt;
  opt.max_restarts = cfg.max_restarts;
  opt.tolerance = cfg.tol.certificate;
  const SearchResult res = search_message_set(s, count, cfg.seed, opt);
  if (!res.set) {
    throw CheckFailure("search failed after " + std::to_string(res.restarts_used) +
                       " restarts (best Gram defect " + std::to_string(res.best_defect) + ")");
  }
  Json doc = message_set_to_json(*res.set, s, cfg.seed);
  doc["restarts_used"] = res.restarts_used;
  emit(cfg, out, dump(doc));
  return 0;
}

void add_tolerance_flags(CLI::App* app, Tolerances& tol) {
  app->add_option("--tol-orthonormality", tol.orthonormality, "Unitarity / orthonormality tolerance");
  app->add_option("--tol-equality", tol.equality, "Exact-value comparison tolerance");
  app->add_option("--tol-invariant", tol.invariant, "Bundle invariant tolerance");
  app->add_option("--tol-certificate", tol.certificate, "Distinguishability Gram tolerance");
  app->add_option("--tol-support", tol.support, "Support residual tolerance");
  app->add_option("--tol-rank", tol.rank, "Relative rank cutoff");
  app->add_option("--tol-support-eigenvalue", tol.support_eigenvalue, "Support eigenvalue cutoff");
  app->add_option("--tol-hermitian", tol.hermitian, "Hermiticity tolerance");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Dense coding with non-maximally entangled qudits"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  auto seed_opt = [&cfg](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "64-bit seed (default 0x5EEDD0DE)")->capture_default_str();
  };
  auto common = [&](CLI::App* sub) {
    seed_opt(sub);
    sub->add_option("--out", cfg.out, "Write output to this file instead of stdout");
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    add_tolerance_flags(sub, cfg.tol);
  };
  auto spectral = [&](CLI::App* sub) {
    sub->add_option("--spectrum", cfg.spectrum, "Comma-separated Schmidt weights, e.g. 81/160,79/160");
    sub->add_option("--d", cfg.d, "Dimension check for --spectrum");
    sub->add_option("--messages", cfg.messages_file, "Message-set JSON written by the search command");
  };

  CLI::App* example = app.add_subcommand("example-d2", "Reproduce the qubit example and check exact values");
  common(example);
  CLI::App* bundle = app.add_subcommand("bundle", "Build and serialize a protocol bundle");
  common(bundle);
  spectral(bundle);
  CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo simulation of one message");
  common(sim);
  spectral(sim);
  sim->add_option("--message", cfg.message, "Message index (d^2 - 2 is the final message)");
  sim->add_option("--trials", cfg.trials, "Number of trials")->capture_default_str();
  sim->add_option("--variant", cfg.variant, "measure or no-measure")
      ->check(CLI::IsMember({"measure", "no-measure"}))
      ->capture_default_str();
  sim->add_option("--threads", cfg.threads, "Worker threads (0 = hardware concurrency)");
  CLI::App* bounds = app.add_subcommand("bounds", "Sweep exact p1 and its bounds for equal-tail spectra");
  common(bounds);
  bounds->add_option("--d", cfg.d, "Dimension (default: 2 through 7)");
  bounds->add_option("--lambda0", cfg.lambda0, "Explicit largest Schmidt weights (rationals allowed)")->delimiter(',');
  bounds->add_option("--points", cfg.points, "Grid points on [1/d, d/(d^2-2))")->capture_default_str();
  CLI::App* verify = app.add_subcommand("verify", "Run named property suites");
  common(verify);
  verify->add_option("--suite", cfg.suite, "Suite name or all")->capture_default_str();
  verify->add_option("--d", cfg.d, "Dimension for the identity suite");
  CLI::App* search = app.add_subcommand("search", "Search for a distinguishable unitary message set");
  common(search);
  spectral(search);
  search->add_option("--count", cfg.count, "Number of messages (default d^2 - 2)");
  search->add_option("--max-restarts", cfg.max_restarts, "Random restarts")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*example) return cmd_example_d2(cfg, out);
    if (*bundle) return cmd_bundle(cfg, out);
    if (*sim) return cmd_simulate(cfg, out);
    if (*bounds) return cmd_bounds(cfg, out);
    if (*verify) return cmd_verify(cfg, out);
    if (*search) return cmd_search(cfg, out);
  } catch (const InvariantError& e) {
    err << "error: invariant " << e.check() << " failed (defect " << e.defect() << ")\n";
    return 1;
  } catch (const CheckFailure& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const DenseCodeError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace densecode
