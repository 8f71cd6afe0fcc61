// Copyright 2026 The spinent authors
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

// Batch front end: machine-readable output on stdout, diagnostics on stderr.
// Exit codes: 0 success, 2 input error, 1 internal failure.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "spinent/json_io.hpp"
#include "spinent/solver.hpp"

namespace {

using namespace spinent;

constexpr double kCertifyTol = 1e-8;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Eigen::VectorXd parse_delta_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      values.push_back(std::stod(item, &pos));
      while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos])))
        ++pos;
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("could not parse phase shift '" + item + "'");
    }
  }
  if (values.empty()) throw InputError("empty phase shift list");
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<int>(values.size()));
}

std::vector<int> parse_axis_list(const std::string& text, int n_free) {
  std::vector<int> axes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int axis = 0;
    try {
      axis = std::stoi(item);
    } catch (const std::exception&) {
      throw InputError("could not parse axis '" + item + "'");
    }
    if (axis < 1 || axis > n_free)
      throw InputError("axis " + item + " out of range 1.." + std::to_string(n_free));
    if (std::find(axes.begin(), axes.end(), axis) != axes.end())
      throw InputError("duplicate axis " + item);
    axes.push_back(axis);
  }
  if (axes.empty()) throw InputError("empty axis list");
  return axes;
}

nlohmann::json read_json_input(const std::string& path) {
  try {
    if (path == "-") return nlohmann::json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file '" + path + "'");
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed JSON input: ") + e.what());
  }
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw InputError("cannot open output file '" + out_path + "'");
  out << text;
}

HalfInt parse_sigma(const std::string& text) {
  HalfInt sigma = HalfInt::parse(text);
  if (sigma.twice() < 0) throw InputError("sigma must be non-negative");
  return sigma;
}

int run_cgc_table(const std::string& sigma_text, const std::string& format,
                  const std::string& out_path) {
  const HalfInt sigma = parse_sigma(sigma_text);
  const CouplingTable table(sigma);
  std::ostringstream out;
  if (format == "csv") {
    out << "s,m,mu1,mu2,value\n";
    for (int col = 0; col < table.dim2(); ++col) {
      const auto [s, m] = table.coupled_labels(col);
      for (int row = 0; row < table.dim2(); ++row) {
        const double value = table.matrix()(row, col);
        if (value == 0.0) continue;
        const auto [mu1, mu2] = table.product_labels(row);
        out << s.str() << ',' << m.str() << ',' << mu1.str() << ',' << mu2.str() << ','
            << format_double(value) << '\n';
      }
    }
  } else if (format == "json") {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int col = 0; col < table.dim2(); ++col) {
      const auto [s, m] = table.coupled_labels(col);
      for (int row = 0; row < table.dim2(); ++row) {
        const double value = table.matrix()(row, col);
        if (value == 0.0) continue;
        const auto [mu1, mu2] = table.product_labels(row);
        nlohmann::ordered_json entry;
        entry["s"] = s.str();
        entry["m"] = m.str();
        entry["mu1"] = mu1.str();
        entry["mu2"] = mu2.str();
        entry["value"] = value;
        rows.push_back(std::move(entry));
      }
    }
    out << rows.dump(2) << '\n';
  } else {
    throw InputError("cgc-table supports --format csv or json");
  }
  write_output(out_path, out.str());
  return 0;
}

int run_scatter(const std::string& sigma_text, const std::string& deltas_text,
                const std::string& in_path, const std::string& out_path) {
  const HalfInt sigma = parse_sigma(sigma_text);
  const PhaseShiftVector delta(sigma, parse_delta_list(deltas_text));
  const StateVector in_state = state_from_json(read_json_input(in_path));
  if (in_state.sigma != sigma)
    throw InputError("state sigma does not match --sigma");
  const StateVector out_state = scatter(in_state, delta);
  nlohmann::ordered_json j;
  j["out_state"] = state_to_json(out_state);
  j["entropy"] = entropy_of_entanglement(out_state);
  write_output(out_path, j.dump(2) + "\n");
  return 0;
}

int run_entropy(const std::string& in_path, const std::string& out_path) {
  const StateVector state = state_from_json(read_json_input(in_path));
  const SchmidtSpectrum spectrum = schmidt_spectrum(state);
  const MaxEntCertificate cert = certify_max_entangled(state, kCertifyTol);
  nlohmann::ordered_json j;
  j["entropy"] = entropy_of_entanglement(state);
  nlohmann::ordered_json schmidt = nlohmann::ordered_json::array();
  for (int i = 0; i < spectrum.values.size(); ++i) schmidt.push_back(spectrum.values(i));
  j["schmidt"] = std::move(schmidt);
  j["max_entangled"] = cert.is_maximal;
  if (cert.is_maximal) {
    j["permutation"] = cert.permutation;
    j["phases"] = cert.phases;
  }
  j["deviation"] = cert.deviation;
  write_output(out_path, j.dump(2) + "\n");
  return 0;
}

struct SolverFlags {
  int grid = 0;
  double tol = 0.0;
  double dedup = 0.0;
  double rank_tol = 0.0;
  int max_iters = 0;

  SolverConfig apply() const {
    SolverConfig cfg;
    if (grid > 0) cfg.grid_points_per_axis = grid;
    if (tol > 0.0) cfg.refine_tol = tol;
    if (dedup > 0.0) cfg.dedup_radius = dedup;
    if (rank_tol > 0.0) cfg.family_rank_tol = rank_tol;
    if (max_iters > 0) cfg.max_newton_iters = max_iters;
    return cfg;
  }
};

int run_solve(const std::string& sigma_text, const std::string& lambda_text,
              const SolverFlags& flags, const std::string& out_path) {
  const HalfInt sigma = parse_sigma(sigma_text);
  const HalfInt lambda = lambda_text.empty() ? sigma : HalfInt::parse(lambda_text);
  const SolutionSet set = solve(sigma, lambda, flags.apply());
  write_output(out_path, solution_set_to_json(set).dump(2) + "\n");
  return 0;
}

int run_verify(const std::string& sigma_text, const SolverFlags& flags,
               const std::string& out_path) {
  const HalfInt sigma = parse_sigma(sigma_text);
  nlohmann::ordered_json j;
  j["published_solutions"] = paper_check_to_json(verify_paper_solutions(sigma));
  j["lambda_independence"] =
      lambda_report_to_json(lambda_independence_check(sigma, flags.apply()));
  write_output(out_path, j.dump(2) + "\n");
  return 0;
}

int run_scan(const std::string& sigma_text, const std::string& lambda_text,
             const std::string& axes_text, int samples,
             const std::string& deltas_text, const std::string& out_path) {
  const HalfInt sigma = parse_sigma(sigma_text);
  const HalfInt lambda = lambda_text.empty() ? sigma : HalfInt::parse(lambda_text);
  const int n_free = sigma.twice();
  if (n_free == 0) throw InputError("nothing to scan for sigma = 0");
  if (samples < 1) throw InputError("--samples must be positive");
  const std::vector<int> axes = parse_axis_list(axes_text, n_free);

  Eigen::VectorXd base = Eigen::VectorXd::Zero(n_free + 1);
  if (!deltas_text.empty()) {
    base = parse_delta_list(deltas_text);
    if (base.size() != n_free + 1)
      throw InputError("--deltas must have length 2*sigma+1");
    if (base(0) != 0.0) throw InputError("delta_0 must be 0");
  }

  // The invariant in-state in the coupled basis; the rotation u drops out of
  // the entropy, so the identity rotation is used.
  const StateVector in_state =
      invariant_in_state(sigma, InStateSpec{EulerAngles{}, lambda});
  const CouplingTable table(sigma);
  const StateVector in_coupled = to_coupled(in_state, table);
  const int d = table.dim();
  std::vector<int> col_block(table.dim2());
  for (int col = 0; col < table.dim2(); ++col)
    col_block[col] = table.coupled_labels(col).first.twice() / 2;

  Eigen::VectorXcd out_coupled(table.dim2());
  auto entropy_at = [&](const Eigen::VectorXd& deltas) {
    for (int col = 0; col < table.dim2(); ++col)
      out_coupled(col) =
          in_coupled.amplitudes(col) * std::polar(1.0, 2.0 * deltas(col_block[col]));
    StateVector out{sigma, Basis::Coupled, out_coupled};
    return entropy_of_entanglement(out);
  };

  std::ostringstream out;
  for (int t = 1; t <= n_free; ++t) out << "delta_" << t << ',';
  out << "entropy\n";

  constexpr double pi = std::numbers::pi;
  std::vector<int> idx(axes.size(), 0);
  Eigen::VectorXd deltas = base;
  bool done = false;
  while (!done) {
    for (std::size_t k = 0; k < axes.size(); ++k)
      deltas(axes[k]) = -pi + 2.0 * pi * (idx[k] + 1) / samples;
    const double entropy = entropy_at(deltas);
    for (int t = 1; t <= n_free; ++t) out << format_double(deltas(t)) << ',';
    out << format_double(entropy) << '\n';
    // odometer over the scanned axes, last axis fastest
    int k = static_cast<int>(axes.size()) - 1;
    while (k >= 0) {
      if (++idx[k] < samples) break;
      idx[k] = 0;
      --k;
    }
    done = k < 0;
  }
  write_output(out_path, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Rotationally invariant two-spin scattering: coupling tables, "
      "entanglement entropies, and perfect-entangler phase-shift search"};
  app.require_subcommand(1);

  std::string sigma_text, lambda_text, deltas_text, in_path, out_path;
  std::string format = "csv";
  std::string axes_text = "1";
  int samples = 360;
  SolverFlags flags;

  auto* cgc = app.add_subcommand("cgc-table",
                                 "Nonzero coupling coefficients <s m|mu1,mu2> as CSV");
  cgc->add_option("--sigma", sigma_text, "Spin, e.g. 1 or 3/2")->required();
  cgc->add_option("--format", format, "csv or json")->capture_default_str();
  cgc->add_option("--out", out_path, "Output path (default stdout)");

  auto* scat = app.add_subcommand("scatter", "Apply the S-matrix to a state");
  scat->add_option("--sigma", sigma_text)->required();
  scat->add_option("--deltas", deltas_text, "Comma-separated, first entry 0")->required();
  scat->add_option("--in", in_path, "State JSON path, or - for stdin")->required();
  scat->add_option("--out", out_path, "Output path (default stdout)");

  auto* ent = app.add_subcommand("entropy", "Entanglement entropy of a state");
  ent->add_option("--in", in_path, "State JSON path, or - for stdin")->required();
  ent->add_option("--out", out_path, "Output path (default stdout)");

  auto* sol = app.add_subcommand("solve", "Find all perfect-entangler phase vectors");
  sol->add_option("--sigma", sigma_text)->required();
  sol->add_option("--lambda", lambda_text, "In-state projection (default sigma)");
  sol->add_option("--grid", flags.grid, "Seed grid points per axis");
  sol->add_option("--tol", flags.tol, "Residual refinement tolerance");
  sol->add_option("--dedup-radius", flags.dedup, "Torus dedup radius");
  sol->add_option("--rank-tol", flags.rank_tol, "Jacobian nullity threshold");
  sol->add_option("--max-iters", flags.max_iters, "Newton iteration cap");
  sol->add_option("--out", out_path, "Output path (default stdout)");

  auto* ver = app.add_subcommand(
      "verify", "Check the published solution sets and phase-shift systems");
  ver->add_option("--sigma", sigma_text, "1/2, 1 or 3/2")->required();
  ver->add_option("--grid", flags.grid, "Seed grid points per axis");
  ver->add_option("--tol", flags.tol, "Residual refinement tolerance");
  ver->add_option("--dedup-radius", flags.dedup, "Torus dedup radius");
  ver->add_option("--rank-tol", flags.rank_tol, "Jacobian nullity threshold");
  ver->add_option("--max-iters", flags.max_iters, "Newton iteration cap");
  ver->add_option("--out", out_path, "Output path (default stdout)");

  auto* scn = app.add_subcommand("scan", "Entropy landscape over a phase grid (CSV)");
  scn->add_option("--sigma", sigma_text)->required();
  scn->add_option("--lambda", lambda_text, "In-state projection (default sigma)");
  scn->add_option("--axes", axes_text, "Comma-separated axes to scan, e.g. 1,2")
      ->capture_default_str();
  scn->add_option("--samples", samples, "Grid samples per scanned axis")
      ->capture_default_str();
  scn->add_option("--deltas", deltas_text, "Baseline phases for unscanned axes");
  scn->add_option("--out", out_path, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cgc->parsed()) return run_cgc_table(sigma_text, format, out_path);
    if (scat->parsed()) return run_scatter(sigma_text, deltas_text, in_path, out_path);
    if (ent->parsed()) return run_entropy(in_path, out_path);
    if (sol->parsed()) return run_solve(sigma_text, lambda_text, flags, out_path);
    if (ver->parsed()) return run_verify(sigma_text, flags, out_path);
    if (scn->parsed())
      return run_scan(sigma_text, lambda_text, axes_text, samples, deltas_text,
                      out_path);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
