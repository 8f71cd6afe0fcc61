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

#include "spinent/json_io.hpp"

#include <cmath>
#include <stdexcept>

namespace spinent {

namespace {

using ordered_json = nlohmann::ordered_json;

HalfInt parse_half_int_field(const nlohmann::json& j, const char* field) {
  if (!j.contains(field) || !j.at(field).is_string())
    throw std::invalid_argument(std::string("missing or non-string field '") + field +
                                "'");
  return HalfInt::parse(j.at(field).get<std::string>());
}

Eigen::VectorXd vector_from_json(const nlohmann::json& j, const char* field) {
  if (!j.is_array()) throw std::invalid_argument(std::string(field) + " must be an array");
  Eigen::VectorXd v(j.size());
  int i = 0;
  for (const auto& x : j) {
    if (!x.is_number()) throw std::invalid_argument(std::string(field) + " must be numeric");
    v(i++) = x.get<double>();
  }
  return v;
}

ordered_json vector_to_json(const Eigen::VectorXd& v) {
  ordered_json arr = ordered_json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

}  // namespace

nlohmann::ordered_json state_to_json(const StateVector& state) {
  ordered_json j;
  j["sigma"] = state.sigma.str();
  j["basis"] = state.basis == Basis::Product ? "product" : "coupled";
  ordered_json amps = ordered_json::array();
  for (int i = 0; i < state.amplitudes.size(); ++i)
    amps.push_back({state.amplitudes(i).real(), state.amplitudes(i).imag()});
  j["amplitudes"] = std::move(amps);
  return j;
}

StateVector state_from_json(const nlohmann::json& j) {
  const HalfInt sigma = parse_half_int_field(j, "sigma");
  if (sigma.twice() < 0) throw std::invalid_argument("negative sigma");
  if (!j.contains("basis") || !j.at("basis").is_string())
    throw std::invalid_argument("missing or non-string field 'basis'");
  const std::string basis_name = j.at("basis").get<std::string>();
  Basis basis;
  if (basis_name == "product")
    basis = Basis::Product;
  else if (basis_name == "coupled")
    basis = Basis::Coupled;
  else
    throw std::invalid_argument("basis must be 'product' or 'coupled'");

  if (!j.contains("amplitudes") || !j.at("amplitudes").is_array())
    throw std::invalid_argument("missing or non-array field 'amplitudes'");
  const auto& amps = j.at("amplitudes");
  const int d2 = sigma.multiplicity() * sigma.multiplicity();
  if (static_cast<int>(amps.size()) != d2)
    throw std::invalid_argument("amplitudes must have length (2*sigma+1)^2");
  Eigen::VectorXcd v(d2);
  int i = 0;
  for (const auto& pair : amps) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
        !pair[1].is_number())
      throw std::invalid_argument("each amplitude must be a [re, im] pair");
    v(i++) = Complex(pair[0].get<double>(), pair[1].get<double>());
  }
  const double norm = v.norm();
  if (std::abs(norm - 1.0) > 1e-9)
    throw std::invalid_argument("state norm differs from 1 by more than 1e-9");
  return StateVector{sigma, basis, v / norm};
}

nlohmann::ordered_json phase_shifts_to_json(const PhaseShiftVector& delta) {
  ordered_json j;
  j["sigma"] = delta.sigma().str();
  j["deltas"] = vector_to_json(delta.deltas());
  return j;
}

PhaseShiftVector phase_shifts_from_json(const nlohmann::json& j) {
  const HalfInt sigma = parse_half_int_field(j, "sigma");
  if (!j.contains("deltas"))
    throw std::invalid_argument("missing field 'deltas'");
  return PhaseShiftVector(sigma, vector_from_json(j.at("deltas"), "deltas"));
}

nlohmann::ordered_json solution_set_to_json(const SolutionSet& set) {
  ordered_json j;
  j["sigma"] = set.sigma.str();
  j["lambda"] = set.lambda.str();
  ordered_json points = ordered_json::array();
  for (const auto& p : set.points) {
    ordered_json jp;
    jp["deltas"] = vector_to_json(p.deltas);
    jp["residual_max"] = p.residual_max;
    jp["nullity"] = p.nullity;
    points.push_back(std::move(jp));
  }
  j["points"] = std::move(points);
  ordered_json families = ordered_json::array();
  for (const auto& f : set.families) {
    ordered_json jf;
    jf["nullity"] = f.nullity;
    ordered_json samples = ordered_json::array();
    for (const auto& s : f.samples) samples.push_back(vector_to_json(s));
    jf["samples"] = std::move(samples);
    families.push_back(std::move(jf));
  }
  j["families"] = std::move(families);
  return j;
}

SolutionSet solution_set_from_json(const nlohmann::json& j) {
  SolutionSet set;
  set.sigma = parse_half_int_field(j, "sigma");
  set.lambda = parse_half_int_field(j, "lambda");
  for (const auto& jp : j.at("points")) {
    SolutionPoint p;
    p.deltas = vector_from_json(jp.at("deltas"), "deltas");
    p.residual_max = jp.at("residual_max").get<double>();
    p.nullity = jp.at("nullity").get<int>();
    set.points.push_back(std::move(p));
  }
  for (const auto& jf : j.at("families")) {
    SolutionFamily f;
    f.nullity = jf.at("nullity").get<int>();
    for (const auto& js : jf.at("samples"))
      f.samples.push_back(vector_from_json(js, "samples"));
    set.families.push_back(std::move(f));
  }
  return set;
}

nlohmann::ordered_json paper_check_to_json(const PaperCheckReport& report) {
  ordered_json j;
  j["sigma"] = report.sigma.str();
  j["points_checked"] = report.points_checked;
  j["family_samples_checked"] = report.family_samples_checked;
  j["max_solution_residual"] = report.max_solution_residual;
  ordered_json eqs = ordered_json::array();
  for (const auto& e : report.equations) {
    ordered_json je;
    je["label"] = e.label;
    je["best_max_deviation"] = e.best_max_deviation;
    je["best_lambda"] = e.best_lambda.str();
    je["best_chi"] = e.best_chi.str();
    je["matched"] = e.matched;
    if (!std::isnan(e.corrected_max_deviation))
      je["corrected_max_deviation"] = e.corrected_max_deviation;
    if (!e.note.empty()) je["note"] = e.note;
    eqs.push_back(std::move(je));
  }
  j["equations"] = std::move(eqs);
  return j;
}

nlohmann::ordered_json lambda_report_to_json(const LambdaIndependenceReport& report) {
  ordered_json j;
  j["sigma"] = report.sigma.str();
  ordered_json runs = ordered_json::array();
  for (const auto& r : report.runs) {
    ordered_json jr;
    jr["lambda"] = r.lambda.str();
    jr["points"] = r.n_points;
    jr["families"] = r.n_families;
    jr["family_nullities"] = r.family_nullities;
    runs.push_back(std::move(jr));
  }
  j["runs"] = std::move(runs);
  j["counts_match"] = report.counts_match;
  j["max_point_match_distance"] = report.max_point_match_distance;
  j["max_family_refine_drift"] = report.max_family_refine_drift;
  j["max_family_hausdorff"] = report.max_family_hausdorff;
  j["consistent"] = report.consistent;
  j["detail"] = report.detail;
  return j;
}

}  // namespace spinent
