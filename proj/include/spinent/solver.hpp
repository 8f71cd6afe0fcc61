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

#pragma once

#include <Eigen/Dense>
#include <limits>
#include <string>
#include <vector>

#include "spinent/scattering.hpp"

namespace spinent {

/// Flat torus metric: max over components of the wrapped angle difference.
double torus_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/**
 * Perfect-entangler defect |g_chi(lambda)|^2 - 1/d per chi (descending).
 * The components sum to zero, so one of them is redundant.
 */
struct Residual {
  Eigen::VectorXd values;
};

Residual residual(HalfInt sigma, HalfInt lambda, const Eigen::VectorXd& deltas);
Residual residual(HalfInt sigma, HalfInt lambda, const PhaseShiftVector& delta);

/// Residual evaluated through a prebuilt table; deltas include delta_0.
Eigen::VectorXd residual_values(const GTable& table, const Eigen::VectorXd& deltas);

/// Analytic d(residual)/d(delta_t), t = 1..2*sigma; d x 2*sigma.
Eigen::MatrixXd residual_jacobian(const GTable& table, const Eigen::VectorXd& deltas);

/// Central-difference Jacobian with the given step, same shape.
Eigen::MatrixXd residual_jacobian_fd(const GTable& table, const Eigen::VectorXd& deltas,
                                     double step);

struct SolverConfig {
  int grid_points_per_axis = 48;
  double refine_tol = 1e-12;     // max-norm residual a stored solution must satisfy
  double dedup_radius = 1e-6;    // torus metric
  double family_rank_tol = 1e-8; // singular values below this count as null directions
  int max_newton_iters = 50;
};

/// A solution with a full-rank Jacobian: locally unique.
struct SolutionPoint {
  Eigen::VectorXd deltas;  // full vector, deltas(0) == 0
  double residual_max = 0.0;
  int nullity = 0;
};

/// Connected set of solutions with k >= 1 null Jacobian directions.
struct SolutionFamily {
  int nullity = 1;
  std::vector<Eigen::VectorXd> samples;  // full vectors, lexicographically sorted
};

struct SolutionSet {
  HalfInt sigma;
  HalfInt lambda;
  std::vector<SolutionPoint> points;
  std::vector<SolutionFamily> families;
};

/**
 * Finds every phase vector on (-pi, pi]^{2 sigma} that makes the S-matrix a
 * perfect entangler for the invariant in-state of the given lambda.
 *
 * Dense grid seeding (cell centers), damped Gauss-Newton refinement on the
 * 2*sigma independent residual components from every seed whose residual
 * max-norm is below 0.2, torus deduplication, then classification of each
 * solution by the numerical nullity of the central-difference Jacobian.
 * Output is canonically sorted (lexicographic on deltas), so the result is
 * identical across runs and any parallel schedule of the seed loop.
 */
SolutionSet solve(HalfInt sigma, HalfInt lambda, const SolverConfig& config = {});

/// One printed reference equation checked against the computed |g_chi|^2.
struct EquationCheck {
  std::string label;
  double best_max_deviation = 0.0;  // vs the best-matching (lambda, chi)
  HalfInt best_lambda;
  HalfInt best_chi;
  bool matched = false;  // best_max_deviation <= 1e-12
  // Deviation after the one documented coefficient correction, when one is
  // known for this equation (NaN otherwise).
  double corrected_max_deviation = std::numeric_limits<double>::quiet_NaN();
  std::string note;
};

struct PaperCheckReport {
  HalfInt sigma;
  int points_checked = 0;
  int family_samples_checked = 0;
  double max_solution_residual = 0.0;  // over the published reference solutions
  std::vector<EquationCheck> equations;
};

/**
 * Re-derives the published sigma = 1/2, 1, 3/2 results: evaluates the
 * residual at every published solution (or family sample) and compares each
 * printed trigonometric right-hand side against the computed |g_chi|^2 at
 * 1000 deterministic random phase vectors.
 */
PaperCheckReport verify_paper_solutions(HalfInt sigma);

struct LambdaRunSummary {
  HalfInt lambda;
  int n_points = 0;
  int n_families = 0;
  std::vector<int> family_nullities;  // ascending
};

struct LambdaIndependenceReport {
  HalfInt sigma;
  std::vector<LambdaRunSummary> runs;
  bool counts_match = false;
  // Bidirectional nearest-neighbour match of isolated points against the
  // first run (0 when there are no points).
  double max_point_match_distance = 0.0;
  // How far a family sample moves when re-refined under another lambda's
  // residual map; small drift means the sample lies on that set too.
  double max_family_refine_drift = 0.0;
  // Subsampled symmetric Hausdorff distance between matched families.
  double max_family_hausdorff = 0.0;
  bool consistent = false;
  std::string detail;
};

/// Runs solve for every lambda in {sigma, ..., -sigma} and compares the sets.
LambdaIndependenceReport lambda_independence_check(HalfInt sigma,
                                                   const SolverConfig& config = {});

struct EntropySearchResult {
  Eigen::VectorXd best_deltas;  // full vector, deltas(0) == 0
  double best_entropy = 0.0;
};

/**
 * Supremum of the out-state entanglement entropy over all phase vectors for
 * a fixed separable in-state: grid seeding plus deterministic compass-ascent
 * refinement of the best seeds.
 */
EntropySearchResult max_entropy_search(HalfInt sigma, const SeparableSpec& spec,
                                       const SolverConfig& config = {});

}  // namespace spinent
