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

#include "spinent/entanglement.hpp"
#include "spinent/states.hpp"

namespace spinent {

/// Wraps an angle into (-pi, pi]; exactly -pi maps to pi.
double wrap_angle(double a);

/**
 * Gauge-fixed scattering phases (delta_0, ..., delta_{2 sigma}).
 *
 * delta_0 must be exactly 0 (the overall phase is fixed to it); the
 * remaining entries are wrapped into (-pi, pi] on construction.  The
 * physics functions below also accept raw, ungauged phase vectors, since
 * e.g. an all-equal phase vector is a legitimate (if trivial) S-matrix.
 */
class PhaseShiftVector {
 public:
  PhaseShiftVector(HalfInt sigma, Eigen::VectorXd deltas);

  HalfInt sigma() const { return sigma_; }
  const Eigen::VectorXd& deltas() const { return deltas_; }

 private:
  HalfInt sigma_;
  Eigen::VectorXd deltas_;
};

/**
 * Rotationally invariant two-spin S-matrix in the product basis.  In the
 * coupled basis it is diagonal and acts as e^{2 i delta_s} on the whole
 * total-spin-s block.
 */
struct SpinSMatrix {
  HalfInt sigma;
  Eigen::MatrixXcd matrix;
};

SpinSMatrix build_s_matrix(HalfInt sigma, const Eigen::VectorXd& deltas);
SpinSMatrix build_s_matrix(const PhaseShiftVector& delta);

/// Applies the S-matrix; the out-state keeps the in-state's basis tag.
StateVector scatter(const StateVector& state, HalfInt sigma,
                    const Eigen::VectorXd& deltas);
StateVector scatter(const StateVector& state, const PhaseShiftVector& delta);

/**
 * Coupled-channel amplitudes of the scattered invariant in-state,
 *
 *   g_chi(lambda) = sum_s e^{2 i delta_s} <s 0|lambda,-lambda><chi,-chi|s 0>,
 *
 * indexed by chi descending from sigma.  |g_chi|^2 are the Schmidt
 * coefficients of the out-state, and sum to 1.
 */
struct GVector {
  HalfInt lambda;
  Eigen::VectorXcd values;
};

GVector g_vector(HalfInt sigma, HalfInt lambda, const Eigen::VectorXd& deltas);
GVector g_vector(HalfInt sigma, HalfInt lambda, const PhaseShiftVector& delta);

SchmidtSpectrum schmidt_from_g(const GVector& g);

/**
 * Precomputed Clebsch-Gordan products for one (sigma, lambda), the hot path
 * for phase-shift searches: coefficients()(chi_row, s) multiplied against
 * the phase vector e^{2 i delta_s} gives g.  Immutable and safe to share
 * across threads.
 */
class GTable {
 public:
  GTable(HalfInt sigma, HalfInt lambda);

  HalfInt sigma() const { return sigma_; }
  HalfInt lambda() const { return lambda_; }
  int dim() const { return static_cast<int>(coefficients_.rows()); }
  int phase_count() const { return static_cast<int>(coefficients_.cols()); }
  const Eigen::MatrixXd& coefficients() const { return coefficients_; }

  Eigen::VectorXcd g(const Eigen::VectorXd& deltas) const;

 private:
  HalfInt sigma_;
  HalfInt lambda_;
  Eigen::MatrixXd coefficients_;
};

}  // namespace spinent
