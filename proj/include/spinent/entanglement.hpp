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
#include <vector>

#include "spinent/states.hpp"

namespace spinent {

/// Reduced single-spin state: Hermitian, positive semi-definite, trace 1.
struct DensityMatrix {
  int dim = 0;
  Eigen::MatrixXcd entries;
};

/// Eigenvalues of the reduced density matrix, descending, summing to 1.
struct SchmidtSpectrum {
  Eigen::VectorXd values;
};

/**
 * Result of testing a state against the maximally entangled normal form
 *
 *   (1/sqrt(d)) sum_j e^{i alpha_j} |j> x |pi_j>.
 *
 * is_maximal requires both a flat Schmidt spectrum and exactly one
 * modulus-1/sqrt(d) amplitude per row and column of the product-basis
 * amplitude matrix. When is_maximal, `deviation` is the reconstruction
 * error of the state from (pi, alpha); otherwise it is the max-norm
 * distance of the Schmidt spectrum from the flat one.
 */
struct MaxEntCertificate {
  bool is_maximal = false;
  std::vector<int> permutation;
  std::vector<double> phases;
  double deviation = 0.0;
};

/// Trace over the other spin; keep is 1 or 2. Accepts either basis.
DensityMatrix partial_trace(const StateVector& state, int keep);

/**
 * S(rho) = -tr[rho log rho] with the logarithm in base log_base, so a
 * d-dimensional maximally mixed state has entropy exactly 1 in base d.
 * Eigenvalues below 1e-14 contribute zero (0 log 0 = 0); eigenvalues below
 * -1e-10 mean the input is not a density matrix and throw std::domain_error.
 */
double von_neumann_entropy(const DensityMatrix& rho, int log_base);

/// Base-d entropy of either reduced density matrix (they agree).
double entropy_of_entanglement(const StateVector& state);

SchmidtSpectrum schmidt_spectrum(const StateVector& state);

MaxEntCertificate certify_max_entangled(const StateVector& state, double tol);

}  // namespace spinent
