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

#include "spinent/angular_momentum.hpp"
#include "spinent/half_int.hpp"

namespace spinent {

enum class Basis { Product, Coupled };

/**
 * Pure state of two spins sigma, unit norm, with amplitudes stored in the
 * index order fixed by CouplingTable for the tagged basis:
 * product = (mu1, mu2) descending, coupled = (s, m) descending.
 */
struct StateVector {
  HalfInt sigma;
  Basis basis = Basis::Product;
  Eigen::VectorXcd amplitudes;
};

/// Factors of a separable two-spin state, each of length 2*sigma+1.
struct SeparableSpec {
  Eigen::VectorXcd a;
  Eigen::VectorXcd b;
};

/// Rotated zero-projection product state: (D(u) x D(u)) |lambda, -lambda>.
struct InStateSpec {
  EulerAngles euler;
  HalfInt lambda;
};

/**
 * Tensor product of the two factors, c_{mu1 mu2} = a_{mu1} b_{mu2}.
 * Factors within 1e-9 of unit norm are renormalized; anything further off
 * (including zero) throws std::domain_error.
 */
StateVector separable_state(HalfInt sigma, const SeparableSpec& spec);

StateVector to_coupled(const StateVector& state, const CouplingTable& table);
StateVector to_product(const StateVector& state, const CouplingTable& table);
StateVector to_coupled(const StateVector& state);
StateVector to_product(const StateVector& state);

/**
 * The separable in-state family (D(u) x D(u)) |lambda, -lambda>: the zero
 * eigenvector of the total spin component along the rotated axis.
 *
 * Euler angles stand in for u; the SU(2) double cover means two u per
 * rotation, which only changes the state by a global sign.
 */
StateVector invariant_in_state(HalfInt sigma, const InStateSpec& spec);

}  // namespace spinent
