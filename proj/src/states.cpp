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

#include "spinent/states.hpp"

#include <cmath>
#include <stdexcept>

namespace spinent {

namespace {

Eigen::VectorXcd normalized_factor(const Eigen::VectorXcd& v, const char* name) {
  const double norm = v.norm();
  if (std::abs(norm - 1.0) > 1e-9)
    throw std::domain_error(std::string("factor ") + name +
                            " is not unit norm (|norm - 1| > 1e-9)");
  return v / norm;
}

}  // namespace

StateVector separable_state(HalfInt sigma, const SeparableSpec& spec) {
  const int d = sigma.multiplicity();
  if (spec.a.size() != d || spec.b.size() != d)
    throw std::domain_error("separable factors must have length 2*sigma+1");
  const Eigen::VectorXcd a = normalized_factor(spec.a, "a");
  const Eigen::VectorXcd b = normalized_factor(spec.b, "b");
  Eigen::VectorXcd amps(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) amps(i * d + j) = a(i) * b(j);
  return StateVector{sigma, Basis::Product, std::move(amps)};
}

StateVector to_coupled(const StateVector& state, const CouplingTable& table) {
  if (state.basis != Basis::Product)
    throw std::invalid_argument("to_coupled expects a product-basis state");
  if (state.sigma != table.sigma())
    throw std::invalid_argument("state and coupling table sigma mismatch");
  return StateVector{state.sigma, Basis::Coupled,
                     table.matrix().transpose() * state.amplitudes};
}

StateVector to_product(const StateVector& state, const CouplingTable& table) {
  if (state.basis != Basis::Coupled)
    throw std::invalid_argument("to_product expects a coupled-basis state");
  if (state.sigma != table.sigma())
    throw std::invalid_argument("state and coupling table sigma mismatch");
  return StateVector{state.sigma, Basis::Product, table.matrix() * state.amplitudes};
}

StateVector to_coupled(const StateVector& state) {
  return to_coupled(state, CouplingTable(state.sigma));
}

StateVector to_product(const StateVector& state) {
  return to_product(state, CouplingTable(state.sigma));
}

StateVector invariant_in_state(HalfInt sigma, const InStateSpec& spec) {
  if (abs(spec.lambda) > sigma)
    throw std::domain_error("|lambda| > sigma");
  const int d = sigma.multiplicity();
  const Eigen::MatrixXcd rot = wigner_matrix(sigma, spec.euler).matrix;
  Eigen::VectorXcd up = Eigen::VectorXcd::Zero(d);
  Eigen::VectorXcd down = Eigen::VectorXcd::Zero(d);
  up((sigma - spec.lambda).twice() / 2) = 1.0;
  down((sigma + spec.lambda).twice() / 2) = 1.0;
  return separable_state(sigma, SeparableSpec{rot * up, rot * down});
}

}  // namespace spinent
