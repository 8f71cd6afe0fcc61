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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "spinent/entanglement.hpp"
#include "spinent/states.hpp"

using namespace spinent;
namespace oracle = spinent::testing;

namespace {
constexpr double kPi = std::numbers::pi;
const HalfInt kHalf = HalfInt::from_twice(1);

SeparableSpec basis_spec(int d, int i, int j) {
  SeparableSpec spec{Eigen::VectorXcd::Zero(d), Eigen::VectorXcd::Zero(d)};
  spec.a(i) = 1.0;
  spec.b(j) = 1.0;
  return spec;
}
}  // namespace

TEST_CASE("separable state is a plain tensor product") {
  const StateVector up_down = separable_state(kHalf, basis_spec(2, 0, 1));
  CHECK(up_down.amplitudes(1) == Complex(1.0, 0.0));
  CHECK(up_down.amplitudes.cwiseAbs().sum() == doctest::Approx(1.0));

  SeparableSpec uniform{Eigen::VectorXcd::Constant(2, 1 / std::sqrt(2.0)),
                        Eigen::VectorXcd::Constant(2, 1 / std::sqrt(2.0))};
  const StateVector flat = separable_state(kHalf, uniform);
  for (int i = 0; i < 4; ++i)
    CHECK(flat.amplitudes(i).real() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("separable states carry no entanglement") {
  SplitMix64 rng(0x5eed0001);
  for (int twice = 1; twice <= 4; ++twice) {
    const HalfInt sigma = HalfInt::from_twice(twice);
    const int d = sigma.multiplicity();
    for (int trial = 0; trial < 100; ++trial) {
      const SeparableSpec spec{oracle::random_unit_vector(d, rng),
                               oracle::random_unit_vector(d, rng)};
      CHECK(entropy_of_entanglement(separable_state(sigma, spec)) <= 1e-12);
    }
  }
}

TEST_CASE("separable factor validation") {
  SeparableSpec zero{Eigen::VectorXcd::Zero(2), Eigen::VectorXcd::Zero(2)};
  CHECK_THROWS_AS(separable_state(kHalf, zero), std::domain_error);

  SeparableSpec off{Eigen::VectorXcd::Zero(2), Eigen::VectorXcd::Zero(2)};
  off.a(0) = 0.9;  // clearly unnormalized
  off.b(0) = 1.0;
  CHECK_THROWS_AS(separable_state(kHalf, off), std::domain_error);

  SeparableSpec close{Eigen::VectorXcd::Zero(2), Eigen::VectorXcd::Zero(2)};
  close.a(0) = 1.0 + 1e-10;  // within renormalization tolerance
  close.b(1) = 1.0;
  const StateVector state = separable_state(kHalf, close);
  CHECK(state.amplitudes.norm() == doctest::Approx(1.0).epsilon(1e-14));

  SeparableSpec wrong_len{Eigen::VectorXcd::Zero(3), Eigen::VectorXcd::Zero(2)};
  CHECK_THROWS_AS(separable_state(kHalf, wrong_len), std::domain_error);
}

TEST_CASE("product to coupled for |1/2,-1/2>") {
  const StateVector coupled = to_coupled(separable_state(kHalf, basis_spec(2, 0, 1)));
  // Columns: (s=1,m=1), (1,0), (1,-1), (0,0).
  CHECK(std::abs(coupled.amplitudes(0)) < 1e-15);
  CHECK(coupled.amplitudes(1).real() == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(std::abs(coupled.amplitudes(2)) < 1e-15);
  CHECK(coupled.amplitudes(3).real() == doctest::Approx(1 / std::sqrt(2.0)));
}

TEST_CASE("sigma=1 |1,-1> expands over the m=0 members of every s") {
  const StateVector coupled =
      to_coupled(separable_state(HalfInt(1), basis_spec(3, 0, 2)));
  const CouplingTable table(HalfInt(1));
  const double expected[] = {0.4082482904638630, 0.7071067811865476,
                             0.5773502691896258};  // s = 2, 1, 0
  for (int col = 0; col < table.dim2(); ++col) {
    const auto [s, m] = table.coupled_labels(col);
    if (m == HalfInt(0)) {
      CHECK(coupled.amplitudes(col).real() ==
            doctest::Approx(expected[2 - s.twice() / 2]).epsilon(1e-12));
    } else {
      CHECK(std::abs(coupled.amplitudes(col)) < 1e-15);
    }
  }
}

TEST_CASE("basis transforms round-trip and preserve norm") {
  SplitMix64 rng(0x5eed0002);
  for (int twice = 1; twice <= 4; ++twice) {
    const HalfInt sigma = HalfInt::from_twice(twice);
    for (int trial = 0; trial < 20; ++trial) {
      const StateVector psi = oracle::random_state(sigma, Basis::Product, rng);
      const StateVector back = to_product(to_coupled(psi));
      CHECK((back.amplitudes - psi.amplitudes).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(to_coupled(psi).amplitudes.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("transforms reject the wrong basis tag") {
  const StateVector prod = separable_state(kHalf, basis_spec(2, 0, 0));
  CHECK_THROWS_AS(to_product(prod), std::invalid_argument);
  CHECK_THROWS_AS(to_coupled(to_coupled(prod)), std::invalid_argument);
}

TEST_CASE("invariant in-state at the identity rotation") {
  for (int twice = 1; twice <= 4; ++twice) {
    const HalfInt sigma = HalfInt::from_twice(twice);
    const StateVector state =
        invariant_in_state(sigma, InStateSpec{EulerAngles{}, sigma});
    const int d = sigma.multiplicity();
    CHECK(state.amplitudes(d - 1).real() == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("invariant in-state is separable for any rotation and lambda") {
  SplitMix64 rng(0x5eed0003);
  for (int twice = 1; twice <= 4; ++twice) {
    const HalfInt sigma = HalfInt::from_twice(twice);
    for (HalfInt lambda = sigma; lambda >= -sigma; lambda -= HalfInt(1)) {
      const EulerAngles e{rng.next_angle(), rng.next_angle(), rng.next_angle()};
      const StateVector state = invariant_in_state(sigma, InStateSpec{e, lambda});
      CHECK(state.amplitudes.norm() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(entropy_of_entanglement(state) <= 1e-12);
    }
  }
}

TEST_CASE("invariant in-state is annihilated by the rotated total spin component") {
  SplitMix64 rng(0x5eed0004);
  for (int twice = 1; twice <= 3; ++twice) {
    const HalfInt sigma = HalfInt::from_twice(twice);
    const int d = sigma.multiplicity();
    const Eigen::VectorXd z = spin_z_diagonal(sigma);
    for (int trial = 0; trial < 5; ++trial) {
      const EulerAngles e{rng.next_angle(), rng.next_angle(), rng.next_angle()};
      const Eigen::MatrixXcd rot = wigner_matrix(sigma, e).matrix;
      Eigen::MatrixXcd total_z = Eigen::MatrixXcd::Zero(d * d, d * d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) total_z(i * d + j, i * d + j) = z(i) + z(j);
      Eigen::MatrixXcd big_rot = Eigen::MatrixXcd::Zero(d * d, d * d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l)
              big_rot(i * d + j, k * d + l) = rot(i, k) * rot(j, l);
      const Eigen::MatrixXcd rotated_z = big_rot * total_z * big_rot.adjoint();
      for (HalfInt lambda = sigma; lambda >= -sigma; lambda -= HalfInt(1)) {
        const StateVector state = invariant_in_state(sigma, InStateSpec{e, lambda});
        CHECK((rotated_z * state.amplitudes).norm() < 1e-12);
      }
    }
  }
}

TEST_CASE("spin-1/2 y-rotated in-state has zero rotated-axis expectation") {
  const EulerAngles e{0.0, kPi / 2, 0.0};
  const StateVector state = invariant_in_state(kHalf, InStateSpec{e, kHalf});
  const Eigen::MatrixXcd rot = wigner_matrix(kHalf, e).matrix;
  Eigen::MatrixXcd total_z = Eigen::MatrixXcd::Zero(4, 4);
  const Eigen::VectorXd z = spin_z_diagonal(kHalf);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) total_z(i * 2 + j, i * 2 + j) = z(i) + z(j);
  Eigen::MatrixXcd big_rot(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) big_rot(i * 2 + j, k * 2 + l) = rot(i, k) * rot(j, l);
  const Eigen::MatrixXcd rotated_z = big_rot * total_z * big_rot.adjoint();
  const Complex expectation = state.amplitudes.dot(rotated_z * state.amplitudes);
  CHECK(std::abs(expectation) < 1e-12);
}

TEST_CASE("unrotated in-state lives on the m=0 stripe of every s block") {
  for (int twice = 1; twice <= 4; ++twice) {
    const HalfInt sigma = HalfInt::from_twice(twice);
    const CouplingTable table(sigma);
    for (HalfInt lambda = sigma; lambda >= -sigma; lambda -= HalfInt(1)) {
      const StateVector coupled =
          to_coupled(invariant_in_state(sigma, InStateSpec{EulerAngles{}, lambda}));
      for (int col = 0; col < table.dim2(); ++col) {
        const auto [s, m] = table.coupled_labels(col);
        if (m != HalfInt(0)) CHECK(std::abs(coupled.amplitudes(col)) < 1e-15);
      }
    }
  }
}

TEST_CASE("lambda out of range") {
  CHECK_THROWS_AS(invariant_in_state(kHalf, InStateSpec{EulerAngles{}, HalfInt(1)}),
                  std::domain_error);
}
