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

#include "oracles.hpp"
#include "spinent/entanglement.hpp"

using namespace spinent;
namespace oracle = spinent::testing;

namespace {
const HalfInt kHalf = HalfInt::from_twice(1);

StateVector bell_phi_plus() {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(4);
  amps(0) = amps(3) = 1 / std::sqrt(2.0);  // (|up,up> + |down,down>)/sqrt(2)
  return StateVector{kHalf, Basis::Product, amps};
}

StateVector bell_psi_plus() {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(4);
  amps(1) = amps(2) = 1 / std::sqrt(2.0);  // (|up,down> + |down,up>)/sqrt(2)
  return StateVector{kHalf, Basis::Product, amps};
}
}  // namespace

TEST_CASE("partial trace of a product state is a rank-1 projector") {
  SplitMix64 rng(0xE0E0E0E0);
  for (int twice = 1; twice <= 4; ++twice) {
    const HalfInt sigma = HalfInt::from_twice(twice);
    const int d = sigma.multiplicity();
    const Eigen::VectorXcd a = oracle::random_unit_vector(d, rng);
    const Eigen::VectorXcd b = oracle::random_unit_vector(d, rng);
    const StateVector state = separable_state(sigma, SeparableSpec{a, b});
    const DensityMatrix rho1 = partial_trace(state, 1);
    const DensityMatrix rho2 = partial_trace(state, 2);
    CHECK((rho1.entries - a * a.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((rho2.entries - b * b.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("partial trace of a Bell state is maximally mixed") {
  const DensityMatrix rho = partial_trace(bell_psi_plus(), 1);
  CHECK((rho.entries - 0.5 * Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() <
        1e-14);
}

TEST_CASE("keep=1 and keep=2 give equal entropies") {
  SplitMix64 rng(0xE0E0E0E1);
  for (int trial = 0; trial < 50; ++trial) {
    const HalfInt sigma = HalfInt::from_twice(1 + static_cast<int>(rng.next_u64() % 4));
    const StateVector psi = oracle::random_state(sigma, Basis::Product, rng);
    const int d = sigma.multiplicity();
    const double s1 = von_neumann_entropy(partial_trace(psi, 1), d);
    const double s2 = von_neumann_entropy(partial_trace(psi, 2), d);
    CHECK(std::abs(s1 - s2) < 1e-10);
  }
  CHECK_THROWS_AS(partial_trace(bell_phi_plus(), 3), std::invalid_argument);
}

TEST_CASE("entropy of the maximally mixed state is 1 in base d") {
  for (int d : {2, 3, 4}) {
    DensityMatrix rho{d, Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d)};
    CHECK(von_neumann_entropy(rho, d) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("entropy pinned value for diag(3/4, 1/4)") {
  DensityMatrix rho{2, Eigen::MatrixXcd::Zero(2, 2)};
  rho.entries(0, 0) = 0.75;
  rho.entries(1, 1) = 0.25;
  // -(3/4 log2 3/4 + 1/4 log2 1/4)
  CHECK(von_neumann_entropy(rho, 2) ==
        doctest::Approx(0.8112781244591328).epsilon(1e-12));
  rho.entries(1, 1) = 0.0;
  rho.entries(0, 0) = 1.0;
  CHECK(von_neumann_entropy(rho, 2) == 0.0);
}

TEST_CASE("entropy rejects non-density matrices") {
  DensityMatrix bad_trace{2, Eigen::MatrixXcd::Identity(2, 2)};
  CHECK_THROWS_AS(von_neumann_entropy(bad_trace, 2), std::domain_error);

  DensityMatrix not_hermitian{2, Eigen::MatrixXcd::Zero(2, 2)};
  not_hermitian.entries(0, 0) = 1.0;
  not_hermitian.entries(0, 1) = 0.1;
  CHECK_THROWS_AS(von_neumann_entropy(not_hermitian, 2), std::domain_error);

  DensityMatrix not_psd{2, Eigen::MatrixXcd::Zero(2, 2)};
  not_psd.entries(0, 0) = 1.5;
  not_psd.entries(1, 1) = -0.5;
  CHECK_THROWS_AS(von_neumann_entropy(not_psd, 2), std::domain_error);
}

TEST_CASE("maximally entangled normal-form states have entropy 1") {
  SplitMix64 rng(0xE0E0E0E2);
  for (int twice = 1; twice <= 4; ++twice) {
    const HalfInt sigma = HalfInt::from_twice(twice);
    const int d = sigma.multiplicity();
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> phases(d);
      for (double& p : phases) p = rng.next_angle();
      const StateVector psi =
          oracle::maxent_state(sigma, oracle::random_permutation(d, rng), phases);
      CHECK(entropy_of_entanglement(psi) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("schmidt spectrum pinned example") {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(4);
  amps(0) = std::sqrt(0.75);
  amps(3) = std::sqrt(0.25);
  const StateVector psi{kHalf, Basis::Product, amps};
  const SchmidtSpectrum spectrum = schmidt_spectrum(psi);
  CHECK(spectrum.values(0) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(spectrum.values(1) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(entropy_of_entanglement(psi) ==
        doctest::Approx(0.8112781244591328).epsilon(1e-12));
}

TEST_CASE("schmidt spectrum sums to 1 and matches the SVD route") {
  SplitMix64 rng(0xE0E0E0E3);
  for (int trial = 0; trial < 50; ++trial) {
    const HalfInt sigma = HalfInt::from_twice(1 + static_cast<int>(rng.next_u64() % 4));
    const StateVector psi = oracle::random_state(sigma, Basis::Product, rng);
    const SchmidtSpectrum spectrum = schmidt_spectrum(psi);
    CHECK(spectrum.values.sum() == doctest::Approx(1.0).epsilon(1e-12));
    const Eigen::VectorXd reference = oracle::schmidt_by_svd(psi);
    CHECK((spectrum.values - reference).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("entropy is invariant under local unitaries") {
  SplitMix64 rng(0xE0E0E0E4);
  for (int twice = 1; twice <= 3; ++twice) {
    const HalfInt sigma = HalfInt::from_twice(twice);
    const int d = sigma.multiplicity();
    for (int trial = 0; trial < 10; ++trial) {
      const StateVector psi = oracle::random_state(sigma, Basis::Product, rng);
      const Eigen::MatrixXcd v = oracle::random_unitary(d, rng);
      const Eigen::MatrixXcd w = oracle::random_unitary(d, rng);
      Eigen::VectorXcd rotated(d * d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          Complex sum = 0.0;
          for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l)
              sum += v(i, k) * w(j, l) * psi.amplitudes(k * d + l);
          rotated(i * d + j) = sum;
        }
      const StateVector phi{sigma, Basis::Product, rotated};
      CHECK(std::abs(entropy_of_entanglement(phi) - entropy_of_entanglement(psi)) <
            1e-10);
    }
  }
}

TEST_CASE("certificate accepts the Bell state with the identity permutation") {
  const MaxEntCertificate cert = certify_max_entangled(bell_phi_plus(), 1e-10);
  REQUIRE(cert.is_maximal);
  CHECK(cert.permutation == std::vector<int>{0, 1});
  CHECK(std::abs(cert.phases[0]) < 1e-12);
  CHECK(std::abs(cert.phases[1]) < 1e-12);
  CHECK(cert.deviation < 1e-12);
}

TEST_CASE("certificate recovers random permutations and phases") {
  SplitMix64 rng(0xE0E0E0E5);
  for (int twice = 1; twice <= 4; ++twice) {
    const HalfInt sigma = HalfInt::from_twice(twice);
    const int d = sigma.multiplicity();
    for (int trial = 0; trial < 20; ++trial) {
      const std::vector<int> perm = oracle::random_permutation(d, rng);
      std::vector<double> phases(d);
      for (double& p : phases) p = rng.next_angle();
      const MaxEntCertificate cert =
          certify_max_entangled(oracle::maxent_state(sigma, perm, phases), 1e-8);
      REQUIRE(cert.is_maximal);
      CHECK(cert.permutation == perm);
      CHECK(cert.deviation < 1e-12);
    }
  }
}

TEST_CASE("certificate rejects separable and generic states") {
  SplitMix64 rng(0xE0E0E0E6);
  const Eigen::VectorXcd a = oracle::random_unit_vector(2, rng);
  const Eigen::VectorXcd b = oracle::random_unit_vector(2, rng);
  const MaxEntCertificate cert =
      certify_max_entangled(separable_state(kHalf, SeparableSpec{a, b}), 1e-8);
  CHECK(!cert.is_maximal);
  // A product state's spectrum is (1, 0): distance 1/2 from flat in d = 2.
  CHECK(cert.deviation == doctest::Approx(0.5).epsilon(1e-12));

  // Flat spectrum but no permutation structure: a rotated Bell state.
  const Eigen::MatrixXcd v = oracle::random_unitary(2, rng);
  Eigen::VectorXcd amps(4);
  const StateVector bell = bell_phi_plus();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Complex sum = 0.0;
      for (int k = 0; k < 2; ++k) sum += v(i, k) * bell.amplitudes(k * 2 + j);
      amps(i * 2 + j) = sum;
    }
  const MaxEntCertificate rotated_cert =
      certify_max_entangled(StateVector{kHalf, Basis::Product, amps}, 1e-8);
  CHECK(!rotated_cert.is_maximal);
  CHECK(rotated_cert.deviation < 1e-10);  // spectrum itself is still flat
}
