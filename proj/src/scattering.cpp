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

#include "spinent/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace spinent {

namespace {

constexpr double kPi = std::numbers::pi;

void check_deltas(HalfInt sigma, const Eigen::VectorXd& deltas) {
  if (sigma.twice() < 0) throw std::domain_error("negative sigma");
  if (deltas.size() != sigma.twice() + 1)
    throw std::invalid_argument("phase vector must have length 2*sigma+1");
  for (int i = 0; i < deltas.size(); ++i)
    if (!std::isfinite(deltas(i)))
      throw std::invalid_argument("non-finite phase shift");
}

// e^{2 i delta_s} for each total-spin block, indexed by integer s.
Eigen::VectorXcd block_phases(const Eigen::VectorXd& deltas) {
  Eigen::VectorXcd ph(deltas.size());
  for (int s = 0; s < deltas.size(); ++s)
    ph(s) = std::polar(1.0, 2.0 * deltas(s));
  return ph;
}

// Multiplies coupled-basis amplitudes by the per-block phases in place.
void apply_block_phases(const CouplingTable& table, const Eigen::VectorXcd& phases,
                        Eigen::VectorXcd& coupled) {
  for (int col = 0; col < coupled.size(); ++col) {
    const int s = table.coupled_labels(col).first.twice() / 2;
    coupled(col) *= phases(s);
  }
}

}  // namespace

double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

PhaseShiftVector::PhaseShiftVector(HalfInt sigma, Eigen::VectorXd deltas)
    : sigma_(sigma), deltas_(std::move(deltas)) {
  check_deltas(sigma_, deltas_);
  if (deltas_(0) != 0.0)
    throw std::invalid_argument("delta_0 must be 0 (overall phase gauge)");
  for (int i = 1; i < deltas_.size(); ++i) deltas_(i) = wrap_angle(deltas_(i));
}

SpinSMatrix build_s_matrix(HalfInt sigma, const Eigen::VectorXd& deltas) {
  check_deltas(sigma, deltas);
  const CouplingTable table(sigma);
  const Eigen::VectorXcd phases = block_phases(deltas);
  const int d2 = table.dim2();
  Eigen::MatrixXcd middle = Eigen::MatrixXcd::Zero(d2, d2);
  for (int col = 0; col < d2; ++col) {
    const int s = table.coupled_labels(col).first.twice() / 2;
    middle(col, col) = phases(s);
  }
  const Eigen::MatrixXcd c = table.matrix().cast<Complex>();
  return SpinSMatrix{sigma, c * middle * c.transpose()};
}

SpinSMatrix build_s_matrix(const PhaseShiftVector& delta) {
  return build_s_matrix(delta.sigma(), delta.deltas());
}

StateVector scatter(const StateVector& state, HalfInt sigma,
                    const Eigen::VectorXd& deltas) {
  if (state.sigma != sigma)
    throw std::invalid_argument("state and phase vector sigma mismatch");
  check_deltas(sigma, deltas);
  const CouplingTable table(sigma);
  const Eigen::VectorXcd phases = block_phases(deltas);
  if (state.basis == Basis::Coupled) {
    StateVector out = state;
    apply_block_phases(table, phases, out.amplitudes);
    return out;
  }
  StateVector coupled = to_coupled(state, table);
  apply_block_phases(table, phases, coupled.amplitudes);
  return to_product(coupled, table);
}

StateVector scatter(const StateVector& state, const PhaseShiftVector& delta) {
  return scatter(state, delta.sigma(), delta.deltas());
}

GTable::GTable(HalfInt sigma, HalfInt lambda) : sigma_(sigma), lambda_(lambda) {
  if (abs(lambda) > sigma) throw std::domain_error("|lambda| > sigma");
  const int d = sigma.multiplicity();
  const int ns = sigma.twice() + 1;
  coefficients_.resize(d, ns);
  for (int s = 0; s < ns; ++s) {
    const double in_side = clebsch_gordan(sigma, lambda, sigma, -lambda, HalfInt(s), 0);
    for (int row = 0; row < d; ++row) {
      const HalfInt chi = sigma - HalfInt(row);
      coefficients_(row, s) =
          in_side * clebsch_gordan(sigma, chi, sigma, -chi, HalfInt(s), 0);
    }
  }
}

Eigen::VectorXcd GTable::g(const Eigen::VectorXd& deltas) const {
  if (deltas.size() != phase_count())
    throw std::invalid_argument("phase vector must have length 2*sigma+1");
  Eigen::VectorXd cosv(phase_count()), sinv(phase_count());
  for (int s = 0; s < phase_count(); ++s) {
    cosv(s) = std::cos(2.0 * deltas(s));
    sinv(s) = std::sin(2.0 * deltas(s));
  }
  const Eigen::VectorXd re = coefficients_ * cosv;
  const Eigen::VectorXd im = coefficients_ * sinv;
  Eigen::VectorXcd out(dim());
  for (int i = 0; i < dim(); ++i) out(i) = Complex(re(i), im(i));
  return out;
}

GVector g_vector(HalfInt sigma, HalfInt lambda, const Eigen::VectorXd& deltas) {
  check_deltas(sigma, deltas);
  return GVector{lambda, GTable(sigma, lambda).g(deltas)};
}

GVector g_vector(HalfInt sigma, HalfInt lambda, const PhaseShiftVector& delta) {
  return g_vector(sigma, lambda, delta.deltas());
}

SchmidtSpectrum schmidt_from_g(const GVector& g) {
  Eigen::VectorXd vals = g.values.cwiseAbs2();
  std::sort(vals.data(), vals.data() + vals.size(), std::greater<double>());
  return SchmidtSpectrum{std::move(vals)};
}

}  // namespace spinent
