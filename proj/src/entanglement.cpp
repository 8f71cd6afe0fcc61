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

#include "spinent/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spinent {

namespace {

constexpr double kZeroEigenvalue = 1e-14;
constexpr double kPsdTolerance = 1e-10;

// Product-basis amplitudes reshaped to d x d, row = first spin index.
Eigen::MatrixXcd amplitude_matrix(const StateVector& state) {
  const StateVector prod =
      state.basis == Basis::Product ? state : to_product(state);
  const int d = state.sigma.multiplicity();
  return Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                        Eigen::RowMajor>>(prod.amplitudes.data(), d, d);
}

Eigen::VectorXd descending_eigenvalues(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.entries,
                                                         Eigen::EigenvaluesOnly);
  Eigen::VectorXd vals = solver.eigenvalues().reverse();
  return vals;
}

}  // namespace

DensityMatrix partial_trace(const StateVector& state, int keep) {
  if (keep != 1 && keep != 2) throw std::invalid_argument("keep must be 1 or 2");
  const Eigen::MatrixXcd m = amplitude_matrix(state);
  const int d = static_cast<int>(m.rows());
  Eigen::MatrixXcd rho;
  if (keep == 1)
    rho = m * m.adjoint();
  else
    rho = m.transpose() * m.conjugate();
  return DensityMatrix{d, std::move(rho)};
}

double von_neumann_entropy(const DensityMatrix& rho, int log_base) {
  if (rho.entries.rows() != rho.dim || rho.entries.cols() != rho.dim)
    throw std::invalid_argument("density matrix dimension mismatch");
  if ((rho.entries - rho.entries.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::domain_error("density matrix is not Hermitian");
  if (std::abs(rho.entries.trace().real() - 1.0) > 1e-12 ||
      std::abs(rho.entries.trace().imag()) > 1e-12)
    throw std::domain_error("density matrix trace is not 1");
  if (rho.dim == 1) return 0.0;  // a single level carries no entropy
  if (log_base < 2) throw std::invalid_argument("log base must be >= 2");

  const Eigen::VectorXd vals = descending_eigenvalues(rho);
  double s = 0.0;
  for (int i = 0; i < vals.size(); ++i) {
    const double p = vals(i);
    if (p < -kPsdTolerance)
      throw std::domain_error("density matrix is not positive semi-definite");
    if (p <= kZeroEigenvalue) continue;
    s -= p * std::log(p);
  }
  s /= std::log(static_cast<double>(log_base));
  const double cap =
      std::log(static_cast<double>(rho.dim)) / std::log(static_cast<double>(log_base)) +
      1e-12;
  return std::clamp(s, 0.0, cap);
}

double entropy_of_entanglement(const StateVector& state) {
  return von_neumann_entropy(partial_trace(state, 1), state.sigma.multiplicity());
}

SchmidtSpectrum schmidt_spectrum(const StateVector& state) {
  Eigen::VectorXd vals = descending_eigenvalues(partial_trace(state, 1));
  for (int i = 0; i < vals.size(); ++i) vals(i) = std::max(vals(i), 0.0);
  return SchmidtSpectrum{std::move(vals)};
}

MaxEntCertificate certify_max_entangled(const StateVector& state, double tol) {
  const Eigen::MatrixXcd m = amplitude_matrix(state);
  const int d = static_cast<int>(m.rows());
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));

  const Eigen::VectorXd spectrum = schmidt_spectrum(state).values;
  double flat_deviation = 0.0;
  for (int i = 0; i < d; ++i)
    flat_deviation = std::max(flat_deviation, std::abs(spectrum(i) - 1.0 / d));

  MaxEntCertificate cert;
  if (flat_deviation > tol) {
    cert.deviation = flat_deviation;
    return cert;
  }

  // One modulus-1/sqrt(d) entry per row and per column, everything else zero.
  std::vector<int> pi(d, -1);
  std::vector<bool> column_used(d, false);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      const double mag = std::abs(m(r, c));
      if (std::abs(mag - inv_sqrt_d) <= tol) {
        if (pi[r] != -1 || column_used[c]) {
          cert.deviation = flat_deviation;
          return cert;
        }
        pi[r] = c;
        column_used[c] = true;
      } else if (mag > tol) {
        cert.deviation = flat_deviation;
        return cert;
      }
    }
    if (pi[r] == -1) {
      cert.deviation = flat_deviation;
      return cert;
    }
  }

  cert.is_maximal = true;
  cert.permutation = pi;
  cert.phases.resize(d);
  Eigen::MatrixXcd rebuilt = Eigen::MatrixXcd::Zero(d, d);
  for (int r = 0; r < d; ++r) {
    cert.phases[r] = std::arg(m(r, pi[r]));
    rebuilt(r, pi[r]) = std::polar(inv_sqrt_d, cert.phases[r]);
  }
  cert.deviation = (m - rebuilt).cwiseAbs().maxCoeff();
  return cert;
}

}  // namespace spinent
