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
#include <complex>
#include <utility>

#include "spinent/half_int.hpp"

namespace spinent {

using Complex = std::complex<double>;

/**
 * One Clebsch-Gordan coefficient <J M | j1 m1, j2 m2>.
 *
 * Conventions: Condon-Shortley phases, so every coefficient is real.
 * Queries outside the selection rules (M != m1+m2, triangle rule,
 * non-integer j1+j2+J) evaluate to exactly zero; queries with invalid
 * quantum numbers (|m| > j, negative j, mismatched j/m parity) throw
 * std::domain_error.
 */
struct CgcQuery {
  HalfInt j1, m1, j2, m2, J, M;
};

double clebsch_gordan(const CgcQuery& q);

inline double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2,
                             HalfInt J, HalfInt M) {
  return clebsch_gordan(CgcQuery{j1, m1, j2, m2, J, M});
}

/**
 * Orthogonal change of basis between the product basis |mu1, mu2> and the
 * coupled basis |s m> for two equal spins sigma.
 *
 * Row and column orderings are part of the external contract:
 *   rows    (mu1, mu2), mu1 descending from sigma, then mu2 descending;
 *   columns (s, m), s descending from 2*sigma, then m descending from s.
 *
 * matrix()(row, col) = <s m | mu1, mu2>, real under Condon-Shortley.
 * Columns are the coupled vectors expressed in product coordinates, so
 * coupled coordinates = matrix()^T * product coordinates.
 */
class CouplingTable {
 public:
  explicit CouplingTable(HalfInt sigma);

  HalfInt sigma() const { return sigma_; }
  int dim() const { return sigma_.multiplicity(); }        // d = 2*sigma + 1
  int dim2() const { return dim() * dim(); }               // two-spin dimension

  const Eigen::MatrixXd& matrix() const { return matrix_; }

  int product_index(HalfInt mu1, HalfInt mu2) const;
  int coupled_index(HalfInt s, HalfInt m) const;
  std::pair<HalfInt, HalfInt> product_labels(int row) const;  // (mu1, mu2)
  std::pair<HalfInt, HalfInt> coupled_labels(int col) const;  // (s, m)

 private:
  HalfInt sigma_;
  Eigen::MatrixXd matrix_;
};

inline CouplingTable coupling_table(HalfInt sigma) { return CouplingTable(sigma); }

/// z-y-z Euler angles, radians.
struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/**
 * Wigner rotation matrix of a single spin sigma,
 *
 *   D^sigma(alpha, beta, gamma) = e^{-i alpha Sz} d^sigma(beta) e^{-i gamma Sz},
 *
 * in the descending-m basis (m = sigma first). Unitary for any angles.
 */
struct WignerRotation {
  HalfInt sigma;
  EulerAngles euler;
  Eigen::MatrixXcd matrix;
};

/// Real little-d matrix d^sigma_{m' m}(beta), descending-m ordering.
Eigen::MatrixXd wigner_d(HalfInt sigma, double beta);

WignerRotation wigner_matrix(HalfInt sigma, const EulerAngles& euler);

// Spin operators in the descending-m basis, useful for building rotated
// spin components and for cross-checks.
Eigen::VectorXd spin_z_diagonal(HalfInt sigma);
Eigen::MatrixXd spin_plus(HalfInt sigma);   // <m+1|S+|m> = sqrt(s(s+1)-m(m+1))
Eigen::MatrixXd spin_x(HalfInt sigma);
Eigen::MatrixXcd spin_y(HalfInt sigma);

/// SU(2) element of the given Euler angles (equals D^{1/2}).
Eigen::Matrix2cd su2_from_euler(const EulerAngles& euler);

/**
 * Euler angles of a given SU(2) element, with beta in [0, pi].
 * su2_from_euler(euler_from_su2(u)) reproduces u itself (not -u), so the
 * extracted angles are consistent across integer and half-integer spins.
 */
EulerAngles euler_from_su2(const Eigen::Matrix2cd& u);

}  // namespace spinent
