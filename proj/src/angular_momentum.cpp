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

#include "spinent/angular_momentum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spinent {

namespace {

constexpr int kMaxFactorial = 1024;

// Exact integer factorials held in long double (exact through 25!, and with
// 64-bit mantissa precision far beyond the spins this library meets).
long double factorial(int n) {
  static const auto table = [] {
    std::array<long double, kMaxFactorial + 1> t{};
    t[0] = 1.0L;
    for (int i = 1; i <= kMaxFactorial; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  if (n < 0 || n > kMaxFactorial)
    throw std::domain_error("factorial argument out of range: " + std::to_string(n));
  return table[static_cast<std::size_t>(n)];
}

// (j + m) as an exact integer; the caller guarantees matching parity.
int int_sum(HalfInt a, HalfInt b) { return (a.twice() + b.twice()) / 2; }
int int_diff(HalfInt a, HalfInt b) { return (a.twice() - b.twice()) / 2; }

void check_pair(HalfInt j, HalfInt m, const char* which) {
  if (j.twice() < 0)
    throw std::domain_error(std::string("negative spin ") + which);
  if ((j.twice() - m.twice()) % 2 != 0)
    throw std::domain_error(std::string("projection parity mismatch on ") + which);
  if (abs(m) > j)
    throw std::domain_error(std::string("|m| > j on ") + which);
}

}  // namespace

double clebsch_gordan(const CgcQuery& q) {
  check_pair(q.j1, q.m1, "(j1, m1)");
  check_pair(q.j2, q.m2, "(j2, m2)");
  check_pair(q.J, q.M, "(J, M)");

  if (q.M != q.m1 + q.m2) return 0.0;
  if (q.J > q.j1 + q.j2 || q.J < abs(q.j1 - q.j2)) return 0.0;
  // j1 + j2 + J must be an integer for the coupling to exist.
  if ((q.j1.twice() + q.j2.twice() + q.J.twice()) % 2 != 0) return 0.0;

  // Racah's closed form: an alternating sum over exact factorial ratios,
  // converted to floating point only at the end.
  const int j1pj2mJ = (q.j1.twice() + q.j2.twice() - q.J.twice()) / 2;
  const int j1mj2pJ = (q.j1.twice() - q.j2.twice() + q.J.twice()) / 2;
  const int mj1pj2pJ = (-q.j1.twice() + q.j2.twice() + q.J.twice()) / 2;
  const int j1pj2pJp1 = (q.j1.twice() + q.j2.twice() + q.J.twice()) / 2 + 1;

  const long double pref2 =
      (q.J.twice() + 1.0L) * factorial(j1pj2mJ) * factorial(j1mj2pJ) *
      factorial(mj1pj2pJ) / factorial(j1pj2pJp1) * factorial(int_sum(q.J, q.M)) *
      factorial(int_diff(q.J, q.M)) * factorial(int_sum(q.j1, q.m1)) *
      factorial(int_diff(q.j1, q.m1)) * factorial(int_sum(q.j2, q.m2)) *
      factorial(int_diff(q.j2, q.m2));

  const int t2 = int_diff(q.j1, q.m1);                                // j1 - m1
  const int t3 = int_sum(q.j2, q.m2);                                 // j2 + m2
  const int t4 = (q.J.twice() - q.j2.twice() + q.m1.twice()) / 2;     // J - j2 + m1
  const int t5 = (q.J.twice() - q.j1.twice() - q.m2.twice()) / 2;     // J - j1 - m2

  const int k_min = std::max({0, -t4, -t5});
  const int k_max = std::min({j1pj2mJ, t2, t3});

  long double sum = 0.0L;
  for (int k = k_min; k <= k_max; ++k) {
    const long double denom = factorial(k) * factorial(j1pj2mJ - k) *
                              factorial(t2 - k) * factorial(t3 - k) *
                              factorial(t4 + k) * factorial(t5 + k);
    sum += (k % 2 == 0 ? 1.0L : -1.0L) / denom;
  }

  return static_cast<double>(std::sqrt(pref2) * sum);
}

CouplingTable::CouplingTable(HalfInt sigma) : sigma_(sigma) {
  if (sigma.twice() < 0) throw std::domain_error("negative sigma");
  const int d2 = dim2();
  matrix_ = Eigen::MatrixXd::Zero(d2, d2);
  for (int row = 0; row < d2; ++row) {
    const auto [mu1, mu2] = product_labels(row);
    for (int col = 0; col < d2; ++col) {
      const auto [s, m] = coupled_labels(col);
      if (m != mu1 + mu2) continue;  // exact zero off the m = mu1+mu2 stripe
      matrix_(row, col) = clebsch_gordan(sigma_, mu1, sigma_, mu2, s, m);
    }
  }
}

int CouplingTable::product_index(HalfInt mu1, HalfInt mu2) const {
  if (abs(mu1) > sigma_ || abs(mu2) > sigma_ ||
      (mu1.twice() - sigma_.twice()) % 2 != 0 ||
      (mu2.twice() - sigma_.twice()) % 2 != 0)
    throw std::domain_error("invalid projection for this sigma");
  const int i1 = (sigma_ - mu1).twice() / 2;
  const int i2 = (sigma_ - mu2).twice() / 2;
  return i1 * dim() + i2;
}

int CouplingTable::coupled_index(HalfInt s, HalfInt m) const {
  if (!s.is_integer() || s < 0 || s > sigma_ + sigma_ || abs(m) > s || !m.is_integer())
    throw std::domain_error("invalid coupled label for this sigma");
  const int si = s.twice() / 2;
  const int offset = dim2() - (si + 1) * (si + 1);  // s descending blocks
  return offset + (s - m).twice() / 2;
}

std::pair<HalfInt, HalfInt> CouplingTable::product_labels(int row) const {
  const int d = dim();
  const HalfInt mu1 = sigma_ - HalfInt(row / d);
  const HalfInt mu2 = sigma_ - HalfInt(row % d);
  return {mu1, mu2};
}

std::pair<HalfInt, HalfInt> CouplingTable::coupled_labels(int col) const {
  // Invert offset(s) = d^2 - (s+1)^2 with col in [offset(s), offset(s) + 2s].
  const int rem = dim2() - col;  // in [1, (s+1)^2]
  int sp1 = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(rem))));
  while (sp1 * sp1 < rem) ++sp1;
  while ((sp1 - 1) * (sp1 - 1) >= rem) --sp1;
  const HalfInt s(sp1 - 1);
  const HalfInt m = s - HalfInt(col - (dim2() - sp1 * sp1));
  return {s, m};
}

Eigen::MatrixXd wigner_d(HalfInt sigma, double beta) {
  if (sigma.twice() < 0) throw std::domain_error("negative sigma");
  const int d = sigma.multiplicity();
  const long double c = std::cos(0.5L * static_cast<long double>(beta));
  const long double s = std::sin(0.5L * static_cast<long double>(beta));
  const int tj = sigma.twice();

  auto ipow = [](long double base, int n) {
    long double r = 1.0L;
    for (int i = 0; i < n; ++i) r *= base;
    return r;
  };

  Eigen::MatrixXd out(d, d);
  for (int r = 0; r < d; ++r) {
    const int tmp = tj - 2 * r;  // 2*m'
    for (int col = 0; col < d; ++col) {
      const int tm = tj - 2 * col;  // 2*m
      const int k_min = std::max(0, (tm - tmp) / 2);
      const int k_max = std::min((tj + tm) / 2, (tj - tmp) / 2);
      long double sum = 0.0L;
      for (int k = k_min; k <= k_max; ++k) {
        // cos exponent: 2j - 2k + m - m', sin exponent: m' - m + 2k
        const int cos_exp = tj - 2 * k + (tm - tmp) / 2;
        const int sin_exp = (tmp - tm) / 2 + 2 * k;
        const long double denom = factorial((tj + tm) / 2 - k) * factorial(k) *
                                  factorial((tj - tmp) / 2 - k) *
                                  factorial(k + (tmp - tm) / 2);
        const int sign_exp = (tmp - tm) / 2 + k;
        const long double term = (sign_exp % 2 == 0 ? 1.0L : -1.0L) *
                                 ipow(c, cos_exp) * ipow(s, sin_exp) / denom;
        sum += term;
      }
      const long double pref = std::sqrt(
          factorial((tj + tmp) / 2) * factorial((tj - tmp) / 2) *
          factorial((tj + tm) / 2) * factorial((tj - tm) / 2));
      out(r, col) = static_cast<double>(pref * sum);
    }
  }
  return out;
}

WignerRotation wigner_matrix(HalfInt sigma, const EulerAngles& euler) {
  if (!std::isfinite(euler.alpha) || !std::isfinite(euler.beta) || !std::isfinite(euler.gamma))
    throw std::domain_error("non-finite Euler angle");
  const int d = sigma.multiplicity();
  const Eigen::MatrixXd little_d = wigner_d(sigma, euler.beta);
  Eigen::MatrixXcd out(d, d);
  for (int r = 0; r < d; ++r) {
    const double mp = 0.5 * (sigma.twice() - 2 * r);
    const Complex left = std::exp(Complex(0.0, -euler.alpha * mp));
    for (int c = 0; c < d; ++c) {
      const double m = 0.5 * (sigma.twice() - 2 * c);
      out(r, c) = left * little_d(r, c) * std::exp(Complex(0.0, -euler.gamma * m));
    }
  }
  return WignerRotation{sigma, euler, std::move(out)};
}

Eigen::VectorXd spin_z_diagonal(HalfInt sigma) {
  const int d = sigma.multiplicity();
  Eigen::VectorXd z(d);
  for (int i = 0; i < d; ++i) z(i) = 0.5 * (sigma.twice() - 2 * i);
  return z;
}

Eigen::MatrixXd spin_plus(HalfInt sigma) {
  const int d = sigma.multiplicity();
  const double s = sigma.value();
  Eigen::MatrixXd sp = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i < d; ++i) {
    const double m = 0.5 * (sigma.twice() - 2 * i);  // S+ maps m to m+1 (row i-1)
    sp(i - 1, i) = std::sqrt(s * (s + 1.0) - m * (m + 1.0));
  }
  return sp;
}

Eigen::MatrixXd spin_x(HalfInt sigma) {
  const Eigen::MatrixXd sp = spin_plus(sigma);
  return 0.5 * (sp + sp.transpose());
}

Eigen::MatrixXcd spin_y(HalfInt sigma) {
  const Eigen::MatrixXd sp = spin_plus(sigma);
  return Complex(0.0, -0.5) * (sp - sp.transpose()).cast<Complex>();
}

Eigen::Matrix2cd su2_from_euler(const EulerAngles& euler) {
  return wigner_matrix(HalfInt::from_twice(1), euler).matrix;
}

EulerAngles euler_from_su2(const Eigen::Matrix2cd& u) {
  const Complex a = u(0, 0);
  const Complex b = u(0, 1);
  EulerAngles e;
  e.beta = 2.0 * std::atan2(std::abs(b), std::abs(a));
  constexpr double kTiny = 1e-12;
  if (std::abs(b) < kTiny) {
    e.gamma = 0.0;
    e.alpha = -2.0 * std::arg(a);
  } else if (std::abs(a) < kTiny) {
    e.gamma = 0.0;
    e.alpha = -2.0 * std::arg(-b);
  } else {
    const double pa = std::arg(a);   // -(alpha + gamma)/2
    const double pb = std::arg(-b);  // -(alpha - gamma)/2
    e.alpha = -(pa + pb);
    e.gamma = pb - pa;
  }
  return e;
}

}  // namespace spinent
