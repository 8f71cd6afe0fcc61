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

#include <compare>
#include <string>

namespace spinent {

/**
 * Exact half-integer quantum number, stored as twice its value.
 *
 * Spin magnitudes and projections are integers or half-odd-integers;
 * keeping 2x the value in an int makes all arithmetic and ordering exact,
 * with no floating-point quantum numbers anywhere.
 */
class HalfInt {
 public:
  constexpr HalfInt() = default;
  // Whole numbers convert implicitly; 3 means spin 3, not 3/2.
  constexpr HalfInt(int whole) : twice_(2 * whole) {}

  static constexpr HalfInt from_twice(int twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double value() const { return 0.5 * twice_; }

  // Number of projections m in {h, h-1, ..., -h}; only meaningful for h >= 0.
  constexpr int multiplicity() const { return twice_ + 1; }

  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  constexpr HalfInt operator+(HalfInt o) const { return from_twice(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return from_twice(twice_ - o.twice_); }
  constexpr HalfInt& operator+=(HalfInt o) {
    twice_ += o.twice_;
    return *this;
  }
  constexpr HalfInt& operator-=(HalfInt o) {
    twice_ -= o.twice_;
    return *this;
  }
  constexpr auto operator<=>(const HalfInt&) const = default;

  /// Parses "2", "-1", "1/2", "-3/2". Throws std::invalid_argument otherwise.
  static HalfInt parse(const std::string& text);

  /// "2", "-1", "1/2", "-3/2"; inverse of parse().
  std::string str() const;

 private:
  int twice_ = 0;
};

constexpr HalfInt abs(HalfInt h) {
  return h.twice() < 0 ? -h : h;
}

}  // namespace spinent
