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

#include <stdexcept>

#include "spinent/half_int.hpp"

using spinent::HalfInt;

TEST_CASE("arithmetic and ordering are exact") {
  const HalfInt half = HalfInt::from_twice(1);
  const HalfInt one(1);
  CHECK(half + half == one);
  CHECK(one - half == half);
  CHECK(-half < half);
  CHECK(half < one);
  CHECK(half.value() == doctest::Approx(0.5));
  CHECK(one.is_integer());
  CHECK(!half.is_integer());
}

TEST_CASE("magnetic range of a spin has 2*sigma+1 members") {
  for (int twice = 0; twice <= 7; ++twice) {
    const HalfInt sigma = HalfInt::from_twice(twice);
    int count = 0;
    for (HalfInt m = sigma; m >= -sigma; m -= HalfInt(1)) ++count;
    CHECK(count == sigma.multiplicity());
    CHECK(count == twice + 1);
  }
}

TEST_CASE("parse and str round-trip") {
  for (const char* text : {"0", "1", "-3", "1/2", "-1/2", "3/2", "-7/2"}) {
    const HalfInt h = HalfInt::parse(text);
    CHECK(h.str() == text);
  }
  CHECK(HalfInt::parse("4/2") == HalfInt(2));
  CHECK(HalfInt::parse("2").twice() == 4);
}

TEST_CASE("parse rejects junk") {
  CHECK_THROWS_AS(HalfInt::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(HalfInt::parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(HalfInt::parse("1/3"), std::invalid_argument);
  CHECK_THROWS_AS(HalfInt::parse("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(HalfInt::parse("1/2x"), std::invalid_argument);
}

TEST_CASE("abs") {
  CHECK(spinent::abs(HalfInt::from_twice(-3)) == HalfInt::from_twice(3));
  CHECK(spinent::abs(HalfInt(2)) == HalfInt(2));
}
