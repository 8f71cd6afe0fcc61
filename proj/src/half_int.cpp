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

#include "spinent/half_int.hpp"

#include <stdexcept>

namespace spinent {

HalfInt HalfInt::parse(const std::string& text) {
  auto fail = [&]() -> HalfInt {
    throw std::invalid_argument("not a half-integer: '" + text + "'");
  };
  if (text.empty()) return fail();
  std::size_t pos = 0;
  long whole = 0;
  try {
    whole = std::stol(text, &pos);
  } catch (const std::exception&) {
    return fail();
  }
  if (pos == text.size()) return HalfInt(static_cast<int>(whole));
  if (text.substr(pos) != "/2") return fail();
  return HalfInt::from_twice(static_cast<int>(whole));
}

std::string HalfInt::str() const {
  if (twice_ % 2 == 0) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

}  // namespace spinent
