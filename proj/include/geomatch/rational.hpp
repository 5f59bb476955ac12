/* Copyright 2026 The geomatch Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace geomatch {

using Int = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// q^k for any integer k, exactly.
inline Rational rational_pow(Int q, int k) {
  BigInt base = q;
  BigInt power = boost::multiprecision::pow(base, static_cast<unsigned>(k < 0 ? -k : k));
  return k < 0 ? Rational(BigInt(1), power) : Rational(power);
}

inline std::string to_string(const Rational& r) {
  return r.str();
}

inline double to_double(const Rational& r) {
  return r.convert_to<double>();
}

}  // namespace geomatch
