// Copyright 2026 The rectlab Authors
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

#ifndef RECTLAB_VEC_HPP_
#define RECTLAB_VEC_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rectlab {

inline constexpr int kMaxDim = 3;

// Points of R^n for n <= 3. Coordinates beyond the ambient dimension are
// kept at zero, so the full-width arithmetic below is exact for every n.
using Vec = std::array<double, kMaxDim>;

inline Vec operator+(const Vec& a, const Vec& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec operator-(const Vec& a, const Vec& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec operator*(double s, const Vec& a) {
  return {s * a[0], s * a[1], s * a[2]};
}
inline double Dot(const Vec& a, const Vec& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double Norm(const Vec& a) { return std::sqrt(Dot(a, a)); }
inline double Distance(const Vec& a, const Vec& b) { return Norm(a - b); }

// A refusal is a precondition or budget failure reported by one of the
// modules. The message is prefixed with the module name.
class Refusal : public std::runtime_error {
 public:
  Refusal(const std::string& module, const std::string& message)
      : std::runtime_error(module + ": " + message) {}
};

// Deterministic uniform sampling on top of a seeded 64-bit engine.
template <typename Engine>
double Uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace rectlab

#endif  // RECTLAB_VEC_HPP_
