// Copyright 2026 The Telesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

// Reproducible sampling. std::mt19937_64 output is pinned by the C++
// standard, and the uniform conversion below avoids std::*_distribution,
// whose algorithms vary across standard libraries. Runs are therefore
// bit-identical across compilers and platforms for a fixed seed.

namespace telesim {

// Identifier recorded in sampled-output metadata.
inline constexpr const char* kGeneratorId = "mt19937_64-u53";

class UniformSampler {
 public:
  explicit UniformSampler(std::uint64_t seed) : engine_(seed) {}

  // Uniform double in [0, 1) with 53 random mantissa bits.
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

// Decorrelated child seed for stream `index` of a base seed (splitmix64
// finalizer). Used to give every state and every analysis basis of a sampled
// experiment its own stream.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace telesim
