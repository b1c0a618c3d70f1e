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

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "telesim/hilbert.hpp"

// Single-qubit analysis bases, detector bookkeeping and coincidence-count
// records shared by the protocol sampler and the tomography module.

namespace telesim {

// Analysis basis of a polarization qubit. Ket conventions:
//   H/V: computational basis.
//   D/A: D = (H+V)/sqrt(2), A = (H-V)/sqrt(2).
//   R/L: R = (H+iV)/sqrt(2), L = (H-iV)/sqrt(2).
enum class Basis { kHV, kDA, kRL };

inline constexpr std::array<Basis, 3> kAllBases = {Basis::kHV, Basis::kDA, Basis::kRL};

// Detector channels, one per basis outcome; also the index order of
// CountsRecord::detector_counts.
enum class Detector : std::size_t { kH = 0, kV = 1, kD = 2, kA = 3, kR = 4, kL = 5 };

inline std::string basis_name(Basis basis) {
  switch (basis) {
    case Basis::kHV: return "HV";
    case Basis::kDA: return "DA";
    case Basis::kRL: return "RL";
  }
  throw std::invalid_argument("unknown basis tag");
}

inline std::pair<Detector, Detector> basis_detectors(Basis basis) {
  switch (basis) {
    case Basis::kHV: return {Detector::kH, Detector::kV};
    case Basis::kDA: return {Detector::kD, Detector::kA};
    case Basis::kRL: return {Detector::kR, Detector::kL};
  }
  throw std::invalid_argument("unknown basis tag");
}

// The (plus, minus) projector kets of an analysis basis.
template <typename Scalar = double>
std::pair<Vector<Scalar>, Vector<Scalar>> basis_kets(Basis basis) {
  const Scalar inv_sqrt2 = Scalar(1) / std::sqrt(Scalar(2));
  Vector<Scalar> plus(2);
  Vector<Scalar> minus(2);
  switch (basis) {
    case Basis::kHV:
      plus << Complex<Scalar>(1, 0), Complex<Scalar>(0, 0);
      minus << Complex<Scalar>(0, 0), Complex<Scalar>(1, 0);
      break;
    case Basis::kDA:
      plus << Complex<Scalar>(inv_sqrt2, 0), Complex<Scalar>(inv_sqrt2, 0);
      minus << Complex<Scalar>(inv_sqrt2, 0), Complex<Scalar>(-inv_sqrt2, 0);
      break;
    case Basis::kRL:
      plus << Complex<Scalar>(inv_sqrt2, 0), Complex<Scalar>(0, inv_sqrt2);
      minus << Complex<Scalar>(inv_sqrt2, 0), Complex<Scalar>(0, -inv_sqrt2);
      break;
  }
  return {std::move(plus), std::move(minus)};
}

// <ket| rho |ket> for a single-qubit state.
template <typename Scalar>
Scalar outcome_probability(const DensityMatrix<Scalar>& rho, const Vector<Scalar>& ket) {
  if (rho.dim() != 2 || ket.size() != 2) {
    throw std::invalid_argument("outcome_probability expects a single qubit");
  }
  const Complex<Scalar> p = (ket.adjoint() * rho.entries() * ket)(0);
  return std::clamp(p.real(), Scalar(0), Scalar(1));
}

// Per-detector coincidence tallies from one sampled run, together with the
// reproducibility metadata (seed and generator identifier).
struct CountsRecord {
  // Indexed by Detector: H, V, D, A, R, L.
  std::array<std::uint64_t, 6> detector_counts{};
  // Analyzer outcome tallies indexed by pol_bit * 2 + path_bit.
  std::array<std::uint64_t, 4> bsm_counts{};
  std::uint64_t n_events = 0;
  std::uint64_t seed = 0;
  std::string generator;

  std::uint64_t basis_total(Basis basis) const {
    const auto [plus, minus] = basis_detectors(basis);
    return detector_counts[static_cast<std::size_t>(plus)] +
           detector_counts[static_cast<std::size_t>(minus)];
  }

  friend bool operator==(const CountsRecord&, const CountsRecord&) = default;
};

}  // namespace telesim
