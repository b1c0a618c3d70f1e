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

#include <complex>
#include <random>

#include "telesim/hilbert.hpp"

// Random fixtures for tests. These generators are intentionally independent
// of the sampling machinery in telesim/rng.hpp so that test inputs cannot be
// correlated with the code under test.

namespace telesim::testing {

using Rng = std::mt19937_64;

inline std::complex<double> random_complex(Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  return {gauss(rng), gauss(rng)};
}

inline PureState<double> random_pure(Rng& rng, Labels labels) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << labels.size());
  Vector<double> amps(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    amps(i) = random_complex(rng);
  }
  return PureState<double>(std::move(amps), std::move(labels)).normalize();
}

// Full-rank random mixed state (Ginibre construction).
inline DensityMatrix<double> random_density(Rng& rng, Labels labels) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << labels.size());
  Matrix<double> g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      g(i, j) = random_complex(rng);
    }
  }
  Matrix<double> rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityMatrix<double>(std::move(rho), std::move(labels));
}

// Haar-like random unitary from the QR decomposition of a Ginibre matrix.
inline Matrix<double> random_unitary(Rng& rng, Eigen::Index dim) {
  Matrix<double> g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      g(i, j) = random_complex(rng);
    }
  }
  Eigen::HouseholderQR<Matrix<double>> qr(g);
  Matrix<double> q = qr.householderQ();
  return q;
}

// Largest entry-wise deviation between two matrices.
inline double max_abs_diff(const Matrix<double>& a, const Matrix<double>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const Vector<double>& a, const Vector<double>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Amplitude vector with the phase of the first non-negligible entry fixed to
// be real and positive; makes pure-state comparisons global-phase free.
inline Vector<double> phase_fixed(const Vector<double>& amps) {
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    if (std::abs(amps(i)) > 1e-12) {
      return amps * (std::abs(amps(i)) / amps(i));
    }
  }
  return amps;
}

}  // namespace telesim::testing
