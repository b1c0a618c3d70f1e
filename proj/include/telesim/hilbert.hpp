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

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Exact complex linear algebra for small multi-qubit systems: pure states,
// density matrices, operators/channels, tensor structure and fidelity.
//
// Conventions used throughout:
//   - A state over labels [l0, l1, ..., l(n-1)] stores amplitudes indexed so
//     that l0 owns the most significant bit of the basis index.
//   - For polarization factors H maps to bit 0 and V to bit 1; for path
//     factors arm 0 maps to bit 0 and arm 1 to bit 1.
//   - States are compared via fidelity or entry-wise after fixing the phase
//     of the first nonzero amplitude; global phases are not significant.

namespace telesim {

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar>
using Vector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

using Labels = std::vector<std::string>;

// Numerical slacks for validating type invariants.
inline constexpr double kUnitaryTol = 1e-12;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kEigenvalueFloor = -1e-10;

template <typename Scalar>
class DensityMatrix;

namespace detail {

inline std::size_t pow2(std::size_t n) { return std::size_t{1} << n; }

inline void require_unique_labels(const Labels& labels) {
  Labels sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("subsystem labels must be unique");
  }
}

inline std::size_t label_position(const Labels& labels, const std::string& name) {
  auto it = std::find(labels.begin(), labels.end(), name);
  if (it == labels.end()) {
    throw std::invalid_argument("unknown subsystem label: " + name);
  }
  return static_cast<std::size_t>(it - labels.begin());
}

inline std::vector<std::size_t> label_positions(const Labels& labels, const Labels& subset) {
  require_unique_labels(subset);
  std::vector<std::size_t> positions;
  positions.reserve(subset.size());
  for (const auto& name : subset) {
    positions.push_back(label_position(labels, name));
  }
  return positions;
}

inline std::size_t bit_of(std::size_t index, std::size_t n, std::size_t position) {
  return (index >> (n - 1 - position)) & std::size_t{1};
}

// Scatters the bits of `value` (MSB first) into the given label positions of
// an n-qubit index.
inline std::size_t scatter_bits(std::size_t value, std::size_t n,
                                const std::vector<std::size_t>& positions) {
  std::size_t index = 0;
  const std::size_t m = positions.size();
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t bit = (value >> (m - 1 - k)) & std::size_t{1};
    index |= bit << (n - 1 - positions[k]);
  }
  return index;
}

template <typename Scalar>
void require_square_power_of_two(const Matrix<Scalar>& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw std::invalid_argument("operator matrix must be square");
  }
  const auto rows = static_cast<std::size_t>(m.rows());
  if ((rows & (rows - 1)) != 0) {
    throw std::invalid_argument("operator dimension must be a power of two");
  }
}

}  // namespace detail

// A pure state |psi> over an ordered list of named qubit subsystems.
template <typename Scalar = double>
class PureState {
 public:
  PureState(Vector<Scalar> amplitudes, Labels labels)
      : amplitudes_(std::move(amplitudes)), labels_(std::move(labels)) {
    detail::require_unique_labels(labels_);
    if (static_cast<std::size_t>(amplitudes_.size()) != detail::pow2(labels_.size())) {
      throw std::invalid_argument("amplitude vector length must be 2^(number of labels)");
    }
  }

  // |index> in the computational basis of the labeled system.
  static PureState computational(Labels labels, std::size_t index) {
    const std::size_t dim = detail::pow2(labels.size());
    if (index >= dim) {
      throw std::invalid_argument("basis index out of range");
    }
    Vector<Scalar> amps = Vector<Scalar>::Zero(static_cast<Eigen::Index>(dim));
    amps(static_cast<Eigen::Index>(index)) = Complex<Scalar>(1, 0);
    return PureState(std::move(amps), std::move(labels));
  }

  const Vector<Scalar>& amplitudes() const { return amplitudes_; }
  const Labels& labels() const { return labels_; }
  std::size_t num_qubits() const { return labels_.size(); }
  Eigen::Index dim() const { return amplitudes_.size(); }

  Scalar norm() const { return amplitudes_.norm(); }

  PureState& normalize() {
    const Scalar n = norm();
    if (n <= Scalar(0)) {
      throw std::invalid_argument("cannot normalize the zero vector");
    }
    amplitudes_ /= n;
    return *this;
  }

  PureState normalized() const {
    PureState copy = *this;
    copy.normalize();
    return copy;
  }

  DensityMatrix<Scalar> density() const;

 private:
  Vector<Scalar> amplitudes_;
  Labels labels_;
};

// A density matrix over an ordered list of named qubit subsystems. The
// constructor enforces Hermiticity, unit trace and positive semidefiniteness
// (up to the numerical slacks above), so every value of this type is a valid
// physical state.
template <typename Scalar = double>
class DensityMatrix {
 public:
  DensityMatrix(Matrix<Scalar> entries, Labels labels)
      : entries_(std::move(entries)), labels_(std::move(labels)) {
    detail::require_unique_labels(labels_);
    detail::require_square_power_of_two(entries_);
    if (static_cast<std::size_t>(entries_.rows()) != detail::pow2(labels_.size())) {
      throw std::invalid_argument("entry matrix dimension must be 2^(number of labels)");
    }
    if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > Scalar(kHermitianTol)) {
      throw std::invalid_argument("density matrix must be Hermitian");
    }
    if (std::abs(entries_.trace() - Complex<Scalar>(1, 0)) > Scalar(kTraceTol)) {
      throw std::invalid_argument("density matrix must have unit trace");
    }
    Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(entries_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < Scalar(kEigenvalueFloor)) {
      throw std::invalid_argument("density matrix must be positive semidefinite");
    }
  }

  const Matrix<Scalar>& entries() const { return entries_; }
  const Labels& labels() const { return labels_; }
  std::size_t num_qubits() const { return labels_.size(); }
  Eigen::Index dim() const { return entries_.rows(); }

 private:
  Matrix<Scalar> entries_;
  Labels labels_;
};

template <typename Scalar>
DensityMatrix<Scalar> PureState<Scalar>::density() const {
  if (std::abs(norm() - Scalar(1)) > Scalar(1e-9)) {
    throw std::invalid_argument("state must be normalized before forming a density matrix");
  }
  return DensityMatrix<Scalar>(amplitudes_ * amplitudes_.adjoint(), labels_);
}

// A unitary or a trace-preserving Kraus set, acting on a fixed number of
// qubits. Bound to subsystems only at application time (see apply_on).
template <typename Scalar = double>
class OperatorMatrix {
 public:
  enum class Kind { kUnitary, kKrausSet };

  static OperatorMatrix unitary(Matrix<Scalar> u) {
    detail::require_square_power_of_two(u);
    const Matrix<Scalar> gram = u.adjoint() * u;
    const Matrix<Scalar> id = Matrix<Scalar>::Identity(u.rows(), u.cols());
    if ((gram - id).cwiseAbs().maxCoeff() > Scalar(kUnitaryTol)) {
      throw std::invalid_argument("operator is not unitary");
    }
    return OperatorMatrix(Kind::kUnitary, {std::move(u)});
  }

  static OperatorMatrix kraus(std::vector<Matrix<Scalar>> ops) {
    if (ops.empty()) {
      throw std::invalid_argument("kraus set must be nonempty");
    }
    detail::require_square_power_of_two(ops.front());
    Matrix<Scalar> sum = Matrix<Scalar>::Zero(ops.front().rows(), ops.front().cols());
    for (const auto& k : ops) {
      if (k.rows() != sum.rows() || k.cols() != sum.cols()) {
        throw std::invalid_argument("kraus operators must share one dimension");
      }
      sum += k.adjoint() * k;
    }
    const Matrix<Scalar> id = Matrix<Scalar>::Identity(sum.rows(), sum.cols());
    if ((sum - id).cwiseAbs().maxCoeff() > Scalar(kUnitaryTol)) {
      throw std::invalid_argument("kraus set is not trace preserving");
    }
    return OperatorMatrix(Kind::kKrausSet, std::move(ops));
  }

  Kind kind() const { return kind_; }

  // Number of qubits acted on.
  std::size_t arity() const {
    std::size_t n = 0;
    while (detail::pow2(n) < static_cast<std::size_t>(ops_.front().rows())) ++n;
    return n;
  }

  Eigen::Index dim() const { return ops_.front().rows(); }

  const Matrix<Scalar>& matrix() const {
    if (kind_ != Kind::kUnitary) {
      throw std::logic_error("matrix() is only available for unitary operators");
    }
    return ops_.front();
  }

  const std::vector<Matrix<Scalar>>& kraus_ops() const { return ops_; }

 private:
  OperatorMatrix(Kind kind, std::vector<Matrix<Scalar>> ops)
      : kind_(kind), ops_(std::move(ops)) {}

  Kind kind_;
  std::vector<Matrix<Scalar>> ops_;
};

// ---------------------------------------------------------------------------
// Free functions on states and operators.

template <typename Scalar>
PureState<Scalar> tensor_product(const PureState<Scalar>& a, const PureState<Scalar>& b) {
  Labels labels = a.labels();
  for (const auto& name : b.labels()) {
    if (std::find(labels.begin(), labels.end(), name) != labels.end()) {
      throw std::invalid_argument("tensor factors share the label: " + name);
    }
    labels.push_back(name);
  }
  Vector<Scalar> amps = Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes());
  return PureState<Scalar>(std::move(amps), std::move(labels));
}

template <typename Scalar>
DensityMatrix<Scalar> tensor_product(const DensityMatrix<Scalar>& a,
                                     const DensityMatrix<Scalar>& b) {
  Labels labels = a.labels();
  for (const auto& name : b.labels()) {
    if (std::find(labels.begin(), labels.end(), name) != labels.end()) {
      throw std::invalid_argument("tensor factors share the label: " + name);
    }
    labels.push_back(name);
  }
  Matrix<Scalar> entries = Eigen::kroneckerProduct(a.entries(), b.entries());
  return DensityMatrix<Scalar>(std::move(entries), std::move(labels));
}

// Embeds a k-qubit operator matrix as identity on every label outside
// `targets`. The first target owns the operator's most significant bit.
template <typename Scalar>
Matrix<Scalar> embed_operator(const Matrix<Scalar>& op, const Labels& targets,
                              const Labels& full_labels) {
  detail::require_square_power_of_two(op);
  const auto positions = detail::label_positions(full_labels, targets);
  const std::size_t n = full_labels.size();
  const std::size_t m = targets.size();
  if (static_cast<std::size_t>(op.rows()) != detail::pow2(m)) {
    throw std::invalid_argument("operator arity does not match the number of targets");
  }
  const std::size_t dim = detail::pow2(n);
  const std::size_t sub_dim = detail::pow2(m);

  std::size_t target_mask = 0;
  for (const auto p : positions) {
    target_mask |= std::size_t{1} << (n - 1 - p);
  }

  Matrix<Scalar> out = Matrix<Scalar>::Zero(static_cast<Eigen::Index>(dim),
                                            static_cast<Eigen::Index>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t sub_col = 0;
    for (std::size_t k = 0; k < m; ++k) {
      sub_col |= detail::bit_of(col, n, positions[k]) << (m - 1 - k);
    }
    const std::size_t rest = col & ~target_mask;
    for (std::size_t sub_row = 0; sub_row < sub_dim; ++sub_row) {
      const std::size_t row = rest | detail::scatter_bits(sub_row, n, positions);
      out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
          op(static_cast<Eigen::Index>(sub_row), static_cast<Eigen::Index>(sub_col));
    }
  }
  return out;
}

template <typename Scalar>
PureState<Scalar> apply_on(const OperatorMatrix<Scalar>& op, const Labels& targets,
                           const PureState<Scalar>& state) {
  if (op.kind() != OperatorMatrix<Scalar>::Kind::kUnitary) {
    throw std::invalid_argument("kraus sets act on density matrices, not pure states");
  }
  if (op.arity() != targets.size()) {
    throw std::invalid_argument("operator arity does not match the number of targets");
  }
  const Matrix<Scalar> full = embed_operator(op.matrix(), targets, state.labels());
  return PureState<Scalar>(full * state.amplitudes(), state.labels());
}

template <typename Scalar>
DensityMatrix<Scalar> apply_on(const OperatorMatrix<Scalar>& op, const Labels& targets,
                               const DensityMatrix<Scalar>& state) {
  if (op.arity() != targets.size()) {
    throw std::invalid_argument("operator arity does not match the number of targets");
  }
  Matrix<Scalar> out = Matrix<Scalar>::Zero(state.dim(), state.dim());
  for (const auto& k : op.kraus_ops()) {
    const Matrix<Scalar> full = embed_operator(k, targets, state.labels());
    out += full * state.entries() * full.adjoint();
  }
  return DensityMatrix<Scalar>(std::move(out), state.labels());
}

// Partial trace of raw matrix entries; `keep` is reported in the order the
// kept labels appear in `labels`. Usable on unnormalized intermediates.
template <typename Scalar>
std::pair<Matrix<Scalar>, Labels> partial_trace_raw(const Matrix<Scalar>& entries,
                                                    const Labels& labels, const Labels& keep) {
  if (keep.empty()) {
    throw std::invalid_argument("partial trace must keep at least one label");
  }
  auto keep_positions = detail::label_positions(labels, keep);
  std::sort(keep_positions.begin(), keep_positions.end());

  const std::size_t n = labels.size();
  std::vector<std::size_t> traced_positions;
  for (std::size_t p = 0; p < n; ++p) {
    if (!std::binary_search(keep_positions.begin(), keep_positions.end(), p)) {
      traced_positions.push_back(p);
    }
  }

  Labels kept_labels;
  kept_labels.reserve(keep_positions.size());
  for (const auto p : keep_positions) {
    kept_labels.push_back(labels[p]);
  }

  const std::size_t keep_dim = detail::pow2(keep_positions.size());
  const std::size_t traced_dim = detail::pow2(traced_positions.size());
  Matrix<Scalar> out = Matrix<Scalar>::Zero(static_cast<Eigen::Index>(keep_dim),
                                            static_cast<Eigen::Index>(keep_dim));
  for (std::size_t a = 0; a < keep_dim; ++a) {
    const std::size_t a_bits = detail::scatter_bits(a, n, keep_positions);
    for (std::size_t b = 0; b < keep_dim; ++b) {
      const std::size_t b_bits = detail::scatter_bits(b, n, keep_positions);
      Complex<Scalar> sum(0, 0);
      for (std::size_t r = 0; r < traced_dim; ++r) {
        const std::size_t r_bits = detail::scatter_bits(r, n, traced_positions);
        sum += entries(static_cast<Eigen::Index>(a_bits | r_bits),
                       static_cast<Eigen::Index>(b_bits | r_bits));
      }
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = sum;
    }
  }
  return {std::move(out), std::move(kept_labels)};
}

template <typename Scalar>
DensityMatrix<Scalar> partial_trace(const DensityMatrix<Scalar>& rho, const Labels& keep) {
  auto [entries, labels] = partial_trace_raw(rho.entries(), rho.labels(), keep);
  return DensityMatrix<Scalar>(std::move(entries), std::move(labels));
}

// <psi| rho |psi> for a pure target, clamped to [0, 1].
template <typename Scalar>
Scalar fidelity_pure(const PureState<Scalar>& target, const DensityMatrix<Scalar>& rho) {
  if (target.dim() != rho.dim()) {
    throw std::invalid_argument("fidelity requires matching dimensions");
  }
  const Complex<Scalar> value =
      (target.amplitudes().adjoint() * rho.entries() * target.amplitudes())(0);
  if (std::abs(value.imag()) > Scalar(1e-9)) {
    throw std::invalid_argument("fidelity of a non-Hermitian matrix");
  }
  return std::clamp(value.real(), Scalar(0), Scalar(1));
}

namespace detail {

template <typename Scalar>
std::vector<std::size_t> reorder_index_map(const Labels& labels, const Labels& order) {
  if (order.size() != labels.size()) {
    throw std::invalid_argument("label order must be a permutation of the state labels");
  }
  const auto new_positions = label_positions(order, labels);  // labels[j] -> new position
  const std::size_t n = labels.size();
  const std::size_t dim = pow2(n);
  std::vector<std::size_t> map(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::size_t j = 0;
    for (std::size_t p = 0; p < n; ++p) {
      j |= bit_of(i, n, p) << (n - 1 - new_positions[p]);
    }
    map[i] = j;
  }
  return map;
}

}  // namespace detail

// The same state with its tensor factors listed in a new order.
template <typename Scalar>
PureState<Scalar> reordered(const PureState<Scalar>& state, const Labels& order) {
  const auto map = detail::reorder_index_map<Scalar>(state.labels(), order);
  Vector<Scalar> amps(state.dim());
  for (std::size_t i = 0; i < map.size(); ++i) {
    amps(static_cast<Eigen::Index>(map[i])) = state.amplitudes()(static_cast<Eigen::Index>(i));
  }
  return PureState<Scalar>(std::move(amps), order);
}

template <typename Scalar>
DensityMatrix<Scalar> reordered(const DensityMatrix<Scalar>& state, const Labels& order) {
  const auto map = detail::reorder_index_map<Scalar>(state.labels(), order);
  Matrix<Scalar> entries(state.dim(), state.dim());
  for (std::size_t i = 0; i < map.size(); ++i) {
    for (std::size_t j = 0; j < map.size(); ++j) {
      entries(static_cast<Eigen::Index>(map[i]), static_cast<Eigen::Index>(map[j])) =
          state.entries()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return DensityMatrix<Scalar>(std::move(entries), order);
}

// ---------------------------------------------------------------------------
// Fixed 2x2 building blocks.

template <typename Scalar = double>
Matrix<Scalar> identity2() {
  return Matrix<Scalar>::Identity(2, 2);
}

template <typename Scalar = double>
Matrix<Scalar> pauli_x() {
  Matrix<Scalar> m(2, 2);
  m << Complex<Scalar>(0, 0), Complex<Scalar>(1, 0),
       Complex<Scalar>(1, 0), Complex<Scalar>(0, 0);
  return m;
}

template <typename Scalar = double>
Matrix<Scalar> pauli_y() {
  Matrix<Scalar> m(2, 2);
  m << Complex<Scalar>(0, 0), Complex<Scalar>(0, -1),
       Complex<Scalar>(0, 1), Complex<Scalar>(0, 0);
  return m;
}

template <typename Scalar = double>
Matrix<Scalar> pauli_z() {
  Matrix<Scalar> m(2, 2);
  m << Complex<Scalar>(1, 0), Complex<Scalar>(0, 0),
       Complex<Scalar>(0, 0), Complex<Scalar>(-1, 0);
  return m;
}

template <typename Scalar = double>
Matrix<Scalar> hadamard2() {
  const Scalar inv_sqrt2 = Scalar(1) / std::sqrt(Scalar(2));
  Matrix<Scalar> m(2, 2);
  m << Complex<Scalar>(inv_sqrt2, 0), Complex<Scalar>(inv_sqrt2, 0),
       Complex<Scalar>(inv_sqrt2, 0), Complex<Scalar>(-inv_sqrt2, 0);
  return m;
}

}  // namespace telesim
