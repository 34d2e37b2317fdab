// Copyright 2026 The qcollapse Authors
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

// Dense complex linear algebra for small multi-qubit registers.
//
// Index convention: qubit 1 is the most significant bit of an amplitude
// index, so |q1 q2 ... qn> sits at index q1*2^(n-1) + ... + qn.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "qcollapse/config.hpp"

namespace qcollapse {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Hard ceiling on register size; `Config::max_qubits` is the soft limit
/// enforced by tensor products.
inline constexpr int kAbsoluteMaxQubits = 16;

class StateVector {
 public:
  /// Throws kDimensionMismatch unless `amplitudes.size() == 2^n_qubits`,
  /// kNotFinite on NaN/Inf.
  StateVector(int n_qubits, CVector amplitudes);

  /// Computational basis state |index> on n qubits.
  static StateVector basis(int n_qubits, std::size_t index);
  /// Infers the qubit count from the length (must be a power of two).
  static StateVector from_amplitudes(CVector amplitudes);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  double squared_norm() const noexcept;
  double norm() const noexcept;
  bool is_normalized(double tol) const noexcept;
  /// Throws kInvalidArgument on the zero vector.
  StateVector normalized() const;

  StateVector operator+(const StateVector& other) const;
  StateVector operator-(const StateVector& other) const;
  StateVector operator*(Complex scale) const;

 private:
  int n_qubits_;
  CVector amps_;
};

inline StateVector operator*(Complex scale, const StateVector& s) {
  return s * scale;
}

/// Square complex matrix, row-major.
class MatrixOperator {
 public:
  MatrixOperator(std::size_t dim, CVector entries);
  MatrixOperator(std::initializer_list<std::initializer_list<Complex>> rows);

  static MatrixOperator identity(std::size_t dim);
  static MatrixOperator zero(std::size_t dim);
  /// |v><v| scaled by `weight`.
  static MatrixOperator outer(std::span<const Complex> v, double weight = 1.0);

  std::size_t dim() const noexcept { return dim_; }
  std::span<const Complex> entries() const noexcept { return data_; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * dim_ + c];
  }

  MatrixOperator adjoint() const;
  double max_abs() const noexcept;
  bool is_hermitian(double tol) const noexcept;
  bool is_unitary(double tol) const;

  MatrixOperator operator*(const MatrixOperator& other) const;
  MatrixOperator operator+(const MatrixOperator& other) const;
  MatrixOperator operator-(const MatrixOperator& other) const;
  MatrixOperator operator*(Complex scale) const;

 private:
  std::size_t dim_;
  CVector data_;
};

/// Mutable staging area for building a MatrixOperator entry by entry.
class MatrixBuilder {
 public:
  explicit MatrixBuilder(std::size_t dim) : dim_(dim), data_(dim * dim) {}
  Complex& at(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  MatrixOperator build() && { return MatrixOperator(dim_, std::move(data_)); }

 private:
  std::size_t dim_;
  CVector data_;
};

struct SpectralDecomposition {
  std::vector<double> eigenvalues;  // descending
  std::vector<CVector> eigenvectors;  // orthonormal, paired with eigenvalues
  double off_diagonal_residual = 0.0;
  int sweeps = 0;
};

/// a ⊗ b. Throws kCapacity when the result exceeds `config.max_qubits`.
StateVector tensor(const StateVector& a, const StateVector& b,
                   const Config& config = {});
MatrixOperator kron(const MatrixOperator& a, const MatrixOperator& b);

/// <a|b>, conjugate-linear in `a`.
Complex inner(const StateVector& a, const StateVector& b);
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
/// |<a|b>|^2 for unit vectors.
double fidelity(const StateVector& a, const StateVector& b);

StateVector apply(const MatrixOperator& m, const StateVector& s);
CVector apply(const MatrixOperator& m, std::span<const Complex> v);

/// ab - ba.
MatrixOperator commutator(const MatrixOperator& a, const MatrixOperator& b);

double max_abs_diff(const MatrixOperator& a, const MatrixOperator& b);
double max_abs_diff(const StateVector& a, const StateVector& b);

/// Cyclic Jacobi diagonalisation of a Hermitian matrix using 2x2 complex
/// rotations. Throws kNotHermitian, or kNotConverged (message carries the
/// residual) after `config.max_sweeps` sweeps.
SpectralDecomposition hermitian_eigen(const MatrixOperator& m,
                                      const Config& config = {});

/// Σ λ_i |v_i><v_i|.
MatrixOperator reconstruct(const SpectralDecomposition& d);

MatrixOperator pauli_x();
MatrixOperator pauli_y();
MatrixOperator pauli_z();

/// I ⊗ ... ⊗ op ⊗ ... ⊗ I with `op` (2x2) on 1-based `site` of n qubits.
MatrixOperator embed_single(const MatrixOperator& op, int site, int n_qubits);

/// Places `part` on the 1-based `sites` (first listed site = most significant
/// bit of `part`) and `rest` on the remaining sites in increasing order,
/// returning the n-qubit amplitude vector part ⊗ rest up to that relabelling.
CVector interleave(std::span<const Complex> part, std::span<const int> sites,
                   std::span<const Complex> rest, int n_qubits);

/// True when `n` is a power of two; `log2_exact` returns the exponent.
bool is_power_of_two(std::size_t n) noexcept;
int log2_exact(std::size_t n);

}  // namespace qcollapse
