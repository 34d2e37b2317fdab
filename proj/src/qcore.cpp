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

#include "qcollapse/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <fmt/format.h>

#include "qcollapse/error.hpp"

namespace qcollapse {
namespace {

bool all_finite(std::span<const Complex> v) {
  return std::all_of(v.begin(), v.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorKind::kDimensionMismatch,
                fmt::format("{}: dimensions {} and {} differ", what, a, b));
  }
}

}  // namespace

bool is_power_of_two(std::size_t n) noexcept {
  return n != 0 && (n & (n - 1)) == 0;
}

int log2_exact(std::size_t n) {
  if (!is_power_of_two(n)) {
    throw Error(ErrorKind::kDimensionMismatch,
                fmt::format("dimension {} is not a power of two", n));
  }
  int k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(int n_qubits, CVector amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  if (n_qubits < 1 || n_qubits > kAbsoluteMaxQubits) {
    throw Error(ErrorKind::kCapacity,
                fmt::format("qubit count {} outside [1, {}]", n_qubits,
                            kAbsoluteMaxQubits));
  }
  if (amps_.size() != (std::size_t{1} << n_qubits)) {
    throw Error(ErrorKind::kDimensionMismatch,
                fmt::format("{} amplitudes for {} qubits", amps_.size(),
                            n_qubits));
  }
  if (!all_finite(amps_)) {
    throw Error(ErrorKind::kNotFinite, "non-finite amplitude");
  }
}

StateVector StateVector::basis(int n_qubits, std::size_t index) {
  if (n_qubits < 1 || n_qubits > kAbsoluteMaxQubits) {
    throw Error(ErrorKind::kCapacity,
                fmt::format("qubit count {} out of range", n_qubits));
  }
  CVector amps(std::size_t{1} << n_qubits);
  if (index >= amps.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("basis index {} out of range", index));
  }
  amps[index] = 1.0;
  return StateVector(n_qubits, std::move(amps));
}

StateVector StateVector::from_amplitudes(CVector amplitudes) {
  const int n = log2_exact(amplitudes.size());
  return StateVector(n, std::move(amplitudes));
}

double StateVector::squared_norm() const noexcept {
  double acc = 0.0;
  for (const auto& a : amps_) acc += std::norm(a);
  return acc;
}

double StateVector::norm() const noexcept { return std::sqrt(squared_norm()); }

bool StateVector::is_normalized(double tol) const noexcept {
  return std::abs(squared_norm() - 1.0) <= tol;
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) {
    throw Error(ErrorKind::kInvalidArgument, "cannot normalize the zero vector");
  }
  return *this * Complex(1.0 / n);
}

StateVector StateVector::operator+(const StateVector& other) const {
  require_same_dim(dim(), other.dim(), "state sum");
  CVector out(amps_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += other.amps_[i];
  return StateVector(n_qubits_, std::move(out));
}

StateVector StateVector::operator-(const StateVector& other) const {
  require_same_dim(dim(), other.dim(), "state difference");
  CVector out(amps_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= other.amps_[i];
  return StateVector(n_qubits_, std::move(out));
}

StateVector StateVector::operator*(Complex scale) const {
  CVector out(amps_);
  for (auto& a : out) a *= scale;
  return StateVector(n_qubits_, std::move(out));
}

// ---------------------------------------------------------------------------
// MatrixOperator

MatrixOperator::MatrixOperator(std::size_t dim, CVector entries)
    : dim_(dim), data_(std::move(entries)) {
  if (dim == 0 || data_.size() != dim * dim) {
    throw Error(ErrorKind::kDimensionMismatch,
                fmt::format("{} entries for a {}x{} matrix", data_.size(), dim,
                            dim));
  }
  if (!all_finite(data_)) {
    throw Error(ErrorKind::kNotFinite, "non-finite matrix entry");
  }
}

MatrixOperator::MatrixOperator(
    std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
  data_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) {
      throw Error(ErrorKind::kDimensionMismatch, "matrix must be square");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
  if (dim_ == 0) throw Error(ErrorKind::kDimensionMismatch, "empty matrix");
  if (!all_finite(data_)) {
    throw Error(ErrorKind::kNotFinite, "non-finite matrix entry");
  }
}

MatrixOperator MatrixOperator::identity(std::size_t dim) {
  CVector d(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) d[i * dim + i] = 1.0;
  return MatrixOperator(dim, std::move(d));
}

MatrixOperator MatrixOperator::zero(std::size_t dim) {
  return MatrixOperator(dim, CVector(dim * dim));
}

MatrixOperator MatrixOperator::outer(std::span<const Complex> v, double weight) {
  const std::size_t n = v.size();
  CVector d(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    if (v[r] == Complex{}) continue;
    for (std::size_t c = 0; c < n; ++c) {
      d[r * n + c] = weight * v[r] * std::conj(v[c]);
    }
  }
  return MatrixOperator(n, std::move(d));
}

MatrixOperator MatrixOperator::adjoint() const {
  CVector d(data_.size());
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      d[c * dim_ + r] = std::conj(data_[r * dim_ + c]);
    }
  }
  return MatrixOperator(dim_, std::move(d));
}

double MatrixOperator::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool MatrixOperator::is_hermitian(double tol) const noexcept {
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = r; c < dim_; ++c) {
      if (std::abs(data_[r * dim_ + c] - std::conj(data_[c * dim_ + r])) >=
          tol) {
        return false;
      }
    }
  }
  return true;
}

bool MatrixOperator::is_unitary(double tol) const {
  return max_abs_diff(adjoint() * *this, identity(dim_)) <= tol;
}

MatrixOperator MatrixOperator::operator*(const MatrixOperator& other) const {
  require_same_dim(dim_, other.dim_, "matrix product");
  const std::size_t n = dim_;
  CVector d(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex a = data_[r * n + k];
      if (a == Complex{}) continue;
      const Complex* brow = &other.data_[k * n];
      Complex* drow = &d[r * n];
      for (std::size_t c = 0; c < n; ++c) drow[c] += a * brow[c];
    }
  }
  return MatrixOperator(n, std::move(d));
}

MatrixOperator MatrixOperator::operator+(const MatrixOperator& other) const {
  require_same_dim(dim_, other.dim_, "matrix sum");
  CVector d(data_);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] += other.data_[i];
  return MatrixOperator(dim_, std::move(d));
}

MatrixOperator MatrixOperator::operator-(const MatrixOperator& other) const {
  require_same_dim(dim_, other.dim_, "matrix difference");
  CVector d(data_);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] -= other.data_[i];
  return MatrixOperator(dim_, std::move(d));
}

MatrixOperator MatrixOperator::operator*(Complex scale) const {
  CVector d(data_);
  for (auto& z : d) z *= scale;
  return MatrixOperator(dim_, std::move(d));
}

// ---------------------------------------------------------------------------
// Free functions

StateVector tensor(const StateVector& a, const StateVector& b,
                   const Config& config) {
  const int n = a.n_qubits() + b.n_qubits();
  if (n > config.max_qubits) {
    throw Error(ErrorKind::kCapacity,
                fmt::format("tensor product needs {} qubits, limit is {}", n,
                            config.max_qubits));
  }
  CVector out(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j) {
      out[i * b.dim() + j] = a[i] * b[j];
    }
  }
  return StateVector(n, std::move(out));
}

MatrixOperator kron(const MatrixOperator& a, const MatrixOperator& b) {
  const std::size_t na = a.dim(), nb = b.dim(), n = na * nb;
  CVector d(n * n);
  for (std::size_t ar = 0; ar < na; ++ar) {
    for (std::size_t ac = 0; ac < na; ++ac) {
      const Complex x = a(ar, ac);
      if (x == Complex{}) continue;
      for (std::size_t br = 0; br < nb; ++br) {
        for (std::size_t bc = 0; bc < nb; ++bc) {
          d[(ar * nb + br) * n + (ac * nb + bc)] = x * b(br, bc);
        }
      }
    }
  }
  return MatrixOperator(n, std::move(d));
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  require_same_dim(a.size(), b.size(), "inner product");
  Complex acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

Complex inner(const StateVector& a, const StateVector& b) {
  return inner(a.amplitudes(), b.amplitudes());
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(inner(a, b));
}

CVector apply(const MatrixOperator& m, std::span<const Complex> v) {
  require_same_dim(m.dim(), v.size(), "matrix-vector product");
  const std::size_t n = m.dim();
  CVector out(n);
  for (std::size_t r = 0; r < n; ++r) {
    Complex acc{};
    for (std::size_t c = 0; c < n; ++c) acc += m(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

StateVector apply(const MatrixOperator& m, const StateVector& s) {
  return StateVector(s.n_qubits(), apply(m, s.amplitudes()));
}

MatrixOperator commutator(const MatrixOperator& a, const MatrixOperator& b) {
  require_same_dim(a.dim(), b.dim(), "commutator");
  return a * b - b * a;
}

double max_abs_diff(const MatrixOperator& a, const MatrixOperator& b) {
  require_same_dim(a.dim(), b.dim(), "matrix comparison");
  double m = 0.0;
  auto x = a.entries(), y = b.entries();
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

double max_abs_diff(const StateVector& a, const StateVector& b) {
  require_same_dim(a.dim(), b.dim(), "state comparison");
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// ---------------------------------------------------------------------------
// Jacobi eigensolver

SpectralDecomposition hermitian_eigen(const MatrixOperator& m,
                                      const Config& config) {
  if (!m.is_hermitian(config.herm)) {
    throw Error(ErrorKind::kNotHermitian,
                "hermitian_eigen: input is not Hermitian");
  }
  const std::size_t n = m.dim();
  CVector a(m.entries().begin(), m.entries().end());
  CVector v(n * n);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  auto at = [n](CVector& x, std::size_t r, std::size_t c) -> Complex& {
    return x[r * n + c];
  };

  // Symmetrise exactly so the rotations see a truly Hermitian matrix.
  for (std::size_t r = 0; r < n; ++r) {
    at(a, r, r) = at(a, r, r).real();
    for (std::size_t c = r + 1; c < n; ++c) {
      const Complex h = 0.5 * (at(a, r, c) + std::conj(at(a, c, r)));
      at(a, r, c) = h;
      at(a, c, r) = std::conj(h);
    }
  }

  auto off_norm = [&]() {
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = r + 1; c < n; ++c) s += 2.0 * std::norm(at(a, r, c));
    }
    return std::sqrt(s);
  };
  double frob = 0.0;
  for (const auto& z : a) frob += std::norm(z);
  const double threshold = config.eig * std::max(1.0, std::sqrt(frob));

  int sweep = 0;
  double residual = off_norm();
  while (residual > threshold) {
    if (sweep >= config.max_sweeps) {
      throw Error(ErrorKind::kNotConverged,
                  fmt::format("hermitian_eigen: no convergence after {} "
                              "sweeps, residual {:.3e}",
                              sweep, residual));
    }
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = at(a, p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const Complex phase = apq / r;
        // Reduce the 2x2 block to a real symmetric one with diag(1, phase*),
        // then zero it with a real rotation.
        const double theta = (at(a, q, q).real() - at(a, p, p).real()) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex jpp = c, jpq = s;
        const Complex jqp = -s * std::conj(phase), jqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = at(a, k, p), akq = at(a, k, q);
          at(a, k, p) = akp * jpp + akq * jqp;
          at(a, k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = at(a, p, k), aqk = at(a, q, k);
          at(a, p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          at(a, q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        at(a, p, q) = 0.0;
        at(a, q, p) = 0.0;
        at(a, p, p) = at(a, p, p).real();
        at(a, q, q) = at(a, q, q).real();

        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = at(v, k, p), vkq = at(v, k, q);
          at(v, k, p) = vkp * jpp + vkq * jqp;
          at(v, k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
    residual = off_norm();
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return at(a, i, i).real() > at(a, j, j).real();
  });

  SpectralDecomposition out;
  out.off_diagonal_residual = residual;
  out.sweeps = sweep;
  for (std::size_t idx : order) {
    out.eigenvalues.push_back(at(a, idx, idx).real());
    CVector col(n);
    for (std::size_t k = 0; k < n; ++k) col[k] = at(v, k, idx);
    out.eigenvectors.push_back(std::move(col));
  }
  return out;
}

MatrixOperator reconstruct(const SpectralDecomposition& d) {
  if (d.eigenvectors.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "empty decomposition");
  }
  auto m = MatrixOperator::zero(d.eigenvectors.front().size());
  for (std::size_t i = 0; i < d.eigenvalues.size(); ++i) {
    m = m + MatrixOperator::outer(d.eigenvectors[i], d.eigenvalues[i]);
  }
  return m;
}

CVector interleave(std::span<const Complex> part, std::span<const int> sites,
                   std::span<const Complex> rest, int n_qubits) {
  const int k = static_cast<int>(sites.size());
  if (part.size() != (std::size_t{1} << k) ||
      rest.size() != (std::size_t{1} << (n_qubits - k))) {
    throw Error(ErrorKind::kDimensionMismatch,
                "interleave: operand sizes do not match the site layout");
  }
  std::vector<bool> used(static_cast<std::size_t>(n_qubits) + 1, false);
  for (int s : sites) {
    if (s < 1 || s > n_qubits || used[s]) {
      throw Error(ErrorKind::kInvalidArgument,
                  fmt::format("interleave: bad or repeated site {}", s));
    }
    used[s] = true;
  }
  std::vector<int> others;
  for (int s = 1; s <= n_qubits; ++s) {
    if (!used[s]) others.push_back(s);
  }
  auto scatter = [n_qubits](std::size_t bits, std::span<const int> where) {
    std::size_t idx = 0;
    const int m = static_cast<int>(where.size());
    for (int b = 0; b < m; ++b) {
      if ((bits >> (m - 1 - b)) & 1U) idx |= std::size_t{1} << (n_qubits - where[b]);
    }
    return idx;
  };
  CVector out(std::size_t{1} << n_qubits);
  for (std::size_t i = 0; i < part.size(); ++i) {
    if (part[i] == Complex{}) continue;
    const std::size_t hi = scatter(i, sites);
    for (std::size_t j = 0; j < rest.size(); ++j) {
      out[hi | scatter(j, others)] = part[i] * rest[j];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pauli helpers

MatrixOperator pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
MatrixOperator pauli_y() {
  return {{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}};
}
MatrixOperator pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

MatrixOperator embed_single(const MatrixOperator& op, int site, int n_qubits) {
  if (op.dim() != 2) {
    throw Error(ErrorKind::kDimensionMismatch, "embed_single expects a 2x2 operator");
  }
  if (site < 1 || site > n_qubits) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("site {} outside [1, {}]", site, n_qubits));
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  const int shift = n_qubits - site;
  MatrixBuilder b(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const std::size_t rbit = (r >> shift) & 1U;
    for (std::size_t cbit = 0; cbit < 2; ++cbit) {
      const std::size_t c = (r & ~(std::size_t{1} << shift)) | (cbit << shift);
      b.at(r, c) = op(rbit, cbit);
    }
  }
  return std::move(b).build();
}

}  // namespace qcollapse
