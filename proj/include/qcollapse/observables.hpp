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

// Spectral observables: Hermitian operators held as eigenvalue -> orthonormal
// eigenbasis branches. Collapse semantics only ever need eigenspaces, so the
// matrix form is derived on demand rather than stored.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcollapse/config.hpp"
#include "qcollapse/qcore.hpp"

namespace qcollapse {

enum class PauliAxis { kX, kY, kZ };

namespace detail {
struct ObservableAccess;
}

struct Branch {
  double eigenvalue = 0.0;
  std::vector<StateVector> basis;
};

class SpectralObservable {
 public:
  /// Validates that eigenvalues are separated by more than `config.cluster`
  /// and that the union of the bases is orthonormal and complete. `support`
  /// lists the 1-based sites the observable acts on (empty = every site).
  SpectralObservable(std::vector<Branch> branches, std::vector<int> support = {},
                     const Config& config = {});

  /// Diagonalises `m` with the Jacobi solver and groups eigenvalues within
  /// `config.cluster` into one branch.
  static SpectralObservable from_matrix(const MatrixOperator& m,
                                        const Config& config = {});
  static SpectralObservable identity(int n_qubits);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return std::size_t{1} << n_qubits_; }
  std::span<const Branch> branches() const noexcept { return branches_; }
  /// Sorted 1-based sites; always non-empty.
  std::span<const int> support() const noexcept { return support_; }
  std::vector<double> spectrum() const;

  /// Index of the branch whose eigenvalue is within `tol` of `eigenvalue`.
  std::optional<std::size_t> find_branch(double eigenvalue, double tol) const;

  /// P_i |v>.
  CVector project(std::size_t branch, std::span<const Complex> v) const;
  MatrixOperator projector(std::size_t branch) const;
  /// Σ λ_i P_i.
  MatrixOperator matrix() const;

 private:
  struct Trusted {};
  SpectralObservable(Trusted, std::vector<Branch> branches,
                     std::vector<int> support);

  friend struct detail::ObservableAccess;

  int n_qubits_ = 0;
  std::vector<Branch> branches_;
  std::vector<int> support_;
};

/// σ_axis on `site` of n qubits, branches {+1, -1}.
SpectralObservable pauli(PauliAxis axis, int site, int n_qubits);

/// Four-qubit observable with branches {+1: [plus]}, {-1: [minus]} and
/// {0: Gram-Schmidt completion over the computational basis in index order}.
SpectralObservable spin_zero_observable(const StateVector& plus,
                                        const StateVector& minus);

/// Alice's collective observable on sites 1-4: +1 on phi1, -1 on phi0,
/// 0 on the orthocomplement.
SpectralObservable observable_F();
/// Bob's counterpart built on (psi0, psi1); a four-qubit observable meant to
/// be embedded on sites 5-8.
SpectralObservable observable_G();

/// Lifts `obs` onto `sites` (first listed site = most significant qubit of
/// `obs`) of an n-qubit register as obs ⊗ I.
SpectralObservable embed(const SpectralObservable& obs, std::span<const int> sites,
                         int n_qubits, const Config& config = {});

/// Joint outcome of a set of commuting observables: one eigenvalue per
/// member, in member order.
using OutcomeTuple = std::vector<double>;

struct FunctionReport {
  bool is_function = false;
  /// Present iff is_function: joint outcome -> value of the target. Only
  /// joint eigenspaces of nonzero dimension appear.
  std::optional<std::vector<std::pair<OutcomeTuple, double>>> value_table;
  struct Witness {
    OutcomeTuple joint_outcome;
    std::size_t eigenspace_dim = 0;
    /// Fraction of the joint eigenspace's trace carried by each target branch.
    std::vector<std::pair<double, double>> weight_by_value;
    std::string description;
  };
  /// Present iff !is_function.
  std::optional<Witness> witness;
};

/// Decides whether `f` is a function (in the joint-eigenspace sense) of the
/// commuting `generators`: every joint eigenspace must lie inside a single
/// eigenspace of `f`. Throws kNonCommuting or kDimensionMismatch.
FunctionReport is_function_of(const SpectralObservable& f,
                              std::span<const SpectralObservable> generators,
                              const Config& config = {});

/// Either one 2x2 unitary applied to every site, or one unitary per site.
struct RotationPattern {
  enum class Kind { kEqualOnAll, kPerSite };
  Kind kind = Kind::kEqualOnAll;
  std::vector<MatrixOperator> unitaries;

  static RotationPattern equal_on_all(MatrixOperator u);
  static RotationPattern per_site(std::vector<MatrixOperator> us);
  /// V = u_1 ⊗ ... ⊗ u_n for an n-qubit register.
  MatrixOperator full(int n_qubits) const;
};

struct InvarianceReport {
  bool invariant = false;
  double max_deviation = 0.0;
  int trials = 0;
  std::vector<double> deviations;  // one per trial
};

/// max over trials of ‖V M V† - M‖_max with M = obs.matrix(). Throws
/// kNotUnitary for any non-unitary factor, kDimensionMismatch when a
/// per-site pattern does not match the qubit count.
InvarianceReport check_invariance(const SpectralObservable& obs,
                                  std::span<const RotationPattern> trials,
                                  const Config& config = {});
InvarianceReport check_invariance(const SpectralObservable& obs,
                                  const RotationPattern& pattern,
                                  const Config& config = {});

/// Haar-random SU(2) element from a normalised Gaussian quaternion.
MatrixOperator random_su2(std::uint64_t seed);

/// `count` seeded patterns on n qubits. Per-site patterns draw an
/// independent rotation for every site.
std::vector<RotationPattern> random_patterns(RotationPattern::Kind kind,
                                             int n_qubits, int count,
                                             std::uint64_t seed);

/// Deterministic 64-bit mixing of (seed, stream) for derived RNG seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace qcollapse
