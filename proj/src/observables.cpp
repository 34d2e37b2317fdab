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

#include "qcollapse/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "qcollapse/error.hpp"
#include "qcollapse/states.hpp"

namespace qcollapse {

namespace detail {
struct ObservableAccess {
  static SpectralObservable make(std::vector<Branch> branches,
                                 std::vector<int> support) {
    return SpectralObservable(SpectralObservable::Trusted{}, std::move(branches),
                              std::move(support));
  }
};
}  // namespace detail

namespace {

using detail::ObservableAccess;

std::vector<int> all_sites(int n) {
  std::vector<int> s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) s[i] = i + 1;
  return s;
}

void sort_branches(std::vector<Branch>& branches) {
  std::stable_sort(branches.begin(), branches.end(),
                   [](const Branch& a, const Branch& b) {
                     return a.eigenvalue > b.eigenvalue;
                   });
}

// Orthonormalises `candidate` against `basis` (two Gram-Schmidt passes).
// Returns the residual norm before normalisation.
double orthogonalize(CVector& candidate, std::span<const CVector> basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) {
      const Complex c = inner(b, candidate);
      for (std::size_t i = 0; i < candidate.size(); ++i) candidate[i] -= c * b[i];
    }
  }
  double n = 0.0;
  for (const auto& z : candidate) n += std::norm(z);
  n = std::sqrt(n);
  if (n > 0.0) {
    for (auto& z : candidate) z /= n;
  }
  return n;
}

// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double standard_normal(std::mt19937_64& rng) {
  // Box-Muller; 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

// ---------------------------------------------------------------------------
// SpectralObservable

SpectralObservable::SpectralObservable(Trusted, std::vector<Branch> branches,
                                       std::vector<int> support)
    : branches_(std::move(branches)), support_(std::move(support)) {
  n_qubits_ = branches_.front().basis.front().n_qubits();
  sort_branches(branches_);
  if (support_.empty()) support_ = all_sites(n_qubits_);
}

SpectralObservable::SpectralObservable(std::vector<Branch> branches,
                                       std::vector<int> support,
                                       const Config& config)
    : branches_(std::move(branches)), support_(std::move(support)) {
  if (branches_.empty() || branches_.front().basis.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "observable needs a non-empty branch");
  }
  n_qubits_ = branches_.front().basis.front().n_qubits();
  sort_branches(branches_);

  std::vector<const StateVector*> all;
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    const Branch& b = branches_[i];
    if (!std::isfinite(b.eigenvalue)) {
      throw Error(ErrorKind::kNotFinite, "non-finite eigenvalue");
    }
    if (b.basis.empty()) {
      throw Error(ErrorKind::kInvalidArgument,
                  fmt::format("branch {} has an empty eigenbasis", b.eigenvalue));
    }
    if (i > 0 && branches_[i - 1].eigenvalue - b.eigenvalue <= config.cluster) {
      throw Error(ErrorKind::kInvalidArgument,
                  fmt::format("eigenvalues {} and {} are not distinct",
                              branches_[i - 1].eigenvalue, b.eigenvalue));
    }
    for (const auto& v : b.basis) {
      if (v.n_qubits() != n_qubits_) {
        throw Error(ErrorKind::kDimensionMismatch,
                    "eigenvectors of differing dimension");
      }
      all.push_back(&v);
    }
  }
  if (all.size() != dim()) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("eigenbases hold {} vectors, need {} for completeness",
                            all.size(), dim()));
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i; j < all.size(); ++j) {
      const Complex g = inner(*all[i], *all[j]);
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(g - expected) > config.orth) {
        throw Error(ErrorKind::kInvalidArgument,
                    fmt::format("eigenvectors {} and {} are not orthonormal "
                                "(|<i|j> - delta| = {:.3e})",
                                i, j, std::abs(g - expected)));
      }
    }
  }
  if (support_.empty()) {
    support_ = all_sites(n_qubits_);
  } else {
    std::sort(support_.begin(), support_.end());
    if (std::adjacent_find(support_.begin(), support_.end()) != support_.end() ||
        support_.front() < 1 || support_.back() > n_qubits_) {
      throw Error(ErrorKind::kInvalidArgument, "invalid support site list");
    }
  }
}

SpectralObservable SpectralObservable::from_matrix(const MatrixOperator& m,
                                                   const Config& config) {
  const int n = log2_exact(m.dim());
  const SpectralDecomposition d = hermitian_eigen(m, config);
  std::vector<Branch> branches;
  std::size_t start = 0;
  while (start < d.eigenvalues.size()) {
    std::size_t end = start + 1;
    while (end < d.eigenvalues.size() &&
           d.eigenvalues[end - 1] - d.eigenvalues[end] <= config.cluster) {
      ++end;
    }
    Branch b;
    double sum = 0.0;
    for (std::size_t k = start; k < end; ++k) {
      sum += d.eigenvalues[k];
      b.basis.emplace_back(n, d.eigenvectors[k]);
    }
    b.eigenvalue = sum / static_cast<double>(end - start);
    branches.push_back(std::move(b));
    start = end;
  }
  return SpectralObservable(std::move(branches), {}, config);
}

SpectralObservable SpectralObservable::identity(int n_qubits) {
  Branch b{1.0, {}};
  const std::size_t dim = std::size_t{1} << n_qubits;
  for (std::size_t i = 0; i < dim; ++i) b.basis.push_back(StateVector::basis(n_qubits, i));
  return ObservableAccess::make({std::move(b)}, {});
}

std::vector<double> SpectralObservable::spectrum() const {
  std::vector<double> out;
  for (const auto& b : branches_) out.push_back(b.eigenvalue);
  return out;
}

std::optional<std::size_t> SpectralObservable::find_branch(double eigenvalue,
                                                           double tol) const {
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    if (std::abs(branches_[i].eigenvalue - eigenvalue) <= tol) return i;
  }
  return std::nullopt;
}

CVector SpectralObservable::project(std::size_t branch,
                                    std::span<const Complex> v) const {
  if (v.size() != dim()) {
    throw Error(ErrorKind::kDimensionMismatch,
                fmt::format("projecting a {}-dim vector with a {}-dim observable",
                            v.size(), dim()));
  }
  CVector out(dim());
  for (const auto& b : branches_.at(branch).basis) {
    const Complex c = inner(b.amplitudes(), v);
    if (c == Complex{}) continue;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * b[i];
  }
  return out;
}

MatrixOperator SpectralObservable::projector(std::size_t branch) const {
  MatrixBuilder m(dim());
  for (const auto& b : branches_.at(branch).basis) {
    for (std::size_t r = 0; r < dim(); ++r) {
      if (b[r] == Complex{}) continue;
      for (std::size_t c = 0; c < dim(); ++c) m.at(r, c) += b[r] * std::conj(b[c]);
    }
  }
  return std::move(m).build();
}

MatrixOperator SpectralObservable::matrix() const {
  MatrixBuilder m(dim());
  for (const auto& br : branches_) {
    if (br.eigenvalue == 0.0) continue;
    for (const auto& b : br.basis) {
      for (std::size_t r = 0; r < dim(); ++r) {
        if (b[r] == Complex{}) continue;
        const Complex w = br.eigenvalue * b[r];
        for (std::size_t c = 0; c < dim(); ++c) m.at(r, c) += w * std::conj(b[c]);
      }
    }
  }
  return std::move(m).build();
}

// ---------------------------------------------------------------------------
// Constructors

SpectralObservable pauli(PauliAxis axis, int site, int n_qubits) {
  if (n_qubits < 1 || n_qubits > kAbsoluteMaxQubits) {
    throw Error(ErrorKind::kCapacity, fmt::format("bad qubit count {}", n_qubits));
  }
  if (site < 1 || site > n_qubits) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("pauli site {} outside [1, {}]", site, n_qubits));
  }
  const double r = 1.0 / std::sqrt(2.0);
  CVector plus, minus;
  switch (axis) {
    case PauliAxis::kZ: plus = {1.0, 0.0}; minus = {0.0, 1.0}; break;
    case PauliAxis::kX: plus = {r, r}; minus = {r, -r}; break;
    case PauliAxis::kY:
      plus = {r, Complex(0, r)};
      minus = {r, Complex(0, -r)};
      break;
  }
  const int sites[] = {site};
  const std::size_t rest_dim = std::size_t{1} << (n_qubits - 1);
  Branch up{1.0, {}}, down{-1.0, {}};
  CVector rest(rest_dim);
  for (std::size_t j = 0; j < rest_dim; ++j) {
    std::fill(rest.begin(), rest.end(), Complex{});
    rest[j] = 1.0;
    up.basis.emplace_back(n_qubits, interleave(plus, sites, rest, n_qubits));
    down.basis.emplace_back(n_qubits, interleave(minus, sites, rest, n_qubits));
  }
  return ObservableAccess::make({std::move(up), std::move(down)}, {site});
}

SpectralObservable spin_zero_observable(const StateVector& plus,
                                        const StateVector& minus) {
  if (plus.n_qubits() != 4 || minus.n_qubits() != 4) {
    throw Error(ErrorKind::kDimensionMismatch,
                "spin_zero_observable expects four-qubit vectors");
  }
  std::vector<CVector> basis = {
      CVector(minus.amplitudes().begin(), minus.amplitudes().end()),
      CVector(plus.amplitudes().begin(), plus.amplitudes().end())};
  Branch zero{0.0, {}};
  for (std::size_t i = 0; i < 16 && basis.size() < 16; ++i) {
    CVector e(16);
    e[i] = 1.0;
    if (orthogonalize(e, basis) > 1e-6) {
      basis.push_back(e);
      zero.basis.emplace_back(4, std::move(e));
    }
  }
  return ObservableAccess::make(
      {Branch{1.0, {plus}}, Branch{-1.0, {minus}}, std::move(zero)}, {1, 2, 3, 4});
}

SpectralObservable observable_F() {
  const SpinZeroBasis b = spin_zero_basis();
  return spin_zero_observable(b.phi1, b.phi0);
}

SpectralObservable observable_G() {
  // Bob's pair is the same spin-zero construction on his four qubits.
  const SpinZeroBasis b = spin_zero_basis();
  return spin_zero_observable(b.phi1, b.phi0);
}

SpectralObservable embed(const SpectralObservable& obs, std::span<const int> sites,
                         int n_qubits, const Config& config) {
  if (static_cast<int>(sites.size()) != obs.n_qubits()) {
    throw Error(ErrorKind::kDimensionMismatch,
                fmt::format("embed: {} sites for a {}-qubit observable",
                            sites.size(), obs.n_qubits()));
  }
  if (n_qubits > config.max_qubits) {
    throw Error(ErrorKind::kCapacity,
                fmt::format("embed: {} qubits exceeds limit {}", n_qubits,
                            config.max_qubits));
  }
  std::vector<int> seen;
  for (int s : sites) {
    if (s < 1 || s > n_qubits) {
      throw Error(ErrorKind::kInvalidArgument,
                  fmt::format("embed: site {} outside [1, {}]", s, n_qubits));
    }
    if (std::find(seen.begin(), seen.end(), s) != seen.end()) {
      throw Error(ErrorKind::kInvalidArgument,
                  fmt::format("embed: site {} listed twice", s));
    }
    seen.push_back(s);
  }
  const std::size_t rest_dim = std::size_t{1} << (n_qubits - obs.n_qubits());
  std::vector<Branch> branches;
  CVector rest(rest_dim);
  for (const Branch& b : obs.branches()) {
    Branch lifted{b.eigenvalue, {}};
    lifted.basis.reserve(b.basis.size() * rest_dim);
    for (const auto& v : b.basis) {
      for (std::size_t j = 0; j < rest_dim; ++j) {
        std::fill(rest.begin(), rest.end(), Complex{});
        rest[j] = 1.0;
        lifted.basis.emplace_back(n_qubits,
                                  interleave(v.amplitudes(), sites, rest, n_qubits));
      }
    }
    branches.push_back(std::move(lifted));
  }
  std::vector<int> support;
  for (int s : obs.support()) support.push_back(sites[s - 1]);
  std::sort(support.begin(), support.end());
  return detail::ObservableAccess::make(std::move(branches), std::move(support));
}

// ---------------------------------------------------------------------------
// Functional dependence

FunctionReport is_function_of(const SpectralObservable& f,
                              std::span<const SpectralObservable> generators,
                              const Config& config) {
  if (generators.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "is_function_of: no generators");
  }
  for (const auto& g : generators) {
    if (g.dim() != f.dim()) {
      throw Error(ErrorKind::kDimensionMismatch,
                  fmt::format("is_function_of: generator dim {} vs target dim {}",
                              g.dim(), f.dim()));
    }
  }
  std::vector<MatrixOperator> gen_matrices;
  for (const auto& g : generators) gen_matrices.push_back(g.matrix());
  for (std::size_t i = 0; i < gen_matrices.size(); ++i) {
    for (std::size_t j = i + 1; j < gen_matrices.size(); ++j) {
      const double c = commutator(gen_matrices[i], gen_matrices[j]).max_abs();
      if (c > config.recon) {
        throw Error(ErrorKind::kNonCommuting,
                    fmt::format("generators {} and {} do not commute "
                                "(max |[A,B]| = {:.3e})",
                                i + 1, j + 1, c));
      }
    }
  }

  std::vector<std::vector<MatrixOperator>> gen_projectors;
  for (const auto& g : generators) {
    std::vector<MatrixOperator> ps;
    for (std::size_t b = 0; b < g.branches().size(); ++b) ps.push_back(g.projector(b));
    gen_projectors.push_back(std::move(ps));
  }
  std::vector<MatrixOperator> f_projectors;
  for (std::size_t b = 0; b < f.branches().size(); ++b) f_projectors.push_back(f.projector(b));

  FunctionReport report;
  std::vector<std::pair<OutcomeTuple, double>> table;
  std::vector<std::size_t> idx(generators.size(), 0);
  while (true) {
    MatrixOperator joint = gen_projectors[0][idx[0]];
    OutcomeTuple label{generators[0].branches()[idx[0]].eigenvalue};
    for (std::size_t k = 1; k < generators.size(); ++k) {
      joint = joint * gen_projectors[k][idx[k]];
      label.push_back(generators[k].branches()[idx[k]].eigenvalue);
    }
    double rank = 0.0;
    for (std::size_t i = 0; i < joint.dim(); ++i) rank += joint(i, i).real();

    if (rank > 0.5) {
      std::optional<double> value;
      for (std::size_t b = 0; b < f_projectors.size(); ++b) {
        if (max_abs_diff(f_projectors[b] * joint, joint) < config.recon) {
          value = f.branches()[b].eigenvalue;
          break;
        }
      }
      if (!value) {
        FunctionReport::Witness w;
        w.joint_outcome = label;
        w.eigenspace_dim = static_cast<std::size_t>(std::lround(rank));
        std::string parts;
        for (std::size_t b = 0; b < f_projectors.size(); ++b) {
          const MatrixOperator pj = f_projectors[b] * joint;
          double tr = 0.0;
          for (std::size_t i = 0; i < pj.dim(); ++i) tr += pj(i, i).real();
          const double weight = tr / rank;
          w.weight_by_value.emplace_back(f.branches()[b].eigenvalue, weight);
          if (weight > config.zero) {
            parts += fmt::format("{}{:g}: {:.6g}", parts.empty() ? "" : ", ",
                                 f.branches()[b].eigenvalue, weight);
          }
        }
        std::string tuple;
        for (double x : label) tuple += fmt::format("{}{:+g}", tuple.empty() ? "" : ",", x);
        w.description = fmt::format(
            "joint eigenspace ({}) of dimension {} is split across target "
            "eigenvalues {{{}}}",
            tuple, w.eigenspace_dim, parts);
        report.is_function = false;
        report.witness = std::move(w);
        return report;
      }
      table.emplace_back(std::move(label), *value);
    }

    std::size_t k = generators.size();
    while (k > 0) {
      --k;
      if (++idx[k] < generators[k].branches().size()) break;
      idx[k] = 0;
      if (k == 0) {
        report.is_function = true;
        report.value_table = std::move(table);
        return report;
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Rotations

RotationPattern RotationPattern::equal_on_all(MatrixOperator u) {
  return RotationPattern{Kind::kEqualOnAll, {std::move(u)}};
}

RotationPattern RotationPattern::per_site(std::vector<MatrixOperator> us) {
  return RotationPattern{Kind::kPerSite, std::move(us)};
}

MatrixOperator RotationPattern::full(int n_qubits) const {
  if (unitaries.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "rotation pattern without unitaries");
  }
  if (kind == Kind::kPerSite && static_cast<int>(unitaries.size()) != n_qubits) {
    throw Error(ErrorKind::kDimensionMismatch,
                fmt::format("per-site pattern has {} rotations for {} qubits",
                            unitaries.size(), n_qubits));
  }
  auto factor = [&](int site) -> const MatrixOperator& {
    return kind == Kind::kEqualOnAll ? unitaries.front() : unitaries[site];
  };
  MatrixOperator v = factor(0);
  for (int s = 1; s < n_qubits; ++s) v = kron(v, factor(s));
  return v;
}

InvarianceReport check_invariance(const SpectralObservable& obs,
                                  std::span<const RotationPattern> trials,
                                  const Config& config) {
  const MatrixOperator m = obs.matrix();
  InvarianceReport report;
  for (const auto& pattern : trials) {
    for (const auto& u : pattern.unitaries) {
      if (u.dim() != 2) {
        throw Error(ErrorKind::kDimensionMismatch, "rotations must be 2x2");
      }
      if (!u.is_unitary(config.herm)) {
        throw Error(ErrorKind::kNotUnitary, "rotation is not unitary");
      }
    }
    const MatrixOperator v = pattern.full(obs.n_qubits());
    const double dev = max_abs_diff(v * m * v.adjoint(), m);
    report.deviations.push_back(dev);
    report.max_deviation = std::max(report.max_deviation, dev);
    ++report.trials;
  }
  report.invariant = report.max_deviation < config.inv;
  return report;
}

InvarianceReport check_invariance(const SpectralObservable& obs,
                                  const RotationPattern& pattern,
                                  const Config& config) {
  return check_invariance(obs, std::span<const RotationPattern>(&pattern, 1), config);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finaliser over a combination of both inputs.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

MatrixOperator random_su2(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double q[4];
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (double& x : q) {
      x = standard_normal(rng);
      n2 += x * x;
    }
  } while (n2 < 1e-300);
  const double n = std::sqrt(n2);
  const double a = q[0] / n, b = q[1] / n, c = q[2] / n, d = q[3] / n;
  return {{Complex(a, b), Complex(c, d)}, {Complex(-c, d), Complex(a, -b)}};
}

std::vector<RotationPattern> random_patterns(RotationPattern::Kind kind,
                                             int n_qubits, int count,
                                             std::uint64_t seed) {
  std::vector<RotationPattern> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int t = 0; t < count; ++t) {
    const std::uint64_t trial_seed = derive_seed(seed, static_cast<std::uint64_t>(t));
    if (kind == RotationPattern::Kind::kEqualOnAll) {
      out.push_back(RotationPattern::equal_on_all(random_su2(trial_seed)));
    } else {
      std::vector<MatrixOperator> us;
      for (int s = 0; s < n_qubits; ++s) {
        us.push_back(random_su2(derive_seed(trial_seed, static_cast<std::uint64_t>(s))));
      }
      out.push_back(RotationPattern::per_site(std::move(us)));
    }
  }
  return out;
}

}  // namespace qcollapse
