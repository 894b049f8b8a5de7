// Copyright 2026 The Qollide Authors
//
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

#include "qollide/bath_states.hpp"

#include <cmath>

namespace qollide {

namespace {

void check_bath_qubits(int n) {
  if (n < 1 || n > kMaxCollectiveQubits) {
    throw Error(ErrorKind::Range, "N",
                "bath size " + std::to_string(n) + " outside [1, " + std::to_string(kMaxCollectiveQubits) + "]");
  }
}

void check_excitation(int n, int k) {
  if (k < 0 || k > n) {
    throw Error(ErrorKind::Range, "k", "excitation count " + std::to_string(k) + " outside [0, " +
                                           std::to_string(n) + "]");
  }
}

void check_probability(double p_e) {
  if (!(p_e >= 0.0 && p_e <= 1.0)) {
    throw Error(ErrorKind::Range, "p_e", "probability " + std::to_string(p_e) + " outside [0, 1]");
  }
}

void check_n_bar(double n_bar) {
  if (!(n_bar >= 0.0) || !std::isfinite(n_bar)) {
    throw Error(ErrorKind::Range, "n_bar", "mean photon number must be finite and >= 0");
  }
}

}  // namespace

std::string BathSpec::kind_name() const {
  struct Visitor {
    std::string operator()(const ProductMixed&) const { return "product"; }
    std::string operator()(const ThermalHec&) const { return "thermal-hec"; }
    std::string operator()(const DickeBlock&) const { return "dicke"; }
    std::string operator()(const Explicit&) const { return "explicit"; }
  };
  return std::visit(Visitor{}, kind);
}

DensityMatrix product_mixed_state(int n, double p_e) {
  check_bath_qubits(n);
  check_probability(p_e);
  const BasisOrdering basis(n);
  ComplexMatrix rho = ComplexMatrix::Zero(basis.dim(), basis.dim());
  for (Index s = 0; s < basis.dim(); ++s) {
    const int k = basis.excitation(s);
    rho(s, s) = std::pow(p_e, k) * std::pow(1.0 - p_e, n - k);
  }
  return DensityMatrix::unchecked(std::move(rho));
}

std::vector<double> thermal_hec_weights(int n, double n_bar) {
  if (n < 1 || n > 64) throw Error(ErrorKind::Range, "N", "bath size must be in [1, 64]");
  check_n_bar(n_bar);
  const double r = n_bar / (n_bar + 1.0);
  const double norm = (1.0 - r) / (1.0 - std::pow(r, n + 1));
  const auto sizes = block_sizes(n);
  std::vector<double> d(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    d[static_cast<std::size_t>(k)] = norm * std::pow(r, k) / static_cast<double>(sizes[static_cast<std::size_t>(k)]);
  }
  return d;
}

DensityMatrix thermal_hec_state(int n, double n_bar) {
  check_bath_qubits(n);
  const auto d = thermal_hec_weights(n, n_bar);
  const BasisOrdering basis(n);
  ComplexMatrix rho = ComplexMatrix::Zero(basis.dim(), basis.dim());
  for (int k = 0; k <= n; ++k) {
    const Index off = basis.block_offset(k), size = basis.block_size(k);
    rho.block(off, off, size, size).setConstant(d[static_cast<std::size_t>(k)]);
  }
  return DensityMatrix::unchecked(std::move(rho));
}

DensityMatrix dicke_block_state(int n, int k) {
  check_bath_qubits(n);
  check_excitation(n, k);
  const ComplexVector v = symmetric_dicke_vector(n, k);
  return DensityMatrix::unchecked(v * v.adjoint());
}

DensityMatrix validate_bath(const BathSpec& spec, const Tolerances& tol) {
  check_bath_qubits(spec.n);
  struct Visitor {
    int n;
    const Tolerances& tol;
    DensityMatrix operator()(const ProductMixed& b) const { return product_mixed_state(n, b.p_e); }
    DensityMatrix operator()(const ThermalHec& b) const { return thermal_hec_state(n, b.n_bar); }
    DensityMatrix operator()(const DickeBlock& b) const { return dicke_block_state(n, b.k); }
    DensityMatrix operator()(const Explicit& b) const {
      const Index dim = Index{1} << n;
      if (b.rho.rows() != dim || b.rho.cols() != dim) {
        throw Error(ErrorKind::Dimension, "dimension",
                    "explicit bath must be " + std::to_string(dim) + "x" + std::to_string(dim) + " for N=" +
                        std::to_string(n));
      }
      return DensityMatrix(b.rho, tol);
    }
  };
  DensityMatrix rho = std::visit(Visitor{spec.n, tol}, spec.kind);
  if (!std::holds_alternative<Explicit>(spec.kind)) validate_density(rho.matrix(), tol);
  return rho;
}

const char* to_string(Coherence c) {
  switch (c) {
    case Coherence::Population: return "population";
    case Coherence::Hec: return "hec";
    case Coherence::Displacement: return "displacement";
    case Coherence::Squeezing: return "squeezing";
    case Coherence::Ineffective: return "ineffective";
  }
  return "unknown";
}

Coherence CoherenceMap::primary(Index i, Index j) const {
  const std::uint8_t set = labels(i, j);
  for (Coherence c : {Coherence::Population, Coherence::Displacement, Coherence::Squeezing, Coherence::Hec}) {
    if (has(set, c)) return c;
  }
  return Coherence::Ineffective;
}

namespace {

std::size_t slot(Coherence c) {
  for (std::size_t i = 0; i < kAllCoherences.size(); ++i) {
    if (kAllCoherences[i] == c) return i;
  }
  return kAllCoherences.size() - 1;
}

}  // namespace

std::array<std::size_t, 5> CoherenceMap::counts() const {
  std::array<std::size_t, 5> out{};
  for (Index i = 0; i < dim_; ++i) {
    for (Index j = 0; j < dim_; ++j) ++out[slot(primary(i, j))];
  }
  return out;
}

std::array<std::size_t, 5> CoherenceMap::occupied_counts() const {
  std::array<std::size_t, 5> out{};
  for (Index i = 0; i < dim_; ++i) {
    for (Index j = 0; j < dim_; ++j) {
      if (occupied(i, j)) ++out[slot(primary(i, j))];
    }
  }
  return out;
}

CoherenceMap classify_coherences(const DensityMatrix& rho, const CollectiveOps& ops) {
  const Index dim = rho.dim();
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw Error(ErrorKind::Dimension, "classify_coherences",
                "dimension " + std::to_string(dim) + " is not a power of two");
  }
  if (dim != ops.dim()) {
    throw Error(ErrorKind::Dimension, "classify_coherences", "state and operators disagree on N");
  }
  CoherenceMap map(ops.n, dim);
  map.excitation_.resize(static_cast<std::size_t>(dim));
  for (Index s = 0; s < dim; ++s) map.excitation_[static_cast<std::size_t>(s)] = ops.basis.excitation(s);

  // rho_ij enters Tr(O rho) through O_ji, so a nonzero O_ji marks (i, j).
  // Marking both (i, j) and (j, i) covers the adjoint partner of each
  // operator (J+ for J-, J+^2 for J-^2); J+J- and J-J+ are Hermitian.
  auto mark = [&](const SparseMatrix& op, Coherence c) {
    for (Index r = 0; r < op.outerSize(); ++r) {
      for (SparseMatrix::InnerIterator it(op, r); it; ++it) {
        if (it.row() == it.col() || std::abs(it.value()) <= kEffectiveThreshold) continue;
        map.labels_[map.at(it.col(), it.row())] |= static_cast<std::uint8_t>(c);
        map.labels_[map.at(it.row(), it.col())] |= static_cast<std::uint8_t>(c);
      }
    }
  };
  mark(ops.j_plus_j_minus, Coherence::Hec);
  mark(ops.j_minus_j_plus, Coherence::Hec);
  mark(ops.j_minus, Coherence::Displacement);
  mark(ops.j_minus_sq, Coherence::Squeezing);

  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) {
      std::uint8_t& set = map.labels_[map.at(i, j)];
      if (i == j) {
        set = static_cast<std::uint8_t>(Coherence::Population);
      } else if (set == 0) {
        set = static_cast<std::uint8_t>(Coherence::Ineffective);
      }
      map.occupied_[map.at(i, j)] = std::abs(rho(i, j)) > kEffectiveThreshold;
    }
  }
  return map;
}

}  // namespace qollide
