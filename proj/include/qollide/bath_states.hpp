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

#pragma once

// The bath families a target qubit can collide with, and classification of
// bath coherences by which master-equation coefficient they feed.

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qollide/collective_spin.hpp"
#include "qollide/operator_core.hpp"

namespace qollide {

/// Every qubit independently in p_g|g><g| + p_e|e><e|.
struct ProductMixed {
  double p_e = 0.0;
};

/// Steady state of collective thermal emission/absorption started from the
/// ground state: block k is d_k times the all-ones matrix.
struct ThermalHec {
  double n_bar = 0.0;
};

/// Symmetric Dicke state |N/2, k - N/2><N/2, k - N/2|.
struct DickeBlock {
  int k = 0;
};

/// Arbitrary state in storage order.
struct Explicit {
  ComplexMatrix rho;
};

struct BathSpec {
  int n = 1;
  std::variant<ProductMixed, ThermalHec, DickeBlock, Explicit> kind;

  /// "product", "thermal-hec", "dicke" or "explicit".
  std::string kind_name() const;
};

DensityMatrix product_mixed_state(int n, double p_e);

/// Weights d_k = (1-r) r^k / ((1 - r^{N+1}) C(N,k)), r = n̄/(n̄+1).
std::vector<double> thermal_hec_weights(int n, double n_bar);
DensityMatrix thermal_hec_state(int n, double n_bar);

DensityMatrix dicke_block_state(int n, int k);

/// Materialize and validate. Failures carry the name of the failed check.
DensityMatrix validate_bath(const BathSpec& spec, const Tolerances& tol = {});

enum class Coherence : std::uint8_t {
  Population = 1u << 0,
  Hec = 1u << 1,
  Displacement = 1u << 2,
  Squeezing = 1u << 3,
  Ineffective = 1u << 4,
};

inline constexpr std::array<Coherence, 5> kAllCoherences = {
    Coherence::Population, Coherence::Hec, Coherence::Displacement, Coherence::Squeezing,
    Coherence::Ineffective};

const char* to_string(Coherence c);

inline bool has(std::uint8_t set, Coherence c) { return (set & static_cast<std::uint8_t>(c)) != 0; }

class CoherenceMap {
 public:
  CoherenceMap(int n, Index dim) : n_(n), dim_(dim), labels_(static_cast<std::size_t>(dim * dim), 0),
                                   occupied_(static_cast<std::size_t>(dim * dim), false) {}

  int qubits() const noexcept { return n_; }
  Index dim() const noexcept { return dim_; }

  /// Every label whose effectiveness test fired for entry (i, j).
  std::uint8_t labels(Index i, Index j) const { return labels_[at(i, j)]; }
  /// Reporting label, precedence displacement > squeezing > HEC.
  Coherence primary(Index i, Index j) const;
  /// True when |rho_ij| exceeds the effectiveness threshold.
  bool occupied(Index i, Index j) const { return occupied_[at(i, j)]; }

  std::pair<int, int> block_index(Index i, Index j) const { return {excitation_[i], excitation_[j]}; }

  /// Entries per primary label, over the whole matrix.
  std::array<std::size_t, 5> counts() const;
  /// Entries per primary label among those where the state is nonzero.
  std::array<std::size_t, 5> occupied_counts() const;

 private:
  friend CoherenceMap classify_coherences(const DensityMatrix&, const CollectiveOps&);

  std::size_t at(Index i, Index j) const { return static_cast<std::size_t>(i * dim_ + j); }

  int n_;
  Index dim_;
  std::vector<std::uint8_t> labels_;
  std::vector<bool> occupied_;
  std::vector<int> excitation_;
};

inline constexpr double kEffectiveThreshold = 1e-12;

/// Labels entry (i, j), i != j, by which of J±, J±², J±J∓ has a nonzero
/// (j, i) element; entries no operator reaches are ineffective.
CoherenceMap classify_coherences(const DensityMatrix& rho, const CollectiveOps& ops);

}  // namespace qollide
