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

#include <cmath>

#include "doctest.h"
#include "qollide/bath_states.hpp"
#include "qollide/collective_spin.hpp"

using namespace qollide;

namespace {

// J- built in raw binary order from single-site lowering operators.
ComplexMatrix j_minus_binary(int n) {
  const Index dim = Index{1} << n;
  ComplexMatrix jm = ComplexMatrix::Zero(dim, dim);
  for (Index s = 0; s < dim; ++s) {
    for (int q = 0; q < n; ++q) {
      const Index bit = Index{1} << (n - 1 - q);
      if (s & bit) jm(s & ~bit, s) += 1.0;
    }
  }
  return jm;
}

int popcount(std::uint32_t v) { return __builtin_popcount(v); }

}  // namespace

TEST_CASE("block sizes follow Pascal's triangle") {
  CHECK(block_sizes(1) == std::vector<std::uint64_t>{1, 1});
  CHECK(block_sizes(2) == std::vector<std::uint64_t>{1, 2, 1});
  CHECK(block_sizes(4) == std::vector<std::uint64_t>{1, 4, 6, 4, 1});
  for (int n = 1; n <= 20; ++n) {
    std::uint64_t total = 0;
    for (auto s : block_sizes(n)) total += s;
    CHECK(total == (std::uint64_t{1} << n));
  }
  CHECK(block_sizes(64)[32] == 1832624140942590534ULL);
  CHECK(block_sizes(0) == std::vector<std::uint64_t>{1});
  CHECK_THROWS_AS(block_sizes(65), Error);
}

TEST_CASE("basis ordering is excitation sorted and contiguous by block") {
  for (int n = 1; n <= 8; ++n) {
    const BasisOrdering b(n);
    const auto sizes = block_sizes(n);
    for (int k = 0; k <= n; ++k) {
      CHECK(static_cast<std::uint64_t>(b.block_size(k)) == sizes[static_cast<std::size_t>(k)]);
      for (Index i = b.block_offset(k); i < b.block_offset(k) + b.block_size(k); ++i) {
        CHECK(b.excitation(i) == k);
        CHECK(popcount(b.to_binary(i)) == k);
        if (i > b.block_offset(k)) CHECK(b.to_binary(i) > b.to_binary(i - 1));
      }
    }
    for (Index i = 0; i < b.dim(); ++i) CHECK(b.to_storage(b.to_binary(i)) == i);
  }
  const BasisOrdering b4(4);
  CHECK(b4.label(0) == "gggg");
  CHECK(b4.label(1) == "ggge");
  CHECK(b4.label(4) == "eggg");
  CHECK(b4.label(5) == "ggee");
  CHECK(b4.label(15) == "eeee");
}

TEST_CASE("binary reordering round trips") {
  const BasisOrdering b(3);
  ComplexMatrix m(8, 8);
  for (Index i = 0; i < 8; ++i) {
    for (Index j = 0; j < 8; ++j) m(i, j) = Complex(double(i), double(j));
  }
  CHECK(max_abs(b.to_binary_order(b.from_binary_order(m)) - m) == 0.0);
  const ComplexMatrix s = b.from_binary_order(m);
  for (Index i = 0; i < 8; ++i) {
    for (Index j = 0; j < 8; ++j) CHECK(s(i, j) == m(b.to_binary(i), b.to_binary(j)));
  }
}

TEST_CASE("single-qubit collective operators are the Pauli ladder") {
  const CollectiveOps ops = build_collective_ops(1);
  // Storage order for N=1 is (|g>, |e>).
  const ComplexMatrix jm = ComplexMatrix(ops.j_minus);
  CHECK(jm(0, 1) == Complex(1.0, 0.0));
  CHECK(jm(1, 0) == Complex(0.0, 0.0));
  CHECK(std::abs(jm.sum() - 1.0) == 0.0);
}

TEST_CASE("two-qubit J- on |ee> gives |eg> + |ge>") {
  const CollectiveOps ops = build_collective_ops(2);
  const BasisOrdering& b = ops.basis;
  const Index ee = b.to_storage(0b11), eg = b.to_storage(0b10), ge = b.to_storage(0b01);
  const ComplexMatrix jm = ComplexMatrix(ops.j_minus);
  ComplexVector col = jm.col(ee);
  CHECK(col(eg) == Complex(1.0, 0.0));
  CHECK(col(ge) == Complex(1.0, 0.0));
  CHECK(col.cwiseAbs().sum() == doctest::Approx(2.0));
}

TEST_CASE("collective operators match the brute-force binary construction") {
  for (int n = 1; n <= 6; ++n) {
    const CollectiveOps ops = build_collective_ops(n);
    const ComplexMatrix reference = ops.basis.from_binary_order(j_minus_binary(n));
    const ComplexMatrix jm = ComplexMatrix(ops.j_minus);
    const ComplexMatrix jp = ComplexMatrix(ops.j_plus);
    CHECK(max_abs(jm - reference) == 0.0);
    CHECK(max_abs(jp - jm.adjoint()) == 0.0);
    CHECK(max_abs(ComplexMatrix(ops.j_plus_j_minus) - jp * jm) == 0.0);
    CHECK(max_abs(ComplexMatrix(ops.j_minus_j_plus) - jm * jp) == 0.0);
    CHECK(max_abs(ComplexMatrix(ops.j_minus_sq) - jm * jm) == 0.0);
  }
}

TEST_CASE("su(2) commutator [J+, J-] = 2 Jz") {
  for (int n = 1; n <= 6; ++n) {
    const CollectiveOps ops = build_collective_ops(n);
    const ComplexMatrix comm = ComplexMatrix(ops.j_plus_j_minus) - ComplexMatrix(ops.j_minus_j_plus);
    const Eigen::VectorXd jz = ops.j_z_diagonal();
    ComplexMatrix expected = ComplexMatrix::Zero(ops.dim(), ops.dim());
    for (Index i = 0; i < ops.dim(); ++i) expected(i, i) = 2.0 * jz(i);
    CHECK(max_abs(comm - expected) < 1e-12);
  }
}

TEST_CASE("J- lowers excitation by exactly one and J-^2 by two") {
  for (int n = 1; n <= 8; ++n) {
    const CollectiveOps ops = build_collective_ops(n);
    for (Index r = 0; r < ops.j_minus.outerSize(); ++r) {
      for (SparseMatrix::InnerIterator it(ops.j_minus, r); it; ++it) {
        if (std::abs(it.value()) > 0.0) CHECK(ops.basis.excitation(it.row()) == ops.basis.excitation(it.col()) - 1);
      }
      for (SparseMatrix::InnerIterator it(ops.j_minus_sq, r); it; ++it) {
        if (std::abs(it.value()) > 0.0) CHECK(ops.basis.excitation(it.row()) == ops.basis.excitation(it.col()) - 2);
      }
      for (SparseMatrix::InnerIterator it(ops.j_plus_j_minus, r); it; ++it) {
        if (std::abs(it.value()) > 0.0) CHECK(ops.basis.excitation(it.row()) == ops.basis.excitation(it.col()));
      }
    }
    const ComplexMatrix a = ComplexMatrix(ops.j_plus_j_minus);
    const ComplexMatrix b = ComplexMatrix(ops.j_minus_j_plus);
    CHECK(max_abs(a - a.adjoint()) == 0.0);
    CHECK(max_abs(b - b.adjoint()) == 0.0);
  }
}

TEST_CASE("collective operators reject sizes beyond the limit") {
  CHECK_THROWS_AS(build_collective_ops(0), Error);
  CHECK_THROWS_AS(build_collective_ops(13), Error);
  CHECK_THROWS_AS(build_collective_ops(9, 8), Error);
  CHECK(build_collective_ops(12).dim() == 4096);
}

TEST_CASE("symmetric Dicke vectors") {
  const ComplexVector d21 = symmetric_dicke_vector(2, 1);
  CHECK(std::abs(d21(1) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(d21(2) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(d21(0)) == 0.0);
  CHECK(std::abs(d21(3)) == 0.0);

  const ComplexVector d40 = symmetric_dicke_vector(4, 0);
  CHECK(d40(0) == Complex(1.0, 0.0));
  CHECK(d40.norm() == doctest::Approx(1.0));

  for (int k = 0; k <= 5; ++k) {
    for (int l = 0; l <= 5; ++l) {
      const Complex ip = symmetric_dicke_vector(5, k).dot(symmetric_dicke_vector(5, l));
      CHECK(std::abs(ip - (k == l ? 1.0 : 0.0)) < 1e-14);
    }
  }
  CHECK_THROWS_AS(symmetric_dicke_vector(3, 4), Error);
  CHECK_THROWS_AS(symmetric_dicke_vector(3, -1), Error);
}

TEST_CASE("Dicke ladder transform is an isometry") {
  CHECK(max_abs(dicke_ladder_transform(1) - ComplexMatrix::Identity(2, 2)) == 0.0);
  const ComplexMatrix v2 = dicke_ladder_transform(2);
  CHECK(v2.rows() == 4);
  CHECK(v2.cols() == 3);
  CHECK(max_abs(v2.col(1) - symmetric_dicke_vector(2, 1)) == 0.0);
  for (int n = 1; n <= 8; ++n) {
    const ComplexMatrix v = dicke_ladder_transform(n);
    CHECK(max_abs(v.adjoint() * v - ComplexMatrix::Identity(n + 1, n + 1)) < 1e-12);
  }
}

TEST_CASE("Dicke moments k(N-k+1) and (k+1)(N-k)") {
  for (int n = 1; n <= 8; ++n) {
    const CollectiveOps ops = build_collective_ops(n);
    const ComplexMatrix a = ComplexMatrix(ops.j_plus_j_minus);
    const ComplexMatrix b = ComplexMatrix(ops.j_minus_j_plus);
    for (int k = 0; k <= n; ++k) {
      const DensityMatrix rho = dicke_block_state(n, k);
      CHECK(std::abs(expectation(a, rho) - double(k * (n - k + 1))) < 1e-12);
      CHECK(std::abs(expectation(b, rho) - double((k + 1) * (n - k))) < 1e-12);
    }
  }
}
