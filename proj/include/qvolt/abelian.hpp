// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qvolt/matrix.hpp"

namespace qvolt {

/// Element of a finite abelian group Z_{n_1} x ... x Z_{n_k}, stored as a
/// residue vector. The same representation serves for characters of the
/// group: the dual of a finite abelian group is abstractly the same group,
/// and a character with residues (c_1, ..., c_k) pairs with an element
/// (g_1, ..., g_k) as exp(+2*pi*i * sum_j c_j g_j / n_j).
struct GroupElement {
  std::vector<std::int64_t> residues;

  bool operator==(const GroupElement&) const = default;
};

using Character = GroupElement;

/// Finite abelian group given by its cyclic factor orders. Elements and
/// characters are enumerated lexicographically on residue vectors, identity
/// first; the order is stable and shared by every construction downstream.
class FiniteAbelianGroup {
 public:
  /// The trivial group (no cyclic factors).
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<std::int64_t> cyclic_orders);

  const std::vector<std::int64_t>& cyclic_orders() const { return orders_; }
  std::size_t order() const { return order_; }
  std::size_t factor_count() const { return orders_.size(); }

  GroupElement identity() const;
  GroupElement reduce(const GroupElement& g) const;
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& g) const;

  std::vector<GroupElement> enumerate() const;
  std::vector<Character> enumerate_dual() const;

  /// Index of g in enumerate(); identity has index 0.
  std::size_t index_of(const GroupElement& g) const;
  GroupElement element_at(std::size_t index) const;

  std::string to_string(const GroupElement& g) const;

  bool operator==(const FiniteAbelianGroup&) const = default;

 private:
  void check_shape(const GroupElement& g) const;

  std::vector<std::int64_t> orders_;
  std::size_t order_ = 1;
};

/// chi(g) on the complex unit circle.
Complex pairing(const FiniteAbelianGroup& group, const Character& chi,
                const GroupElement& g);

/// sum_g chi(g) * conj(xi(g)); equals |G| when chi == xi and 0 otherwise.
Complex orthogonality_sum(const FiniteAbelianGroup& group, const Character& chi,
                          const Character& xi);

}  // namespace qvolt
