// SPDX-License-Identifier: Apache-2.0
#include "qvolt/abelian.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qvolt {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::int64_t> cyclic_orders)
    : orders_(std::move(cyclic_orders)) {
  for (const auto n : orders_) {
    if (n < 1) throw Error("group: cyclic orders must be positive");
    order_ *= static_cast<std::size_t>(n);
  }
}

void FiniteAbelianGroup::check_shape(const GroupElement& g) const {
  if (g.residues.size() != orders_.size())
    throw Error("group element has wrong factor shape");
}

GroupElement FiniteAbelianGroup::identity() const {
  return GroupElement{std::vector<std::int64_t>(orders_.size(), 0)};
}

GroupElement FiniteAbelianGroup::reduce(const GroupElement& g) const {
  check_shape(g);
  GroupElement out = g;
  for (std::size_t j = 0; j < orders_.size(); ++j) {
    out.residues[j] %= orders_[j];
    if (out.residues[j] < 0) out.residues[j] += orders_[j];
  }
  return out;
}

GroupElement FiniteAbelianGroup::multiply(const GroupElement& a,
                                          const GroupElement& b) const {
  check_shape(a);
  check_shape(b);
  GroupElement out = a;
  for (std::size_t j = 0; j < orders_.size(); ++j)
    out.residues[j] += b.residues[j];
  return reduce(out);
}

GroupElement FiniteAbelianGroup::inverse(const GroupElement& g) const {
  GroupElement r = reduce(g);
  for (std::size_t j = 0; j < orders_.size(); ++j)
    r.residues[j] = (orders_[j] - r.residues[j]) % orders_[j];
  return r;
}

std::vector<GroupElement> FiniteAbelianGroup::enumerate() const {
  std::vector<GroupElement> out;
  out.reserve(order_);
  for (std::size_t i = 0; i < order_; ++i) out.push_back(element_at(i));
  return out;
}

std::vector<Character> FiniteAbelianGroup::enumerate_dual() const {
  return enumerate();
}

std::size_t FiniteAbelianGroup::index_of(const GroupElement& g) const {
  const GroupElement r = reduce(g);
  std::size_t idx = 0;
  for (std::size_t j = 0; j < orders_.size(); ++j) {
    idx = idx * static_cast<std::size_t>(orders_[j]) +
          static_cast<std::size_t>(r.residues[j]);
  }
  return idx;
}

GroupElement FiniteAbelianGroup::element_at(std::size_t index) const {
  if (index >= order_) throw Error("group element index out of range");
  GroupElement g{std::vector<std::int64_t>(orders_.size(), 0)};
  for (std::size_t j = orders_.size(); j-- > 0;) {
    g.residues[j] = static_cast<std::int64_t>(
        index % static_cast<std::size_t>(orders_[j]));
    index /= static_cast<std::size_t>(orders_[j]);
  }
  return g;
}

std::string FiniteAbelianGroup::to_string(const GroupElement& g) const {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < g.residues.size(); ++j) {
    if (j) os << ',';
    os << g.residues[j];
  }
  os << ')';
  return os.str();
}

Complex pairing(const FiniteAbelianGroup& group, const Character& chi,
                const GroupElement& g) {
  if (chi.residues.size() != group.factor_count() ||
      g.residues.size() != group.factor_count())
    throw Error("pairing: factor shape mismatch");
  double angle = 0.0;
  for (std::size_t j = 0; j < group.factor_count(); ++j) {
    const auto n = group.cyclic_orders()[j];
    const auto prod = (chi.residues[j] % n) * (g.residues[j] % n);
    angle += static_cast<double>(prod % n) / static_cast<double>(n);
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * angle);
}

Complex orthogonality_sum(const FiniteAbelianGroup& group, const Character& chi,
                          const Character& xi) {
  Complex s(0.0, 0.0);
  for (const auto& g : group.enumerate())
    s += pairing(group, chi, g) * std::conj(pairing(group, xi, g));
  return s;
}

}  // namespace qvolt
