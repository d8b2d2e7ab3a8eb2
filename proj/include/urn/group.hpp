#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "urn/types.hpp"

namespace urn {

/// Unvalidated multiplication table: table[i][j] is the index of elements[i] * elements[j].
struct CayleyData {
  std::vector<std::string> elements;
  std::vector<std::vector<int>> table;
};

/// A finite group stored as a dense Cayley table over element indices.
///
/// Only obtainable through validate_group() or the builtin constructors, so every
/// instance satisfies the group axioms. Labels are opaque; all algebra is on indices.
class FiniteGroup {
 public:
  Index order() const { return table_.rows(); }
  Index identity() const { return identity_; }
  Index multiply(Index a, Index b) const { return table_(a, b); }
  Index inverse(Index a) const { return inverse_[static_cast<std::size_t>(a)]; }

  const Eigen::MatrixXi& table() const { return table_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Index i) const { return labels_[static_cast<std::size_t>(i)]; }
  std::optional<Index> find(std::string_view label) const;

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  bool is_abelian() const;
  /// Smallest m >= 1 with a^m = e.
  Index element_order(Index a) const;

 private:
  friend FiniteGroup validate_group(CayleyData raw);

  FiniteGroup() = default;

  Eigen::MatrixXi table_;
  std::vector<std::string> labels_;
  std::vector<Index> inverse_;
  Index identity_ = 0;
  std::string name_;
};

/// Checks the group axioms and computes identity and inverses from the table.
/// Throws Error with InvalidTable, NotLatinSquare, NoIdentity, NotAssociative or
/// NoInverse; the message names the first violating index tuple.
FiniteGroup validate_group(CayleyData raw);

FiniteGroup cyclic_group(int n);
/// Order 2n. Element "r{i}" is r^i, "s{i}" is r^i s.
FiniteGroup dihedral_group(int n);
/// Permutations of 1..n in one-line notation, lexicographic order; (a*b)(x) = a(b(x)).
FiniteGroup symmetric_group(int n, std::size_t size_cap = 720);
FiniteGroup direct_product(const FiniteGroup& left, const FiniteGroup& right);

class Subgroup {
 public:
  explicit Subgroup(Mask members);

  const Mask& mask() const { return mask_; }
  Index order() const { return order_; }
  bool contains(Index i) const { return mask_[static_cast<std::size_t>(i)]; }
  std::vector<Index> members() const;

  bool operator==(const Subgroup& other) const { return mask_ == other.mask_; }

 private:
  Mask mask_;
  Index order_;
};

/// True when the mask is non-empty and closed under the group product.
bool is_closed_subset(const FiniteGroup& group, const Mask& mask);

/// Smallest subgroup containing every seed.
Subgroup closure(const FiniteGroup& group, std::span<const Index> seeds);

inline constexpr std::size_t kDefaultSubgroupCap = 24;

/// All subgroups, ascending by order (ties broken by member list).
///
/// Starts from the cyclic subgroups and closes joins of pairs until no new
/// subgroup appears. Every subgroup is a join of cyclic ones, so the fixpoint is
/// complete. Throws SizeCapExceeded when |G| > size_cap.
std::vector<Subgroup> enumerate_subgroups(const FiniteGroup& group,
                                          std::size_t size_cap = kDefaultSubgroupCap);

}  // namespace urn
