// Finitely described infinite subsets of ω.
//
// Ultimately periodic sets (including tails and finite removals from them)
// are exact: equality and every cofinite question about them is decidable.
// Other descriptors (almost-disjoint members, diagonals of tree sequences,
// lazily combined sets) support membership and enumeration only.

#ifndef TTREE_NATSETS_HPP
#define TTREE_NATSETS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "ttree/eventual.hpp"

namespace ttree {

using BitSeq = Eventual<bool>;

class NatSet {
 public:
  class Node;

  /// ω itself.
  NatSet();

  /// Ultimately periodic set from its characteristic sequence. Throws
  /// PreconditionError when the period contains no one (finite set).
  static NatSet up(const BitSeq& bits);
  static NatSet up(std::vector<bool> head, std::vector<bool> period);
  /// {n, n+1, ...}
  static NatSet tail_from(std::size_t n);
  static NatSet minus_finite(const NatSet& inner, const std::set<std::size_t>& removed);
  /// {e(code(seed|k)) : k >= 1}, e the enumeration of `carrier` and code the
  /// length-lex rank of finite 0/1 strings.
  static NatSet ad_member(const BitSeq& seed, const NatSet& carrier);
  /// Elements of `inner` at even enumeration indices.
  static NatSet alternate(const NatSet& inner);

  /// A set given by a strictly increasing enumeration. `label` names the
  /// descriptor in error messages; such sets are never serializable.
  static NatSet enumerated(std::function<std::size_t(std::size_t)> nth, std::string label);
  /// A set given by a membership test; the caller guarantees it is infinite.
  static NatSet by_membership(std::function<bool(std::size_t)> contains, std::string label);

  std::size_t nth(std::size_t k) const;
  bool contains(std::size_t n) const;
  /// Number of elements strictly below n.
  std::size_t rank(std::size_t n) const;
  /// First `count` elements.
  std::vector<std::size_t> take(std::size_t count) const;

  bool is_periodic() const;
  /// Characteristic sequence; throws HorizonRequired if not periodic.
  const BitSeq& bits() const;

  /// Serialized descriptor tree as JSON text; throws NotSerializable.
  std::string describe() const;
  bool is_serializable() const;

  /// Exact equality; throws HorizonRequired unless both sides are periodic.
  friend bool operator==(const NatSet& a, const NatSet& b);

  const std::shared_ptr<const Node>& node() const { return node_; }

 private:
  explicit NatSet(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// The k-th element, k >= 0.
std::size_t enumerate(const NatSet& a, std::size_t k);
bool contains(const NatSet& a, std::size_t n);

/// V_C: the elements of C at even enumeration indices. Both V_C and C ∖ V_C
/// are infinite.
NatSet alternate_split(const NatSet& c);

/// Binary expansion of 1/p for odd p (purely periodic).
BitSeq reciprocal_expansion(std::uint64_t p);

/// The j-th odd prime, j >= 0 (3, 5, 7, 11, ...).
std::uint64_t odd_prime(std::size_t j);

/// Length-lex rank of the first `len` symbols of a 0/1 sequence. Throws
/// std::overflow_error past 62 bits.
std::size_t prefix_code(const BitSeq& seed, std::size_t len);

/// m pairwise almost-disjoint infinite subsets of `carrier`; member j is coded
/// by the binary expansion of 1/(j-th odd prime).
std::vector<NatSet> ad_family(const NatSet& carrier, std::size_t m);

/// Length of the longest common prefix of two sequences that are not equal.
std::size_t common_prefix_length(const BitSeq& a, const BitSeq& b);

}  // namespace ttree

#endif  // TTREE_NATSETS_HPP
