// Trimmed trees T[A, α]: the subtree of ∏_fin Xᵢ that branches fully at the
// coordinates in A and is forced to α(n) at every other coordinate n.

#ifndef TTREE_TREES_HPP
#define TTREE_TREES_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "ttree/eventual.hpp"
#include "ttree/natsets.hpp"
#include "ttree/points.hpp"

namespace ttree {

/// δ(T)(n): either every symbol of Xₙ or the single forced symbol.
struct DeltaValue {
  bool full = false;
  Symbol symbol = 0;  // meaningful only when !full

  static DeltaValue all() { return {true, 0}; }
  static DeltaValue singleton(Symbol v) { return {false, v}; }

  bool admits(Symbol v) const { return full || symbol == v; }
  /// Set inclusion δ ⊆ other.
  bool subset_of(const DeltaValue& other) const {
    return other.full || (!full && symbol == other.symbol);
  }

  friend bool operator==(const DeltaValue& a, const DeltaValue& b) {
    return a.full == b.full && (a.full || a.symbol == b.symbol);
  }
};

/// A total map n ↦ DeltaValue. Exact when it is ultimately periodic.
class DeltaFn {
 public:
  explicit DeltaFn(Eventual<DeltaValue> values) : exact_(std::move(values)) {}
  explicit DeltaFn(std::function<DeltaValue(std::size_t)> fn) : fn_(std::move(fn)) {}

  DeltaValue operator[](std::size_t n) const { return exact_ ? (*exact_)[n] : fn_(n); }
  bool is_exact() const { return exact_.has_value(); }
  /// Throws HorizonRequired for lazy maps.
  const Eventual<DeltaValue>& exact() const&;
  Eventual<DeltaValue> exact() &&;

 private:
  std::optional<Eventual<DeltaValue>> exact_;
  std::function<DeltaValue(std::size_t)> fn_;
};

class TrimmedTree {
 public:
  /// The full tree T[ω, 0̄] over the binary alphabet.
  TrimmedTree();
  /// The ground is canonicalized to 0 on the branching set; an out-of-range
  /// ground value (off the branching set) throws PreconditionError.
  TrimmedTree(Alphabet alphabet, NatSet branching, Point ground);

  const Alphabet& alphabet() const { return alphabet_; }
  const NatSet& branching() const { return branching_; }
  const Point& ground() const { return ground_; }
  /// When the branching set is not periodic the canonical ground is lazy;
  /// this keeps an exact ground it was built from, if any.
  const std::optional<Point>& ground_source() const { return ground_source_; }

  /// Both the branching set and the ground are ultimately periodic.
  bool is_exact() const { return branching_.is_periodic() && ground_.is_exact(); }

  DeltaValue delta_at(std::size_t n) const {
    return branching_.contains(n) ? DeltaValue::all() : DeltaValue::singleton(ground_[n]);
  }

  /// Exact equality of canonical forms; throws HorizonRequired on lazy trees.
  friend bool operator==(const TrimmedTree& a, const TrimmedTree& b);

 private:
  Alphabet alphabet_;
  NatSet branching_;
  Point ground_;
  std::optional<Point> ground_source_;
};

/// An answer together with how it was obtained: exact answers are decisions,
/// horizon answers only cover coordinates below `depth`.
struct Verdict {
  bool value = false;
  bool exact = true;
  std::size_t depth = 0;
};

/// Largest level size levels() will materialize.
inline constexpr std::size_t kMaxLevelNodes = std::size_t{1} << 22;

/// T[A, α, n]: the nodes of length n+1, sorted lexicographically. Each node is
/// decoded independently from its rank (OpenMP-parallel).
std::vector<FiniteNode> levels(const TrimmedTree& tree, std::size_t n);
/// Reference implementation that follows the inductive level procedure.
std::vector<FiniteNode> levels_serial(const TrimmedTree& tree, std::size_t n);
/// ∏ sizes(i) over i <= n in A, saturating.
std::size_t level_count(const TrimmedTree& tree, std::size_t n);

bool is_node(const TrimmedTree& tree, const FiniteNode& s);

/// T_s = T[A ∖ |s|, α_s]. `s` need not be a node of the tree.
TrimmedTree restrict_tree(const TrimmedTree& tree, const FiniteNode& s);

DeltaFn delta(const TrimmedTree& tree);
TrimmedTree tree_from_delta(const Alphabet& alphabet, const DeltaFn& d);

/// Node-set inclusion P ⊆ T. Exact when both trees are exact; otherwise a
/// horizon must be supplied (else HorizonRequired).
Verdict tree_subset(const TrimmedTree& p, const TrimmedTree& t,
                    std::optional<std::size_t> horizon = std::nullopt);

/// P ⊆ₙ T: inclusion plus agreement of the first n+1 branching coordinates.
Verdict subset_n(const TrimmedTree& p, const TrimmedTree& t, std::size_t n,
                 std::optional<std::size_t> horizon = std::nullopt);

}  // namespace ttree

#endif  // TTREE_TREES_HPP
