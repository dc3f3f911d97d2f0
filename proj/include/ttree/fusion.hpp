// Fusion of ⊆ₙ-decreasing tree sequences and the lower-bound pipeline for
// decreasing chains of stars.

#ifndef TTREE_FUSION_HPP
#define TTREE_FUSION_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "ttree/star.hpp"
#include "ttree/trees.hpp"

namespace ttree {

/// Handle to a lazily generated sequence T₀, T₁, ... with the promise
/// T(n+1) ⊆ₙ T(n). Copies share the memoized prefix. The promise is checked
/// whenever an element is materialized; a refuted promise poisons the handle
/// and every later access rethrows the same PromiseViolation.
class TreeSequence {
 public:
  using Generator = std::function<TrimmedTree(std::size_t)>;

  /// `horizon` is the check depth used when a pair of trees is not exact.
  explicit TreeSequence(Generator gen, std::size_t horizon = 64);

  /// The list followed by its last element repeated forever.
  static TreeSequence from_list(std::vector<TrimmedTree> trees, std::size_t horizon = 64);

  /// Materializes (and validates) every element up to n.
  TrimmedTree at(std::size_t n) const;

  /// Index from which the sequence is constant, when known.
  std::optional<std::size_t> stable_from() const;

  std::size_t materialized() const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

struct FuseTraceRow {
  std::size_t n = 0;
  std::size_t a_n_n = 0;  // n-th element of the n-th branching set
  bool checked_subset_n = false;
  bool result_inside = false;  // fused tree ⊆ T(n), checked
};

struct FuseResult {
  TrimmedTree tree;
  std::vector<FuseTraceRow> trace;
  /// Exact when the sequence is eventually constant and its trees are exact;
  /// otherwise inclusions were checked to `depth`.
  bool exact = false;
  std::size_t depth = 0;
};

/// T[C, α] with C = {aₙⁿ} and α the union of the αₙ off Aₙ (0 where
/// unconstrained). Materializes and validates the first depth+1 elements.
FuseResult fuse(const TreeSequence& seq, std::size_t depth);

struct HadamardResult {
  StarSet lower_bound;
  /// The spliced ⊆ₙ-chain Q₀, Q₁, ... fed to fusion.
  std::vector<TrimmedTree> chain;
  /// One certificate per input star: [W]* ⊆ stars[n].
  std::vector<InclusionCert> certs;
  FuseResult fusion;
};

/// A lower bound of a decreasing chain of stars. `link_certs[n]`, when set,
/// certifies stars[n+1] ⊆ stars[n] (used for lazy inputs); otherwise the
/// inclusion is decided with star_subset and must be exact.
HadamardResult hadamard_lower_bound(const std::vector<StarSet>& stars, std::size_t depth,
                                    const std::vector<std::optional<InclusionCert>>& link_certs = {});

/// Infinite chains: stars(n) for every n, each link decided exactly. The
/// spliced chain is built lazily and fused to `depth`; certs cover n <= depth
/// and are Constructed from the splice cutoffs.
HadamardResult hadamard_lower_bound(const std::function<StarSet(std::size_t)>& stars,
                                    std::optional<std::size_t> count, std::size_t depth);

}  // namespace ttree

#endif  // TTREE_FUSION_HPP
