// Families of pairwise incompatible stars: refinement, avoiding families,
// the selector demonstration and maximality probes.

#ifndef TTREE_PARTITIONS_HPP
#define TTREE_PARTITIONS_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ttree/avoidance.hpp"
#include "ttree/star.hpp"

namespace ttree {

using Family = std::vector<StarSet>;

struct FamilyCheck {
  bool ok = true;
  std::optional<std::pair<std::size_t, std::size_t>> offending;
  bool exact = true;
};

/// Pairwise incompatibility; reports the first compatible pair.
FamilyCheck check_family(const Family& family, std::optional<std::size_t> horizon = std::nullopt);

/// Every member of `p` lies below some member of `q`.
Verdict refines(const Family& p, const Family& q, std::optional<std::size_t> horizon = std::nullopt);

/// Pairwise intersections across the inputs, deduplicated. The result
/// refines every input. Exact inputs only.
Family common_refinement(const std::vector<Family>& families);

/// [R(T)]* for each seed T, thinned greedily in input order: a member
/// compatible with an earlier kept one is dropped.
Family build_avoiding_family(const ResponderPtr& r, const std::vector<TrimmedTree>& seeds,
                             std::optional<std::size_t> horizon = std::nullopt);

struct SelectorDemo {
  /// One branch of each member.
  std::vector<Point> selector;
  /// Responder for the selector: shrinks into a member when possible and
  /// dodges every selector point.
  ResponderPtr responder;
};

/// Lazy members are not intersected; the responder only dodges for them.
SelectorDemo selector_demo(const Family& family);

struct ComplementProbe {
  std::size_t probe = 0;
  /// The member the probe is compatible with, if any.
  std::optional<std::size_t> member;
  /// A star inside both the probe and that member.
  std::optional<StarSet> witness;
  /// True when the probe meets no member: the family is not maximal.
  bool witness_of_non_maximality = false;
};

std::vector<ComplementProbe> complement_check(const Family& family, const std::vector<StarSet>& probes,
                                              std::optional<std::size_t> horizon = std::nullopt);

}  // namespace ttree

#endif  // TTREE_PARTITIONS_HPP
