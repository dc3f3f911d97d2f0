// Avoidance: responders that shrink a tree away from a target set of points,
// and the constructions that push a responder through levels, countable
// unions and star-closures.

#ifndef TTREE_AVOIDANCE_HPP
#define TTREE_AVOIDANCE_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "ttree/fusion.hpp"
#include "ttree/trees.hpp"

namespace ttree {

/// A finite or countably infinite list of points.
class CountablePointSet {
 public:
  using Generator = std::function<Point(std::size_t)>;

  CountablePointSet() = default;
  explicit CountablePointSet(std::vector<Point> points);
  /// `count` = nullopt means infinite.
  CountablePointSet(Generator gen, std::optional<std::size_t> count);

  std::optional<std::size_t> size() const { return count_; }
  bool finite() const { return count_.has_value(); }
  bool empty() const { return count_ && *count_ == 0; }
  Point at(std::size_t k) const;

  /// Every point overwritten by `s` on [0, |s|).
  CountablePointSet translated(const FiniteNode& s) const;

 private:
  std::shared_ptr<const Generator> gen_;
  std::optional<std::size_t> count_ = 0;
};

/// Given T, returns P ⊆ T whose branches all avoid the target Y.
class AvoidanceResponder {
 public:
  virtual ~AvoidanceResponder() = default;
  virtual TrimmedTree respond(const TrimmedTree& tree) const = 0;
  /// Whether the target class is closed under translates; level_avoid needs it.
  virtual bool translate_closed() const = 0;
  /// A responder for a superset of ∪{Y_s : |s| = len}.
  virtual std::shared_ptr<const AvoidanceResponder> translate_union(std::size_t len) const;
  /// A responder for a superset of Y_t.
  virtual std::shared_ptr<const AvoidanceResponder> translated(const FiniteNode& t) const;
  /// Up to `limit` points of the target, for checking results.
  virtual std::vector<Point> sample_targets(std::size_t limit) const = 0;
};

using ResponderPtr = std::shared_ptr<const AvoidanceResponder>;

/// Y = ∅: every tree is its own response.
ResponderPtr empty_responder();

/// Y = the given points. The response forces, for the j-th point f_j, a fresh
/// branching coordinate c_j to the least symbol different from f_j(c_j).
ResponderPtr point_set_responder(CountablePointSet points);

/// The responder for Y_t built from a responder for Y_s (|s| = |t|):
/// T ↦ T when t ∉ T, otherwise R(T_s)_t.
ResponderPtr translate_responder(ResponderPtr r, FiniteNode s, FiniteNode t);

/// P ⊆ₖ T avoiding Y, with δ(P) = δ(T) below a_k + 1.
TrimmedTree level_avoid(const ResponderPtr& r, const TrimmedTree& t, std::size_t k);

struct AvoidResult {
  TrimmedTree tree;
  FuseResult fusion;
};

/// W ⊆ T avoiding ∪ₖ Y_k, the fusion of T₀ = T, T_{k+1} = level_avoid(Y_k, T_k, k).
/// `count` = nullopt means infinitely many targets.
AvoidResult sigma_avoid(std::function<ResponderPtr(std::size_t)> targets,
                        std::optional<std::size_t> count, const TrimmedTree& t, std::size_t depth);

/// W ⊆ T avoiding [Y]*, via the union of Y_s over all finite s.
AvoidResult star_closure_avoid(const ResponderPtr& r, const TrimmedTree& t, std::size_t depth);

/// The k-th finite sequence over the alphabet in length-lex order.
FiniteNode length_lex_node(const Alphabet& alphabet, std::size_t k);

/// Whether `p` is a branch of `t`. Lazy inputs need a horizon.
Verdict is_branch(const TrimmedTree& t, const Point& p, std::optional<std::size_t> horizon = std::nullopt);

}  // namespace ttree

#endif  // TTREE_AVOIDANCE_HPP
