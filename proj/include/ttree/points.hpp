// The product universe ∏Xᵢ over finite alphabets Xᵢ = {0, ..., sizes(i)-1},
// its points, and finite nodes.

#ifndef TTREE_POINTS_HPP
#define TTREE_POINTS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "ttree/eventual.hpp"

namespace ttree {

using Symbol = std::uint32_t;

/// A node of ∏_fin Xᵢ: values for coordinates 0..size()-1. The empty node is
/// allowed.
using FiniteNode = std::vector<Symbol>;

class Alphabet {
 public:
  /// Constant binary alphabet.
  Alphabet();
  /// Throws PreconditionError if some entry is below 2.
  explicit Alphabet(Eventual<Symbol> sizes);

  static Alphabet constant(Symbol size);

  Symbol size(std::size_t i) const { return sizes_[i]; }
  const Eventual<Symbol>& sizes() const { return sizes_; }

  /// Throws PreconditionError when a symbol is out of range.
  void check_node(const FiniteNode& node) const;

  /// Number of nodes of length `len` in ∏_fin Xᵢ, saturating at SIZE_MAX.
  std::size_t node_count(std::size_t len) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.sizes_ == b.sizes_; }

 private:
  Eventual<Symbol> sizes_;
};

/// A point of ∏Xᵢ. Exact points are ultimately periodic (finite patches are
/// folded into the head on construction, so the representation is canonical).
/// Lazy points wrap a generator; they arise from constructions over sets that
/// are not ultimately periodic and only support evaluation.
class Point {
 public:
  using Generator = std::function<Symbol(std::size_t)>;

  /// The constant zero point.
  Point() = default;
  explicit Point(Eventual<Symbol> values) : values_(std::move(values)) {}
  Point(const Eventual<Symbol>& base, const std::map<std::size_t, Symbol>& patch);

  static Point lazy(Generator gen);

  Symbol operator[](std::size_t i) const { return gen_ ? (*gen_)(i) : values_[i]; }

  bool is_exact() const { return gen_ == nullptr; }

  /// Throws HorizonRequired for lazy points.
  const Eventual<Symbol>& exact() const;

  /// Values at coordinates [0, len).
  FiniteNode prefix(std::size_t len) const;

  /// Exact comparison; throws HorizonRequired if either side is lazy.
  friend bool operator==(const Point& a, const Point& b);

 private:
  Eventual<Symbol> values_;
  std::shared_ptr<const Generator> gen_;
};

Symbol point_value(const Point& p, std::size_t i);

/// Throws PreconditionError when some value is out of range for the alphabet
/// (exact points are checked everywhere, lazy ones are not checked).
void check_point(const Alphabet& alphabet, const Point& p);

/// The point agreeing with `s` on [0, |s|) and with `p` elsewhere.
Point patch_point(const Alphabet& alphabet, const Point& p, const FiniteNode& s);

/// nullopt if p and q differ at infinitely many coordinates; otherwise the
/// least k such that they agree at every coordinate >= k. Exact points only.
std::optional<std::size_t> eventually_agrees(const Point& p, const Point& q);

/// Horizon evidence for lazy points: the last coordinate below `window` where
/// p and q differ, or nullopt if they agree on the whole window.
std::optional<std::size_t> last_disagreement(const Point& p, const Point& q, std::size_t window);

}  // namespace ttree

#endif  // TTREE_POINTS_HPP
