#include "ttree/trees.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <string>

#include "ttree/errors.hpp"

namespace ttree {

namespace {

Point canonical_ground(const NatSet& branching, const Point& ground) {
  if (branching.is_periodic() && ground.is_exact()) {
    return Point(zip_with(branching.bits(), ground.exact(),
                          [](bool in_a, Symbol g) { return in_a ? Symbol{0} : g; }));
  }
  return Point::lazy(
      [branching, ground](std::size_t i) { return branching.contains(i) ? Symbol{0} : ground[i]; });
}

}  // namespace

const Eventual<DeltaValue>& DeltaFn::exact() const& {
  if (!exact_) throw HorizonRequired("delta function is not ultimately periodic");
  return *exact_;
}

Eventual<DeltaValue> DeltaFn::exact() && {
  if (!exact_) throw HorizonRequired("delta function is not ultimately periodic");
  return std::move(*exact_);
}

TrimmedTree::TrimmedTree() : TrimmedTree(Alphabet(), NatSet(), Point()) {}

TrimmedTree::TrimmedTree(Alphabet alphabet, NatSet branching, Point ground)
    : alphabet_(std::move(alphabet)),
      branching_(std::move(branching)),
      ground_(canonical_ground(branching_, ground)) {
  check_point(alphabet_, ground_);
  if (!ground_.is_exact() && ground.is_exact()) {
    ground_source_ = ground;
  }
}

bool operator==(const TrimmedTree& a, const TrimmedTree& b) {
  return a.alphabet_ == b.alphabet_ && a.branching_ == b.branching_ && a.ground_ == b.ground_;
}

std::size_t level_count(const TrimmedTree& tree, std::size_t n) {
  std::size_t count = 1;
  for (std::size_t i = 0; i <= n; ++i) {
    if (!tree.branching().contains(i)) continue;
    const std::size_t sz = tree.alphabet().size(i);
    if (count > std::numeric_limits<std::size_t>::max() / sz) {
      return std::numeric_limits<std::size_t>::max();
    }
    count *= sz;
  }
  return count;
}

std::vector<FiniteNode> levels(const TrimmedTree& tree, std::size_t n) {
  const std::size_t count = level_count(tree, n);
  if (count > kMaxLevelNodes) throw PreconditionError("level too large to materialize");

  // Gather everything the kernel reads so that the parallel loop is pure.
  const std::size_t len = n + 1;
  std::vector<Symbol> forced(len);
  std::vector<Symbol> radix(len, 0);  // 0 marks a forced coordinate
  for (std::size_t i = 0; i < len; ++i) {
    if (tree.branching().contains(i)) {
      radix[i] = tree.alphabet().size(i);
    } else {
      forced[i] = tree.ground()[i];
    }
  }

  std::vector<FiniteNode> out(count);
  const auto total = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t idx = 0; idx < total; ++idx) {
    FiniteNode node(forced);
    auto rest = static_cast<std::size_t>(idx);
    for (std::size_t i = len; i-- > 0;) {
      if (radix[i] == 0) continue;
      node[i] = static_cast<Symbol>(rest % radix[i]);
      rest /= radix[i];
    }
    out[static_cast<std::size_t>(idx)] = std::move(node);
  }
  return out;
}

std::vector<FiniteNode> levels_serial(const TrimmedTree& tree, std::size_t n) {
  if (level_count(tree, n) > kMaxLevelNodes) {
    throw PreconditionError("level too large to materialize");
  }
  std::vector<FiniteNode> level{FiniteNode{}};
  for (std::size_t i = 0; i <= n; ++i) {
    std::vector<FiniteNode> next;
    const bool branching = tree.branching().contains(i);
    for (const auto& s : level) {
      if (!branching) {
        next.push_back(s);
        next.back().push_back(tree.ground()[i]);
        continue;
      }
      for (Symbol x = 0; x < tree.alphabet().size(i); ++x) {
        next.push_back(s);
        next.back().push_back(x);
      }
    }
    level = std::move(next);
  }
  return level;
}

bool is_node(const TrimmedTree& tree, const FiniteNode& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] >= tree.alphabet().size(i)) return false;
    if (!tree.branching().contains(i) && s[i] != tree.ground()[i]) return false;
  }
  return true;
}

TrimmedTree restrict_tree(const TrimmedTree& tree, const FiniteNode& s) {
  tree.alphabet().check_node(s);
  if (s.empty()) return tree;
  std::set<std::size_t> below;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (tree.branching().contains(i)) below.insert(i);
  }
  return TrimmedTree(tree.alphabet(), NatSet::minus_finite(tree.branching(), below),
                     patch_point(tree.alphabet(), tree.ground(), s));
}

DeltaFn delta(const TrimmedTree& tree) {
  if (tree.is_exact()) {
    return DeltaFn(zip_with(tree.branching().bits(), tree.ground().exact(),
                            [](bool in_a, Symbol g) {
                              return in_a ? DeltaValue::all() : DeltaValue::singleton(g);
                            }));
  }
  return DeltaFn([tree](std::size_t n) { return tree.delta_at(n); });
}

TrimmedTree tree_from_delta(const Alphabet& alphabet, const DeltaFn& d) {
  if (d.is_exact()) {
    const auto& v = d.exact();
    return TrimmedTree(alphabet, NatSet::up(map_values(v, [](DeltaValue x) { return x.full; })),
                       Point(map_values(v, [](DeltaValue x) { return x.full ? Symbol{0} : x.symbol; })));
  }
  return TrimmedTree(alphabet,
                     NatSet::by_membership([d](std::size_t n) { return d[n].full; }, "delta-branching"),
                     Point::lazy([d](std::size_t n) { return d[n].full ? Symbol{0} : d[n].symbol; }));
}

Verdict tree_subset(const TrimmedTree& p, const TrimmedTree& t, std::optional<std::size_t> horizon) {
  if (!(p.alphabet() == t.alphabet())) throw PreconditionError("trees over different alphabets");
  if (p.is_exact() && t.is_exact()) {
    const auto inside = zip_with(delta(p).exact(), delta(t).exact(),
                                 [](DeltaValue a, DeltaValue b) { return a.subset_of(b); });
    return {inside.head().empty() && eventually_all(inside, [](bool b) { return b; }), true, 0};
  }
  if (!horizon) throw HorizonRequired("tree inclusion on lazy trees needs a horizon");
  for (std::size_t n = 0; n < *horizon; ++n) {
    if (!p.delta_at(n).subset_of(t.delta_at(n))) return {false, false, *horizon};
  }
  return {true, false, *horizon};
}

Verdict subset_n(const TrimmedTree& p, const TrimmedTree& t, std::size_t n,
                 std::optional<std::size_t> horizon) {
  Verdict v = tree_subset(p, t, horizon);
  if (!v.value) return v;
  for (std::size_t k = 0; k <= n; ++k) {
    if (p.branching().nth(k) != t.branching().nth(k)) {
      v.value = false;
      break;
    }
  }
  return v;
}

}  // namespace ttree
