// Random generators for property tests. Everything draws from one
// std::mt19937 so a failing seed reproduces.

#ifndef TTREE_TESTS_SUPPORT_HPP
#define TTREE_TESTS_SUPPORT_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "ttree/avoidance.hpp"
#include "ttree/star.hpp"
#include "ttree/trees.hpp"

namespace support {

using ttree::Alphabet;
using ttree::BitSeq;
using ttree::Eventual;
using ttree::FiniteNode;
using ttree::NatSet;
using ttree::Point;
using ttree::Symbol;
using ttree::TrimmedTree;

inline std::size_t uniform(std::mt19937& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(std::mt19937& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

/// Entries in [2, max_size].
inline Alphabet random_alphabet(std::mt19937& rng, Symbol max_size = 4) {
  std::vector<Symbol> head(uniform(rng, 0, 3)), period(uniform(rng, 1, 3));
  for (auto& v : head) v = static_cast<Symbol>(uniform(rng, 2, max_size));
  for (auto& v : period) v = static_cast<Symbol>(uniform(rng, 2, max_size));
  return Alphabet(Eventual<Symbol>(head, period));
}

/// Ultimately periodic bits with at least one 1 in the period.
inline BitSeq random_bits(std::mt19937& rng, std::size_t max_head = 6, std::size_t max_period = 4) {
  std::vector<bool> head(uniform(rng, 0, max_head)), period(uniform(rng, 1, max_period));
  for (std::size_t i = 0; i < head.size(); ++i) head[i] = coin(rng);
  for (std::size_t i = 0; i < period.size(); ++i) period[i] = coin(rng, 0.6);
  period[uniform(rng, 0, period.size() - 1)] = true;
  return BitSeq(head, period);
}

inline NatSet random_natset(std::mt19937& rng) {
  switch (uniform(rng, 0, 3)) {
    case 0:
      return NatSet::tail_from(uniform(rng, 0, 6));
    case 1: {
      std::set<std::size_t> removed;
      for (std::size_t k = uniform(rng, 1, 3); k > 0; --k) removed.insert(uniform(rng, 0, 10));
      return NatSet::minus_finite(NatSet::up(random_bits(rng)), removed);
    }
    default:
      return NatSet::up(random_bits(rng));
  }
}

/// A point valid for the alphabet.
inline Point random_point(std::mt19937& rng, const Alphabet& alphabet) {
  std::vector<Symbol> head(uniform(rng, 0, 5)), period(uniform(rng, 1, 3));
  for (auto& v : head) v = static_cast<Symbol>(uniform(rng, 0, 3));
  for (auto& v : period) v = static_cast<Symbol>(uniform(rng, 0, 3));
  const Eventual<Symbol> raw(head, period);
  const auto& s = alphabet.sizes();
  const std::size_t h = std::max(raw.stable_from(), s.stable_from());
  const std::size_t p = ttree::checked_lcm(raw.period().size(), s.period().size());
  return Point(Eventual<Symbol>::tabulate(h, p, [&](std::size_t i) { return raw[i] % s[i]; }));
}

inline TrimmedTree random_tree(std::mt19937& rng, const Alphabet& alphabet) {
  return TrimmedTree(alphabet, random_natset(rng), random_point(rng, alphabet));
}

inline TrimmedTree random_tree(std::mt19937& rng) { return random_tree(rng, random_alphabet(rng)); }

/// Elements of A at even rank; infinite with infinite complement in A.
inline NatSet even_rank_part(const NatSet& a) {
  const BitSeq& bits = a.bits();
  const std::size_t p = bits.period().size();
  return NatSet::up(BitSeq::tabulate(bits.stable_from(), 2 * p, [&](std::size_t i) {
    return bits[i] && a.rank(i) % 2 == 0;
  }));
}

/// B ⊆ A with A ∖ B infinite, when `proper`; otherwise B is just infinite.
inline NatSet random_subset(std::mt19937& rng, const NatSet& a, bool proper) {
  const BitSeq& bits = a.bits();
  for (int attempt = 0; attempt < 8; ++attempt) {
    const BitSeq mask = random_bits(rng, 4, 4);
    const BitSeq both = ttree::zip_with(bits, mask, [](bool x, bool y) { return x && y; });
    const BitSeq rest = ttree::zip_with(bits, mask, [](bool x, bool y) { return x && !y; });
    const auto one = [](bool b) { return b; };
    if (!ttree::infinitely_often(both, one)) continue;
    if (proper && !ttree::infinitely_often(rest, one)) continue;
    return NatSet::up(both);
  }
  return proper ? even_rank_part(a) : a;
}

/// A random subtree of an exact tree: branching on a subset of A, ground
/// random on the dropped part of A and equal to t's ground off A.
inline TrimmedTree random_subtree(std::mt19937& rng, const TrimmedTree& t, bool proper = false) {
  const NatSet b = random_subset(rng, t.branching(), proper);
  const Point fill = random_point(rng, t.alphabet());
  const auto& a = t.branching().bits();
  const auto& g = t.ground().exact();
  const auto& f = fill.exact();
  const std::size_t h = std::max({a.stable_from(), g.stable_from(), f.stable_from()});
  const std::size_t p = ttree::checked_lcm(ttree::checked_lcm(a.period().size(), g.period().size()),
                                           f.period().size());
  const Point ground(Eventual<Symbol>::tabulate(h, p, [&](std::size_t i) { return a[i] ? f[i] : g[i]; }));
  return TrimmedTree(t.alphabet(), b, ground);
}

/// `t` changed below `bound`: some coordinates join or leave the branching
/// set and forced values are redrawn. The star is unchanged.
inline TrimmedTree finite_perturbation(std::mt19937& rng, const TrimmedTree& t, std::size_t bound = 8) {
  const BitSeq& a = t.branching().bits();
  std::vector<bool> head(std::max(bound, a.stable_from()));
  for (std::size_t i = 0; i < head.size(); ++i) head[i] = a[i];
  for (std::size_t i = 0; i < bound; ++i) {
    if (coin(rng, 0.3)) head[i] = !head[i];
  }
  std::vector<bool> period(a.period().size());
  for (std::size_t j = 0; j < period.size(); ++j) period[j] = a[head.size() + j];
  std::map<std::size_t, Symbol> patch;
  for (std::size_t i = 0; i < bound; ++i) {
    if (coin(rng, 0.4)) patch[i] = static_cast<Symbol>(uniform(rng, 0, t.alphabet().size(i) - 1));
  }
  return TrimmedTree(t.alphabet(), NatSet::up(head, period), Point(t.ground().exact(), patch));
}

/// A node of length len, each value drawn from the alphabet (not
/// necessarily a node of any particular tree).
inline FiniteNode random_node(std::mt19937& rng, const Alphabet& alphabet, std::size_t len) {
  FiniteNode s(len);
  for (std::size_t i = 0; i < len; ++i) s[i] = static_cast<Symbol>(uniform(rng, 0, alphabet.size(i) - 1));
  return s;
}

/// A node of t of length len.
inline FiniteNode random_node_of(std::mt19937& rng, const TrimmedTree& t, std::size_t len) {
  FiniteNode s(len);
  for (std::size_t i = 0; i < len; ++i) {
    const auto d = t.delta_at(i);
    s[i] = d.full ? static_cast<Symbol>(uniform(rng, 0, t.alphabet().size(i) - 1)) : d.symbol;
  }
  return s;
}

/// T₀ ⊋ T₁ ⊋ ... with strictly decreasing stars, each a perturbed proper
/// subtree of its predecessor.
inline std::vector<TrimmedTree> strict_chain(std::mt19937& rng, const TrimmedTree& top, std::size_t len,
                                             bool perturb = true) {
  std::vector<TrimmedTree> out{top};
  while (out.size() < len) {
    TrimmedTree next = random_subtree(rng, out.back(), true);
    if (perturb) next = finite_perturbation(rng, next);
    out.push_back(next);
  }
  return out;
}

inline Point constant_point(Symbol v) { return Point(Eventual<Symbol>::constant(v)); }

inline NatSet evens() { return NatSet::up({}, {true, false}); }
inline NatSet odds() { return NatSet::up({}, {false, true}); }

inline TrimmedTree binary_tree(const NatSet& a, const Point& ground = Point()) {
  return TrimmedTree(Alphabet(), a, ground);
}

}  // namespace support

#endif  // TTREE_TESTS_SUPPORT_HPP
