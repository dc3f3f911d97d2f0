#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "ttree/errors.hpp"
#include "ttree/star.hpp"

using namespace ttree;
using support::binary_tree;
using support::evens;
using support::odds;

namespace {

StarSet star(const TrimmedTree& t) { return StarSet(t); }

// Smallest k such that δ(P) ⊆ δ(T) on [k, bound), from a plain scan.
std::optional<std::size_t> scan_k0(const TrimmedTree& p, const TrimmedTree& t, std::size_t bound) {
  std::optional<std::size_t> last;
  for (std::size_t k = 0; k < bound; ++k) {
    if (!p.delta_at(k).subset_of(t.delta_at(k))) last = k;
  }
  if (last && *last >= bound / 2) return std::nullopt;
  return last ? *last + 1 : 0;
}

}  // namespace

TEST(InStar, FiniteModificationsOfBranches) {
  const StarSet s = star(binary_tree(evens()));
  EXPECT_TRUE(in_star(s, Point()));
  EXPECT_TRUE(in_star(s, Point(Eventual<Symbol>::constant(0), {{1, 1}, {3, 1}})));
  EXPECT_FALSE(in_star(s, support::constant_point(1)));
}

TEST(StarSubset, SubsetOfFull) {
  const auto r = star_subset(star(binary_tree(evens())), star(TrimmedTree()));
  EXPECT_TRUE(r.answer);
  EXPECT_EQ(r.cert.kind, CertKind::Exact);
  EXPECT_EQ(r.cert.k0, 0u);
}

TEST(StarSubset, FullNotInsideEvens) {
  EXPECT_FALSE(star_subset(star(TrimmedTree()), star(binary_tree(evens()))).answer);
}

TEST(StarSubset, LeastBoundAfterFiniteChange) {
  const TrimmedTree p = binary_tree(evens());
  const TrimmedTree t = binary_tree(NatSet::minus_finite(evens(), {0, 2}), Point(Eventual<Symbol>::constant(0), {{0, 1}}));
  const auto fwd = star_subset(star(t), star(p));
  EXPECT_TRUE(fwd.answer);
  EXPECT_EQ(fwd.cert.k0, 0u);
  const auto rev = star_subset(star(p), star(t));
  EXPECT_TRUE(rev.answer);
  EXPECT_EQ(rev.cert.k0, 3u);
}

TEST(StarSubset, AgreesWithScanAndLeastBound) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const Alphabet x = support::random_alphabet(rng, 3);
    const TrimmedTree t = support::random_tree(rng, x);
    const TrimmedTree p = support::coin(rng) ? support::finite_perturbation(rng, support::random_subtree(rng, t))
                                             : support::random_tree(rng, x);
    const auto r = star_subset(star(p), star(t));
    const auto k = scan_k0(p, t, 256);
    EXPECT_EQ(r.answer, k.has_value());
    if (k) EXPECT_EQ(r.cert.k0, *k);
  }
}

TEST(StarSubset, PreorderOnSamples) {
  std::mt19937 rng(32);
  for (int trial = 0; trial < 80; ++trial) {
    const TrimmedTree a = support::random_tree(rng);
    const TrimmedTree b = support::finite_perturbation(rng, support::random_subtree(rng, a));
    const TrimmedTree c = support::finite_perturbation(rng, support::random_subtree(rng, b));
    EXPECT_TRUE(star_subset(star(a), star(a)).answer);
    ASSERT_TRUE(star_subset(star(c), star(b)).answer);
    ASSERT_TRUE(star_subset(star(b), star(a)).answer);
    EXPECT_TRUE(star_subset(star(c), star(a)).answer);
    // mutual inclusion iff δ's agree from some point on
    const bool mutual = star_subset(star(b), star(a)).answer && star_subset(star(a), star(b)).answer;
    bool agree = true;
    for (std::size_t k = 128; k < 256 && agree; ++k) agree = a.delta_at(k) == b.delta_at(k);
    EXPECT_EQ(mutual, agree);
  }
}

TEST(StarSubset, LazyInputsGiveHorizonCert) {
  const NatSet lazy = NatSet::by_membership([](std::size_t n) { return n % 4 == 0; }, "fours");
  EXPECT_THROW(star_subset(star(binary_tree(lazy)), star(binary_tree(evens()))), HorizonRequired);
  const auto r = star_subset(star(binary_tree(lazy)), star(binary_tree(evens())), 64);
  EXPECT_TRUE(r.answer);
  EXPECT_EQ(r.cert.kind, CertKind::Horizon);
  EXPECT_EQ(r.cert.depth, 64u);
}

TEST(StarIntersect, EvensOddsIncompatible) {
  const auto r = star_intersect(star(binary_tree(evens())), star(binary_tree(odds())));
  EXPECT_FALSE(r.compatible);
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_FALSE(r.pattern.infinitely_many_full);
}

TEST(StarIntersect, SubsetCaseWitness) {
  const auto r = star_intersect(star(TrimmedTree()), star(binary_tree(evens())));
  ASSERT_TRUE(r.compatible);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->tree(), binary_tree(evens()));
}

TEST(StarIntersect, InfinitelyManyEmptyIncompatible) {
  const TrimmedTree p = binary_tree(NatSet::up({}, {true, false, false, false}));
  const TrimmedTree q = binary_tree(evens(), support::constant_point(1));
  const auto r = star_intersect(star(p), star(q));
  EXPECT_FALSE(r.compatible);
  EXPECT_FALSE(r.pattern.finitely_many_empty);
  EXPECT_EQ(r.pattern.window.at(1).cell, Cell::Empty);
}

TEST(StarIntersect, WitnessIsMaximalLowerBound) {
  std::mt19937 rng(41);
  int compatible = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const Alphabet x = support::random_alphabet(rng, 3);
    const TrimmedTree p = support::random_tree(rng, x);
    const TrimmedTree q = support::coin(rng) ? support::finite_perturbation(rng, support::random_subtree(rng, p))
                                             : support::random_tree(rng, x);
    const auto r = star_intersect(star(p), star(q));
    if (!r.compatible) continue;
    ++compatible;
    const StarSet& w = *r.witness;
    EXPECT_TRUE(star_subset(w, star(p)).answer);
    EXPECT_TRUE(star_subset(w, star(q)).answer);
    for (int s = 0; s < 5; ++s) {
      const TrimmedTree sub = support::finite_perturbation(rng, support::random_subtree(rng, w.tree()));
      if (star_subset(star(sub), star(p)).answer && star_subset(star(sub), star(q)).answer) {
        EXPECT_TRUE(star_subset(star(sub), w).answer);
      }
    }
  }
  EXPECT_GT(compatible, 20);
}

TEST(StarIntersect, IncompatibleCommonPointsAreModificationsOfOne) {
  // evens/odds: a common element is forced to 0 off a finite set on both halves
  const StarSet a = star(binary_tree(evens())), b = star(binary_tree(odds()));
  std::mt19937 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const Point p(Eventual<Symbol>::constant(0), [&] {
      std::map<std::size_t, Symbol> m;
      for (int i = 0; i < 3; ++i) m[support::uniform(rng, 0, 9)] = 1;
      return m;
    }());
    ASSERT_TRUE(in_star(a, p) && in_star(b, p));
    EXPECT_TRUE(eventually_agrees(p, Point()).has_value());
  }
}

TEST(Splice, CopiesTreeUpToCutoff) {
  const TrimmedTree p = binary_tree(NatSet::minus_finite(evens(), {0}));
  const TrimmedTree t = binary_tree(evens());
  const InclusionCert cert{CertKind::Exact, 0, 0, ""};
  EXPECT_EQ(splice_cutoff(t, 1, cert), 2u);
  const TrimmedTree q = splice(p, t, 1, cert);
  for (std::size_t k = 0; k <= 2; ++k) EXPECT_EQ(q.delta_at(k), t.delta_at(k));
  for (std::size_t k = 3; k < 40; ++k) EXPECT_EQ(q.delta_at(k), p.delta_at(k));
  EXPECT_TRUE(subset_n(q, t, 1).value);
}

TEST(Splice, SelfSpliceIsIdentity) {
  const TrimmedTree t = binary_tree(odds(), support::constant_point(1));
  for (std::size_t n = 0; n < 5; ++n) EXPECT_EQ(splice(t, t, n, InclusionCert{}), t);
}

TEST(Splice, RejectsBadCertificate) {
  EXPECT_THROW(splice(TrimmedTree(), binary_tree(evens()), 0, InclusionCert{}), PreconditionError);
  EXPECT_THROW(splice(binary_tree(evens()), TrimmedTree(), 0, InclusionCert{CertKind::Horizon, 0, 8, ""}),
               PreconditionError);
}

TEST(Splice, PropertyOnRandomInputs) {
  std::mt19937 rng(51);
  for (int trial = 0; trial < 50; ++trial) {
    const TrimmedTree t = support::random_tree(rng);
    const TrimmedTree p = support::finite_perturbation(rng, support::random_subtree(rng, t));
    const auto r = star_subset(star(p), star(t));
    ASSERT_TRUE(r.answer);
    const std::size_t n = support::uniform(rng, 0, 4);
    const TrimmedTree q = splice(p, t, n, r.cert);
    EXPECT_TRUE(subset_n(q, t, n).value);
    const auto qp = star_subset(star(q), star(p)), pq = star_subset(star(p), star(q));
    EXPECT_TRUE(qp.answer && pq.answer);
    EXPECT_EQ(qp.cert.kind, CertKind::Exact);
  }
}

TEST(Separative, FullAgainstEvens) {
  const StarSet p = star(TrimmedTree()), t = star(binary_tree(evens()));
  const StarSet q = separative_witness(p, t);
  EXPECT_TRUE(star_subset(q, p).answer);
  const auto r = star_intersect(q, t);
  EXPECT_FALSE(r.compatible);
  EXPECT_FALSE(r.pattern.finitely_many_empty);
  // forced to 1 on a set of odd coordinates, full elsewhere
  for (std::size_t n = 0; n < 40; ++n) {
    const DeltaValue d = q.tree().delta_at(n);
    if (!d.full) {
      EXPECT_EQ(n % 2, 1u);
      EXPECT_EQ(d.symbol, 1u);
    }
  }
}

TEST(Separative, InclusionIsPreconditionError) {
  EXPECT_THROW(separative_witness(star(binary_tree(evens())), star(TrimmedTree())), PreconditionError);
}

TEST(Separative, PropertyOnNonInclusionPairs) {
  std::mt19937 rng(61);
  int checked = 0;
  while (checked < 50) {
    const Alphabet x = support::random_alphabet(rng, 3);
    const TrimmedTree p = support::random_tree(rng, x), t = support::random_tree(rng, x);
    if (star_subset(star(p), star(t)).answer) continue;
    ++checked;
    const StarSet q = separative_witness(star(p), star(t));
    EXPECT_TRUE(star_subset(q, star(p)).answer);
    EXPECT_FALSE(star_intersect(q, star(t)).compatible);
  }
}

TEST(DisjointFamily, TwoMembersOverFullTree) {
  const auto fam = disjoint_family(TrimmedTree(), 2);
  ASSERT_EQ(fam.size(), 2u);
  const auto hits = forced_disagreements(fam[0].tree(), fam[1].tree(), 512);
  EXPECT_GE(hits.size(), 2u);
  // disagreements keep coming: some in the upper half of the window
  EXPECT_GE(hits.back(), 256u);
}

TEST(DisjointFamily, SingleMemberInsideTree) {
  const auto fam = disjoint_family(TrimmedTree(), 1);
  ASSERT_EQ(fam.size(), 1u);
  EXPECT_TRUE(tree_subset(fam[0].tree(), TrimmedTree(), 256).value);
}

TEST(DisjointFamily, MembersAreSubtreesOfEvens) {
  const TrimmedTree t = binary_tree(evens());
  const auto fam = disjoint_family(t, 3);
  for (const auto& m : fam) {
    EXPECT_TRUE(tree_subset(m.tree(), t, 512).value);
    EXPECT_TRUE(star_subset(m, star(t), 512).answer);
  }
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      EXPECT_FALSE(forced_disagreements(fam[i].tree(), fam[j].tree(), 2048).empty());
      EXPECT_FALSE(star_intersect(fam[i], fam[j], 2048).compatible);
    }
  }
}

TEST(Iso, TopMapsToTop) {
  const TrimmedTree t = binary_tree(evens());
  const TrimmedTree img = iso_phi(t, t);
  EXPECT_EQ(img.alphabet(), reindexed_alphabet(t));
  EXPECT_TRUE(img.branching() == NatSet());
}

TEST(Iso, ReindexedAlphabetReadsBranchingCoordinates) {
  const TrimmedTree t(Alphabet(Eventual<Symbol>({}, {2, 3, 4})), evens(), Point());
  const Alphabet x = reindexed_alphabet(t);
  for (std::size_t k = 0; k < 12; ++k) EXPECT_EQ(x.size(k), t.alphabet().size(2 * k));
}

TEST(Iso, MutualInverseAndOrder) {
  std::mt19937 rng(71);
  for (int trial = 0; trial < 50; ++trial) {
    const TrimmedTree t = support::random_tree(rng);
    const TrimmedTree s1 = support::random_subtree(rng, t);
    const TrimmedTree s2 = support::coin(rng) ? support::random_subtree(rng, s1) : support::random_subtree(rng, t);
    const TrimmedTree i1 = iso_phi(t, s1), i2 = iso_phi(t, s2);
    EXPECT_EQ(iso_psi(t, i1), s1);
    EXPECT_EQ(iso_phi(t, iso_psi(t, i2)), i2);
    EXPECT_EQ(tree_subset(s2, s1).value, tree_subset(i2, i1).value);
  }
}

TEST(Iso, ExplicitPrefixPermutation) {
  const TrimmedTree t = TrimmedTree();
  const std::vector<std::size_t> perm{2, 0, 1};
  const TrimmedTree sub = binary_tree(NatSet::minus_finite(NatSet(), {0}), support::constant_point(1));
  const TrimmedTree img = iso_phi(t, sub, perm);
  // coordinate 0 of sub goes to 2
  EXPECT_FALSE(img.branching().contains(2));
  EXPECT_EQ(img.ground()[2], 1u);
  EXPECT_EQ(iso_psi(t, img, perm), sub);
  EXPECT_THROW(iso_phi(t, sub, {0, 0}), PreconditionError);
}

TEST(Iso, RejectsNonSubtree) {
  EXPECT_THROW(iso_phi(binary_tree(evens()), TrimmedTree()), PreconditionError);
}
