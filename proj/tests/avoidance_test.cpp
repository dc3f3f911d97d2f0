#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "ttree/avoidance.hpp"
#include "ttree/errors.hpp"

using namespace ttree;
using support::binary_tree;
using support::constant_point;
using support::evens;

namespace {

// The branch of t that takes hash-chosen values at branching coordinates.
Point sample_branch(const TrimmedTree& t, std::uint32_t salt) {
  return Point::lazy([t, salt](std::size_t i) {
    const DeltaValue d = t.delta_at(i);
    if (!d.full) return d.symbol;
    std::uint64_t h = (i + 1) * 0x9E3779B97F4A7C15ull ^ salt * 0xC2B2AE3D27D4EB4Full;
    h ^= h >> 29;
    return static_cast<Symbol>(h % t.alphabet().size(i));
  });
}

bool excludes_prefix(const TrimmedTree& t, const Point& y, std::size_t depth) {
  return !is_node(t, y.prefix(depth));
}

std::vector<Point> distinct_points(std::mt19937& rng, std::size_t count) {
  std::vector<Point> out;
  std::set<FiniteNode> seen;
  while (out.size() < count) {
    const Point p = support::random_point(rng, Alphabet());
    if (seen.insert(p.prefix(64)).second) out.push_back(p);
  }
  return out;
}

}  // namespace

TEST(CountablePointSet, FiniteAndInfinite) {
  const CountablePointSet f({Point(), constant_point(1)});
  EXPECT_EQ(f.size(), std::optional<std::size_t>(2));
  EXPECT_THROW(f.at(2), PreconditionError);
  const CountablePointSet inf([](std::size_t k) { return Point(Eventual<Symbol>::constant(0), {{k, 1}}); }, std::nullopt);
  EXPECT_FALSE(inf.finite());
  EXPECT_EQ(inf.at(7)[7], 1u);
  EXPECT_EQ(inf.translated({1, 1}).at(0).prefix(3), (FiniteNode{1, 1, 0}));
  EXPECT_TRUE(CountablePointSet().empty());
}

TEST(PointSetResponder, SinglePointDodge) {
  const TrimmedTree p = point_set_responder(CountablePointSet({Point()}))->respond(TrimmedTree());
  EXPECT_TRUE(tree_subset(p, TrimmedTree()).value);
  EXPECT_FALSE(is_branch(p, Point()).value);
  EXPECT_EQ(p.delta_at(0), DeltaValue::singleton(1));
}

TEST(PointSetResponder, TwoPointsOverEvens) {
  const TrimmedTree t = binary_tree(evens());
  const TrimmedTree p = point_set_responder(CountablePointSet({Point(), constant_point(1)}))->respond(t);
  EXPECT_EQ(p.delta_at(0), DeltaValue::singleton(1));
  EXPECT_EQ(p.delta_at(4), DeltaValue::singleton(0));
  EXPECT_TRUE(tree_subset(p, t).value);
  for (const auto& s : levels(p, 7)) {
    EXPECT_NE(s, Point().prefix(8));
    EXPECT_NE(s, constant_point(1).prefix(8));
  }
}

TEST(PointSetResponder, PointOutsideTree) {
  const TrimmedTree t = binary_tree(evens());
  const TrimmedTree p = point_set_responder(CountablePointSet({constant_point(1)}))->respond(t);
  EXPECT_TRUE(tree_subset(p, t).value);
  EXPECT_FALSE(is_branch(p, constant_point(1)).value);
}

TEST(PointSetResponder, InfiniteTargetsStayInfinite) {
  const CountablePointSet inf([](std::size_t k) { return Point(Eventual<Symbol>::constant(0), {{k, 1}}); }, std::nullopt);
  const TrimmedTree p = point_set_responder(inf)->respond(TrimmedTree());
  EXPECT_FALSE(p.is_exact());
  for (std::size_t k = 0; k < 30; ++k) {
    EXPECT_TRUE(excludes_prefix(p, inf.at(k), 80));
  }
  EXPECT_GE(p.branching().take(20).size(), 20u);
}

TEST(TranslateResponder, MovesTarget) {
  const ResponderPtr r = point_set_responder(CountablePointSet({Point()}));
  const ResponderPtr moved = translate_responder(r, {0}, {1});
  const Point target(Eventual<Symbol>::constant(0), {{0, 1}});
  const TrimmedTree p = moved->respond(TrimmedTree());
  EXPECT_TRUE(excludes_prefix(p, target, 16));
  EXPECT_TRUE(tree_subset(p, TrimmedTree()).value);
}

TEST(TranslateResponder, SameNodeMatchesOriginal) {
  const ResponderPtr r = point_set_responder(CountablePointSet({constant_point(1)}));
  const TrimmedTree t = binary_tree(evens());
  const TrimmedTree via = translate_responder(r, {0}, {0})->respond(t);
  EXPECT_EQ(via, restrict_tree(r->respond(restrict_tree(t, {0})), {0}));
}

TEST(TranslateResponder, VacuousWhenNodeMissing) {
  const ResponderPtr r = point_set_responder(CountablePointSet({Point()}));
  const TrimmedTree t = binary_tree(evens());
  EXPECT_EQ(translate_responder(r, {0, 0}, {0, 1})->respond(t), t);
  EXPECT_THROW(translate_responder(r, {0}, {0, 1}), PreconditionError);
}

TEST(LevelAvoid, ZeroPointAtLevelOne) {
  const ResponderPtr r = point_set_responder(CountablePointSet({Point()}));
  const TrimmedTree p = level_avoid(r, TrimmedTree(), 1);
  EXPECT_TRUE(subset_n(p, TrimmedTree(), 1).value);
  EXPECT_FALSE(is_branch(p, Point()).value);
  // every translate by a node of length a_1 + 1 = 2 is dodged too
  for (const auto& s : levels(TrimmedTree(), 1)) {
    EXPECT_TRUE(excludes_prefix(p, patch_point(Alphabet(), Point(), s), 32));
  }
}

TEST(LevelAvoid, EmptyTargetKeepsTree) {
  const TrimmedTree t = binary_tree(evens(), constant_point(1));
  EXPECT_EQ(level_avoid(empty_responder(), t, 3), t);
}

TEST(LevelAvoid, RandomRunsKeepSubsetN) {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    const Alphabet x = support::random_alphabet(rng, 3);
    const TrimmedTree t = support::random_tree(rng, x);
    const Point y = support::random_point(rng, x);
    const std::size_t k = support::uniform(rng, 0, 4);
    const TrimmedTree p = level_avoid(point_set_responder(CountablePointSet({y})), t, k);
    EXPECT_TRUE(subset_n(p, t, k).value);
    EXPECT_FALSE(is_branch(p, y).value);
  }
}

TEST(LevelAvoid, RejectsResponderWithoutTranslates) {
  struct Opaque final : AvoidanceResponder {
    TrimmedTree respond(const TrimmedTree& t) const override { return t; }
    bool translate_closed() const override { return false; }
    std::vector<Point> sample_targets(std::size_t) const override { return {}; }
  };
  EXPECT_THROW(level_avoid(std::make_shared<Opaque>(), TrimmedTree(), 0), PreconditionError);
}

TEST(SigmaAvoid, HundredPointsInFullTree) {
  std::mt19937 rng(111);
  const auto pts = distinct_points(rng, 100);
  const auto r = sigma_avoid([&](std::size_t k) { return point_set_responder(CountablePointSet({pts[k]})); }, 100,
                             TrimmedTree(), 64);
  for (const Point& y : pts) EXPECT_TRUE(excludes_prefix(r.tree, y, 64));
  EXPECT_TRUE(tree_subset(r.tree, TrimmedTree(), 64).value);
  for (std::size_t n = 0; n < r.fusion.trace.size(); ++n) EXPECT_TRUE(r.fusion.trace[n].result_inside);
}

TEST(SigmaAvoid, SingleTargetMatchesLevelAvoid) {
  const ResponderPtr r = point_set_responder(CountablePointSet({constant_point(1)}));
  const auto res = sigma_avoid([&](std::size_t) { return r; }, 1, TrimmedTree(), 8);
  EXPECT_EQ(res.tree, level_avoid(r, TrimmedTree(), 0));
}

TEST(SigmaAvoid, CountableStarOfZero) {
  // targets enumerate the finite modifications of 0̄
  const Alphabet x;
  const auto targets = [x](std::size_t k) {
    return point_set_responder(CountablePointSet({patch_point(x, Point(), length_lex_node(x, k))}));
  };
  const auto r = sigma_avoid(targets, std::nullopt, TrimmedTree(), 16);
  for (std::uint32_t salt = 0; salt < 20; ++salt) {
    const Point b = sample_branch(r.tree, salt);
    EXPECT_TRUE(is_branch(r.tree, b, 128).value);
    const auto last = last_disagreement(b, Point(), 128);
    ASSERT_TRUE(last.has_value());
    EXPECT_GE(*last, 120u);
  }
}

TEST(StarClosureAvoid, ZeroPoint) {
  const auto r = star_closure_avoid(point_set_responder(CountablePointSet({Point()})), TrimmedTree(), 16);
  for (std::uint32_t salt = 0; salt < 50; ++salt) {
    const Point b = sample_branch(r.tree, salt);
    // nonzero values keep recurring: no finite modification of 0̄ matches
    for (std::size_t w : {64u, 128u, 256u}) {
      const auto last = last_disagreement(b, Point(), w);
      ASSERT_TRUE(last.has_value());
      EXPECT_GE(*last, w - 8);
    }
    for (std::size_t k = 0; k < 64; ++k) {
      const Point y = patch_point(Alphabet(), Point(), length_lex_node(Alphabet(), k));
      EXPECT_TRUE(last_disagreement(b, y, 64).has_value());
    }
  }
}

TEST(StarClosureAvoid, EmptyTargetKeepsTree) {
  const TrimmedTree t = binary_tree(evens());
  const auto r = star_closure_avoid(empty_responder(), t, 8);
  for (std::size_t i = 0; i < 64; ++i) EXPECT_EQ(r.tree.delta_at(i), t.delta_at(i));
}

TEST(StarClosureAvoid, SameAsSigmaAvoidOnTranslates) {
  const ResponderPtr r = point_set_responder(CountablePointSet({constant_point(1)}));
  const Alphabet x;
  const auto a = star_closure_avoid(r, TrimmedTree(), 12);
  const auto b = sigma_avoid([&](std::size_t k) { return r->translated(length_lex_node(x, k)); }, std::nullopt,
                             TrimmedTree(), 12);
  for (std::size_t i = 0; i < 128; ++i) EXPECT_EQ(a.tree.delta_at(i), b.tree.delta_at(i));
}

TEST(LengthLex, Enumeration) {
  const Alphabet x;
  EXPECT_EQ(length_lex_node(x, 0), FiniteNode{});
  EXPECT_EQ(length_lex_node(x, 1), FiniteNode{0});
  EXPECT_EQ(length_lex_node(x, 2), FiniteNode{1});
  EXPECT_EQ(length_lex_node(x, 3), (FiniteNode{0, 0}));
  EXPECT_EQ(length_lex_node(x, 6), (FiniteNode{1, 1}));
  const Alphabet y(Eventual<Symbol>({3}, {2}));
  EXPECT_EQ(length_lex_node(y, 3), FiniteNode{2});
  EXPECT_EQ(length_lex_node(y, 4), (FiniteNode{0, 0}));
}

TEST(IsBranch, ExactAndHorizon) {
  EXPECT_TRUE(is_branch(binary_tree(evens()), Point(Eventual<Symbol>({}, {1, 0}))).value);
  EXPECT_FALSE(is_branch(binary_tree(evens()), constant_point(1)).value);
  const Point lazy = Point::lazy([](std::size_t i) { return static_cast<Symbol>(i % 4 == 0); });
  EXPECT_THROW(is_branch(binary_tree(evens()), lazy), HorizonRequired);
  const Verdict v = is_branch(binary_tree(evens()), lazy, 32);
  EXPECT_TRUE(v.value);
  EXPECT_FALSE(v.exact);
}
