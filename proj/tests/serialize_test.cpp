#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "ttree/errors.hpp"
#include "ttree/serialize.hpp"

using namespace ttree;
using support::binary_tree;
using support::evens;

TEST(Serialize, AlphabetRoundTrip) {
  const Alphabet x(Eventual<Symbol>({3, 2}, {4}));
  EXPECT_EQ(alphabet_from_json(to_json(x)), x);
  EXPECT_EQ(alphabet_from_json(parse_json(R"({"head":[],"period":[2]})")), Alphabet());
}

TEST(Serialize, PointRoundTripAndPatchKeys) {
  const Point p(Eventual<Symbol>({1}, {0, 1}));
  EXPECT_EQ(point_from_json(to_json(p)), p);
  const Point q = point_from_json(parse_json(R"({"base":{"head":[],"period":[0]},"patch":{"3":1}})"));
  EXPECT_EQ(q[3], 1u);
  EXPECT_EQ(q[4], 0u);
  EXPECT_THROW(to_json(Point::lazy([](std::size_t) { return Symbol{0}; })), NotSerializable);
}

TEST(Serialize, NatSetDescriptors) {
  const NatSet a = natset_from_json(parse_json(R"({"minus":{"inner":{"up":{"head":"","period":"10"}},"removed":[0,2]}})"));
  EXPECT_EQ(a.nth(0), 4u);
  EXPECT_EQ(natset_from_json(parse_json(R"({"tail":5})")).nth(0), 5u);
  const NatSet ad = natset_from_json(parse_json(R"({"ad":{"seed":{"head":"1","period":"0"},"carrier":{"tail":0}}})"));
  EXPECT_TRUE(ad.contains(5));
  EXPECT_EQ(natset_from_json(parse_json(R"({"alternate":{"tail":3}})")).nth(1), 5u);
  for (const NatSet& s : {a, ad, NatSet::alternate(evens())}) {
    EXPECT_EQ(natset_from_json(to_json(s)).take(12), s.take(12));
  }
}

TEST(Serialize, TreeRoundTripRandom) {
  std::mt19937 rng(131);
  for (int trial = 0; trial < 200; ++trial) {
    const TrimmedTree t = support::random_tree(rng);
    const Json j = to_json(t);
    EXPECT_EQ(tree_from_json(parse_json(j.dump())), t);
    EXPECT_EQ(j.contains("sizes"), !(t.alphabet() == Alphabet()));
  }
}

TEST(Serialize, AdMemberTreeUsesGroundSource) {
  const NatSet ad = ad_family(NatSet(), 1)[0];
  const Point g(Eventual<Symbol>::constant(1));
  const TrimmedTree t(Alphabet(), ad, g);
  const TrimmedTree back = tree_from_json(to_json(t));
  for (std::size_t i = 0; i < 64; ++i) EXPECT_EQ(back.delta_at(i), t.delta_at(i));
}

TEST(Serialize, FamilyRoundTrip) {
  const Family f{StarSet(binary_tree(evens())), StarSet(TrimmedTree())};
  const Family g = family_from_json(to_json(f));
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0].tree(), f[0].tree());
  EXPECT_EQ(g[1].tree(), f[1].tree());
}

TEST(Serialize, CertAndCells) {
  const Json c = to_json(InclusionCert{CertKind::Exact, 3, 0, ""});
  EXPECT_EQ(c.at("kind"), "exact");
  EXPECT_EQ(c.at("k0"), 3);
  const Json h = to_json(InclusionCert{CertKind::Horizon, 0, 64, "window"});
  EXPECT_EQ(h.at("depth"), 64);
  EXPECT_EQ(to_json(PatternCell{Cell::Empty, 0}), "empty");
  EXPECT_EQ(to_json(PatternCell{Cell::Full, 0}), "full");
  EXPECT_EQ(to_json(PatternCell{Cell::Single, 1}), Json({{"single", 1}}));
}

TEST(Serialize, MalformedInputIsParseError) {
  EXPECT_THROW(parse_json("{not json"), ParseError);
  EXPECT_THROW(tree_from_json(parse_json(R"({"A":{"bogus":1}})")), ParseError);
  EXPECT_THROW(natset_from_json(parse_json(R"({"up":{"head":"","period":"0"}})")), Error);
  EXPECT_THROW(point_from_json(parse_json(R"({"base":{"head":[],"period":[]}})")), ParseError);
}
