#include "ttree/avoidance.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <string>

#include "ttree/errors.hpp"

namespace ttree {

namespace {

Point overwrite(const Point& p, const FiniteNode& s) {
  if (s.empty()) return p;
  if (p.is_exact()) {
    std::map<std::size_t, Symbol> patch;
    for (std::size_t i = 0; i < s.size(); ++i) patch[i] = s[i];
    return Point(p.exact(), patch);
  }
  return Point::lazy([p, s](std::size_t i) { return i < s.size() ? s[i] : p[i]; });
}

Symbol dodge(Symbol v) { return v == 0 ? 1 : 0; }

class EmptyResponder final : public AvoidanceResponder {
 public:
  TrimmedTree respond(const TrimmedTree& tree) const override { return tree; }
  bool translate_closed() const override { return true; }
  ResponderPtr translate_union(std::size_t) const override { return empty_responder(); }
  ResponderPtr translated(const FiniteNode&) const override { return empty_responder(); }
  std::vector<Point> sample_targets(std::size_t) const override { return {}; }
};

// Targets ∪{F_s : |s| = free_prefix}.
class PointSetResponder final : public AvoidanceResponder {
 public:
  PointSetResponder(CountablePointSet points, std::size_t free_prefix)
      : points_(std::move(points)), free_prefix_(free_prefix) {}

  TrimmedTree respond(const TrimmedTree& tree) const override {
    if (points_.empty()) return tree;
    const NatSet& a = tree.branching();
    const std::size_t base = a.rank(free_prefix_);
    // Every other element of A from the free prefix on, so that infinitely
    // many branching coordinates remain even for infinite targets.
    if (points_.finite() && a.is_periodic() && tree.ground().is_exact()) {
      std::set<std::size_t> forced;
      std::map<std::size_t, Symbol> patch;
      for (std::size_t j = 0; j < *points_.size(); ++j) {
        const std::size_t c = a.nth(base + 2 * j);
        forced.insert(c);
        patch[c] = dodge(points_.at(j)[c]);
      }
      return TrimmedTree(tree.alphabet(), NatSet::minus_finite(a, forced),
                         Point(tree.ground().exact(), patch));
    }
    const auto count = points_.size();
    auto forced_index = [a, base, count](std::size_t i) -> std::optional<std::size_t> {
      if (!a.contains(i)) return std::nullopt;
      const std::size_t r = a.rank(i);
      if (r < base || (r - base) % 2 != 0) return std::nullopt;
      const std::size_t j = (r - base) / 2;
      if (count && j >= *count) return std::nullopt;
      return j;
    };
    const CountablePointSet points = points_;
    const Point ground = tree.ground();
    return TrimmedTree(
        tree.alphabet(),
        NatSet::by_membership([a, forced_index](std::size_t i) { return a.contains(i) && !forced_index(i); },
                              "dodged"),
        Point::lazy([forced_index, points, ground](std::size_t i) {
          const auto j = forced_index(i);
          return j ? dodge(points.at(*j)[i]) : ground[i];
        }));
  }

  bool translate_closed() const override { return true; }

  ResponderPtr translate_union(std::size_t len) const override {
    return std::make_shared<PointSetResponder>(points_, std::max(len, free_prefix_));
  }

  ResponderPtr translated(const FiniteNode& t) const override {
    // (f_s)_t = f_t once t covers the free prefix; otherwise the translate is
    // already among the f_s.
    if (t.size() >= free_prefix_) {
      return std::make_shared<PointSetResponder>(points_.translated(t), 0);
    }
    return std::make_shared<PointSetResponder>(points_, free_prefix_);
  }

  std::vector<Point> sample_targets(std::size_t limit) const override {
    std::vector<Point> out;
    const std::size_t n = points_.size() ? std::min(*points_.size(), limit) : limit;
    for (std::size_t j = 0; j < n; ++j) {
      const Point f = points_.at(j);
      out.push_back(f);
      if (free_prefix_ > 0) {
        // One nontrivial translate per point: flip the free prefix to 1s.
        out.push_back(overwrite(f, FiniteNode(free_prefix_, 1)));
      }
    }
    return out;
  }

 private:
  CountablePointSet points_;
  std::size_t free_prefix_;
};

class TranslateResponder final : public AvoidanceResponder {
 public:
  TranslateResponder(ResponderPtr r, FiniteNode s, FiniteNode t)
      : r_(std::move(r)), s_(std::move(s)), t_(std::move(t)) {}

  TrimmedTree respond(const TrimmedTree& tree) const override {
    if (!is_node(tree, t_)) return tree;
    tree.alphabet().check_node(s_);
    const TrimmedTree ps = r_->respond(restrict_tree(tree, s_));
    return restrict_tree(ps, t_);
  }

  bool translate_closed() const override { return r_->translate_closed(); }

  ResponderPtr translate_union(std::size_t len) const override {
    return r_->translate_union(std::max({len, s_.size(), t_.size()}));
  }

  std::vector<Point> sample_targets(std::size_t limit) const override {
    std::vector<Point> out;
    for (const Point& y : r_->sample_targets(limit)) out.push_back(overwrite(y, t_));
    return out;
  }

 private:
  ResponderPtr r_;
  FiniteNode s_, t_;
};

}  // namespace

CountablePointSet::CountablePointSet(std::vector<Point> points) : count_(points.size()) {
  auto shared = std::make_shared<const std::vector<Point>>(std::move(points));
  gen_ = std::make_shared<const Generator>([shared](std::size_t k) { return (*shared)[k]; });
}

CountablePointSet::CountablePointSet(Generator gen, std::optional<std::size_t> count)
    : gen_(std::make_shared<const Generator>(std::move(gen))), count_(count) {}

Point CountablePointSet::at(std::size_t k) const {
  if (!gen_ || (count_ && k >= *count_)) throw PreconditionError("point index out of range");
  return (*gen_)(k);
}

CountablePointSet CountablePointSet::translated(const FiniteNode& s) const {
  if (!gen_) return *this;
  auto gen = gen_;
  return CountablePointSet([gen, s](std::size_t k) { return overwrite((*gen)(k), s); }, count_);
}

ResponderPtr AvoidanceResponder::translate_union(std::size_t) const {
  throw PreconditionError("responder does not support translates");
}

ResponderPtr AvoidanceResponder::translated(const FiniteNode& t) const {
  return translate_union(t.size());
}

ResponderPtr empty_responder() { return std::make_shared<EmptyResponder>(); }

ResponderPtr point_set_responder(CountablePointSet points) {
  return std::make_shared<PointSetResponder>(std::move(points), 0);
}

ResponderPtr translate_responder(ResponderPtr r, FiniteNode s, FiniteNode t) {
  if (s.size() != t.size()) throw PreconditionError("translate needs |s| = |t|");
  return std::make_shared<TranslateResponder>(std::move(r), std::move(s), std::move(t));
}

TrimmedTree level_avoid(const ResponderPtr& r, const TrimmedTree& t, std::size_t k) {
  if (!r->translate_closed()) {
    throw PreconditionError("level avoidance needs a translate-closed target class");
  }
  const std::size_t cut = t.branching().nth(k) + 1;
  const TrimmedTree q = r->translate_union(cut)->respond(t);

  if (t.is_exact() && q.is_exact()) {
    const auto& ta = t.branching().bits();
    const auto& qa = q.branching().bits();
    const auto& tg = t.ground().exact();
    const auto& qg = q.ground().exact();
    const std::size_t head = std::max({cut, qa.stable_from(), qg.stable_from()});
    const std::size_t period = checked_lcm(qa.period().size(), qg.period().size());
    auto bits = BitSeq::tabulate(head, period, [&](std::size_t i) { return i < cut ? ta[i] : qa[i]; });
    auto ground = Eventual<Symbol>::tabulate(head, period, [&](std::size_t i) { return i < cut ? tg[i] : qg[i]; });
    TrimmedTree p(t.alphabet(), NatSet::up(bits), Point(ground));
    if (!subset_n(p, t, k).value) throw Error("level avoidance broke ⊆_" + std::to_string(k));
    return p;
  }
  const NatSet ta = t.branching(), qa = q.branching();
  const Point tg = t.ground(), qg = q.ground();
  return TrimmedTree(
      t.alphabet(),
      NatSet::by_membership([=](std::size_t i) { return i < cut ? ta.contains(i) : qa.contains(i); },
                            "level-avoid"),
      Point::lazy([=](std::size_t i) { return i < cut ? tg[i] : qg[i]; }));
}

AvoidResult sigma_avoid(std::function<ResponderPtr(std::size_t)> targets,
                        std::optional<std::size_t> count, const TrimmedTree& t, std::size_t depth) {
  if (count) {
    std::vector<TrimmedTree> chain{t};
    for (std::size_t k = 0; k < *count; ++k) chain.push_back(level_avoid(targets(k), chain.back(), k));
    AvoidResult out{chain.back(), fuse(TreeSequence::from_list(chain, depth), depth)};
    out.tree = out.fusion.tree;
    return out;
  }
  struct Memo {
    std::mutex mu;
    std::vector<TrimmedTree> chain;
  };
  auto memo = std::make_shared<Memo>();
  memo->chain.push_back(t);
  TreeSequence seq(
      [memo, targets](std::size_t n) {
        std::lock_guard lock(memo->mu);
        while (memo->chain.size() <= n) {
          const std::size_t k = memo->chain.size() - 1;
          memo->chain.push_back(level_avoid(targets(k), memo->chain.back(), k));
        }
        return memo->chain[n];
      },
      depth);
  AvoidResult out{t, fuse(seq, depth)};
  out.tree = out.fusion.tree;
  return out;
}

AvoidResult star_closure_avoid(const ResponderPtr& r, const TrimmedTree& t, std::size_t depth) {
  const Alphabet alphabet = t.alphabet();
  return sigma_avoid([r, alphabet](std::size_t k) { return r->translated(length_lex_node(alphabet, k)); },
                     std::nullopt, t, depth);
}

FiniteNode length_lex_node(const Alphabet& alphabet, std::size_t k) {
  std::size_t len = 0;
  for (;;) {
    const std::size_t count = alphabet.node_count(len);
    if (k < count) break;
    k -= count;
    ++len;
  }
  FiniteNode node(len);
  for (std::size_t i = len; i-- > 0;) {
    node[i] = static_cast<Symbol>(k % alphabet.size(i));
    k /= alphabet.size(i);
  }
  return node;
}

Verdict is_branch(const TrimmedTree& t, const Point& p, std::optional<std::size_t> horizon) {
  if (t.is_exact() && p.is_exact()) {
    const auto ok = zip_with(delta(t).exact(), p.exact(), [](DeltaValue d, Symbol v) { return d.admits(v); });
    return {ok.head().empty() && eventually_all(ok, [](bool b) { return b; }), true, 0};
  }
  if (!horizon) throw HorizonRequired("branch membership of lazy inputs needs a horizon");
  for (std::size_t i = 0; i < *horizon; ++i) {
    if (!t.delta_at(i).admits(p[i])) return {false, false, *horizon};
  }
  return {true, false, *horizon};
}

}  // namespace ttree
