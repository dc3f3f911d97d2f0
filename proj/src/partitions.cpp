#include "ttree/partitions.hpp"

#include <algorithm>

#include "ttree/errors.hpp"

namespace ttree {

namespace {

bool same_tree(const TrimmedTree& a, const TrimmedTree& b) {
  return a.is_exact() && b.is_exact() && a == b;
}

class SelectorResponder final : public AvoidanceResponder {
 public:
  SelectorResponder(Family family, std::vector<Point> points)
      : family_(std::move(family)), points_(std::move(points)) {}

  TrimmedTree respond(const TrimmedTree& tree) const override {
    const ResponderPtr dodge = point_set_responder(CountablePointSet(points_));
    for (const StarSet& m : family_) {
      if (!tree.is_exact() || !m.tree().is_exact()) continue;
      const IntersectResult meet = star_intersect(StarSet(tree), m);
      if (!meet.compatible) continue;
      // [R]* ⊆ [T]*; splice R under T and drop the selector points.
      const TrimmedTree& r = meet.witness->tree();
      const StarSubsetResult inside = star_subset(StarSet(r), StarSet(tree));
      return dodge->respond(splice(r, tree, 0, inside.cert));
    }
    return dodge->respond(tree);
  }

  bool translate_closed() const override { return true; }

  ResponderPtr translate_union(std::size_t len) const override {
    return point_set_responder(CountablePointSet(points_))->translate_union(len);
  }

  std::vector<Point> sample_targets(std::size_t limit) const override {
    std::vector<Point> out(points_.begin(), points_.begin() + std::min(limit, points_.size()));
    return out;
  }

 private:
  Family family_;
  std::vector<Point> points_;
};

}  // namespace

FamilyCheck check_family(const Family& family, std::optional<std::size_t> horizon) {
  FamilyCheck out;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      const IntersectResult r = star_intersect(family[i], family[j], horizon);
      if (r.kind != CertKind::Exact) out.exact = false;
      if (r.compatible) {
        out.ok = false;
        out.offending = {i, j};
        return out;
      }
    }
  }
  return out;
}

Verdict refines(const Family& p, const Family& q, std::optional<std::size_t> horizon) {
  Verdict out{true, true, horizon.value_or(0)};
  for (const StarSet& m : p) {
    bool below = false;
    for (const StarSet& n : q) {
      const StarSubsetResult r = star_subset(m, n, horizon);
      if (r.cert.kind == CertKind::Horizon) out.exact = false;
      if (r.answer) {
        below = true;
        break;
      }
    }
    if (!below) {
      out.value = false;
      return out;
    }
  }
  return out;
}

Family common_refinement(const std::vector<Family>& families) {
  if (families.empty()) return {};
  Family current = families[0];
  for (std::size_t f = 1; f < families.size(); ++f) {
    Family next;
    for (const StarSet& a : current) {
      for (const StarSet& b : families[f]) {
        const IntersectResult r = star_intersect(a, b);
        if (!r.compatible) continue;
        const bool dup = std::any_of(next.begin(), next.end(), [&](const StarSet& s) {
          return same_tree(s.tree(), r.witness->tree());
        });
        if (!dup) next.push_back(*r.witness);
      }
    }
    current = std::move(next);
  }
  return current;
}

Family build_avoiding_family(const ResponderPtr& r, const std::vector<TrimmedTree>& seeds,
                             std::optional<std::size_t> horizon) {
  Family out;
  for (const TrimmedTree& t : seeds) {
    StarSet candidate(r->respond(t));
    const bool clash = std::any_of(out.begin(), out.end(), [&](const StarSet& kept) {
      return star_intersect(kept, candidate, horizon).compatible;
    });
    if (!clash) out.push_back(std::move(candidate));
  }
  return out;
}

SelectorDemo selector_demo(const Family& family) {
  if (family.empty()) throw PreconditionError("selector of an empty family");
  std::vector<Point> points;
  for (const StarSet& m : family) {
    points.push_back(m.tree().ground());  // the ground point is a branch
  }
  return {points, std::make_shared<SelectorResponder>(family, points)};
}

std::vector<ComplementProbe> complement_check(const Family& family, const std::vector<StarSet>& probes,
                                              std::optional<std::size_t> horizon) {
  std::vector<ComplementProbe> out;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    ComplementProbe p;
    p.probe = i;
    for (std::size_t j = 0; j < family.size(); ++j) {
      IntersectResult r = star_intersect(probes[i], family[j], horizon);
      if (r.compatible) {
        p.member = j;
        p.witness = std::move(r.witness);
        break;
      }
    }
    p.witness_of_non_maximality = !p.member;
    out.push_back(p);
  }
  return out;
}

}  // namespace ttree
