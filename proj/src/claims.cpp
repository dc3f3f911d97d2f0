#include "ttree/claims.hpp"

#include <algorithm>

namespace ttree::claims {

namespace {

constexpr std::size_t kMaxWindow = std::size_t{1} << 14;

Json nodes_json(const std::vector<FiniteNode>& nodes) {
  Json out = Json::array();
  for (const auto& s : nodes) out.push_back(s);
  return out;
}

}  // namespace

Json tree_prefix(const TrimmedTree& t, std::size_t window) {
  Json sizes = Json::array(), branching = Json::array(), ground = Json::array();
  for (std::size_t i = 0; i < window; ++i) {
    const DeltaValue d = t.delta_at(i);
    sizes.push_back(t.alphabet().size(i));
    branching.push_back(d.full ? 1 : 0);
    ground.push_back(d.full ? Symbol{0} : d.symbol);
  }
  return {{"sizes", sizes}, {"branching", branching}, {"ground", ground}};
}

Json point_prefix(const Point& p, std::size_t window) { return p.prefix(window); }

std::size_t settle_window(std::size_t requested, const std::vector<TrimmedTree>& trees) {
  std::size_t head = 0, period = 1;
  for (const TrimmedTree& t : trees) {
    if (!t.is_exact()) continue;
    const auto d = delta(t).exact();
    const auto& s = t.alphabet().sizes();
    head = std::max({head, d.stable_from(), s.stable_from()});
    try {
      period = checked_lcm(checked_lcm(period, d.period().size()), s.period().size());
    } catch (const std::exception&) {
      return requested;
    }
  }
  const std::size_t need = 2 * (head + period);
  return need > kMaxWindow ? std::max(requested, kMaxWindow) : std::max(requested, need);
}

Json levels(const TrimmedTree& t, std::size_t n, const std::vector<FiniteNode>& nodes) {
  return {{"kind", "levels"}, {"tree", tree_prefix(t, n + 1)}, {"n", n}, {"nodes", nodes_json(nodes)}};
}

Json restrict(const TrimmedTree& t, const FiniteNode& s, const TrimmedTree& result, std::size_t n,
              const std::vector<FiniteNode>& nodes) {
  return {{"kind", "restrict"},       {"tree", tree_prefix(t, n + 1)}, {"s", s},
          {"result", tree_prefix(result, n + 1)}, {"n", n},            {"nodes", nodes_json(nodes)}};
}

Json tree_subset(const TrimmedTree& p, const TrimmedTree& t, bool answer, std::size_t window) {
  const std::size_t w = settle_window(window, {p, t});
  return {{"kind", "tree_subset"}, {"p", tree_prefix(p, w)}, {"t", tree_prefix(t, w)}, {"answer", answer}};
}

Json subset_n(const TrimmedTree& p, const TrimmedTree& t, std::size_t n, bool answer, std::size_t window) {
  const std::size_t reach = std::max(p.branching().nth(n), t.branching().nth(n)) + 1;
  const std::size_t w = std::max(settle_window(window, {p, t}), reach);
  return {{"kind", "subset_n"}, {"p", tree_prefix(p, w)}, {"t", tree_prefix(t, w)}, {"n", n}, {"answer", answer}};
}

Json star_subset(const TrimmedTree& p, const TrimmedTree& t, const StarSubsetResult& r, std::size_t window,
                 bool least) {
  const std::size_t w = std::max(settle_window(window, {p, t}), r.cert.k0 + 1);
  Json out = {{"kind", "star_subset"}, {"p", tree_prefix(p, w)}, {"t", tree_prefix(t, w)},
              {"answer", r.answer}, {"window", w}};
  if (r.answer) {
    out["k0"] = r.cert.k0;
    out["least"] = least;
  }
  return out;
}

Json cert(const TrimmedTree& w, const TrimmedTree& t, std::size_t k0, std::size_t window) {
  const std::size_t len = std::max(settle_window(window, {w, t}), k0 + 1);
  return {{"kind", "cert"}, {"w", tree_prefix(w, len)}, {"t", tree_prefix(t, len)}, {"k0", k0}};
}

Json intersect(const TrimmedTree& p, const TrimmedTree& q, const IntersectResult& r, std::size_t window) {
  const std::size_t w = settle_window(window, {p, q});
  Json pattern = Json::array();
  for (std::size_t k = 0; k < std::min(w, r.pattern.window.size()); ++k) pattern.push_back(to_json(r.pattern.window[k]));
  Json out = {{"kind", "intersect"}, {"p", tree_prefix(p, w)}, {"q", tree_prefix(q, w)},
              {"compatible", r.compatible}, {"pattern", pattern}};
  if (r.witness) out["witness"] = tree_prefix(r.witness->tree(), w);
  return out;
}

Json splice(const TrimmedTree& p, const TrimmedTree& t, const TrimmedTree& q, std::size_t n,
            std::size_t cutoff, std::size_t window) {
  const std::size_t w = std::max({settle_window(window, {p, t, q}), cutoff + 2, t.branching().nth(n) + 1});
  return {{"kind", "splice"}, {"p", tree_prefix(p, w)}, {"t", tree_prefix(t, w)}, {"q", tree_prefix(q, w)},
          {"n", n},           {"cutoff", cutoff}};
}

Json fuse(const std::vector<TrimmedTree>& inputs, const FuseResult& r, std::size_t window) {
  Json in = Json::array(), diag = Json::array();
  for (const TrimmedTree& t : inputs) in.push_back(tree_prefix(t, window));
  for (const auto& row : r.trace) diag.push_back(row.a_n_n);
  return {{"kind", "fuse"}, {"inputs", in}, {"result", tree_prefix(r.tree, window)}, {"diag", diag}};
}

Json avoid(const TrimmedTree& result, const std::vector<Point>& targets, std::size_t depth,
           const TrimmedTree* base) {
  Json ys = Json::array();
  for (const Point& y : targets) ys.push_back(y.prefix(depth));
  Json out = {{"kind", "avoid"}, {"tree", tree_prefix(result, depth)}, {"targets", ys}, {"depth", depth}};
  if (base) out["base"] = tree_prefix(*base, depth);
  return out;
}

Json iso_phi(const TrimmedTree& t, const TrimmedTree& sub, const std::vector<std::size_t>& perm,
             const TrimmedTree& image, std::size_t window) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < window; ++i) count += t.branching().contains(i) ? 1 : 0;
  return {{"kind", "iso_phi"},           {"t", tree_prefix(t, window)}, {"sub", tree_prefix(sub, window)},
          {"perm", perm},                {"image", tree_prefix(image, std::max(count, perm.size()))}};
}

Json iso_psi(const TrimmedTree& t, const TrimmedTree& any, const std::vector<std::size_t>& perm,
             const TrimmedTree& result, std::size_t window) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < window; ++i) count += t.branching().contains(i) ? 1 : 0;
  return {{"kind", "iso_psi"},          {"t", tree_prefix(t, window)}, {"any", tree_prefix(any, std::max(count, perm.size()))},
          {"perm", perm},               {"result", tree_prefix(result, window)}};
}

Json identity(const TrimmedTree& a, const TrimmedTree& b, std::size_t window) {
  return {{"kind", "identity"}, {"a", tree_prefix(a, window)}, {"b", tree_prefix(b, window)}};
}

Json disjoint(const TrimmedTree& a, const TrimmedTree& b, std::size_t window, std::size_t after) {
  return {{"kind", "disjoint"}, {"a", tree_prefix(a, window)}, {"b", tree_prefix(b, window)}, {"after", after}};
}

Json separative(const TrimmedTree& p, const TrimmedTree& t, const TrimmedTree& q, std::size_t window) {
  const std::size_t w = settle_window(window, {p, t, q});
  return {{"kind", "separative"}, {"p", tree_prefix(p, w)}, {"t", tree_prefix(t, w)}, {"q", tree_prefix(q, w)}};
}

Json not_eventually_agree(const Point& p, const Point& q, std::size_t window) {
  return {{"kind", "not_eventually_agree"}, {"point", p.prefix(window)}, {"other", q.prefix(window)}};
}

}  // namespace ttree::claims
