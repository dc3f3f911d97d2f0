#include "ttree/oracle/oracle.hpp"

#include <algorithm>
#include <set>

namespace oracle {

namespace {

struct Mismatch : std::runtime_error {
  Mismatch(const std::string& what, std::optional<std::size_t> at)
      : std::runtime_error(what), coordinate(at) {}
  std::optional<std::size_t> coordinate;
};

void require(bool ok, const std::string& what, std::optional<std::size_t> at = std::nullopt) {
  if (!ok) throw Mismatch(what, at);
}

// Symbols the tree allows at coordinate k.
std::vector<std::uint32_t> level(const Prefix& p, std::size_t k) {
  if (k >= p.window()) throw Mismatch("coordinate outside the window", k);
  if (!p.branching[k]) return {p.ground[k]};
  std::vector<std::uint32_t> all(p.sizes[k]);
  for (std::uint32_t x = 0; x < p.sizes[k]; ++x) all[x] = x;
  return all;
}

bool level_subset(const Prefix& p, const Prefix& t, std::size_t k) {
  const auto a = level(p, k), b = level(t, k);
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool same_level(const Prefix& p, const Prefix& q, std::size_t k) { return level(p, k) == level(q, k); }

// Position of the k-th branching coordinate, if inside the window.
std::optional<std::size_t> kth_branching(const Prefix& p, std::size_t k) {
  std::size_t seen = 0;
  for (std::size_t i = 0; i < p.window(); ++i) {
    if (!p.branching[i]) continue;
    if (seen++ == k) return i;
  }
  return std::nullopt;
}

std::size_t window_of(const Json& claim, const Prefix& p) {
  return claim.contains("window") ? std::min<std::size_t>(claim.at("window").get<std::size_t>(), p.window())
                                  : p.window();
}

Prefix prefix_at(const Json& claim, const char* key) { return Prefix::from_json(claim.at(key)); }

std::vector<Word> parse_words(const Json& j) {
  std::vector<Word> out;
  for (const Json& w : j) out.push_back(w.get<Word>());
  return out;
}

// Largest n whose level stays within the guard.
std::size_t guarded_depth(const Prefix& p) {
  std::size_t count = 1, n = 0;
  for (; n < p.window(); ++n) {
    if (p.branching[n]) {
      if (count > kGuard / p.sizes[n]) break;
      count *= p.sizes[n];
    }
  }
  return n;
}

void check_levels(const Json& c) {
  const Prefix t = prefix_at(c, "tree");
  const std::size_t n = c.at("n").get<std::size_t>();
  const auto nodes = nodes_to_depth(t.branching, t.ground, t.sizes, n);
  const auto claimed = parse_words(c.at("nodes"));
  require(nodes.size() == claimed.size(), "node count differs");
  for (std::size_t i = 0; i < nodes.size(); ++i) require(nodes[i] == claimed[i], "node list differs", i);
}

void check_restrict(const Json& c) {
  const Prefix t = prefix_at(c, "tree"), r = prefix_at(c, "result");
  const Word s = c.at("s").get<Word>();
  const std::size_t n = c.at("n").get<std::size_t>();
  require(n + 1 >= s.size(), "level shorter than the restricting node");
  std::vector<Word> expect;
  for (Word& w : nodes_to_depth(t.branching, t.ground, t.sizes, n)) {
    if (std::equal(s.begin(), s.end(), w.begin())) expect.push_back(std::move(w));
  }
  const auto got = nodes_to_depth(r.branching, r.ground, r.sizes, n);
  require(expect == got, "restricted levels differ");
  if (c.contains("nodes")) require(parse_words(c.at("nodes")) == expect, "claimed node list differs");
}

void check_tree_subset(const Json& c) {
  const Prefix p = prefix_at(c, "p"), t = prefix_at(c, "t");
  const bool answer = c.at("answer").get<bool>();
  // Level sets where materializable, coordinatewise beyond.
  const std::size_t d = std::min({guarded_depth(p), guarded_depth(t), std::size_t{12}});
  bool inside = true;
  for (std::size_t n = 0; n < d && inside; ++n) inside = brute_subset(p, t, n);
  if (inside) inside = star_violations(p, t, 0).empty();
  require(inside == answer, answer ? "inclusion fails inside the window" : "no violation inside the window");
}

void check_subset_n(const Json& c) {
  const Prefix p = prefix_at(c, "p"), t = prefix_at(c, "t");
  const bool got = brute_subset_n(p, t, c.at("n").get<std::size_t>());
  require(got == c.at("answer").get<bool>(), "subset_n answer differs");
}

void check_star_subset(const Json& c) {
  const Prefix p = prefix_at(c, "p"), t = prefix_at(c, "t");
  const std::size_t w = window_of(c, p);
  if (c.at("answer").get<bool>()) {
    const std::size_t k0 = c.at("k0").get<std::size_t>();
    const auto bad = star_violations(p, t, k0);
    require(bad.empty(), "violation at or above k0", bad.empty() ? std::nullopt : std::optional(bad.front()));
    if (c.value("least", true) && k0 > 0) require(!level_subset(p, t, k0 - 1), "k0 is not least", k0 - 1);
  } else {
    const auto bad = star_violations(p, t, w / 2);
    require(!bad.empty(), "no violation in the upper half of the window");
  }
}

void check_cert(const Json& c) {
  const Prefix w = prefix_at(c, "w"), t = prefix_at(c, "t");
  const auto bad = star_violations(w, t, c.at("k0").get<std::size_t>());
  require(bad.empty(), "certificate violated", bad.empty() ? std::nullopt : std::optional(bad.front()));
}

void check_intersect(const Json& c) {
  const Prefix p = prefix_at(c, "p"), q = prefix_at(c, "q");
  const Json pattern = intersect_pattern(p, q);
  const std::size_t w = pattern.size();
  if (c.contains("pattern")) {
    const Json& claimed = c.at("pattern");
    require(claimed.size() <= w, "pattern longer than the window");
    for (std::size_t k = 0; k < claimed.size(); ++k) require(claimed[k] == pattern[k], "pattern cell differs", k);
  }
  bool empty_late = false, full_late = false;
  for (std::size_t k = w / 2; k < w; ++k) {
    empty_late = empty_late || pattern[k] == "empty";
    full_late = full_late || pattern[k] == "full";
  }
  require(c.at("compatible").get<bool>() == (!empty_late && full_late), "compatibility differs");
  if (c.contains("witness")) {
    const Prefix r = prefix_at(c, "witness");
    for (std::size_t k = 0; k < std::min(w, r.window()); ++k) {
      const auto lv = level(r, k);
      if (pattern[k] == "empty") {
        require(lv == std::vector<std::uint32_t>{0}, "witness not 0 at an empty cell", k);
      } else if (pattern[k] == "full") {
        require(lv.size() == r.sizes[k], "witness not full", k);
      } else {
        require(lv == std::vector<std::uint32_t>{pattern[k].at("single").get<std::uint32_t>()},
                "witness cell differs", k);
      }
    }
  }
}

void check_splice(const Json& c) {
  const Prefix p = prefix_at(c, "p"), t = prefix_at(c, "t"), q = prefix_at(c, "q");
  const std::size_t cutoff = c.at("cutoff").get<std::size_t>();
  for (std::size_t k = 0; k < q.window(); ++k) {
    require(same_level(q, k <= cutoff ? t : p, k), k <= cutoff ? "differs from T below cutoff" : "differs from P above cutoff", k);
  }
  require(brute_subset_n(q, t, c.at("n").get<std::size_t>()), "splice is not ⊆_n T");
}

void check_fuse(const Json& c) {
  const Prefix r = prefix_at(c, "result");
  const Json& inputs = c.at("inputs");
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const Prefix t = Prefix::from_json(inputs[i]);
    const auto bad = star_violations(r, t, 0);
    require(bad.empty(), "fused tree escapes input " + std::to_string(i),
            bad.empty() ? std::nullopt : std::optional(bad.front()));
    const auto a = kth_branching(t, i);
    if (!a) continue;
    if (c.contains("diag")) require(c.at("diag")[i].get<std::size_t>() == *a, "a_n^n differs", i);
    const auto mine = kth_branching(r, i);
    if (mine) require(*mine == *a, "fused branching element differs from a_n^n", i);
  }
}

void check_avoid(const Json& c) {
  const Prefix r = prefix_at(c, "tree");
  const std::size_t d = std::min(c.at("depth").get<std::size_t>(), r.window());
  const Json& targets = c.at("targets");
  for (std::size_t j = 0; j < targets.size(); ++j) {
    const Word y = targets[j].get<Word>();
    bool escapes = false;
    for (std::size_t i = 0; i < std::min(d, y.size()) && !escapes; ++i) {
      const auto lv = level(r, i);
      escapes = !std::binary_search(lv.begin(), lv.end(), y[i]);
    }
    require(escapes, "target prefix is a node", j);
  }
  if (c.contains("base")) {
    const Prefix t = prefix_at(c, "base");
    require(star_violations(r, t, 0).empty(), "result escapes the base tree");
  }
}

std::vector<std::size_t> branch_positions(const Prefix& t) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < t.window(); ++i) {
    if (t.branching[i]) out.push_back(i);
  }
  return out;
}

// φ(a_k) for the k-th branching coordinate.
std::size_t phi_index(const std::vector<std::size_t>& perm, std::size_t k) { return k < perm.size() ? perm[k] : k; }

void check_iso_phi(const Json& c) {
  const Prefix t = prefix_at(c, "t"), sub = prefix_at(c, "sub"), img = prefix_at(c, "image");
  const auto perm = c.value("perm", std::vector<std::size_t>{});
  const auto a = branch_positions(t);
  for (std::size_t k = 0; k < a.size(); ++k) {
    const std::size_t j = phi_index(perm, k);
    if (j >= img.window()) continue;
    require(img.sizes[j] == t.sizes[a[k]], "image size differs", j);
    require(level(img, j) == level(sub, a[k]), "image level differs", j);
  }
}

void check_iso_psi(const Json& c) {
  const Prefix t = prefix_at(c, "t"), any = prefix_at(c, "any"), res = prefix_at(c, "result");
  const auto perm = c.value("perm", std::vector<std::size_t>{});
  std::size_t k = 0;
  for (std::size_t i = 0; i < std::min(t.window(), res.window()); ++i) {
    if (!t.branching[i]) {
      require(same_level(res, t, i), "off-branching level differs", i);
      continue;
    }
    const std::size_t j = phi_index(perm, k++);
    if (j >= any.window()) continue;
    require(level(res, i) == level(any, j), "pulled-back level differs", i);
  }
}

void check_identity(const Json& c) {
  const Prefix a = prefix_at(c, "a"), b = prefix_at(c, "b");
  const std::size_t w = std::min(a.window(), b.window());
  for (std::size_t k = 0; k < w; ++k) {
    require(a.sizes[k] == b.sizes[k] && same_level(a, b, k), "trees differ", k);
  }
}

void check_disjoint(const Json& c) {
  const Prefix a = prefix_at(c, "a"), b = prefix_at(c, "b");
  const std::size_t w = std::min(a.window(), b.window());
  const std::size_t after = c.value("after", w / 2);
  bool found = false;
  for (std::size_t k = after; k < w && !found; ++k) {
    found = !a.branching[k] && !b.branching[k] && a.ground[k] != b.ground[k];
  }
  require(found, "no forced disagreement at or after " + std::to_string(after));
}

void check_separative(const Json& c) {
  const Prefix p = prefix_at(c, "p"), t = prefix_at(c, "t"), q = prefix_at(c, "q");
  const std::size_t w = std::min({p.window(), t.window(), q.window()});
  const auto bad = star_violations(q, p, w / 2);
  require(bad.empty(), "witness escapes P late in the window", bad.empty() ? std::nullopt : std::optional(bad.front()));
  const Json pattern = intersect_pattern(q, t);
  bool empty_late = false;
  for (std::size_t k = w / 2; k < pattern.size(); ++k) empty_late = empty_late || pattern[k] == "empty";
  require(empty_late, "witness meets T late in the window");
}

void check_not_eventually_agree(const Json& c) {
  const Word x = c.at("point").get<Word>(), y = c.at("other").get<Word>();
  const std::size_t w = std::min(x.size(), y.size());
  bool differ = false;
  for (std::size_t k = w / 2; k < w && !differ; ++k) differ = x[k] != y[k];
  require(differ, "points agree on the upper half of the window");
}

}  // namespace

TruncatedUniverse::TruncatedUniverse(std::vector<std::uint32_t> sizes) : sizes_(std::move(sizes)) {
  std::size_t count = 1;
  for (std::uint32_t s : sizes_) {
    if (s < 2) throw std::invalid_argument("alphabet entries must be at least 2");
    if (count > kGuard / s) throw GuardExceeded("truncated universe exceeds 2^20 words");
    count *= s;
  }
}

std::vector<Word> TruncatedUniverse::words() const {
  std::vector<Word> out{Word{}};
  for (std::uint32_t s : sizes_) {
    std::vector<Word> next;
    for (const Word& w : out) {
      for (std::uint32_t x = 0; x < s; ++x) {
        next.push_back(w);
        next.back().push_back(x);
      }
    }
    out = std::move(next);
  }
  return out;
}

Prefix Prefix::from_json(const Json& j) {
  Prefix p;
  p.sizes = j.at("sizes").get<std::vector<std::uint32_t>>();
  for (const Json& b : j.at("branching")) p.branching.push_back(b.get<int>() != 0);
  p.ground = j.at("ground").get<std::vector<std::uint32_t>>();
  if (p.branching.size() != p.sizes.size() || p.ground.size() != p.sizes.size()) {
    throw std::invalid_argument("prefix arrays differ in length");
  }
  for (std::size_t i = 0; i < p.sizes.size(); ++i) {
    if (p.sizes[i] < 2 || (!p.branching[i] && p.ground[i] >= p.sizes[i])) {
      throw std::invalid_argument("prefix value out of range at " + std::to_string(i));
    }
  }
  return p;
}

std::vector<Word> nodes_to_depth(const std::vector<bool>& branching, const std::vector<std::uint32_t>& ground,
                                 const std::vector<std::uint32_t>& sizes, std::size_t n) {
  if (n >= sizes.size()) throw std::invalid_argument("depth outside the window");
  std::vector<Word> out{Word{}};
  for (std::size_t i = 0; i <= n; ++i) {
    std::vector<Word> next;
    const std::uint32_t lo = branching[i] ? 0 : ground[i];
    const std::uint32_t hi = branching[i] ? sizes[i] : ground[i] + 1;
    if (out.size() * (hi - lo) > kGuard) throw GuardExceeded("level exceeds 2^20 nodes");
    for (const Word& w : out) {
      for (std::uint32_t x = lo; x < hi; ++x) {
        next.push_back(w);
        next.back().push_back(x);
      }
    }
    out = std::move(next);
  }
  return out;
}

bool brute_subset(const Prefix& p, const Prefix& t, std::size_t n) {
  const auto a = nodes_to_depth(p.branching, p.ground, p.sizes, n);
  const auto b = nodes_to_depth(t.branching, t.ground, t.sizes, n);
  const std::set<Word> tb(b.begin(), b.end());
  return std::all_of(a.begin(), a.end(), [&](const Word& w) { return tb.count(w) > 0; });
}

bool brute_subset_n(const Prefix& p, const Prefix& t, std::size_t n) {
  const std::size_t w = std::min(p.window(), t.window());
  for (std::size_t k = 0; k < w; ++k) {
    if (!level_subset(p, t, k)) return false;
  }
  for (std::size_t k = 0; k <= n; ++k) {
    const auto a = kth_branching(p, k), b = kth_branching(t, k);
    if (!a || !b) throw Mismatch("window too short for the first n+1 branching coordinates", k);
    if (*a != *b) return false;
  }
  return true;
}

std::vector<std::size_t> star_violations(const Prefix& p, const Prefix& t, std::size_t from) {
  std::vector<std::size_t> out;
  const std::size_t w = std::min(p.window(), t.window());
  for (std::size_t k = from; k < w; ++k) {
    if (!level_subset(p, t, k)) out.push_back(k);
  }
  return out;
}

Json intersect_pattern(const Prefix& p, const Prefix& q) {
  Json out = Json::array();
  const std::size_t w = std::min(p.window(), q.window());
  for (std::size_t k = 0; k < w; ++k) {
    const auto a = level(p, k), b = level(q, k);
    std::vector<std::uint32_t> both;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
    if (both.empty()) {
      out.push_back("empty");
    } else if (p.branching[k] && q.branching[k]) {
      out.push_back("full");
    } else {
      out.push_back({{"single", both.front()}});
    }
  }
  return out;
}

Report verify_claim(const Json& claim) {
  Report r;
  try {
    r.kind = claim.at("kind").get<std::string>();
    const std::string& k = r.kind;
    if (k == "levels") check_levels(claim);
    else if (k == "restrict") check_restrict(claim);
    else if (k == "tree_subset") check_tree_subset(claim);
    else if (k == "subset_n") check_subset_n(claim);
    else if (k == "star_subset") check_star_subset(claim);
    else if (k == "cert") check_cert(claim);
    else if (k == "intersect") check_intersect(claim);
    else if (k == "splice") check_splice(claim);
    else if (k == "fuse") check_fuse(claim);
    else if (k == "avoid") check_avoid(claim);
    else if (k == "iso_phi") check_iso_phi(claim);
    else if (k == "iso_psi") check_iso_psi(claim);
    else if (k == "identity") check_identity(claim);
    else if (k == "disjoint") check_disjoint(claim);
    else if (k == "separative") check_separative(claim);
    else if (k == "not_eventually_agree") check_not_eventually_agree(claim);
    else throw std::invalid_argument("unsupported claim kind \"" + k + "\"");
    r.pass = true;
  } catch (const Mismatch& e) {
    r.detail = e.what();
    r.coordinate = e.coordinate;
  } catch (const std::exception& e) {
    r.detail = e.what();
  }
  return r;
}

std::vector<Report> verify_batch(const std::vector<Json>& claims) {
  std::vector<Report> out(claims.size());
  const auto n = static_cast<std::ptrdiff_t>(claims.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = verify_claim(claims[static_cast<std::size_t>(i)]);
    out[static_cast<std::size_t>(i)].index = static_cast<std::size_t>(i);
  }
  return out;
}

std::vector<Report> verify_batch_serial(const std::vector<Json>& claims) {
  std::vector<Report> out;
  for (std::size_t i = 0; i < claims.size(); ++i) {
    out.push_back(verify_claim(claims[i]));
    out.back().index = i;
  }
  return out;
}

}  // namespace oracle
