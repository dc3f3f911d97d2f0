#include "ttree/points.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "ttree/errors.hpp"

namespace ttree {

Alphabet::Alphabet() : sizes_(Eventual<Symbol>::constant(2)) {}

Alphabet::Alphabet(Eventual<Symbol> sizes) : sizes_(std::move(sizes)) {
  auto small = [](Symbol s) { return s < 2; };
  if (std::any_of(sizes_.head().begin(), sizes_.head().end(), small) ||
      std::any_of(sizes_.period().begin(), sizes_.period().end(), small)) {
    throw PreconditionError("alphabet sizes must be at least 2");
  }
}

Alphabet Alphabet::constant(Symbol size) { return Alphabet(Eventual<Symbol>::constant(size)); }

void Alphabet::check_node(const FiniteNode& node) const {
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (node[i] >= size(i)) {
      throw PreconditionError("symbol " + std::to_string(node[i]) + " out of range at coordinate " +
                              std::to_string(i));
    }
  }
}

std::size_t Alphabet::node_count(std::size_t len) const {
  std::size_t count = 1;
  for (std::size_t i = 0; i < len; ++i) {
    if (count > std::numeric_limits<std::size_t>::max() / size(i)) {
      return std::numeric_limits<std::size_t>::max();
    }
    count *= size(i);
  }
  return count;
}

Point::Point(const Eventual<Symbol>& base, const std::map<std::size_t, Symbol>& patch) {
  std::size_t head = base.stable_from();
  if (!patch.empty()) head = std::max(head, patch.rbegin()->first + 1);
  values_ = Eventual<Symbol>::tabulate(head, base.period().size(), [&](std::size_t i) {
    auto it = patch.find(i);
    return it != patch.end() ? it->second : base[i];
  });
}

Point Point::lazy(Generator gen) {
  Point p;
  p.gen_ = std::make_shared<const Generator>(std::move(gen));
  return p;
}

const Eventual<Symbol>& Point::exact() const {
  if (gen_) throw HorizonRequired("point is not ultimately periodic");
  return values_;
}

FiniteNode Point::prefix(std::size_t len) const {
  FiniteNode out(len);
  for (std::size_t i = 0; i < len; ++i) out[i] = (*this)[i];
  return out;
}

bool operator==(const Point& a, const Point& b) { return a.exact() == b.exact(); }

Symbol point_value(const Point& p, std::size_t i) { return p[i]; }

void check_point(const Alphabet& alphabet, const Point& p) {
  if (!p.is_exact()) return;
  const auto& v = p.exact();
  const std::size_t end =
      std::max(v.stable_from(), alphabet.sizes().stable_from()) +
      checked_lcm(v.period().size(), alphabet.sizes().period().size());
  for (std::size_t i = 0; i < end; ++i) {
    if (v[i] >= alphabet.size(i)) {
      throw PreconditionError("point value " + std::to_string(v[i]) +
                              " out of range at coordinate " + std::to_string(i));
    }
  }
}

Point patch_point(const Alphabet& alphabet, const Point& p, const FiniteNode& s) {
  alphabet.check_node(s);
  if (s.empty()) return p;
  if (!p.is_exact()) {
    return Point::lazy([p, s](std::size_t i) { return i < s.size() ? s[i] : p[i]; });
  }
  const auto& base = p.exact();
  return Point(Eventual<Symbol>::tabulate(std::max(base.stable_from(), s.size()),
                                          base.period().size(), [&](std::size_t i) {
                                            return i < s.size() ? s[i] : base[i];
                                          }));
}

std::optional<std::size_t> eventually_agrees(const Point& p, const Point& q) {
  const auto differs =
      zip_with(p.exact(), q.exact(), [](Symbol a, Symbol b) { return a != b; });
  if (infinitely_often(differs, [](bool d) { return d; })) return std::nullopt;
  // Canonical form: the head ends with the last disagreement.
  return differs.stable_from();
}

std::optional<std::size_t> last_disagreement(const Point& p, const Point& q, std::size_t window) {
  for (std::size_t i = window; i-- > 0;) {
    if (p[i] != q[i]) return i;
  }
  return std::nullopt;
}

}  // namespace ttree
