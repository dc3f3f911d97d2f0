#include "ttree/natsets.hpp"

#include <algorithm>
#include <mutex>
#include <optional>
#include <stdexcept>

#include "json.hpp"
#include "ttree/errors.hpp"

namespace ttree {

using json = nlohmann::json;

namespace {

std::size_t mul_add(std::size_t q, std::size_t p, std::size_t base) {
  std::size_t out = 0;
  if (__builtin_mul_overflow(q, p, &out) || __builtin_add_overflow(out, base, &out)) {
    throw std::overflow_error("set element exceeds 64 bits");
  }
  return out;
}

std::string bit_string(const std::vector<bool>& bits) {
  std::string s;
  for (bool b : bits) s.push_back(b ? '1' : '0');
  return s;
}

json up_json(const BitSeq& bits) {
  return {{"up", {{"head", bit_string(bits.head())}, {"period", bit_string(bits.period())}}}};
}

}  // namespace

class NatSet::Node {
 public:
  virtual ~Node() = default;
  virtual std::size_t nth(std::size_t k) const = 0;
  virtual bool contains(std::size_t n) const = 0;
  virtual std::size_t rank(std::size_t n) const {
    std::size_t k = 0;
    while (nth(k) < n) ++k;
    return k;
  }
  virtual const BitSeq* bits() const { return nullptr; }
  virtual std::optional<json> describe() const { return std::nullopt; }
  virtual std::string label() const = 0;
};

namespace {

class PeriodicNode final : public NatSet::Node {
 public:
  PeriodicNode(BitSeq bits, json descriptor)
      : bits_(std::move(bits)), descriptor_(std::move(descriptor)) {
    for (std::size_t i = 0; i < bits_.head().size(); ++i) {
      if (bits_.head()[i]) head_ones_.push_back(i);
    }
    for (std::size_t i = 0; i < bits_.period().size(); ++i) {
      if (bits_.period()[i]) period_ones_.push_back(i);
    }
    if (period_ones_.empty()) throw PreconditionError("set is finite: period has no element");
  }

  std::size_t nth(std::size_t k) const override {
    if (k < head_ones_.size()) return head_ones_[k];
    k -= head_ones_.size();
    const std::size_t c = period_ones_.size();
    return mul_add(k / c, bits_.period().size(), bits_.stable_from() + period_ones_[k % c]);
  }

  bool contains(std::size_t n) const override { return bits_[n]; }

  std::size_t rank(std::size_t n) const override {
    const std::size_t h = bits_.stable_from();
    if (n <= h) {
      return static_cast<std::size_t>(
          std::lower_bound(head_ones_.begin(), head_ones_.end(), n) - head_ones_.begin());
    }
    const std::size_t p = bits_.period().size();
    const std::size_t off = (n - h) % p;
    return head_ones_.size() + (n - h) / p * period_ones_.size() +
           static_cast<std::size_t>(
               std::lower_bound(period_ones_.begin(), period_ones_.end(), off) -
               period_ones_.begin());
  }

  const BitSeq* bits() const override { return &bits_; }
  std::optional<json> describe() const override { return descriptor_; }
  std::string label() const override { return "periodic"; }

 private:
  BitSeq bits_;
  json descriptor_;
  std::vector<std::size_t> head_ones_;
  std::vector<std::size_t> period_ones_;
};

/// Strictly increasing enumeration with a memoized prefix. Memoization is
/// idempotent: concurrent callers may race to compute the same entries.
class EnumeratedNode : public NatSet::Node {
 public:
  EnumeratedNode(std::function<std::size_t(std::size_t)> nth, std::string label)
      : nth_(std::move(nth)), label_(std::move(label)) {}

  std::size_t nth(std::size_t k) const override {
    {
      std::lock_guard lock(mu_);
      if (k < memo_.size()) return memo_[k];
    }
    std::size_t start;
    {
      std::lock_guard lock(mu_);
      start = memo_.size();
    }
    std::vector<std::size_t> fresh;
    for (std::size_t i = start; i <= k; ++i) fresh.push_back(nth_(i));
    std::lock_guard lock(mu_);
    for (std::size_t i = 0; i < fresh.size(); ++i) {
      const std::size_t idx = start + i;
      if (idx < memo_.size()) continue;
      if (!memo_.empty() && fresh[i] <= memo_.back()) {
        throw PreconditionError(label_ + ": enumeration is not strictly increasing at index " +
                                std::to_string(idx));
      }
      memo_.push_back(fresh[i]);
    }
    return memo_[k];
  }

  bool contains(std::size_t n) const override {
    // nth(k) >= k, so the scan stops by k = n.
    for (std::size_t k = 0;; ++k) {
      const std::size_t v = nth(k);
      if (v >= n) return v == n;
    }
  }

  std::string label() const override { return label_; }

 private:
  std::function<std::size_t(std::size_t)> nth_;
  std::string label_;
  mutable std::mutex mu_;
  mutable std::vector<std::size_t> memo_;
};

class MembershipNode final : public NatSet::Node {
 public:
  static constexpr std::size_t kScanLimit = std::size_t{1} << 28;

  MembershipNode(std::function<bool(std::size_t)> contains, std::string label)
      : contains_(std::move(contains)), label_(std::move(label)) {}

  std::size_t nth(std::size_t k) const override {
    std::lock_guard lock(mu_);
    while (memo_.size() <= k) {
      if (next_ > kScanLimit) throw PreconditionError(label_ + ": enumeration scan limit reached");
      if (contains_(next_)) memo_.push_back(next_);
      ++next_;
    }
    return memo_[k];
  }

  bool contains(std::size_t n) const override { return contains_(n); }
  std::string label() const override { return label_; }

 private:
  std::function<bool(std::size_t)> contains_;
  std::string label_;
  mutable std::mutex mu_;
  mutable std::vector<std::size_t> memo_;
  mutable std::size_t next_ = 0;
};

class AdMemberNode final : public NatSet::Node {
 public:
  AdMemberNode(BitSeq seed, NatSet carrier) : seed_(std::move(seed)), carrier_(std::move(carrier)) {}

  std::size_t nth(std::size_t k) const override {
    return carrier_.nth(prefix_code(seed_, k + 1));
  }

  bool contains(std::size_t n) const override {
    if (!carrier_.contains(n)) return false;
    const std::size_t code = carrier_.rank(n);
    if (code == 0) return false;
    // code = 2^len - 1 + value(prefix)
    std::size_t len = 0;
    while ((std::size_t{2} << len) - 1 <= code) ++len;
    const std::size_t value = code - ((std::size_t{1} << len) - 1);
    for (std::size_t i = 0; i < len; ++i) {
      const bool bit = (value >> (len - 1 - i)) & 1U;
      if (bit != seed_[i]) return false;
    }
    return true;
  }

  std::optional<json> describe() const override {
    if (!carrier_.is_serializable()) return std::nullopt;
    return json{{"ad",
                 {{"seed", {{"head", bit_string(seed_.head())}, {"period", bit_string(seed_.period())}}},
                  {"carrier", json::parse(carrier_.describe())}}}};
  }

  std::string label() const override { return "ad-member"; }

 private:
  BitSeq seed_;
  NatSet carrier_;
};

class AlternateNode final : public NatSet::Node {
 public:
  explicit AlternateNode(NatSet inner) : inner_(std::move(inner)) {}

  std::size_t nth(std::size_t k) const override { return inner_.nth(2 * k); }
  bool contains(std::size_t n) const override {
    return inner_.contains(n) && inner_.rank(n) % 2 == 0;
  }
  std::optional<json> describe() const override {
    if (!inner_.is_serializable()) return std::nullopt;
    return json{{"alternate", json::parse(inner_.describe())}};
  }
  std::string label() const override { return "alternate"; }

 private:
  NatSet inner_;
};

class MinusNode final : public NatSet::Node {
 public:
  MinusNode(NatSet inner, std::set<std::size_t> removed)
      : inner_(std::move(inner)), removed_(std::move(removed)) {}

  std::size_t nth(std::size_t k) const override {
    std::size_t kept = 0;
    for (std::size_t j = 0;; ++j) {
      const std::size_t x = inner_.nth(j);
      if (removed_.count(x)) continue;
      if (kept++ == k) return x;
    }
  }

  bool contains(std::size_t n) const override {
    return !removed_.count(n) && inner_.contains(n);
  }

  std::optional<json> describe() const override {
    if (!inner_.is_serializable()) return std::nullopt;
    return json{{"minus", {{"inner", json::parse(inner_.describe())},
                           {"removed", std::vector<std::size_t>(removed_.begin(), removed_.end())}}}};
  }
  std::string label() const override { return "minus"; }

 private:
  NatSet inner_;
  std::set<std::size_t> removed_;
};

std::shared_ptr<const NatSet::Node> make_periodic(BitSeq bits, json descriptor) {
  return std::make_shared<PeriodicNode>(std::move(bits), std::move(descriptor));
}

}  // namespace

NatSet::NatSet() : node_(make_periodic(BitSeq::constant(true), {{"tail", 0}})) {}

NatSet NatSet::up(const BitSeq& bits) { return NatSet(make_periodic(bits, up_json(bits))); }

NatSet NatSet::up(std::vector<bool> head, std::vector<bool> period) {
  return up(BitSeq(std::move(head), std::move(period)));
}

NatSet NatSet::tail_from(std::size_t n) {
  return NatSet(make_periodic(BitSeq(std::vector<bool>(n, false), {true}), {{"tail", n}}));
}

NatSet NatSet::minus_finite(const NatSet& inner, const std::set<std::size_t>& removed) {
  if (removed.empty()) return inner;
  if (inner.is_periodic()) {
    const BitSeq& b = inner.bits();
    const std::size_t head = std::max(b.stable_from(), *removed.rbegin() + 1);
    BitSeq bits = BitSeq::tabulate(head, b.period().size(),
                                   [&](std::size_t i) { return b[i] && !removed.count(i); });
    json desc = {{"minus", {{"inner", json::parse(inner.describe())},
                            {"removed", std::vector<std::size_t>(removed.begin(), removed.end())}}}};
    return NatSet(make_periodic(std::move(bits), std::move(desc)));
  }
  return NatSet(std::make_shared<MinusNode>(inner, removed));
}

NatSet NatSet::ad_member(const BitSeq& seed, const NatSet& carrier) {
  return NatSet(std::make_shared<AdMemberNode>(seed, carrier));
}

NatSet NatSet::alternate(const NatSet& inner) {
  if (inner.is_periodic() && inner.is_serializable()) {
    const BitSeq& b = inner.bits();
    std::size_t ones = 0;
    for (bool x : b.period()) ones += x ? 1 : 0;
    const std::size_t period = b.period().size() * (ones % 2 == 0 ? 1 : 2);
    BitSeq bits = BitSeq::tabulate(b.stable_from(), period, [&](std::size_t i) {
      return b[i] && inner.rank(i) % 2 == 0;
    });
    return NatSet(make_periodic(std::move(bits), {{"alternate", json::parse(inner.describe())}}));
  }
  return NatSet(std::make_shared<AlternateNode>(inner));
}

NatSet NatSet::enumerated(std::function<std::size_t(std::size_t)> nth, std::string label) {
  return NatSet(std::make_shared<EnumeratedNode>(std::move(nth), std::move(label)));
}

NatSet NatSet::by_membership(std::function<bool(std::size_t)> contains, std::string label) {
  return NatSet(std::make_shared<MembershipNode>(std::move(contains), std::move(label)));
}

std::size_t NatSet::nth(std::size_t k) const { return node_->nth(k); }
bool NatSet::contains(std::size_t n) const { return node_->contains(n); }
std::size_t NatSet::rank(std::size_t n) const { return node_->rank(n); }

std::vector<std::size_t> NatSet::take(std::size_t count) const {
  std::vector<std::size_t> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(nth(k));
  return out;
}

bool NatSet::is_periodic() const { return node_->bits() != nullptr; }

const BitSeq& NatSet::bits() const {
  if (const BitSeq* b = node_->bits()) return *b;
  throw HorizonRequired(node_->label() + " set is not ultimately periodic");
}

std::string NatSet::describe() const {
  auto d = node_->describe();
  if (!d) throw NotSerializable(node_->label() + " set has no textual form");
  return d->dump();
}

bool NatSet::is_serializable() const { return node_->describe().has_value(); }

bool operator==(const NatSet& a, const NatSet& b) { return a.bits() == b.bits(); }

std::size_t enumerate(const NatSet& a, std::size_t k) { return a.nth(k); }
bool contains(const NatSet& a, std::size_t n) { return a.contains(n); }

NatSet alternate_split(const NatSet& c) { return NatSet::alternate(c); }

BitSeq reciprocal_expansion(std::uint64_t p) {
  if (p < 3 || p % 2 == 0) throw PreconditionError("reciprocal_expansion needs an odd p >= 3");
  std::vector<bool> period;
  std::uint64_t r = 1;
  do {
    r *= 2;
    const bool bit = r >= p;
    if (bit) r -= p;
    period.push_back(bit);
  } while (r != 1);
  return BitSeq({}, std::move(period));
}

std::uint64_t odd_prime(std::size_t j) {
  std::uint64_t candidate = 1;
  std::size_t found = 0;
  for (;;) {
    candidate += 2;
    bool prime = true;
    for (std::uint64_t d = 3; d * d <= candidate && prime; d += 2) prime = candidate % d != 0;
    if (prime && found++ == j) return candidate;
  }
}

std::size_t prefix_code(const BitSeq& seed, std::size_t len) {
  if (len > 62) throw std::overflow_error("prefix code exceeds 62 bits");
  std::size_t value = 0;
  for (std::size_t i = 0; i < len; ++i) value = (value << 1) | (seed[i] ? 1U : 0U);
  return (std::size_t{1} << len) - 1 + value;
}

std::vector<NatSet> ad_family(const NatSet& carrier, std::size_t m) {
  if (m == 0) throw PreconditionError("ad_family needs at least one member");
  std::vector<NatSet> out;
  out.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    out.push_back(NatSet::ad_member(reciprocal_expansion(odd_prime(j)), carrier));
  }
  return out;
}

std::size_t common_prefix_length(const BitSeq& a, const BitSeq& b) {
  if (a == b) throw PreconditionError("sequences are equal");
  const std::size_t end = std::max(a.stable_from(), b.stable_from()) +
                          checked_lcm(a.period().size(), b.period().size());
  for (std::size_t i = 0; i < end; ++i) {
    if (a[i] != b[i]) return i;
  }
  throw PreconditionError("sequences are equal");
}

}  // namespace ttree
