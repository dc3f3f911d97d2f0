// Ultimately periodic sequences: a finite head followed by a repeating period.
//
// Every exact object in the library (alphabet sizes, points, periodic subsets
// of the naturals, delta functions, intersection patterns) is an Eventual<T>.
// Values are kept in canonical form (shortest period, shortest head), so
// structural equality coincides with equality of the infinite sequences.

#ifndef TTREE_EVENTUAL_HPP
#define TTREE_EVENTUAL_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ttree {

/// Cap on period lengths produced by combining sequences; lcm blow-up past
/// this point is treated as a usage error.
inline constexpr std::size_t kMaxPeriod = std::size_t{1} << 22;

template <class T>
class Eventual {
 public:
  Eventual() : period_{T{}} {}

  Eventual(std::vector<T> head, std::vector<T> period)
      : head_(std::move(head)), period_(std::move(period)) {
    if (period_.empty()) {
      throw std::invalid_argument("ultimately periodic sequence needs a non-empty period");
    }
    canonicalize();
  }

  static Eventual constant(T value) { return Eventual({}, {value}); }

  /// Builds the sequence whose entries are fn(0), fn(1), ..., assuming it is
  /// periodic with period `period_len` from index `stable_from` on.
  template <class Fn>
  static Eventual tabulate(std::size_t stable_from, std::size_t period_len, Fn&& fn) {
    if (period_len == 0 || period_len > kMaxPeriod) {
      throw std::length_error("period length out of range");
    }
    std::vector<T> head;
    head.reserve(stable_from);
    for (std::size_t i = 0; i < stable_from; ++i) head.push_back(fn(i));
    std::vector<T> period;
    period.reserve(period_len);
    for (std::size_t j = 0; j < period_len; ++j) period.push_back(fn(stable_from + j));
    return Eventual(std::move(head), std::move(period));
  }

  T operator[](std::size_t i) const {
    if (i < head_.size()) return head_[i];
    return period_[(i - head_.size()) % period_.size()];
  }

  const std::vector<T>& head() const { return head_; }
  const std::vector<T>& period() const { return period_; }

  /// Index from which the sequence repeats with its period.
  std::size_t stable_from() const { return head_.size(); }

  /// One full window past the head: every value of the sequence occurs in
  /// [0, window_end()).
  std::size_t window_end() const { return head_.size() + period_.size(); }

  friend bool operator==(const Eventual& a, const Eventual& b) {
    return a.head_ == b.head_ && a.period_ == b.period_;
  }

 private:
  void canonicalize() {
    const std::size_t p = period_.size();
    for (std::size_t d = 1; d < p; ++d) {
      if (p % d != 0) continue;
      bool repeats = true;
      for (std::size_t j = d; j < p && repeats; ++j) repeats = period_[j] == period_[j - d];
      if (repeats) {
        period_.resize(d);
        break;
      }
    }
    while (!head_.empty() && head_.back() == period_.back()) {
      head_.pop_back();
      std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    }
  }

  std::vector<T> head_;
  std::vector<T> period_;
};

inline std::size_t checked_lcm(std::size_t a, std::size_t b) {
  const std::size_t g = std::gcd(a, b);
  const std::size_t l = a / g * b;
  if (l > kMaxPeriod) throw std::length_error("combined period too long");
  return l;
}

/// Pointwise combination; the result is canonical.
template <class A, class B, class Fn>
auto zip_with(const Eventual<A>& a, const Eventual<B>& b, Fn&& fn)
    -> Eventual<decltype(fn(a[0], b[0]))> {
  using R = decltype(fn(a[0], b[0]));
  const std::size_t head = std::max(a.stable_from(), b.stable_from());
  const std::size_t period = checked_lcm(a.period().size(), b.period().size());
  return Eventual<R>::tabulate(head, period, [&](std::size_t i) { return fn(a[i], b[i]); });
}

template <class A, class Fn>
auto map_values(const Eventual<A>& a, Fn&& fn) -> Eventual<decltype(fn(a[0]))> {
  using R = decltype(fn(a[0]));
  return Eventual<R>::tabulate(a.stable_from(), a.period().size(),
                               [&](std::size_t i) { return fn(a[i]); });
}

/// True iff pred holds at every index >= the head, i.e. on the whole period.
template <class T, class Pred>
bool eventually_all(const Eventual<T>& a, Pred&& pred) {
  return std::all_of(a.period().begin(), a.period().end(), pred);
}

template <class T, class Pred>
bool infinitely_often(const Eventual<T>& a, Pred&& pred) {
  return std::any_of(a.period().begin(), a.period().end(), pred);
}

}  // namespace ttree

#endif  // TTREE_EVENTUAL_HPP
