// Brute-force checker over finite prefixes. Works only from explicit windows
// (sizes, branching bits, ground values on [0, W)) and shares no code with
// the library proper.

#ifndef TTREE_ORACLE_ORACLE_HPP
#define TTREE_ORACLE_ORACLE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace oracle {

using Json = nlohmann::json;
using Word = std::vector<std::uint32_t>;

constexpr std::size_t kGuard = std::size_t{1} << 20;

struct GuardExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Depth-N words over explicit sizes; construction enforces ∏ sizes ≤ 2^20.
class TruncatedUniverse {
 public:
  explicit TruncatedUniverse(std::vector<std::uint32_t> sizes);
  std::size_t depth() const { return sizes_.size(); }
  /// All words of length depth(), lexicographic.
  std::vector<Word> words() const;

 private:
  std::vector<std::uint32_t> sizes_;
};

/// A trimmed tree seen through a window.
struct Prefix {
  std::vector<std::uint32_t> sizes;
  std::vector<bool> branching;
  std::vector<std::uint32_t> ground;

  static Prefix from_json(const Json& j);
  std::size_t window() const { return sizes.size(); }
};

/// Nodes of length n+1 by the level rule: extend every node of the previous
/// level by all symbols at branching coordinates, by the ground otherwise.
/// Sorted lexicographically. Throws GuardExceeded.
std::vector<Word> nodes_to_depth(const std::vector<bool>& branching, const std::vector<std::uint32_t>& ground,
                                 const std::vector<std::uint32_t>& sizes, std::size_t n);

/// Level-set inclusion of P in T at length n+1.
bool brute_subset(const Prefix& p, const Prefix& t, std::size_t n);

/// Level-set inclusion at every length up to the window, plus agreement of
/// the first n+1 branching coordinates.
bool brute_subset_n(const Prefix& p, const Prefix& t, std::size_t n);

/// Coordinates k in [from, W) where the P-level at k is not a subset of the T-level.
std::vector<std::size_t> star_violations(const Prefix& p, const Prefix& t, std::size_t from);

/// Per-coordinate intersection pattern: "empty", "full" or {"single": v}.
Json intersect_pattern(const Prefix& p, const Prefix& q);

struct Report {
  std::size_t index = 0;
  std::string kind;
  bool pass = false;
  std::string detail;
  std::optional<std::size_t> coordinate;
};

/// Re-derives a claim record inside its window. Unsupported kinds and
/// malformed records fail.
Report verify_claim(const Json& claim);

/// Parallel over claims, reports in input order.
std::vector<Report> verify_batch(const std::vector<Json>& claims);
std::vector<Report> verify_batch_serial(const std::vector<Json>& claims);

}  // namespace oracle

#endif  // TTREE_ORACLE_ORACLE_HPP
