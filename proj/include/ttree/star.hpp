// The poset of star-closures [T]* (all finite modifications of branches of
// T) under inclusion: certificates, compatibility, splicing, separativity,
// disjoint families and the re-indexing isomorphisms.

#ifndef TTREE_STAR_HPP
#define TTREE_STAR_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ttree/trees.hpp"

namespace ttree {

enum class CertKind { Exact, Constructed, Horizon };

const char* to_string(CertKind kind);

/// Evidence that δ(P)(k) ⊆ δ(T)(k) for every k >= k0. Horizon certificates
/// only cover k < depth and are not conclusive.
struct InclusionCert {
  CertKind kind = CertKind::Exact;
  std::size_t k0 = 0;
  std::size_t depth = 0;
  std::string provenance;
};

class StarSet {
 public:
  explicit StarSet(TrimmedTree tree) : tree_(std::move(tree)) {}
  const TrimmedTree& tree() const { return tree_; }

 private:
  TrimmedTree tree_;
};

/// β ∈ [T]*: β(n) ∈ δ(T)(n) for all but finitely many n. Exact inputs only.
bool in_star(const StarSet& s, const Point& p);

struct StarSubsetResult {
  bool answer = false;
  InclusionCert cert;
};

/// [P]* ⊆ [T]*. Exact inputs give an Exact certificate whose k0 is the least
/// valid bound; lazy inputs need a horizon and give a Horizon certificate.
StarSubsetResult star_subset(const StarSet& p, const StarSet& t,
                             std::optional<std::size_t> horizon = std::nullopt);

enum class Cell : std::uint8_t { Empty, Single, Full };

struct PatternCell {
  Cell cell = Cell::Empty;
  Symbol symbol = 0;  // meaningful only for Single

  friend bool operator==(const PatternCell& a, const PatternCell& b) {
    return a.cell == b.cell && (a.cell != Cell::Single || a.symbol == b.symbol);
  }
};

PatternCell intersect_cells(DeltaValue a, DeltaValue b);

struct IntersectionPattern {
  std::optional<Eventual<PatternCell>> exact;
  /// Values on [0, window.size()) for display and oracle checks.
  std::vector<PatternCell> window;
  bool finitely_many_empty = false;
  bool infinitely_many_full = false;
};

struct IntersectResult {
  IntersectionPattern pattern;
  bool compatible = false;
  std::optional<StarSet> witness;
  CertKind kind = CertKind::Exact;
  std::size_t depth = 0;
};

/// [P]* ∩ [Q]*: compatible iff the pointwise intersection of the δ's is empty
/// only finitely often and full in both infinitely often. The witness R then
/// satisfies [R]* = [P]* ∩ [Q]*.
IntersectResult star_intersect(const StarSet& p, const StarSet& q,
                               std::optional<std::size_t> horizon = std::nullopt);

/// A tree Q with Q ⊆ₙ T and [Q]* = [P]*: δ(T) up to max(aₙ, k0), δ(P) above.
/// Horizon certificates are refused unless `allow_unverified`.
TrimmedTree splice(const TrimmedTree& p, const TrimmedTree& t, std::size_t n,
                   const InclusionCert& cert, bool allow_unverified = false);

/// The coordinate up to which splice copies δ(T).
std::size_t splice_cutoff(const TrimmedTree& t, std::size_t n, const InclusionCert& cert);

/// For [P]* ⊄ [T]*, a star [Q]* ⊆ [P]* incompatible with [T]*. Exact inputs
/// only.
StarSet separative_witness(const StarSet& p, const StarSet& t);

/// m pairwise disjoint stars, each a subtree of `t`: for the members C of an
/// almost-disjoint family on A, the trees T[V_C, α_C] where V_C is the
/// alternate split of C and α_C moves α to (α+1) mod |Xₙ| on C.
std::vector<StarSet> disjoint_family(const TrimmedTree& t, std::size_t m);

/// Coordinates up to `window` where the two disjoint-family members are both
/// forced and disagree.
std::vector<std::size_t> forced_disagreements(const TrimmedTree& a, const TrimmedTree& b,
                                              std::size_t window);

/// The alphabet k ↦ sizes(φ⁻¹(k)) that Φ maps into. `prefix_perm`, when
/// non-empty, is a permutation π of {0..m-1}: φ(a_k) = π(k) for k < m and
/// φ(a_k) = k otherwise.
Alphabet reindexed_alphabet(const TrimmedTree& t, const std::vector<std::size_t>& prefix_perm = {});

/// Φ(T[B, β]) = T[φ(B), β∘φ⁻¹] for sub ⊆ t.
TrimmedTree iso_phi(const TrimmedTree& t, const TrimmedTree& sub,
                    const std::vector<std::size_t>& prefix_perm = {});

/// Ψ(T[C, γ]) = T[φ⁻¹(C), γ∘φ ∪ α|ω∖A], a subtree of t.
TrimmedTree iso_psi(const TrimmedTree& t, const TrimmedTree& any,
                    const std::vector<std::size_t>& prefix_perm = {});

}  // namespace ttree

#endif  // TTREE_STAR_HPP
