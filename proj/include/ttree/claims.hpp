// Claim records for the brute-force checker: every relation is restated over
// explicit finite windows of the trees involved.

#ifndef TTREE_CLAIMS_HPP
#define TTREE_CLAIMS_HPP

#include <cstddef>
#include <vector>

#include "ttree/serialize.hpp"

namespace ttree::claims {

/// {"sizes":[...], "branching":[0/1...], "ground":[...]} on [0, window).
Json tree_prefix(const TrimmedTree& t, std::size_t window);
Json point_prefix(const Point& p, std::size_t window);

/// A window long enough that its upper half lies in the periodic part of
/// every exact tree given (at least `requested`).
std::size_t settle_window(std::size_t requested, const std::vector<TrimmedTree>& trees);

Json levels(const TrimmedTree& t, std::size_t n, const std::vector<FiniteNode>& nodes);
Json restrict(const TrimmedTree& t, const FiniteNode& s, const TrimmedTree& result, std::size_t n,
              const std::vector<FiniteNode>& nodes);
Json tree_subset(const TrimmedTree& p, const TrimmedTree& t, bool answer, std::size_t window);
Json subset_n(const TrimmedTree& p, const TrimmedTree& t, std::size_t n, bool answer, std::size_t window);
/// `least` asks the checker to confirm k0 - 1 is a violation.
Json star_subset(const TrimmedTree& p, const TrimmedTree& t, const StarSubsetResult& r, std::size_t window,
                 bool least = true);
Json cert(const TrimmedTree& w, const TrimmedTree& t, std::size_t k0, std::size_t window);
Json intersect(const TrimmedTree& p, const TrimmedTree& q, const IntersectResult& r, std::size_t window);
Json splice(const TrimmedTree& p, const TrimmedTree& t, const TrimmedTree& q, std::size_t n,
            std::size_t cutoff, std::size_t window);
Json fuse(const std::vector<TrimmedTree>& inputs, const FuseResult& r, std::size_t window);
Json avoid(const TrimmedTree& result, const std::vector<Point>& targets, std::size_t depth,
           const TrimmedTree* base = nullptr);
Json iso_phi(const TrimmedTree& t, const TrimmedTree& sub, const std::vector<std::size_t>& perm,
             const TrimmedTree& image, std::size_t window);
Json iso_psi(const TrimmedTree& t, const TrimmedTree& any, const std::vector<std::size_t>& perm,
             const TrimmedTree& result, std::size_t window);
Json identity(const TrimmedTree& a, const TrimmedTree& b, std::size_t window);
/// Asks for a coordinate >= after where both trees are forced and differ.
Json disjoint(const TrimmedTree& a, const TrimmedTree& b, std::size_t window, std::size_t after);
Json separative(const TrimmedTree& p, const TrimmedTree& t, const TrimmedTree& q, std::size_t window);
Json not_eventually_agree(const Point& p, const Point& q, std::size_t window);

}  // namespace ttree::claims

#endif  // TTREE_CLAIMS_HPP
