#include "ttree/fusion.hpp"

#include <mutex>
#include <string>

#include "ttree/errors.hpp"

namespace ttree {

struct TreeSequence::State {
  Generator gen;
  std::size_t horizon = 64;
  std::optional<std::size_t> stable_from;
  std::recursive_mutex mu;
  std::vector<TrimmedTree> trees;
  std::optional<PromiseViolation> poison;
};

TreeSequence::TreeSequence(Generator gen, std::size_t horizon) : state_(std::make_shared<State>()) {
  state_->gen = std::move(gen);
  state_->horizon = horizon;
}

TreeSequence TreeSequence::from_list(std::vector<TrimmedTree> trees, std::size_t horizon) {
  if (trees.empty()) throw PreconditionError("tree sequence needs at least one tree");
  const std::size_t last = trees.size() - 1;
  auto shared = std::make_shared<const std::vector<TrimmedTree>>(std::move(trees));
  TreeSequence seq([shared, last](std::size_t n) { return (*shared)[std::min(n, last)]; }, horizon);
  seq.state_->stable_from = last;
  return seq;
}

TrimmedTree TreeSequence::at(std::size_t n) const {
  std::lock_guard lock(state_->mu);
  if (state_->poison) throw *state_->poison;
  auto& trees = state_->trees;
  while (trees.size() <= n) {
    const std::size_t idx = trees.size();
    TrimmedTree next = state_->gen(idx);
    if (idx > 0) {
      const TrimmedTree& prev = trees.back();
      const bool exact = next.is_exact() && prev.is_exact();
      const Verdict v = subset_n(next, prev, idx - 1,
                                 exact ? std::nullopt : std::optional<std::size_t>(state_->horizon));
      if (!v.value) {
        state_->poison.emplace(idx - 1, "promise T(" + std::to_string(idx) + ") ⊆_" +
                                            std::to_string(idx - 1) + " T(" +
                                            std::to_string(idx - 1) + ") is violated");
        throw *state_->poison;
      }
    }
    trees.push_back(std::move(next));
  }
  return trees[n];
}

std::optional<std::size_t> TreeSequence::stable_from() const { return state_->stable_from; }

std::size_t TreeSequence::materialized() const {
  std::lock_guard lock(state_->mu);
  return state_->trees.size();
}

FuseResult fuse(const TreeSequence& seq, std::size_t depth) {
  seq.at(depth + 1);

  FuseResult out;
  out.depth = depth;
  const auto stable = seq.stable_from();
  if (stable && *stable <= depth + 1) {
    // Eventually constant: C = A_s and α agrees with α_s off A_s.
    out.tree = seq.at(*stable);
    out.exact = out.tree.is_exact();
  } else {
    const TrimmedTree first = seq.at(0);
    NatSet diagonal = NatSet::enumerated(
        [seq](std::size_t k) { return seq.at(k).branching().nth(k); }, "diagonal");
    // A coordinate i is settled by stage i+1: membership in A_m no longer
    // changes for m > i+1.
    Point alpha = Point::lazy([seq](std::size_t i) {
      for (std::size_t n = 0; n <= i + 1; ++n) {
        const TrimmedTree t = seq.at(n);
        if (!t.branching().contains(i)) return t.ground()[i];
      }
      return Symbol{0};
    });
    out.tree = TrimmedTree(first.alphabet(), std::move(diagonal), std::move(alpha));
  }

  for (std::size_t n = 0; n <= depth; ++n) {
    const TrimmedTree tn = seq.at(n);
    FuseTraceRow row;
    row.n = n;
    row.a_n_n = tn.branching().nth(n);
    row.checked_subset_n = true;  // seq.at validated the pair (n+1, n)
    const bool exact = out.tree.is_exact() && tn.is_exact();
    row.result_inside =
        tree_subset(out.tree, tn, exact ? std::nullopt : std::optional<std::size_t>(depth)).value;
    if (!row.result_inside) {
      throw Error("fused tree escapes T(" + std::to_string(n) + ")");
    }
    out.trace.push_back(row);
  }
  return out;
}

HadamardResult hadamard_lower_bound(const std::vector<StarSet>& stars, std::size_t depth,
                                    const std::vector<std::optional<InclusionCert>>& link_certs) {
  if (stars.empty()) throw PreconditionError("hadamard_lower_bound needs a non-empty chain");
  std::vector<TrimmedTree> chain{stars[0].tree()};
  // cutoffs[n]: δ(Q_n) = δ(T_n) above this coordinate (none for n = 0).
  std::vector<std::optional<std::size_t>> cutoffs{std::nullopt};
  for (std::size_t n = 0; n + 1 < stars.size(); ++n) {
    const TrimmedTree& next = stars[n + 1].tree();
    InclusionCert cert;
    if (n < link_certs.size() && link_certs[n]) {
      cert = *link_certs[n];
      if (cert.kind == CertKind::Horizon) {
        throw PreconditionError("chain link " + std::to_string(n) + " only has a horizon certificate");
      }
      // Q_n and T_n share δ above the previous cutoff.
      if (cutoffs[n]) cert.k0 = std::max(cert.k0, *cutoffs[n] + 1);
      cert.kind = CertKind::Constructed;
      cert.provenance = "chain link";
    } else {
      if (!next.is_exact() || !chain.back().is_exact()) {
        throw PreconditionError("inclusion certificate unobtainable for lazy chain link " +
                                std::to_string(n));
      }
      const StarSubsetResult r = star_subset(StarSet(next), StarSet(chain.back()));
      if (!r.answer) {
        throw PreconditionError("chain is not decreasing at link " + std::to_string(n));
      }
      cert = r.cert;
    }
    cutoffs.push_back(splice_cutoff(chain.back(), n, cert));
    chain.push_back(splice(next, chain.back(), n, cert));
  }

  HadamardResult out{StarSet(chain.back()), chain, {}, {}};
  out.fusion = fuse(TreeSequence::from_list(chain), depth);
  out.lower_bound = StarSet(out.fusion.tree);

  for (std::size_t n = 0; n < stars.size(); ++n) {
    if (out.fusion.tree.is_exact() && stars[n].tree().is_exact()) {
      const StarSubsetResult r = star_subset(out.lower_bound, stars[n]);
      if (!r.answer) throw Error("lower bound is not below star " + std::to_string(n));
      out.certs.push_back(r.cert);
    } else {
      // W ⊆ Q_n and δ(Q_n) = δ(T_n) above the splice cutoff.
      out.certs.push_back({CertKind::Constructed, cutoffs[n] ? *cutoffs[n] + 1 : 0, 0, "fusion"});
    }
  }
  return out;
}

namespace {

struct LazyChain {
  std::function<StarSet(std::size_t)> stars;
  std::mutex mu;
  std::vector<TrimmedTree> chain;
  std::vector<std::optional<std::size_t>> cutoffs;

  TrimmedTree at(std::size_t n) {
    std::lock_guard lock(mu);
    if (chain.empty()) {
      chain.push_back(stars(0).tree());
      cutoffs.push_back(std::nullopt);
    }
    while (chain.size() <= n) {
      const std::size_t k = chain.size() - 1;
      const TrimmedTree next = stars(k + 1).tree();
      if (!next.is_exact() || !chain.back().is_exact()) {
        throw PreconditionError("inclusion certificate unobtainable for lazy chain link " + std::to_string(k));
      }
      const StarSubsetResult r = star_subset(StarSet(next), StarSet(chain.back()));
      if (!r.answer) throw PreconditionError("chain is not decreasing at link " + std::to_string(k));
      cutoffs.push_back(splice_cutoff(chain.back(), k, r.cert));
      chain.push_back(splice(next, chain.back(), k, r.cert));
    }
    return chain[n];
  }
};

}  // namespace

HadamardResult hadamard_lower_bound(const std::function<StarSet(std::size_t)>& stars,
                                    std::optional<std::size_t> count, std::size_t depth) {
  if (count) {
    std::vector<StarSet> list;
    for (std::size_t n = 0; n < *count; ++n) list.push_back(stars(n));
    return hadamard_lower_bound(list, depth);
  }
  auto lazy = std::make_shared<LazyChain>();
  lazy->stars = stars;
  TreeSequence seq([lazy](std::size_t n) { return lazy->at(n); }, depth);
  FuseResult fused = fuse(seq, depth);
  HadamardResult out{StarSet(fused.tree), {}, {}, std::move(fused)};
  for (std::size_t n = 0; n <= depth; ++n) {
    out.chain.push_back(lazy->at(n));
    const auto cut = lazy->cutoffs[n];
    out.certs.push_back({CertKind::Constructed, cut ? *cut + 1 : 0, 0, "fusion"});
  }
  return out;
}

}  // namespace ttree
