#include "ttree/star.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ttree/errors.hpp"

namespace ttree {

const char* to_string(CertKind kind) {
  switch (kind) {
    case CertKind::Exact:
      return "exact";
    case CertKind::Constructed:
      return "constructed";
    case CertKind::Horizon:
      return "horizon";
  }
  return "?";
}

bool in_star(const StarSet& s, const Point& p) {
  const auto admitted = zip_with(delta(s.tree()).exact(), p.exact(),
                                 [](DeltaValue d, Symbol v) { return d.admits(v); });
  return eventually_all(admitted, [](bool b) { return b; });
}

StarSubsetResult star_subset(const StarSet& p, const StarSet& t, std::optional<std::size_t> horizon) {
  const TrimmedTree& pt = p.tree();
  const TrimmedTree& tt = t.tree();
  if (!(pt.alphabet() == tt.alphabet())) throw PreconditionError("stars over different alphabets");
  if (pt.is_exact() && tt.is_exact()) {
    const auto inside = zip_with(delta(pt).exact(), delta(tt).exact(),
                                 [](DeltaValue a, DeltaValue b) { return a.subset_of(b); });
    StarSubsetResult r;
    r.answer = eventually_all(inside, [](bool b) { return b; });
    r.cert.kind = CertKind::Exact;
    // Canonical head ends at the last violation.
    r.cert.k0 = r.answer ? inside.stable_from() : 0;
    return r;
  }
  if (!horizon) throw HorizonRequired("star inclusion on lazy trees needs a horizon");
  const std::size_t w = *horizon;
  std::size_t k0 = 0;
  for (std::size_t k = 0; k < w; ++k) {
    if (!pt.delta_at(k).subset_of(tt.delta_at(k))) k0 = k + 1;
  }
  StarSubsetResult r;
  r.answer = k0 <= w / 2;
  r.cert = {CertKind::Horizon, r.answer ? k0 : 0, w, "window"};
  return r;
}

PatternCell intersect_cells(DeltaValue a, DeltaValue b) {
  if (a.full && b.full) return {Cell::Full, 0};
  if (a.full) return {Cell::Single, b.symbol};
  if (b.full) return {Cell::Single, a.symbol};
  if (a.symbol == b.symbol) return {Cell::Single, a.symbol};
  return {Cell::Empty, 0};
}

namespace {

DeltaValue witness_cell(PatternCell c) {
  switch (c.cell) {
    case Cell::Full:
      return DeltaValue::all();
    case Cell::Single:
      return DeltaValue::singleton(c.symbol);
    case Cell::Empty:
      break;
  }
  return DeltaValue::singleton(0);
}

}  // namespace

IntersectResult star_intersect(const StarSet& p, const StarSet& q, std::optional<std::size_t> horizon) {
  const TrimmedTree& pt = p.tree();
  const TrimmedTree& qt = q.tree();
  if (!(pt.alphabet() == qt.alphabet())) throw PreconditionError("stars over different alphabets");
  IntersectResult r;
  if (pt.is_exact() && qt.is_exact()) {
    auto pattern = zip_with(delta(pt).exact(), delta(qt).exact(), intersect_cells);
    r.pattern.finitely_many_empty =
        !infinitely_often(pattern, [](PatternCell c) { return c.cell == Cell::Empty; });
    r.pattern.infinitely_many_full =
        infinitely_often(pattern, [](PatternCell c) { return c.cell == Cell::Full; });
    for (std::size_t i = 0; i < pattern.window_end(); ++i) r.pattern.window.push_back(pattern[i]);
    r.compatible = r.pattern.finitely_many_empty && r.pattern.infinitely_many_full;
    if (r.compatible) {
      r.witness = StarSet(tree_from_delta(pt.alphabet(), DeltaFn(map_values(pattern, witness_cell))));
    }
    r.pattern.exact = std::move(pattern);
    r.kind = CertKind::Exact;
    return r;
  }
  if (!horizon) throw HorizonRequired("star intersection on lazy trees needs a horizon");
  const std::size_t w = *horizon;
  bool empty_late = false;
  bool full_late = false;
  for (std::size_t n = 0; n < w; ++n) {
    const PatternCell c = intersect_cells(pt.delta_at(n), qt.delta_at(n));
    r.pattern.window.push_back(c);
    if (n >= w / 2) {
      empty_late = empty_late || c.cell == Cell::Empty;
      full_late = full_late || c.cell == Cell::Full;
    }
  }
  r.pattern.finitely_many_empty = !empty_late;
  r.pattern.infinitely_many_full = full_late;
  r.compatible = !empty_late && full_late;
  if (r.compatible) {
    r.witness = StarSet(tree_from_delta(pt.alphabet(), DeltaFn([pt, qt](std::size_t n) {
      return witness_cell(intersect_cells(pt.delta_at(n), qt.delta_at(n)));
    })));
  }
  r.kind = CertKind::Horizon;
  r.depth = w;
  return r;
}

std::size_t splice_cutoff(const TrimmedTree& t, std::size_t n, const InclusionCert& cert) {
  return std::max(t.branching().nth(n), cert.k0);
}

TrimmedTree splice(const TrimmedTree& p, const TrimmedTree& t, std::size_t n,
                   const InclusionCert& cert, bool allow_unverified) {
  if (cert.kind == CertKind::Horizon && !allow_unverified) {
    throw PreconditionError("splice refuses a horizon certificate without unverified mode");
  }
  if (!(p.alphabet() == t.alphabet())) throw PreconditionError("trees over different alphabets");
  const std::size_t cutoff = splice_cutoff(t, n, cert);
  if (p.is_exact() && t.is_exact()) {
    const auto dp = delta(p).exact();
    const auto dt = delta(t).exact();
    const auto inside = zip_with(dp, dt, [](DeltaValue a, DeltaValue b) { return a.subset_of(b); });
    for (std::size_t k = cert.k0; k < std::max(cert.k0, inside.stable_from()) + inside.period().size(); ++k) {
      if (!inside[k]) throw PreconditionError("certificate bound k0 does not witness [P]* ⊆ [T]*");
    }
    const std::size_t head = std::max({cutoff + 1, dp.stable_from(), dt.stable_from()});
    auto q = Eventual<DeltaValue>::tabulate(head, dp.period().size(), [&](std::size_t m) {
      return m <= cutoff ? dt[m] : dp[m];
    });
    return tree_from_delta(t.alphabet(), DeltaFn(std::move(q)));
  }
  return tree_from_delta(t.alphabet(), DeltaFn([p, t, cutoff](std::size_t m) {
    return m <= cutoff ? t.delta_at(m) : p.delta_at(m);
  }));
}

StarSet separative_witness(const StarSet& p, const StarSet& t) {
  if (star_subset(p, t).answer) {
    throw PreconditionError("separative_witness needs [P]* not contained in [T]*");
  }
  const auto dp = delta(p.tree()).exact();
  const auto dt = delta(t.tree()).exact();
  const NatSet z = NatSet::up(zip_with(dp, dt, [](DeltaValue a, DeltaValue b) { return !a.subset_of(b); }));
  BitSeq n_bits = NatSet::alternate(z).bits();
  const auto full_p = map_values(dp, [](DeltaValue d) { return d.full; });
  auto full_off_n = zip_with(full_p, n_bits, [](bool f, bool in_n) { return f && !in_n; });
  if (!infinitely_often(full_off_n, [](bool b) { return b; })) {
    // Every Full coordinate of P is eventually inside the even half of Z;
    // the odd half leaves all of them.
    n_bits = zip_with(z.bits(), n_bits, [](bool in_z, bool even) { return in_z && !even; });
  }
  // δ(Q): δ(P) off N, the least element of δ(P)(n) ∖ δ(T)(n) on N.
  const std::size_t head = std::max({dp.stable_from(), dt.stable_from(), n_bits.stable_from()});
  const std::size_t period = checked_lcm(checked_lcm(dp.period().size(), dt.period().size()),
                                         n_bits.period().size());
  auto chosen = Eventual<DeltaValue>::tabulate(head, period, [&](std::size_t n) {
    const DeltaValue a = dp[n];
    if (!n_bits[n] || !a.full) return a;
    return DeltaValue::singleton(dt[n].symbol == 0 ? 1 : 0);
  });
  return StarSet(tree_from_delta(p.tree().alphabet(), DeltaFn(std::move(chosen))));
}

std::vector<StarSet> disjoint_family(const TrimmedTree& t, std::size_t m) {
  const NatSet& a = t.branching();
  const Point alpha = t.ground();
  const Alphabet alphabet = t.alphabet();
  std::vector<StarSet> out;
  for (const NatSet& c : ad_family(a, m)) {
    Point alpha_c = Point::lazy([c, alpha, alphabet](std::size_t n) {
      return c.contains(n) ? static_cast<Symbol>((alpha[n] + 1) % alphabet.size(n)) : alpha[n];
    });
    out.emplace_back(TrimmedTree(alphabet, alternate_split(c), alpha_c));
  }
  return out;
}

std::vector<std::size_t> forced_disagreements(const TrimmedTree& a, const TrimmedTree& b,
                                              std::size_t window) {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n < window; ++n) {
    const DeltaValue x = a.delta_at(n);
    const DeltaValue y = b.delta_at(n);
    if (!x.full && !y.full && x.symbol != y.symbol) out.push_back(n);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Re-indexing isomorphisms.

namespace {

struct Reindex {
  NatSet a;
  std::vector<std::size_t> perm;     // π on {0..m-1}
  std::vector<std::size_t> inverse;  // π⁻¹

  Reindex(const TrimmedTree& t, const std::vector<std::size_t>& prefix_perm)
      : a(t.branching()), perm(prefix_perm), inverse(prefix_perm.size()) {
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t k = 0; k < perm.size(); ++k) {
      if (perm[k] >= perm.size() || seen[perm[k]]) {
        throw PreconditionError("prefix_perm is not a permutation");
      }
      seen[perm[k]] = true;
      inverse[perm[k]] = k;
    }
    if (!a.is_periodic()) throw HorizonRequired("re-indexing needs an ultimately periodic branching set");
  }

  std::size_t m() const { return perm.size(); }
  std::size_t pi(std::size_t k) const { return k < m() ? perm[k] : k; }
  std::size_t pi_inv(std::size_t k) const { return k < m() ? inverse[k] : k; }
  /// φ⁻¹(k) = a_{π⁻¹(k)}
  std::size_t phi_inv(std::size_t k) const { return a.nth(pi_inv(k)); }
  /// φ(n) for n ∈ A
  std::size_t phi(std::size_t n) const { return pi(a.rank(n)); }

  std::size_t ones_per_period() const {
    const auto& p = a.bits().period();
    return static_cast<std::size_t>(std::count(p.begin(), p.end(), true));
  }

  /// k ↦ f(φ⁻¹(k)) for f ultimately periodic over coordinates.
  template <class U>
  Eventual<U> pull_back(const Eventual<U>& f) const {
    const auto& bits = a.bits();
    const std::size_t pa = bits.period().size();
    const std::size_t pf = f.period().size();
    const std::size_t k0 = std::max(m(), a.rank(std::max(bits.stable_from(), f.stable_from())));
    const std::size_t r = pf / std::gcd(pa, pf);
    return Eventual<U>::tabulate(k0, ones_per_period() * r,
                                 [&](std::size_t k) { return f[phi_inv(k)]; });
  }

  /// n ↦ n ∈ A ? h(φ(n)) : rest(n), for h over indices and rest over coordinates.
  template <class U>
  Eventual<U> push_forward(const Eventual<U>& h, const Eventual<U>& rest) const {
    const auto& bits = a.bits();
    const std::size_t pa = bits.period().size();
    const std::size_t ph = h.period().size();
    const std::size_t c = ones_per_period();
    const std::size_t r = ph / std::gcd(c, ph);
    const std::size_t period = checked_lcm(pa * r, rest.period().size());
    const std::size_t n0 = std::max({bits.stable_from(), rest.stable_from(),
                                     a.nth(std::max(m(), h.stable_from()))});
    return Eventual<U>::tabulate(n0, period, [&](std::size_t n) {
      return a.contains(n) ? h[phi(n)] : rest[n];
    });
  }
};

}  // namespace

Alphabet reindexed_alphabet(const TrimmedTree& t, const std::vector<std::size_t>& prefix_perm) {
  const Reindex rx(t, prefix_perm);
  return Alphabet(rx.pull_back(t.alphabet().sizes()));
}

TrimmedTree iso_phi(const TrimmedTree& t, const TrimmedTree& sub,
                    const std::vector<std::size_t>& prefix_perm) {
  const Reindex rx(t, prefix_perm);
  const Verdict inside = tree_subset(sub, t, sub.is_exact() ? std::nullopt : std::optional<std::size_t>(64));
  if (!inside.value) throw PreconditionError("iso_phi needs a subtree of T");
  Alphabet target = reindexed_alphabet(t, prefix_perm);
  if (sub.is_exact()) {
    return TrimmedTree(target, NatSet::up(rx.pull_back(sub.branching().bits())),
                       Point(rx.pull_back(sub.ground().exact())));
  }
  const NatSet b = sub.branching();
  const Point beta = sub.ground();
  return TrimmedTree(
      target, NatSet::by_membership([rx, b](std::size_t k) { return b.contains(rx.phi_inv(k)); }, "phi-image"),
      Point::lazy([rx, beta](std::size_t k) { return beta[rx.phi_inv(k)]; }));
}

TrimmedTree iso_psi(const TrimmedTree& t, const TrimmedTree& any,
                    const std::vector<std::size_t>& prefix_perm) {
  const Reindex rx(t, prefix_perm);
  if (!(any.alphabet() == reindexed_alphabet(t, prefix_perm))) {
    throw PreconditionError("iso_psi input is not over the re-indexed alphabet");
  }
  if (any.is_exact() && t.ground().is_exact()) {
    const auto c_bits = any.branching().bits();
    const auto branching = rx.push_forward(c_bits, BitSeq::constant(false));
    const auto ground = rx.push_forward(any.ground().exact(), t.ground().exact());
    return TrimmedTree(t.alphabet(), NatSet::up(branching), Point(ground));
  }
  const NatSet c = any.branching();
  const Point gamma = any.ground();
  const Point alpha = t.ground();
  return TrimmedTree(
      t.alphabet(),
      NatSet::by_membership([rx, c](std::size_t n) { return rx.a.contains(n) && c.contains(rx.phi(n)); },
                            "phi-preimage"),
      Point::lazy([rx, gamma, alpha](std::size_t n) {
        return rx.a.contains(n) ? gamma[rx.phi(n)] : alpha[n];
      }));
}

}  // namespace ttree
