#pragma once

#include <algorithm>

namespace padix {

template <class Arith>
ResidueProfile make_profile(std::span<const typename Arith::word_type> F, const Arith& ar, Region region) {
  ResidueProfile pr;
  const int k = ar.precision();
  int v = k;
  for (const auto& w : F)
    if (w != 0) v = std::min(v, ar.valuation(w));
  if (v >= k) {
    pr.vanishes = true;
    return pr;
  }
  pr.content = v;
  auto Fp = field_for(ar.base(), 1);
  FqPoly fbar;
  for (const auto& w : F) fbar.c.push_back(Fp->from_int(ar.residue(ar.div_p_pow(w, v))));
  poly::trim(fbar);
  if (fbar.degree() < 1) return pr;
  if (region == Region::MaximalIdeal) {
    int mu = 0;
    while (Fp->is_zero(fbar.c[mu])) ++mu;
    if (mu > 0) {
      FqPoly x = poly::x(*Fp);
      pr.blocks.push_back({x, 1, mu, mu >= 2 ? std::vector<FqPoly>{x} : std::vector<FqPoly>{}});
    }
    return pr;
  }
  for (auto& [s, m] : squarefree_decomposition(*Fp, fbar)) {
    for (auto& [gd, d] : distinct_degree_factor(*Fp, s)) {
      ResidueProfile::Block blk{gd, d, m, {}};
      if (m >= 2) blk.irreducible = equal_degree_factor(*Fp, gd, d);
      pr.blocks.push_back(std::move(blk));
    }
  }
  return pr;
}

namespace detail {

template <class Arith>
struct Descent {
  using Ring = ExtensionRing<Arith>;
  using Element = typename Ring::Element;

  const Ring& R;
  CountBudget b;
  int deepest = 0;  // largest pi-precision spent

  InconclusiveReason fail_reason(InconclusiveReason base, int stall) const {
    return stall >= 2 ? InconclusiveReason::NonSeparableSuspect : base;
  }

  // Roots of G (known mod pi^L) in the disk lift(alpha) + pi O, where alpha is a residue root of multiplicity m.
  std::optional<int> descend(const std::vector<Element>& G, const FqElement& alpha, int m, int L, int depth,
                             int stall, InconclusiveReason& why) {
    if (depth > b.max_depth) {
      why = fail_reason(InconclusiveReason::DepthExceeded, stall);
      deepest = std::max(deepest, R.pi_precision() - L);
      return std::nullopt;
    }
    std::vector<Element> H = G;
    R.taylor_shift(H, R.lift(alpha));
    // x <- a + pi x: coefficient j picks up pi^j.
    int c = L;
    for (std::size_t j = 0; j < H.size(); ++j) {
      for (std::size_t t = 0; t < j; ++t) H[j] = R.mul_pi(H[j]);
      c = std::min(c, std::min(R.pi_val(H[j]), L));
    }
    if (c >= L || L - c < b.min_remaining_digits) {
      why = fail_reason(InconclusiveReason::PrecisionExhausted, stall);
      deepest = std::max(deepest, R.pi_precision() - L + std::min(c, L));
      return std::nullopt;
    }
    for (auto& h : H) h = R.div_pi(h, c);
    const int L2 = L - c;
    deepest = std::max(deepest, R.pi_precision() - L2 + 1);
    const FqField& res = R.residue_field();
    FqPoly gbar;
    for (const auto& h : H) gbar.c.push_back(R.residue(h));
    poly::trim(gbar);
    if (gbar.degree() < 1) return 0;
    int total = 0;
    for (const auto& [beta, mu] : roots_in_field(res, gbar)) {
      if (mu == 1) {
        ++total;
        continue;
      }
      auto sub = descend(H, beta, mu, L2, depth + 1, mu >= m ? stall + 1 : 0, why);
      if (!sub) return std::nullopt;
      total += *sub;
    }
    return total;
  }
};

template <class Arith>
std::vector<typename ExtensionRing<Arith>::Element> lift_coefficients(std::span<const typename Arith::word_type> F,
                                                                       const ExtensionRing<Arith>& R, int content) {
  std::vector<typename ExtensionRing<Arith>::Element> G;
  G.reserve(F.size());
  for (const auto& w : F) G.push_back(R.from_word(R.arith().div_p_pow(w, content)));
  while (G.size() > 1 && R.is_zero(G.back())) G.pop_back();
  return G;
}

}  // namespace detail

template <class Arith>
RootCountResult count_roots(std::span<const typename Arith::word_type> F, const ExtensionRing<Arith>& R,
                            Region region, CountBudget b, const ResidueProfile* profile) {
  ResidueProfile local;
  if (!profile) {
    local = make_profile(F, R.arith(), region);
    profile = &local;
  }
  const int N = R.pi_precision();
  if (profile->vanishes) return RootCountResult::inconclusive(InconclusiveReason::PrecisionExhausted, N);
  const int L = N - R.ramification() * profile->content;
  detail::Descent<Arith> walk{R, b, N - L + 1};
  const FqField& res = R.residue_field();
  std::vector<typename ExtensionRing<Arith>::Element> G;
  int count = 0;
  for (const auto& blk : profile->blocks) {
    if (R.inertia() % blk.degree != 0) continue;
    if (blk.multiplicity == 1) {
      count += blk.product.degree();
      continue;
    }
    if (G.empty()) G = detail::lift_coefficients(F, R, profile->content);
    for (const auto& h : blk.irreducible) {
      FqPoly hk;
      for (const auto& c : h.c) hk.c.push_back(res.from_int(c.c[0]));
      auto roots = roots_in_field(res, hk);
      // Frobenius permutes the conjugate residues and fixes F, so one representative suffices.
      InconclusiveReason why = InconclusiveReason::PrecisionExhausted;
      auto sub = walk.descend(G, roots.front().root, blk.multiplicity, L, 1, 0, why);
      if (!sub) return RootCountResult::inconclusive(why, walk.deepest);
      count += h.degree() * *sub;
    }
  }
  return RootCountResult::exact(count, walk.deepest);
}

template <class Arith>
RootCountResult count_field_roots(std::span<const typename Arith::word_type> P, const ExtensionRing<Arith>& R,
                                  CountBudget b, const ResidueProfile* direct, const ResidueProfile* reversed) {
  if (P.empty()) throw std::invalid_argument("empty polynomial");
  if (P.front() == 0 || P.back() == 0)
    return RootCountResult::inconclusive(InconclusiveReason::PrecisionExhausted, R.pi_precision());
  auto inner = count_roots(P, R, Region::Integral, b, direct);
  if (!inner.is_exact()) return inner;
  std::vector<typename Arith::word_type> rev(P.rbegin(), P.rend());
  auto outer = count_roots(std::span<const typename Arith::word_type>(rev), R, Region::MaximalIdeal, b, reversed);
  if (!outer.is_exact()) return outer;
  return RootCountResult::exact(inner.value() + outer.value(), std::max(inner.digits_consumed, outer.digits_consumed));
}

}  // namespace padix
