#pragma once

#include "padix/core_arith.hpp"
#include "padix/extension_ring.hpp"
#include "padix/model.hpp"
#include "padix/residue_poly.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace padix {

enum class InconclusiveReason { PrecisionExhausted, DepthExceeded, NonSeparableSuspect };
std::string to_string(InconclusiveReason r);

struct RootCountResult {
  std::optional<int> count;  // engaged iff Exact
  InconclusiveReason reason = InconclusiveReason::PrecisionExhausted;
  int digits_consumed = 0;

  static RootCountResult exact(int c, int digits = 0) { return {c, InconclusiveReason::PrecisionExhausted, digits}; }
  static RootCountResult inconclusive(InconclusiveReason r, int digits = 0) { return {std::nullopt, r, digits}; }
  bool is_exact() const { return count.has_value(); }
  int value() const { return *count; }
  std::string describe() const;
};

struct CountBudget {
  int max_depth = 12;
  int min_remaining_digits = 2;
};

enum class Region { Integral, MaximalIdeal };

// Residue-level data of an integral polynomial that does not depend on the ring:
// p-content and the factorization of the reduction over F_p, grouped by (degree, multiplicity).
struct ResidueProfile {
  struct Block {
    FqPoly product;                 // product of the irreducible factors in this block
    int degree;                     // degree of each irreducible factor
    int multiplicity;
    std::vector<FqPoly> irreducible;  // split out only when multiplicity >= 2
  };
  bool vanishes = false;  // F == 0 mod p^k
  int content = 0;        // v_p of the gcd of coefficients
  std::vector<Block> blocks;
};

template <class Arith>
ResidueProfile make_profile(std::span<const typename Arith::word_type> F, const Arith& ar, Region region);

template <class Arith>
RootCountResult count_roots(std::span<const typename Arith::word_type> F, const ExtensionRing<Arith>& R,
                            Region region, CountBudget b, const ResidueProfile* profile = nullptr);

template <class Arith>
RootCountResult count_integral_roots(std::span<const typename Arith::word_type> F, const ExtensionRing<Arith>& R,
                                     CountBudget b = {}) {
  return count_roots(F, R, Region::Integral, b);
}

template <class Arith>
RootCountResult count_maximal_ideal_roots(std::span<const typename Arith::word_type> F,
                                          const ExtensionRing<Arith>& R, CountBudget b = {}) {
  return count_roots(F, R, Region::MaximalIdeal, b);
}

// Integral roots of P plus maximal-ideal roots of the degree-n reversal.
template <class Arith>
RootCountResult count_field_roots(std::span<const typename Arith::word_type> P, const ExtensionRing<Arith>& R,
                                  CountBudget b = {}, const ResidueProfile* direct = nullptr,
                                  const ResidueProfile* reversed = nullptr);

// Combination helpers. Exact only if every input is Exact.
RootCountResult combine(std::span<const RootCountResult> parts, std::span<const int> weights);

// PadicDigits front ends; coefficients are reduced to the ring precision.
RootCountResult count_integral_roots(const std::vector<PadicDigits>& F, const AnyRing& R, CountBudget b = {});
RootCountResult count_maximal_ideal_roots(const std::vector<PadicDigits>& F, const AnyRing& R, CountBudget b = {});
// P has formal degree n = P.size() - 1.
RootCountResult count_field_roots(const std::vector<PadicDigits>& P, const AnyRing& R, CountBudget b = {});

struct NewRootTable {
  int r_max = 0;
  std::vector<RootCountResult> all;    // index d-1
  std::vector<RootCountResult> fresh;  // index r-1: new(r)
  const RootCountResult& all_at(int d) const { return all.at(d - 1); }
  const RootCountResult& new_at(int r) const { return fresh.at(r - 1); }
};

// new(r) = sum_{d|r} mu(r/d) all(d), computed from a list all(1..r_max).
NewRootTable mobius_table(std::vector<RootCountResult> all);

NewRootTable new_counts_unramified(const std::vector<PadicDigits>& F, Model model, int r_max, CountBudget b = {});
RootCountResult new_count_ramified_quadratic(const std::vector<PadicDigits>& P, const AnyRing& R, CountBudget b = {});

}  // namespace padix

#include "padix/detail/root_counter_impl.hpp"
