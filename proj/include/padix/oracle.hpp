#pragma once

#include "padix/core_arith.hpp"
#include "padix/extension_ring.hpp"
#include "padix/formulas.hpp"

#include <cstdint>
#include <vector>

namespace padix {

inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 26;
inline constexpr std::uint64_t kDefaultResidueBudget = std::uint64_t{1} << 22;

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnumerationReport {
  std::uint64_t total_cases = 0;
  std::uint64_t hit_count = 0;
  Rational probability;
  Rational bound;
  bool satisfied = false;
};

// Exhaustive count of A in Mat_n(F_p) with det Z(A) = 0, for Z monic (low-to-high) irreducible mod p.
EnumerationReport det_singular_census(PrimeBase p, int n, const std::vector<std::uint32_t>& Z,
                                      std::uint64_t budget = kDefaultEnumerationBudget, int workers = 1);

// Number of alpha in F_{p^r} with F_p[alpha] = F_{p^r}, by enumeration.
std::uint64_t generator_census(PrimeBase p, int r);

// P(v(a_0) >= v(a_1)) for independent Haar a_0, a_1.
Rational exact_linear_root_prob(PrimeBase p);

struct CensusResult {
  bool decisive = false;
  int count = 0;
  std::uint64_t enumerated = 0;
};

// Enumerates O_K / pi^N and groups Hensel-certified solutions of F(x) = 0 into root classes.
CensusResult residue_root_census(const std::vector<PadicDigits>& F, const RingDescriptor& R, int k,
                                 std::uint64_t budget = kDefaultResidueBudget);

}  // namespace padix
