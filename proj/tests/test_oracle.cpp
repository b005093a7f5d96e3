#include <doctest.h>

#include "padix/oracle.hpp"
#include "padix/residue_poly.hpp"

#include <cmath>

using namespace padix;

namespace {

std::vector<PadicDigits> Z(std::uint32_t p, int k, const std::vector<long long>& c) {
  std::vector<PadicDigits> out;
  for (long long v : c) out.push_back(PadicDigits::from_int(PrimeBase(p), k, v));
  return out;
}

}  // namespace

TEST_CASE("det_singular_census examples") {
  auto a = det_singular_census(PrimeBase(2), 2, {1, 1, 1});
  CHECK(a.total_cases == 16);
  CHECK(a.hit_count == 2);
  CHECK(a.probability == Rational(1, 8));
  CHECK(a.bound == Rational(1, 8));
  CHECK(a.satisfied);

  auto b = det_singular_census(PrimeBase(2), 3, {1, 1, 1});
  CHECK(b.total_cases == 512);
  CHECK(b.bound == det_singular_prob_bound(PrimeBase(2), 3, 2));
  CHECK(b.probability <= b.bound);
  CHECK(b.satisfied);

  auto c = det_singular_census(PrimeBase(3), 2, {1, 0, 1});
  CHECK(c.total_cases == 81);
  CHECK(c.probability <= Rational(1, 8));
  CHECK(c.satisfied);
}

TEST_CASE("det_singular_census invariants and workers") {
  for (int r = 2; r <= 3; ++r) {
    auto Zr = canonical_irreducible(PrimeBase(2), r);
    auto one = det_singular_census(PrimeBase(2), 3, Zr, kDefaultEnumerationBudget, 1);
    auto many = det_singular_census(PrimeBase(2), 3, Zr, kDefaultEnumerationBudget, 3);
    CHECK(one.hit_count == many.hit_count);
    CHECK(one.probability == Rational(BigInt(one.hit_count), BigInt(one.total_cases)));
    CHECK(one.satisfied == (one.probability <= one.bound));
  }
}

TEST_CASE("det_singular_census budget is a hard cap") {
  CHECK_THROWS_AS(det_singular_census(PrimeBase(2), 3, {1, 1, 1}, 511), BudgetExceeded);
  CHECK_NOTHROW(det_singular_census(PrimeBase(2), 3, {1, 1, 1}, 512));
}

TEST_CASE("generator_census") {
  CHECK(generator_census(PrimeBase(2), 6) == 54);
  CHECK(generator_census(PrimeBase(3), 1) == 3);
  CHECK(generator_census(PrimeBase(2), 2) == 2);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const int rmax = std::min(8, static_cast<int>(std::floor(20 / std::log2(static_cast<double>(p)))));
    for (int r = 1; r <= rmax; ++r) CHECK(BigInt(generator_census(PrimeBase(p), r)) == generator_count(PrimeBase(p), r));
  }
}

TEST_CASE("exact_linear_root_prob") {
  CHECK(exact_linear_root_prob(PrimeBase(2)) == Rational(2, 3));
  CHECK(exact_linear_root_prob(PrimeBase(3)) == Rational(3, 4));
  // geometric series: sum_j (1 - 1/p) p^-2j, partial sums approach the closed form
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    Rational s = 0;
    for (int j = 0; j < 40; ++j) s += (1 - Rational(1, p)) * rpow(p, -2 * j);
    CHECK(exact_linear_root_prob(PrimeBase(p)) - s < rpow(p, -78));
    CHECK(exact_linear_root_prob(PrimeBase(p)) >= s);
  }
}

TEST_CASE("residue_root_census examples") {
  auto a = residue_root_census(Z(5, 3, {-1, 0, 1}), RingDescriptor::unramified(PrimeBase(5), 1), 3);
  CHECK(a.decisive);
  CHECK(a.count == 2);
  auto b = residue_root_census(Z(3, 3, {0, -1, 0, 1}), RingDescriptor::unramified(PrimeBase(3), 1), 3);
  CHECK(b.decisive);
  CHECK(b.count == 3);
  auto c = residue_root_census(Z(3, 2, {1, 0, 1}), RingDescriptor::unramified(PrimeBase(3), 2), 2);
  CHECK(c.decisive);
  CHECK(c.count == 2);
  CHECK(c.enumerated == 81);
}

TEST_CASE("residue_root_census budget") {
  CHECK_THROWS_AS(residue_root_census(Z(3, 4, {1, 0, 1}), RingDescriptor::unramified(PrimeBase(3), 2), 4, 100),
                  BudgetExceeded);
}
