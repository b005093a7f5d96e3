#pragma once

#include "padix/core_arith.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace padix {

inline constexpr int kDefaultMaxPrecision = 64;

// Philox4x32-10 counter-based generator.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key);

// Address-keyed base-p digits: (sample, coefficient, digit) -> {0..p-1}.
class DigitStream {
 public:
  DigitStream(std::uint64_t seed, PrimeBase p) : seed_(seed), p_(p) {}

  std::uint64_t seed() const { return seed_; }
  PrimeBase base() const { return p_; }

  std::uint32_t digit(std::uint64_t sample, std::uint32_t coef, std::uint32_t t) const;
  // Digits [0, k) of one coefficient: sum_t digit(t) p^t.
  BigInt coefficient(std::uint64_t sample, std::uint32_t coef, int k) const;

  template <class Arith>
  typename Arith::word_type coefficient(const Arith& ar, std::uint64_t sample, std::uint32_t coef) const {
    using Word = typename Arith::word_type;
    const int k = ar.precision();
    Word v = 0, pt = 1;
    const Word pw = Word(p_.value());
    for (int t = 0; t < k; t += 2) {
      auto blk = block(sample, coef, static_cast<std::uint32_t>(t / 2));
      v += Word(to_digit(blk[0], blk[1])) * pt;
      if (t + 1 < k) {
        pt *= pw;
        v += Word(to_digit(blk[2], blk[3])) * pt;
      }
      if (t + 2 < k) pt *= pw;
    }
    return v;
  }

 private:
  std::array<std::uint32_t, 4> block(std::uint64_t sample, std::uint32_t coef, std::uint32_t pair) const {
    return philox4x32({static_cast<std::uint32_t>(sample), static_cast<std::uint32_t>(sample >> 32), coef, pair},
                      {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)});
  }
  std::uint32_t to_digit(std::uint32_t hi, std::uint32_t lo) const {
    const std::uint64_t h = (std::uint64_t(hi) << 32) | lo;
    return static_cast<std::uint32_t>((static_cast<u128>(h) * p_.value()) >> 64);
  }

  std::uint64_t seed_;
  PrimeBase p_;
};

struct HaarMatrixSample {
  PrimeBase p{2};
  int k = 0;
  int n = 0;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  std::vector<PadicDigits> entries;  // row-major, entry (i,j) uses coefficient index i*n+j

  const PadicDigits& at(int i, int j) const { return entries[static_cast<std::size_t>(i) * n + j]; }
  friend bool operator==(const HaarMatrixSample&, const HaarMatrixSample&) = default;
};

struct HaarPolySample {
  PrimeBase p{2};
  int k = 0;
  int n = 0;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  std::vector<PadicDigits> coefficients;  // a_0 .. a_n

  friend bool operator==(const HaarPolySample&, const HaarPolySample&) = default;
};

HaarMatrixSample sample_matrix(PrimeBase p, int k, int n, std::uint64_t seed, std::uint64_t index);
HaarPolySample sample_poly(PrimeBase p, int k, int n, std::uint64_t seed, std::uint64_t index);

HaarMatrixSample escalate(const HaarMatrixSample& s, int k_new, int k_max = kDefaultMaxPrecision);
HaarPolySample escalate(const HaarPolySample& s, int k_new, int k_max = kDefaultMaxPrecision);
HaarMatrixSample truncate(const HaarMatrixSample& s, int k_new);
HaarPolySample truncate(const HaarPolySample& s, int k_new);

// det(xI - A) by Berkowitz's division-free recurrence; coefficients low-to-high, monic.
template <class Arith>
std::vector<typename Arith::word_type> char_poly_words(const Arith& ar, std::span<const typename Arith::word_type> A,
                                                       int n);

std::vector<PadicDigits> char_poly(const HaarMatrixSample& A);
std::vector<PadicDigits> char_poly(const std::vector<PadicDigits>& entries, int n);

template <class Arith>
std::vector<typename Arith::word_type> char_poly_words(const Arith& ar, std::span<const typename Arith::word_type> A,
                                                       int n) {
  using Word = typename Arith::word_type;
  auto at = [&](int i, int j) -> const Word& { return A[static_cast<std::size_t>(i) * n + j]; };
  std::vector<Word> q{ar.one()};  // descending coefficients of the leading s x s block
  std::vector<Word> t, v, w, next;
  for (int s = 0; s < n; ++s) {
    // Toeplitz column: 1, -a, -R C, -R M C, ..., -R M^(s-1) C
    t.assign(s + 2, Word(0));
    t[0] = ar.one();
    t[1] = ar.neg(at(s, s));
    v.assign(s, Word(0));
    for (int i = 0; i < s; ++i) v[i] = at(i, s);
    for (int j = 0; j < s; ++j) {
      Word dot = 0;
      for (int i = 0; i < s; ++i) dot = ar.add(dot, ar.mul(at(s, i), v[i]));
      t[j + 2] = ar.neg(dot);
      if (j + 1 < s) {
        w.assign(s, Word(0));
        for (int r = 0; r < s; ++r) {
          Word acc = 0;
          for (int c = 0; c < s; ++c) acc = ar.add(acc, ar.mul(at(r, c), v[c]));
          w[r] = acc;
        }
        std::swap(v, w);
      }
    }
    next.assign(s + 2, Word(0));
    for (int i = 0; i <= s + 1; ++i) {
      Word acc = 0;
      for (int j = 0; j <= std::min(i, s); ++j) acc = ar.add(acc, ar.mul(t[i - j], q[j]));
      next[i] = acc;
    }
    std::swap(q, next);
  }
  return std::vector<Word>(q.rbegin(), q.rend());
}

}  // namespace padix
