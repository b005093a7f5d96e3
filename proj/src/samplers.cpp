#include "padix/samplers.hpp"

#include <stdexcept>

namespace padix {

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
  constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
  constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = std::uint64_t(M0) * ctr[0];
    const std::uint64_t p1 = std::uint64_t(M1) * ctr[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += W0;
    key[1] += W1;
  }
  return ctr;
}

std::uint32_t DigitStream::digit(std::uint64_t sample, std::uint32_t coef, std::uint32_t t) const {
  auto blk = block(sample, coef, t / 2);
  return t % 2 == 0 ? to_digit(blk[0], blk[1]) : to_digit(blk[2], blk[3]);
}

BigInt DigitStream::coefficient(std::uint64_t sample, std::uint32_t coef, int k) const {
  BigInt v = 0, pt = 1;
  for (int t = 0; t < k; ++t) {
    v += digit(sample, coef, static_cast<std::uint32_t>(t)) * pt;
    pt *= p_.value();
  }
  return v;
}

namespace {

void check_shape(int k, int n) {
  if (k < 1) throw std::invalid_argument("precision must be positive");
  if (n < 1) throw std::invalid_argument("size must be positive");
}

}  // namespace

HaarMatrixSample sample_matrix(PrimeBase p, int k, int n, std::uint64_t seed, std::uint64_t index) {
  check_shape(k, n);
  DigitStream ds(seed, p);
  HaarMatrixSample s{p, k, n, seed, index, {}};
  s.entries.reserve(static_cast<std::size_t>(n) * n);
  for (int c = 0; c < n * n; ++c) s.entries.emplace_back(p, k, ds.coefficient(index, static_cast<std::uint32_t>(c), k));
  return s;
}

HaarPolySample sample_poly(PrimeBase p, int k, int n, std::uint64_t seed, std::uint64_t index) {
  check_shape(k, n);
  DigitStream ds(seed, p);
  HaarPolySample s{p, k, n, seed, index, {}};
  for (int c = 0; c <= n; ++c) s.coefficients.emplace_back(p, k, ds.coefficient(index, static_cast<std::uint32_t>(c), k));
  return s;
}

HaarMatrixSample escalate(const HaarMatrixSample& s, int k_new, int k_max) {
  if (k_new > k_max) throw std::invalid_argument("precision above k_max");
  if (k_new < s.k) throw std::invalid_argument("escalation cannot lower precision");
  if (k_new == s.k) return s;
  return sample_matrix(s.p, k_new, s.n, s.seed, s.index);
}

HaarPolySample escalate(const HaarPolySample& s, int k_new, int k_max) {
  if (k_new > k_max) throw std::invalid_argument("precision above k_max");
  if (k_new < s.k) throw std::invalid_argument("escalation cannot lower precision");
  if (k_new == s.k) return s;
  return sample_poly(s.p, k_new, s.n, s.seed, s.index);
}

HaarMatrixSample truncate(const HaarMatrixSample& s, int k_new) {
  HaarMatrixSample t = s;
  t.k = k_new;
  for (auto& e : t.entries) e = e.truncated(k_new);
  return t;
}

HaarPolySample truncate(const HaarPolySample& s, int k_new) {
  HaarPolySample t = s;
  t.k = k_new;
  for (auto& e : t.coefficients) e = e.truncated(k_new);
  return t;
}

std::vector<PadicDigits> char_poly(const std::vector<PadicDigits>& entries, int n) {
  if (static_cast<int>(entries.size()) != n * n) throw std::invalid_argument("matrix entry count mismatch");
  const PrimeBase p = entries.front().base();
  int k = entries.front().known_digits();
  for (const auto& e : entries) k = std::min(k, e.known_digits());
  ModBig ar(p, k);
  std::vector<BigInt> A;
  for (const auto& e : entries) A.push_back(e.value());
  auto c = char_poly_words(ar, std::span<const BigInt>(A), n);
  std::vector<PadicDigits> out;
  for (const auto& w : c) out.emplace_back(p, k, w);
  return out;
}

std::vector<PadicDigits> char_poly(const HaarMatrixSample& A) { return char_poly(A.entries, A.n); }

}  // namespace padix
