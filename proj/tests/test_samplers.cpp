#include <doctest.h>

#include "padix/samplers.hpp"

#include <cmath>
#include <random>

using namespace padix;

namespace {

// Cofactor expansion of det(x I - A) over Z/m, on polynomials in x (low-to-high).
using Poly = std::vector<BigInt>;

Poly padd(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

Poly pmul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Poly cofactor_det(const std::vector<std::vector<Poly>>& M) {
  const std::size_t n = M.size();
  if (n == 1) return M[0][0];
  Poly det{0};
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Poly>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Poly> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(M[i][c]);
      minor.push_back(row);
    }
    Poly term = pmul(M[0][j], cofactor_det(minor));
    if (j % 2) for (auto& v : term) v = -v;
    det = padd(det, term);
  }
  return det;
}

std::vector<BigInt> charpoly_oracle(const std::vector<BigInt>& A, int n, const BigInt& m) {
  std::vector<std::vector<Poly>> M(n, std::vector<Poly>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M[i][j] = i == j ? Poly{-A[i * n + j], 1} : Poly{-A[i * n + j]};
  Poly d = cofactor_det(M);
  for (auto& v : d) v = ((v % m) + m) % m;
  return d;
}

std::vector<BigInt> matmul(const std::vector<BigInt>& A, const std::vector<BigInt>& B, int n, const BigInt& m) {
  std::vector<BigInt> C(n * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      BigInt s = 0;
      for (int l = 0; l < n; ++l) s += A[i * n + l] * B[l * n + j];
      C[i * n + j] = s % m;
    }
  return C;
}

std::vector<BigInt> words(const std::vector<PadicDigits>& v) {
  std::vector<BigInt> out;
  for (const auto& x : v) out.push_back(x.value());
  return out;
}

}  // namespace

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using A4 = std::array<std::uint32_t, 4>;
  CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("sampling is deterministic and address-keyed") {
  auto a = sample_matrix(PrimeBase(3), 10, 4, 42, 17), b = sample_matrix(PrimeBase(3), 10, 4, 42, 17);
  CHECK(a == b);
  CHECK_FALSE(a == sample_matrix(PrimeBase(3), 10, 4, 42, 18));
  CHECK_FALSE(a == sample_matrix(PrimeBase(3), 10, 4, 43, 17));
  DigitStream ds(42, PrimeBase(3));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int t = 0; t < 10; ++t)
        CHECK(a.at(i, j).digit(t) == ds.digit(17, static_cast<std::uint32_t>(i * 4 + j), static_cast<std::uint32_t>(t)));
  auto p1 = sample_poly(PrimeBase(5), 8, 6, 1, 2), p2 = sample_poly(PrimeBase(5), 8, 6, 1, 2);
  CHECK(p1 == p2);
  // word-level coefficient agrees with the BigInt path
  Mod64 ar(PrimeBase(5), 8);
  for (std::uint32_t c = 0; c <= 6; ++c) {
    DigitStream s5(42, PrimeBase(5));
    CHECK(BigInt(s5.coefficient(ar, 9, c)) == s5.coefficient(9, c, 8));
    Mod128 a128(PrimeBase(5), 8);
    CHECK(detail::to_big(s5.coefficient(a128, 9, c)) == s5.coefficient(9, c, 8));
  }
}

TEST_CASE("residue frequencies within 5 sigma (binomial oracle)") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const int N = 100000;
    std::vector<int> cnt(p, 0), lead(2, 0);
    for (int i = 0; i < N; ++i) {
      auto s = sample_poly(PrimeBase(p), 1, 2, 7, static_cast<std::uint64_t>(i));
      ++cnt[static_cast<std::size_t>(s.coefficients[0].value())];
      ++lead[s.coefficients[2].value() == 0 ? 1 : 0];
    }
    const double q = 1.0 / p, sigma = std::sqrt(N * q * (1 - q));
    for (std::uint32_t r = 0; r < p; ++r) CHECK(std::abs(cnt[r] - N * q) < 5 * sigma);
    CHECK(std::abs(lead[1] - N * q) < 5 * sigma);
  }
  {
    const int N = 100000;
    std::vector<int> cnt(3, 0);
    for (int i = 0; i < N; ++i) ++cnt[static_cast<std::size_t>(sample_matrix(PrimeBase(3), 1, 2, 9, i).at(1, 0).value())];
    const double sigma = std::sqrt(N / 3.0 * 2.0 / 3.0);
    for (int r = 0; r < 3; ++r) CHECK(std::abs(cnt[r] - N / 3.0) < 5 * sigma);
  }
}

TEST_CASE("pairwise independence across indices and digits (chi-square oracle)") {
  // 3x3 contingency of (entry of sample i, same entry of sample i+1) and of (digit 0, digit 1): df = 8.
  const int N = 45000;
  std::vector<int> a(9, 0), b(9, 0);
  DigitStream ds(11, PrimeBase(3));
  for (int i = 0; i < N; ++i) {
    ++a[ds.digit(i, 0, 0) * 3 + ds.digit(i + 1, 0, 0)];
    ++b[ds.digit(i, 3, 0) * 3 + ds.digit(i, 3, 1)];
  }
  auto chi2 = [&](const std::vector<int>& c) {
    double s = 0, e = N / 9.0;
    for (int v : c) s += (v - e) * (v - e) / e;
    return s;
  };
  // 99.99th percentile of chi-square with 8 df is about 31.8
  CHECK(chi2(a) < 31.8);
  CHECK(chi2(b) < 31.8);
}

TEST_CASE("escalation coherence") {
  auto s = sample_poly(PrimeBase(3), 8, 5, 3, 4);
  auto t = escalate(s, 20, 64);
  CHECK(truncate(t, 8) == s);
  CHECK(t == sample_poly(PrimeBase(3), 20, 5, 3, 4));
  CHECK(escalate(t, 20, 64) == t);
  CHECK(escalate(escalate(s, 16, 64), 20, 64) == t);
  CHECK_THROWS(escalate(s, 80, 64));
  auto m = sample_matrix(PrimeBase(2), 6, 3, 1, 1);
  CHECK(truncate(escalate(m, 12, 64), 6) == m);
}

TEST_CASE("char_poly examples") {
  const PrimeBase P(3);
  auto I = [&](std::vector<long long> v) {
    std::vector<PadicDigits> out;
    for (auto x : v) out.push_back(PadicDigits::from_int(P, 5, x));
    return out;
  };
  auto c = char_poly(I({1, 0, 0, 1}), 2);
  CHECK(words(c) == std::vector<BigInt>{1, 243 - 2, 1});
  auto d = char_poly(I({4, 0, 0, 7}), 2);
  CHECK(words(d) == std::vector<BigInt>{28, 243 - 11, 1});
}

TEST_CASE("char_poly matches cofactor expansion, similarity invariance, trace and determinant") {
  std::mt19937_64 rng(13);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const int k = 5;
    const BigInt m = ipow(BigInt(p), k);
    for (int n = 1; n <= 4; ++n) {
      for (int t = 0; t < 20; ++t) {
        auto A = sample_matrix(PrimeBase(p), k, n, rng(), t);
        auto Aw = words(A.entries);
        auto cp = words(char_poly(A));
        CHECK(cp == charpoly_oracle(Aw, n, m));
        BigInt tr = 0;
        for (int i = 0; i < n; ++i) tr += Aw[i * n + i];
        CHECK((cp[n - 1] + tr) % m == 0);
        // similarity by P invertible mod p; P^{-1} from the char poly of P by Cayley-Hamilton
        std::vector<BigInt> Pm;
        std::vector<BigInt> Pinv;
        while (true) {
          auto S = words(sample_matrix(PrimeBase(p), k, n, rng(), 0).entries);
          std::vector<PadicDigits> Sd;
          for (auto& v : S) Sd.emplace_back(PrimeBase(p), k, v);
          auto chS = words(char_poly(Sd, n));
          if (chS[0] % p == 0) continue;  // det S = (-1)^n chS[0] must be a unit
          // S^{-1} = -(S^{n-1} + c_{n-1} S^{n-2} + ... + c_1 I) / c_0
          std::vector<BigInt> acc(n * n, 0), Id(n * n, 0);
          for (int i = 0; i < n; ++i) Id[i * n + i] = 1;
          for (int j = n; j >= 1; --j) {
            acc = matmul(acc, S, n, m);
            for (int i = 0; i < n; ++i) acc[i * n + i] += chS[j];
          }
          PadicDigits c0(PrimeBase(p), k, chS[0]);
          BigInt inv = unit_inverse(c0).value();
          Pinv.clear();
          for (auto& v : acc) Pinv.push_back(((-(v * inv)) % m + m) % m);
          Pm = S;
          auto check = matmul(Pm, Pinv, n, m);
          REQUIRE(check == Id);
          break;
        }
        auto B = matmul(matmul(Pm, Aw, n, m), Pinv, n, m);
        std::vector<PadicDigits> Bd;
        for (auto& v : B) Bd.emplace_back(PrimeBase(p), k, v);
        CHECK(words(char_poly(Bd, n)) == cp);
      }
    }
  }
}

TEST_CASE("constant term is (-1)^n det by fraction-free elimination") {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 60; ++t) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const BigInt m = ipow(BigInt(3), 8);
    auto A = words(sample_matrix(PrimeBase(3), 8, n, rng(), 0).entries);
    // Bareiss over Z on the integer representatives, then reduce
    std::vector<BigInt> M = A;
    BigInt prev = 1;
    int sign = 1;
    bool zero = false;
    for (int c = 0; c < n - 1 && !zero; ++c) {
      int piv = -1;
      for (int r = c; r < n; ++r)
        if (M[r * n + c] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) {
        zero = true;
        break;
      }
      if (piv != c) {
        for (int j = 0; j < n; ++j) std::swap(M[piv * n + j], M[c * n + j]);
        sign = -sign;
      }
      for (int r = c + 1; r < n; ++r)
        for (int j = c + 1; j < n; ++j) M[r * n + j] = (M[r * n + j] * M[c * n + c] - M[r * n + c] * M[c * n + j]) / prev;
      prev = M[c * n + c];
    }
    BigInt det = zero ? BigInt(0) : sign * M[n * n - 1];
    std::vector<PadicDigits> Ad;
    for (auto& v : A) Ad.emplace_back(PrimeBase(3), 8, v);
    auto cp = words(char_poly(Ad, n));
    BigInt expect = ((n % 2 ? -det : det) % m + m) % m;
    CHECK(cp[0] == expect);
  }
}
