#include "padix/oracle.hpp"

#include "padix/residue_poly.hpp"

#include <atomic>
#include <set>
#include <thread>

namespace padix {

namespace {

using Mat = std::vector<std::uint32_t>;

Mat matmul(const Mat& A, const Mat& B, int n, std::uint32_t p) {
  Mat C(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) {
      const std::uint64_t a = A[i * n + l];
      if (!a) continue;
      for (int j = 0; j < n; ++j) C[i * n + j] = static_cast<std::uint32_t>((C[i * n + j] + a * B[l * n + j]) % p);
    }
  return C;
}

bool singular_mod_p(Mat M, int n, std::uint32_t p) {
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (M[r * n + col]) {
        piv = r;
        break;
      }
    if (piv < 0) return true;
    if (piv != col)
      for (int j = 0; j < n; ++j) std::swap(M[piv * n + j], M[col * n + j]);
    // inverse of pivot by Fermat
    std::uint64_t inv = 1, b = M[col * n + col], e = p - 2;
    while (e) {
      if (e & 1) inv = inv * b % p;
      b = b * b % p;
      e >>= 1;
    }
    for (int r = col + 1; r < n; ++r) {
      const std::uint64_t f = M[r * n + col] * inv % p;
      if (!f) continue;
      for (int j = col; j < n; ++j) M[r * n + j] = static_cast<std::uint32_t>((M[r * n + j] + (p - f) * M[col * n + j]) % p);
    }
  }
  return false;
}

}  // namespace

EnumerationReport det_singular_census(PrimeBase p, int n, const std::vector<std::uint32_t>& Z, std::uint64_t budget,
                                      int workers) {
  const int r = static_cast<int>(Z.size()) - 1;
  if (n < 1 || r < 1) throw std::invalid_argument("need n >= 1 and deg Z >= 1");
  if (Z.back() % p.value() != 1) throw std::invalid_argument("Z must be monic");
  {
    auto Fp = field_for(p, 1);
    FqPoly zbar;
    for (auto v : Z) zbar.c.push_back(Fp->from_int(v));
    if (!is_irreducible(*Fp, zbar)) throw std::invalid_argument("Z is not irreducible mod p");
  }
  const std::uint32_t q = p.value();
  BigInt total = ipow(BigInt(q), static_cast<unsigned>(n * n));
  if (total > BigInt(budget)) throw BudgetExceeded("p^(n^2) exceeds the enumeration budget");
  const std::uint64_t count = static_cast<std::uint64_t>(total);
  const int entries = n * n;

  // Blocks keyed by the (0,0) entry.
  std::atomic<std::uint32_t> next{0};
  std::vector<std::uint64_t> hits(q, 0);
  auto run = [&] {
    Mat A(entries), B;
    while (true) {
      const std::uint32_t lead = next.fetch_add(1);
      if (lead >= q) return;
      std::uint64_t h = 0;
      for (std::uint64_t idx = lead; idx < count; idx += q) {
        std::uint64_t x = idx;
        for (int c = 0; c < entries; ++c) {
          A[c] = static_cast<std::uint32_t>(x % q);
          x /= q;
        }
        // Horner: B = Z(A)
        B.assign(entries, 0);
        for (int i = 0; i < n; ++i) B[i * n + i] = 1;
        for (int d = r - 1; d >= 0; --d) {
          B = matmul(B, A, n, q);
          for (int i = 0; i < n; ++i) B[i * n + i] = (B[i * n + i] + Z[d] % q) % q;
        }
        if (singular_mod_p(B, n, q)) ++h;
      }
      hits[lead] = h;
    }
  };
  const int w = std::max(1, std::min<int>(workers, static_cast<int>(q)));
  std::vector<std::thread> pool;
  for (int i = 1; i < w; ++i) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();

  EnumerationReport rep;
  rep.total_cases = count;
  for (auto h : hits) rep.hit_count += h;
  rep.probability = Rational(BigInt(rep.hit_count), BigInt(rep.total_cases));
  rep.bound = det_singular_prob_bound(p, n, r);
  rep.satisfied = rep.probability <= rep.bound;
  return rep;
}

std::uint64_t generator_census(PrimeBase p, int r) {
  if (r < 1) throw std::invalid_argument("r must be >= 1");
  BigInt size = ipow(BigInt(p.value()), static_cast<unsigned>(r));
  if (size > BigInt(1) << 20) throw BudgetExceeded("p^r exceeds 2^20");
  auto F = field_for(p, r);
  const std::uint64_t q = static_cast<std::uint64_t>(size);
  std::uint64_t gens = 0;
  for (std::uint64_t i = 0; i < q; ++i) {
    const FqElement a = F->element_at(i);
    // Degree of a over F_p = least d with a^(p^d) = a.
    FqElement b = F->frobenius(a);
    int d = 1;
    while (!(b == a)) {
      b = F->frobenius(b);
      ++d;
    }
    if (d == r) ++gens;
  }
  return gens;
}

Rational exact_linear_root_prob(PrimeBase p) {
  // sum_{j>=0} P(v(a_1) = j) P(v(a_0) >= j) = sum_j (1 - 1/p) p^-2j, a geometric series.
  const Rational first = 1 - Rational(1, p.value());
  const Rational ratio = Rational(1, BigInt(p.value()) * p.value());
  return first / (1 - ratio);
}

namespace {

template <class Arith>
CensusResult census_in(const ExtensionRing<Arith>& R, const std::vector<PadicDigits>& F, std::uint64_t budget) {
  using Word = typename Arith::word_type;
  const Arith& ar = R.arith();
  const int k = ar.precision(), e = R.ramification(), f = R.inertia(), dim = R.dimension(), N = R.pi_precision();
  BigInt total = ipow(ar.to_big(ar.modulus()), static_cast<unsigned>(dim));
  if (total > BigInt(budget)) throw BudgetExceeded("|O_K/pi^N| exceeds the census budget");
  std::vector<Word> Fw, dF;
  for (const auto& c : F) {
    if (c.known_digits() < k) throw ArithmeticError("coefficient precision below census precision");
    Fw.push_back(ar.from_big(c.value()));
  }
  for (std::size_t i = 1; i < Fw.size(); ++i) dF.push_back(ar.mul(ar.from_int(static_cast<long long>(i)), Fw[i]));

  const std::uint64_t count = static_cast<std::uint64_t>(total);
  const BigInt m = ar.to_big(ar.modulus());
  CensusResult res;
  res.decisive = true;
  res.enumerated = count;
  std::set<std::pair<int, std::vector<BigInt>>> classes;
  typename ExtensionRing<Arith>::Element x;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    BigInt rest = idx;
    for (int c = 0; c < dim; ++c) {
      x.c[c] = ar.from_big(rest % m);
      rest /= m;
    }
    if (R.pi_val(R.eval_poly(Fw, x)) < N) continue;
    const int s = R.pi_val(R.eval_poly(dF, x));
    if (2 * s >= N) {
      res.decisive = false;
      continue;
    }
    // Reduce x mod pi^(N-s): block i keeps ceil((M - i)/e) p-adic digits.
    const int M = N - s;
    std::vector<BigInt> key;
    for (int i = 0; i < e; ++i) {
      const int keep = M - i > 0 ? (M - i + e - 1) / e : 0;
      const BigInt mod = ipow(BigInt(ar.base().value()), static_cast<unsigned>(keep));
      for (int t = 0; t < f; ++t) key.push_back(ar.to_big(x.c[i * f + t]) % mod);
    }
    classes.emplace(s, std::move(key));
  }
  res.count = static_cast<int>(classes.size());
  return res;
}

}  // namespace

CensusResult residue_root_census(const std::vector<PadicDigits>& F, const RingDescriptor& R, int k,
                                 std::uint64_t budget) {
  if (F.empty()) throw std::invalid_argument("empty polynomial");
  AnyRing ring = make_ring(R, k);
  return std::visit([&](const auto& r) { return census_in(r, F, budget); }, ring);
}

}  // namespace padix
