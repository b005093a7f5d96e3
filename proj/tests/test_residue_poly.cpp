#include <doctest.h>

#include "padix/formulas.hpp"
#include "padix/residue_poly.hpp"

#include <random>
#include <set>

using namespace padix;

namespace {

FqPoly Fp_poly(std::uint32_t p, const std::vector<long long>& c) { return poly::from_ints(*field_for(PrimeBase(p), 1), c); }

// Irreducible over F_p iff no monic factor of degree <= deg/2 divides it (trial division by all monic polys).
bool brute_irreducible(std::uint32_t p, const std::vector<long long>& c) {
  const FqField& F = *field_for(PrimeBase(p), 1);
  const FqPoly g = poly::from_ints(F, c);
  const int n = g.degree();
  for (int d = 1; d <= n / 2; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<long long> h(d + 1, 0);
      std::uint64_t x = idx;
      for (int i = 0; i < d; ++i) {
        h[i] = static_cast<long long>(x % p);
        x /= p;
      }
      h[d] = 1;
      if (poly::rem(F, g, poly::from_ints(F, h)).is_zero()) return false;
    }
  }
  return n >= 1;
}

FqPoly expand(const FqField& F, const std::vector<FqFactor>& fs) {
  FqPoly r = poly::constant(F.one());
  for (const auto& f : fs)
    for (int i = 0; i < f.multiplicity; ++i) r = poly::mul(F, r, f.poly);
  return r;
}

}  // namespace

TEST_CASE("canonical_irreducible examples") {
  CHECK(canonical_irreducible(PrimeBase(2), 1) == std::vector<std::uint32_t>{0, 1});
  CHECK(canonical_irreducible(PrimeBase(2), 2) == std::vector<std::uint32_t>{1, 1, 1});
  CHECK(canonical_irreducible(PrimeBase(3), 2) == std::vector<std::uint32_t>{1, 0, 1});
}

TEST_CASE("canonical_irreducible is the lex-smallest irreducible (oracle: trial division)") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int f = 1; f <= (p == 2 ? 6 : 3); ++f) {
      auto c = canonical_irreducible(PrimeBase(p), f);
      std::vector<long long> cl(c.begin(), c.end());
      CHECK(brute_irreducible(p, cl));
      // every monic degree-f poly that is smaller (low-to-high lex) is reducible
      std::uint64_t count = 1;
      for (int i = 0; i < f; ++i) count *= p;
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<long long> h(f + 1, 0);
        std::uint64_t x = idx;
        for (int i = 0; i < f; ++i) {
          h[i] = static_cast<long long>(x % p);
          x /= p;
        }
        h[f] = 1;
        if (h == cl) break;
        if (std::lexicographical_compare(h.begin(), h.end(), cl.begin(), cl.end())) CHECK_FALSE(brute_irreducible(p, h));
      }
    }
  }
}

TEST_CASE("is_irreducible examples and brute-force agreement") {
  const FqField& F3 = *field_for(PrimeBase(3), 1);
  CHECK(is_irreducible(F3, Fp_poly(3, {1, 0, 1})));
  CHECK_FALSE(is_irreducible(F3, Fp_poly(3, {-1, 0, 1})));
  CHECK(is_irreducible(*field_for(PrimeBase(2), 1), Fp_poly(2, {0, 1})));
  std::mt19937 rng(3);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int t = 0; t < 150; ++t) {
      const int n = 1 + static_cast<int>(rng() % 6);
      std::vector<long long> c(n + 1);
      for (auto& v : c) v = rng() % p;
      c[n] = 1;
      CHECK(is_irreducible(*field_for(PrimeBase(p), 1), Fp_poly(p, c)) == brute_irreducible(p, c));
    }
  }
}

TEST_CASE("factor examples") {
  const FqField& F3 = *field_for(PrimeBase(3), 1);
  auto fs = factor(F3, Fp_poly(3, {0, -1, 0, 1}));
  REQUIRE(fs.size() == 3);
  std::set<std::vector<long long>> got;
  for (const auto& f : fs) {
    CHECK(f.multiplicity == 1);
    got.insert({static_cast<long long>(f.poly.c[0].c[0]), static_cast<long long>(f.poly.c[1].c[0])});
  }
  CHECK(got == std::set<std::vector<long long>>{{0, 1}, {1, 1}, {2, 1}});

  const FqField& F2 = *field_for(PrimeBase(2), 1);
  auto g = factor(F2, Fp_poly(2, {1, 1, 1}));
  REQUIRE(g.size() == 1);
  CHECK(g[0].multiplicity == 1);
  CHECK(g[0].poly == Fp_poly(2, {1, 1, 1}));

  auto h = factor(F2, Fp_poly(2, {1, 0, 1, 0, 1}));
  REQUIRE(h.size() == 1);
  CHECK(h[0].poly == Fp_poly(2, {1, 1, 1}));
  CHECK(h[0].multiplicity == 2);
  // oracle: expanding (x^2+x+1)^2 over F_2
  CHECK(poly::mul(F2, Fp_poly(2, {1, 1, 1}), Fp_poly(2, {1, 1, 1})) == Fp_poly(2, {1, 0, 1, 0, 1}));
}

TEST_CASE("property: factor reconstructs and is multiplicative, over prime and extension fields") {
  std::mt19937 rng(17);
  for (auto [p, f] : std::vector<std::pair<std::uint32_t, int>>{{2, 1}, {3, 1}, {5, 1}, {2, 3}, {3, 2}, {7, 1}}) {
    auto F = field_for(PrimeBase(p), f);
    const std::uint64_t q = F->order_u64();
    auto rnd = [&](int n) {
      FqPoly g;
      for (int i = 0; i < n; ++i) g.c.push_back(F->element_at(rng() % q));
      g.c.push_back(F->one());
      return g;
    };
    for (int t = 0; t < 40; ++t) {
      FqPoly a = rnd(1 + rng() % 5), b = rnd(1 + rng() % 5);
      auto fa = factor(*F, a), fb = factor(*F, b), fab = factor(*F, poly::mul(*F, a, b));
      CHECK(expand(*F, fa) == a);
      for (const auto& x : fab) CHECK(is_irreducible(*F, x.poly));
      std::map<std::vector<std::uint64_t>, int> u, w;
      auto key = [&](const FqPoly& g) {
        std::vector<std::uint64_t> k;
        for (const auto& c : g.c) k.push_back(F->index_of(c));
        return k;
      };
      for (const auto& x : fa) u[key(x.poly)] += x.multiplicity;
      for (const auto& x : fb) u[key(x.poly)] += x.multiplicity;
      for (const auto& x : fab) w[key(x.poly)] += x.multiplicity;
      CHECK(u == w);
    }
  }
}

TEST_CASE("roots_in_subextension examples") {
  auto r2 = roots_in_subextension(PrimeBase(3), Fp_poly(3, {1, 0, 1}), 2);
  REQUIRE(r2.size() == 2);
  CHECK(r2[0].multiplicity == 1);
  CHECK(r2[1].multiplicity == 1);
  CHECK(roots_in_subextension(PrimeBase(3), Fp_poly(3, {1, 0, 1}), 1).empty());
  for (std::uint32_t p : {2u, 3u, 7u}) {
    auto r = roots_in_subextension(PrimeBase(p), Fp_poly(p, {1, -2, 1}), 1);
    REQUIRE(r.size() == 1);
    CHECK(r[0].root == field_for(PrimeBase(p), 1)->one());
    CHECK(r[0].multiplicity == 2);
  }
}

TEST_CASE("property: roots agree with evaluation at every element (oracle: exhaustive)") {
  std::mt19937 rng(23);
  for (auto [p, d] : std::vector<std::pair<std::uint32_t, int>>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 2}}) {
    auto K = field_for(PrimeBase(p), d);
    FieldEmbedding emb(field_for(PrimeBase(p), 1), K);
    for (int t = 0; t < 25; ++t) {
      const int n = 1 + static_cast<int>(rng() % 6);
      std::vector<long long> c(n + 1);
      for (auto& v : c) v = rng() % p;
      c[n] = 1;
      const FqPoly g = Fp_poly(p, c), gK = emb(g);
      auto roots = roots_in_subextension(PrimeBase(p), g, d);
      std::set<std::uint64_t> expect;
      for (std::uint64_t i = 0; i < K->order_u64(); ++i)
        if (K->is_zero(poly::eval(*K, gK, K->element_at(i)))) expect.insert(i);
      std::set<std::uint64_t> got;
      int total = 0;
      for (const auto& r : roots) {
        got.insert(K->index_of(r.root));
        total += r.multiplicity;
        // multiplicity: (x - r)^m divides, (x - r)^(m+1) does not
        FqPoly lin = poly::from_elements({K->neg(r.root), K->one()}), pw = poly::constant(K->one());
        for (int i = 0; i < r.multiplicity; ++i) pw = poly::mul(*K, pw, lin);
        CHECK(poly::rem(*K, gK, pw).is_zero());
        CHECK_FALSE(poly::rem(*K, gK, poly::mul(*K, pw, lin)).is_zero());
      }
      CHECK(got == expect);
      CHECK(total <= n);
    }
  }
}

TEST_CASE("property: subextension inclusion under the canonical embedding") {
  std::mt19937 rng(29);
  for (auto [p, d, m] : std::vector<std::tuple<std::uint32_t, int, int>>{{2, 1, 2}, {2, 2, 2}, {2, 1, 3}, {3, 1, 2}, {2, 2, 3}, {3, 2, 2}}) {
    FieldEmbedding emb(field_for(PrimeBase(p), d), field_for(PrimeBase(p), d * m));
    auto big = field_for(PrimeBase(p), d * m);
    for (int t = 0; t < 20; ++t) {
      const int n = 2 + static_cast<int>(rng() % 7);
      std::vector<long long> c(n + 1);
      for (auto& v : c) v = rng() % p;
      c[n] = 1;
      auto small_roots = roots_in_subextension(PrimeBase(p), Fp_poly(p, c), d);
      auto big_roots = roots_in_subextension(PrimeBase(p), Fp_poly(p, c), d * m);
      for (const auto& r : small_roots) {
        bool found = false;
        for (const auto& s : big_roots) found = found || (s.root == emb(r.root) && s.multiplicity == r.multiplicity);
        CHECK(found);
      }
    }
    // the embedding is a ring homomorphism
    auto small = field_for(PrimeBase(p), d);
    for (std::uint64_t i = 0; i < small->order_u64(); ++i)
      for (std::uint64_t j = 0; j < small->order_u64(); ++j) {
        auto a = small->element_at(i), b = small->element_at(j);
        CHECK(emb(small->mul(a, b)) == big->mul(emb(a), emb(b)));
        CHECK(emb(small->add(a, b)) == big->add(emb(a), emb(b)));
      }
  }
}

TEST_CASE("property: new simple roots weighted by degree never exceed the degree") {
  std::mt19937 rng(31);
  for (std::uint32_t p : {2u, 3u}) {
    for (int t = 0; t < 40; ++t) {
      const int n = 1 + static_cast<int>(rng() % 8);
      std::vector<long long> c(n + 1);
      for (auto& v : c) v = rng() % p;
      c[n] = 1;
      const FqPoly g = Fp_poly(p, c);
      std::vector<int> simple(n + 1, 0);
      for (int d = 1; d <= n; ++d)
        for (const auto& r : roots_in_subextension(PrimeBase(p), g, d))
          if (r.multiplicity == 1) ++simple[d];
      long long total = 0;
      for (int d = 1; d <= n; ++d) {
        long long fresh = 0;
        for (long long e : divisors(d)) fresh += mobius(d / e) * simple[e];
        CHECK(fresh % d == 0);
        total += fresh;
      }
      CHECK(total <= n);
    }
  }
}

TEST_CASE("generator counts by Frobenius orbits match the Mobius sum") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int r = 1; r <= 8; ++r) {
      auto F = field_for(PrimeBase(p), r);
      if (F->order() > BigInt(1) << 16) break;
      std::uint64_t gens = 0;
      for (std::uint64_t i = 0; i < F->order_u64(); ++i) {
        const auto a = F->element_at(i);
        // a generates iff it is a root of no x^(p^d) - x for proper divisors d
        bool proper = false;
        for (long long d : divisors(r)) {
          if (d == r) continue;
          auto b = a;
          for (int j = 0; j < d; ++j) b = F->frobenius(b);
          proper = proper || b == a;
        }
        gens += proper ? 0 : 1;
      }
      CHECK(BigInt(gens) == generator_count(PrimeBase(p), r));
    }
  }
}

TEST_CASE("field arithmetic basics") {
  auto F = field_for(PrimeBase(3), 2);
  for (std::uint64_t i = 1; i < 9; ++i) {
    auto a = F->element_at(i);
    CHECK(F->mul(a, F->inv(a)) == F->one());
    CHECK(F->frobenius(a) == F->pow(a, 3));
    CHECK(F->frobenius_inverse(F->frobenius(a)) == a);
  }
  CHECK_THROWS(FqField(PrimeBase(3), std::vector<std::uint32_t>{2, 0, 1}));
}
