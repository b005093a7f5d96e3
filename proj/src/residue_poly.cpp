#include "padix/residue_poly.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace padix {

namespace {

inline std::uint32_t addp(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  std::uint64_t s = std::uint64_t(a) + b;
  return static_cast<std::uint32_t>(s >= p ? s - p : s);
}
inline std::uint32_t subp(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : static_cast<std::uint32_t>(std::uint64_t(a) + p - b);
}
inline std::uint32_t mulp(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(std::uint64_t(a) * b % p);
}

std::vector<int> prime_divisors(int n) {
  std::vector<int> out;
  for (int q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

struct SplitMix {
  std::uint64_t s;
  std::uint64_t next() {
    std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

std::uint64_t hash_poly(const FqPoly& g) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& e : g.c) {
    for (std::uint32_t v : e.c) {
      h ^= v;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

}  // namespace

// ---------------------------------------------------------------- FqField

FqField::FqField(PrimeBase p, int f) : p_(p), f_(f) {
  if (f < 1 || f > kMaxResidueDegree) throw std::invalid_argument("residue degree out of range");
  mod_ = canonical_irreducible(p, f);
  init_frobenius();
}

FqField::FqField(PrimeBase p, std::vector<std::uint32_t> modulus) : p_(p), mod_(std::move(modulus)) {
  f_ = static_cast<int>(mod_.size()) - 1;
  if (f_ < 1 || f_ > kMaxResidueDegree) throw std::invalid_argument("residue degree out of range");
  if (mod_.back() != 1) throw std::invalid_argument("modulus must be monic");
  for (auto& v : mod_) v %= p.value();
  if (f_ > 1) {
    FqField prime(p, std::vector<std::uint32_t>{0, 1});
    FqPoly g;
    for (auto v : mod_) g.c.push_back(prime.from_int(v));
    if (!is_irreducible(prime, g)) throw std::invalid_argument("modulus is not irreducible");
  }
  init_frobenius();
}

void FqField::init_frobenius() {
  frob_.assign(f_, FqElement{});
  if (f_ == 1) {
    frob_[0] = one();
    return;
  }
  FqElement tp = pow(gen(), BigInt(p_.value()));
  FqElement acc = one();
  for (int j = 0; j < f_; ++j) {
    frob_[j] = acc;
    acc = mul(acc, tp);
  }
}

BigInt FqField::order() const { return ipow(BigInt(p_.value()), static_cast<unsigned>(f_)); }

std::uint64_t FqField::order_u64() const {
  BigInt q = order();
  if (q > BigInt(~std::uint64_t{0})) throw std::overflow_error("field order exceeds 64 bits");
  return static_cast<std::uint64_t>(q);
}

FqElement FqField::from_int(long long v) const {
  FqElement r;
  long long m = v % static_cast<long long>(p_.value());
  if (m < 0) m += p_.value();
  r.c[0] = static_cast<std::uint32_t>(m);
  return r;
}

FqElement FqField::from_coords(std::span<const std::uint32_t> coords) const {
  if (static_cast<int>(coords.size()) > f_) throw std::invalid_argument("too many coordinates");
  FqElement r;
  for (std::size_t i = 0; i < coords.size(); ++i) r.c[i] = coords[i] % p_.value();
  return r;
}

FqElement FqField::gen() const {
  FqElement r;
  if (f_ == 1) {
    r.c[0] = subp(0, mod_[0], p_.value());
  } else {
    r.c[1] = 1;
  }
  return r;
}

FqElement FqField::add(const FqElement& a, const FqElement& b) const {
  FqElement r;
  const std::uint32_t p = p_.value();
  for (int i = 0; i < f_; ++i) r.c[i] = addp(a.c[i], b.c[i], p);
  return r;
}

FqElement FqField::sub(const FqElement& a, const FqElement& b) const {
  FqElement r;
  const std::uint32_t p = p_.value();
  for (int i = 0; i < f_; ++i) r.c[i] = subp(a.c[i], b.c[i], p);
  return r;
}

FqElement FqField::neg(const FqElement& a) const { return sub(FqElement{}, a); }

FqElement FqField::mul(const FqElement& a, const FqElement& b) const {
  const std::uint32_t p = p_.value();
  FqElement r;
  if (f_ == 1) {
    r.c[0] = mulp(a.c[0], b.c[0], p);
    return r;
  }
  std::uint64_t t[2 * kMaxResidueDegree] = {};
  for (int i = 0; i < f_; ++i) {
    if (!a.c[i]) continue;
    for (int j = 0; j < f_; ++j) t[i + j] = (t[i + j] + std::uint64_t(a.c[i]) * b.c[j]) % p;
  }
  for (int i = 2 * f_ - 2; i >= f_; --i) {
    std::uint64_t top = t[i];
    if (!top) continue;
    for (int j = 0; j < f_; ++j) {
      // t[i-f+j] -= top * mod_[j]
      t[i - f_ + j] = (t[i - f_ + j] + (p - top) * mod_[j]) % p;
    }
  }
  for (int i = 0; i < f_; ++i) r.c[i] = static_cast<std::uint32_t>(t[i]);
  return r;
}

FqElement FqField::pow(FqElement a, const BigInt& e) const {
  FqElement r = one();
  if (e < 0) throw std::invalid_argument("negative exponent");
  BigInt x = e;
  while (x > 0) {
    if (static_cast<unsigned>(x & 1)) r = mul(r, a);
    x >>= 1;
    if (x > 0) a = mul(a, a);
  }
  return r;
}

FqElement FqField::inv(const FqElement& a) const {
  if (is_zero(a)) throw ArithmeticError("inverse of zero in residue field");
  return pow(a, order() - 2);
}

FqElement FqField::frobenius(const FqElement& a) const {
  if (f_ == 1) return a;
  FqElement r;
  const std::uint32_t p = p_.value();
  for (int j = 0; j < f_; ++j) {
    if (!a.c[j]) continue;
    for (int i = 0; i < f_; ++i) r.c[i] = addp(r.c[i], mulp(a.c[j], frob_[j].c[i], p), p);
  }
  return r;
}

FqElement FqField::frobenius_inverse(const FqElement& a) const {
  FqElement r = a;
  for (int i = 1; i < f_; ++i) r = frobenius(r);
  return r;
}

bool FqField::in_prime_field(const FqElement& a) const {
  for (int i = 1; i < f_; ++i)
    if (a.c[i]) return false;
  return true;
}

FqElement FqField::element_at(std::uint64_t index) const {
  FqElement r;
  for (int i = 0; i < f_; ++i) {
    r.c[i] = static_cast<std::uint32_t>(index % p_.value());
    index /= p_.value();
  }
  return r;
}

std::uint64_t FqField::index_of(const FqElement& a) const {
  std::uint64_t idx = 0;
  for (int i = f_ - 1; i >= 0; --i) idx = idx * p_.value() + a.c[i];
  return idx;
}

std::string FqField::format(const FqElement& a) const {
  if (f_ == 1) return std::to_string(a.c[0]);
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < f_; ++i) os << (i ? "," : "") << a.c[i];
  os << ")";
  return os.str();
}

std::shared_ptr<const FqField> field_for(PrimeBase p, int f) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, int>, std::shared_ptr<const FqField>> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(p.value(), f);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto fld = std::make_shared<const FqField>(p, f);
  cache.emplace(key, fld);
  return fld;
}

// ---------------------------------------------------------------- FqPoly

namespace poly {

void trim(FqPoly& g) {
  while (!g.c.empty() && g.c.back() == FqElement{}) g.c.pop_back();
}

FqPoly from_ints(const FqField& F, const std::vector<long long>& coeffs) {
  FqPoly g;
  for (long long v : coeffs) g.c.push_back(F.from_int(v));
  trim(g);
  return g;
}

FqPoly from_elements(std::vector<FqElement> coeffs) {
  FqPoly g{std::move(coeffs)};
  trim(g);
  return g;
}

FqPoly constant(const FqElement& a) { return from_elements({a}); }

FqPoly x(const FqField& F) { return from_elements({F.zero(), F.one()}); }

FqPoly monomial(const FqField& F, int degree) {
  FqPoly g;
  g.c.assign(degree + 1, F.zero());
  g.c[degree] = F.one();
  return g;
}

FqPoly add(const FqField& F, const FqPoly& a, const FqPoly& b) {
  FqPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()));
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    FqElement x = i < a.c.size() ? a.c[i] : FqElement{};
    FqElement y = i < b.c.size() ? b.c[i] : FqElement{};
    r.c[i] = F.add(x, y);
  }
  trim(r);
  return r;
}

FqPoly sub(const FqField& F, const FqPoly& a, const FqPoly& b) {
  FqPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()));
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    FqElement x = i < a.c.size() ? a.c[i] : FqElement{};
    FqElement y = i < b.c.size() ? b.c[i] : FqElement{};
    r.c[i] = F.sub(x, y);
  }
  trim(r);
  return r;
}

FqPoly mul(const FqField& F, const FqPoly& a, const FqPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  FqPoly r;
  r.c.assign(a.c.size() + b.c.size() - 1, FqElement{});
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (F.is_zero(a.c[i])) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
  }
  trim(r);
  return r;
}

FqPoly scale(const FqField& F, const FqPoly& a, const FqElement& s) {
  FqPoly r = a;
  for (auto& e : r.c) e = F.mul(e, s);
  trim(r);
  return r;
}

void divmod(const FqField& F, const FqPoly& a, const FqPoly& b, FqPoly& q, FqPoly& r) {
  if (b.is_zero()) throw ArithmeticError("polynomial division by zero");
  r = a;
  q.c.clear();
  const int db = b.degree();
  if (r.degree() < db) return;
  q.c.assign(r.degree() - db + 1, FqElement{});
  const FqElement lead_inv = F.inv(b.c.back());
  const bool unit_lead = (b.c.back() == F.one());
  for (int i = r.degree(); i >= db; --i) {
    if (F.is_zero(r.c[i])) continue;
    FqElement coef = unit_lead ? r.c[i] : F.mul(r.c[i], lead_inv);
    q.c[i - db] = coef;
    for (int j = 0; j <= db; ++j) r.c[i - db + j] = F.sub(r.c[i - db + j], F.mul(coef, b.c[j]));
  }
  r.c.resize(db);
  trim(r);
  trim(q);
}

FqPoly rem(const FqField& F, const FqPoly& a, const FqPoly& b) {
  FqPoly q, r;
  divmod(F, a, b, q, r);
  return r;
}

FqPoly quo(const FqField& F, const FqPoly& a, const FqPoly& b) {
  FqPoly q, r;
  divmod(F, a, b, q, r);
  return q;
}

FqPoly monic(const FqField& F, const FqPoly& a) {
  if (a.is_zero()) return a;
  if (a.c.back() == F.one()) return a;
  return scale(F, a, F.inv(a.c.back()));
}

FqPoly gcd(const FqField& F, FqPoly a, FqPoly b) {
  while (!b.is_zero()) {
    FqPoly r = rem(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, a);
}

FqPoly derivative(const FqField& F, const FqPoly& a) {
  FqPoly r;
  for (int i = 1; i <= a.degree(); ++i) r.c.push_back(F.mul(F.from_int(i), a.c[i]));
  trim(r);
  return r;
}

FqPoly powmod(const FqField& F, FqPoly base, const BigInt& e, const FqPoly& mod) {
  FqPoly r = rem(F, constant(F.one()), mod);
  base = rem(F, base, mod);
  BigInt x = e;
  while (x > 0) {
    if (static_cast<unsigned>(x & 1)) r = rem(F, mul(F, r, base), mod);
    x >>= 1;
    if (x > 0) base = rem(F, mul(F, base, base), mod);
  }
  return r;
}

FqElement eval(const FqField& F, const FqPoly& a, const FqElement& x) {
  FqElement acc{};
  for (int i = a.degree(); i >= 0; --i) acc = F.add(F.mul(acc, x), a.c[i]);
  return acc;
}

FqPoly frobenius_mod(const FqField& F, FqPoly h, int times, const FqPoly& g) {
  const BigInt p = F.base().value();
  for (int t = 0; t < times * F.degree(); ++t) h = powmod(F, h, p, g);
  return rem(F, h, g);
}

std::string format(const FqField& F, const FqPoly& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = a.degree(); i >= 0; --i) {
    if (F.is_zero(a.c[i])) continue;
    if (!first) os << " + ";
    first = false;
    bool unit = (a.c[i] == F.one());
    if (!unit || i == 0) os << F.format(a.c[i]);
    if (i > 0) os << (unit ? "" : "*") << "x";
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

}  // namespace poly

// ---------------------------------------------------------------- irreducibility

bool is_irreducible(const FqField& F, const FqPoly& g0) {
  const int n = g0.degree();
  if (n < 1) throw std::invalid_argument("is_irreducible needs degree >= 1");
  if (n == 1) return true;
  FqPoly g = poly::monic(F, g0);
  FqPoly xg = poly::rem(F, poly::x(F), g);
  for (int l : prime_divisors(n)) {
    FqPoly h = poly::frobenius_mod(F, xg, n / l, g);
    FqPoly d = poly::gcd(F, g, poly::sub(F, h, xg));
    if (d.degree() != 0) return false;
  }
  FqPoly h = poly::frobenius_mod(F, xg, n, g);
  return h == xg;
}

std::vector<std::uint32_t> canonical_irreducible(PrimeBase p, int f) {
  if (f < 1) throw std::invalid_argument("degree must be >= 1");
  if (f == 1) return {0, 1};
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, int>, std::vector<std::uint32_t>> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find({p.value(), f});
    if (it != cache.end()) return it->second;
  }
  FqField prime(p, std::vector<std::uint32_t>{0, 1});
  // Lex order low-to-high: a0 is the most significant key.
  std::vector<std::uint32_t> a(f, 0);
  std::vector<std::uint32_t> found;
  while (true) {
    if (a[0] != 0) {
      FqPoly g;
      for (int i = 0; i < f; ++i) g.c.push_back(prime.from_int(a[i]));
      g.c.push_back(prime.one());
      if (is_irreducible(prime, g)) {
        found = a;
        found.push_back(1);
        break;
      }
    }
    int i = f - 1;
    while (i >= 0 && ++a[i] == p.value()) a[i--] = 0;
    if (i < 0) throw std::logic_error("no irreducible polynomial found");
  }
  std::lock_guard lock(mu);
  cache.emplace(std::make_pair(p.value(), f), found);
  return found;
}

FqPoly canonical_irreducible_poly(PrimeBase p, int f) {
  auto F = field_for(p, 1);
  FqPoly g;
  for (auto v : canonical_irreducible(p, f)) g.c.push_back(F->from_int(v));
  return g;
}

// ---------------------------------------------------------------- factorization

namespace {

FqPoly pth_root(const FqField& F, const FqPoly& g) {
  const int p = static_cast<int>(F.base().value());
  FqPoly r;
  for (int i = 0; i <= g.degree(); i += p) r.c.push_back(F.frobenius_inverse(g.c[i]));
  poly::trim(r);
  return r;
}

FqElement random_element(const FqField& F, SplitMix& rng) {
  FqElement e;
  for (int i = 0; i < F.degree(); ++i) e.c[i] = static_cast<std::uint32_t>(rng.next() % F.base().value());
  return e;
}

void edf_rec(const FqField& F, const FqPoly& g, int d, SplitMix& rng, std::vector<FqPoly>& out) {
  const int n = g.degree();
  if (n <= d) {
    out.push_back(g);
    return;
  }
  const bool even = (F.base().value() == 2);
  BigInt half;
  if (!even) half = (ipow(F.order(), static_cast<unsigned>(d)) - 1) / 2;
  while (true) {
    FqPoly a;
    for (int i = 0; i < n; ++i) a.c.push_back(random_element(F, rng));
    poly::trim(a);
    if (a.degree() < 1) continue;
    FqPoly b;
    if (even) {
      FqPoly t = a, acc = a;
      const int steps = F.degree() * d;
      for (int i = 1; i < steps; ++i) {
        t = poly::rem(F, poly::mul(F, t, t), g);
        acc = poly::add(F, acc, t);
      }
      b = acc;
    } else {
      b = poly::sub(F, poly::powmod(F, a, half, g), poly::constant(F.one()));
    }
    FqPoly h = poly::gcd(F, g, b);
    if (h.degree() > 0 && h.degree() < n) {
      edf_rec(F, h, d, rng, out);
      edf_rec(F, poly::quo(F, g, h), d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<FqFactor> squarefree_decomposition(const FqField& F, const FqPoly& g0) {
  std::vector<FqFactor> out;
  FqPoly g = poly::monic(F, g0);
  if (g.degree() < 1) return out;
  FqPoly c = poly::gcd(F, g, poly::derivative(F, g));
  FqPoly w = poly::quo(F, g, c);
  int i = 1;
  while (w.degree() > 0) {
    FqPoly y = poly::gcd(F, w, c);
    FqPoly z = poly::quo(F, w, y);
    if (z.degree() > 0) out.push_back({z, i});
    ++i;
    w = y;
    c = poly::quo(F, c, y);
  }
  if (c.degree() > 0) {
    const int p = static_cast<int>(F.base().value());
    for (auto& [h, e] : squarefree_decomposition(F, pth_root(F, c))) out.push_back({h, e * p});
  }
  return out;
}

std::vector<FqFactor> distinct_degree_factor(const FqField& F, const FqPoly& g0, int max_degree) {
  std::vector<FqFactor> out;
  FqPoly rest = poly::monic(F, g0);
  FqPoly xp = poly::x(F);
  FqPoly h = rest.degree() > 1 ? poly::rem(F, xp, rest) : xp;
  int i = 1;
  for (; 2 * i <= rest.degree(); ++i) {
    if (i > max_degree) return out;
    h = poly::frobenius_mod(F, h, 1, rest);
    FqPoly gi = poly::gcd(F, rest, poly::sub(F, h, xp));
    if (gi.degree() > 0) {
      out.push_back({gi, i});
      rest = poly::quo(F, rest, gi);
      h = poly::rem(F, h, rest);
    }
  }
  if (rest.degree() > 0 && rest.degree() <= max_degree) out.push_back({rest, rest.degree()});
  return out;
}

std::vector<FqPoly> equal_degree_factor(const FqField& F, const FqPoly& g, int d) {
  std::vector<FqPoly> out;
  FqPoly m = poly::monic(F, g);
  if (m.degree() % d != 0) throw std::invalid_argument("degree not a multiple of d");
  SplitMix rng{hash_poly(m) ^ static_cast<std::uint64_t>(d)};
  edf_rec(F, m, d, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FqFactor> factor(const FqField& F, const FqPoly& g) {
  if (g.degree() < 1) throw std::invalid_argument("factor needs degree >= 1");
  std::vector<FqFactor> out;
  for (auto& [s, m] : squarefree_decomposition(F, g))
    for (auto& [gd, d] : distinct_degree_factor(F, s))
      for (auto& h : equal_degree_factor(F, gd, d)) out.push_back({h, m});
  std::sort(out.begin(), out.end(), [](const FqFactor& a, const FqFactor& b) { return a.poly < b.poly; });
  return out;
}

std::vector<FqRoot> roots_in_field(const FqField& F, const FqPoly& g0) {
  std::vector<FqRoot> out;
  if (g0.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
  FqPoly g = poly::monic(F, g0);
  if (g.degree() < 1) return out;
  FqPoly xp = poly::x(F);
  FqPoly s;
  if (g.degree() == 1) {
    s = g;
  } else {
    FqPoly h = poly::frobenius_mod(F, poly::rem(F, xp, g), 1, g);
    s = poly::gcd(F, g, poly::sub(F, h, xp));
  }
  if (s.degree() < 1) return out;
  for (const auto& lin : equal_degree_factor(F, s, 1)) {
    FqElement r = F.neg(lin.c[0]);
    int mult = 0;
    FqPoly cur = g;
    while (cur.degree() >= 1) {
      // synthetic division by (x - r)
      FqPoly q;
      q.c.assign(cur.degree(), FqElement{});
      FqElement acc{};
      for (int i = cur.degree(); i >= 1; --i) {
        acc = F.add(F.mul(acc, r), cur.c[i]);
        q.c[i - 1] = acc;
      }
      FqElement remainder = F.add(F.mul(acc, r), cur.c[0]);
      if (!F.is_zero(remainder)) break;
      ++mult;
      cur = std::move(q);
    }
    out.push_back({r, mult});
  }
  std::sort(out.begin(), out.end(), [&](const FqRoot& a, const FqRoot& b) { return F.index_of(a.root) < F.index_of(b.root); });
  return out;
}

std::vector<FqRoot> roots_in_subextension(PrimeBase p, const FqPoly& g, int d) {
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  auto big = field_for(p, d);
  // F_p sits in every canonical field as coordinate 0.
  FqPoly h;
  for (const auto& e : g.c) h.c.push_back(big->from_int(e.c[0]));
  poly::trim(h);
  return roots_in_field(*big, h);
}

// ---------------------------------------------------------------- embeddings

FieldEmbedding::FieldEmbedding(std::shared_ptr<const FqField> small, std::shared_ptr<const FqField> big)
    : small_(std::move(small)), big_(std::move(big)) {
  if (small_->base() != big_->base() || big_->degree() % small_->degree() != 0)
    throw std::invalid_argument("no embedding between these fields");
  FqPoly T;
  for (auto v : small_->modulus()) T.c.push_back(big_->from_int(v));
  auto roots = roots_in_field(*big_, T);
  if (roots.empty()) throw std::logic_error("modulus has no root in the larger field");
  image_ = roots.front().root;
}

FqElement FieldEmbedding::operator()(const FqElement& a) const {
  FqElement acc{};
  for (int i = small_->degree() - 1; i >= 0; --i) acc = big_->add(big_->mul(acc, image_), big_->from_int(a.c[i]));
  return acc;
}

FqPoly FieldEmbedding::operator()(const FqPoly& g) const {
  FqPoly r;
  for (const auto& e : g.c) r.c.push_back((*this)(e));
  poly::trim(r);
  return r;
}

}  // namespace padix
