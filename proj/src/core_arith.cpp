#include "padix/core_arith.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace padix {

namespace {

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = static_cast<std::uint64_t>(static_cast<u128>(r) * a % m);
    a = static_cast<std::uint64_t>(static_cast<u128>(a) * a % m);
    e >>= 1;
  }
  return r;
}

void check_same_base(const PadicDigits& a, const PadicDigits& b) {
  if (a.base() != b.base()) throw std::invalid_argument("base mismatch");
}

}  // namespace

// Deterministic Miller-Rabin; these witnesses are exact for all 64-bit n.
bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = static_cast<std::uint64_t>(static_cast<u128>(x) * x % n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

BigInt ipow(const BigInt& base, unsigned e) { return boost::multiprecision::pow(base, e); }

PrimeBase::PrimeBase(std::uint64_t p) {
  if (p < 2 || p >= (1ULL << 31)) throw std::invalid_argument("prime out of range [2, 2^31)");
  if (!is_prime_u64(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
  p_ = static_cast<std::uint32_t>(p);
}

std::string to_string(const ValuationVerdict& v) {
  return (v.is_finite() ? "Finite(" : "AtLeast(") + std::to_string(v.value) + ")";
}

PadicDigits::PadicDigits(PrimeBase p, int known_digits, const BigInt& value) : p_(p), k_(known_digits) {
  if (known_digits < 1) throw std::invalid_argument("known_digits must be positive");
  BigInt m = modulus();
  value_ = value % m;
  if (value_ < 0) value_ += m;
}

PadicDigits PadicDigits::from_int(PrimeBase p, int known_digits, long long v) {
  return PadicDigits(p, known_digits, BigInt(v));
}

std::uint32_t PadicDigits::digit(int t) const {
  if (t < 0 || t >= k_) throw std::out_of_range("digit index");
  BigInt pt = ipow(BigInt(p_.value()), static_cast<unsigned>(t));
  return static_cast<std::uint32_t>((value_ / pt) % p_.value());
}

PadicDigits PadicDigits::truncated(int k) const {
  if (k > k_) throw ArithmeticError("cannot truncate to more digits than known");
  return PadicDigits(p_, k, value_);
}

PadicDigits add(const PadicDigits& a, const PadicDigits& b) {
  check_same_base(a, b);
  return PadicDigits(a.base(), std::min(a.known_digits(), b.known_digits()), a.value() + b.value());
}

PadicDigits sub(const PadicDigits& a, const PadicDigits& b) {
  check_same_base(a, b);
  return PadicDigits(a.base(), std::min(a.known_digits(), b.known_digits()), a.value() - b.value());
}

PadicDigits mul(const PadicDigits& a, const PadicDigits& b) {
  check_same_base(a, b);
  return PadicDigits(a.base(), std::min(a.known_digits(), b.known_digits()), a.value() * b.value());
}

PadicDigits neg(const PadicDigits& a) { return PadicDigits(a.base(), a.known_digits(), -a.value()); }

ValuationVerdict valuation(const PadicDigits& a) {
  if (a.value() == 0) return ValuationVerdict::at_least(a.known_digits());
  BigInt v = a.value();
  int n = 0;
  const std::uint32_t p = a.base().value();
  while (v % p == 0) {
    v /= p;
    ++n;
  }
  return ValuationVerdict::finite(n);
}

PadicDigits exact_div_pow(const PadicDigits& a, int m) {
  if (m < 0) throw std::invalid_argument("negative exponent");
  if (m >= a.known_digits()) throw ArithmeticError("precision exhausted");
  BigInt pm = ipow(BigInt(a.base().value()), static_cast<unsigned>(m));
  if (a.value() % pm != 0) throw ArithmeticError("not divisible by p^m");
  return PadicDigits(a.base(), a.known_digits() - m, a.value() / pm);
}

PadicDigits unit_inverse(const PadicDigits& a) {
  ModBig ring(a.base(), a.known_digits());
  return PadicDigits(a.base(), a.known_digits(), ring.inverse(a.value()));
}

std::string to_string(const PadicDigits& a) {
  return a.value().str() + " mod " + std::to_string(a.base().value()) + "^" + std::to_string(a.known_digits());
}

namespace detail {

u128 mulmod128(u128 a, u128 b, u128 m) {
  using boost::multiprecision::uint256_t;
  uint256_t prod = uint256_t(a) * uint256_t(b);
  return static_cast<u128>(prod % uint256_t(m));
}

}  // namespace detail

}  // namespace padix
