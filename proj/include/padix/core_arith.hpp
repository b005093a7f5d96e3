#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace padix {

using BigInt = boost::multiprecision::cpp_int;
using u128 = unsigned __int128;

class ArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

bool is_prime_u64(std::uint64_t n);
BigInt ipow(const BigInt& base, unsigned e);

// A prime 2 <= p < 2^31, checked at construction.
class PrimeBase {
 public:
  explicit PrimeBase(std::uint64_t p);
  std::uint32_t value() const { return p_; }
  operator std::uint32_t() const { return p_; }
  friend bool operator==(PrimeBase, PrimeBase) = default;

 private:
  std::uint32_t p_;
};

struct ValuationVerdict {
  enum class Kind { Finite, AtLeast };
  Kind kind;
  int value;

  static ValuationVerdict finite(int v) { return {Kind::Finite, v}; }
  static ValuationVerdict at_least(int k) { return {Kind::AtLeast, k}; }
  bool is_finite() const { return kind == Kind::Finite; }
  friend bool operator==(const ValuationVerdict&, const ValuationVerdict&) = default;
};

std::string to_string(const ValuationVerdict& v);

// Element of Z/p^k. The stored value is always reduced into [0, p^k).
class PadicDigits {
 public:
  PadicDigits(PrimeBase p, int known_digits, const BigInt& value);
  static PadicDigits from_int(PrimeBase p, int known_digits, long long v);

  const BigInt& value() const { return value_; }
  int known_digits() const { return k_; }
  PrimeBase base() const { return p_; }
  BigInt modulus() const { return ipow(BigInt(p_.value()), static_cast<unsigned>(k_)); }

  // Digit t (0-based) of the base-p expansion.
  std::uint32_t digit(int t) const;
  PadicDigits truncated(int k) const;
  bool is_zero() const { return value_ == 0; }

  friend bool operator==(const PadicDigits&, const PadicDigits&) = default;

 private:
  PrimeBase p_;
  int k_;
  BigInt value_;
};

PadicDigits add(const PadicDigits& a, const PadicDigits& b);
PadicDigits sub(const PadicDigits& a, const PadicDigits& b);
PadicDigits mul(const PadicDigits& a, const PadicDigits& b);
PadicDigits neg(const PadicDigits& a);
ValuationVerdict valuation(const PadicDigits& a);
PadicDigits exact_div_pow(const PadicDigits& a, int m);
PadicDigits unit_inverse(const PadicDigits& a);

inline PadicDigits operator+(const PadicDigits& a, const PadicDigits& b) { return add(a, b); }
inline PadicDigits operator-(const PadicDigits& a, const PadicDigits& b) { return sub(a, b); }
inline PadicDigits operator*(const PadicDigits& a, const PadicDigits& b) { return mul(a, b); }
inline PadicDigits operator-(const PadicDigits& a) { return neg(a); }

std::string to_string(const PadicDigits& a);

namespace detail {

inline std::uint64_t mulhi64(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<u128>(a) * b) >> 64);
}

inline BigInt to_big(std::uint64_t w) { return BigInt(w); }
inline BigInt to_big(u128 w) {
  BigInt r = static_cast<std::uint64_t>(w >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(w);
  return r;
}
inline BigInt to_big(const BigInt& w) { return w; }

template <class Word>
Word from_big(const BigInt& v) {
  if constexpr (std::is_same_v<Word, BigInt>) {
    return v;
  } else if constexpr (std::is_same_v<Word, u128>) {
    std::uint64_t lo = static_cast<std::uint64_t>(v & BigInt(~std::uint64_t{0}));
    std::uint64_t hi = static_cast<std::uint64_t>(v >> 64);
    return (static_cast<u128>(hi) << 64) | lo;
  } else {
    return static_cast<Word>(v);
  }
}

u128 mulmod128(u128 a, u128 b, u128 m);

}  // namespace detail

// Arithmetic context for Z/p^k over a machine or big word.
//   std::uint64_t : p^k < 2^63
//   u128          : p^k < 2^127
//   BigInt        : anything
template <class Word>
class ModArith {
 public:
  using word_type = Word;

  ModArith(PrimeBase p, int k) : p_(p), k_(k) {
    if (k < 1) throw std::invalid_argument("precision must be positive");
    if (!fits(p, k)) throw std::invalid_argument("p^k too large for word type");
    BigInt m = ipow(BigInt(p.value()), static_cast<unsigned>(k));
    m_ = detail::from_big<Word>(m);
    pw_ = Word(p.value());
    if constexpr (std::is_same_v<Word, std::uint64_t>) {
      pow2_ = (p.value() == 2);
      mask_ = m_ - 1;
    }
  }

  static bool fits(PrimeBase p, int k) {
    BigInt m = ipow(BigInt(p.value()), static_cast<unsigned>(k));
    if constexpr (std::is_same_v<Word, std::uint64_t>) {
      return m < (BigInt(1) << 63);
    } else if constexpr (std::is_same_v<Word, u128>) {
      return m < (BigInt(1) << 127);
    } else {
      return true;
    }
  }

  PrimeBase base() const { return p_; }
  int precision() const { return k_; }
  const Word& modulus() const { return m_; }
  Word zero() const { return Word(0); }
  Word one() const { return Word(1); }
  Word p_word() const { return pw_; }

  Word add(const Word& a, const Word& b) const {
    Word s = a + b;
    if (s >= m_) s -= m_;
    return s;
  }
  Word sub(const Word& a, const Word& b) const { return a >= b ? Word(a - b) : Word(a + (m_ - b)); }
  Word neg(const Word& a) const { return a == 0 ? Word(0) : Word(m_ - a); }

  Word mul(const Word& a, const Word& b) const {
    if constexpr (std::is_same_v<Word, std::uint64_t>) {
      if (pow2_) return (a * b) & mask_;
      return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % m_);
    } else if constexpr (std::is_same_v<Word, u128>) {
      return detail::mulmod128(a, b, m_);
    } else {
      return (a * b) % m_;
    }
  }

  Word from_int(long long v) const {
    if constexpr (std::is_same_v<Word, BigInt>) {
      BigInt r = BigInt(v) % m_;
      if (r < 0) r += m_;
      return r;
    } else {
      if (v >= 0) return static_cast<Word>(static_cast<Word>(static_cast<unsigned long long>(v)) % m_);
      Word a = static_cast<Word>(static_cast<unsigned long long>(-(v + 1)) + 1ULL) % m_;
      return neg(a);
    }
  }

  Word from_big(const BigInt& v) const {
    BigInt r = v % detail::to_big(m_);
    if (r < 0) r += detail::to_big(m_);
    return detail::from_big<Word>(r);
  }
  BigInt to_big(const Word& w) const { return detail::to_big(w); }

  std::uint32_t residue(const Word& a) const {
    return static_cast<std::uint32_t>(a % pw_);
  }

  // v_p(a), or k when a == 0.
  int valuation(Word a) const {
    if (a == 0) return k_;
    int v = 0;
    if constexpr (std::is_same_v<Word, std::uint64_t>) {
      if (pow2_) return __builtin_ctzll(a);
    }
    while (a % pw_ == 0) {
      a /= pw_;
      ++v;
    }
    return v;
  }

  // a / p^m for a divisible by p^m (as a representative in [0, p^k)).
  Word div_p_pow(Word a, int m) const {
    for (int i = 0; i < m; ++i) a /= pw_;
    return a;
  }

  Word mul_p_pow(const Word& a, int m) const {
    Word r = a;
    for (int i = 0; i < m; ++i) r = mul(r, pw_);
    return r;
  }

  Word pow(Word a, std::uint64_t e) const {
    Word r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  // Inverse of a unit: residue inverse by Fermat, then Newton lifting.
  Word inverse(const Word& a) const {
    std::uint32_t r = residue(a);
    if (r == 0) throw ArithmeticError("not a unit");
    std::uint64_t p = p_.value();
    std::uint64_t acc = 1, b = r, e = p - 2;
    while (e) {
      if (e & 1) acc = acc * b % p;
      b = b * b % p;
      e >>= 1;
    }
    Word y = Word(acc);
    Word two = from_int(2);
    for (int prec = 1; prec < k_; prec *= 2) y = mul(y, sub(two, mul(a, y)));
    return y;
  }

 private:
  PrimeBase p_;
  int k_;
  Word m_{};
  Word pw_{};
  bool pow2_ = false;
  Word mask_{};
};

using Mod64 = ModArith<std::uint64_t>;
using Mod128 = ModArith<u128>;
using ModBig = ModArith<BigInt>;

}  // namespace padix
