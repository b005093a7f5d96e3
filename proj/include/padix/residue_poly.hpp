#pragma once

#include "padix/core_arith.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace padix {

inline constexpr int kMaxResidueDegree = 16;

// Coordinates over the power basis of the field modulus; unused tail is zero.
struct FqElement {
  std::array<std::uint32_t, kMaxResidueDegree> c{};
  friend bool operator==(const FqElement&, const FqElement&) = default;
  friend auto operator<=>(const FqElement&, const FqElement&) = default;
};

class FqField {
 public:
  // Canonical field: modulus is canonical_irreducible(p, f).
  FqField(PrimeBase p, int f);
  // Custom modulus (monic, low-to-high, length f+1); irreducibility is checked.
  FqField(PrimeBase p, std::vector<std::uint32_t> modulus);

  PrimeBase base() const { return p_; }
  int degree() const { return f_; }
  const std::vector<std::uint32_t>& modulus() const { return mod_; }
  BigInt order() const;
  std::uint64_t order_u64() const;

  FqElement zero() const { return {}; }
  FqElement one() const { return from_int(1); }
  FqElement from_int(long long v) const;
  FqElement from_coords(std::span<const std::uint32_t> coords) const;
  // The class of t in F_p[t]/(T).
  FqElement gen() const;

  FqElement add(const FqElement& a, const FqElement& b) const;
  FqElement sub(const FqElement& a, const FqElement& b) const;
  FqElement neg(const FqElement& a) const;
  FqElement mul(const FqElement& a, const FqElement& b) const;
  FqElement pow(FqElement a, const BigInt& e) const;
  FqElement inv(const FqElement& a) const;
  FqElement frobenius(const FqElement& a) const;  // a^p
  FqElement frobenius_inverse(const FqElement& a) const;  // a^(1/p)

  bool is_zero(const FqElement& a) const { return a == FqElement{}; }
  bool in_prime_field(const FqElement& a) const;

  // Elements indexed by their base-p coordinate digits (coordinate 0 least significant).
  FqElement element_at(std::uint64_t index) const;
  std::uint64_t index_of(const FqElement& a) const;

  std::string format(const FqElement& a) const;

  friend bool operator==(const FqField& a, const FqField& b) {
    return a.p_ == b.p_ && a.mod_ == b.mod_;
  }

 private:
  void init_frobenius();

  PrimeBase p_;
  int f_;
  std::vector<std::uint32_t> mod_;
  // Column j = coordinates of t^(j*p).
  std::vector<FqElement> frob_;
};

// Shared canonical field instance for (p, f).
std::shared_ptr<const FqField> field_for(PrimeBase p, int f);

// Dense polynomial over an FqField; coefficient i multiplies x^i. No trailing zeros.
struct FqPoly {
  std::vector<FqElement> c;
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  friend bool operator==(const FqPoly&, const FqPoly&) = default;
  friend auto operator<=>(const FqPoly& a, const FqPoly& b) {
    if (a.c.size() != b.c.size()) return a.c.size() <=> b.c.size();
    return a.c <=> b.c;
  }
};

struct FqFactor {
  FqPoly poly;
  int multiplicity;
  friend bool operator==(const FqFactor&, const FqFactor&) = default;
};

struct FqRoot {
  FqElement root;
  int multiplicity;
  friend bool operator==(const FqRoot&, const FqRoot&) = default;
};

namespace poly {

void trim(FqPoly& g);
FqPoly from_ints(const FqField& F, const std::vector<long long>& coeffs);
FqPoly from_elements(std::vector<FqElement> coeffs);
FqPoly constant(const FqElement& a);
FqPoly x(const FqField& F);
FqPoly monomial(const FqField& F, int degree);

FqPoly add(const FqField& F, const FqPoly& a, const FqPoly& b);
FqPoly sub(const FqField& F, const FqPoly& a, const FqPoly& b);
FqPoly mul(const FqField& F, const FqPoly& a, const FqPoly& b);
FqPoly scale(const FqField& F, const FqPoly& a, const FqElement& s);
void divmod(const FqField& F, const FqPoly& a, const FqPoly& b, FqPoly& q, FqPoly& r);
FqPoly rem(const FqField& F, const FqPoly& a, const FqPoly& b);
FqPoly quo(const FqField& F, const FqPoly& a, const FqPoly& b);
FqPoly monic(const FqField& F, const FqPoly& a);
FqPoly gcd(const FqField& F, FqPoly a, FqPoly b);
FqPoly derivative(const FqField& F, const FqPoly& a);
FqPoly powmod(const FqField& F, FqPoly base, const BigInt& e, const FqPoly& mod);
FqElement eval(const FqField& F, const FqPoly& a, const FqElement& x);
// h^(p^(f*times)) mod g, i.e. the q^times-power Frobenius of h in F_q[x]/(g).
FqPoly frobenius_mod(const FqField& F, FqPoly h, int times, const FqPoly& g);
std::string format(const FqField& F, const FqPoly& a);

}  // namespace poly

std::vector<std::uint32_t> canonical_irreducible(PrimeBase p, int f);
FqPoly canonical_irreducible_poly(PrimeBase p, int f);  // over field_for(p, 1)

bool is_irreducible(const FqField& F, const FqPoly& g);

std::vector<FqFactor> squarefree_decomposition(const FqField& F, const FqPoly& g);
// Squarefree monic g -> (product of irreducible factors of degree d, d); stops at max_degree.
std::vector<FqFactor> distinct_degree_factor(const FqField& F, const FqPoly& g, int max_degree = 1 << 30);
std::vector<FqPoly> equal_degree_factor(const FqField& F, const FqPoly& g, int d);
// Monic irreducible factors with exact multiplicities, sorted by (degree, coefficients).
std::vector<FqFactor> factor(const FqField& F, const FqPoly& g);

// Roots of g (coefficients already in F) lying in F, sorted, with multiplicities.
std::vector<FqRoot> roots_in_field(const FqField& F, const FqPoly& g);
// g over F_p (field_for(p,1)); roots in field_for(p,d).
std::vector<FqRoot> roots_in_subextension(PrimeBase p, const FqPoly& g, int d);

// Coefficients of a polynomial over a subfield pushed into a larger field by an embedding.
class FieldEmbedding {
 public:
  FieldEmbedding(std::shared_ptr<const FqField> small, std::shared_ptr<const FqField> big);
  FqElement operator()(const FqElement& a) const;
  FqPoly operator()(const FqPoly& g) const;
  const FqElement& image_of_gen() const { return image_; }

 private:
  std::shared_ptr<const FqField> small_, big_;
  FqElement image_;
};

}  // namespace padix
