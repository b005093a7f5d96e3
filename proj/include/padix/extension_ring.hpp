#pragma once

#include "padix/core_arith.hpp"
#include "padix/residue_poly.hpp"

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace padix {

inline constexpr int kMaxExtensionDegree = 16;

// O_K for K/Q_p with inertia degree f and ramification index e.
// Text form: "unram:f" or "eis:e:f:c0,c1,...,ce[:disc=v]" (integer coefficients, low-to-high).
struct RingDescriptor {
  PrimeBase p{2};
  int f = 1;
  int e = 1;
  std::vector<long long> eisenstein;  // empty iff e == 1
  int disc_val = 0;

  static RingDescriptor unramified(PrimeBase p, int f);
  static RingDescriptor eisenstein_over(PrimeBase p, int f, std::vector<long long> E,
                                        std::optional<int> disc_val = std::nullopt);
  static RingDescriptor parse(std::string_view text, PrimeBase p);

  int degree() const { return e * f; }
  bool is_unramified() const { return e == 1; }
  bool is_tame() const { return e % static_cast<int>(p.value()) != 0; }
  std::string text() const;

  friend bool operator==(const RingDescriptor&, const RingDescriptor&) = default;
};

// O_K / pi^N with N = e*k. Elements are e blocks of f coordinates over Z/p^k:
// x = sum_i B_i pi^i, B_i in the unramified layer Z/p^k[t]/(T~).
template <class Arith>
class ExtensionRing {
 public:
  using arith_type = Arith;
  using Word = typename Arith::word_type;
  struct Element {
    std::array<Word, kMaxExtensionDegree> c{};
    friend bool operator==(const Element&, const Element&) = default;
  };

  ExtensionRing(const RingDescriptor& d, int k);

  const RingDescriptor& descriptor() const { return desc_; }
  const Arith& arith() const { return ar_; }
  const FqField& residue_field() const { return *res_; }
  std::shared_ptr<const FqField> residue_field_ptr() const { return res_; }
  int base_precision() const { return ar_.precision(); }
  int pi_precision() const { return N_; }
  int ramification() const { return e_; }
  int inertia() const { return f_; }
  int dimension() const { return dim_; }

  Element zero() const { return Element{}; }
  Element one() const { return from_word(ar_.one()); }
  Element from_word(const Word& w) const {
    Element r;
    r.c[0] = w;
    return r;
  }
  Element from_int(long long v) const { return from_word(ar_.from_int(v)); }
  Element uniformizer() const;
  // Coordinates (e blocks of f), reduced mod p^k.
  Element from_coords(std::span<const long long> coords) const;

  Element add(const Element& a, const Element& b) const {
    Element r;
    for (int i = 0; i < dim_; ++i) r.c[i] = ar_.add(a.c[i], b.c[i]);
    return r;
  }
  Element sub(const Element& a, const Element& b) const {
    Element r;
    for (int i = 0; i < dim_; ++i) r.c[i] = ar_.sub(a.c[i], b.c[i]);
    return r;
  }
  Element neg(const Element& a) const {
    Element r;
    for (int i = 0; i < dim_; ++i) r.c[i] = ar_.neg(a.c[i]);
    return r;
  }
  Element scale(const Element& a, const Word& s) const {
    Element r;
    for (int i = 0; i < dim_; ++i) r.c[i] = ar_.mul(a.c[i], s);
    return r;
  }
  Element add_scalar(Element a, const Word& s) const {
    a.c[0] = ar_.add(a.c[0], s);
    return a;
  }
  Element mul(const Element& a, const Element& b) const;
  Element mul_pi(const Element& a) const;
  Element pow(Element a, unsigned e) const;
  Element inverse(const Element& unit) const;

  bool is_zero(const Element& a) const {
    for (int i = 0; i < dim_; ++i)
      if (a.c[i] != 0) return false;
    return true;
  }

  FqElement residue(const Element& a) const;
  Element lift(const FqElement& a) const;
  ValuationVerdict pi_valuation(const Element& a) const;
  // Raw min valuation, N when zero.
  int pi_val(const Element& a) const;
  // Exact division by pi^m; requires pi_val(a) >= m.
  Element div_pi(const Element& a, int m) const;

  Element eval_poly(std::span<const Word> F, const Element& x) const;
  Element eval(std::span<const Element> F, const Element& x) const;
  // Coefficients of F(a + x).
  void taylor_shift(std::vector<Element>& F, const Element& a) const;

  std::string format(const Element& a) const;

 private:
  void block_mul(const Word* a, const Word* b, Word* out) const;

  RingDescriptor desc_;
  Arith ar_;
  std::shared_ptr<const FqField> res_;
  int f_, e_, dim_, N_;
  std::vector<Word> T_;  // lifted residue modulus, f+1 coefficients
  std::vector<Word> E_;  // Eisenstein coefficients mod p^k, e+1 entries
  Element p_over_pi_;
};

using AnyRing = std::variant<ExtensionRing<Mod64>, ExtensionRing<Mod128>, ExtensionRing<ModBig>>;

AnyRing make_ring(const RingDescriptor& d, int k);
AnyRing make_unramified(PrimeBase p, int f, int k);
AnyRing make_eisenstein(const RingDescriptor& base, std::vector<long long> E, int k,
                        std::optional<int> disc_val = std::nullopt);

const RingDescriptor& descriptor_of(const AnyRing& r);

}  // namespace padix

#include "padix/detail/extension_ring_impl.hpp"
