#pragma once

#include <sstream>

namespace padix {

template <class Arith>
ExtensionRing<Arith>::ExtensionRing(const RingDescriptor& d, int k) : desc_(d), ar_(d.p, k) {
  f_ = d.f;
  e_ = d.e;
  dim_ = e_ * f_;
  if (dim_ > kMaxExtensionDegree) throw std::invalid_argument("extension degree above maximum");
  N_ = e_ * k;
  res_ = field_for(d.p, f_);
  for (auto v : res_->modulus()) T_.push_back(Word(v));
  if (e_ > 1) {
    if (static_cast<int>(d.eisenstein.size()) != e_ + 1) throw std::invalid_argument("Eisenstein degree mismatch");
    for (auto v : d.eisenstein) E_.push_back(ar_.from_int(v));
    // u = sum_{i<e} (E_i / p) pi^i is a unit; p / pi = -pi^(e-1) u^(-1).
    Element u{};
    const long long p = d.p.value();
    for (int i = 0; i < e_; ++i) u.c[i * f_] = ar_.from_int(d.eisenstein[i] / p);
    Element t = inverse(u);
    for (int i = 0; i < e_ - 1; ++i) t = mul_pi(t);
    p_over_pi_ = neg(t);
  } else {
    p_over_pi_ = one();
  }
}

template <class Arith>
auto ExtensionRing<Arith>::uniformizer() const -> Element {
  Element r;
  if (e_ == 1) {
    r.c[0] = ar_.p_word() % ar_.modulus();
  } else {
    r.c[f_] = ar_.one();
  }
  return r;
}

template <class Arith>
auto ExtensionRing<Arith>::from_coords(std::span<const long long> coords) const -> Element {
  if (static_cast<int>(coords.size()) > dim_) throw std::invalid_argument("too many coordinates");
  Element r;
  for (std::size_t i = 0; i < coords.size(); ++i) r.c[i] = ar_.from_int(coords[i]);
  return r;
}

template <class Arith>
void ExtensionRing<Arith>::block_mul(const Word* a, const Word* b, Word* out) const {
  if (f_ == 1) {
    out[0] = ar_.mul(a[0], b[0]);
    return;
  }
  Word t[2 * kMaxResidueDegree];
  for (int i = 0; i < 2 * f_ - 1; ++i) t[i] = Word(0);
  for (int i = 0; i < f_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < f_; ++j) t[i + j] = ar_.add(t[i + j], ar_.mul(a[i], b[j]));
  }
  for (int i = 2 * f_ - 2; i >= f_; --i) {
    if (t[i] == 0) continue;
    for (int j = 0; j < f_; ++j)
      if (T_[j] != 0) t[i - f_ + j] = ar_.sub(t[i - f_ + j], ar_.mul(t[i], T_[j]));
  }
  for (int i = 0; i < f_; ++i) out[i] = t[i];
}

template <class Arith>
auto ExtensionRing<Arith>::mul(const Element& a, const Element& b) const -> Element {
  Element r;
  if (e_ == 1) {
    block_mul(a.c.data(), b.c.data(), r.c.data());
    return r;
  }
  // D_l = sum_{i+j=l} A_i B_j, then fold pi^e = -sum E_i pi^i.
  std::array<Word, 2 * kMaxExtensionDegree> D{};
  for (auto& w : D) w = Word(0);
  Word tmp[kMaxResidueDegree];
  for (int i = 0; i < e_; ++i) {
    bool zero = true;
    for (int s = 0; s < f_; ++s)
      if (a.c[i * f_ + s] != 0) zero = false;
    if (zero) continue;
    for (int j = 0; j < e_; ++j) {
      block_mul(&a.c[i * f_], &b.c[j * f_], tmp);
      for (int s = 0; s < f_; ++s) D[(i + j) * f_ + s] = ar_.add(D[(i + j) * f_ + s], tmp[s]);
    }
  }
  for (int l = 2 * e_ - 2; l >= e_; --l) {
    for (int i = 0; i < e_; ++i) {
      if (E_[i] == 0) continue;
      for (int s = 0; s < f_; ++s)
        D[(l - e_ + i) * f_ + s] = ar_.sub(D[(l - e_ + i) * f_ + s], ar_.mul(E_[i], D[l * f_ + s]));
    }
  }
  for (int i = 0; i < dim_; ++i) r.c[i] = D[i];
  return r;
}

template <class Arith>
auto ExtensionRing<Arith>::mul_pi(const Element& a) const -> Element {
  if (e_ == 1) return scale(a, ar_.p_word() % ar_.modulus());
  Element r;
  for (int i = e_ - 1; i >= 1; --i)
    for (int s = 0; s < f_; ++s) r.c[i * f_ + s] = a.c[(i - 1) * f_ + s];
  for (int s = 0; s < f_; ++s) r.c[s] = Word(0);
  const int top = (e_ - 1) * f_;
  for (int i = 0; i < e_; ++i) {
    if (E_[i] == 0) continue;
    for (int s = 0; s < f_; ++s) r.c[i * f_ + s] = ar_.sub(r.c[i * f_ + s], ar_.mul(E_[i], a.c[top + s]));
  }
  return r;
}

template <class Arith>
auto ExtensionRing<Arith>::pow(Element a, unsigned e) const -> Element {
  Element r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

template <class Arith>
auto ExtensionRing<Arith>::inverse(const Element& u) const -> Element {
  FqElement r = residue(u);
  if (res_->is_zero(r)) throw ArithmeticError("not a unit");
  Element y = lift(res_->inv(r));
  const Element two = from_int(2);
  for (int prec = 1; prec < N_; prec *= 2) y = mul(y, sub(two, mul(u, y)));
  return y;
}

template <class Arith>
FqElement ExtensionRing<Arith>::residue(const Element& a) const {
  FqElement r;
  for (int s = 0; s < f_; ++s) r.c[s] = ar_.residue(a.c[s]);
  return r;
}

template <class Arith>
auto ExtensionRing<Arith>::lift(const FqElement& a) const -> Element {
  Element r;
  for (int s = 0; s < f_; ++s) r.c[s] = Word(a.c[s]);
  return r;
}

template <class Arith>
int ExtensionRing<Arith>::pi_val(const Element& a) const {
  const int k = ar_.precision();
  int best = N_;
  for (int i = 0; i < e_; ++i) {
    int vb = k;
    for (int s = 0; s < f_; ++s) {
      const Word& w = a.c[i * f_ + s];
      if (w != 0) vb = std::min(vb, ar_.valuation(w));
    }
    best = std::min(best, e_ * vb + i);
  }
  return std::min(best, N_);
}

template <class Arith>
ValuationVerdict ExtensionRing<Arith>::pi_valuation(const Element& a) const {
  int v = pi_val(a);
  return v >= N_ ? ValuationVerdict::at_least(N_) : ValuationVerdict::finite(v);
}

template <class Arith>
auto ExtensionRing<Arith>::div_pi(const Element& a, int m) const -> Element {
  if (m == 0) return a;
  if (pi_val(a) < m) throw ArithmeticError("element not divisible by pi^m");
  Element r = a;
  const int whole = m / e_;
  if (whole > 0)
    for (int i = 0; i < dim_; ++i) r.c[i] = ar_.div_p_pow(r.c[i], whole);
  for (int step = 0; step < m % e_; ++step) {
    // (B_0 + B_1 pi + ...)/pi = B_1 + ... + B_{e-1} pi^(e-2) + (B_0/p)(p/pi)
    Word b0[kMaxResidueDegree];
    for (int s = 0; s < f_; ++s) b0[s] = ar_.div_p_pow(r.c[s], 1);
    Element shifted;
    for (int i = 0; i + 1 < e_; ++i)
      for (int s = 0; s < f_; ++s) shifted.c[i * f_ + s] = r.c[(i + 1) * f_ + s];
    Word tmp[kMaxResidueDegree];
    for (int i = 0; i < e_; ++i) {
      block_mul(b0, &p_over_pi_.c[i * f_], tmp);
      for (int s = 0; s < f_; ++s) shifted.c[i * f_ + s] = ar_.add(shifted.c[i * f_ + s], tmp[s]);
    }
    r = shifted;
  }
  return r;
}

template <class Arith>
auto ExtensionRing<Arith>::eval_poly(std::span<const Word> F, const Element& x) const -> Element {
  Element acc{};
  for (std::size_t i = F.size(); i-- > 0;) acc = add_scalar(mul(acc, x), F[i]);
  return acc;
}

template <class Arith>
auto ExtensionRing<Arith>::eval(std::span<const Element> F, const Element& x) const -> Element {
  Element acc{};
  for (std::size_t i = F.size(); i-- > 0;) acc = add(mul(acc, x), F[i]);
  return acc;
}

template <class Arith>
void ExtensionRing<Arith>::taylor_shift(std::vector<Element>& F, const Element& a) const {
  const int n = static_cast<int>(F.size()) - 1;
  if (is_zero(a)) return;
  for (int i = 0; i < n; ++i)
    for (int j = n - 1; j >= i; --j) F[j] = add(F[j], mul(a, F[j + 1]));
}

template <class Arith>
std::string ExtensionRing<Arith>::format(const Element& a) const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < dim_; ++i) os << (i ? "," : "") << ar_.to_big(a.c[i]);
  os << "]";
  return os.str();
}

extern template class ExtensionRing<Mod64>;
extern template class ExtensionRing<Mod128>;
extern template class ExtensionRing<ModBig>;

}  // namespace padix
