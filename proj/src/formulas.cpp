#include "padix/formulas.hpp"

#include <stdexcept>

namespace padix {

namespace mp = boost::multiprecision;

Decimal to_decimal(const Rational& r) {
  return Decimal(mp::numerator(r).str()) / Decimal(mp::denominator(r).str());
}

std::string format_decimal(const Decimal& d, int significant) {
  return d.str(significant, std::ios_base::fmtflags(0));
}

std::string format_rational(const Rational& r) {
  if (mp::denominator(r) == 1) return mp::numerator(r).str();
  return mp::numerator(r).str() + "/" + mp::denominator(r).str();
}

Rational rpow(long long p, int e) {
  BigInt pe = ipow(BigInt(p), static_cast<unsigned>(e < 0 ? -e : e));
  return e >= 0 ? Rational(pe) : Rational(BigInt(1), pe);
}

int mobius(long long n) {
  if (n < 1) throw std::invalid_argument("mobius needs n >= 1");
  int mu = 1;
  for (long long q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    n /= q;
    if (n % q == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

std::vector<long long> divisors(long long n) {
  if (n < 1) throw std::invalid_argument("divisors needs n >= 1");
  std::vector<long long> lo, hi;
  for (long long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    lo.push_back(d);
    if (d != n / d) hi.push_back(n / d);
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

int divisor_count(long long n) { return static_cast<int>(divisors(n).size()); }

BigInt generator_count(PrimeBase p, int r) {
  if (r < 1) throw std::invalid_argument("r must be >= 1");
  BigInt g = 0;
  for (long long d : divisors(r)) g += mobius(r / d) * ipow(BigInt(p.value()), static_cast<unsigned>(d));
  return g;
}

namespace {

void check_digits(int target_digits) {
  if (target_digits < 1 || target_digits > 100) throw std::invalid_argument("target digits must be in [1, 100]");
}

const Decimal& rounding_slack() {
  static const Decimal s = Decimal("1e-110");
  return s;
}

}  // namespace

CertifiedDecimal q_pochhammer_tail(PrimeBase p, int m, int target_digits) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  check_digits(target_digits);
  const Decimal tol = mp::pow(Decimal(10), -target_digits);
  const Decimal pd = p.value();
  Decimal x = mp::pow(pd, -m);  // p^(-m-j)
  Decimal prod = 1;
  int K = 0;
  while (true) {
    prod *= (1 - x);
    Decimal tail = x / (pd - 1);  // sum_{i > m+K} p^-i
    if (tail < tol) break;
    x /= pd;
    ++K;
  }
  CertifiedDecimal out;
  out.value = prod;
  out.terms = K + 1;
  out.error_bound = x / (pd - 1) + out.terms * rounding_slack();
  return out;
}

CertifiedDecimal matrix_degree_constant(PrimeBase p, int target_digits) {
  check_digits(target_digits);
  const Decimal pd = p.value();
  const Decimal half_tol = mp::pow(Decimal(10), -target_digits) / 2;
  // sum_{m > M} (1 - Q(m)) <= p^(1-M)/(p-1)^2
  int M = 1;
  auto tail = [&](int M) { return mp::pow(pd, 1 - M) / ((pd - 1) * (pd - 1)); };
  while (tail(M) >= half_tol) ++M;
  CertifiedDecimal q = q_pochhammer_tail(p, M + 1, std::min(100, target_digits + 5));
  // Q(m) = (1 - p^-m) Q(m+1), walking down from m = M.
  Decimal Q = q.value, sum = 0;
  for (int m = M; m >= 1; --m) {
    Q *= 1 - mp::pow(pd, -m);
    sum += 1 - Q;
  }
  CertifiedDecimal out;
  out.value = sum;
  out.terms = M;
  out.error_bound = tail(M) + M * (q.error_bound + 2 * M * rounding_slack());
  return out;
}

Rational poly_degree_constant(PrimeBase p) { return Rational(1, p.value() - 1); }

Rational outside_un_bound(Model model, PrimeBase p) {
  const BigInt q = p.value();
  if (model == Model::Matrix) return Rational(q * (4 * q - 3), (q - 1) * (q - 1) * (q - 1));
  return Rational(4 * q - 3, (q - 1) * (q - 1));
}

Rational serre_mass(PrimeBase p, int e, int f) {
  if (e < 1 || f < 1) throw std::invalid_argument("e, f must be >= 1");
  return Rational(e) * rpow(p.value(), -(e - 1) * f);
}

Rational ramified_quadratic_poly_expectation(PrimeBase p, const Rational& disc_norm) {
  const BigInt q = p.value();
  const BigInt q2 = q * q;
  return disc_norm * Rational(q2 * (q2 + 1), q2 * q2 + q2 * q + q2 + q + 1);
}

Rational poly_not_unramified_upper(PrimeBase p, int f, const Rational& disc_norm) {
  return (1 + 4 * rpow(p.value(), -f)) * disc_norm;
}

Rational orbital_ratio_bound(PrimeBase p, int d) { return rpow(p.value(), -d) + 2 * rpow(p.value(), -2 * d); }

BigInt gaussian_binomial(int n, int r, PrimeBase p) {
  if (r < 0 || r > n) throw std::invalid_argument("need 0 <= r <= n");
  BigInt num = 1, den = 1;
  const BigInt q = p.value();
  for (int i = 0; i < r; ++i) {
    num *= ipow(q, static_cast<unsigned>(n - i)) - 1;
    den *= ipow(q, static_cast<unsigned>(i + 1)) - 1;
  }
  return num / den;
}

BigInt gl_order(PrimeBase p, int r) {
  if (r < 0) throw std::invalid_argument("r must be >= 0");
  BigInt out = 1;
  const BigInt q = p.value();
  const BigInt qr = ipow(q, static_cast<unsigned>(r));
  for (int i = 0; i < r; ++i) out *= qr - ipow(q, static_cast<unsigned>(i));
  return out;
}

Rational det_singular_prob_bound(PrimeBase p, int n, int r) {
  if (r < 1 || r > n) throw std::invalid_argument("need 1 <= r <= n");
  Rational prod = 1;
  for (int i = 0; i < r; ++i) prod *= 1 - rpow(p.value(), i - n);
  return prod / Rational(ipow(BigInt(p.value()), static_cast<unsigned>(r)) - 1);
}

FormulaBand FormulaBand::exact(const Rational& lo, const Rational& c, const Rational& hi, std::string tag) {
  FormulaBand b;
  b.exact_lower = lo;
  b.exact_center = c;
  b.exact_upper = hi;
  b.lower = to_decimal(lo);
  b.center = to_decimal(c);
  b.upper = to_decimal(hi);
  b.provenance = std::move(tag);
  return b;
}

FormulaBand unramified_poly_band(PrimeBase p, int r, int n) {
  if (r < 1 || r > n) throw std::invalid_argument("need 1 <= r <= n");
  const int ne = std::min(n, 2 * r - 1);
  const BigInt q = p.value();
  const BigInt top = ipow(q, static_cast<unsigned>(ne + 1));
  const BigInt pr = ipow(q, static_cast<unsigned>(r));
  Rational c = Rational(top - pr, top - 1) * Rational(generator_count(p, r), pr);
  Rational eps = Rational(1, pr);
  return FormulaBand::exact(c - eps, c, c + 4 * eps,
                            "poly new roots in unramified degree r: (p^(n+1)-p^r)/(p^(n+1)-1)*G_r/p^r, "
                            "band [-p^-r, +4p^-r], n capped at 2r-1");
}

FormulaBand matrix_unramified_band(PrimeBase p, int r, int n) {
  if (r < 1 || r > n) throw std::invalid_argument("need 1 <= r <= n");
  Rational prod = 1;
  for (int i = 0; i < r; ++i) prod *= 1 - rpow(p.value(), -n + i);
  const Rational scale = 1 / (1 - rpow(p.value(), -r));
  FormulaBand b;
  b.exact_upper = scale * prod;
  b.exact_center = prod;
  b.upper = to_decimal(*b.exact_upper);
  b.center = to_decimal(prod);
  // 1 - 1000 p^(-r/2); rational when r is even.
  Decimal lower;
  if (r % 2 == 0) {
    Rational lo = (1 - 1000 * rpow(p.value(), -r / 2)) * scale * prod;
    if (lo < 0) lo = 0;
    b.exact_lower = lo;
    lower = to_decimal(lo);
  } else {
    Decimal s = 1 - 1000 * mp::pow(Decimal(p.value()), Decimal(-r) / 2);
    lower = s * to_decimal(scale * prod);
    if (lower <= 0) {
      lower = 0;
      b.exact_lower = Rational(0);
    }
  }
  b.lower = lower;
  b.provenance =
      "matrix eigenvalues new in unramified degree r: upper prod_{i<r}(1-p^(i-n))/(1-p^-r), "
      "lower max(0, (1-1000p^(-r/2))/(1-p^-r) prod), center prod";
  return b;
}

FormulaBand matrix_fixed_extension_band(PrimeBase p, int e, int f, int disc_val) {
  if (e < 1 || f < 1 || disc_val < 0) throw std::invalid_argument("bad extension data");
  Rational S = 0;
  for (long long d : divisors(f)) S += mobius(f / d) * rpow(p.value(), static_cast<int>(d) - f);
  const Rational s = rpow(p.value(), -disc_val);
  const Rational pf = rpow(p.value(), -f);
  const Rational up = Rational(1 + divisor_count(f)) / (1 - pf) * pf;
  return FormulaBand::exact(s * (S - pf), s * S, s * (S + up),
                            "matrix limit for a fixed extension: p^-disc * sum_{d|f} mu(f/d) p^(d-f), "
                            "band (-p^-f, (1+tau(f))/(1-p^-f) p^-f) scaled by p^-disc");
}

}  // namespace padix
