#pragma once

#include "padix/core_arith.hpp"
#include "padix/model.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

namespace padix {

using Rational = boost::multiprecision::cpp_rational;
using Decimal = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<120>>;

Decimal to_decimal(const Rational& r);
std::string format_decimal(const Decimal& d, int significant = 30);
std::string format_rational(const Rational& r);
// p^e for any integer e.
Rational rpow(long long p, int e);

int mobius(long long n);
int divisor_count(long long n);
std::vector<long long> divisors(long long n);

// G_r = sum_{d|r} mu(r/d) p^d, the number of generators of F_{p^r} over F_p.
BigInt generator_count(PrimeBase p, int r);

struct CertifiedDecimal {
  Decimal value;
  Decimal error_bound;  // |value - true value| <= error_bound
  int terms = 0;
};

// (p^-m; p^-1)_inf = prod_{j>=0} (1 - p^(-m-j)).
CertifiedDecimal q_pochhammer_tail(PrimeBase p, int m, int target_digits);
// sum_{m>=1} (1 - (p^-m; p^-1)_inf)
CertifiedDecimal matrix_degree_constant(PrimeBase p, int target_digits);
Rational poly_degree_constant(PrimeBase p);
Rational outside_un_bound(Model model, PrimeBase p);
Rational serre_mass(PrimeBase p, int e, int f);
Rational ramified_quadratic_poly_expectation(PrimeBase p, const Rational& disc_norm);
Rational poly_not_unramified_upper(PrimeBase p, int f, const Rational& disc_norm);
Rational orbital_ratio_bound(PrimeBase p, int d);
BigInt gaussian_binomial(int n, int r, PrimeBase p);
BigInt gl_order(PrimeBase p, int r);
Rational det_singular_prob_bound(PrimeBase p, int n, int r);

struct FormulaBand {
  Decimal lower, center, upper;
  std::optional<Rational> exact_lower, exact_center, exact_upper;
  std::string provenance;

  static FormulaBand exact(const Rational& lo, const Rational& c, const Rational& hi, std::string tag);
};

FormulaBand unramified_poly_band(PrimeBase p, int r, int n);
FormulaBand matrix_unramified_band(PrimeBase p, int r, int n);
FormulaBand matrix_fixed_extension_band(PrimeBase p, int e, int f, int disc_val);

}  // namespace padix
