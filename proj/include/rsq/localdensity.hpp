#pragma once

// Local densities of ternary forms at good odd primes and the resulting
// closed form for r(p^2 n, gen f) / r(n, gen f).

#include <stdexcept>

#include "rsq/arith.hpp"
#include "rsq/quadform.hpp"
#include "rsq/rational.hpp"

namespace rsq {

namespace detail {

inline void require_good_prime(Natural p, Integer df, const char* who) {
  if (p % 2 == 0 || !is_prime(p)) throw std::invalid_argument(std::string(who) + ": p must be an odd prime");
  if (df <= 0) throw std::invalid_argument(std::string(who) + ": discriminant must be positive");
  if (static_cast<Natural>(df) % p == 0) throw std::invalid_argument(std::string(who) + ": p divides 2*df");
}

inline Rational inverse_power(Natural p, unsigned e) { return Rational(BigInt(1), big_pow(BigInt(p), e)); }

// Legendre symbol of (sign * m * df) mod p without overflowing the product.
inline int legendre_product(Integer sign, Natural m, Integer df, Natural p) {
  Natural r = mulmod(m % p, mod(df, p), p);
  return legendre(sign * static_cast<Integer>(r), p);
}

}  // namespace detail

/// Local density alpha_p(n, f) for a ternary form f and an odd prime p not
/// dividing df.
inline Rational alpha_p(Natural n, const QuadForm& f, Natural p) {
  if (f.rank() != 3) throw std::invalid_argument("alpha_p: form must be ternary");
  if (n == 0) throw std::invalid_argument("alpha_p: n must be positive");
  const Integer df = f.discriminant();
  detail::require_good_prime(p, df, "alpha_p");
  const unsigned lambda = ord(n, p);
  Rational alpha = Rational(1) + Rational(1, p);
  if (lambda % 2 == 1) {
    alpha -= detail::inverse_power(p, (lambda + 1) / 2);
    alpha -= detail::inverse_power(p, (lambda + 3) / 2);
  } else {
    const Natural unit = n / ipow(p, lambda);
    const int chi = detail::legendre_product(-1, unit, df, p);
    alpha -= detail::inverse_power(p, (lambda + 2) / 2);
    alpha += chi * detail::inverse_power(p, (lambda + 2) / 2);
  }
  return alpha;
}

/// r(p^2 n, gen f) / r(n, gen f) for a ternary genus of discriminant df.
inline Rational genus_ratio(Natural n, Natural p, Integer df) {
  if (n == 0) throw std::invalid_argument("genus_ratio: n must be positive");
  detail::require_good_prime(p, df, "genus_ratio");
  const unsigned half = ord(n, p) / 2;
  const Natural reduced = n / ipow(p, 2 * half);
  const int chi = detail::legendre_product(-1, reduced, df, p);
  const BigInt P(p);
  const BigInt num = big_pow(P, half + 2) - 1 - chi * (big_pow(P, half + 1) - 1);
  const BigInt den = big_pow(P, half + 1) - 1 - chi * (big_pow(P, half) - 1);
  return make_rational(num, den);
}

/// r(p^2 n, f) > r(n, f) for a class-number-one ternary f.
inline bool check_class1_growth(const QuadForm& f, Natural n, Natural p, Natural ceiling = kDefaultRepCeiling) {
  if (f.rank() != 3) throw std::invalid_argument("check_class1_growth: form must be ternary");
  detail::require_good_prime(p, f.discriminant(), "check_class1_growth");
  return rep_count(f, p * p * n, ceiling) > rep_count(f, n, ceiling);
}

}  // namespace rsq
