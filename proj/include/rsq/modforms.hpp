#pragma once

// The weight 3/2 theta difference phi attached to the genus of
// x^2 + y^2 + 10z^2, its weight 2 partner eta(2z)^2 eta(10z)^2, and the checks
// tying them together: the Hecke relation on the coefficients of phi, the
// Deligne bound on the eta product, and the growth r(p^2 n, f) > r(n, f).

#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsq/arith.hpp"
#include "rsq/genus.hpp"
#include "rsq/qseries.hpp"
#include "rsq/quadform.hpp"

namespace rsq {

/// One factor eta(d z)^e.
struct EtaFactor {
  Natural dilation;
  Natural exponent;
};

inline constexpr std::array<EtaFactor, 2> kRamanujanEta = {{{2, 2}, {10, 2}}};

/// q-expansion of prod eta(d z)^e. The leading power sum(d e)/24 must be an
/// integer.
template <class Coeff = BigInt>
QSeries<Coeff> eta_product(std::span<const EtaFactor> factors, Natural precision) {
  if (precision == 0) throw std::invalid_argument("eta_product: precision must be positive");
  Natural weight_sum = 0;
  for (const auto& f : factors) {
    if (f.dilation == 0 || f.exponent == 0)
      throw std::invalid_argument("eta_product: dilations and exponents must be positive");
    weight_sum += f.dilation * f.exponent;
  }
  if (weight_sum % 24 != 0) throw std::invalid_argument("eta_product: leading exponent sum(d*e)/24 is not an integer");
  const Natural leading = weight_sum / 24;
  QSeries<Coeff> result(precision);
  if (leading > precision) return result;
  const Natural inner = precision - leading;
  QSeries<Coeff> product = QSeries<Coeff>::one(inner);
  for (const auto& f : factors) {
    const auto euler = euler_product<Coeff>(f.dilation, inner);
    for (Natural e = 0; e < f.exponent; ++e) product = euler * product;
  }
  for (Natural i = 0; i <= inner; ++i) result[i + leading] = product[i];
  return result;
}

template <class Coeff = BigInt>
QSeries<Coeff> ramanujan_eta_product(Natural precision) {
  return eta_product<Coeff>(kRamanujanEta, precision);
}

/// a(n) = (r(n, f) - r(n, f')) / 4 for f = <1,1,10> and f' its genus mate.
inline QSeries<BigInt> theta_diff_phi(Natural precision) {
  if (precision == 0) throw std::invalid_argument("theta_diff_phi: precision must be positive");
  const auto rf = theta_counts(ramanujan_form(), precision);
  const auto rg = theta_counts(ramanujan_partner(), precision);
  QSeries<BigInt> phi(precision);
  for (Natural n = 0; n <= precision; ++n) {
    const auto diff = static_cast<Integer>(rf[n]) - static_cast<Integer>(rg[n]);
    if (diff % 4 != 0)
      throw VerificationFailure("theta_diff_phi: r(n,f) - r(n,f') not divisible by 4 at n = " + std::to_string(n));
    phi[n] = diff / 4;
  }
  return phi;
}

struct HeckeReport {
  Natural p = 0;
  Integer eigenvalue = 0;
  Natural checked_up_to = 0;
  bool all_hold = true;
  std::vector<Natural> failures;
};

/// Checks eigenvalue * a(n) = a(p^2 n) + (-10n/p) a(n) + p a(n/p^2) for
/// 1 <= n <= N, with a(n/p^2) = 0 unless p^2 | n.
inline HeckeReport hecke_check(const QSeries<BigInt>& phi, Natural p, Integer eigenvalue, Natural N) {
  if (!is_prime(p) || p == 2 || p == 5) throw std::invalid_argument("hecke_check: p must be a prime not dividing 10");
  if (phi.precision() < p * p * N) throw std::invalid_argument("hecke_check: insufficient precision");
  HeckeReport report{p, eigenvalue, N, true, {}};
  for (Natural n = 1; n <= N; ++n) {
    const BigInt& a = phi[n];
    BigInt rhs = phi[p * p * n] + legendre(-10 * static_cast<Integer>(n % p), p) * a;
    if (n % (p * p) == 0) rhs += BigInt(p) * phi[n / (p * p)];
    if (eigenvalue * a != rhs) report.failures.push_back(n);
  }
  report.all_hold = report.failures.empty();
  return report;
}

/// A(p)^2 <= 4p for every prime p <= prime_bound.
inline bool deligne_check(const QSeries<BigInt>& eta, Natural prime_bound) {
  if (eta.precision() < prime_bound) throw std::invalid_argument("deligne_check: insufficient precision");
  for (Natural p : primes_up_to(prime_bound))
    if (eta[p] * eta[p] > BigInt(4 * p)) return false;
  return true;
}

/// p - 5 + 2A - 2chi > 0 and 2p - 4 - 2A + 2chi > 0 for every chi in
/// {-1, 0, 1}, A being the Hecke eigenvalue at p.
inline bool growth_coefficients_positive(Natural p, Integer eigenvalue) {
  const auto P = static_cast<Integer>(p);
  for (Integer chi : {-1, 0, 1}) {
    if (P - 5 + 2 * eigenvalue - 2 * chi <= 0) return false;
    if (2 * P - 4 - 2 * eigenvalue + 2 * chi <= 0) return false;
  }
  return true;
}

/// All n <= N with p^2 n represented by <1,1,10> but r(p^2 n) <= r(n).
inline std::vector<Natural> ramanujan_growth_check(Natural p, Natural N) {
  if (!is_prime(p) || p == 2 || p == 3 || p == 5 || p == 17)
    throw std::invalid_argument("ramanujan_growth_check: p must be a prime other than 2, 3, 5, 17");
  const auto r = theta_counts(ramanujan_form(), p * p * N);
  std::vector<Natural> violations;
  for (Natural n = 1; n <= N; ++n) {
    const Natural big = r[p * p * n];
    if (big > 0 && big <= r[n]) violations.push_back(n);
  }
  return violations;
}

}  // namespace rsq
