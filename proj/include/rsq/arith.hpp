#pragma once

// Elementary number theory on 64-bit integers: primality, Legendre symbol,
// p-adic valuation, factorization and the classical two/three/four square
// criteria.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rsq {

using Natural = std::uint64_t;
using Integer = std::int64_t;

/// Prime/exponent pairs, primes strictly increasing.
struct Factorization {
  std::vector<std::pair<Natural, unsigned>> pairs;

  Natural value() const {
    Natural v = 1;
    for (auto [q, e] : pairs)
      for (unsigned i = 0; i < e; ++i) v *= q;
    return v;
  }
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Largest input accepted by factorize(); trial division up to 10^7.
inline constexpr Natural kMaxFactorInput = 100'000'000'000'000ULL;

inline Natural mulmod(Natural a, Natural b, Natural m) {
  return static_cast<Natural>(static_cast<unsigned __int128>(a) * b % m);
}

inline Natural powmod(Natural base, Natural exp, Natural m) {
  Natural result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// floor(sqrt(n)), exact for the full 64-bit range.
inline Natural isqrt(Natural n) {
  if (n < 2) return n;
  Natural r = static_cast<Natural>(__builtin_sqrtl(static_cast<long double>(n)));
  while (r > 0 && (r > n / r)) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

inline unsigned __int128 isqrt128(unsigned __int128 n) {
  if (n < 2) return n;
  auto r = static_cast<unsigned __int128>(__builtin_sqrtl(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline bool is_square(Natural n) {
  Natural r = isqrt(n);
  return r * r == n;
}

/// Deterministic Miller-Rabin; the first twelve prime bases cover all n < 2^64.
inline bool is_prime(Natural n) {
  if (n < 2) return false;
  constexpr Natural small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (Natural q : small) {
    if (n % q == 0) return n == q;
  }
  Natural d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (Natural a : small) {
    Natural x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Least non-negative residue of a mod m.
inline Natural mod(Integer a, Natural m) {
  Integer r = a % static_cast<Integer>(m);
  return static_cast<Natural>(r < 0 ? r + static_cast<Integer>(m) : r);
}

/// Legendre symbol (a/p) for an odd prime p, via Euler's criterion.
inline int legendre(Integer a, Natural p) {
  if (p % 2 == 0 || !is_prime(p))
    throw std::invalid_argument("legendre: modulus must be an odd prime");
  Natural r = mod(a, p);
  if (r == 0) return 0;
  return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

/// Exponent of p in n.
inline unsigned ord(Natural n, Natural p) {
  if (n == 0) throw std::invalid_argument("ord: n must be positive");
  if (p < 2) throw std::invalid_argument("ord: p must be at least 2");
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

inline Factorization factorize(Natural n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  if (n > kMaxFactorInput) throw std::overflow_error("factorize: input above supported range");
  Factorization f;
  auto strip = [&](Natural q) {
    unsigned e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    if (e != 0) f.pairs.emplace_back(q, e);
  };
  strip(2);
  for (Natural q = 3; q <= n / q; q += 2) strip(q);
  if (n > 1) f.pairs.emplace_back(n, 1);
  return f;
}

/// Number of positive divisors.
inline Natural tau(Natural n) {
  Natural t = 1;
  for (auto [q, e] : factorize(n).pairs) t *= e + 1;
  return t;
}

inline bool is_sum_two_squares(Natural n) {
  if (n == 0) throw std::invalid_argument("is_sum_two_squares: n must be positive");
  for (auto [q, e] : factorize(n).pairs)
    if (q % 4 == 3 && e % 2 == 1) return false;
  return true;
}

/// True unless n = 4^a (8b + 7).
inline bool is_sum_three_squares(Natural n) {
  if (n == 0) throw std::invalid_argument("is_sum_three_squares: n must be positive");
  while (n % 4 == 0) n /= 4;
  return n % 8 != 7;
}

/// Least number of squares summing to n (0 for n = 0).
inline unsigned min_squares(Natural n) {
  if (n == 0) return 0;
  if (is_square(n)) return 1;
  if (is_sum_two_squares(n)) return 2;
  if (is_sum_three_squares(n)) return 3;
  return 4;
}

inline std::vector<Natural> primes_up_to(Natural bound) {
  std::vector<bool> composite(bound + 1, false);
  std::vector<Natural> primes;
  for (Natural i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (Natural j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return primes;
}

inline Natural ipow(Natural base, unsigned exp) {
  Natural r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) throw std::overflow_error("ipow: overflow");
    r *= base;
  }
  return r;
}

inline bool coprime(Integer x, Natural p) {
  return std::gcd(static_cast<Natural>(x < 0 ? -x : x), p) == 1;
}

}  // namespace rsq
