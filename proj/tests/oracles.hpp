#pragma once

// Deliberately naive reference computations for the test suite. Nothing here
// calls into the library's algorithms; only plain types are shared.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using Matrix = std::vector<std::vector<i64>>;

inline u64 floor_sqrt(u64 n) {
  u64 r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline bool two_squares(u64 n) {
  for (u64 x = 0; x * x <= n; ++x)
    for (u64 y = x; x * x + y * y <= n; ++y)
      if (x * x + y * y == n) return true;
  return false;
}

inline bool three_squares(u64 n) {
  for (u64 x = 0; x * x <= n; ++x)
    for (u64 y = x; x * x + y * y <= n; ++y)
      for (u64 z = y; x * x + y * y + z * z <= n; ++z)
        if (x * x + y * y + z * z == n) return true;
  return false;
}

inline bool prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Legendre symbol from the table of squares mod p.
inline int legendre_table(i64 a, i64 p) {
  const i64 r = ((a % p) + p) % p;
  if (r == 0) return 0;
  for (i64 x = 1; x < p; ++x)
    if ((x * x) % p == r) return 1;
  return -1;
}

inline std::vector<u64> divisors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

inline i64 quad(const Matrix& m, const std::vector<i64>& x) {
  i64 s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) s += m[i][j] * x[i] * x[j];
  return s;
}

/// Visits every integer vector with entries in [-bound, bound].
inline void box(std::size_t dim, i64 bound, const std::function<void(const std::vector<i64>&)>& visit) {
  std::vector<i64> x(dim, -bound);
  while (true) {
    visit(x);
    std::size_t i = 0;
    while (i < dim && x[i] == bound) x[i++] = -bound;
    if (i == dim) return;
    ++x[i];
  }
}

/// r(a, f) by scanning the box |x_i| <= sqrt(a / m_ii), valid for diagonal f.
inline u64 diagonal_count(const std::vector<i64>& diag, u64 a) {
  i64 bound = 0;
  for (i64 d : diag) bound = std::max<i64>(bound, static_cast<i64>(floor_sqrt(a / static_cast<u64>(d))));
  Matrix m(diag.size(), std::vector<i64>(diag.size(), 0));
  for (std::size_t i = 0; i < diag.size(); ++i) m[i][i] = diag[i];
  u64 count = 0;
  box(diag.size(), bound, [&](const std::vector<i64>& x) { count += quad(m, x) == static_cast<i64>(a); });
  return count;
}

/// Count of integer vectors in a fixed box representing a; the caller picks
/// a box large enough for the form.
inline u64 box_count(const Matrix& m, u64 a, i64 bound) {
  u64 count = 0;
  box(m.size(), bound, [&](const std::vector<i64>& x) { count += quad(m, x) == static_cast<i64>(a); });
  return count;
}

/// All integer matrices T with T^t M T = M and entries in [-bound, bound].
/// Column candidates are filtered by norm first, then every tuple of
/// columns is checked against the full Gram identity.
inline std::vector<Matrix> isometries(const Matrix& m, i64 bound) {
  const std::size_t n = m.size();
  std::vector<std::vector<std::vector<i64>>> candidates(n);
  box(n, bound, [&](const std::vector<i64>& v) {
    for (std::size_t i = 0; i < n; ++i)
      if (quad(m, v) == m[i][i]) candidates[i].push_back(v);
  });
  std::vector<Matrix> out;
  std::vector<std::size_t> pick(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t col) {
    if (col == n) {
      Matrix t(n, std::vector<i64>(n));
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) t[r][c] = candidates[c][pick[c]][r];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          i64 s = 0;
          for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) s += t[a][i] * m[a][b] * t[b][j];
          if (s != m[i][j]) return;
        }
      out.push_back(t);
      return;
    }
    for (pick[col] = 0; pick[col] < candidates[col].size(); ++pick[col]) rec(col + 1);
  };
  rec(0);
  return out;
}

/// Histogram h[r] = #{x mod q : coeff * x^2 = r mod q}.
inline std::vector<u64> square_histogram(i64 coeff, u64 q) {
  std::vector<u64> h(q, 0);
  for (u64 x = 0; x < q; ++x) ++h[(static_cast<u64>(coeff) % q) * ((x * x) % q) % q];
  return h;
}

inline std::vector<u64> convolve_mod(const std::vector<u64>& a, const std::vector<u64>& b) {
  const u64 q = a.size();
  std::vector<u64> out(q, 0);
  for (u64 i = 0; i < q; ++i) {
    if (a[i] == 0) continue;
    for (u64 j = 0; j < q; ++j) out[(i + j) % q] += a[i] * b[j];
  }
  return out;
}

/// #{x in (Z/q)^3 : sum d_i x_i^2 = r mod q} for every r, q = p^j.
inline std::vector<u64> diagonal_solution_counts(const std::array<i64, 3>& diag, u64 q) {
  auto h = square_histogram(diag[0], q);
  h = convolve_mod(h, square_histogram(diag[1], q));
  return convolve_mod(h, square_histogram(diag[2], q));
}

/// Every nonincreasing tuple of positive integers prime to p whose squares
/// sum to n with at most kmax parts, found without pruning beyond size.
inline void all_restricted(u64 n, u64 p, unsigned kmax, const std::function<void(const std::vector<u64>&)>& visit) {
  std::vector<u64> parts;
  std::function<void(u64, u64)> rec = [&](u64 rest, u64 largest) {
    if (rest == 0) {
      visit(parts);
      return;
    }
    if (parts.size() == kmax) return;
    for (u64 x = std::min(largest, floor_sqrt(rest)); x >= 1; --x) {
      if (x % p == 0) continue;
      parts.push_back(x);
      rec(rest - x * x, x);
      parts.pop_back();
    }
  };
  rec(n, floor_sqrt(n));
}

/// Minimal k and the lexicographically greatest minimal witness.
inline std::optional<std::vector<u64>> best_restricted(u64 n, u64 p, unsigned kmax) {
  std::optional<std::vector<u64>> best;
  all_restricted(n, p, kmax, [&](const std::vector<u64>& w) {
    if (!best || w.size() < best->size() || (w.size() == best->size() && w > *best)) best = w;
  });
  return best;
}

inline std::mt19937 rng(std::uint32_t salt = 0) { return std::mt19937(0x5eed1234u ^ salt); }

/// h[a] = r(a, diag) for a <= limit, by one pass over a box.
inline std::vector<u64> diagonal_histogram(const std::vector<i64>& diag, u64 limit) {
  const i64 bound = static_cast<i64>(floor_sqrt(limit / static_cast<u64>(*std::min_element(diag.begin(), diag.end()))));
  std::vector<u64> h(limit + 1, 0);
  box(diag.size(), bound, [&](const std::vector<i64>& x) {
    i64 s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += diag[i] * x[i] * x[i];
    if (s <= static_cast<i64>(limit)) ++h[s];
  });
  return h;
}

}  // namespace oracle
