#pragma once

// Sums of squares of integers coprime to a prime p: exact-k decomposition,
// minimal k, range scans with certificates, coprime binary representations
// and the constructive four-square route for p >= 7.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rsq/arith.hpp"
#include "rsq/errors.hpp"
#include "rsq/identities.hpp"
#include "rsq/quadform.hpp"

namespace rsq {

/// Ceiling on n for the exhaustive decomposer.
inline constexpr Natural kDefaultDecomposeCeiling = 100'000'000;
inline constexpr unsigned kDefaultCap = 12;

/// n = sum of parts^2 with every part coprime to p; parts nonincreasing.
class RestrictedWitness {
 public:
  /// Sorts the parts (absolute values) into canonical order and checks every
  /// invariant; throws VerificationFailure otherwise.
  static RestrictedWitness make(Natural n, Natural p, std::vector<Integer> parts) {
    std::vector<Natural> canonical;
    canonical.reserve(parts.size());
    for (Integer x : parts) canonical.push_back(static_cast<Natural>(x < 0 ? -x : x));
    std::sort(canonical.begin(), canonical.end(), std::greater<>());
    return RestrictedWitness(n, p, std::move(canonical));
  }

  RestrictedWitness(Natural n, Natural p, std::vector<Natural> parts) : n_(n), p_(p), parts_(std::move(parts)) {
    if (parts_.empty()) throw VerificationFailure("witness: no parts");
    unsigned __int128 sum = 0;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] == 0 || std::gcd(parts_[i], p_) != 1)
        throw VerificationFailure("witness: part " + std::to_string(parts_[i]) + " not coprime to p");
      if (i > 0 && parts_[i] > parts_[i - 1]) throw VerificationFailure("witness: parts not nonincreasing");
      sum += static_cast<unsigned __int128>(parts_[i]) * parts_[i];
    }
    if (sum != n_) throw VerificationFailure("witness: squares do not sum to n");
  }

  Natural n() const { return n_; }
  Natural p() const { return p_; }
  std::size_t k() const { return parts_.size(); }
  const std::vector<Natural>& parts() const { return parts_; }

  friend bool operator==(const RestrictedWitness&, const RestrictedWitness&) = default;

 private:
  Natural n_;
  Natural p_;
  std::vector<Natural> parts_;
};

inline void require_prime(Natural p, const char* who) {
  if (!is_prime(p)) throw std::invalid_argument(std::string(who) + ": p must be prime");
}

namespace detail {

// Depth-first search over nonincreasing tuples, largest part first, so the
// first hit is the lexicographically greatest witness. Failed states
// (remaining, parts left, largest allowed part) are memoised.
class RestrictedSearch {
 public:
  explicit RestrictedSearch(Natural p) : p_(p) {}

  std::optional<std::vector<Natural>> find(Natural n, unsigned k) {
    failed_.clear();
    parts_.clear();
    if (!dfs(n, k, isqrt(n))) return std::nullopt;
    return parts_;
  }

 private:
  struct Key {
    Natural remaining;
    unsigned left;
    Natural max_part;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<Natural>()(k.remaining * 1000003ULL ^ (k.max_part << 8) ^ k.left);
    }
  };

  bool allowed(Natural x) const { return x % p_ != 0; }

  // Necessary conditions on (r, j): squares coprime to 2 are 1 mod 8,
  // squares coprime to 3 are 1 mod 3, and the part count must cover the
  // unrestricted three-square obstruction.
  bool plausible(Natural r, unsigned j) const {
    if (p_ == 2 && r % 8 != j % 8) return false;
    if (p_ == 3 && r % 3 != j % 3) return false;
    if (j == 3 && !is_sum_three_squares(r)) return false;
    return true;
  }

  bool dfs(Natural r, unsigned j, Natural max_part) {
    if (j == 0) return r == 0;
    if (r < j) return false;
    max_part = std::min(max_part, isqrt(r - (j - 1)));
    if (static_cast<unsigned __int128>(j) * max_part * max_part < r) return false;
    if (!plausible(r, j)) return false;
    if (j == 1) {
      if (is_square(r) && allowed(isqrt(r))) {
        parts_.push_back(isqrt(r));
        return true;
      }
      return false;
    }
    const Key key{r, j, max_part};
    if (failed_.count(key) != 0) return false;
    // Largest part is at least sqrt(r / j).
    Natural floor_part = isqrt(r / j);
    if (floor_part * floor_part * j < r) ++floor_part;
    for (Natural x = max_part; x >= std::max<Natural>(floor_part, 1); --x) {
      if (!allowed(x)) continue;
      parts_.push_back(x);
      if (dfs(r - x * x, j - 1, x)) return true;
      parts_.pop_back();
    }
    failed_.insert(key);
    return false;
  }

  Natural p_;
  std::vector<Natural> parts_;
  std::unordered_set<Key, KeyHash> failed_;
};

inline void check_decompose_ceiling(Natural n, Natural ceiling) {
  if (n > ceiling)
    throw ResourceLimit("restricted search: n = " + std::to_string(n) + " exceeds ceiling " + std::to_string(ceiling));
}

}  // namespace detail

/// Lexicographically greatest witness with exactly k parts, or nullopt when
/// exhaustive search proves none exists.
inline std::optional<RestrictedWitness> restricted_decompose(Natural n, Natural p, unsigned k,
                                                             Natural ceiling = kDefaultDecomposeCeiling) {
  require_prime(p, "restricted_decompose");
  if (n == 0 || k == 0) throw std::invalid_argument("restricted_decompose: n and k must be positive");
  detail::check_decompose_ceiling(n, ceiling);
  detail::RestrictedSearch search(p);
  auto parts = search.find(n, k);
  if (!parts) return std::nullopt;
  return RestrictedWitness(n, p, std::move(*parts));
}

/// Smallest k <= cap with a witness, by exhaustive search.
inline std::optional<RestrictedWitness> min_restricted_k(Natural n, Natural p, unsigned cap = kDefaultCap,
                                                         Natural ceiling = kDefaultDecomposeCeiling) {
  require_prime(p, "min_restricted_k");
  if (n == 0 || cap == 0) throw std::invalid_argument("min_restricted_k: n and cap must be positive");
  detail::check_decompose_ceiling(n, ceiling);
  detail::RestrictedSearch search(p);
  // Restricted parts are in particular squares, so Lagrange's count is a floor.
  for (unsigned k = min_squares(n); k <= cap; ++k)
    if (auto parts = search.find(n, k)) return RestrictedWitness(n, p, std::move(*parts));
  return std::nullopt;
}

/// Minimal restricted part counts for all m <= limit, by dynamic programming
/// over the allowed squares.
class RestrictedTable {
 public:
  static constexpr std::uint8_t kUnreachable = 0xff;

  RestrictedTable(Natural p, Natural limit) : p_(p), min_k_(limit + 1, kUnreachable) {
    require_prime(p, "RestrictedTable");
    std::vector<Natural> squares;
    for (Natural x = 1; x * x <= limit; ++x)
      if (x % p != 0) squares.push_back(x * x);
    min_k_[0] = 0;
    for (Natural m = 1; m <= limit; ++m) {
      unsigned best = kUnreachable;
      for (Natural s : squares) {
        if (s > m) break;
        const unsigned prev = min_k_[m - s];
        if (prev + 1 < best) best = prev + 1;
      }
      min_k_[m] = static_cast<std::uint8_t>(std::min<unsigned>(best, kUnreachable));
    }
  }

  Natural p() const { return p_; }
  Natural limit() const { return min_k_.size() - 1; }
  unsigned min_k(Natural m) const { return min_k_.at(m); }

  /// Lexicographically greatest minimal witness. Taking the largest x with
  /// min_k(m - x^2) = min_k(m) - 1 at every step is optimal: any larger part
  /// in a minimal witness of the remainder would itself have been chosen.
  RestrictedWitness witness(Natural m) const {
    const Natural original = m;
    if (m == 0 || min_k(m) == kUnreachable) throw std::invalid_argument("RestrictedTable: no witness");
    std::vector<Natural> parts;
    Natural bound = isqrt(m);
    while (m > 0) {
      const unsigned want = min_k(m) - 1;
      Natural x = std::min(bound, isqrt(m));
      while (x > 0 && (x % p_ == 0 || min_k(m - x * x) != want)) --x;
      if (x == 0) throw VerificationFailure("RestrictedTable: inconsistent table");
      parts.push_back(x);
      m -= x * x;
      bound = x;
    }
    return RestrictedWitness(original, p_, std::move(parts));
  }

 private:
  Natural p_;
  std::vector<std::uint8_t> min_k_;
};

/// S(p) bound the scans are checked against.
inline unsigned expected_restricted_bound(Natural p) { return p == 2 ? 10 : p == 3 ? 6 : 4; }

/// The single listed exception: 79 needs five squares prime to 5.
inline bool is_predicted_exception(Natural p, Natural n, std::optional<unsigned> k) {
  return p == 5 && n == 79 && k == 5u;
}

struct ScanRow {
  Natural n;
  std::optional<RestrictedWitness> witness;  // nullopt: none with at most cap parts
  std::optional<unsigned> min_k() const {
    return witness ? std::optional<unsigned>(static_cast<unsigned>(witness->k())) : std::nullopt;
  }
};

struct ScanException {
  Natural n;
  std::optional<unsigned> min_k;  // nullopt: none up to cap
  friend bool operator==(const ScanException&, const ScanException&) = default;
};

struct ScanReport {
  Natural p = 0;
  Natural lo = 0;
  Natural hi = 0;
  unsigned cap = 0;
  unsigned max_k = 0;
  std::map<unsigned, Natural> histogram;  // min_k -> count
  Natural unresolved = 0;                 // no witness with at most cap parts
  bool interrupted = false;               // hi lowered to the last finished n
  std::vector<ScanException> exceptions;  // min_k above the expected bound
  std::vector<ScanRow> rows;

  /// Exceptions other than the predicted one.
  std::vector<ScanException> unexpected() const {
    std::vector<ScanException> out;
    for (const auto& e : exceptions)
      if (!is_predicted_exception(p, e.n, e.min_k)) out.push_back(e);
    return out;
  }
};

using ScanProgress = std::function<void(Natural done, Natural total)>;

/// min_k with witness for every n in [lo, hi]. Work is split into contiguous
/// chunks over `jobs` threads; rows are stored by position so the report does
/// not depend on the thread count. Setting `cancel` stops the workers; the
/// report then covers the finished prefix of the range only.
inline ScanReport sp_scan(Natural p, Natural lo, Natural hi, unsigned cap = kDefaultCap, unsigned jobs = 1,
                          const ScanProgress& progress = {}, Natural progress_every = 10'000,
                          const std::atomic<bool>* cancel = nullptr) {
  require_prime(p, "sp_scan");
  if (lo == 0 || lo > hi) throw std::invalid_argument("sp_scan: need 1 <= lo <= hi");
  if (cap == 0 || jobs == 0) throw std::invalid_argument("sp_scan: cap and jobs must be positive");
  const RestrictedTable table(p, hi);
  ScanReport report;
  report.p = p;
  report.lo = lo;
  report.hi = hi;
  report.cap = cap;
  const Natural total = hi - lo + 1;
  report.rows.resize(total, ScanRow{0, std::nullopt});

  std::atomic<Natural> done{0};
  std::mutex progress_mutex;
  auto work = [&](Natural begin, Natural end) {
    for (Natural i = begin; i < end; ++i) {
      if (cancel != nullptr && cancel->load(std::memory_order_relaxed)) return;
      const Natural n = lo + i;
      ScanRow row{n, std::nullopt};
      if (table.min_k(n) <= cap) row.witness = table.witness(n);
      report.rows[i] = std::move(row);
      const Natural count = ++done;
      if (progress && progress_every != 0 && count % progress_every == 0) {
        std::lock_guard lock(progress_mutex);
        progress(count, total);
      }
    }
  };
  const Natural workers = std::min<Natural>(jobs, total);
  const Natural chunk = (total + workers - 1) / workers;
  std::vector<std::thread> threads;
  for (Natural w = 1; w < workers; ++w)
    threads.emplace_back(work, std::min(total, w * chunk), std::min(total, (w + 1) * chunk));
  work(0, std::min(total, chunk));
  for (auto& t : threads) t.join();

  // Unfinished rows still carry n == 0.
  const auto unfinished =
      std::find_if(report.rows.begin(), report.rows.end(), [](const ScanRow& row) { return row.n == 0; });
  if (unfinished != report.rows.end()) {
    report.rows.erase(unfinished, report.rows.end());
    report.interrupted = true;
    report.hi = lo + report.rows.size() - 1;  // lo - 1 when nothing finished
  }

  const unsigned bound = expected_restricted_bound(p);
  for (const auto& row : report.rows) {
    const auto k = row.min_k();
    if (k) {
      ++report.histogram[*k];
      report.max_k = std::max(report.max_k, *k);
    } else {
      ++report.unresolved;
    }
    if (!k || *k > bound) report.exceptions.push_back({row.n, k});
  }
  return report;
}

/// u^2 + k v^2 = n with p not dividing uv; smallest u first.
inline std::optional<std::pair<Natural, Natural>> coprime_binary(Natural n, Natural k, Natural p) {
  if (p % 2 == 0 || !is_prime(p)) throw std::invalid_argument("coprime_binary: p must be an odd prime");
  if (k == 0 || k % p == 0) throw std::invalid_argument("coprime_binary: k must be positive and prime to p");
  for (Natural u = 1; u * u < n; ++u) {
    const Natural rest = n - u * u;
    if (rest % k != 0) continue;
    const Natural v = isqrt(rest / k);
    if (v * v == rest / k && u % p != 0 && v % p != 0) return std::pair{u, v};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Constructive route for p >= 7.

struct ConstructiveResult {
  RestrictedWitness witness;
  std::string route;
  std::vector<std::string> trace;
};

namespace detail {

inline bool all_coprime(std::span<const Integer> xs, Natural p) {
  return std::all_of(xs.begin(), xs.end(), [p](Integer x) { return x != 0 && coprime(x, p); });
}

// First representation of r by x^2 + y^2 + z^2 accepted by `try_triple`.
template <class Try>
bool for_three_squares(Natural r, Try&& try_triple) {
  static const QuadForm sum3 = QuadForm::identity(3);
  return !for_each_representation(sum3, r, [&](std::span<const Integer> v) { return !try_triple(v[0], v[1], v[2]); });
}

inline std::optional<ConstructiveResult> divisible_route(Natural n, Natural p) {
  // n itself as three squares prime to p.
  std::optional<ConstructiveResult> out;
  for_three_squares(n, [&](Integer a, Integer b, Integer c) {
    const std::array<Integer, 3> v = {a, b, c};
    if (!all_coprime(v, p)) return false;
    out = ConstructiveResult{RestrictedWitness::make(n, p, {a, b, c}), "divisible-by-p/three-squares", {}};
    return true;
  });
  if (out) return out;

  // x^2 + y^2 + a z^2 with a = s1^2 + s2^2 split into four squares.
  struct Lift {
    Integer a, s1, s2;
    const char* identity;
  };
  for (const Lift& lift : {Lift{2, 1, 1, "ternary-lift-<1,1,2>"}, Lift{5, 1, 2, "ternary-lift-<1,1,5>"},
                           Lift{10, 1, 3, "ternary-lift-<1,1,10>"}}) {
    const QuadForm form = QuadForm::diagonal({1, 1, lift.a});
    for_each_representation(form, n, [&](std::span<const Integer> v) {
      const std::array<Integer, 4> parts = {v[0], v[1], lift.s1 * v[2], lift.s2 * v[2]};
      if (!all_coprime(parts, p)) return true;
      out = ConstructiveResult{RestrictedWitness::make(n, p, {parts.begin(), parts.end()}),
                               "divisible-by-p/ternary-lift", {lift.identity}};
      return false;
    });
    if (out) return out;
  }

  // n = 3(a^2 + b^2 + c^2) and the four-square expansions of 3(a^2+b^2+c^2).
  if (n % 3 == 0) {
    for_three_squares(n / 3, [&](Integer a, Integer b, Integer c) {
      const std::array<Integer, 3> abc = {a, b, c};
      if (!all_coprime(abc, p)) return false;
      const std::array<std::array<Integer, 4>, 4> expansions = {{{a - b - c, a + b, a + c, b - c},
                                                                 {a + b + c, a - b, a - c, b - c},
                                                                 {a + b - c, a - b, a + c, b + c},
                                                                 {a - b + c, a + b, a - c, b + c}}};
      for (std::size_t i = 0; i < expansions.size(); ++i) {
        if (!all_coprime(expansions[i], p)) continue;
        out = ConstructiveResult{RestrictedWitness::make(n, p, {expansions[i].begin(), expansions[i].end()}),
                                 "divisible-by-p/euler", {"euler-four-square-" + std::to_string(i + 1)}};
        return true;
      }
      return false;
    });
  }
  return out;
}

// s0 by (n mod 4, n mod 3) so that n - (6k + s0)^2 avoids 4^a(8b+7) and is
// 2 mod 3 for every k.
inline Integer shift_base(Natural n) {
  const bool zero3 = n % 3 == 0;
  if (n % 4 != 3 && !zero3) return 0;
  if (n % 4 != 1 && zero3) return 1;
  if (n % 4 == 1 && zero3) return 2;
  return 3;
}

inline bool residue_condition(Natural r, Natural p) {
  const int chi = legendre(static_cast<Integer>(r % p), p);
  return chi != 0 && chi != legendre(5, p);
}

inline std::optional<ConstructiveResult> shift6_route(Natural n, Natural p) {
  const Integer s0 = shift_base(n);
  std::optional<ConstructiveResult> out;
  for (Integer k = 0;; ++k) {
    const Integer x0 = 6 * k + s0;
    if (static_cast<Natural>(x0 * x0) >= n) break;
    const Natural r = n - static_cast<Natural>(x0 * x0);
    if (x0 % static_cast<Integer>(p) == 0 || !residue_condition(r, p) || !is_sum_three_squares(r) || r % 3 != 2)
      continue;
    for_three_squares(r, [&](Integer a, Integer b, Integer c) {
      const auto adjusted = sign_adjust_three(r, a, b, c, p);
      if (!adjusted) return false;
      const auto [sa, sb, sc, m] = *adjusted;
      const std::array<Integer, 3> direct = {sa, sb, sc};
      const std::array<Integer, 3> reflected = {2 * m - sa, 2 * m - sb, 2 * m - sc};
      const std::string where = "k=" + std::to_string(k) + " s0=" + std::to_string(s0);
      if (all_coprime(direct, p)) {
        out = ConstructiveResult{RestrictedWitness::make(n, p, {x0, sa, sb, sc}), "shift-6k", {where, "direct"}};
        return true;
      }
      if (all_coprime(reflected, p)) {
        out = ConstructiveResult{RestrictedWitness::make(n, p, {x0, reflected[0], reflected[1], reflected[2]}),
                                 "shift-6k", {where, "reflection"}};
        return true;
      }
      return false;
    });
    if (out) return out;
  }
  return out;
}

inline std::optional<ConstructiveResult> shift18_route(Natural n, Natural p) {
  std::optional<ConstructiveResult> out;
  for (Integer k = 0;; ++k) {
    if (static_cast<Natural>((18 * k + 1) * (18 * k + 1)) >= n) break;
    for (Integer s0 : {1, 2, 4, 5, 7, 8}) {
      const Integer x0 = 18 * k + s0;
      if (static_cast<Natural>(x0 * x0) >= n) break;
      const Natural r = n - static_cast<Natural>(x0 * x0);
      if (r % 9 != 0 || x0 % static_cast<Integer>(p) == 0 || !residue_condition(r, p) || !is_sum_three_squares(r))
        continue;
      for_three_squares(r / 9, [&](Integer a, Integer b, Integer c) {
        // Flip b if needed so that m = a + b + c is prime to p.
        for (Integer sb : {b, -b}) {
          const Integer m = a + sb + c;
          if (m % static_cast<Integer>(p) == 0) continue;
          const std::array<Integer, 3> scaled = {3 * a, 3 * sb, 3 * c};
          const std::array<Integer, 3> reflected = {2 * m - 3 * a, 2 * m - 3 * sb, 2 * m - 3 * c};
          const std::string where = "k=" + std::to_string(k) + " s0=" + std::to_string(s0);
          if (all_coprime(scaled, p)) {
            out = ConstructiveResult{RestrictedWitness::make(n, p, {x0, scaled[0], scaled[1], scaled[2]}), "shift-18k",
                                     {where, "direct"}};
            return true;
          }
          if (all_coprime(reflected, p)) {
            out = ConstructiveResult{RestrictedWitness::make(n, p, {x0, reflected[0], reflected[1], reflected[2]}),
                                     "shift-18k", {where, "reflection-scaled"}};
            return true;
          }
        }
        return false;
      });
      if (out) return out;
    }
  }
  return out;
}

}  // namespace detail

/// A witness with at most four parts for p >= 7, following the case analysis
/// (divisible by p; n = 0, 2 mod 3; n = 1 mod 3) where it applies and
/// falling back to exhaustive search otherwise. The route names which branch
/// produced the witness; the witness itself is always re-verified.
inline ConstructiveResult constructive_k4(Natural n, Natural p, Natural ceiling = kDefaultDecomposeCeiling) {
  require_prime(p, "constructive_k4");
  if (p < 7) throw std::invalid_argument("constructive_k4: p must be at least 7");
  if (n == 0) throw std::invalid_argument("constructive_k4: n must be positive");
  detail::check_decompose_ceiling(n, ceiling);
  std::optional<ConstructiveResult> out;
  if (n % p == 0)
    out = detail::divisible_route(n, p);
  else if (n % 3 == 1)
    out = detail::shift18_route(n, p);
  else
    out = detail::shift6_route(n, p);
  if (out && out->witness.k() <= 4) return *out;
  if (n % 4 == 0) {
    // 2 is prime to p, so doubling a witness for n/4 stays admissible.
    auto inner = constructive_k4(n / 4, p, ceiling);
    std::vector<Integer> doubled;
    for (Natural x : inner.witness.parts()) doubled.push_back(2 * static_cast<Integer>(x));
    inner.trace.insert(inner.trace.begin(), "n/4 = " + std::to_string(n / 4));
    return {RestrictedWitness::make(n, p, doubled), "double/" + inner.route, std::move(inner.trace)};
  }
  for (unsigned k = 1; k <= 4; ++k)
    if (auto w = restricted_decompose(n, p, k, ceiling)) return {*w, "exhaustive", {}};
  throw VerificationFailure("constructive_k4: no witness with at most four parts for n = " + std::to_string(n));
}

}  // namespace rsq
