#pragma once

// Positive definite integral quadratic forms f(x) = x^t M x: evaluation,
// discriminant, exhaustive enumeration of representations, theta-series
// counts and the isometry group.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <cctype>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rsq/arith.hpp"
#include "rsq/errors.hpp"

namespace rsq {

/// Default ceiling on the target value accepted by the enumerators.
inline constexpr Natural kDefaultRepCeiling = 100'000'000;

class QuadForm {
 public:
  /// Builds from a full Gram matrix; rejects non-symmetric or non positive
  /// definite input.
  explicit QuadForm(const std::vector<std::vector<Integer>>& gram) : rank_(static_cast<int>(gram.size())) {
    if (rank_ == 0) throw std::invalid_argument("QuadForm: empty Gram matrix");
    gram_.reserve(rank_ * rank_);
    for (const auto& row : gram) {
      if (static_cast<int>(row.size()) != rank_) throw std::invalid_argument("QuadForm: Gram matrix is not square");
      gram_.insert(gram_.end(), row.begin(), row.end());
    }
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < i; ++j)
        if (entry(i, j) != entry(j, i)) throw std::invalid_argument("QuadForm: Gram matrix is not symmetric");
    for (__int128 minor : leading_minors())
      if (minor <= 0) throw std::invalid_argument("QuadForm: form is not positive definite");
  }

  static QuadForm diagonal(std::span<const Integer> diag) {
    std::vector<std::vector<Integer>> g(diag.size(), std::vector<Integer>(diag.size(), 0));
    for (std::size_t i = 0; i < diag.size(); ++i) g[i][i] = diag[i];
    return QuadForm(g);
  }
  static QuadForm diagonal(std::initializer_list<Integer> diag) {
    return diagonal(std::span<const Integer>(diag.begin(), diag.size()));
  }
  /// Sum of n squares.
  static QuadForm identity(int n) { return diagonal(std::vector<Integer>(static_cast<std::size_t>(n), 1)); }

  /// Accepts a diagonal list "1,1,10" or a JSON Gram matrix "[[2,0,0],[0,2,1],[0,1,3]]".
  static QuadForm parse(std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.empty()) throw std::invalid_argument("form: empty string");
    if (s.front() == '[') {
      std::vector<std::vector<Integer>> gram;
      try {
        gram = nlohmann::json::parse(s).get<std::vector<std::vector<Integer>>>();
      } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("form: malformed Gram matrix: ") + e.what());
      }
      return QuadForm(gram);
    }
    std::vector<Integer> diag;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      Integer v = 0;
      try {
        v = std::stoll(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (item.empty() || used != item.size()) throw std::invalid_argument("form: bad diagonal entry '" + item + "'");
      diag.push_back(v);
    }
    return diagonal(diag);
  }

  int rank() const { return rank_; }
  Integer entry(int i, int j) const { return gram_[i * rank_ + j]; }

  bool is_diagonal() const {
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j)
        if (i != j && entry(i, j) != 0) return false;
    return true;
  }

  /// x^t M y.
  Integer bilinear(std::span<const Integer> x, std::span<const Integer> y) const {
    check_dim(x.size());
    check_dim(y.size());
    __int128 s = 0;
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j) s += static_cast<__int128>(x[i]) * entry(i, j) * y[j];
    return static_cast<Integer>(s);
  }

  Integer evaluate(std::span<const Integer> x) const { return bilinear(x, x); }
  Integer evaluate(std::initializer_list<Integer> x) const {
    return evaluate(std::span<const Integer>(x.begin(), x.size()));
  }

  /// det(M).
  Integer discriminant() const { return static_cast<Integer>(leading_minors().back()); }

  std::string to_string() const {
    std::ostringstream os;
    if (is_diagonal()) {
      for (int i = 0; i < rank_; ++i) os << (i ? "," : "") << entry(i, i);
      return os.str();
    }
    os << '[';
    for (int i = 0; i < rank_; ++i) {
      os << (i ? ",[" : "[");
      for (int j = 0; j < rank_; ++j) os << (j ? "," : "") << entry(i, j);
      os << ']';
    }
    os << ']';
    return os.str();
  }

  friend bool operator==(const QuadForm&, const QuadForm&) = default;

 private:
  void check_dim(std::size_t n) const {
    if (n != static_cast<std::size_t>(rank_)) throw std::invalid_argument("QuadForm: dimension mismatch");
  }

  // Bareiss elimination; pivot k is the (k+1)-th leading principal minor.
  std::vector<__int128> leading_minors() const {
    std::vector<__int128> a(gram_.begin(), gram_.end());
    std::vector<__int128> minors;
    __int128 prev = 1;
    for (int k = 0; k < rank_; ++k) {
      minors.push_back(a[k * rank_ + k]);
      if (a[k * rank_ + k] <= 0) break;
      for (int i = k + 1; i < rank_; ++i)
        for (int j = k + 1; j < rank_; ++j)
          a[i * rank_ + j] = (a[i * rank_ + j] * a[k * rank_ + k] - a[i * rank_ + k] * a[k * rank_ + j]) / prev;
      prev = a[k * rank_ + k];
    }
    return minors;
  }

  int rank_;
  std::vector<Integer> gram_;
};

/// R(a, f) in lexicographic order.
struct RepSet {
  Natural target = 0;
  std::vector<std::vector<Integer>> vectors;

  std::size_t size() const { return vectors.size(); }
  bool empty() const { return vectors.empty(); }
};

namespace detail {

// Fincke-Pohst style enumeration. Completing the square from coordinate 0
// upward gives f(x) = sum_i d_i (x_i + sum_{j>i} r_ij x_j)^2, so with
// x_{i+1..n-1} fixed the tail sum over k >= i is the minimum of f over the
// inner coordinates. Outer coordinates use these floating bounds widened by
// one step; the innermost coordinate x_0 is solved exactly in integers, so
// every reported vector carries its exact value.
class Enumerator {
 public:
  explicit Enumerator(const QuadForm& f) : f_(f), n_(f.rank()), x_(n_, 0), d_(n_), r_(n_ * n_, 0.0L) {
    std::vector<long double> a(n_ * n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) a[i * n_ + j] = static_cast<long double>(f.entry(i, j));
    for (int i = 0; i < n_; ++i) {
      const long double di = a[i * n_ + i];
      d_[i] = di;
      for (int j = i + 1; j < n_; ++j) r_[i * n_ + j] = a[i * n_ + j] / di;
      for (int j = i + 1; j < n_; ++j)
        for (int k = i + 1; k < n_; ++k) a[j * n_ + k] -= a[i * n_ + j] * a[i * n_ + k] / di;
    }
  }

  /// Calls visit(x, value) for every x with f(x) <= bound (exact = false) or
  /// f(x) == bound (exact = true). Returns false if visit stopped the walk.
  template <class Visit>
  bool run(Natural bound, bool exact, Visit& visit) {
    bound_ = bound;
    exact_ = exact;
    tolerance_ = 1e-9L * (static_cast<long double>(bound) + 1.0L);
    std::fill(x_.begin(), x_.end(), 0);
    return level(n_ - 1, 0.0L, visit);
  }

 private:
  template <class Visit>
  bool level(int i, long double partial, Visit& visit) {
    if (i == 0) return innermost(visit);
    const long double remaining = static_cast<long double>(bound_) - partial;
    if (remaining < -tolerance_) return true;
    long double center = 0.0L;
    for (int j = i + 1; j < n_; ++j) center -= r_[i * n_ + j] * static_cast<long double>(x_[j]);
    const long double radius = std::sqrt(std::max(remaining, 0.0L) / d_[i]);
    const auto lo = static_cast<Integer>(std::floor(center - radius));
    const auto hi = static_cast<Integer>(std::ceil(center + radius));
    for (Integer v = lo; v <= hi; ++v) {
      x_[i] = v;
      const long double y = static_cast<long double>(v) - center;
      if (!level(i - 1, partial + d_[i] * y * y, visit)) return false;
    }
    x_[i] = 0;
    return true;
  }

  template <class Visit>
  bool innermost(Visit& visit) {
    // f = m00 x0^2 + 2 b x0 + c in terms of the fixed coordinates.
    const __int128 m00 = f_.entry(0, 0);
    __int128 b = 0;
    __int128 c = 0;
    for (int j = 1; j < n_; ++j) b += static_cast<__int128>(f_.entry(0, j)) * x_[j];
    for (int i = 1; i < n_; ++i)
      for (int j = 1; j < n_; ++j) c += static_cast<__int128>(f_.entry(i, j)) * x_[i] * x_[j];
    const __int128 disc = b * b - m00 * (c - static_cast<__int128>(bound_));
    if (disc < 0) return true;
    const auto s = static_cast<__int128>(isqrt128(static_cast<unsigned __int128>(disc)));
    if (exact_) {
      if (s * s != disc) return true;
      const __int128 roots[2] = {-b - s, -b + s};
      const int count = s == 0 ? 1 : 2;
      for (int k = 0; k < count; ++k) {
        if (roots[k] % m00 != 0) continue;
        x_[0] = static_cast<Integer>(roots[k] / m00);
        if (!visit(std::span<const Integer>(x_), bound_)) return false;
      }
      x_[0] = 0;
      return true;
    }
    // |m00 x0 + b| <= s
    const auto lo = static_cast<Integer>(ceil_div(-b - s, m00));
    const auto hi = static_cast<Integer>(floor_div(-b + s, m00));
    for (Integer v = lo; v <= hi; ++v) {
      x_[0] = v;
      const __int128 value = m00 * v * v + 2 * b * v + c;
      if (!visit(std::span<const Integer>(x_), static_cast<Natural>(value))) return false;
    }
    x_[0] = 0;
    return true;
  }

  static __int128 floor_div(__int128 a, __int128 b) {
    __int128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }
  static __int128 ceil_div(__int128 a, __int128 b) { return -floor_div(-a, b); }

  const QuadForm& f_;
  int n_;
  std::vector<Integer> x_;
  std::vector<long double> d_;
  std::vector<long double> r_;
  Natural bound_ = 0;
  bool exact_ = false;
  long double tolerance_ = 0.0L;
};

inline void check_ceiling(Natural a, Natural ceiling) {
  if (a > ceiling)
    throw ResourceLimit("enumeration target " + std::to_string(a) + " exceeds ceiling " + std::to_string(ceiling));
}

}  // namespace detail

/// Visits every x with f(x) == a; visit returns false to stop early.
/// Returns false if stopped.
template <class Visit>
bool for_each_representation(const QuadForm& f, Natural a, Visit&& visit, Natural ceiling = kDefaultRepCeiling) {
  detail::check_ceiling(a, ceiling);
  detail::Enumerator e(f);
  auto wrapped = [&](std::span<const Integer> x, Natural) { return static_cast<bool>(visit(x)); };
  return e.run(a, true, wrapped);
}

/// Visits every x with f(x) <= bound as visit(x, f(x)).
template <class Visit>
void for_each_vector_up_to(const QuadForm& f, Natural bound, Visit&& visit, Natural ceiling = kDefaultRepCeiling) {
  detail::check_ceiling(bound, ceiling);
  detail::Enumerator e(f);
  auto wrapped = [&](std::span<const Integer> x, Natural value) {
    visit(x, value);
    return true;
  };
  e.run(bound, false, wrapped);
}

inline RepSet representations(const QuadForm& f, Natural a, Natural ceiling = kDefaultRepCeiling) {
  RepSet set{a, {}};
  for_each_representation(
      f, a,
      [&](std::span<const Integer> x) {
        if (f.evaluate(x) != static_cast<Integer>(a)) throw VerificationFailure("representations: enumerator bug");
        set.vectors.emplace_back(x.begin(), x.end());
        return true;
      },
      ceiling);
  std::sort(set.vectors.begin(), set.vectors.end());
  return set;
}

inline Natural rep_count(const QuadForm& f, Natural a, Natural ceiling = kDefaultRepCeiling) {
  Natural count = 0;
  for_each_representation(
      f, a,
      [&](std::span<const Integer>) {
        ++count;
        return true;
      },
      ceiling);
  return count;
}

inline bool is_represented(const QuadForm& f, Natural a, Natural ceiling = kDefaultRepCeiling) {
  if (a == 0) return true;
  return !for_each_representation(f, a, [](std::span<const Integer>) { return false; }, ceiling);
}

/// counts[a] = r(a, f) for 0 <= a <= bound.
inline std::vector<Natural> theta_counts(const QuadForm& f, Natural bound, Natural ceiling = kDefaultRepCeiling) {
  std::vector<Natural> counts(bound + 1, 0);
  for_each_vector_up_to(
      f, bound, [&](std::span<const Integer>, Natural value) { ++counts[value]; }, ceiling);
  return counts;
}

/// Square integer matrix, row-major.
struct IntMatrix {
  int n = 0;
  std::vector<Integer> a;

  static IntMatrix identity(int n) {
    IntMatrix m{n, std::vector<Integer>(static_cast<std::size_t>(n * n), 0)};
    for (int i = 0; i < n; ++i) m.a[i * n + i] = 1;
    return m;
  }
  Integer operator()(int i, int j) const { return a[i * n + j]; }
  Integer& operator()(int i, int j) { return a[i * n + j]; }

  IntMatrix transpose() const {
    IntMatrix t{n, a};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t(i, j) = (*this)(j, i);
    return t;
  }

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    IntMatrix r{x.n, std::vector<Integer>(x.a.size(), 0)};
    for (int i = 0; i < x.n; ++i)
      for (int k = 0; k < x.n; ++k)
        for (int j = 0; j < x.n; ++j) r(i, j) += x(i, k) * y(k, j);
    return r;
  }
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
  friend auto operator<=>(const IntMatrix&, const IntMatrix&) = default;
};

/// Gram matrix of f as an IntMatrix.
inline IntMatrix gram_matrix(const QuadForm& f) {
  IntMatrix m{f.rank(), std::vector<Integer>(static_cast<std::size_t>(f.rank() * f.rank()))};
  for (int i = 0; i < f.rank(); ++i)
    for (int j = 0; j < f.rank(); ++j) m(i, j) = f.entry(i, j);
  return m;
}

inline bool is_isometry(const QuadForm& f, const IntMatrix& t) {
  IntMatrix m = gram_matrix(f);
  return t.transpose() * m * t == m;
}

struct AutomorphismGroup {
  Natural order = 0;
  std::vector<IntMatrix> matrices;  // sorted
};

/// O(f) = { T : T^t M T = M }. Column i of T ranges over vectors of norm
/// M_ii whose inner products with the earlier columns match M.
inline AutomorphismGroup automorphisms(const QuadForm& f, Natural max_candidates = 1'000'000) {
  const int n = f.rank();
  if (n > 4) throw ResourceLimit("automorphisms: rank above 4 not supported");
  std::vector<RepSet> candidates;
  Natural total = 0;
  for (int i = 0; i < n; ++i) {
    candidates.push_back(representations(f, static_cast<Natural>(f.entry(i, i))));
    total += candidates.back().size();
    if (total > max_candidates) throw ResourceLimit("automorphisms: too many candidate images");
  }
  AutomorphismGroup group;
  std::vector<const std::vector<Integer>*> columns(n, nullptr);
  auto extend = [&](auto& self, int i) -> void {
    if (i == n) {
      IntMatrix t{n, std::vector<Integer>(static_cast<std::size_t>(n * n))};
      for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) t(r, c) = (*columns[c])[r];
      group.matrices.push_back(std::move(t));
      return;
    }
    for (const auto& v : candidates[i].vectors) {
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) ok = f.bilinear(v, *columns[j]) == f.entry(i, j);
      if (!ok) continue;
      columns[i] = &v;
      self(self, i + 1);
    }
  };
  extend(extend, 0);
  std::sort(group.matrices.begin(), group.matrices.end());
  group.order = group.matrices.size();
  return group;
}

}  // namespace rsq
