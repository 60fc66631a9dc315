#pragma once

// Catalog of the quadratic identities behind the constructive arguments, and
// the integer transforms built from them. Every transform re-checks its output
// against the quadratic form value it claims to preserve.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rsq/arith.hpp"
#include "rsq/errors.hpp"
#include "rsq/polynomial.hpp"

namespace rsq {

/// Replace `variable` by `value` before comparing both sides.
struct Substitution {
  std::string variable;
  Polynomial value;
};

struct IdentityRecord {
  std::string name;
  std::vector<std::string> variables;
  Polynomial lhs;
  Polynomial rhs;
  std::vector<Substitution> substitutions;
};

/// True iff lhs - rhs expands to zero once the substitutions are applied in
/// order. A substitution whose value mentions its own variable cannot be
/// eliminated and is rejected.
inline bool verify_identity(const IdentityRecord& record) {
  PolynomialRing ring(record.variables);
  if (record.lhs.variables() != record.variables.size() || record.rhs.variables() != record.variables.size())
    throw std::invalid_argument("identity " + record.name + ": polynomial ring mismatch");
  Polynomial diff = record.lhs - record.rhs;
  for (const auto& s : record.substitutions) {
    const std::size_t index = ring.index(s.variable);
    if (s.value.depends_on(index))
      throw std::invalid_argument("identity " + record.name + ": substitution for " + s.variable +
                                  " is not eliminable");
    diff = diff.substitute(index, s.value);
  }
  return diff.is_zero();
}

/// (x_t, y_t) with x^2 + 2y^2 = 9^t and 3 not dividing xy; smallest y first.
inline std::pair<Integer, Integer> xy_for_power(unsigned t) {
  if (t == 0 || t > 19) throw std::invalid_argument("xy_for_power: t must be in 1..19");
  const Natural target = ipow(9, t);
  for (Natural y = 1; 2 * y * y < target; ++y) {
    if (y % 3 == 0) continue;
    const Natural rest = target - 2 * y * y;
    const Natural x = isqrt(rest);
    if (x * x == rest && x % 3 != 0) return {static_cast<Integer>(x), static_cast<Integer>(y)};
  }
  throw VerificationFailure("xy_for_power: no solution for t = " + std::to_string(t));
}

namespace detail {

inline IdentityRecord record(std::string name, const PolynomialRing& ring, Polynomial lhs, Polynomial rhs,
                             std::vector<Substitution> subs = {}) {
  return {std::move(name), ring.names(), std::move(lhs), std::move(rhs), std::move(subs)};
}

inline Polynomial sq(const Polynomial& p) { return p * p; }

// a^2 + (-a + s b)^2 + (s c)^2 = (a + (x-s)/2 b + y c)^2 + (-a + (x+s)/2 b + y c)^2
//   + (y b - x c)^2 and the same with y -> -y, whenever x^2 + 2y^2 = s^2.
inline std::vector<IdentityRecord> descent_records(unsigned t) {
  PolynomialRing ring({"a", "b", "c"});
  auto a = ring["a"], b = ring["b"], c = ring["c"];
  const auto [x, y] = xy_for_power(t);
  const auto s = static_cast<long long>(ipow(3, t));
  const long long lo = (x - s) / 2, hi = (x + s) / 2;
  Polynomial lhs = sq(a) + sq(-a + s * b) + sq(s * c);
  std::vector<IdentityRecord> out;
  out.push_back(record("descent-3^" + std::to_string(t) + "-plus", ring, lhs,
                       sq(a + lo * b + y * c) + sq(-a + hi * b + y * c) + sq(y * b - x * c)));
  out.push_back(record("descent-3^" + std::to_string(t) + "-minus", ring, lhs,
                       sq(a + lo * b - y * c) + sq(-a + hi * b - y * c) + sq(y * b + x * c)));
  return out;
}

}  // namespace detail

/// Every identity used by the constructive routines.
inline std::vector<IdentityRecord> identity_catalog() {
  using detail::record;
  using detail::sq;
  std::vector<IdentityRecord> out;

  {
    PolynomialRing r({"c", "d"});
    auto c = r["c"], d = r["d"];
    out.push_back(record("five-times-sum-of-two-plus", r, 5 * (sq(c) + sq(d)), sq(2 * c + d) + sq(c - 2 * d)));
    out.push_back(record("five-times-sum-of-two-minus", r, 5 * (sq(c) + sq(d)), sq(2 * c - d) + sq(c + 2 * d)));
  }
  {
    PolynomialRing r({"x", "y", "z", "u", "v"});
    auto x = r["x"], y = r["y"], z = r["z"], u = r["u"], v = r["v"];
    Polynomial lhs = (sq(u) + 5 * sq(v)) * sq(x) + sq(y) + 5 * sq(z);
    out.push_back(record("unit-split-plus", r, lhs, sq(v * x + 2 * z) + sq(2 * v * x - z) + sq(u * x) + sq(y)));
    out.push_back(record("unit-split-minus", r, lhs, sq(v * x - 2 * z) + sq(2 * v * x + z) + sq(u * x) + sq(y)));
  }
  {
    PolynomialRing r({"x1", "x2", "x3", "s1", "s2"});
    auto x1 = r["x1"], x2 = r["x2"], x3 = r["x3"], s1 = r["s1"], s2 = r["s2"];
    out.push_back(record("ternary-lift", r, sq(x1) + sq(x2) + (sq(s1) + sq(s2)) * sq(x3),
                         sq(x1) + sq(x2) + sq(s1 * x3) + sq(s2 * x3)));
  }
  {
    PolynomialRing r({"x", "y", "z"});
    auto x = r["x"], y = r["y"], z = r["z"];
    out.push_back(record("ternary-lift-<1,1,2>", r, sq(x) + sq(y) + 2 * sq(z), sq(x) + sq(y) + sq(z) + sq(z)));
    out.push_back(record("ternary-lift-<1,1,5>", r, sq(x) + sq(y) + 5 * sq(z), sq(x) + sq(y) + sq(z) + sq(2 * z)));
    out.push_back(record("ternary-lift-<1,1,10>", r, sq(x) + sq(y) + 10 * sq(z), sq(x) + sq(y) + sq(z) + sq(3 * z)));
  }
  {
    PolynomialRing r({"a", "b", "c", "b1", "c1"});
    auto a = r["a"], b = r["b"], c = r["c"], b1 = r["b1"], c1 = r["c1"];
    Polynomial partner = 2 * sq(a) + 2 * sq(b) + 2 * b * c + 3 * sq(c);
    std::vector<Substitution> subs = {{"b", 3 * b1 + a}, {"c", 3 * c1 + 2 * a}};
    out.push_back(record("partner-expansion-(1,1,-1)", r, partner,
                         20 * sq(a) + 18 * sq(b1) + 27 * sq(c1) + 24 * a * b1 + 42 * a * c1 + 18 * b1 * c1, subs));
    out.push_back(record("partner-lift-(1,1,-1)", r, partner,
                         sq(a + 3 * b1 - c1) + sq(3 * a + 3 * b1 + 4 * c1) + 10 * sq(a + c1), subs));
  }
  {
    PolynomialRing r({"a", "b", "c", "a1", "c1"});
    auto a = r["a"], b = r["b"], c = r["c"], a1 = r["a1"], c1 = r["c1"];
    out.push_back(record("partner-lift-(0,1,0)", r, 2 * sq(a) + 2 * sq(b) + 2 * b * c + 3 * sq(c),
                         sq(2 * a1 + b - c1) + sq(-2 * a1 + b + 4 * c1) + 10 * sq(a1 + c1),
                         {{"a", 3 * a1}, {"c", 3 * c1}}));
  }
  {
    PolynomialRing r({"a", "b", "c", "b1", "c1"});
    auto a = r["a"], b = r["b"], c = r["c"], b1 = r["b1"], c1 = r["c1"];
    out.push_back(record("partner-lift-(1,0,1)", r, 2 * sq(a) + 2 * sq(b) + 2 * b * c + 3 * sq(c),
                         sq(2 * a + 3 * b1 + 4 * c1) + sq(a - 3 * b1 + c1) + 10 * sq(c1),
                         {{"b", 3 * b1}, {"c", a + 3 * c1}}));
  }
  {
    PolynomialRing r({"a", "b", "c"});
    auto a = r["a"], b = r["b"], c = r["c"];
    Polynomial lhs = 3 * (sq(a) + sq(b) + sq(c));
    out.push_back(record("euler-four-square-1", r, lhs, sq(a - b - c) + sq(a + b) + sq(a + c) + sq(b - c)));
    out.push_back(record("euler-four-square-2", r, lhs, sq(a + b + c) + sq(a - b) + sq(a - c) + sq(b - c)));
    out.push_back(record("euler-four-square-3", r, lhs, sq(a + b - c) + sq(a - b) + sq(a + c) + sq(b + c)));
    out.push_back(record("euler-four-square-4", r, lhs, sq(a - b + c) + sq(a + b) + sq(a - c) + sq(b + c)));
  }
  {
    PolynomialRing r({"a", "b", "c", "m"});
    auto a = r["a"], b = r["b"], c = r["c"], m = r["m"];
    out.push_back(record("reflection", r, sq(a) + sq(b) + sq(c), sq(2 * m - a) + sq(2 * m - b) + sq(2 * m - c),
                         {{"c", 3 * m - a - b}}));
    out.push_back(record("reflection-scaled", r, sq(3 * a) + sq(3 * b) + sq(3 * c),
                         sq(2 * m - 3 * a) + sq(2 * m - 3 * b) + sq(2 * m - 3 * c), {{"m", a + b + c}}));
  }
  {
    PolynomialRing r({"a", "b1", "c1"});
    auto a = r["a"], b1 = r["b1"], c1 = r["c1"];
    Polynomial lhs = sq(a) + sq(-a + 3 * b1) + sq(3 * c1);
    out.push_back(
        record("descent-3-display-plus", r, lhs, sq(a - 2 * b1 + 2 * c1) + sq(-a + b1 + 2 * c1) + sq(-2 * b1 - c1)));
    out.push_back(
        record("descent-3-display-minus", r, lhs, sq(a - 2 * b1 - 2 * c1) + sq(-a + b1 - 2 * c1) + sq(-2 * b1 + c1)));
  }
  for (unsigned t = 1; t <= 6; ++t)
    for (auto& rec : detail::descent_records(t)) out.push_back(std::move(rec));
  return out;
}

// ---------------------------------------------------------------------------
// Transforms on integer tuples.

struct SignAdjusted {
  Integer a, b, c;
  Integer m;  // (a + b + c) / 3
};

/// Chooses signs (first match in the order +++, ++-, +-+, +--, -++, ...) so
/// that a + b + c = 3m and, if requested, a != 2b, 2a != b, a != -b mod p.
inline std::optional<SignAdjusted> sign_adjust_three(Natural n_target, Integer a, Integer b, Integer c, Natural p,
                                                     bool require_nonequivalences = false) {
  const __int128 value = static_cast<__int128>(a) * a + static_cast<__int128>(b) * b + static_cast<__int128>(c) * c;
  if (value != static_cast<__int128>(n_target))
    throw std::invalid_argument("sign_adjust_three: a^2 + b^2 + c^2 differs from the target");
  const auto P = static_cast<Integer>(p);
  auto zero_mod_p = [P](Integer v) { return v % P == 0; };
  for (int mask = 0; mask < 8; ++mask) {
    const Integer sa = (mask & 4) ? -a : a;
    const Integer sb = (mask & 2) ? -b : b;
    const Integer sc = (mask & 1) ? -c : c;
    const Integer sum = sa + sb + sc;
    if (sum % 3 != 0) continue;
    if (require_nonequivalences &&
        (zero_mod_p(sa - 2 * sb) || zero_mod_p(2 * sa - sb) || zero_mod_p(sa + sb)))
      continue;
    return SignAdjusted{sa, sb, sc, sum / 3};
  }
  return std::nullopt;
}

struct DescentResult {
  Natural value;  // a^2 + (-a + 3^t b)^2 + (3^t c)^2
  std::array<Integer, 3> plus;
  std::array<Integer, 3> minus;
};

/// Both rewritings of a^2 + (-a + 3^t b)^2 + (3^t c)^2 for the supplied
/// (x, y); throws VerificationFailure when either misses the value.
inline DescentResult descent_step_with(Integer a, Integer b, Integer c, unsigned t, Integer x, Integer y) {
  const auto s = static_cast<__int128>(ipow(3, t));
  if ((x - s) % 2 != 0) throw VerificationFailure("descent_step: x_t - 3^t is odd");
  const __int128 lo = (x - s) / 2, hi = (x + s) / 2;
  auto sum3 = [](const std::array<__int128, 3>& v) { return v[0] * v[0] + v[1] * v[1] + v[2] * v[2]; };
  const std::array<__int128, 3> original = {a, -a + s * b, s * c};
  const std::array<__int128, 3> plus = {a + lo * b + y * c, -a + hi * b + y * c, y * b - static_cast<__int128>(x) * c};
  const std::array<__int128, 3> minus = {a + lo * b - y * c, -a + hi * b - y * c, y * b + static_cast<__int128>(x) * c};
  const __int128 value = sum3(original);
  if (sum3(plus) != value || sum3(minus) != value)
    throw VerificationFailure("descent_step: rewritten triple does not preserve the sum of squares");
  auto narrow = [](const std::array<__int128, 3>& v) {
    return std::array<Integer, 3>{static_cast<Integer>(v[0]), static_cast<Integer>(v[1]), static_cast<Integer>(v[2])};
  };
  return {static_cast<Natural>(value), narrow(plus), narrow(minus)};
}

inline DescentResult descent_step(Integer a, Integer b, Integer c, unsigned t) {
  const auto [x, y] = xy_for_power(t);
  return descent_step_with(a, b, c, t, x, y);
}

/// 2b^2 + 2bc + 3c^2, the binary part of the partner form.
inline Integer partner_binary(Integer b, Integer c) { return 2 * b * b + 2 * b * c + 3 * c * c; }

/// 2a^2 + 2b^2 + 2bc + 3c^2.
inline Integer partner_value(Integer a, Integer b, Integer c) { return 2 * a * a + partner_binary(b, c); }

struct PrimitiveBinary {
  enum class Status { Found, AlreadyPrimitive, Impossible };
  Status status;
  Integer d = 0;
  Integer e = 0;
};

/// (d, e) with 2d^2 + 2de + 3e^2 = 2b^2 + 2bc + 3c^2 and 3 not dividing both.
/// Searched over |d|, |e| <= sqrt(value) + 1 ordered by |e|, then |d|,
/// positive before negative.
inline PrimitiveBinary three_primitive_binary(Integer b, Integer c) {
  if (b == 0 && c == 0) throw std::invalid_argument("three_primitive_binary: (b, c) must be nonzero");
  if (b % 3 != 0 || c % 3 != 0) return {PrimitiveBinary::Status::AlreadyPrimitive, b, c};
  const Integer value = partner_binary(b, c);
  const auto bound = static_cast<Integer>(isqrt(static_cast<Natural>(value))) + 1;
  auto signed_sweep = [](Integer k) { return k == 0 ? std::vector<Integer>{0} : std::vector<Integer>{k, -k}; };
  for (Integer ae = 0; ae <= bound; ++ae)
    for (Integer e : signed_sweep(ae))
      for (Integer ad = 0; ad <= bound; ++ad)
        for (Integer d : signed_sweep(ad))
          if ((d % 3 != 0 || e % 3 != 0) && partner_binary(d, e) == value)
            return {PrimitiveBinary::Status::Found, d, e};
  return {PrimitiveBinary::Status::Impossible, 0, 0};
}

struct LiftResult {
  std::optional<std::array<Integer, 3>> xyz;  // x^2 + y^2 + 10z^2 = value
  Integer value = 0;
  std::string route;
  std::vector<std::string> trace;
};

namespace detail {

inline Integer mod3(Integer v) { return ((v % 3) + 3) % 3; }

// The three rational isometries onto <1,1,10>, applied where the residues of
// (a, b, c) mod 3 make them integral.
inline std::optional<std::array<Integer, 3>> partner_substitution(Integer a, Integer b, Integer c, std::string& name) {
  const std::array<Integer, 3> r = {mod3(a), mod3(b), mod3(c)};
  if (r == std::array<Integer, 3>{0, 1, 0} || r == std::array<Integer, 3>{1, 1, 2}) {
    name = r[0] == 0 ? "partner-lift-(0,1,0)" : "partner-lift-(1,1,-1)";
    return std::array<Integer, 3>{(2 * a + 3 * b - c) / 3, (-2 * a + 3 * b + 4 * c) / 3, (a + c) / 3};
  }
  if (r == std::array<Integer, 3>{1, 0, 1}) {
    name = "partner-lift-(1,0,1)";
    return std::array<Integer, 3>{(2 * a + 3 * b + 4 * c) / 3, (2 * a - 3 * b + c) / 3, (c - a) / 3};
  }
  return std::nullopt;
}

}  // namespace detail

/// Rewrites a value of the partner form 2a^2 + 2b^2 + 2bc + 3c^2 as
/// x^2 + y^2 + 10z^2.
inline LiftResult ramatec_lift(Integer a, Integer b, Integer c) {
  LiftResult out;
  out.value = partner_value(a, b, c);
  auto finish = [&](std::array<Integer, 3> xyz, std::string route) {
    if (xyz[0] * xyz[0] + xyz[1] * xyz[1] + 10 * xyz[2] * xyz[2] != out.value)
      throw VerificationFailure("ramatec_lift: " + route + " produced a wrong value");
    out.xyz = xyz;
    out.route = std::move(route);
    return out;
  };
  if (b == 0 && c == 0) return finish({a, a, 0}, "double-square");

  // Sign normalisation preserving the value: a -> -a, (b, c) -> (-b, -c).
  if (detail::mod3(a) == 2) {
    a = -a;
    out.trace.push_back("negate a");
  }
  const std::array<Integer, 2> bc = {detail::mod3(b), detail::mod3(c)};
  if (bc == std::array<Integer, 2>{2, 0} || bc == std::array<Integer, 2>{0, 2} || bc == std::array<Integer, 2>{2, 1}) {
    b = -b;
    c = -c;
    out.trace.push_back("negate (b, c)");
  }

  if (detail::mod3(a) == 1 && detail::mod3(b) == 0 && detail::mod3(c) == 0) {
    const auto prim = three_primitive_binary(b, c);
    if (prim.status == PrimitiveBinary::Status::Found) {
      out.trace.push_back("3-primitive (b, c) = (" + std::to_string(prim.d) + ", " + std::to_string(prim.e) + ")");
      b = prim.d;
      c = prim.e;
      const std::array<Integer, 2> r = {detail::mod3(b), detail::mod3(c)};
      if (r == std::array<Integer, 2>{2, 0} || r == std::array<Integer, 2>{0, 2} || r == std::array<Integer, 2>{2, 1}) {
        b = -b;
        c = -c;
        out.trace.push_back("negate (b, c)");
      }
    } else {
      out.trace.push_back("3-primitive search failed");
    }
  }

  std::string name;
  if (auto xyz = detail::partner_substitution(a, b, c, name)) {
    out.trace.push_back(name);
    return finish(*xyz, name);
  }

  // Residue classes outside the substitution table: bounded direct search.
  const Integer n = out.value;
  for (Integer z = 0; 10 * z * z <= n; ++z)
    for (Integer x = 0; x * x + 10 * z * z <= n; ++x) {
      const Integer rest = n - x * x - 10 * z * z;
      const auto y = static_cast<Integer>(isqrt(static_cast<Natural>(rest)));
      if (y * y == rest) {
        out.trace.push_back("direct search");
        return finish({x, y, z}, "search");
      }
    }
  out.route = "unhandled";
  return out;
}

}  // namespace rsq
