#pragma once

// Named verification suites shared by the command-line `verify` command.
// Each suite returns one CheckResult per check so that callers can print
// PASS/FAIL lines and derive an exit status.

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rsq/arith.hpp"
#include "rsq/genus.hpp"
#include "rsq/identities.hpp"
#include "rsq/localdensity.hpp"
#include "rsq/modforms.hpp"
#include "rsq/quadform.hpp"
#include "rsq/restricted.hpp"

namespace rsq {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

inline bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

struct SuiteOptions {
  Natural scan_limit = 100'000;
  unsigned jobs = 1;
  std::uint32_t seed = 20240611;
  Natural random_trials = 10'000;
};

namespace detail {

inline std::string join(const std::vector<Natural>& xs, std::size_t limit = 10) {
  std::ostringstream out;
  for (std::size_t i = 0; i < xs.size() && i < limit; ++i) out << (i ? "," : "") << xs[i];
  if (xs.size() > limit) out << ",...";
  return out.str();
}

inline std::vector<Natural> values_with_min_k(const ScanReport& report, unsigned k) {
  std::vector<Natural> out;
  for (const auto& row : report.rows)
    if (row.min_k() == k) out.push_back(row.n);
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------

/// Integer scans for S(2), S(3), S(5) and S(p) = 4.
inline std::vector<CheckResult> restricted_suite(const SuiteOptions& opt = {}) {
  std::vector<CheckResult> out;
  const Natural hi = opt.scan_limit;
  const std::string range = "[1," + std::to_string(hi) + "]";

  {
    const auto r = sp_scan(5, 1, hi, 8, opt.jobs);
    const bool ok = r.max_k == (hi >= 79 ? 5u : 4u) && r.unresolved == 0 && r.unexpected().empty() &&
                    r.exceptions.size() == (hi >= 79 ? 1u : 0u);
    out.push_back({"scan p=5 " + range + ": only 79 needs 5", ok,
                   "max_k=" + std::to_string(r.max_k) + " exceptions=" + std::to_string(r.exceptions.size())});
  }
  {
    const auto r = sp_scan(2, 1, hi, 12, opt.jobs);
    const auto tens = detail::values_with_min_k(r, 10);
    const bool shape = std::all_of(tens.begin(), tens.end(),
                                   [](Natural n) { return n % 8 == 2 && !is_sum_two_squares(n); });
    out.push_back({"scan p=2 " + range + ": max 10, all such n = 2 mod 8 and not two squares",
                   r.max_k == 10 && r.unresolved == 0 && shape,
                   "max_k=" + std::to_string(r.max_k) + " count(10)=" + std::to_string(tens.size())});
  }
  {
    const auto r = sp_scan(3, 1, hi, 8, opt.jobs);
    const auto sixes = detail::values_with_min_k(r, 6);
    const bool shape = std::all_of(sixes.begin(), sixes.end(),
                                   [](Natural n) { return n % 3 == 0 && !is_sum_three_squares(n); });
    out.push_back({"scan p=3 " + range + ": max 6, all such n = 0 mod 3 and not three squares",
                   r.max_k == 6 && r.unresolved == 0 && shape,
                   "max_k=" + std::to_string(r.max_k) + " count(6)=" + std::to_string(sixes.size())});
  }
  for (Natural p : {7, 11, 13, 17}) {
    const auto r = sp_scan(p, 1, hi, 8, opt.jobs);
    const auto fours = detail::values_with_min_k(r, 4);
    const bool seven_mod_8 = std::any_of(fours.begin(), fours.end(), [](Natural n) { return n % 8 == 7; });
    out.push_back({"scan p=" + std::to_string(p) + " " + range + ": max 4, attained at some n = 7 mod 8",
                   r.max_k == 4 && r.exceptions.empty() && seven_mod_8,
                   "max_k=" + std::to_string(r.max_k) + " exceptions=" + detail::join([&] {
                     std::vector<Natural> ns;
                     for (const auto& e : r.exceptions) ns.push_back(e.n);
                     return ns;
                   }())});
  }
  {
    const auto none = restricted_decompose(79, 5, 4);
    const auto five = restricted_decompose(79, 5, 5);
    const bool ok = !none && five && five->parts() == std::vector<Natural>{8, 3, 2, 1, 1};
    out.push_back({"79 with 4 and 5 squares prime to 5", ok, ""});
  }
  return out;
}

// ---------------------------------------------------------------------------

/// Isometry orders, the genus identity for <1,1,10>, and x^2+y^2+10z^2
/// representing every n = 5 mod 6.
inline std::vector<CheckResult> quadform_suite(const SuiteOptions& opt = {}) {
  std::vector<CheckResult> out;
  struct Expected {
    QuadForm form;
    Natural order;
  };
  for (const auto& [form, order] : {Expected{QuadForm::identity(3), 48}, Expected{QuadForm::diagonal({1, 1, 5}), 16},
                                    Expected{ramanujan_form(), 16}, Expected{ramanujan_partner(), 8}}) {
    const Natural got = automorphisms(form).order;
    out.push_back({"o(" + form.to_string() + ") = " + std::to_string(order), got == order,
                   "computed " + std::to_string(got)});
  }

  {
    const Natural bound = 2000;
    const auto& entry = genus_entry("<1,1,10>");
    const auto rf = theta_counts(ramanujan_form(), bound);
    const auto rg = theta_counts(ramanujan_partner(), bound);
    std::vector<Natural> bad;
    for (Natural n = 0; n <= bound; ++n)
      if (3 * mass_weighted_count(entry, n) != Rational(rf[n] + 2 * rg[n])) bad.push_back(n);
    out.push_back({"3 r(n, gen) = r(n, f) + 2 r(n, f') for n <= 2000", bad.empty(), detail::join(bad)});
  }

  {
    const Natural bound = opt.scan_limit;
    std::vector<char> hit(bound + 1, 0);
    for_each_vector_up_to(ramanujan_form(), bound, [&](std::span<const Integer>, Natural v) { hit[v] = 1; });
    std::vector<Natural> missing;
    for (Natural n = 5; n <= bound; n += 6)
      if (!hit[n]) missing.push_back(n);
    out.push_back({"x^2+y^2+10z^2 represents every n = 5 mod 6 up to " + std::to_string(bound), missing.empty(),
                   detail::join(missing)});
  }
  return out;
}

// ---------------------------------------------------------------------------

/// r(p^2 n, f) / r(n, f) against the closed-form ratio for class-number-one
/// ternaries and the genus of <1,1,10>.
inline std::vector<CheckResult> density_suite(const SuiteOptions& = {}) {
  std::vector<CheckResult> out;
  const Natural bound = 20'000;
  for (const auto& f : {QuadForm::identity(3), QuadForm::diagonal({1, 1, 5}), QuadForm::diagonal({1, 1, 2})}) {
    const auto r = theta_counts(f, bound);
    const Integer df = f.discriminant();
    std::size_t checked = 0;
    std::vector<Natural> bad;
    for (Natural p : {5, 7, 11, 13}) {
      if ((2 * static_cast<Natural>(df)) % p == 0) continue;
      for (Natural n = 1; p * p * n <= bound; ++n) {
        if (r[n] == 0) continue;
        ++checked;
        const Rational ratio = genus_ratio(n, p, df);
        if (Rational(r[p * p * n], r[n]) != ratio || ratio <= 1) bad.push_back(p * 100000 + n);
      }
    }
    out.push_back({"ratio r(p^2 n)/r(n) for " + f.to_string(), bad.empty() && checked > 0,
                   std::to_string(checked) + " cases; failures " + detail::join(bad)});
  }
  {
    const auto rf = theta_counts(ramanujan_form(), bound);
    const auto rg = theta_counts(ramanujan_partner(), bound);
    std::size_t checked = 0;
    std::vector<Natural> bad;
    for (Natural p : {3, 7, 11, 13}) {
      for (Natural n = 1; p * p * n <= bound; ++n) {
        const Natural small = rf[n] + 2 * rg[n];
        if (small == 0) continue;
        ++checked;
        if (Rational(rf[p * p * n] + 2 * rg[p * p * n], small) != genus_ratio(n, p, 10)) bad.push_back(n);
      }
    }
    out.push_back({"genus-averaged ratio for <1,1,10>", bad.empty(), std::to_string(checked) + " cases"});
  }
  return out;
}

// ---------------------------------------------------------------------------

/// Eta product and theta difference expansions, Hecke relation, Deligne
/// bound and growth of r(p^2 n) for x^2 + y^2 + 10z^2.
inline std::vector<CheckResult> modforms_suite(const SuiteOptions& = {}) {
  std::vector<CheckResult> out;
  const auto eta = ramanujan_eta_product(500);
  {
    const std::vector<int> expected = {0, 1, 0, -2, 0, -1, 0, 2, 0, 1, 0, 0, 0, 2, 0, 2, 0, -6, 0, -4, 0, -4, 0, 6};
    bool ok = true;
    for (std::size_t i = 0; i < expected.size(); ++i) ok = ok && eta[i] == expected[i];
    out.push_back({"eta(2z)^2 eta(10z)^2 through q^23", ok, ""});
  }
  {
    const auto phi = theta_diff_phi(13);
    const std::vector<int> expected = {0, 1, 0, -1, 0, 0, 0, -1, 0, -1, 0, 0, 0, 2};
    bool ok = true;
    for (std::size_t i = 0; i < expected.size(); ++i) ok = ok && phi[i] == expected[i];
    out.push_back({"theta difference through q^13", ok, ""});
  }
  {
    const Natural N = 50;
    const auto phi = theta_diff_phi(13 * 13 * N);
    for (Natural p : {3, 7, 11, 13}) {
      const auto eigenvalue = eta[p].convert_to<Integer>();
      const auto report = hecke_check(phi, p, eigenvalue, N);
      out.push_back({"Hecke relation p=" + std::to_string(p) + " A=" + std::to_string(eigenvalue) + " n<=50",
                     report.all_hold, detail::join(report.failures)});
    }
  }
  {
    bool ok = true;
    std::vector<Natural> bad;
    for (Natural p : primes_up_to(500)) {
      if (p == 2 || p == 5) continue;
      if (eta[p] * eta[p] > BigInt(4 * p)) bad.push_back(p);
    }
    ok = bad.empty();
    out.push_back({"A(p)^2 <= 4p for p <= 500", ok, detail::join(bad)});
  }
  for (Natural p : {7, 11, 13}) {
    const Natural N = 20'000 / (p * p);
    const auto violations = ramanujan_growth_check(p, N);
    out.push_back({"r(p^2 n) > r(n) for x^2+y^2+10z^2, p=" + std::to_string(p) + " n<=" + std::to_string(N),
                   violations.empty(), detail::join(violations)});
  }
  {
    std::vector<Natural> bad;
    for (Natural p : {7, 11, 13, 19, 23})
      if (!growth_coefficients_positive(p, eta[p].convert_to<Integer>())) bad.push_back(p);
    out.push_back({"growth bound coefficients positive for p in {7,11,13,19,23}", bad.empty(), detail::join(bad)});
  }
  return out;
}

// ---------------------------------------------------------------------------

/// Every catalog identity, then randomized re-evaluation of each transform.
inline std::vector<CheckResult> identities_suite(const SuiteOptions& opt = {}) {
  std::vector<CheckResult> out;
  for (const auto& record : identity_catalog()) out.push_back({record.name, verify_identity(record), ""});

  std::mt19937 rng(opt.seed);
  auto uniform = [&](Integer lo, Integer hi) { return std::uniform_int_distribution<Integer>(lo, hi)(rng); };
  const Natural trials = opt.random_trials;

  {
    Natural bad = 0;
    for (Natural i = 0; i < trials; ++i) {
      const Integer a = uniform(-1000, 1000), b = uniform(-1000, 1000), c = uniform(-1000, 1000);
      const auto n = static_cast<Natural>(a * a + b * b + c * c);
      const auto s = sign_adjust_three(n, a, b, c, 7);
      // Signs can balance the residues mod 3 unless exactly one entry is prime to 3.
      const int units = (a % 3 != 0) + (b % 3 != 0) + (c % 3 != 0);
      if (!s) {
        if (units != 1) ++bad;
        continue;
      }
      if (s->a * s->a + s->b * s->b + s->c * s->c != static_cast<Integer>(n) || s->a + s->b + s->c != 3 * s->m)
        ++bad;
    }
    out.push_back({"random sign adjustments", bad == 0, std::to_string(bad) + " failures"});
  }
  {
    Natural bad = 0;
    for (Natural i = 0; i < trials; ++i) {
      const auto t = static_cast<unsigned>(uniform(1, 4));
      const Integer a = uniform(-1000, 1000), b = uniform(-1000, 1000), c = uniform(-1000, 1000);
      const auto s = static_cast<Integer>(ipow(3, t));
      const auto r = descent_step(a, b, c, t);
      const Integer value = a * a + (s * b - a) * (s * b - a) + s * s * c * c;
      auto norm = [](const std::array<Integer, 3>& v) { return v[0] * v[0] + v[1] * v[1] + v[2] * v[2]; };
      if (static_cast<Integer>(r.value) != value || norm(r.plus) != value || norm(r.minus) != value) ++bad;
    }
    out.push_back({"random 3^t descent steps", bad == 0, std::to_string(bad) + " failures"});
  }
  {
    Natural bad = 0;
    for (Natural i = 0; i < trials; ++i) {
      const Integer a = uniform(-30, 30), b = uniform(-30, 30), c = uniform(-30, 30);
      const auto lift = ramatec_lift(a, b, c);
      if (lift.xyz) {
        const auto& v = *lift.xyz;
        if (v[0] * v[0] + v[1] * v[1] + 10 * v[2] * v[2] != partner_value(a, b, c)) ++bad;
      } else if (is_represented(ramanujan_form(), static_cast<Natural>(lift.value))) {
        ++bad;
      }
    }
    out.push_back({"random lifts to x^2+y^2+10z^2", bad == 0, std::to_string(bad) + " failures"});
  }
  {
    Natural bad = 0;
    for (Natural i = 0; i < trials; ++i) {
      const Integer b = 3 * uniform(-20, 20), c = 3 * uniform(-20, 20);
      if (b == 0 && c == 0) continue;
      const auto r = three_primitive_binary(b, c);
      if (r.status != PrimitiveBinary::Status::Found || partner_binary(r.d, r.e) != partner_binary(b, c) ||
          (r.d % 3 == 0 && r.e % 3 == 0))
        ++bad;
    }
    out.push_back({"random 3-primitive rewrites", bad == 0, std::to_string(bad) + " failures"});
  }
  return out;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"identities", "quadform", "density", "modforms", "restricted"};
  return names;
}

/// Runs one named suite, or every suite for "all". Throws invalid_argument
/// for an unknown name.
inline std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& opt = {}) {
  if (name == "identities") return identities_suite(opt);
  if (name == "quadform") return quadform_suite(opt);
  if (name == "density") return density_suite(opt);
  if (name == "modforms") return modforms_suite(opt);
  if (name == "restricted") return restricted_suite(opt);
  if (name == "all") {
    std::vector<CheckResult> out;
    for (const auto& n : suite_names()) {
      auto part = run_suite(n, opt);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace rsq
