#pragma once

// Sparse multivariate polynomials with big-integer coefficients, enough to
// expand and compare the quadratic identities in the catalog.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsq/rational.hpp"

namespace rsq {

class Polynomial {
 public:
  using Monomial = std::vector<unsigned>;

  explicit Polynomial(std::size_t variables = 0) : variables_(variables) {}

  static Polynomial constant(std::size_t variables, const BigInt& c) {
    Polynomial p(variables);
    if (c != 0) p.terms_[Monomial(variables, 0)] = c;
    return p;
  }

  static Polynomial variable(std::size_t variables, std::size_t index) {
    if (index >= variables) throw std::out_of_range("Polynomial: variable index out of range");
    Polynomial p(variables);
    Monomial m(variables, 0);
    m[index] = 1;
    p.terms_[m] = 1;
    return p;
  }

  std::size_t variables() const { return variables_; }
  const std::map<Monomial, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool depends_on(std::size_t index) const {
    for (const auto& [m, c] : terms_)
      if (m[index] != 0) return true;
    return false;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a) { return Polynomial(a.variables_) - a; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check(b);
    Polynomial r(a.variables_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m(ma);
        for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
        r.add_term(m, ca * cb);
      }
    return r;
  }

  friend Polynomial operator*(const BigInt& k, const Polynomial& a) { return constant(a.variables_, k) * a; }
  friend Polynomial operator*(long long k, const Polynomial& a) { return BigInt(k) * a; }
  friend Polynomial operator+(const Polynomial& a, long long k) { return a + constant(a.variables_, k); }
  friend Polynomial operator-(const Polynomial& a, long long k) { return a - constant(a.variables_, k); }

  Polynomial pow(unsigned e) const {
    Polynomial r = constant(variables_, 1);
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  /// Replaces the variable by the given polynomial and expands.
  Polynomial substitute(std::size_t index, const Polynomial& value) const {
    check(value);
    Polynomial r(variables_);
    for (const auto& [m, c] : terms_) {
      Monomial rest(m);
      rest[index] = 0;
      Polynomial term(variables_);
      term.terms_[rest] = c;
      r += term * value.pow(m[index]);
    }
    return r;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void check(const Polynomial& o) const {
    if (o.variables_ != variables_) throw std::invalid_argument("Polynomial: variable count mismatch");
  }

  void add_term(const Monomial& m, const BigInt& c) {
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) it->second += c;
    if (it->second == 0) terms_.erase(it);
  }

  std::size_t variables_;
  std::map<Monomial, BigInt> terms_;
};

/// Named variables of one polynomial ring.
class PolynomialRing {
 public:
  explicit PolynomialRing(std::vector<std::string> names) : names_(std::move(names)) {}

  Polynomial operator[](const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return Polynomial::variable(names_.size(), i);
    throw std::out_of_range("PolynomialRing: unknown variable " + name);
  }
  std::size_t index(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    throw std::out_of_range("PolynomialRing: unknown variable " + name);
  }
  Polynomial constant(long long c) const { return Polynomial::constant(names_.size(), c); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
};

}  // namespace rsq
