#pragma once

// Truncated power series in q with exact coefficients.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rsq/arith.hpp"
#include "rsq/rational.hpp"

namespace rsq {

/// Coefficients of q^0 .. q^precision; nothing beyond precision is known.
template <class Coeff = BigInt>
class QSeries {
 public:
  explicit QSeries(Natural precision) : c_(precision + 1, Coeff(0)) {}
  explicit QSeries(std::vector<Coeff> coefficients) : c_(std::move(coefficients)) {
    if (c_.empty()) throw std::invalid_argument("QSeries: no coefficients");
  }

  static QSeries one(Natural precision) {
    QSeries s(precision);
    s.c_[0] = 1;
    return s;
  }

  Natural precision() const { return c_.size() - 1; }

  const Coeff& operator[](Natural i) const { return c_.at(i); }
  Coeff& operator[](Natural i) { return c_.at(i); }

  const std::vector<Coeff>& coefficients() const { return c_; }

  /// Same series known only up to a lower precision.
  QSeries truncated(Natural precision) const {
    if (precision > this->precision()) throw std::invalid_argument("QSeries: cannot raise precision");
    return QSeries(std::vector<Coeff>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(precision) + 1));
  }

  /// q^k * this, keeping the same precision.
  QSeries shifted(Natural k) const {
    QSeries s(precision());
    for (Natural i = k; i <= precision(); ++i) s.c_[i] = c_[i - k];
    return s;
  }

  friend QSeries operator+(const QSeries& a, const QSeries& b) {
    const Natural prec = std::min(a.precision(), b.precision());
    QSeries s(prec);
    for (Natural i = 0; i <= prec; ++i) s.c_[i] = a.c_[i] + b.c_[i];
    return s;
  }

  friend QSeries operator-(const QSeries& a, const QSeries& b) {
    const Natural prec = std::min(a.precision(), b.precision());
    QSeries s(prec);
    for (Natural i = 0; i <= prec; ++i) s.c_[i] = a.c_[i] - b.c_[i];
    return s;
  }

  /// Product truncated to the smaller precision. Zero coefficients of a are
  /// skipped, which makes sparse left operands cheap.
  friend QSeries operator*(const QSeries& a, const QSeries& b) {
    const Natural prec = std::min(a.precision(), b.precision());
    QSeries s(prec);
    for (Natural i = 0; i <= prec; ++i) {
      if (a.c_[i] == 0) continue;
      for (Natural j = 0; i + j <= prec; ++j) s.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return s;
  }

  friend bool operator==(const QSeries&, const QSeries&) = default;

 private:
  std::vector<Coeff> c_;
};

/// prod_{n >= 1} (1 - q^(d n)) to the given precision, from the pentagonal
/// number theorem: sum_k (-1)^k q^(d k(3k-1)/2) over all integers k.
template <class Coeff = BigInt>
QSeries<Coeff> euler_product(Natural dilation, Natural precision) {
  if (dilation == 0) throw std::invalid_argument("euler_product: dilation must be positive");
  QSeries<Coeff> s(precision);
  s[0] = 1;
  for (Natural k = 1;; ++k) {
    const Natural e1 = dilation * (k * (3 * k - 1) / 2);
    const Natural e2 = dilation * (k * (3 * k + 1) / 2);
    if (e1 > precision) break;
    const int sign = k % 2 == 0 ? 1 : -1;
    s[e1] += sign;
    if (e2 <= precision) s[e2] += sign;
  }
  return s;
}

}  // namespace rsq
