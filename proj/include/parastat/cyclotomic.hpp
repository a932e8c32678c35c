#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace parastat {

/// Element of the cyclotomic ring Z[w], w = exp(2 pi i / order). Stored in
/// canonical form: integer coefficients of 1, w, ..., w^(phi(order)-1), i.e.
/// reduced modulo the order-th cyclotomic polynomial, so equality of values
/// is equality of coefficient vectors.
class CyclotomicInt {
 public:
  explicit CyclotomicInt(int order = 1);

  static CyclotomicInt zero(int order) { return CyclotomicInt(order); }
  static CyclotomicInt integer(int order, std::int64_t value);
  /// w^k (k taken modulo order).
  static CyclotomicInt root(int order, std::int64_t k);

  int order() const noexcept { return order_; }
  const std::vector<std::int64_t>& coefficients() const noexcept { return coeffs_; }
  bool is_zero() const;
  std::complex<double> to_complex() const;

  CyclotomicInt& operator+=(const CyclotomicInt& o);
  CyclotomicInt& operator-=(const CyclotomicInt& o);
  CyclotomicInt& operator*=(std::int64_t s);
  /// Adds s * w^k.
  void add_root(std::int64_t k, std::int64_t s = 1);

  friend CyclotomicInt operator+(CyclotomicInt a, const CyclotomicInt& b) { return a += b; }
  friend CyclotomicInt operator-(CyclotomicInt a, const CyclotomicInt& b) { return a -= b; }
  friend CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b);
  friend CyclotomicInt operator*(CyclotomicInt a, std::int64_t s) { return a *= s; }
  bool operator==(const CyclotomicInt& o) const = default;

  /// e.g. "1 + 2*w^3" (w a primitive order-th root)
  std::string to_string() const;

 private:
  void reduce(std::vector<std::int64_t> full);

  int order_;
  std::vector<std::int64_t> coeffs_;
};

/// Integer coefficients of the n-th cyclotomic polynomial (lowest degree first).
const std::vector<std::int64_t>& cyclotomic_polynomial(int n);

}  // namespace parastat
