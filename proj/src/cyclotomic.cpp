#include "parastat/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "parastat/errors.hpp"

namespace parastat {
namespace {

using Poly = std::vector<std::int64_t>;

// exact division a / b for monic b with integer coefficients
Poly divide_exact(const Poly& a, const Poly& b) {
  Poly rem = a;
  const std::size_t db = b.size() - 1;
  if (rem.size() < b.size()) return {0};
  Poly q(rem.size() - db, 0);
  for (std::size_t i = rem.size(); i-- > db;) {
    const std::int64_t c = rem[i];
    if (c == 0) continue;
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] -= c * b[j];
  }
  return q;
}

}  // namespace

const std::vector<std::int64_t>& cyclotomic_polynomial(int n) {
  if (n < 1) throw ArgumentError("cyclotomic_polynomial: order must be positive");
  static std::recursive_mutex mu;
  static std::map<int, Poly> cache;  // node-based: references stay valid
  std::lock_guard<std::recursive_mutex> lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  // x^n - 1 = prod_{d | n} Phi_d(x)
  Poly p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) p = divide_exact(p, cyclotomic_polynomial(d));
  }
  return cache.emplace(n, std::move(p)).first->second;
}

CyclotomicInt::CyclotomicInt(int order) : order_(order) {
  if (order < 1) throw ArgumentError("CyclotomicInt: order must be positive");
  coeffs_.assign(cyclotomic_polynomial(order).size() - 1, 0);
}

CyclotomicInt CyclotomicInt::integer(int order, std::int64_t value) {
  CyclotomicInt c(order);
  c.coeffs_[0] = value;
  return c;
}

CyclotomicInt CyclotomicInt::root(int order, std::int64_t k) {
  CyclotomicInt c(order);
  c.add_root(k, 1);
  return c;
}

void CyclotomicInt::reduce(std::vector<std::int64_t> full) {
  const Poly& phi = cyclotomic_polynomial(order_);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = full.size(); i-- > deg;) {
    const std::int64_t c = full[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j) full[i - deg + j] -= c * phi[j];
  }
  full.resize(deg);
  for (std::size_t i = 0; i < deg; ++i) coeffs_[i] += full[i];
}

void CyclotomicInt::add_root(std::int64_t k, std::int64_t s) {
  std::int64_t e = k % order_;
  if (e < 0) e += order_;
  const std::size_t deg = coeffs_.size();
  if (static_cast<std::size_t>(e) < deg) {
    coeffs_[e] += s;
    return;
  }
  std::vector<std::int64_t> full(static_cast<std::size_t>(e) + 1, 0);
  full[e] = s;
  reduce(std::move(full));
}

bool CyclotomicInt::is_zero() const {
  for (auto c : coeffs_)
    if (c != 0) return false;
  return true;
}

namespace {

// exp(2 pi i k / order), exact on the quarter turns
std::complex<double> unit_root(std::size_t k, int order) {
  const std::size_t q = 4 * k;
  if (q % static_cast<std::size_t>(order) == 0) {
    static const std::complex<double> quarter[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return quarter[(q / order) % 4];
  }
  const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / order;
  return {std::cos(ang), std::sin(ang)};
}

}  // namespace

std::complex<double> CyclotomicInt::to_complex() const {
  std::complex<double> z{};
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0) continue;
    z += static_cast<double>(coeffs_[k]) * unit_root(k, order_);
  }
  return z;
}

CyclotomicInt& CyclotomicInt::operator+=(const CyclotomicInt& o) {
  if (o.order_ != order_) throw ArgumentError("CyclotomicInt: order mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

CyclotomicInt& CyclotomicInt::operator-=(const CyclotomicInt& o) {
  if (o.order_ != order_) throw ArgumentError("CyclotomicInt: order mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

CyclotomicInt& CyclotomicInt::operator*=(std::int64_t s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b) {
  if (a.order_ != b.order_) throw ArgumentError("CyclotomicInt: order mismatch");
  const std::size_t deg = a.coeffs_.size();
  std::vector<std::int64_t> full(2 * deg - 1, 0);
  for (std::size_t i = 0; i < deg; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < deg; ++j) full[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  CyclotomicInt out(a.order_);
  out.reduce(std::move(full));
  return out;
}

std::string CyclotomicInt::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const std::int64_t c = coeffs_[k];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    const std::int64_t a = c < 0 ? -c : c;
    if (k == 0) os << a;
    else {
      if (a != 1) os << a << "*";
      os << "w";
      if (k > 1) os << "^" << k;
    }
    first = false;
  }
  return first ? "0" : os.str();
}

}  // namespace parastat
