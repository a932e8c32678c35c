#include <map>
#include <tuple>

#include "parastat/errors.hpp"
#include "parastat/group.hpp"

namespace parastat {

RMatrix::RMatrix(FiniteAbelianGroup group, std::int64_t denominator)
    : group_(std::move(group)), denominator_(denominator) {
  if (denominator_ <= 0) throw ArgumentError("RMatrix: denominator must be positive");
}

void RMatrix::set(std::size_t g, std::size_t h, CyclotomicInt numerator) {
  if (g >= group_.order() || h >= group_.order()) throw ArgumentError("RMatrix::set: index out of range");
  if (numerator.is_zero()) coeffs_.erase({g, h});
  else coeffs_[{g, h}] = std::move(numerator);
}

ExactScalar RMatrix::coefficient(std::size_t g, std::size_t h) const {
  auto it = coeffs_.find({g, h});
  if (it == coeffs_.end()) return {CyclotomicInt::zero(group_.exponent()), denominator_};
  return {it->second, denominator_};
}

void RMatrix::negate(std::size_t g, std::size_t h) {
  auto it = coeffs_.find({g, h});
  if (it != coeffs_.end()) it->second *= -1;
}

namespace {

std::vector<std::vector<long long>> character_table(const FiniteAbelianGroup& g) {
  const std::size_t n = g.order();
  std::vector<std::vector<long long>> chi(n, std::vector<long long>(n));
  for (std::size_t a = 0; a < n; ++a) {
    Character c{g.element(a)};
    for (std::size_t x = 0; x < n; ++x) chi[a][x] = c.value_exponent(g, g.element(x));
  }
  return chi;
}

std::vector<std::vector<std::size_t>> multiplication_table(const FiniteAbelianGroup& g) {
  const std::size_t n = g.order();
  std::vector<std::vector<std::size_t>> m(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      m[a][b] = g.index_of(g.multiply(g.element(a), g.element(b)));
  return m;
}

template <class Key>
void accumulate(std::map<Key, CyclotomicInt>& m, const Key& k, const CyclotomicInt& v) {
  auto [it, inserted] = m.try_emplace(k, v);
  if (!inserted) {
    it->second += v;
    if (it->second.is_zero()) m.erase(it);
  }
}

template <class Key>
void prune(std::map<Key, CyclotomicInt>& m) {
  std::erase_if(m, [](const auto& kv) { return kv.second.is_zero(); });
}

}  // namespace

RMatrix bicharacter_to_rmatrix(const Bicharacter& theta) {
  const auto& g = theta.group();
  const std::size_t n = g.order();
  const int L = g.exponent();
  const auto chi = character_table(g);
  RMatrix r(g, static_cast<std::int64_t>(n * n));
  std::vector<std::int64_t> counts(L);
  for (std::size_t gp = 0; gp < n; ++gp)
    for (std::size_t hp = 0; hp < n; ++hp) {
      std::fill(counts.begin(), counts.end(), 0);
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
          long long e = theta.exponent(x, y) - chi[gp][x] - chi[hp][y];
          e %= L;
          if (e < 0) e += L;
          ++counts[e];
        }
      CyclotomicInt c(L);
      for (int k = 0; k < L; ++k)
        if (counts[k]) c.add_root(k, counts[k]);
      r.set(gp, hp, std::move(c));
    }
  return r;
}

ExactScalar braiding_factor(const RMatrix& r, const GroupElement& g, const GroupElement& h) {
  const auto& grp = r.group();
  const int L = grp.exponent();
  CyclotomicInt acc(L);
  for (const auto& [key, c] : r.numerators()) {
    long long e = Character{grp.element(key.first)}.value_exponent(grp, g) +
                  Character{grp.element(key.second)}.value_exponent(grp, h);
    acc += c * CyclotomicInt::root(L, e);
  }
  return {acc, r.denominator()};
}

QuasitriangularReport check_quasitriangular(const RMatrix& r, const FiniteAbelianGroup& g) {
  if (!(r.group() == g)) throw ArgumentError("check_quasitriangular: group mismatch");
  using K3 = std::tuple<std::size_t, std::size_t, std::size_t>;
  using K2 = std::pair<std::size_t, std::size_t>;
  const std::size_t n = g.order();
  const auto mult = multiplication_table(g);
  const auto& R = r.numerators();
  const std::int64_t D = r.denominator();
  const std::size_t e = g.index_of(g.identity());
  QuasitriangularReport rep;

  // Coefficients compared after scaling by D^2: LHS has one factor 1/D, RHS two.
  std::map<K3, CyclotomicInt> lhs_l, rhs_l, lhs_r, rhs_r;
  for (const auto& [k, c] : R) {
    lhs_l.emplace(K3{k.first, k.first, k.second}, c * D);
    lhs_r.emplace(K3{k.first, k.second, k.second}, c * D);
  }
  for (const auto& [k1, c1] : R)
    for (const auto& [k2, c2] : R) {
      const CyclotomicInt prod = c1 * c2;
      // R13 R23 = sum c1 c2 x (x) u (x) (y v)
      accumulate(rhs_l, K3{k1.first, k2.first, mult[k1.second][k2.second]}, prod);
      // R13 R12 = sum c1 c2 (x u) (x) v (x) y
      accumulate(rhs_r, K3{mult[k1.first][k2.first], k2.second, k1.second}, prod);
    }
  prune(rhs_l);
  prune(rhs_r);
  rep.coproduct_left_ok = lhs_l == rhs_l;
  rep.coproduct_right_ok = lhs_r == rhs_r;

  rep.invertible = true;
  for (std::size_t a = 0; a < n && rep.invertible; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (braiding_factor(r, g.element(a), g.element(b)).numerator.is_zero()) {
        rep.invertible = false;
        break;
      }

  rep.almost_cocommutative = true;
  for (std::size_t x = 0; x < n && rep.almost_cocommutative; ++x) {
    std::map<K2, CyclotomicInt> left, right;
    for (const auto& [k, c] : R) {
      accumulate(left, K2{mult[k.first][x], mult[k.second][x]}, c);
      accumulate(right, K2{mult[x][k.first], mult[x][k.second]}, c);
    }
    rep.almost_cocommutative = left == right;
  }
  rep.qt_axioms_ok = rep.coproduct_left_ok && rep.coproduct_right_ok && rep.invertible &&
                     rep.almost_cocommutative;

  // R21 R = sum c_{a,b} c_{u,v} (b u) (x) (a v), compared against D^2 e (x) e
  std::map<K2, CyclotomicInt> tri;
  for (const auto& [k1, c1] : R)
    for (const auto& [k2, c2] : R)
      accumulate(tri, K2{mult[k1.second][k2.first], mult[k1.first][k2.second]}, c1 * c2);
  prune(tri);
  std::map<K2, CyclotomicInt> unit{{K2{e, e}, CyclotomicInt::integer(g.exponent(), D * D)}};
  rep.triangular = tri == unit;
  return rep;
}

ComplexVector braid(const Bicharacter& theta, std::span<const cplx> x, const GroupElement& g,
                    std::span<const cplx> y, const GroupElement& h) {
  const auto& grp = theta.group();
  if (!grp.contains(g) || !grp.contains(h)) {
    throw ArgumentError("braid: degree not an element of " + grp.to_string());
  }
  ComplexVector out = kron(y, x);
  const cplx f = theta.value(g, h);
  for (auto& v : out) v *= f;
  return out;
}

}  // namespace parastat
