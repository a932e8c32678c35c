#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "parastat/errors.hpp"
#include "parastat/group.hpp"

namespace parastat {

std::string to_string(const GroupElement& g) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < g.coords.size(); ++i) os << (i ? "," : "") << g.coords[i];
  os << ")";
  return os.str();
}

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<int> cyclic_factors)
    : factors_(std::move(cyclic_factors)) {
  if (factors_.empty()) throw ArgumentError("FiniteAbelianGroup: at least one cyclic factor");
  for (int d : factors_) {
    if (d < 2) throw ArgumentError("FiniteAbelianGroup: cyclic factor must be >= 2");
    if (order_ > (std::size_t{1} << 20) / static_cast<std::size_t>(d)) {
      throw SizingError("FiniteAbelianGroup: order too large");
    }
    order_ *= static_cast<std::size_t>(d);
    exponent_ = std::lcm(exponent_, d);
  }
  elements_.reserve(order_);
  GroupElement g{std::vector<int>(factors_.size(), 0)};
  for (std::size_t k = 0; k < order_; ++k) {
    elements_.push_back(g);
    for (std::size_t i = factors_.size(); i-- > 0;) {
      if (++g.coords[i] < factors_[i]) break;
      g.coords[i] = 0;
    }
  }
}

FiniteAbelianGroup FiniteAbelianGroup::parse(std::string_view spec) {
  std::vector<int> factors;
  std::size_t pos = 0;
  while (true) {
    if (pos >= spec.size() || spec[pos] != 'Z') {
      throw ArgumentError("group spec '" + std::string(spec) + "': expected 'Z<d>' factors joined by 'x'");
    }
    ++pos;
    int d = 0;
    const char* begin = spec.data() + pos;
    const char* end = spec.data() + spec.size();
    auto [ptr, ec] = std::from_chars(begin, end, d);
    if (ec != std::errc{} || ptr == begin) {
      throw ArgumentError("group spec '" + std::string(spec) + "': missing factor order");
    }
    if (d < 2) {
      throw ArgumentError("group spec '" + std::string(spec) + "': factor order must be >= 2");
    }
    factors.push_back(d);
    pos = static_cast<std::size_t>(ptr - spec.data());
    if (pos == spec.size()) break;
    if (spec[pos] != 'x') {
      throw ArgumentError("group spec '" + std::string(spec) + "': unexpected character");
    }
    ++pos;
  }
  return FiniteAbelianGroup(std::move(factors));
}

std::size_t FiniteAbelianGroup::index_of(const GroupElement& g) const {
  if (!contains(g)) throw ArgumentError("element " + parastat::to_string(g) + " not in " + to_string());
  std::size_t idx = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) idx = idx * factors_[i] + g.coords[i];
  return idx;
}

bool FiniteAbelianGroup::contains(const GroupElement& g) const {
  if (g.coords.size() != factors_.size()) return false;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (g.coords[i] < 0 || g.coords[i] >= factors_[i]) return false;
  return true;
}

GroupElement FiniteAbelianGroup::identity() const {
  return GroupElement{std::vector<int>(factors_.size(), 0)};
}

GroupElement FiniteAbelianGroup::make(std::vector<int> coords) const {
  if (coords.size() != factors_.size()) throw ArgumentError("group element: wrong rank");
  for (std::size_t i = 0; i < coords.size(); ++i) {
    coords[i] %= factors_[i];
    if (coords[i] < 0) coords[i] += factors_[i];
  }
  return GroupElement{std::move(coords)};
}

GroupElement FiniteAbelianGroup::multiply(const GroupElement& g, const GroupElement& h) const {
  std::vector<int> c(factors_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = (g.coords.at(i) + h.coords.at(i)) % factors_[i];
  return GroupElement{std::move(c)};
}

GroupElement FiniteAbelianGroup::inverse(const GroupElement& g) const {
  std::vector<int> c(factors_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = (factors_[i] - g.coords.at(i)) % factors_[i];
  return GroupElement{std::move(c)};
}

GroupElement FiniteAbelianGroup::power(const GroupElement& g, long long k) const {
  std::vector<int> c(factors_.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    long long v = (static_cast<long long>(g.coords.at(i)) * k) % factors_[i];
    if (v < 0) v += factors_[i];
    c[i] = static_cast<int>(v);
  }
  return GroupElement{std::move(c)};
}

std::string FiniteAbelianGroup::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? "xZ" : "Z") + std::to_string(factors_[i]);
  return s;
}

long long Character::value_exponent(const FiniteAbelianGroup& g, const GroupElement& x) const {
  const int L = g.exponent();
  long long e = 0;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    e += static_cast<long long>(exponents.coords.at(i)) * x.coords.at(i) * (L / g.factors()[i]);
  }
  return e % L;
}

namespace {

std::vector<std::vector<int>> table_from_generators(const FiniteAbelianGroup& g,
                                                    const std::vector<std::vector<int>>& a) {
  const std::size_t n = g.order();
  const std::size_t r = g.rank();
  const int L = g.exponent();
  // weight[i][j] = a_ij * L / gcd(d_i, d_j)
  std::vector<std::vector<long long>> w(r, std::vector<long long>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      w[i][j] = static_cast<long long>(a[i][j]) * (L / std::gcd(g.factors()[i], g.factors()[j]));
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto& gx = g.element(x).coords;
      const auto& gy = g.element(y).coords;
      long long e = 0;
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) e += w[i][j] * gx[i] * gy[j];
      t[x][y] = static_cast<int>(e % L);
    }
  return t;
}

}  // namespace

Bicharacter::Bicharacter(FiniteAbelianGroup group, std::vector<std::vector<int>> generator_exponents)
    : group_(std::move(group)), gen_(std::move(generator_exponents)) {
  const std::size_t r = group_.rank();
  if (gen_.size() != r) throw ArgumentError("Bicharacter: exponent matrix must be rank x rank");
  for (std::size_t i = 0; i < r; ++i) {
    if (gen_[i].size() != r) throw ArgumentError("Bicharacter: exponent matrix must be rank x rank");
    for (std::size_t j = 0; j < r; ++j) {
      const int m = std::gcd(group_.factors()[i], group_.factors()[j]);
      gen_[i][j] %= m;
      if (gen_[i][j] < 0) gen_[i][j] += m;
    }
  }
  table_ = table_from_generators(group_, gen_);
}

Bicharacter Bicharacter::trivial(const FiniteAbelianGroup& group) {
  return Bicharacter(group, std::vector<std::vector<int>>(group.rank(), std::vector<int>(group.rank(), 0)));
}

Bicharacter Bicharacter::from_table(const FiniteAbelianGroup& group, std::vector<std::vector<int>> table) {
  const std::size_t n = group.order();
  const int L = group.exponent();
  if (table.size() != n) throw ArgumentError("Bicharacter::from_table: table must be n x n");
  for (auto& row : table) {
    if (row.size() != n) throw ArgumentError("Bicharacter::from_table: table must be n x n");
    for (int& v : row) v = ((v % L) + L) % L;
  }
  Bicharacter b;
  b.group_ = group;
  b.table_ = std::move(table);
  if (!b.satisfies_axioms()) throw ArgumentError("Bicharacter::from_table: bicharacter axioms fail");
  const std::size_t r = group.rank();
  b.gen_.assign(r, std::vector<int>(r, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      std::vector<int> ei(r, 0), ej(r, 0);
      ei[i] = 1;
      ej[j] = 1;
      const int step = L / std::gcd(group.factors()[i], group.factors()[j]);
      const int e = b.table_[group.index_of(GroupElement{ei})][group.index_of(GroupElement{ej})];
      if (e % step != 0) throw ArgumentError("Bicharacter::from_table: generator value has wrong order");
      b.gen_[i][j] = e / step;
    }
  return b;
}

int Bicharacter::exponent(const GroupElement& g, const GroupElement& h) const {
  return table_[group_.index_of(g)][group_.index_of(h)];
}

cplx Bicharacter::value(const GroupElement& g, const GroupElement& h) const {
  return CyclotomicInt::root(group_.exponent(), exponent(g, h)).to_complex();
}

bool Bicharacter::satisfies_axioms() const {
  const std::size_t n = group_.order();
  const int L = group_.exponent();
  const std::size_t e = group_.index_of(group_.identity());
  std::vector<std::vector<std::size_t>> mult(n, std::vector<std::size_t>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      mult[x][y] = group_.index_of(group_.multiply(group_.element(x), group_.element(y)));
  for (std::size_t g = 0; g < n; ++g)
    if (table_[e][g] != 0 || table_[g][e] != 0) return false;
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      for (std::size_t k = 0; k < n; ++k) {
        if (table_[mult[g][h]][k] != (table_[g][k] + table_[h][k]) % L) return false;
        if (table_[g][mult[h][k]] != (table_[g][h] + table_[g][k]) % L) return false;
      }
  return true;
}

std::string Bicharacter::label() const {
  std::string s;
  for (std::size_t i = 0; i < gen_.size(); ++i) {
    if (i) s += ';';
    for (std::size_t j = 0; j < gen_[i].size(); ++j) s += (j ? "," : "") + std::to_string(gen_[i][j]);
  }
  return s;
}

std::vector<Bicharacter> enumerate_bicharacters(const FiniteAbelianGroup& g,
                                                const EnumerationLimits& limits) {
  if (g.order() > limits.max_order) {
    throw SizingError("enumerate_bicharacters: group order " + std::to_string(g.order()) +
                      " exceeds bound " + std::to_string(limits.max_order));
  }
  const std::size_t r = g.rank();
  std::vector<int> moduli;
  std::size_t count = 1;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const int m = std::gcd(g.factors()[i], g.factors()[j]);
      moduli.push_back(m);
      if (count > limits.max_count / static_cast<std::size_t>(m) + 1) count = limits.max_count + 1;
      else count *= static_cast<std::size_t>(m);
    }
  if (count > limits.max_count) {
    throw SizingError("enumerate_bicharacters: bicharacter count exceeds bound " +
                      std::to_string(limits.max_count));
  }

  std::vector<Bicharacter> out;
  out.reserve(count);
  std::vector<int> digits(moduli.size(), 0);
  for (std::size_t c = 0; c < count; ++c) {
    std::vector<std::vector<int>> a(r, std::vector<int>(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) a[i][j] = digits[i * r + j];
    Bicharacter b(g, std::move(a));
    if (!b.satisfies_axioms()) throw StructureError("enumerate_bicharacters: candidate fails axioms");
    out.push_back(std::move(b));
    for (std::size_t k = digits.size(); k-- > 0;) {
      if (++digits[k] < moduli[k]) break;
      digits[k] = 0;
    }
  }
  return out;
}

bool is_commutation_factor(const Bicharacter& theta) {
  const auto& t = theta.table();
  const int L = theta.group().exponent();
  for (std::size_t g = 0; g < t.size(); ++g)
    for (std::size_t h = g; h < t.size(); ++h)
      if ((t[g][h] + t[h][g]) % L != 0) return false;
  return true;
}

Bicharacter parse_bicharacter(const FiniteAbelianGroup& g, std::string_view spec) {
  std::vector<std::vector<int>> rows(1);
  std::size_t pos = 0;
  while (pos < spec.size()) {
    if (spec[pos] == ';') {
      rows.emplace_back();
      ++pos;
      continue;
    }
    if (spec[pos] == ',' || spec[pos] == ' ') {
      ++pos;
      continue;
    }
    int v = 0;
    auto [ptr, ec] = std::from_chars(spec.data() + pos, spec.data() + spec.size(), v);
    if (ec != std::errc{}) throw ArgumentError("theta spec '" + std::string(spec) + "': expected integers");
    rows.back().push_back(v);
    pos = static_cast<std::size_t>(ptr - spec.data());
  }
  return Bicharacter(g, std::move(rows));
}

}  // namespace parastat
