#pragma once

// Finite abelian groups Z_{d1} x ... x Z_{dr}, their characters and
// bicharacters, the universal R-matrix of the group Hopf algebra CG built
// from a bicharacter, and the induced braiding of graded vectors.
//
// All root-of-unity values are exact: an exponent k stands for w^k with
// w = exp(2 pi i / L), L the exponent (lcm of the cyclic factors).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "parastat/cyclotomic.hpp"
#include "parastat/linalg.hpp"

namespace parastat {

struct GroupElement {
  std::vector<int> coords;

  auto operator<=>(const GroupElement&) const = default;
  bool operator==(const GroupElement&) const = default;
};

std::string to_string(const GroupElement& g);

class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<int> cyclic_factors);

  /// Grammar: "Z<d>" factors joined by 'x', e.g. "Z2", "Z2xZ2", "Z3xZ4".
  static FiniteAbelianGroup parse(std::string_view spec);

  const std::vector<int>& factors() const noexcept { return factors_; }
  std::size_t rank() const noexcept { return factors_.size(); }
  std::size_t order() const noexcept { return order_; }
  /// lcm of the cyclic factors; the order of the common root of unity.
  int exponent() const noexcept { return exponent_; }

  /// Lexicographic enumeration over coordinate tuples.
  const std::vector<GroupElement>& elements() const noexcept { return elements_; }
  const GroupElement& element(std::size_t index) const { return elements_.at(index); }
  std::size_t index_of(const GroupElement& g) const;
  bool contains(const GroupElement& g) const;

  GroupElement identity() const;
  GroupElement multiply(const GroupElement& g, const GroupElement& h) const;
  GroupElement inverse(const GroupElement& g) const;
  GroupElement power(const GroupElement& g, long long k) const;
  GroupElement make(std::vector<int> coords) const;  // reduces mod d_i

  std::string to_string() const;  // "Z2xZ2"
  bool operator==(const FiniteAbelianGroup& o) const { return factors_ == o.factors_; }

 private:
  std::vector<int> factors_;
  std::size_t order_ = 1;
  int exponent_ = 1;
  std::vector<GroupElement> elements_;
};

/// Character g -> prod_i w_i^(a_i g_i), w_i a primitive d_i-th root of unity.
/// Characters are labelled by group elements (the canonical G' ~ G).
struct Character {
  GroupElement exponents;

  /// Exponent of the value over the common L-th root.
  long long value_exponent(const FiniteAbelianGroup& g, const GroupElement& x) const;
};

/// Bicharacter theta: G x G -> C*, determined by its values on generator
/// pairs theta(e_i, e_j) = exp(2 pi i a_ij / gcd(d_i, d_j)).
class Bicharacter {
 public:
  Bicharacter() = default;
  /// `generator_exponents` is r x r with 0 <= a_ij < gcd(d_i, d_j).
  Bicharacter(FiniteAbelianGroup group, std::vector<std::vector<int>> generator_exponents);

  static Bicharacter trivial(const FiniteAbelianGroup& group);
  /// Builds from a full exponent table (n x n over the L-th root) and checks
  /// the bicharacter axioms; throws ArgumentError on failure.
  static Bicharacter from_table(const FiniteAbelianGroup& group,
                                std::vector<std::vector<int>> table);

  const FiniteAbelianGroup& group() const noexcept { return group_; }
  const std::vector<std::vector<int>>& generator_exponents() const noexcept { return gen_; }
  /// table()[i][j] = exponent of theta(element i, element j) over the L-th root.
  const std::vector<std::vector<int>>& table() const noexcept { return table_; }

  int exponent(std::size_t gi, std::size_t hi) const { return table_[gi][hi]; }
  int exponent(const GroupElement& g, const GroupElement& h) const;
  cplx value(const GroupElement& g, const GroupElement& h) const;

  /// theta(gh,k)=theta(g,k)theta(h,k), theta(g,hk)=theta(g,h)theta(g,k),
  /// theta(e,g)=theta(g,e)=1, checked on all pairs/triples.
  bool satisfies_axioms() const;

  /// Compact label: generator exponent rows joined by ';', e.g. "1,1;1,0".
  std::string label() const;

  bool operator==(const Bicharacter& o) const { return group_ == o.group_ && table_ == o.table_; }

 private:
  FiniteAbelianGroup group_;
  std::vector<std::vector<int>> gen_;
  std::vector<std::vector<int>> table_;
};

struct EnumerationLimits {
  std::size_t max_order = 64;
  std::size_t max_count = 65536;
};

/// Every bicharacter of `g`, ordered lexicographically by generator exponent
/// matrix. Throws SizingError beyond the configured bounds.
std::vector<Bicharacter> enumerate_bicharacters(const FiniteAbelianGroup& g,
                                                const EnumerationLimits& limits = {});

/// theta(g,h) theta(h,g) = 1 for all g, h.
bool is_commutation_factor(const Bicharacter& theta);

/// Parses "a,b;c,d" (rows of the generator exponent matrix).
Bicharacter parse_bicharacter(const FiniteAbelianGroup& g, std::string_view spec);

/// Exact scalar numerator / denominator with numerator in Z[w].
struct ExactScalar {
  CyclotomicInt numerator;
  std::int64_t denominator = 1;

  cplx to_complex() const { return numerator.to_complex() / static_cast<double>(denominator); }
};

/// Element sum c_{g,h} g (x) h of CG (x) CG, coefficients numerator/denominator.
class RMatrix {
 public:
  using Key = std::pair<std::size_t, std::size_t>;  // element indices

  RMatrix() = default;
  RMatrix(FiniteAbelianGroup group, std::int64_t denominator);

  const FiniteAbelianGroup& group() const noexcept { return group_; }
  std::int64_t denominator() const noexcept { return denominator_; }
  /// Nonzero numerators only.
  const std::map<Key, CyclotomicInt>& numerators() const noexcept { return coeffs_; }

  void set(std::size_t g, std::size_t h, CyclotomicInt numerator);
  ExactScalar coefficient(std::size_t g, std::size_t h) const;
  /// c_{g,h} -> -c_{g,h} for one pair (used to build counterexamples).
  void negate(std::size_t g, std::size_t h);

 private:
  FiniteAbelianGroup group_;
  std::int64_t denominator_ = 1;
  std::map<Key, CyclotomicInt> coeffs_;
};

/// R = (1/n^2) sum theta(g,h) conj(<g',g><h',h>) g' (x) h'.
RMatrix bicharacter_to_rmatrix(const Bicharacter& theta);

/// Scalar by which R braids lines of degrees g, h:
/// sum c_{g',h'} <g',g><h',h>.  Equals theta(g,h) for R built from theta.
ExactScalar braiding_factor(const RMatrix& r, const GroupElement& g, const GroupElement& h);

struct QuasitriangularReport {
  bool coproduct_left_ok = false;   // (Delta (x) id) R = R13 R23
  bool coproduct_right_ok = false;  // (id (x) Delta) R = R13 R12
  bool invertible = false;
  bool almost_cocommutative = false;  // R Delta(x) = Delta^op(x) R on group elements
  bool qt_axioms_ok = false;
  bool triangular = false;  // R21 R = e (x) e
};

QuasitriangularReport check_quasitriangular(const RMatrix& r, const FiniteAbelianGroup& g);

/// theta(g,h) * (y (x) x) for x of degree g and y of degree h.
ComplexVector braid(const Bicharacter& theta, std::span<const cplx> x, const GroupElement& g,
                    std::span<const cplx> y, const GroupElement& h);

}  // namespace parastat
