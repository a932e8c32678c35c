#include <cmath>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "parastat/errors.hpp"
#include "parastat/group.hpp"

using namespace parastat;

TEST_CASE("cyclotomic arithmetic") {
  CyclotomicInt s(3);
  for (int k = 0; k < 3; ++k) s.add_root(k);
  CHECK(s.is_zero());
  const auto w = CyclotomicInt::root(12, 5);
  CHECK(std::abs(w.to_complex() - std::polar(1.0, 2 * M_PI * 5 / 12)) < 1e-14);
  CHECK(w * CyclotomicInt::root(12, 7) == CyclotomicInt::integer(12, 1));
  CHECK(CyclotomicInt::root(4, 2) == CyclotomicInt::integer(4, -1));
  CHECK(cyclotomic_polynomial(6) == std::vector<std::int64_t>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<std::int64_t>{1, 0, -1, 0, 1});
}

TEST_CASE("group parsing and arithmetic") {
  const auto g = FiniteAbelianGroup::parse("Z3xZ4");
  CHECK(g.order() == 12);
  CHECK(g.exponent() == 12);
  CHECK(g.to_string() == "Z3xZ4");
  CHECK(g.element(5).coords == std::vector<int>{1, 1});
  CHECK(g.index_of(GroupElement{{2, 3}}) == 11);
  CHECK(g.multiply(GroupElement{{2, 3}}, GroupElement{{2, 2}}).coords == std::vector<int>{1, 1});
  CHECK(g.inverse(GroupElement{{1, 1}}).coords == std::vector<int>{2, 3});
  for (const char* bad : {"Z0", "Z1", "", "Z2x", "Y2", "Z2xZ", "Z2*Z2", "Z-2"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(FiniteAbelianGroup::parse(bad), ArgumentError);
  }
}

TEST_CASE("enumeration agrees with the brute-force oracle") {
  struct Case {
    const char* spec;
    std::size_t bichars, factors;
  } cases[] = {{"Z2", 2, 2}, {"Z3", 3, 1}, {"Z4", 4, 2}, {"Z5", 5, 1}, {"Z6", 6, 2}, {"Z2xZ2", 16, 8}};
  for (const auto& c : cases) {
    CAPTURE(c.spec);
    const auto g = FiniteAbelianGroup::parse(c.spec);
    const auto lib = enumerate_bicharacters(g);
    const oracle::Tuple t(g.factors());
    const auto ref = oracle::bicharacters(t);
    std::set<std::vector<std::vector<int>>> mine;
    std::size_t lib_factors = 0, ref_factors = 0;
    for (const auto& b : lib) {
      mine.insert(b.table());
      lib_factors += is_commutation_factor(b);
      CHECK(b.satisfies_axioms());
    }
    for (const auto& tab : ref) ref_factors += oracle::skew(t, tab);
    CHECK(lib.size() == mine.size());
    CHECK(mine == ref);
    CHECK(lib.size() == c.bichars);
    CHECK(lib_factors == c.factors);
    CHECK(ref_factors == c.factors);
  }
}

TEST_CASE("cyclic groups up to 12") {
  for (int n = 2; n <= 12; ++n) {
    CAPTURE(n);
    const FiniteAbelianGroup g({n});
    const auto all = enumerate_bicharacters(g);
    CHECK(all.size() == static_cast<std::size_t>(n));
    std::size_t f = 0;
    for (const auto& b : all) {
      f += is_commutation_factor(b);
      // exponent form theta(a,b) = w^(k a b)
      const int k = b.generator_exponents()[0][0];
      for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) CHECK(b.exponent(a, c) == (k * a * c) % n);
    }
    CHECK(f == (n % 2 == 0 ? 2u : 1u));
  }
}

TEST_CASE("enumeration order and bounds") {
  const auto g = FiniteAbelianGroup::parse("Z2xZ2");
  const auto all = enumerate_bicharacters(g);
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].generator_exponents() < all[i].generator_exponents());
  CHECK_THROWS_AS(enumerate_bicharacters(FiniteAbelianGroup({5, 13})), SizingError);
  CHECK_THROWS_AS(enumerate_bicharacters(FiniteAbelianGroup({2, 2, 2, 2}), {64, 1000}), SizingError);
}

TEST_CASE("commutation factor examples") {
  const FiniteAbelianGroup z3({3});
  CHECK(is_commutation_factor(Bicharacter::trivial(z3)));
  CHECK_FALSE(is_commutation_factor(Bicharacter(z3, {{1}})));
  const FiniteAbelianGroup z2({2});
  CHECK(is_commutation_factor(Bicharacter(z2, {{1}})));
}

TEST_CASE("from_table and parse") {
  const auto g = FiniteAbelianGroup::parse("Z2xZ2");
  const auto b = parse_bicharacter(g, "1,1;1,0");
  CHECK(b.label() == "1,1;1,0");
  CHECK(Bicharacter::from_table(g, b.table()) == b);
  auto broken = b.table();
  broken[1][1] = (broken[1][1] + 1) % 2;
  CHECK_THROWS_AS(Bicharacter::from_table(g, broken), ArgumentError);
  CHECK_THROWS_AS(parse_bicharacter(g, "1,x;0,0"), ArgumentError);
  CHECK_THROWS_AS(parse_bicharacter(g, "1,1,1"), ArgumentError);
}

TEST_CASE("R-matrix of the trivial bicharacter is e(x)e") {
  for (const char* spec : {"Z2", "Z3", "Z2xZ2", "Z6"}) {
    const auto g = FiniteAbelianGroup::parse(spec);
    const auto r = bicharacter_to_rmatrix(Bicharacter::trivial(g));
    REQUIRE(r.numerators().size() == 1);
    const auto& [key, c] = *r.numerators().begin();
    CHECK(key == RMatrix::Key{0, 0});
    CHECK(c == CyclotomicInt::integer(g.exponent(), r.denominator()));
  }
}

TEST_CASE("R-matrix of the Z2 sign factor") {
  const FiniteAbelianGroup g({2});
  const auto r = bicharacter_to_rmatrix(Bicharacter(g, {{1}}));
  // 1/2 (e e + e u + u e - u u) with denominator 4
  CHECK(r.denominator() == 4);
  CHECK(r.coefficient(0, 0).numerator == CyclotomicInt::integer(2, 2));
  CHECK(r.coefficient(0, 1).numerator == CyclotomicInt::integer(2, 2));
  CHECK(r.coefficient(1, 0).numerator == CyclotomicInt::integer(2, 2));
  CHECK(r.coefficient(1, 1).numerator == CyclotomicInt::integer(2, -2));
}

TEST_CASE("quasitriangularity, triangularity and round trip on all groups") {
  for (const char* spec : {"Z2", "Z3", "Z4", "Z5", "Z6", "Z2xZ2"}) {
    CAPTURE(spec);
    const auto g = FiniteAbelianGroup::parse(spec);
    for (const auto& theta : enumerate_bicharacters(g)) {
      CAPTURE(theta.label());
      const auto r = bicharacter_to_rmatrix(theta);
      const auto qt = check_quasitriangular(r, g);
      CHECK(qt.qt_axioms_ok);
      CHECK(qt.triangular == is_commutation_factor(theta));
      for (const auto& a : g.elements())
        for (const auto& b : g.elements()) {
          const auto f = braiding_factor(r, a, b);
          CHECK(f.numerator == CyclotomicInt::root(g.exponent(), theta.exponent(a, b)) * f.denominator);
        }
    }
  }
}

TEST_CASE("perturbed R fails the axioms") {
  const FiniteAbelianGroup g({2});
  auto r = bicharacter_to_rmatrix(Bicharacter(g, {{1}}));
  r.negate(0, 1);
  CHECK_FALSE(check_quasitriangular(r, g).qt_axioms_ok);
}

TEST_CASE("braid") {
  const FiniteAbelianGroup g({2});
  const ComplexVector x{1.0, 2.0}, y{cplx(0, 1), 3.0, -1.0};
  const GroupElement odd{{1}}, even{{0}};
  CHECK(braid(Bicharacter::trivial(g), x, odd, y, odd) == kron(y, x));
  const Bicharacter s(g, {{1}});
  const auto minus = braid(s, x, odd, y, odd);
  const auto yx = kron(y, x);
  for (std::size_t i = 0; i < yx.size(); ++i) CHECK(minus[i] == -yx[i]);
  CHECK(braid(s, x, even, y, odd) == yx);
  CHECK_THROWS_AS(braid(s, x, GroupElement{{0, 1}}, y, odd), ArgumentError);

  // psi o psi = id for every commutation factor
  const auto g4 = FiniteAbelianGroup::parse("Z2xZ2");
  for (const auto& theta : enumerate_bicharacters(g4)) {
    if (!is_commutation_factor(theta)) continue;
    for (const auto& a : g4.elements())
      for (const auto& b : g4.elements()) {
        const cplx there = theta.value(a, b);
        const auto back = braid(theta, y, b, x, a);
        const auto xy = kron(x, y);
        for (std::size_t i = 0; i < xy.size(); ++i) CHECK(std::abs(there * back[i] - xy[i]) < 1e-15);
      }
  }
}
