#include <cmath>

#include "doctest.h"
#include "parastat/errors.hpp"
#include "parastat/pbf.hpp"

using namespace parastat;

namespace {

Bicharacter first_passer(int p) {
  const auto res = factor_search(p, 6);
  const auto pass = res.passing();
  REQUIRE_FALSE(pass.empty());
  return pass.front().theta;
}

ComplexMatrix power(const ComplexMatrix& a, int k) {
  ComplexMatrix r = ComplexMatrix::identity(a.rows());
  for (int i = 0; i < k; ++i) r = r * a;
  return r;
}

}  // namespace

TEST_CASE("factor search") {
  for (int p = 1; p <= 3; ++p) {
    CAPTURE(p);
    const auto res = factor_search(p, 6);
    CHECK(res.candidates.size() == 8);
    const auto pass = res.passing();
    CHECK_FALSE(pass.empty());
    for (const auto& c : pass) CHECK(c.pbf_residual <= 1e-10);
    for (std::size_t i = 1; i < pass.size(); ++i) CHECK(pass[i - 1].pbf_residual <= pass[i].pbf_residual);
    const auto& trivial = res.candidates.front();
    CHECK(trivial.theta.label() == "0,0;0,0");
    if (p >= 2) {
      CHECK_FALSE(trivial.pbf_pass);
      CHECK_FALSE(trivial.pbf_worst.empty());
    }
  }
  CHECK_THROWS_AS(factor_search(2, 3), ArgumentError);
}

TEST_CASE("factor search is invariant under swapping the Z2 factors") {
  // swap both the degrees and the exponent matrix; verify directly
  const FiniteAbelianGroup k4({2, 2});
  const DegreeAssignment swapped{k4, GroupElement{{0, 1}}, GroupElement{{1, 0}}};
  const auto res = factor_search(2, 6);
  for (const auto& c : res.candidates) {
    const auto& a = c.theta.generator_exponents();
    const Bicharacter t(k4, {{a[1][1], a[1][0]}, {a[0][1], a[0][0]}});
    const auto rep = build_green_rep(AlgebraKind::PBF, 2, 1, 1, 6, t, swapped);
    const auto r = verify_relations(rep.generators, AlgebraKind::PBF, rep.interior_projector());
    CHECK(r.passed(1e-10) == c.pbf_pass);
  }
}

TEST_CASE("p = 1 ladder is the boson (x) fermion space") {
  const auto rep = build_pbf_rep(1, 6, first_passer(1), z2z2_degrees());
  CHECK(rep.dimension() == 14);
  for (const auto& [mn, dim] : subspace_dims(rep)) CHECK(dim == 1);
  for (int m = 0; m < 6; ++m) {
    const auto a = rep.find({m, 0, 0});
    const auto b = rep.find({m + 1, 0, 0});
    REQUIRE((a && b));
    CHECK(std::abs(rep.b_plus()(*b, *a) - std::sqrt(m + 1.0)) < 1e-12);
  }
}

TEST_CASE("ladder dimension pattern") {
  for (int p = 1; p <= 3; ++p) {
    CAPTURE(p);
    const auto rep = build_pbf_rep(p, 6, first_passer(p), z2z2_degrees());
    const auto dims = subspace_dims(rep);
    for (int m = 0; m <= 3; ++m)
      for (int n = 0; n <= p; ++n) {
        CAPTURE(m);
        CAPTURE(n);
        CHECK(dims.at({m, n}) == expected_subspace_dim(p, m, n));
      }
    CHECK(power(rep.f_plus(), p + 1).max_abs() <= 1e-12);
    CHECK(power(rep.f_plus(), p).max_abs() > 0.5);
  }
  const auto r2 = build_pbf_rep(2, 6, first_passer(2), z2z2_degrees());
  const auto d2 = subspace_dims(r2);
  CHECK(d2.at({1, 1}) == 2);
  CHECK(d2.at({0, 1}) == 1);
  CHECK(d2.at({1, 0}) == 1);
  CHECK(d2.at({1, 2}) == 1);
  const auto r3 = build_pbf_rep(3, 6, first_passer(3), z2z2_degrees());
  const auto d3 = subspace_dims(r3);
  CHECK(d3.at({2, 1}) == 2);
  CHECK(d3.at({2, 2}) == 2);
  CHECK(d3.at({0, 2}) == 1);
  CHECK(d3.at({0, 0}) == 1);
}

TEST_CASE("transition structure and number operators") {
  const int p = 3;
  const auto rep = build_pbf_rep(p, 6, first_passer(p), z2z2_degrees());
  const auto& L = rep.labels;
  for (std::size_t j = 0; j < rep.dimension(); ++j)
    for (std::size_t i = 0; i < rep.dimension(); ++i) {
      const bool bshift = L[i].n == L[j].n && std::abs(L[i].m - L[j].m) == 1;
      const bool fshift = L[i].m == L[j].m && std::abs(L[i].n - L[j].n) == 1;
      if (!bshift) {
        CHECK(rep.b_plus()(i, j) == cplx{});
        CHECK(rep.b_minus()(i, j) == cplx{});
      }
      if (!fshift) {
        CHECK(rep.f_plus()(i, j) == cplx{});
        CHECK(rep.f_minus()(i, j) == cplx{});
      }
    }
  const ComplexMatrix pid = static_cast<double>(p) * ComplexMatrix::identity(rep.dimension());
  const ComplexMatrix nb = 0.5 * (bracket(rep.b_plus(), rep.b_minus(), BracketSign::Anticommutator) - pid);
  const ComplexMatrix nf = 0.5 * (bracket(rep.f_plus(), rep.f_minus(), BracketSign::Commutator) + pid);
  std::vector<std::size_t> in;
  for (std::size_t i = 0; i < rep.dimension(); ++i)
    if (rep.interior(i)) in.push_back(i);
  CHECK(select(bracket(nb, nf, BracketSign::Commutator), in, in).max_abs() <= 1e-12);
  for (std::size_t i : in) {
    CHECK(std::abs(nb(i, i) - static_cast<double>(L[i].m)) < 1e-10);
    CHECK(std::abs(nf(i, i) - static_cast<double>(L[i].n)) < 1e-10);
  }
}

TEST_CASE("wrong factor is a structure error") {
  const auto k4 = z2z2_degrees();
  CHECK_THROWS_AS(build_pbf_rep(2, 6, Bicharacter::trivial(k4.group), k4), StructureError);
}

TEST_CASE("braided products give SCR and SAR") {
  const auto deg = z2_degrees(true, true);
  for (int p = 1; p <= 2; ++p) {
    CAPTURE(p);
    const auto pb = build_green_rep(AlgebraKind::PB, p, 1, 0, 6, z2_sign_factor(), deg);
    const auto pf = build_green_rep(AlgebraKind::PF, p, 0, 1, 6, Bicharacter::trivial(deg.group), deg);
    const auto scr = braided_product_rep(pb, pf, Bicharacter::trivial(deg.group));
    CHECK(verify_relations(scr.generators, AlgebraKind::SCR, scr.interior_projector()).max_residual <= 1e-10);
    CHECK(verify_relations(scr.generators, AlgebraKind::SAR, scr.interior_projector()).max_residual > 0.5);
    const auto sar = braided_product_rep(pb, pf, z2_sign_factor());
    CHECK(verify_relations(sar.generators, AlgebraKind::SAR, sar.interior_projector()).max_residual <= 1e-10);
  }
  const FiniteAbelianGroup k4({2, 2});
  const DegreeAssignment d4{k4, GroupElement{{1, 0}}, GroupElement{{0, 1}}};
  const auto pb = build_green_rep(AlgebraKind::PB, 1, 1, 0, 6, z2_sign_factor(), deg);
  const auto pf4 = build_green_rep(AlgebraKind::PF, 1, 0, 1, 6, Bicharacter::trivial(k4), d4);
  CHECK_THROWS_AS(braided_product_rep(pb, pf4, z2_sign_factor()), ArgumentError);

  // p = 1 with trivial dressing is the plain W_s representation
  const auto pf = build_green_rep(AlgebraKind::PF, 1, 0, 1, 6, Bicharacter::trivial(deg.group), deg);
  const auto ws = braided_product_rep(pb, pf, Bicharacter::trivial(deg.group));
  CHECK(verify_relations(ws.generators, AlgebraKind::Ws, ws.interior_projector()).max_residual <= 1e-12);
}

TEST_CASE("straight ladders") {
  for (auto kind : {AlgebraKind::SCR, AlgebraKind::SAR}) {
    const auto rep = build_straight_rep(2, 6, kind);
    for (const auto& [mn, dim] : subspace_dims(rep)) CHECK(dim == 1);
    CHECK(power(rep.f_plus(), 3).max_abs() <= 1e-12);
  }
  CHECK_THROWS_AS(build_straight_rep(2, 6, AlgebraKind::PBF), ArgumentError);
}
