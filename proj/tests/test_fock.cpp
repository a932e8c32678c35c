#include <cmath>

#include "doctest.h"
#include "parastat/algebra.hpp"
#include "parastat/config.hpp"
#include "parastat/errors.hpp"
#include "parastat/fock.hpp"

using namespace parastat;

namespace {

// Oracle for the embedding: dense kron of per-slot matrices on the untruncated
// product of copy spaces, compressed to the kept tuples.
ComplexMatrix kron_embed(const ComplexMatrix& op, const std::vector<cplx>& dress, int slot, const GreenSpace& s) {
  const std::size_t d = s.copy().dimension();
  ComplexMatrix full = ComplexMatrix::identity(1);
  for (int k = 1; k <= s.order(); ++k) {
    const ComplexMatrix f = k < slot ? ComplexMatrix::diagonal(std::span<const cplx>(dress))
                            : k == slot ? op
                                        : ComplexMatrix::identity(d);
    full = kron(full, f);
  }
  std::vector<std::size_t> idx;
  for (const auto& t : s.states()) {
    std::size_t i = 0;
    for (std::size_t c : t) i = i * d + c;
    idx.push_back(i);
  }
  return select(full, idx, idx);
}

bool is_exact_adjoint(const ComplexMatrix& a, const ComplexMatrix& b) { return a == b.adjoint(); }

ComplexMatrix power(const ComplexMatrix& a, int k) {
  ComplexMatrix r = ComplexMatrix::identity(a.rows());
  for (int i = 0; i < k; ++i) r = r * a;
  return r;
}

}  // namespace

TEST_CASE("boson and fermion ladders") {
  const auto b = boson_ops(2);
  CHECK(b.raise.count_nonzero() == 2);
  CHECK(b.raise(1, 0) == cplx(1.0));
  CHECK(b.raise(2, 1) == cplx(std::sqrt(2.0)));
  CHECK(b.lower == b.raise.adjoint());
  CHECK(max_abs_diff(b.number, b.raise * b.lower) <= 1e-15);
  CHECK_THROWS_AS(boson_ops(0), ArgumentError);

  const auto f = fermion_ops();
  CHECK(f.raise == (ComplexMatrix{{0, 0}, {1, 0}}));
  CHECK(bracket(f.raise, f.raise, BracketSign::Anticommutator).max_abs() == 0.0);
  CHECK(bracket(f.raise, f.lower, BracketSign::Commutator) == (ComplexMatrix{{-1, 0}, {0, 1}}));
  CHECK((f.raise * f.raise).max_abs() == 0.0);
}

TEST_CASE("copy space Jordan-Wigner signs") {
  const auto z2 = z2_degrees(true, true);
  const CopySpace car(CopyAlgebra::CAR, 0, 2, 0, z2);
  CHECK(car.dimension() == 4);
  const auto& f1 = car.op(fermion(1, +1));
  const auto& f2 = car.op(fermion(2, +1));
  CHECK(bracket(f1, f2, BracketSign::Anticommutator).max_abs() == 0.0);
  CHECK(bracket(car.op(fermion(1, -1)), f2, BracketSign::Anticommutator).max_abs() == 0.0);

  const CopySpace ws(CopyAlgebra::Ws, 1, 1, 4, z2);
  const CopySpace was(CopyAlgebra::Was, 1, 1, 4, z2);
  // compare on states away from the boson truncation
  auto interior = [](const CopySpace& c) {
    std::vector<std::size_t> keep;
    for (std::size_t s = 0; s < c.dimension(); ++s)
      if (c.boson_quanta(s) < c.cutoff()) keep.push_back(s);
    return keep;
  };
  const auto kw = interior(ws);
  CHECK(select(bracket(ws.op(boson(1, +1)), ws.op(fermion(1, +1)), BracketSign::Commutator), kw, kw).max_abs() == 0.0);
  const auto ka = interior(was);
  CHECK(select(bracket(was.op(boson(1, +1)), was.op(fermion(1, +1)), BracketSign::Anticommutator), ka, ka).max_abs() ==
        0.0);
}

TEST_CASE("green_embed matches the kron oracle") {
  const auto deg = z2_degrees(true, true);
  const auto theta = z2_sign_factor();
  for (auto alg : {CopyAlgebra::CCR, CopyAlgebra::Ws}) {
    const int m_f = alg == CopyAlgebra::CCR ? 0 : 1;
    auto copy = std::make_shared<const CopySpace>(alg, 1, m_f, 4, deg);
    const GreenSpace space(copy, 3);
    std::vector<cplx> dress(copy->dimension());
    const GroupElement odd{{1}};
    for (std::size_t s = 0; s < dress.size(); ++s) dress[s] = theta.value(odd, copy->state_degree(s));
    for (int slot = 1; slot <= 3; ++slot) {
      CAPTURE(slot);
      const auto& op = copy->op(boson(1, +1));
      CHECK(max_abs_diff(green_embed(op, odd, slot, space, theta), kron_embed(op, dress, slot, space)) == 0.0);
    }
  }
}

TEST_CASE("green_embed examples") {
  const auto deg = z2_degrees(true, false);
  auto copy = std::make_shared<const CopySpace>(CopyAlgebra::CCR, 1, 0, 4, deg);
  const GreenSpace one(copy, 1);
  const auto& bp = copy->op(boson(1, +1));
  CHECK(green_embed(bp, GroupElement{{1}}, 1, one, z2_sign_factor()) == bp);

  const GreenSpace two(copy, 2);
  const auto x = green_embed(bp, GroupElement{{1}}, 1, two, z2_sign_factor());
  const auto y = green_embed(bp, GroupElement{{1}}, 2, two, z2_sign_factor());
  CHECK(bracket(x, y, BracketSign::Anticommutator).max_abs() == 0.0);
  CHECK_THROWS_AS(green_embed(bp, GroupElement{{1}}, 3, two, z2_sign_factor()), ArgumentError);

  const auto fdeg = z2_degrees(false, true);
  auto fcopy = std::make_shared<const CopySpace>(CopyAlgebra::CAR, 0, 1, 0, fdeg);
  const GreenSpace ftwo(fcopy, 2);
  const auto triv = Bicharacter::trivial(fdeg.group);
  const auto& fp = fcopy->op(fermion(1, +1));
  const auto f1 = green_embed(fp, GroupElement{{1}}, 1, ftwo, triv);
  const auto f2 = green_embed(fp, GroupElement{{1}}, 2, ftwo, triv);
  CHECK(f2 == kron(ComplexMatrix::identity(2), fp));
  CHECK(bracket(f1, f2, BracketSign::Commutator).max_abs() == 0.0);
}

TEST_CASE("cross-slot exchange law") {
  const FiniteAbelianGroup k4({2, 2});
  const DegreeAssignment deg{k4, GroupElement{{1, 0}}, GroupElement{{0, 1}}};
  for (const auto& theta : enumerate_bicharacters(k4)) {
    if (!is_commutation_factor(theta)) continue;
    CAPTURE(theta.label());
    auto copy = std::make_shared<const CopySpace>(CopyAlgebra::Ws, 1, 1, 4, deg);
    const GreenSpace space(copy, 3);
    // away from the cutoff, where the truncation cannot interfere
    std::vector<std::size_t> all, inner;
    for (std::size_t s = 0; s < space.dimension(); ++s) {
      all.push_back(s);
      if (space.boson_quanta(s) <= 2) inner.push_back(s);
    }
    const GeneratorLabel ops[] = {boson(1, +1), boson(1, -1), fermion(1, +1), fermion(1, -1)};
    for (const auto& a : ops)
      for (const auto& b : ops)
        for (int k = 1; k <= 3; ++k)
          for (int l = 1; l <= 3; ++l) {
            if (k == l) continue;
            const auto x = green_embed(copy->op(a), deg.dressing_degree(a), k, space, theta);
            const auto y = green_embed(copy->op(b), deg.dressing_degree(b), l, space, theta);
            const cplx f = theta.value(deg.dressing_degree(a), deg.dressing_degree(b));
            CHECK(max_abs_diff(select(x * y, all, inner), select(f * (y * x), all, inner)) == 0.0);
          }
  }
}

TEST_CASE("build_green_rep validation") {
  const auto deg = z2_degrees(true, false);
  CHECK_THROWS_AS(build_green_rep(AlgebraKind::SCR, 2, 1, 0, 6, z2_sign_factor(), deg), ArgumentError);
  const FiniteAbelianGroup z4({4});
  const DegreeAssignment d4{z4, GroupElement{{1}}, GroupElement{{0}}};
  CHECK_THROWS_AS(build_green_rep(AlgebraKind::PB, 2, 1, 0, 6, Bicharacter(z4, {{1}}), d4), ArgumentError);
  CHECK_THROWS_AS(build_green_rep(AlgebraKind::PB, 2, 1, 0, 6, Bicharacter::trivial(z4), deg), ArgumentError);
  CHECK_THROWS_AS(build_green_rep(AlgebraKind::PB, 0, 1, 0, 6, z2_sign_factor(), deg), ArgumentError);
  const std::size_t saved = max_dimension();
  set_max_dimension(50);
  CHECK_THROWS_AS(build_green_rep(AlgebraKind::PB, 3, 2, 0, 6, z2_sign_factor(), deg), SizingError);
  set_max_dimension(saved);
}

TEST_CASE("paraboson Green ansatz") {
  const auto deg = z2_degrees(true, false);
  const auto p1 = build_green_rep(AlgebraKind::PB, 1, 1, 0, 6, z2_sign_factor(), deg);
  const auto b = boson_ops(6);
  CHECK(p1.generators.at(boson(1, +1)) == b.raise);
  CHECK(p1.generators.at(boson(1, -1)) == b.lower);

  for (int p = 1; p <= 3; ++p)
    for (int modes = 1; modes <= 2; ++modes) {
      CAPTURE(p);
      CAPTURE(modes);
      const auto rep = build_green_rep(AlgebraKind::PB, p, modes, 0, 6, z2_sign_factor(), deg);
      const auto r = verify_relations(rep.generators, AlgebraKind::PB, rep.interior_projector());
      CHECK(r.max_residual <= 1e-10);
      for (int i = 1; i <= modes; ++i) {
        CHECK(is_exact_adjoint(rep.generators.at(boson(i, -1)), rep.generators.at(boson(i, +1))));
        CHECK(norm(matvec(rep.generators.at(boson(i, -1)), rep.vacuum)) == 0.0);
        for (int j = 1; j <= modes; ++j) {
          const auto v = matvec(rep.generators.at(boson(i, -1)),
                                matvec(rep.generators.at(boson(j, +1)), rep.vacuum));
          ComplexVector want(rep.vacuum.size());
          if (i == j)
            for (std::size_t s = 0; s < want.size(); ++s) want[s] = static_cast<double>(p) * rep.vacuum[s];
          double d = 0;
          for (std::size_t s = 0; s < want.size(); ++s) d = std::max(d, std::abs(v[s] - want[s]));
          CHECK(d <= 1e-12);
        }
      }
    }
}

TEST_CASE("parafermion Green ansatz is exact") {
  const auto deg = z2_degrees(false, true);
  const auto triv = Bicharacter::trivial(deg.group);
  for (int p = 1; p <= 3; ++p)
    for (int modes = 1; modes <= 2; ++modes) {
      CAPTURE(p);
      CAPTURE(modes);
      const auto rep = build_green_rep(AlgebraKind::PF, p, 0, modes, 0, triv, deg);
      CHECK(verify_relations(rep.generators, AlgebraKind::PF).max_residual == 0.0);
      for (int j = 1; j <= modes; ++j) {
        const auto& fp = rep.generators.at(fermion(j, +1));
        CHECK(is_exact_adjoint(rep.generators.at(fermion(j, -1)), fp));
        CHECK(power(fp, p + 1).max_abs() == 0.0);
        CHECK(power(fp, p).max_abs() > 0.0);
      }
    }
}

TEST_CASE("single-mode reference") {
  for (int n = 0; n < 6; ++n) {
    const auto r = single_mode_reference(1, n);
    CHECK(r.me_up_even == doctest::Approx(std::sqrt(2.0 * n + 1)).epsilon(1e-14));
    CHECK(r.me_up_odd == doctest::Approx(std::sqrt(2.0 * n + 2)).epsilon(1e-14));
  }
  for (int p = 1; p <= 4; ++p) CHECK(single_mode_reference(p, 0).me_up_even == doctest::Approx(std::sqrt(p)));
  CHECK(single_mode_reference(3, 1).norm_even == doctest::Approx(2 * std::sqrt(1.5)));
  CHECK_THROWS_AS(single_mode_reference(0, 1), ArgumentError);
}

TEST_CASE("Fock submodules") {
  const auto pbdeg = z2_degrees(true, false);
  {
    const auto rep = build_green_rep(AlgebraKind::PB, 1, 1, 0, 6, z2_sign_factor(), pbdeg);
    const auto sub = fock_submodule(rep);
    CHECK(sub.level.size() == 7);
    CHECK(sub.complement_dimension == 0);
  }
  for (int p = 1; p <= 3; ++p) {
    CAPTURE(p);
    const auto rep = build_green_rep(AlgebraKind::PB, p, 1, 0, 6, z2_sign_factor(), pbdeg);
    const auto sub = fock_submodule(rep);
    if (p > 1) CHECK(sub.level.size() < rep.dimension());
    for (std::size_t i = 0; i < sub.level.size(); ++i) CHECK(sub.level[i] == static_cast<int>(i));
    const auto& bp = sub.generators.at(boson(1, +1));
    for (int level = 0; level + 1 <= 6 - 3 + 1; ++level) {
      const auto r = single_mode_reference(p, level / 2);
      const double want = level % 2 == 0 ? r.me_up_even : r.me_up_odd;
      CHECK(std::abs(bp(level + 1, level) - want) <= 1e-10);
    }
  }
  const auto pfdeg = z2_degrees(false, true);
  const auto pf = build_green_rep(AlgebraKind::PF, 2, 0, 1, 0, Bicharacter::trivial(pfdeg.group), pfdeg);
  const auto sub = fock_submodule(pf);
  CHECK(sub.level == std::vector<int>{0, 1, 2});
}
