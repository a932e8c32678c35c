#include <cmath>

#include "doctest.h"
#include "parastat/errors.hpp"
#include "parastat/jc.hpp"

using namespace parastat;

namespace {

PBFFockRep ladder(int p, int cutoff = 6) {
  const auto pass = factor_search(p, std::max(cutoff, 4)).passing();
  REQUIRE_FALSE(pass.empty());
  return build_pbf_rep(p, cutoff, pass.front().theta, z2z2_degrees());
}

JCParams params(int p, double wb, double wf, double lambda) {
  JCParams j;
  j.p = p;
  j.omega_b = wb;
  j.omega_f = wf;
  j.lambda = lambda;
  j.lambda1 = {0.3, 0.1};
  j.lambda2 = {-0.2, 0.25};
  return j;
}

std::vector<std::size_t> below(const PBFFockRep& rep, int mmax) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < rep.dimension(); ++i)
    if (rep.labels[i].m <= mmax) keep.push_back(i);
  return keep;
}

}  // namespace

TEST_CASE("free Hamiltonian is diagonal with w_b m + w_f n") {
  for (int p = 1; p <= 3; ++p) {
    CAPTURE(p);
    const auto rep = ladder(p);
    const auto jp = params(p, 1.3, 0.7, 0.0);
    const auto h = build_hamiltonian(HamiltonianKind::Free, jp, rep);
    CHECK(hermiticity_violation(h) == 0.0);
    const auto keep = below(rep, rep.cutoff - 1);
    const auto hb = select(h, keep, keep);
    for (std::size_t a = 0; a < keep.size(); ++a)
      for (std::size_t b = 0; b < keep.size(); ++b) {
        const auto& l = rep.labels[keep[a]];
        const cplx want = a == b ? cplx(1.3 * l.m + 0.7 * l.n) : cplx{};
        CHECK(std::abs(hb(a, b) - want) <= 1e-10);
      }
    const auto dyn0 = build_hamiltonian(HamiltonianKind::Dyn, jp, rep);
    CHECK(dyn0 == h);
  }
}

TEST_CASE("Dyn at p = 1 is the standard two-level model") {
  const auto rep = ladder(1);
  const auto h = build_hamiltonian(HamiltonianKind::Dyn, params(1, 1.1, 0.9, 0.25), rep);
  const auto ref = standard_jc_matrix(1.1, 0.9, 0.25, 6);
  REQUIRE(ref.rows() == h.rows());
  const auto keep = below(rep, 5);
  CHECK(max_abs_diff(select(h, keep, keep), select(ref, keep, keep)) <= 1e-12);
}

TEST_CASE("selection rule") {
  for (int p = 1; p <= 3; ++p) {
    const auto rep = ladder(p);
    for (auto kind : {HamiltonianKind::Dyn, HamiltonianKind::DynStar}) {
      const auto jp = params(p, 1.0, 1.0, 0.4);
      const auto hi = interaction(kind, jp, rep);
      CHECK(selection_rule_check(hi, rep).max_offblock <= 1e-12);
      CHECK(hi.max_abs() > 0.1);
    }
  }
  // corrupt one block by transposing it into a forbidden position
  const auto rep = ladder(2);
  auto hi = interaction(HamiltonianKind::Dyn, params(2, 1, 1, 0.4), rep);
  const auto a = *rep.find({1, 0, 0});
  const auto b = *rep.find({0, 1, 0});
  const auto c = *rep.find({1, 1, 0});
  hi(c, a) = hi(b, a);
  const auto r = selection_rule_check(hi, rep);
  CHECK(r.max_offblock > 0.1);
  REQUIRE(r.worst.has_value());
  CHECK(r.worst->first == LadderLabel{1, 0, 0});
  CHECK(r.worst->second == LadderLabel{1, 1, 0});
}

TEST_CASE("excitation number commutes with H at resonance") {
  const int p = 2;
  const auto rep = ladder(p);
  std::vector<double> exc(rep.dimension());
  for (std::size_t i = 0; i < exc.size(); ++i) exc[i] = rep.labels[i].m + rep.labels[i].n;
  const auto n = ComplexMatrix::diagonal(std::span<const double>(exc));
  const auto keep = below(rep, rep.cutoff - 3);
  for (auto kind : {HamiltonianKind::Dyn, HamiltonianKind::DynStar}) {
    const auto h = build_hamiltonian(kind, params(p, 0.8, 0.8, 0.3), rep);
    CHECK(select(bracket(h, n, BracketSign::Commutator), keep, keep).max_abs() <= 1e-12);
  }
}

TEST_CASE("hermiticity guard") {
  const auto rep = ladder(2);
  JCParams jp = params(2, 1, 1, 0.1);
  jp.lambda = {0.1, 0.2};
  try {
    build_hamiltonian(HamiltonianKind::Dyn, jp, rep);
    FAIL("expected ParameterError");
  } catch (const ParameterError& e) {
    CHECK(e.coefficient() == "lambda");
  }
  jp.p = 3;
  CHECK_THROWS_AS(build_hamiltonian(HamiltonianKind::Free, jp, rep), ArgumentError);
  const auto ok = build_hamiltonian(HamiltonianKind::DynStar, params(2, 1, 1, 0.1), rep);
  CHECK(hermiticity_violation(ok) == 0.0);
}

TEST_CASE("spectra") {
  const auto rep = ladder(1);
  const auto free = spectrum(build_hamiltonian(HamiltonianKind::Free, params(1, 1, 1, 0), rep));
  CHECK(std::abs(free[0]) < 1e-12);
  CHECK(std::abs(free[1] - 1) < 1e-12);
  CHECK(std::abs(free[2] - 1) < 1e-12);
  CHECK(std::abs(free[3] - 2) < 1e-12);
  CHECK(std::abs(free[4] - 2) < 1e-12);

  // first excited doublet split by 2 lambda around omega
  const double w = 1.0, lam = 0.15;
  const auto dyn = spectrum(build_hamiltonian(HamiltonianKind::Dyn, params(1, w, w, lam), rep));
  CHECK(std::abs(dyn[1] - (w - lam)) <= 1e-10);
  CHECK(std::abs(dyn[2] - (w + lam)) <= 1e-10);

  const auto small = build_hamiltonian(HamiltonianKind::Dyn, params(1, 1, 1, 1e-4), rep);
  const auto freeh = build_hamiltonian(HamiltonianKind::Free, params(1, 1, 1, 1e-4), rep);
  const auto s = spectrum(small), f = spectrum(freeh);
  double bound = 0;
  const auto hi = small - freeh;
  for (std::size_t i = 0; i < hi.rows(); ++i) {
    double row = 0;
    for (std::size_t j = 0; j < hi.cols(); ++j) row += std::abs(hi(i, j));
    bound = std::max(bound, row);
  }
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(std::abs(s[i] - f[i]) <= bound + 1e-12);
}

TEST_CASE("evolution") {
  const auto rep = ladder(1);
  const double w = 1.0, lam = 0.2;
  const auto h = build_hamiltonian(HamiltonianKind::Dyn, params(1, w, w, lam), rep);
  ComplexVector psi0(rep.dimension());
  const auto i10 = *rep.find({1, 0, 0});
  psi0[i10] = 1.0;
  const auto times = time_grid(40.0, 1000);
  CHECK(times.size() == 1001);
  const auto q = evolve(h, psi0, times, rep);
  CHECK(q.norm_drift <= 1e-10);
  std::size_t s10 = 0, s01 = 0;
  for (std::size_t k = 0; k < q.sectors.size(); ++k) {
    if (q.sectors[k] == std::pair{1, 0}) s10 = k;
    if (q.sectors[k] == std::pair{0, 1}) s01 = k;
  }
  double err = 0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double c = std::cos(lam * times[k]), s = std::sin(lam * times[k]);
    err = std::max(err, std::abs(q.populations[k][s10] - c * c));
    err = std::max(err, std::abs(q.populations[k][s01] - s * s));
    double tot = 0;
    for (double v : q.populations[k]) tot += v;
    CHECK(std::abs(tot - 1) <= 1e-10);
  }
  CHECK(err <= 1e-8);

  // stationary basis state under Free
  const auto hf = build_hamiltonian(HamiltonianKind::Free, params(1, w, w, 0), rep);
  const auto qf = evolve(hf, psi0, times, rep);
  for (const auto& row : qf.populations) CHECK(std::abs(row[s10] - 1) <= 1e-12);

  ComplexVector bad(rep.dimension());
  bad[0] = 2.0;
  CHECK_THROWS_AS(evolve(h, bad, times, rep), ArgumentError);
}

TEST_CASE("evolution conserves excitation at resonance for p = 2") {
  const auto rep = ladder(2);
  const auto h = build_hamiltonian(HamiltonianKind::DynStar, params(2, 1, 1, 0.2), rep);
  ComplexVector psi0(rep.dimension());
  psi0[*rep.find({1, 1, 0})] = 1.0;
  const auto times = time_grid(30.0, 1000);
  const auto q = evolve(h, psi0, times, rep);
  CHECK(q.norm_drift <= 1e-10);
  for (const auto& row : q.populations) {
    double exc = 0;
    for (std::size_t k = 0; k < row.size(); ++k) exc += row[k] * (q.sectors[k].first + q.sectors[k].second);
    CHECK(std::abs(exc - 2.0) <= 1e-10);
  }
}
