#include <algorithm>
#include <cmath>
#include <numeric>

#include "parastat/errors.hpp"
#include "parastat/pbf.hpp"

namespace parastat {

std::optional<std::size_t> PBFFockRep::find(const LadderLabel& l) const {
  auto it = std::lower_bound(labels.begin(), labels.end(), l);
  if (it == labels.end() || *it != l) return std::nullopt;
  return static_cast<std::size_t>(it - labels.begin());
}

DegreeAssignment z2z2_degrees() {
  FiniteAbelianGroup g({2, 2});
  return {g, GroupElement{{1, 0}}, GroupElement{{0, 1}}};
}

std::vector<FactorCandidate> FactorSearchResult::passing() const {
  std::vector<FactorCandidate> out;
  for (const auto& c : candidates)
    if (c.pbf_pass) out.push_back(c);
  std::stable_sort(out.begin(), out.end(),
                   [](const FactorCandidate& a, const FactorCandidate& b) { return a.pbf_residual < b.pbf_residual; });
  return out;
}

FactorSearchResult factor_search(int p, int cutoff, double tol) {
  if (cutoff < 4) throw ArgumentError("factor_search: cutoff must be >= 4");
  if (!(tol > 0)) throw ArgumentError("factor_search: tol must be positive");
  const DegreeAssignment deg = z2z2_degrees();
  FactorSearchResult res{p, cutoff, tol, {}};
  for (const auto& theta : enumerate_bicharacters(deg.group)) {
    if (!is_commutation_factor(theta)) continue;
    FactorCandidate c;
    c.theta = theta;
    c.deg = deg;
    {
      const auto rep = build_green_rep(AlgebraKind::PBF, p, 1, 1, cutoff, theta, deg);
      const auto r = verify_relations(rep.generators, AlgebraKind::PBF, rep.interior_projector());
      c.pbf_residual = r.max_residual;
      c.pbf_worst = r.worst_relation;
      c.pbf_pass = r.passed(tol);
    }
    {
      const auto rep = build_green_rep(AlgebraKind::PFB, p, 1, 1, cutoff, theta, deg);
      const auto r = verify_relations(rep.generators, AlgebraKind::PFB, rep.interior_projector());
      c.pfb_residual = r.max_residual;
      c.pfb_worst = r.worst_relation;
      c.pfb_pass = r.passed(tol);
    }
    res.candidates.push_back(std::move(c));
  }
  return res;
}

namespace {

double weighted(const ComplexMatrix& basis, std::size_t c, const std::vector<int>& w, double& spread) {
  double mean = 0, sq = 0;
  for (std::size_t r = 0; r < basis.rows(); ++r) {
    const double a = std::norm(basis(r, c));
    mean += a * w[r];
    sq += a * w[r] * w[r];
  }
  spread = sq - mean * mean;
  return mean;
}

void check_number_operator(const ComplexMatrix& n, const std::vector<int>& expect, const std::vector<int>& m,
                           int cutoff, const char* name) {
  for (std::size_t j = 0; j < n.cols(); ++j) {
    if (m[j] > cutoff - 1) continue;
    for (std::size_t i = 0; i < n.rows(); ++i) {
      if (m[i] > cutoff - 1) continue;
      const cplx want = i == j ? cplx(expect[j]) : cplx{};
      if (std::abs(n(i, j) - want) > 1e-8) {
        throw StructureError(std::string("ladder: ") + name + " is not integer diagonal (entry " +
                             std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
}

}  // namespace

PBFFockRep ladder_from_generators(const GeneratorMap& full, const ComplexVector& vacuum,
                                  const std::vector<int>& nb, const std::vector<int>& nf, int p, int cutoff,
                                  double tol) {
  for (const auto& l : {boson(1, +1), boson(1, -1), fermion(1, +1), fermion(1, -1)})
    if (!full.count(l)) throw ArgumentError("ladder: missing generator " + l.to_string());
  if (nb.size() != vacuum.size() || nf.size() != vacuum.size()) throw ShapeError("ladder: occupation size mismatch");

  std::vector<const ComplexMatrix*> ops;
  for (const auto& [l, m] : full) ops.push_back(&m);
  const ComplexMatrix raw = cyclic_subspace(std::span<const ComplexMatrix* const>(ops), vacuum, tol);
  const std::size_t d = raw.cols();

  std::vector<int> ms(d), ns(d);
  for (std::size_t c = 0; c < d; ++c) {
    double sm = 0, sn = 0;
    const double m = weighted(raw, c, nb, sm);
    const double n = weighted(raw, c, nf, sn);
    if (sm > 1e-8 || sn > 1e-8) throw StructureError("ladder: basis vector with mixed occupation");
    ms[c] = static_cast<int>(std::lround(m));
    ns[c] = static_cast<int>(std::lround(n));
  }

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::pair(ms[a], ns[a]) < std::pair(ms[b], ns[b]);
  });
  ComplexMatrix basis(raw.rows(), d);
  PBFFockRep rep;
  rep.p = p;
  rep.cutoff = cutoff;
  rep.full_dimension = raw.rows();
  std::vector<int> m_sorted(d), n_sorted(d);
  for (std::size_t c = 0; c < d; ++c) {
    for (std::size_t r = 0; r < raw.rows(); ++r) basis(r, c) = raw(r, order[c]);
    m_sorted[c] = ms[order[c]];
    n_sorted[c] = ns[order[c]];
    int branch = 0;
    if (c > 0 && rep.labels.back().m == m_sorted[c] && rep.labels.back().n == n_sorted[c]) {
      branch = rep.labels.back().branch + 1;
    }
    rep.labels.push_back({m_sorted[c], n_sorted[c], branch});
  }
  for (const auto& [l, m] : full) rep.generators.emplace(l, compress(m, basis));

  const ComplexMatrix pid = static_cast<double>(p) * ComplexMatrix::identity(d);
  ComplexMatrix n_b = 0.5 * (bracket(rep.b_plus(), rep.b_minus(), BracketSign::Anticommutator) - pid);
  ComplexMatrix n_f = 0.5 * (bracket(rep.f_plus(), rep.f_minus(), BracketSign::Commutator) + pid);
  check_number_operator(n_b, m_sorted, m_sorted, cutoff, "N_b");
  check_number_operator(n_f, n_sorted, m_sorted, cutoff, "N_f");
  return rep;
}

PBFFockRep build_pbf_rep(int p, int cutoff, const Bicharacter& theta, const DegreeAssignment& deg) {
  const auto green = build_green_rep(AlgebraKind::PBF, p, 1, 1, cutoff, theta, deg);
  PBFFockRep rep = ladder_from_generators(green.generators, green.vacuum, green.boson_quanta(),
                                          green.fermion_quanta(), p, cutoff);
  rep.kind = AlgebraKind::PBF;
  rep.theta = theta;
  rep.deg = deg;
  return rep;
}

std::map<std::pair<int, int>, int> subspace_dims(const PBFFockRep& rep) {
  std::map<std::pair<int, int>, int> out;
  for (const auto& l : rep.labels)
    if (l.m <= rep.cutoff - 3) ++out[{l.m, l.n}];
  return out;
}

int expected_subspace_dim(int p, int m, int n) {
  if (n < 0 || n > p || m < 0) return 0;
  return (m == 0 || n == 0 || n == p) ? 1 : 2;
}

ComplexMatrix ProductRep::interior_projector() const {
  std::vector<double> d(interior.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = interior[i] ? 1.0 : 0.0;
  return ComplexMatrix::diagonal(std::span<const double>(d));
}

ProductRep braided_product_rep(const GreenAnsatzRep& a, const GreenAnsatzRep& b, const Bicharacter& theta) {
  if (!(a.deg.group == b.deg.group) || !(theta.group() == a.deg.group)) {
    throw ArgumentError("braided_product_rep: grading groups differ");
  }
  if (!is_commutation_factor(theta)) throw ArgumentError("braided_product_rep: theta is not skew-symmetric");
  for (const auto& [l, m] : a.generators)
    if (b.generators.count(l)) throw ArgumentError("braided_product_rep: generator " + l.to_string() + " on both sides");

  const std::size_t da = a.dimension();
  const std::size_t db = b.dimension();
  const auto& grp = theta.group();
  const auto adeg = a.state_degrees();
  const ComplexMatrix ib = ComplexMatrix::identity(db);

  ProductRep out;
  for (const auto& [l, x] : a.generators) out.generators.emplace(l, kron(x, ib));
  for (const auto& [l, y] : b.generators) {
    std::vector<cplx> dress(da);
    const GroupElement g = b.deg.dressing_degree(l);
    for (std::size_t s = 0; s < da; ++s) dress[s] = CyclotomicInt::root(grp.exponent(), theta.exponent(g, adeg[s])).to_complex();
    out.generators.emplace(l, kron(ComplexMatrix::diagonal(std::span<const cplx>(dress)), y));
  }
  out.vacuum = kron(a.vacuum, b.vacuum);
  const auto amask = a.interior_mask();
  const auto bmask = b.interior_mask();
  const auto anb = a.boson_quanta(), anf = a.fermion_quanta();
  const auto bnb = b.boson_quanta(), bnf = b.fermion_quanta();
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j) {
      out.boson_quanta.push_back(anb[i] + bnb[j]);
      out.fermion_quanta.push_back(anf[i] + bnf[j]);
      out.interior.push_back(amask[i] && bmask[j]);
    }
  return out;
}

PBFFockRep build_straight_rep(int p, int cutoff, AlgebraKind kind) {
  if (kind != AlgebraKind::SCR && kind != AlgebraKind::SAR) {
    throw ArgumentError("build_straight_rep: kind must be SCR or SAR");
  }
  const DegreeAssignment deg = z2_degrees(true, true);
  const auto pb = build_green_rep(AlgebraKind::PB, p, 1, 0, cutoff, z2_sign_factor(), deg);
  const auto pf = build_green_rep(AlgebraKind::PF, p, 0, 1, cutoff, Bicharacter::trivial(deg.group), deg);
  const Bicharacter cross = kind == AlgebraKind::SAR ? z2_sign_factor() : Bicharacter::trivial(deg.group);
  const ProductRep prod = braided_product_rep(pb, pf, cross);
  PBFFockRep rep = ladder_from_generators(prod.generators, prod.vacuum, prod.boson_quanta, prod.fermion_quanta,
                                          p, cutoff);
  rep.kind = kind;
  rep.theta = cross;
  rep.deg = deg;
  return rep;
}

}  // namespace parastat
