#include <algorithm>
#include <cmath>
#include <numeric>

#include "parastat/config.hpp"
#include "parastat/errors.hpp"
#include "parastat/fock.hpp"

namespace parastat {

LadderOps boson_ops(int cutoff) {
  if (cutoff < 1) throw ArgumentError("boson_ops: cutoff must be >= 1");
  const std::size_t d = static_cast<std::size_t>(cutoff) + 1;
  LadderOps o{ComplexMatrix(d, d), ComplexMatrix(d, d), ComplexMatrix(d, d)};
  for (std::size_t n = 0; n + 1 < d; ++n) {
    o.raise(n + 1, n) = std::sqrt(static_cast<double>(n + 1));
    o.lower(n, n + 1) = std::sqrt(static_cast<double>(n + 1));
  }
  for (std::size_t n = 0; n < d; ++n) o.number(n, n) = static_cast<double>(n);
  return o;
}

LadderOps fermion_ops() {
  return {ComplexMatrix{{0, 0}, {1, 0}}, ComplexMatrix{{0, 1}, {0, 0}}, ComplexMatrix{{0, 0}, {0, 1}}};
}

CopySpace::CopySpace(CopyAlgebra algebra, int m_b, int m_f, int cutoff, DegreeAssignment deg)
    : algebra_(algebra), m_b_(m_b), m_f_(m_f), cutoff_(cutoff), deg_(std::move(deg)) {
  if (m_b < 0 || m_f < 0) throw ArgumentError("CopySpace: mode counts must be non-negative");
  if (m_b + m_f == 0) throw ArgumentError("CopySpace: no modes");
  if ((algebra == CopyAlgebra::CCR && m_f != 0) || (algebra == CopyAlgebra::CAR && m_b != 0)) {
    throw ArgumentError("CopySpace: mode species do not match the copy algebra");
  }
  if ((algebra == CopyAlgebra::Ws || algebra == CopyAlgebra::Was) && (m_b == 0 || m_f == 0)) {
    throw ArgumentError("CopySpace: mixed copy needs boson and fermion modes");
  }
  if (m_b > 0 && cutoff < 1) throw ArgumentError("CopySpace: cutoff must be >= 1");
  if (m_f > 20) throw SizingError("CopySpace: too many fermion modes");
  if (!deg_.group.contains(deg_.boson) || !deg_.group.contains(deg_.fermion)) {
    throw ArgumentError("CopySpace: degrees not in " + deg_.group.to_string());
  }

  const int osc = m_b + m_f;
  std::vector<int> occ(osc, 0);
  // lexicographic enumeration, bosons bounded by the remaining total
  auto rec = [&](auto&& self, int q, int left) -> void {
    if (q == osc) {
      states_.push_back(occ);
      check_dimension(states_.size(), "copy space");
      return;
    }
    const int hi = q < m_b ? left : 1;
    for (int v = 0; v <= hi; ++v) {
      occ[q] = v;
      self(self, q + 1, q < m_b ? left - v : left);
    }
    occ[q] = 0;
  };
  rec(rec, 0, m_b > 0 ? cutoff : 0);

  const auto& g = deg_.group;
  for (const auto& s : states_) {
    const int nb = std::accumulate(s.begin(), s.begin() + m_b, 0);
    const int nf = std::accumulate(s.begin() + m_b, s.end(), 0);
    nb_.push_back(nb);
    nf_.push_back(nf);
    state_deg_.push_back(g.multiply(g.power(deg_.boson, nb), g.power(deg_.fermion, nf)));
  }

  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < states_.size(); ++i) index.emplace(states_[i], i);
  const std::size_t d = states_.size();
  const bool bf_anti = algebra == CopyAlgebra::Was;
  for (int q = 0; q < osc; ++q) {
    const bool is_b = q < m_b;
    for (int sign : {+1, -1}) {
      ComplexMatrix m(d, d);
      for (std::size_t s = 0; s < d; ++s) {
        std::vector<int> t = states_[s];
        const int n = t[q];
        const int nn = n + sign;
        if (nn < 0 || (!is_b && nn > 1)) continue;
        t[q] = nn;
        auto it = index.find(t);
        if (it == index.end()) continue;
        double v = is_b ? std::sqrt(static_cast<double>(std::max(n, nn))) : 1.0;
        if (!is_b) {
          int flips = 0;
          for (int r = 0; r < q; ++r)
            if (r >= m_b || bf_anti) flips += states_[s][r];
          if (flips % 2) v = -v;
        }
        m(it->second, s) = v;
      }
      const GeneratorLabel label = is_b ? boson(q + 1, sign) : fermion(q - m_b + 1, sign);
      ops_.emplace(label, std::move(m));
    }
  }
}

const ComplexMatrix& CopySpace::op(const GeneratorLabel& g) const {
  auto it = ops_.find(g);
  if (it == ops_.end()) throw ArgumentError("CopySpace: no generator " + g.to_string());
  return it->second;
}

GreenSpace::GreenSpace(std::shared_ptr<const CopySpace> copy, int p) : copy_(std::move(copy)), p_(p) {
  if (p < 1) throw ArgumentError("GreenSpace: order p must be >= 1");
  const CopySpace& c = *copy_;
  const int limit = c.modes_b() > 0 ? c.cutoff() : 0;
  std::vector<std::size_t> t(p, 0);
  auto rec = [&](auto&& self, int k, int left) -> void {
    if (k == p) {
      states_.push_back(t);
      check_dimension(states_.size(), "Green tensor space");
      return;
    }
    for (std::size_t s = 0; s < c.dimension(); ++s) {
      if (c.boson_quanta(s) > left) continue;
      t[k] = s;
      self(self, k + 1, left - c.boson_quanta(s));
    }
  };
  rec(rec, 0, limit);
  for (std::size_t i = 0; i < states_.size(); ++i) {
    index_.emplace(states_[i], i);
    int nb = 0, nf = 0;
    for (std::size_t s : states_[i]) {
      nb += c.boson_quanta(s);
      nf += c.fermion_quanta(s);
    }
    nb_.push_back(nb);
    nf_.push_back(nf);
  }
}

std::size_t GreenSpace::find(const std::vector<std::size_t>& tuple) const {
  auto it = index_.find(tuple);
  return it == index_.end() ? npos : it->second;
}

GroupElement GreenSpace::state_degree(std::size_t s) const {
  const auto& g = copy_->degrees().group;
  GroupElement d = g.identity();
  for (std::size_t c : states_[s]) d = g.multiply(d, copy_->state_degree(c));
  return d;
}

namespace {

void embed_into(ComplexMatrix& target, const ComplexMatrix& op, const GroupElement& op_degree, int slot,
                const GreenSpace& space, const Bicharacter& theta) {
  const CopySpace& c = space.copy();
  if (slot < 1 || slot > space.order()) throw ArgumentError("green_embed: slot out of range");
  if (op.rows() != c.dimension() || op.cols() != c.dimension()) {
    throw ShapeError("green_embed: operator does not act on the copy space");
  }
  if (!(theta.group() == c.degrees().group)) throw ArgumentError("green_embed: grading group mismatch");
  const auto& grp = theta.group();
  const int L = grp.exponent();
  const std::size_t gi = grp.index_of(op_degree);
  std::vector<int> dress(c.dimension());
  for (std::size_t s = 0; s < c.dimension(); ++s) dress[s] = theta.exponent(gi, grp.index_of(c.state_degree(s)));
  std::vector<cplx> roots(L);
  for (int k = 0; k < L; ++k) roots[k] = CyclotomicInt::root(L, k).to_complex();

  const std::size_t k = static_cast<std::size_t>(slot - 1);
  std::vector<std::size_t> t;
  for (std::size_t col = 0; col < space.dimension(); ++col) {
    t = space.states()[col];
    const std::size_t src = t[k];
    int e = 0;
    for (std::size_t j = 0; j < k; ++j) e += dress[t[j]];
    const cplx phase = roots[e % L];
    for (std::size_t dst = 0; dst < c.dimension(); ++dst) {
      const cplx v = op(dst, src);
      if (v == cplx{}) continue;
      t[k] = dst;
      const std::size_t row = space.find(t);
      t[k] = src;
      if (row == GreenSpace::npos) continue;
      target(row, col) += phase * v;
    }
  }
}

}  // namespace

ComplexMatrix green_embed(const ComplexMatrix& op, const GroupElement& op_degree, int slot,
                          const GreenSpace& space, const Bicharacter& theta) {
  ComplexMatrix out(space.dimension(), space.dimension());
  embed_into(out, op, op_degree, slot, space, theta);
  return out;
}

std::vector<bool> GreenAnsatzRep::interior_mask() const {
  std::vector<bool> m(dimension(), true);
  if (modes_b == 0) return m;
  for (std::size_t s = 0; s < m.size(); ++s) m[s] = space->boson_quanta(s) <= cutoff - 3;
  return m;
}

ComplexMatrix GreenAnsatzRep::interior_projector() const {
  const auto m = interior_mask();
  std::vector<double> d(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) d[i] = m[i] ? 1.0 : 0.0;
  return ComplexMatrix::diagonal(std::span<const double>(d));
}

std::vector<int> GreenAnsatzRep::boson_quanta() const {
  std::vector<int> v(dimension());
  for (std::size_t s = 0; s < v.size(); ++s) v[s] = space->boson_quanta(s);
  return v;
}

std::vector<int> GreenAnsatzRep::fermion_quanta() const {
  std::vector<int> v(dimension());
  for (std::size_t s = 0; s < v.size(); ++s) v[s] = space->fermion_quanta(s);
  return v;
}

std::vector<GroupElement> GreenAnsatzRep::state_degrees() const {
  std::vector<GroupElement> v;
  v.reserve(dimension());
  for (std::size_t s = 0; s < dimension(); ++s) v.push_back(space->state_degree(s));
  return v;
}

CopyAlgebra copy_algebra_for(AlgebraKind kind) {
  switch (kind) {
    case AlgebraKind::PB: return CopyAlgebra::CCR;
    case AlgebraKind::PF: return CopyAlgebra::CAR;
    case AlgebraKind::PBF: return CopyAlgebra::Ws;
    case AlgebraKind::PFB: return CopyAlgebra::Was;
    default: throw ArgumentError("Green ansatz is defined for PB, PF, PBF, PFB, not " + std::string(to_string(kind)));
  }
}

GreenAnsatzRep build_green_rep(AlgebraKind kind, int p, int m_b, int m_f, int cutoff,
                               const Bicharacter& theta, const DegreeAssignment& deg) {
  const CopyAlgebra ca = copy_algebra_for(kind);
  if (p < 1) throw ArgumentError("build_green_rep: order p must be >= 1");
  if (!(theta.group() == deg.group)) throw ArgumentError("build_green_rep: theta and degrees use different groups");
  if (!is_commutation_factor(theta)) {
    throw ArgumentError("build_green_rep: theta " + theta.label() + " is not skew-symmetric");
  }
  auto copy = std::make_shared<const CopySpace>(ca, m_b, m_f, cutoff, deg);
  auto space = std::make_shared<const GreenSpace>(copy, p);

  GreenAnsatzRep rep;
  rep.kind = kind;
  rep.p = p;
  rep.modes_b = m_b;
  rep.modes_f = m_f;
  rep.cutoff = cutoff;
  rep.theta = theta;
  rep.deg = deg;
  rep.space = space;
  const std::size_t d = space->dimension();
  std::vector<GeneratorLabel> labels;
  for (int i = 1; i <= m_b; ++i)
    for (int s : {+1, -1}) labels.push_back(boson(i, s));
  for (int j = 1; j <= m_f; ++j)
    for (int s : {+1, -1}) labels.push_back(fermion(j, s));
  for (const auto& l : labels) {
    ComplexMatrix g(d, d);
    for (int k = 1; k <= p; ++k) embed_into(g, copy->op(l), deg.dressing_degree(l), k, *space, theta);
    rep.generators.emplace(l, std::move(g));
  }
  rep.vacuum.assign(d, cplx{});
  rep.vacuum[space->find(std::vector<std::size_t>(p, 0))] = 1.0;
  return rep;
}

DegreeAssignment z2_degrees(bool boson_odd, bool fermion_odd) {
  FiniteAbelianGroup z2({2});
  return {z2, GroupElement{{boson_odd ? 1 : 0}}, GroupElement{{fermion_odd ? 1 : 0}}};
}

Bicharacter z2_sign_factor() { return Bicharacter(FiniteAbelianGroup({2}), {{1}}); }

namespace {

double pochhammer(double x, int n) {
  double r = 1.0;
  for (int k = 0; k < n; ++k) r *= x + k;
  return r;
}

double factorial(int n) { return std::tgamma(n + 1.0); }

double norm_even(int p, int n) { return std::ldexp(std::sqrt(factorial(n) * pochhammer(p / 2.0, n)), n); }
double norm_odd(int p, int n) { return std::ldexp(std::sqrt(factorial(n) * 2.0 * pochhammer(p / 2.0, n + 1)), n); }

}  // namespace

SingleModeReference single_mode_reference(int p, int n) {
  if (p < 1 || n < 0) throw ArgumentError("single_mode_reference: need p >= 1, n >= 0");
  SingleModeReference r;
  r.norm_even = norm_even(p, n);
  r.norm_odd = norm_odd(p, n);
  r.me_up_even = r.norm_odd / r.norm_even;
  r.me_up_odd = norm_even(p, n + 1) / r.norm_odd;
  return r;
}

FockSubmodule fock_submodule(const GreenAnsatzRep& rep, double tol) {
  if (!(tol > 0)) throw ArgumentError("fock_submodule: tol must be positive");
  std::vector<const ComplexMatrix*> ops;
  for (const auto& [l, m] : rep.generators) ops.push_back(&m);
  ComplexMatrix raw = cyclic_subspace(std::span<const ComplexMatrix* const>(ops), rep.vacuum, tol);

  const auto nb = rep.boson_quanta();
  const auto nf = rep.fermion_quanta();
  std::vector<int> level(raw.cols());
  for (std::size_t c = 0; c < raw.cols(); ++c) {
    double q = 0;
    for (std::size_t r = 0; r < raw.rows(); ++r) q += std::norm(raw(r, c)) * (nb[r] + nf[r]);
    level[c] = static_cast<int>(std::lround(q));
  }
  std::vector<std::size_t> order(raw.cols());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return level[a] < level[b]; });

  FockSubmodule out;
  out.basis = ComplexMatrix(raw.rows(), raw.cols());
  for (std::size_t c = 0; c < order.size(); ++c) {
    for (std::size_t r = 0; r < raw.rows(); ++r) out.basis(r, c) = raw(r, order[c]);
    out.level.push_back(level[order[c]]);
  }
  for (const auto& [l, m] : rep.generators) out.generators.emplace(l, compress(m, out.basis));
  out.full_dimension = raw.rows();
  out.complement_dimension = raw.rows() - raw.cols();
  return out;
}

}  // namespace parastat
