#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <tuple>

#include "parastat/algebra.hpp"
#include "parastat/errors.hpp"

namespace parastat {

std::string GeneratorLabel::to_string() const {
  return std::string(species == Species::Boson ? "b" : "f") + std::to_string(mode) + (sign > 0 ? "+" : "-");
}

GeneratorLabel boson(int mode, int sign) { return {Species::Boson, mode, sign}; }
GeneratorLabel fermion(int mode, int sign) { return {Species::Fermion, mode, sign}; }

namespace {

constexpr std::pair<AlgebraKind, std::string_view> kKindNames[] = {
    {AlgebraKind::CCR, "CCR"}, {AlgebraKind::CAR, "CAR"}, {AlgebraKind::Ws, "Ws"},
    {AlgebraKind::Was, "Was"}, {AlgebraKind::PB, "PB"},   {AlgebraKind::PF, "PF"},
    {AlgebraKind::PBF, "PBF"}, {AlgebraKind::PFB, "PFB"}, {AlgebraKind::SCR, "SCR"},
    {AlgebraKind::SAR, "SAR"},
};

bool has(std::initializer_list<AlgebraKind> set, AlgebraKind k) {
  return std::find(set.begin(), set.end(), k) != set.end();
}

constexpr int kSigns[] = {+1, -1};

std::string bracket_open(BracketSign s) { return s == BracketSign::Commutator ? "[" : "{"; }
std::string bracket_close(BracketSign s) { return s == BracketSign::Commutator ? "]" : "}"; }

void push_term(std::vector<RhsTerm>& rhs, int c, std::optional<GeneratorLabel> g) {
  if (c != 0) rhs.push_back({c, g});
}

}  // namespace

std::string_view to_string(AlgebraKind k) {
  for (auto& [kind, name] : kKindNames)
    if (kind == k) return name;
  return "?";
}

AlgebraKind parse_algebra_kind(std::string_view s) {
  auto lower = [](std::string_view v) {
    std::string out(v);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
  };
  for (auto& [kind, name] : kKindNames)
    if (lower(name) == lower(s)) return kind;
  throw ArgumentError("unknown algebra kind '" + std::string(s) + "'");
}

bool uses_bosons(AlgebraKind k) { return k != AlgebraKind::CAR && k != AlgebraKind::PF; }
bool uses_fermions(AlgebraKind k) { return k != AlgebraKind::CCR && k != AlgebraKind::PB; }

std::string RelationInstance::to_string() const {
  std::string s = bracket_open(inner) + x.to_string() + "," + y.to_string() + bracket_close(inner);
  if (z) s = bracket_open(outer) + s + "," + z->to_string() + bracket_close(outer);
  for (const auto& t : rhs) {
    // lhs - rhs = 0, so each rhs term enters with flipped sign
    const int c = -t.coefficient;
    s += c < 0 ? " - " : " + ";
    const int a = std::abs(c);
    const std::string name = t.generator ? t.generator->to_string() : "I";
    s += (a == 1 ? "" : std::to_string(a) + "*") + name;
  }
  return s;
}

std::vector<RelationInstance> relations(AlgebraKind kind, int m_b, int m_f) {
  if (m_b < 0 || m_f < 0) throw ArgumentError("relations: mode counts must be non-negative");
  using K = AlgebraKind;
  constexpr auto C = BracketSign::Commutator;
  constexpr auto A = BracketSign::Anticommutator;
  std::vector<RelationInstance> out;

  if (has({K::CCR, K::Ws, K::Was}, kind)) {
    for (int i = 1; i <= m_b; ++i)
      for (int j = 1; j <= m_b; ++j)
        for (int e : kSigns)
          for (int h : kSigns) {
            RelationInstance r{"CCR", boson(i, e), boson(j, h), C, std::nullopt, C, {}};
            push_term(r.rhs, i == j ? (h - e) / 2 : 0, std::nullopt);
            out.push_back(std::move(r));
          }
  }
  if (has({K::CAR, K::Ws, K::Was}, kind)) {
    for (int i = 1; i <= m_f; ++i)
      for (int j = 1; j <= m_f; ++j)
        for (int e : kSigns)
          for (int h : kSigns) {
            RelationInstance r{"CAR", fermion(i, e), fermion(j, h), A, std::nullopt, C, {}};
            push_term(r.rhs, i == j ? std::abs(h - e) / 2 : 0, std::nullopt);
            out.push_back(std::move(r));
          }
  }
  if (has({K::Ws, K::SCR, K::Was, K::SAR}, kind)) {
    const bool anti = kind == K::Was || kind == K::SAR;
    for (int i = 1; i <= m_b; ++i)
      for (int j = 1; j <= m_f; ++j)
        for (int e : kSigns)
          for (int h : kSigns)
            out.push_back({anti ? "bf anticommute" : "bf commute", boson(i, e), fermion(j, h),
                           anti ? A : C, std::nullopt, C, {}});
  }
  if (has({K::PB, K::PBF, K::PFB, K::SCR, K::SAR}, kind)) {
    for (int i = 1; i <= m_b; ++i)
      for (int j = 1; j <= m_b; ++j)
        for (int k = 1; k <= m_b; ++k)
          for (int xi : kSigns)
            for (int eta : kSigns)
              for (int eps : kSigns) {
                RelationInstance r{"PB trilinear", boson(i, xi), boson(j, eta), A, boson(k, eps), C, {}};
                push_term(r.rhs, j == k ? eps - eta : 0, boson(i, xi));
                push_term(r.rhs, i == k ? eps - xi : 0, boson(j, eta));
                out.push_back(std::move(r));
              }
  }
  if (has({K::PF, K::PBF, K::PFB, K::SCR, K::SAR}, kind)) {
    for (int i = 1; i <= m_f; ++i)
      for (int j = 1; j <= m_f; ++j)
        for (int k = 1; k <= m_f; ++k)
          for (int xi : kSigns)
            for (int eta : kSigns)
              for (int eps : kSigns) {
                RelationInstance r{"PF trilinear", fermion(i, xi), fermion(j, eta), C, fermion(k, eps), C, {}};
                push_term(r.rhs, j == k ? (eps - eta) * (eps - eta) / 2 : 0, fermion(i, xi));
                push_term(r.rhs, i == k ? -(eps - xi) * (eps - xi) / 2 : 0, fermion(j, eta));
                out.push_back(std::move(r));
              }
  }
  if (has({K::PBF, K::PFB}, kind)) {
    for (int i = 1; i <= m_b; ++i)
      for (int j = 1; j <= m_b; ++j)
        for (int k = 1; k <= m_f; ++k)
          for (int xi : kSigns)
            for (int eta : kSigns)
              for (int eps : kSigns)
                out.push_back({"mixed bbf", boson(i, xi), boson(j, eta), A, fermion(k, eps), C, {}});
    for (int i = 1; i <= m_f; ++i)
      for (int j = 1; j <= m_f; ++j)
        for (int k = 1; k <= m_b; ++k)
          for (int xi : kSigns)
            for (int eta : kSigns)
              for (int eps : kSigns)
                out.push_back({"mixed ffb", fermion(i, xi), fermion(j, eta), C, boson(k, eps), C, {}});

    const bool pbf = kind == K::PBF;
    for (int k = 1; k <= m_f; ++k)
      for (int l = 1; l <= m_b; ++l)
        for (int m = 1; m <= m_b; ++m)
          for (int xi : kSigns)
            for (int eta : kSigns)
              for (int eps : kSigns) {
                RelationInstance r{"relative fbb", fermion(k, xi), boson(l, eta),
                                   pbf ? A : C, boson(m, eps), pbf ? C : A, {}};
                push_term(r.rhs, l == m ? eps - eta : 0, fermion(k, xi));
                out.push_back(std::move(r));
              }
    for (int k = 1; k <= m_b; ++k)
      for (int l = 1; l <= m_f; ++l)
        for (int m = 1; m <= m_f; ++m)
          for (int xi : kSigns)
            for (int eta : kSigns)
              for (int eps : kSigns) {
                RelationInstance r{"relative bff", boson(k, xi), fermion(l, eta), pbf ? A : C,
                                   fermion(m, eps), pbf ? A : C, {}};
                push_term(r.rhs, l == m ? (eps - eta) * (eps - eta) / 2 : 0, boson(k, xi));
                out.push_back(std::move(r));
              }
  }
  return out;
}

namespace {

const ComplexMatrix& lookup(const GeneratorMap& rep, const GeneratorLabel& g) {
  auto it = rep.find(g);
  if (it == rep.end()) throw ArgumentError("verify_relations: missing generator " + g.to_string());
  return it->second;
}

// Indices kept by a diagonal 0/1 projector, or nullopt for a general one.
std::optional<std::vector<std::size_t>> mask_of(const ComplexMatrix& p) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) {
      const cplx v = p(i, j);
      if (i != j) {
        if (v != cplx{}) return std::nullopt;
      } else if (v == cplx{1.0}) {
        keep.push_back(i);
      } else if (v != cplx{}) {
        return std::nullopt;
      }
    }
  return keep;
}

}  // namespace

namespace {

// Column-compressed operator used for the residual sweep: the generators
// and their brackets are very sparse, dense products are not needed.
struct SparseOp {
  std::size_t n = 0;
  std::vector<std::vector<std::pair<std::size_t, cplx>>> cols;

  static SparseOp from_dense(const ComplexMatrix& m) {
    SparseOp s{m.rows(), std::vector<std::vector<std::pair<std::size_t, cplx>>>(m.cols())};
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (m(i, j) != cplx{}) s.cols[j].emplace_back(i, m(i, j));
    return s;
  }
};

class Accumulator {
 public:
  explicit Accumulator(std::size_t n) : val_(n), seen_(n, false) {}
  void add(std::size_t i, cplx v) {
    if (!seen_[i]) {
      seen_[i] = true;
      touched_.push_back(i);
    }
    val_[i] += v;
  }
  template <class F>
  void drain(F&& f) {
    std::sort(touched_.begin(), touched_.end());
    for (std::size_t i : touched_) {
      f(i, val_[i]);
      val_[i] = cplx{};
      seen_[i] = false;
    }
    touched_.clear();
  }

 private:
  std::vector<cplx> val_;
  std::vector<bool> seen_;
  std::vector<std::size_t> touched_;
};

// a*b + s*b*a
SparseOp sparse_bracket(const SparseOp& a, const SparseOp& b, BracketSign sign) {
  const double s = sign == BracketSign::Commutator ? -1.0 : 1.0;
  SparseOp out{a.n, std::vector<std::vector<std::pair<std::size_t, cplx>>>(a.n)};
  Accumulator acc(a.n);
  for (std::size_t j = 0; j < a.n; ++j) {
    for (const auto& [k, bv] : b.cols[j])
      for (const auto& [i, av] : a.cols[k]) acc.add(i, av * bv);
    for (const auto& [k, av] : a.cols[j])
      for (const auto& [i, bv] : b.cols[k]) acc.add(i, s * bv * av);
    acc.drain([&](std::size_t i, cplx v) { out.cols[j].emplace_back(i, v); });
  }
  return out;
}

}  // namespace

RelationReport verify_relations(const GeneratorMap& rep, AlgebraKind kind,
                                const std::optional<ComplexMatrix>& interior_projector) {
  if (rep.empty()) throw ArgumentError("verify_relations: empty representation");
  int m_b = 0, m_f = 0;
  std::size_t dim = 0;
  for (const auto& [g, m] : rep) {
    int& count = g.species == Species::Boson ? m_b : m_f;
    count = std::max(count, g.mode);
    if (!m.is_square()) throw ShapeError("verify_relations: generator " + g.to_string() + " not square");
    if (dim == 0) dim = m.rows();
    if (m.rows() != dim) throw ShapeError("verify_relations: generator dimensions differ");
  }
  if (uses_bosons(kind) && m_b == 0) throw ArgumentError("verify_relations: kind requires boson generators");
  if (uses_fermions(kind) && m_f == 0) throw ArgumentError("verify_relations: kind requires fermion generators");
  if (!uses_bosons(kind)) m_b = 0;
  if (!uses_fermions(kind)) m_f = 0;

  std::optional<std::vector<std::size_t>> mask;
  if (interior_projector) {
    if (interior_projector->rows() != dim || interior_projector->cols() != dim) {
      throw ShapeError("verify_relations: projector dimension mismatch");
    }
    mask = mask_of(*interior_projector);
  } else {
    mask.emplace(dim);
    std::iota(mask->begin(), mask->end(), std::size_t{0});
  }

  RelationReport report;
  report.kind = kind;
  report.m_b = m_b;
  report.m_f = m_f;
  const auto rels = relations(kind, m_b, m_f);
  report.count = rels.size();

  if (mask) {
    std::vector<bool> keep(dim, false);
    for (std::size_t i : *mask) keep[i] = true;
    std::map<GeneratorLabel, SparseOp> sparse;
    auto op = [&](const GeneratorLabel& g) -> const SparseOp& {
      auto it = sparse.find(g);
      if (it == sparse.end()) it = sparse.emplace(g, SparseOp::from_dense(lookup(rep, g))).first;
      return it->second;
    };
    using InnerKey = std::tuple<GeneratorLabel, GeneratorLabel, BracketSign>;
    std::map<InnerKey, SparseOp> inner_cache;
    Accumulator acc(dim);
    for (const auto& r : rels) {
      InnerKey key{r.x, r.y, r.inner};
      auto it = inner_cache.find(key);
      if (it == inner_cache.end()) it = inner_cache.emplace(key, sparse_bracket(op(r.x), op(r.y), r.inner)).first;
      const SparseOp lhs = r.z ? sparse_bracket(it->second, op(*r.z), r.outer) : it->second;
      double res = 0.0;
      for (std::size_t j : *mask) {
        for (const auto& [i, v] : lhs.cols[j])
          if (keep[i]) acc.add(i, v);
        for (const auto& t : r.rhs) {
          if (!t.generator) {
            acc.add(j, -static_cast<double>(t.coefficient));
            continue;
          }
          for (const auto& [i, v] : op(*t.generator).cols[j])
            if (keep[i]) acc.add(i, -static_cast<double>(t.coefficient) * v);
        }
        acc.drain([&](std::size_t, cplx v) { res = std::max(res, std::abs(v)); });
      }
      report.per_relation.push_back({r.to_string(), res});
    }
  } else {
    const ComplexMatrix& p = *interior_projector;
    const ComplexMatrix identity = ComplexMatrix::identity(dim);
    for (const auto& r : rels) {
      ComplexMatrix lhs = bracket(lookup(rep, r.x), lookup(rep, r.y), r.inner);
      if (r.z) lhs = bracket(lhs, lookup(rep, *r.z), r.outer);
      for (const auto& t : r.rhs) {
        const ComplexMatrix& m = t.generator ? lookup(rep, *t.generator) : identity;
        lhs -= static_cast<double>(t.coefficient) * m;
      }
      report.per_relation.push_back({r.to_string(), (p * lhs * p).max_abs()});
    }
  }
  std::stable_sort(report.per_relation.begin(), report.per_relation.end(),
                   [](const RelationResidual& a, const RelationResidual& b) { return a.residual > b.residual; });
  if (!report.per_relation.empty()) {
    report.max_residual = report.per_relation.front().residual;
    report.worst_relation = report.per_relation.front().relation;
  }
  return report;
}

GroupElement DegreeAssignment::degree(const GeneratorLabel& g) const {
  return g.species == Species::Boson ? boson : fermion;
}

GroupElement DegreeAssignment::dressing_degree(const GeneratorLabel& g) const {
  return g.sign > 0 ? degree(g) : group.inverse(degree(g));
}

GradingReport check_grading(AlgebraKind kind, int m_b, int m_f, const DegreeAssignment& deg) {
  if (!deg.group.contains(deg.boson) || !deg.group.contains(deg.fermion)) {
    throw ArgumentError("check_grading: degrees not in " + deg.group.to_string());
  }
  GradingReport rep;
  const auto& g = deg.group;
  for (const auto& r : relations(kind, m_b, m_f)) {
    GroupElement lhs = g.multiply(deg.degree(r.x), deg.degree(r.y));
    if (r.z) lhs = g.multiply(lhs, deg.degree(*r.z));
    for (const auto& t : r.rhs) {
      const GroupElement d = t.generator ? deg.degree(*t.generator) : g.identity();
      if (d != lhs) {
        rep.homogeneous = false;
        rep.violations.push_back(r.to_string() + ": lhs degree " + to_string(lhs) + ", term " +
                                 (t.generator ? t.generator->to_string() : "I") + " degree " + to_string(d));
      }
    }
  }
  return rep;
}

}  // namespace parastat
