#pragma once

// Generators-and-relations presentations of the ten algebras, instantiated
// over mode indices and sign parameters, plus a numeric verifier and a
// grading-homogeneity check.

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "parastat/group.hpp"
#include "parastat/linalg.hpp"

namespace parastat {

enum class Species { Boson, Fermion };

/// b_i^eps or f_j^eta; mode is 1-based, sign is +1 or -1.
struct GeneratorLabel {
  Species species = Species::Boson;
  int mode = 1;
  int sign = +1;

  /// b before f, then mode ascending, then + before -.
  auto operator<=>(const GeneratorLabel& o) const {
    if (auto c = species <=> o.species; c != 0) return c;
    if (auto c = mode <=> o.mode; c != 0) return c;
    return o.sign <=> sign;
  }
  bool operator==(const GeneratorLabel&) const = default;

  std::string to_string() const;  // "b1+", "f2-"
};

GeneratorLabel boson(int mode, int sign);
GeneratorLabel fermion(int mode, int sign);

enum class AlgebraKind { CCR, CAR, Ws, Was, PB, PF, PBF, PFB, SCR, SAR };

std::string_view to_string(AlgebraKind k);
/// Case-insensitive; throws ArgumentError.
AlgebraKind parse_algebra_kind(std::string_view s);
bool uses_bosons(AlgebraKind k);
bool uses_fermions(AlgebraKind k);

struct RhsTerm {
  int coefficient = 0;
  std::optional<GeneratorLabel> generator;  // nullopt: the identity
};

/// lhs = inner(x, y) or outer(inner(x, y), z); lhs - sum(rhs) = 0.
struct RelationInstance {
  std::string row;
  GeneratorLabel x, y;
  BracketSign inner = BracketSign::Commutator;
  std::optional<GeneratorLabel> z;
  BracketSign outer = BracketSign::Commutator;
  std::vector<RhsTerm> rhs;  // zero coefficients dropped

  std::string to_string() const;  // "[{b1+,b1-},b1+] - 2*b1+"
};

/// Every instance over index tuples and sign tuples, in a fixed order.
/// Duplicates arising from index symmetry are kept.
std::vector<RelationInstance> relations(AlgebraKind kind, int m_b, int m_f);

using GeneratorMap = std::map<GeneratorLabel, ComplexMatrix>;

struct RelationResidual {
  std::string relation;
  double residual = 0.0;
};

struct RelationReport {
  AlgebraKind kind = AlgebraKind::CCR;
  int m_b = 0;
  int m_f = 0;
  double max_residual = 0.0;
  std::string worst_relation;
  std::vector<RelationResidual> per_relation;  // descending by residual
  std::size_t count = 0;

  bool passed(double tol) const { return max_residual <= tol; }
};

/// residual = ||P (lhs - rhs) P||_max with P the projector (identity when
/// absent). Mode counts are read off the generator labels.
RelationReport verify_relations(const GeneratorMap& rep, AlgebraKind kind,
                                const std::optional<ComplexMatrix>& interior_projector = std::nullopt);

/// Species-constant degrees into a grading group.
struct DegreeAssignment {
  FiniteAbelianGroup group;
  GroupElement boson;
  GroupElement fermion;

  /// Depends on the species only.
  GroupElement degree(const GeneratorLabel& g) const;
  /// Degree used to dress the operator in a tensor embedding: lowering
  /// operators take the inverse so that the embedded pair stays adjoint.
  GroupElement dressing_degree(const GeneratorLabel& g) const;
};

struct GradingReport {
  bool homogeneous = true;
  std::vector<std::string> violations;
};

GradingReport check_grading(AlgebraKind kind, int m_b, int m_f, const DegreeAssignment& deg);

}  // namespace parastat
