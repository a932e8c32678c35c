#pragma once

// Fock-like representation of the relative parabose set with one paraboson
// and one parafermion, organized into the V_{m,n} ladder, plus the search
// over Z2 x Z2 commutation factors that make the Green ansatz close.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parastat/algebra.hpp"
#include "parastat/fock.hpp"

namespace parastat {

struct LadderLabel {
  int m = 0;       // boson-like quanta
  int n = 0;       // fermion-like quanta, 0..p
  int branch = 0;  // index inside V_{m,n}

  auto operator<=>(const LadderLabel&) const = default;
};

struct PBFFockRep {
  AlgebraKind kind = AlgebraKind::PBF;
  int p = 1;
  int cutoff = 0;
  Bicharacter theta;
  DegreeAssignment deg;
  std::vector<LadderLabel> labels;
  GeneratorMap generators;  // b1+, b1-, f1+, f1- on the ladder basis
  std::size_t full_dimension = 0;

  std::size_t dimension() const { return labels.size(); }
  const ComplexMatrix& b_plus() const { return generators.at(boson(1, +1)); }
  const ComplexMatrix& b_minus() const { return generators.at(boson(1, -1)); }
  const ComplexMatrix& f_plus() const { return generators.at(fermion(1, +1)); }
  const ComplexMatrix& f_minus() const { return generators.at(fermion(1, -1)); }
  /// m <= cutoff - 3
  bool interior(std::size_t i) const { return labels[i].m <= cutoff - 3; }
  std::optional<std::size_t> find(const LadderLabel& l) const;
};

/// The grading used throughout: Z2 x Z2 with deg(b) = (1,0), deg(f) = (0,1).
DegreeAssignment z2z2_degrees();

struct FactorCandidate {
  Bicharacter theta;
  DegreeAssignment deg;
  double pbf_residual = 0;
  std::string pbf_worst;
  bool pbf_pass = false;
  double pfb_residual = 0;  // W_as copies
  std::string pfb_worst;
  bool pfb_pass = false;
};

struct FactorSearchResult {
  int p = 1;
  int cutoff = 0;
  double tol = 0;
  std::vector<FactorCandidate> candidates;  // all commutation factors, lexicographic

  /// PBF passers sorted by residual (stable).
  std::vector<FactorCandidate> passing() const;
};

FactorSearchResult factor_search(int p, int cutoff, double tol = 1e-10);

/// Builds the cyclic module over the given generators from `vacuum`, checks
/// that N_b = ({B+,B-} - p)/2 and N_f = ([F+,F-] + p)/2 are integer diagonal
/// below the cutoff and groups the basis into V_{m,n}. `nb`, `nf` are the
/// occupation totals of the full-space basis states.
PBFFockRep ladder_from_generators(const GeneratorMap& full, const ComplexVector& vacuum,
                                  const std::vector<int>& nb, const std::vector<int>& nf, int p,
                                  int cutoff, double tol = 1e-9);

PBFFockRep build_pbf_rep(int p, int cutoff, const Bicharacter& theta, const DegreeAssignment& deg);

/// (m, n) -> dim V_{m,n} for m <= cutoff - 3.
std::map<std::pair<int, int>, int> subspace_dims(const PBFFockRep& rep);

/// The dimension rule: 1 when m = 0, n = 0 or n = p; 2 otherwise.
int expected_subspace_dim(int p, int m, int n);

struct ProductRep {
  GeneratorMap generators;
  ComplexVector vacuum;
  std::vector<int> boson_quanta;
  std::vector<int> fermion_quanta;
  std::vector<bool> interior;
  ComplexMatrix interior_projector() const;
};

/// A's generators as x (x) I, B's as D_theta (x) y (Klein-dressed).
ProductRep braided_product_rep(const GreenAnsatzRep& a, const GreenAnsatzRep& b, const Bicharacter& theta);

/// Paraboson (x) parafermion of order p with straight cross relations:
/// SCR with commuting species, SAR with anticommuting ones.
PBFFockRep build_straight_rep(int p, int cutoff, AlgebraKind kind);

}  // namespace parastat
