#pragma once

// Truncated boson/fermion Fock spaces, Klein-dressed tensor embeddings and
// the Green ansatz B_i = sum_k b_i^(k) over p copies.
//
// Truncation: a copy or a p-fold product keeps the states whose total boson
// quanta (over all modes and copies) are <= cutoff. Raising beyond that
// gives zero.

#include <map>
#include <memory>
#include <vector>

#include "parastat/algebra.hpp"
#include "parastat/group.hpp"
#include "parastat/linalg.hpp"

namespace parastat {

struct LadderOps {
  ComplexMatrix raise;
  ComplexMatrix lower;
  ComplexMatrix number;
};

/// (N+1)-dim boson ladder, b+|N> = 0.
LadderOps boson_ops(int cutoff);
/// f+ = [[0,0],[1,0]], number = f+ f-.
LadderOps fermion_ops();

/// Algebra of a single Green copy.
enum class CopyAlgebra { CCR, CAR, Ws, Was };

/// One copy: m_b boson modes then m_f fermion modes. Operators of a later
/// oscillator pick up the Jordan-Wigner sign prod_{r<q} s_r^{n_r}, with s = -1
/// between fermions and, for Was, between a boson and a fermion.
class CopySpace {
 public:
  CopySpace(CopyAlgebra algebra, int m_b, int m_f, int cutoff, DegreeAssignment deg);

  CopyAlgebra algebra() const noexcept { return algebra_; }
  int modes_b() const noexcept { return m_b_; }
  int modes_f() const noexcept { return m_f_; }
  int cutoff() const noexcept { return cutoff_; }
  const DegreeAssignment& degrees() const noexcept { return deg_; }

  std::size_t dimension() const noexcept { return states_.size(); }
  /// Occupations, bosons first.
  const std::vector<std::vector<int>>& states() const noexcept { return states_; }
  int boson_quanta(std::size_t s) const { return nb_[s]; }
  int fermion_quanta(std::size_t s) const { return nf_[s]; }
  /// deg(b)^nb * deg(f)^nf
  const GroupElement& state_degree(std::size_t s) const { return state_deg_[s]; }

  /// Raising/lowering operator of a copy generator on this copy.
  const ComplexMatrix& op(const GeneratorLabel& g) const;

 private:
  CopyAlgebra algebra_;
  int m_b_, m_f_, cutoff_;
  DegreeAssignment deg_;
  std::vector<std::vector<int>> states_;
  std::vector<int> nb_, nf_;
  std::vector<GroupElement> state_deg_;
  std::map<GeneratorLabel, ComplexMatrix> ops_;
};

/// p-fold product of a copy, restricted to total boson quanta <= cutoff.
class GreenSpace {
 public:
  GreenSpace(std::shared_ptr<const CopySpace> copy, int p);

  const CopySpace& copy() const noexcept { return *copy_; }
  int order() const noexcept { return p_; }
  std::size_t dimension() const noexcept { return states_.size(); }
  /// Copy-state index per slot.
  const std::vector<std::vector<std::size_t>>& states() const noexcept { return states_; }
  /// Index of a tuple or npos.
  std::size_t find(const std::vector<std::size_t>& tuple) const;
  int boson_quanta(std::size_t s) const { return nb_[s]; }
  int fermion_quanta(std::size_t s) const { return nf_[s]; }
  GroupElement state_degree(std::size_t s) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::shared_ptr<const CopySpace> copy_;
  int p_;
  std::vector<std::vector<std::size_t>> states_;
  std::map<std::vector<std::size_t>, std::size_t> index_;
  std::vector<int> nb_, nf_;
};

/// D_1 (x) ... (x) D_{k-1} (x) op (x) I ... (x) I with D_j scaling a copy state
/// of degree h by theta(op_degree, h). Slot is 1-based.
ComplexMatrix green_embed(const ComplexMatrix& op, const GroupElement& op_degree, int slot,
                          const GreenSpace& space, const Bicharacter& theta);

struct GreenAnsatzRep {
  AlgebraKind kind = AlgebraKind::PB;
  int p = 1;
  int modes_b = 0;
  int modes_f = 0;
  int cutoff = 0;
  Bicharacter theta;
  DegreeAssignment deg;
  std::shared_ptr<const GreenSpace> space;
  GeneratorMap generators;
  ComplexVector vacuum;

  std::size_t dimension() const { return vacuum.size(); }
  /// States with total boson quanta <= cutoff - 3.
  std::vector<bool> interior_mask() const;
  ComplexMatrix interior_projector() const;
  std::vector<int> boson_quanta() const;
  std::vector<int> fermion_quanta() const;
  std::vector<GroupElement> state_degrees() const;
};

CopyAlgebra copy_algebra_for(AlgebraKind kind);

/// kind in {PB, PF, PBF, PFB}, copies CCR, CAR, Ws, Was respectively.
GreenAnsatzRep build_green_rep(AlgebraKind kind, int p, int m_b, int m_f, int cutoff,
                               const Bicharacter& theta, const DegreeAssignment& deg);

/// Z2 grading with the given species odd; the sign factor (-1)^{gh}.
DegreeAssignment z2_degrees(bool boson_odd, bool fermion_odd);
Bicharacter z2_sign_factor();

struct SingleModeReference {
  double norm_even = 0;   // 2^n sqrt(n! (p/2)_n)
  double norm_odd = 0;    // 2^n sqrt(n! 2 (p/2)_{n+1})
  double me_up_even = 0;  // <2n+1|B+|2n>
  double me_up_odd = 0;   // <2n+2|B+|2n+1>
};

SingleModeReference single_mode_reference(int p, int n);

struct FockSubmodule {
  ComplexMatrix basis;         // orthonormal columns in the full space
  std::vector<int> level;      // total quanta per basis vector
  GeneratorMap generators;     // restricted
  std::size_t full_dimension = 0;
  std::size_t complement_dimension = 0;
};

/// Cyclic submodule generated from the vacuum by all generators, ordered by
/// total quanta then construction order.
FockSubmodule fock_submodule(const GreenAnsatzRep& rep, double tol = 1e-9);

}  // namespace parastat
