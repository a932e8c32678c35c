#pragma once

// Generalized Jaynes-Cummings Hamiltonians on a ladder representation:
// spectra, selection rule and exact unitary evolution.

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parastat/linalg.hpp"
#include "parastat/pbf.hpp"

namespace parastat {

enum class HamiltonianKind { Dyn, DynStar, Free };

std::string_view to_string(HamiltonianKind k);
HamiltonianKind parse_hamiltonian_kind(std::string_view s);

struct JCParams {
  double omega_b = 1.0;
  double omega_f = 1.0;
  cplx lambda{0.1, 0.0};   // Dyn
  cplx lambda1{0.1, 0.0};  // DynStar
  cplx lambda2{0.1, 0.0};  // DynStar
  int p = 1;
  int cutoff = 6;
};

/// H_b + H_f: (w_b/2){b+,b-} + (w_f/2)[f+,f-] + (w_f - w_b) p / 2.
ComplexMatrix free_hamiltonian(const JCParams& params, const PBFFockRep& rep);
/// Dyn: (lambda/2)({b-,f+} + {b+,f-}); DynStar:
/// l1 b- f+ + l2 f+ b- + conj(l2) b+ f- + conj(l1) f- b+; Free: zero.
ComplexMatrix interaction(HamiltonianKind kind, const JCParams& params, const PBFFockRep& rep);

/// Free + interaction. Throws ParameterError naming the coefficient that
/// breaks hermiticity; the result is exactly Hermitian.
ComplexMatrix build_hamiltonian(HamiltonianKind kind, const JCParams& params, const PBFFockRep& rep);

struct SelectionReport {
  double max_offblock = 0;
  std::optional<std::pair<LadderLabel, LadderLabel>> worst;  // (from, to)
};

/// Largest |<V_{m',n'}|H_int|V_{m,n}>| outside (m-1,n+1), (m+1,n-1),
/// interior states only.
SelectionReport selection_rule_check(const ComplexMatrix& h_interact, const PBFFockRep& rep);

std::vector<double> spectrum(const ComplexMatrix& h);

struct QuenchResult {
  std::vector<double> times;
  std::vector<std::pair<int, int>> sectors;       // (m, n), ascending
  std::vector<std::vector<double>> populations;   // [time][sector]
  double norm_drift = 0;
};

std::vector<double> time_grid(double t_max, int steps);

/// psi(t) = V exp(-i L t) V^dagger psi0 with one diagonalization.
QuenchResult evolve(const ComplexMatrix& h, std::span<const cplx> psi0, std::span<const double> times,
                    const PBFFockRep& rep);

/// Standard two-level model w_b a+a + w_f s+s + lambda (a s+ + a+ s) on the
/// boson (x) fermion product, truncated at `cutoff` quanta; basis (m, n).
ComplexMatrix standard_jc_matrix(double omega_b, double omega_f, double lambda, int cutoff);

}  // namespace parastat
