#include <cctype>
#include <cmath>

#include "parastat/errors.hpp"
#include "parastat/fock.hpp"
#include "parastat/jc.hpp"

namespace parastat {

std::string_view to_string(HamiltonianKind k) {
  switch (k) {
    case HamiltonianKind::Dyn: return "dyn";
    case HamiltonianKind::DynStar: return "dynstar";
    case HamiltonianKind::Free: return "free";
  }
  return "?";
}

HamiltonianKind parse_hamiltonian_kind(std::string_view s) {
  std::string v(s);
  for (char& c : v) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (v == "dyn") return HamiltonianKind::Dyn;
  if (v == "dynstar" || v == "dyn*") return HamiltonianKind::DynStar;
  if (v == "free") return HamiltonianKind::Free;
  throw ArgumentError("unknown hamiltonian '" + std::string(s) + "' (dyn, dynstar, free)");
}

namespace {

void check_rep(const JCParams& params, const PBFFockRep& rep) {
  if (params.p != rep.p) {
    throw ArgumentError("hamiltonian: order p=" + std::to_string(params.p) + " does not match rep order " +
                        std::to_string(rep.p));
  }
  if (!std::isfinite(params.omega_b)) throw ParameterError("omega_b is not finite", "omega_b");
  if (!std::isfinite(params.omega_f)) throw ParameterError("omega_f is not finite", "omega_f");
}

}  // namespace

ComplexMatrix free_hamiltonian(const JCParams& params, const PBFFockRep& rep) {
  check_rep(params, rep);
  const std::size_t d = rep.dimension();
  ComplexMatrix h = (params.omega_b / 2) * bracket(rep.b_plus(), rep.b_minus(), BracketSign::Anticommutator);
  h += (params.omega_f / 2) * bracket(rep.f_plus(), rep.f_minus(), BracketSign::Commutator);
  h += ((params.omega_f - params.omega_b) * params.p / 2) * ComplexMatrix::identity(d);
  return h;
}

ComplexMatrix interaction(HamiltonianKind kind, const JCParams& params, const PBFFockRep& rep) {
  check_rep(params, rep);
  const auto& bp = rep.b_plus();
  const auto& bm = rep.b_minus();
  const auto& fp = rep.f_plus();
  const auto& fm = rep.f_minus();
  switch (kind) {
    case HamiltonianKind::Free: return ComplexMatrix(rep.dimension(), rep.dimension());
    case HamiltonianKind::Dyn:
      return (params.lambda / 2.0) *
             (bracket(bm, fp, BracketSign::Anticommutator) + bracket(bp, fm, BracketSign::Anticommutator));
    case HamiltonianKind::DynStar:
      return params.lambda1 * (bm * fp) + params.lambda2 * (fp * bm) + std::conj(params.lambda2) * (bp * fm) +
             std::conj(params.lambda1) * (fm * bp);
  }
  return {};
}

ComplexMatrix build_hamiltonian(HamiltonianKind kind, const JCParams& params, const PBFFockRep& rep) {
  ComplexMatrix h0 = free_hamiltonian(params, rep);
  const double scale = std::max(1.0, h0.max_abs());
  if (hermiticity_violation(h0) > 1e-10 * scale) throw ParameterError("free part is not Hermitian", "omega_b");
  ComplexMatrix hi = interaction(kind, params, rep);
  if (const double v = hermiticity_violation(hi); v > 1e-10 * scale) {
    const std::string coeff = kind == HamiltonianKind::Dyn ? "lambda" : "lambda1/lambda2";
    throw ParameterError("interaction is not Hermitian (violation " + std::to_string(v) + "); check " + coeff,
                         coeff);
  }
  ComplexMatrix h = h0 + hi;
  ComplexMatrix ha = h.adjoint();
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) h(i, j) = 0.5 * (h(i, j) + ha(i, j));
  return h;
}

SelectionReport selection_rule_check(const ComplexMatrix& h_interact, const PBFFockRep& rep) {
  if (h_interact.rows() != rep.dimension() || h_interact.cols() != rep.dimension()) {
    throw ShapeError("selection_rule_check: matrix does not act on the ladder");
  }
  SelectionReport r;
  for (std::size_t j = 0; j < rep.dimension(); ++j) {
    if (!rep.interior(j)) continue;
    const auto& from = rep.labels[j];
    for (std::size_t i = 0; i < rep.dimension(); ++i) {
      if (!rep.interior(i)) continue;
      const auto& to = rep.labels[i];
      const bool allowed = (to.m == from.m - 1 && to.n == from.n + 1) || (to.m == from.m + 1 && to.n == from.n - 1);
      if (allowed) continue;
      const double v = std::abs(h_interact(i, j));
      if (v > r.max_offblock) {
        r.max_offblock = v;
        r.worst = std::pair{from, to};
      }
    }
  }
  return r;
}

std::vector<double> spectrum(const ComplexMatrix& h) { return hermitian_eig(h).values; }

std::vector<double> time_grid(double t_max, int steps) {
  if (steps < 1) throw ArgumentError("time grid needs at least one step");
  if (!(t_max >= 0) || !std::isfinite(t_max)) throw ArgumentError("t_max must be finite and >= 0");
  std::vector<double> t(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k) t[k] = t_max * k / steps;
  return t;
}

QuenchResult evolve(const ComplexMatrix& h, std::span<const cplx> psi0, std::span<const double> times,
                    const PBFFockRep& rep) {
  const std::size_t d = rep.dimension();
  if (h.rows() != d || h.cols() != d || psi0.size() != d) throw ShapeError("evolve: dimension mismatch");
  if (std::abs(norm(psi0) - 1.0) > 1e-10) throw ArgumentError("evolve: initial state is not unit norm");

  const auto eig = hermitian_eig(h);
  const ComplexVector c = matvec(eig.vectors.adjoint(), psi0);

  QuenchResult out;
  out.times.assign(times.begin(), times.end());
  std::map<std::pair<int, int>, std::size_t> sector_index;
  for (const auto& l : rep.labels) sector_index.emplace(std::pair{l.m, l.n}, 0);
  for (auto& [k, v] : sector_index) {
    v = out.sectors.size();
    out.sectors.push_back(k);
  }
  std::vector<std::size_t> sector_of(d);
  for (std::size_t i = 0; i < d; ++i) sector_of[i] = sector_index.at({rep.labels[i].m, rep.labels[i].n});

  ComplexVector phased(d);
  for (double t : times) {
    for (std::size_t k = 0; k < d; ++k) phased[k] = std::polar(1.0, -eig.values[k] * t) * c[k];
    const ComplexVector psi = matvec(eig.vectors, phased);
    std::vector<double> pop(out.sectors.size(), 0.0);
    double total = 0;
    for (std::size_t i = 0; i < d; ++i) {
      const double a = std::norm(psi[i]);
      pop[sector_of[i]] += a;
      total += a;
    }
    out.norm_drift = std::max(out.norm_drift, std::abs(total - 1.0));
    out.populations.push_back(std::move(pop));
  }
  return out;
}

ComplexMatrix standard_jc_matrix(double omega_b, double omega_f, double lambda, int cutoff) {
  const LadderOps b = boson_ops(cutoff);
  const LadderOps f = fermion_ops();
  const ComplexMatrix ib = ComplexMatrix::identity(b.number.rows());
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  ComplexMatrix h = omega_b * kron(b.number, i2);
  h += omega_f * kron(ib, f.number);
  h += lambda * (kron(b.lower, f.raise) + kron(b.raise, f.lower));
  return h;
}

}  // namespace parastat
