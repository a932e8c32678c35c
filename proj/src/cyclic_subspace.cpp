#include <cmath>
#include <string>

#include "parastat/errors.hpp"
#include "parastat/linalg.hpp"
#include "parastat/simd/kernels.hpp"

namespace parastat {

ComplexMatrix cyclic_subspace(std::span<const ComplexMatrix* const> ops,
                              std::span<const cplx> seed, double tol) {
  const std::size_t n = seed.size();
  for (const ComplexMatrix* op : ops) {
    if (!op->is_square() || op->rows() != n) {
      throw ShapeError("cyclic_subspace: operator of dimension " + std::to_string(op->rows()) +
                       " does not act on seed of length " + std::to_string(n));
    }
  }
  if (!(tol > 0.0)) throw ArgumentError("cyclic_subspace: tol must be positive");
  const double seed_norm = norm(seed);
  if (seed_norm <= tol) throw ArgumentError("cyclic_subspace: zero seed");

  const auto& k = simd::active();
  std::vector<ComplexVector> basis;
  basis.emplace_back(seed.begin(), seed.end());
  k.scale(n, 1.0 / seed_norm, basis.back().data());

  // modified Gram-Schmidt, applied twice
  auto orthogonalize = [&](ComplexVector& w) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const ComplexVector& q : basis) {
        const cplx c = k.dotc(n, q.data(), w.data());
        k.axpy(n, -c, q.data(), w.data());
      }
    }
  };

  for (std::size_t cur = 0; cur < basis.size(); ++cur) {
    for (const ComplexMatrix* op : ops) {
      ComplexVector w = matvec(*op, basis[cur]);
      orthogonalize(w);
      const double wn = norm(w);
      if (wn <= tol) continue;
      k.scale(n, 1.0 / wn, w.data());
      basis.push_back(std::move(w));
      if (basis.size() > n) throw StructureError("cyclic_subspace: basis exceeds ambient dimension");
    }
  }

  ComplexMatrix out(n, basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c) out.set_column(c, basis[c]);
  return out;
}

ComplexMatrix cyclic_subspace(std::span<const ComplexMatrix> ops, std::span<const cplx> seed,
                              double tol) {
  std::vector<const ComplexMatrix*> ptrs;
  ptrs.reserve(ops.size());
  for (const ComplexMatrix& op : ops) ptrs.push_back(&op);
  return cyclic_subspace(std::span<const ComplexMatrix* const>(ptrs), seed, tol);
}

}  // namespace parastat
