#pragma once

// Inner-loop kernels for complex and real double vectors. Every routine has a scalar
// reference implementation; an AVX2/FMA variant is selected at runtime when
// the CPU supports it. Setting PARASTAT_SIMD=scalar forces the reference path.

#include <complex>
#include <cstddef>

namespace parastat::simd {

using cplx = std::complex<double>;

struct Kernels {
  const char* name;
  // y += a * x
  void (*axpy)(std::size_t n, cplx a, const cplx* x, cplx* y);
  // sum_i x_i * y_i
  cplx (*dot)(std::size_t n, const cplx* x, const cplx* y);
  // sum_i conj(x_i) * y_i
  cplx (*dotc)(std::size_t n, const cplx* x, const cplx* y);
  // x *= a
  void (*scale)(std::size_t n, cplx a, cplx* x);
  // Plane rotation with real c, s:  x' = c x + s y,  y' = c y - s x
  void (*rot)(std::size_t n, double c, double s, cplx* x, cplx* y);
  // y += a * conj(x)
  void (*axpyc)(std::size_t n, cplx a, const cplx* x, cplx* y);

  void (*daxpy)(std::size_t n, double a, const double* x, double* y);
  double (*ddot)(std::size_t n, const double* x, const double* y);
  void (*dscale)(std::size_t n, double a, double* x);
  void (*drot)(std::size_t n, double c, double s, double* x, double* y);
  // For k = 0..count-1: drot(n, cs[2k], cs[2k+1], row_k, row_{k+1}) where
  // row_k = top - k * stride.
  void (*drot_sweep)(std::size_t n, std::size_t count, const double* cs, double* top, std::size_t stride);

  // Fused step of Hermitian tridiagonalization on one stored row segment:
  // row += a1 conj(x1) + a2 conj(x2); p += b conj(row); returns sum row * u.
  cplx (*rank2_symv)(std::size_t n, cplx a1, const cplx* x1, cplx a2, const cplx* x2, cplx* row, cplx b,
                     const cplx* u, cplx* p);
  double (*drank2_symv)(std::size_t n, double a1, const double* x1, double a2, const double* x2, double* row,
                        double b, const double* u, double* p);
  // Householder reflection of four vectors: x_r -= 2 (h^dagger x_r) h.
  void (*reflect4)(std::size_t n, const cplx* h, cplx* x0, cplx* x1, cplx* x2, cplx* x3);
  void (*dreflect4)(std::size_t n, const double* h, double* x0, double* x1, double* x2, double* x3);
};

const Kernels& scalar_kernels();

/// AVX2 kernels, or nullptr when not compiled in or not supported by the CPU.
const Kernels* avx2_kernels();

/// The kernel table used by the library.
const Kernels& active();

}  // namespace parastat::simd
