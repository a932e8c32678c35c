#include "parastat/simd/kernels.hpp"

namespace parastat::simd {
namespace {

// Explicit real arithmetic: std::complex operator* carries NaN recovery
// branches we do not want in the reference loops.

void axpy(std::size_t n, cplx a, const cplx* x, cplx* y) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = {y[i].real() + (ar * xr - ai * xi), y[i].imag() + (ar * xi + ai * xr)};
  }
}

cplx dot(std::size_t n, const cplx* x, const cplx* y) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr - xi * yi;
    im += xr * yi + xi * yr;
  }
  return {re, im};
}

cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

void scale(std::size_t n, cplx a, cplx* x) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    x[i] = {ar * xr - ai * xi, ar * xi + ai * xr};
  }
}

void rot(std::size_t n, double c, double s, cplx* x, cplx* y) {
  for (std::size_t i = 0; i < n; ++i) {
    const cplx xi = x[i], yi = y[i];
    x[i] = {c * xi.real() + s * yi.real(), c * xi.imag() + s * yi.imag()};
    y[i] = {c * yi.real() - s * xi.real(), c * yi.imag() - s * xi.imag()};
  }
}

void axpyc(std::size_t n, cplx a, const cplx* x, cplx* y) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = -x[i].imag();
    y[i] = {y[i].real() + (ar * xr - ai * xi), y[i].imag() + (ar * xi + ai * xr)};
  }
}

void daxpy(std::size_t n, double a, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double ddot(std::size_t n, const double* x, const double* y) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void dscale(std::size_t n, double a, double* x) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void drot(std::size_t n, double c, double s, double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xv = x[i], yv = y[i];
    x[i] = c * xv + s * yv;
    y[i] = c * yv - s * xv;
  }
}

void drot_sweep(std::size_t n, std::size_t count, const double* cs, double* top, std::size_t stride) {
  for (std::size_t k = 0; k < count; ++k) drot(n, cs[2 * k], cs[2 * k + 1], top - k * stride, top - (k + 1) * stride);
}

cplx rank2_symv(std::size_t n, cplx a1, const cplx* x1, cplx a2, const cplx* x2, cplx* row, cplx b,
                const cplx* u, cplx* p) {
  double sr = 0.0, si = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double y1r = x1[i].real(), y1i = -x1[i].imag();
    const double y2r = x2[i].real(), y2i = -x2[i].imag();
    const double rr = row[i].real() + (a1.real() * y1r - a1.imag() * y1i) + (a2.real() * y2r - a2.imag() * y2i);
    const double ri = row[i].imag() + (a1.real() * y1i + a1.imag() * y1r) + (a2.real() * y2i + a2.imag() * y2r);
    row[i] = {rr, ri};
    sr += rr * u[i].real() - ri * u[i].imag();
    si += rr * u[i].imag() + ri * u[i].real();
    p[i] = {p[i].real() + (b.real() * rr + b.imag() * ri), p[i].imag() + (b.imag() * rr - b.real() * ri)};
  }
  return {sr, si};
}

double drank2_symv(std::size_t n, double a1, const double* x1, double a2, const double* x2, double* row, double b,
                   const double* u, double* p) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = row[i] + a1 * x1[i] + a2 * x2[i];
    row[i] = r;
    s += r * u[i];
    p[i] += b * r;
  }
  return s;
}

void reflect4(std::size_t n, const cplx* h, cplx* x0, cplx* x1, cplx* x2, cplx* x3) {
  cplx* xs[4] = {x0, x1, x2, x3};
  for (cplx* x : xs) {
    const cplx s = dotc(n, h, x);
    axpy(n, -2.0 * s, h, x);
  }
}

void dreflect4(std::size_t n, const double* h, double* x0, double* x1, double* x2, double* x3) {
  double* xs[4] = {x0, x1, x2, x3};
  for (double* x : xs) daxpy(n, -2.0 * ddot(n, h, x), h, x);
}

const Kernels kScalar{"scalar", axpy, dot, dotc, scale, rot, axpyc, daxpy, ddot, dscale, drot, drot_sweep,
                      rank2_symv, drank2_symv, reflect4, dreflect4};

}  // namespace

const Kernels& scalar_kernels() { return kScalar; }

}  // namespace parastat::simd
