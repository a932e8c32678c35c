#include <immintrin.h>

#include "parastat/simd/kernels.hpp"

// Compiled with -mavx2 -mfma; only reached after a cpuid check.
// A __m256d holds two interleaved complex doubles: [re0 im0 re1 im1].

namespace parastat::simd {
namespace {

inline const double* as_d(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* as_d(cplx* p) { return reinterpret_cast<double*>(p); }

void axpy(std::size_t n, cplx a, const cplx* x, cplx* y) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(as_d(x + i));
    const __m256d xs = _mm256_permute_pd(xv, 0b0101);  // [im0 re0 im1 re1]
    // even lanes: ar*xr - ai*xi, odd lanes: ar*xi + ai*xr
    const __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs));
    _mm256_storeu_pd(as_d(y + i), _mm256_add_pd(_mm256_loadu_pd(as_d(y + i)), prod));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = {y[i].real() + (a.real() * xr - a.imag() * xi),
            y[i].imag() + (a.real() * xi + a.imag() * xr)};
  }
}

// acc_re_dup accumulates x * [yr yr], acc_im_dup accumulates x * [yi yi].
inline void dot_accumulate(std::size_t n, const cplx* x, const cplx* y, __m256d& acc1,
                           __m256d& acc2, std::size_t& i) {
  acc1 = _mm256_setzero_pd();
  acc2 = _mm256_setzero_pd();
  for (i = 0; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(as_d(x + i));
    const __m256d yv = _mm256_loadu_pd(as_d(y + i));
    acc1 = _mm256_fmadd_pd(xv, _mm256_movedup_pd(yv), acc1);
    acc2 = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b1111), acc2);
  }
}

cplx dot(std::size_t n, const cplx* x, const cplx* y) {
  __m256d acc1, acc2;
  std::size_t i;
  dot_accumulate(n, x, y, acc1, acc2, i);
  alignas(32) double a1[4], a2[4];
  _mm256_store_pd(a1, acc1);
  _mm256_store_pd(a2, acc2);
  double re = (a1[0] + a1[2]) - (a2[1] + a2[3]);
  double im = (a1[1] + a1[3]) + (a2[0] + a2[2]);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
  }
  return {re, im};
}

cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
  __m256d acc1, acc2;
  std::size_t i;
  dot_accumulate(n, x, y, acc1, acc2, i);
  alignas(32) double a1[4], a2[4];
  _mm256_store_pd(a1, acc1);
  _mm256_store_pd(a2, acc2);
  double re = (a1[0] + a1[2]) + (a2[1] + a2[3]);
  double im = (a2[0] + a2[2]) - (a1[1] + a1[3]);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

void scale(std::size_t n, cplx a, cplx* x) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(as_d(x + i));
    const __m256d xs = _mm256_permute_pd(xv, 0b0101);
    _mm256_storeu_pd(as_d(x + i), _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs)));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    x[i] = {a.real() * xr - a.imag() * xi, a.real() * xi + a.imag() * xr};
  }
}

void drot(std::size_t n, double c, double s, double* x, double* y) {
  const __m256d cv = _mm256_set1_pd(c);
  const __m256d sv = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d yv = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(x + i, _mm256_fmadd_pd(sv, yv, _mm256_mul_pd(cv, xv)));
    _mm256_storeu_pd(y + i, _mm256_fnmadd_pd(sv, xv, _mm256_mul_pd(cv, yv)));
  }
  for (; i < n; ++i) {
    const double xv = x[i], yv = y[i];
    x[i] = c * xv + s * yv;
    y[i] = c * yv - s * xv;
  }
}

// Row k+1 is read once and row k written once per rotation; the row shared
// by consecutive rotations stays in registers. R independent lanes of four
// hide the latency of the carried dependency.
template <int R>
inline void sweep_chunk(std::size_t count, const double* cs, double* top, std::size_t stride) {
  __m256d carry[R];
#pragma GCC unroll 8
  for (int r = 0; r < R; ++r) carry[r] = _mm256_loadu_pd(top + 4 * r);
  double* row = top;
  for (std::size_t k = 0; k < count; ++k) {
    const __m256d cv = _mm256_set1_pd(cs[2 * k]);
    const __m256d sv = _mm256_set1_pd(cs[2 * k + 1]);
    double* next = row - stride;
#pragma GCC unroll 8
    for (int r = 0; r < R; ++r) {
      const __m256d yv = _mm256_loadu_pd(next + 4 * r);
      _mm256_storeu_pd(row + 4 * r, _mm256_fmadd_pd(sv, yv, _mm256_mul_pd(cv, carry[r])));
      carry[r] = _mm256_fnmadd_pd(sv, carry[r], _mm256_mul_pd(cv, yv));
    }
    row = next;
  }
#pragma GCC unroll 8
  for (int r = 0; r < R; ++r) _mm256_storeu_pd(row + 4 * r, carry[r]);
}

void drot_sweep(std::size_t n, std::size_t count, const double* cs, double* top, std::size_t stride) {
  std::size_t j = 0;
  for (; j + 32 <= n; j += 32) sweep_chunk<8>(count, cs, top + j, stride);
  for (; j + 4 <= n; j += 4) sweep_chunk<1>(count, cs, top + j, stride);
  if (j < n) {
    for (std::size_t k = 0; k < count; ++k) {
      double* x = top - k * stride + j;
      double* y = x - stride;
      for (std::size_t i = 0; i < n - j; ++i) {
        const double xv = x[i], yv = y[i];
        x[i] = cs[2 * k] * xv + cs[2 * k + 1] * yv;
        y[i] = cs[2 * k] * yv - cs[2 * k + 1] * xv;
      }
    }
  }
}

void rot(std::size_t n, double c, double s, cplx* x, cplx* y) { drot(2 * n, c, s, as_d(x), as_d(y)); }

void axpyc(std::size_t n, cplx a, const cplx* x, cplx* y) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  const __m256d flip = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_xor_pd(_mm256_loadu_pd(as_d(x + i)), flip);  // conj
    const __m256d xs = _mm256_permute_pd(xv, 0b0101);
    const __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs));
    _mm256_storeu_pd(as_d(y + i), _mm256_add_pd(_mm256_loadu_pd(as_d(y + i)), prod));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = -x[i].imag();
    y[i] = {y[i].real() + (a.real() * xr - a.imag() * xi),
            y[i].imag() + (a.real() * xi + a.imag() * xr)};
  }
}

void daxpy(std::size_t n, double a, const double* x, double* y) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

double ddot(std::size_t n, const double* x, const double* y) {
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  alignas(32) double a[4];
  _mm256_store_pd(a, _mm256_add_pd(acc0, acc1));
  double s = (a[0] + a[2]) + (a[1] + a[3]);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void dscale(std::size_t n, double a, double* x) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_mul_pd(av, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

inline __m256d cmul(__m256d ar, __m256d ai, __m256d y) {
  return _mm256_fmaddsub_pd(ar, y, _mm256_mul_pd(ai, _mm256_permute_pd(y, 0b0101)));
}

inline __m256d conj2(__m256d v) { return _mm256_xor_pd(v, _mm256_set_pd(-0.0, 0.0, -0.0, 0.0)); }

// [re im] of sum x * y from the two accumulators of dot_accumulate
inline cplx reduce_dot(__m256d acc1, __m256d acc2) {
  alignas(32) double a1[4], a2[4];
  _mm256_store_pd(a1, acc1);
  _mm256_store_pd(a2, acc2);
  return {(a1[0] + a1[2]) - (a2[1] + a2[3]), (a1[1] + a1[3]) + (a2[0] + a2[2])};
}

inline cplx reduce_dotc(__m256d acc1, __m256d acc2) {
  alignas(32) double a1[4], a2[4];
  _mm256_store_pd(a1, acc1);
  _mm256_store_pd(a2, acc2);
  return {(a1[0] + a1[2]) + (a2[1] + a2[3]), (a2[0] + a2[2]) - (a1[1] + a1[3])};
}

cplx rank2_symv(std::size_t n, cplx a1, const cplx* x1, cplx a2, const cplx* x2, cplx* row, cplx b,
                const cplx* u, cplx* p) {
  const __m256d a1r = _mm256_set1_pd(a1.real()), a1i = _mm256_set1_pd(a1.imag());
  const __m256d a2r = _mm256_set1_pd(a2.real()), a2i = _mm256_set1_pd(a2.imag());
  const __m256d br = _mm256_set1_pd(b.real()), bi = _mm256_set1_pd(b.imag());
  __m256d acc1 = _mm256_setzero_pd(), acc2 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d r = _mm256_loadu_pd(as_d(row + i));
    r = _mm256_add_pd(r, cmul(a1r, a1i, conj2(_mm256_loadu_pd(as_d(x1 + i)))));
    r = _mm256_add_pd(r, cmul(a2r, a2i, conj2(_mm256_loadu_pd(as_d(x2 + i)))));
    _mm256_storeu_pd(as_d(row + i), r);
    const __m256d uv = _mm256_loadu_pd(as_d(u + i));
    acc1 = _mm256_fmadd_pd(r, _mm256_movedup_pd(uv), acc1);
    acc2 = _mm256_fmadd_pd(r, _mm256_permute_pd(uv, 0b1111), acc2);
    _mm256_storeu_pd(as_d(p + i), _mm256_add_pd(_mm256_loadu_pd(as_d(p + i)), cmul(br, bi, conj2(r))));
  }
  cplx sum = reduce_dot(acc1, acc2);
  for (; i < n; ++i) {
    const double y1r = x1[i].real(), y1i = -x1[i].imag();
    const double y2r = x2[i].real(), y2i = -x2[i].imag();
    const double rr = row[i].real() + (a1.real() * y1r - a1.imag() * y1i) + (a2.real() * y2r - a2.imag() * y2i);
    const double ri = row[i].imag() + (a1.real() * y1i + a1.imag() * y1r) + (a2.real() * y2i + a2.imag() * y2r);
    row[i] = {rr, ri};
    sum += cplx(rr * u[i].real() - ri * u[i].imag(), rr * u[i].imag() + ri * u[i].real());
    p[i] = {p[i].real() + (b.real() * rr + b.imag() * ri), p[i].imag() + (b.imag() * rr - b.real() * ri)};
  }
  return sum;
}

double drank2_symv(std::size_t n, double a1, const double* x1, double a2, const double* x2, double* row, double b,
                   const double* u, double* p) {
  const __m256d av1 = _mm256_set1_pd(a1), av2 = _mm256_set1_pd(a2), bv = _mm256_set1_pd(b);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d r = _mm256_fmadd_pd(av1, _mm256_loadu_pd(x1 + i), _mm256_loadu_pd(row + i));
    r = _mm256_fmadd_pd(av2, _mm256_loadu_pd(x2 + i), r);
    _mm256_storeu_pd(row + i, r);
    acc = _mm256_fmadd_pd(r, _mm256_loadu_pd(u + i), acc);
    _mm256_storeu_pd(p + i, _mm256_fmadd_pd(bv, r, _mm256_loadu_pd(p + i)));
  }
  alignas(32) double a[4];
  _mm256_store_pd(a, acc);
  double sum = (a[0] + a[2]) + (a[1] + a[3]);
  for (; i < n; ++i) {
    const double r = row[i] + a1 * x1[i] + a2 * x2[i];
    row[i] = r;
    sum += r * u[i];
    p[i] += b * r;
  }
  return sum;
}

void reflect4(std::size_t n, const cplx* h, cplx* x0, cplx* x1, cplx* x2, cplx* x3) {
  cplx* xs[4] = {x0, x1, x2, x3};
  __m256d acc1[4], acc2[4];
  for (int r = 0; r < 4; ++r) acc1[r] = acc2[r] = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d hv = _mm256_loadu_pd(as_d(h + i));
    for (int r = 0; r < 4; ++r) {
      const __m256d xv = _mm256_loadu_pd(as_d(xs[r] + i));
      acc1[r] = _mm256_fmadd_pd(hv, _mm256_movedup_pd(xv), acc1[r]);
      acc2[r] = _mm256_fmadd_pd(hv, _mm256_permute_pd(xv, 0b1111), acc2[r]);
    }
  }
  const std::size_t tail = i;
  cplx coef[4];
  for (int r = 0; r < 4; ++r) {
    cplx s = reduce_dotc(acc1[r], acc2[r]);
    for (std::size_t j = tail; j < n; ++j) s += std::conj(h[j]) * xs[r][j];
    coef[r] = -2.0 * s;
  }
  __m256d cr[4], ci[4];
  for (int r = 0; r < 4; ++r) {
    cr[r] = _mm256_set1_pd(coef[r].real());
    ci[r] = _mm256_set1_pd(coef[r].imag());
  }
  for (i = 0; i + 2 <= n; i += 2) {
    const __m256d hv = _mm256_loadu_pd(as_d(h + i));
    for (int r = 0; r < 4; ++r) {
      double* x = as_d(xs[r] + i);
      _mm256_storeu_pd(x, _mm256_add_pd(_mm256_loadu_pd(x), cmul(cr[r], ci[r], hv)));
    }
  }
  for (; i < n; ++i)
    for (int r = 0; r < 4; ++r) {
      const double hr = h[i].real(), hi = h[i].imag();
      xs[r][i] += cplx(coef[r].real() * hr - coef[r].imag() * hi, coef[r].real() * hi + coef[r].imag() * hr);
    }
}

void dreflect4(std::size_t n, const double* h, double* x0, double* x1, double* x2, double* x3) {
  double* xs[4] = {x0, x1, x2, x3};
  __m256d acc[4];
  for (int r = 0; r < 4; ++r) acc[r] = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d hv = _mm256_loadu_pd(h + i);
    for (int r = 0; r < 4; ++r) acc[r] = _mm256_fmadd_pd(hv, _mm256_loadu_pd(xs[r] + i), acc[r]);
  }
  const std::size_t tail = i;
  double coef[4];
  __m256d cv[4];
  for (int r = 0; r < 4; ++r) {
    alignas(32) double a[4];
    _mm256_store_pd(a, acc[r]);
    double s = (a[0] + a[2]) + (a[1] + a[3]);
    for (std::size_t j = tail; j < n; ++j) s += h[j] * xs[r][j];
    coef[r] = -2.0 * s;
    cv[r] = _mm256_set1_pd(coef[r]);
  }
  for (i = 0; i + 4 <= n; i += 4) {
    const __m256d hv = _mm256_loadu_pd(h + i);
    for (int r = 0; r < 4; ++r) _mm256_storeu_pd(xs[r] + i, _mm256_fmadd_pd(cv[r], hv, _mm256_loadu_pd(xs[r] + i)));
  }
  for (; i < n; ++i)
    for (int r = 0; r < 4; ++r) xs[r][i] += coef[r] * h[i];
}

const Kernels kAvx2{"avx2", axpy, dot, dotc, scale, rot, axpyc, daxpy, ddot, dscale, drot, drot_sweep,
                    rank2_symv, drank2_symv, reflect4, dreflect4};

}  // namespace

const Kernels* avx2_table() { return &kAvx2; }

}  // namespace parastat::simd
