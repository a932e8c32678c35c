#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "parastat/errors.hpp"
#include "parastat/linalg.hpp"
#include "parastat/simd/kernels.hpp"

namespace parastat {
namespace {

template <class T>
struct Ops;

template <>
struct Ops<double> {
  static double conj(double x) { return x; }
  static double re(double x) { return x; }
  static double from(cplx z) { return z.real(); }
  static void axpy(std::size_t n, double a, const double* x, double* y) { simd::active().daxpy(n, a, x, y); }
  static void axpyc(std::size_t n, double a, const double* x, double* y) { simd::active().daxpy(n, a, x, y); }
  static double dot(std::size_t n, const double* x, const double* y) { return simd::active().ddot(n, x, y); }
  static double dotc(std::size_t n, const double* x, const double* y) { return simd::active().ddot(n, x, y); }
  static void scale(std::size_t n, double a, double* x) { simd::active().dscale(n, a, x); }
  static void rot(std::size_t n, double c, double s, double* x, double* y) { simd::active().drot(n, c, s, x, y); }
  static double rank2_symv(std::size_t n, double a1, const double* x1, double a2, const double* x2, double* row,
                           double b, const double* u, double* p) {
    return simd::active().drank2_symv(n, a1, x1, a2, x2, row, b, u, p);
  }
  static void reflect4(std::size_t n, const double* h, double* x0, double* x1, double* x2, double* x3) {
    simd::active().dreflect4(n, h, x0, x1, x2, x3);
  }
};

template <>
struct Ops<cplx> {
  static cplx conj(cplx x) { return std::conj(x); }
  static double re(cplx x) { return x.real(); }
  static cplx from(cplx z) { return z; }
  static void axpy(std::size_t n, cplx a, const cplx* x, cplx* y) { simd::active().axpy(n, a, x, y); }
  static void axpyc(std::size_t n, cplx a, const cplx* x, cplx* y) { simd::active().axpyc(n, a, x, y); }
  static cplx dot(std::size_t n, const cplx* x, const cplx* y) { return simd::active().dot(n, x, y); }
  static cplx dotc(std::size_t n, const cplx* x, const cplx* y) { return simd::active().dotc(n, x, y); }
  static void scale(std::size_t n, cplx a, cplx* x) { simd::active().scale(n, a, x); }
  static void rot(std::size_t n, double c, double s, cplx* x, cplx* y) { simd::active().rot(n, c, s, x, y); }
  static cplx rank2_symv(std::size_t n, cplx a1, const cplx* x1, cplx a2, const cplx* x2, cplx* row, cplx b,
                         const cplx* u, cplx* p) {
    return simd::active().rank2_symv(n, a1, x1, a2, x2, row, b, u, p);
  }
  static void reflect4(std::size_t n, const cplx* h, cplx* x0, cplx* x1, cplx* x2, cplx* x3) {
    simd::active().reflect4(n, h, x0, x1, x2, x3);
  }
};

template <class T>
struct Square {
  std::size_t n = 0;
  std::vector<T> data;

  explicit Square(std::size_t size) : n(size), data(size * size, T{}) {}
  T& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
  T* row(std::size_t i) { return data.data() + i * n; }
};

// x -> unit v with (I - 2 v v^dagger) x = alpha e_1; false if x is already
// a multiple of e_1.
template <class T>
bool householder(std::vector<T>& v, T& alpha) {
  double xnorm = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) xnorm = std::hypot(xnorm, std::abs(v[i]));
  if (v.empty() || xnorm == 0.0) return false;
  const double x0abs = std::abs(v[0]);
  const T phase = x0abs == 0.0 ? T(1.0) : v[0] / x0abs;
  alpha = -phase * std::hypot(x0abs, xnorm);
  v[0] -= alpha;
  double vn = 0.0;
  for (const T& z : v) vn = std::hypot(vn, std::abs(z));
  for (T& z : v) z /= vn;
  return true;
}

template <class T>
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;  // off[i] couples i and i+1; off[n-1] = 0
  Square<T> basis_t{0};     // rows are the columns of the unitary Q D
};

// Unitary reduction A = Q T Q^dagger with T real symmetric tridiagonal, using
// only the lower triangle. The rank-2 update of one step and the product
// A v of the next share a single pass over the trailing rows. The complex
// sub-diagonal is then rotated to be real by a diagonal phase matrix D.
template <class T>
Tridiagonal<T> tridiagonalize(Square<T>& a) {
  using O = Ops<T>;
  const std::size_t n = a.n;
  std::vector<std::vector<T>> reflectors(n > 2 ? n - 2 : 0);
  std::vector<T> sub(n, T{});

  std::vector<T> v, p, w, v2, p2;
  T alpha{}, alpha2{};
  bool has = false;
  if (n > 2) {
    v.resize(n - 1);
    for (std::size_t i = 1; i < n; ++i) v[i - 1] = a(i, 0);
    has = householder(v, alpha);
    if (has) {
      p.assign(n - 1, T{});
      for (std::size_t r = 0; r + 1 < n; ++r) {
        const T* row = a.row(1 + r) + 1;
        p[r] += O::dot(r + 1, row, v.data());
        if (r > 0) O::axpyc(r, v[r], row, p.data());
      }
    }
  }
  for (std::size_t j = 0; j + 2 < n; ++j) {
    const std::size_t s = j + 1;
    const std::size_t m = n - s;
    if (has) {
      sub[j] = alpha;
      const double kk = O::re(O::dotc(m, v.data(), p.data()));
      w = p;
      O::axpy(m, T(-kk), v.data(), w.data());
      for (std::size_t r = 0; r < m; ++r) a(s + r, s) -= 2.0 * (v[r] * O::conj(w[0]) + w[r] * O::conj(v[0]));
      a(s, s) = O::re(a(s, s));
      reflectors[j] = v;
    } else {
      sub[j] = a(s, j);
    }
    bool has2 = false;
    if (j + 3 < n) {
      v2.resize(m - 1);
      for (std::size_t r = 1; r < m; ++r) v2[r - 1] = a(s + r, s);
      has2 = householder(v2, alpha2);
    }
    if (has2) p2.assign(m - 1, T{});
    for (std::size_t r = 1; r < m; ++r) {
      T* row = a.row(s + r) + s + 1;  // columns s+1 .. s+r
      if (has && has2) {
        const T below = O::rank2_symv(r - 1, -2.0 * v[r], w.data() + 1, -2.0 * w[r], v.data() + 1, row,
                                      v2[r - 1], v2.data(), p2.data());
        T& dg = row[r - 1];
        dg = O::re(dg - 2.0 * (v[r] * O::conj(w[r]) + w[r] * O::conj(v[r])));
        p2[r - 1] += below + dg * v2[r - 1];
        continue;
      }
      if (has) {
        O::axpyc(r, -2.0 * v[r], w.data() + 1, row);
        O::axpyc(r, -2.0 * w[r], v.data() + 1, row);
        row[r - 1] = O::re(row[r - 1]);
      }
      if (has2) {
        p2[r - 1] += O::dot(r, row, v2.data());
        if (r > 1) O::axpyc(r - 1, v2[r - 1], row, p2.data());
      }
    }
    std::swap(v, v2);
    std::swap(p, p2);
    alpha = alpha2;
    has = has2;
  }
  if (n >= 2) sub[n - 2] = a(n - 1, n - 2);

  Tridiagonal<T> t;
  t.diag.resize(n);
  t.off.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) t.diag[i] = O::re(a(i, i));

  // phases so that D^dagger T D is real with nonnegative sub-diagonal
  std::vector<T> ph(n, T(1.0));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double ea = std::abs(sub[i]);
    t.off[i] = ea;
    ph[i + 1] = ea == 0.0 ? ph[i] : ph[i] * (sub[i] / ea);
  }

  // Q = H_0 H_1 ... H_{n-3}, stored transposed (row c = column c of Q).
  // H_jj only touches columns c > jj of the partial product; reflectors are
  // applied in groups so each row is streamed once per group.
  Square<T> qt(n);
  for (std::size_t i = 0; i < n; ++i) qt(i, i) = T(1.0);
  constexpr std::size_t kGroup = 32;
  for (std::size_t hi = reflectors.size(); hi > 0;) {
    const std::size_t lo = hi > kGroup ? hi - kGroup : 0;
    std::size_t c = lo + 1;
    for (; c + 4 <= n; c += 4) {
      // rows below a reflector's offset are zero there, so the block may
      // include them
      for (std::size_t jj = std::min(hi, c + 4); jj-- > lo;) {
        const auto& hv = reflectors[jj];
        if (hv.empty()) continue;
        const std::size_t off = jj + 1;
        O::reflect4(hv.size(), hv.data(), qt.row(c) + off, qt.row(c + 1) + off, qt.row(c + 2) + off,
                    qt.row(c + 3) + off);
      }
    }
    for (; c < n; ++c) {
      T* row = qt.row(c);
      for (std::size_t jj = std::min(hi, c); jj-- > lo;) {
        const auto& hv = reflectors[jj];
        if (hv.empty()) continue;
        const std::size_t off = jj + 1;
        const T sc = O::dotc(hv.size(), hv.data(), row + off);
        if (sc != T{}) O::axpy(hv.size(), -2.0 * sc, hv.data(), row + off);
      }
    }
    hi = lo;
  }
  for (std::size_t c = 0; c < n; ++c)
    if (ph[c] != T(1.0)) O::scale(n, ph[c], qt.row(c));
  t.basis_t = std::move(qt);
  return t;
}

// Rotations of one QL sweep, i = top-1 down to top-count, stored as (c, s)
// pairs in a shared buffer.
struct Sweep {
  std::size_t top, count, offset;
};

// Replays recorded sweeps on column blocks of z_t that stay in cache.
template <class T>
void apply_sweeps(Square<T>& z_t, std::vector<Sweep>& sweeps, std::vector<double>& cs) {
  constexpr std::size_t kDoubles = sizeof(T) / sizeof(double);
  constexpr std::size_t kBlock = 64;  // doubles
  const auto& k = simd::active();
  const std::size_t len = z_t.n * kDoubles;
  // the block is packed contiguously so a sweep walks one dense strip
  std::vector<double> strip(z_t.n * kBlock);
  for (std::size_t c0 = 0; c0 < len; c0 += kBlock) {
    const std::size_t w = std::min(kBlock, len - c0);
    for (std::size_t r = 0; r < z_t.n; ++r) {
      const double* src = reinterpret_cast<const double*>(z_t.row(r)) + c0;
      std::copy(src, src + w, strip.data() + r * kBlock);
    }
    for (const Sweep& sw : sweeps) k.drot_sweep(w, sw.count, cs.data() + sw.offset, strip.data() + sw.top * kBlock, kBlock);
    for (std::size_t r = 0; r < z_t.n; ++r) {
      double* dst = reinterpret_cast<double*>(z_t.row(r)) + c0;
      std::copy(strip.data() + r * kBlock, strip.data() + r * kBlock + w, dst);
    }
  }
  sweeps.clear();
  cs.clear();
}

// Implicit QL with Wilkinson-type shift on the real tridiagonal; rotations
// act on the rows of z_t (the eigenvector columns, transposed).
template <class T>
void tql(std::vector<double>& d, std::vector<double>& e, Square<T>& z_t) {
  const std::size_t n = d.size();
  constexpr int kMaxIter = 60;
  constexpr std::size_t kFlush = std::size_t{1} << 21;
  std::vector<Sweep> sweeps;
  std::vector<double> cs;
  cs.reserve(std::min(kFlush, 2 * n * n) + 2 * n);
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxIter) throw StructureError("hermitian_eig: QL iteration did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        Sweep sw{m, 0, cs.size()};
        for (std::size_t i = m; i-- > l;) {
          const double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          // z_{i+1} <- c z_{i+1} + s z_i,  z_i <- c z_i - s z_{i+1}
          cs.push_back(c);
          cs.push_back(s);
          ++sw.count;
        }
        if (sw.count > 0) sweeps.push_back(sw);
        if (cs.size() >= kFlush) apply_sweeps(z_t, sweeps, cs);
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  apply_sweeps(z_t, sweeps, cs);
}

template <class T>
EigenDecomposition solve(const ComplexMatrix& h, double scale) {
  using O = Ops<T>;
  const std::size_t n = h.rows();
  Square<T> a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) a(i, j) = O::from(0.5 * (h(i, j) + std::conj(h(j, i))));

  Tridiagonal<T> t = tridiagonalize(a);
  tql(t.diag, t.off, t.basis_t);

  // canonical phase: first component above threshold made real positive
  std::vector<std::size_t> lead(n, 0);
  for (std::size_t c = 0; c < n; ++c) {
    const T* row = t.basis_t.row(c);
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) best = std::max(best, std::abs(row[i]));
    const double thresh = 1e-8 * best;
    std::size_t idx = 0;
    while (idx < n && std::abs(row[idx]) <= thresh) ++idx;
    lead[c] = idx;
    const T z = row[idx];
    O::scale(n, O::conj(z) / std::abs(z), t.basis_t.row(c));
  }

  // ascending values; within a cluster of equal values (to 1e-12 relative)
  // order by the position of the leading component
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return t.diag[x] < t.diag[y]; });
  const double tie = 1e-12 * scale;
  for (std::size_t begin = 0; begin < n;) {
    std::size_t end = begin + 1;
    while (end < n && t.diag[order[end]] - t.diag[order[end - 1]] <= tie) ++end;
    std::stable_sort(order.begin() + begin, order.begin() + end,
                     [&](std::size_t x, std::size_t y) { return lead[x] < lead[y]; });
    begin = end;
  }

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = t.diag[order[c]];
    const T* src = t.basis_t.row(order[c]);
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = src[r];
  }
  return out;
}

}  // namespace

EigenDecomposition hermitian_eig(const ComplexMatrix& h) {
  if (!h.is_square()) throw ShapeError("hermitian_eig: matrix not square");
  const std::size_t n = h.rows();
  const double scale = std::max(1.0, h.max_abs());
  const double violation = hermiticity_violation(h);
  if (violation > 1e-10 * scale) {
    throw HermiticityError("hermitian_eig: input not Hermitian (violation " + std::to_string(violation) + ")",
                           violation);
  }
  if (n == 0) return {};
  bool real = true;
  for (std::size_t k = 0; k < h.size() && real; ++k) real = h.data()[k].imag() == 0.0;
  return real ? solve<double>(h, scale) : solve<cplx>(h, scale);
}

}  // namespace parastat
