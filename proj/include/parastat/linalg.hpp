#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace parastat {

using cplx = std::complex<double>;
using ComplexVector = std::vector<cplx>;

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const cplx> diag);
  static ComplexMatrix diagonal(std::span<const double> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<cplx> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const cplx> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  cplx* data() noexcept { return data_.data(); }
  const cplx* data() const noexcept { return data_.data(); }

  ComplexVector column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const cplx> v);

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;

  /// max_ij |a_ij|
  double max_abs() const;
  std::size_t count_nonzero() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  bool operator==(const ComplexMatrix& o) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
/// Matrix product; zero entries of `a` are skipped.
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexVector matvec(const ComplexMatrix& a, std::span<const cplx> x);
cplx inner(std::span<const cplx> x, std::span<const cplx> y);  // <x|y>
double norm(std::span<const cplx> x);

/// max |a_ij - b_ij|; throws ShapeError on mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(std::span<const cplx> a, std::span<const cplx> b);

enum class BracketSign { Commutator, Anticommutator };

/// ab - ba or ab + ba.
ComplexMatrix bracket(const ComplexMatrix& a, const ComplexMatrix& b, BracketSign sign);

/// Sub-block with the given row and column indices.
ComplexMatrix select(const ComplexMatrix& a, std::span<const std::size_t> rows,
                     std::span<const std::size_t> cols);

/// b^dagger a b for a basis b with orthonormal columns.
ComplexMatrix compress(const ComplexMatrix& a, const ComplexMatrix& basis);

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns are unit eigenvectors
};

/// Householder tridiagonalization + implicit QL. Throws HermiticityError when
/// ||h - h^dagger||_max > 1e-10 * max(1, ||h||_max).
EigenDecomposition hermitian_eig(const ComplexMatrix& h);

/// Hermiticity violation ||h - h^dagger||_max.
double hermiticity_violation(const ComplexMatrix& h);

/// Smallest subspace containing `seed` and closed under every op. Built
/// breadth-first with twice-applied modified Gram-Schmidt; components of norm
/// <= tol are discarded. Columns of the result are orthonormal.
ComplexMatrix cyclic_subspace(std::span<const ComplexMatrix> ops, std::span<const cplx> seed,
                              double tol = 1e-9);
ComplexMatrix cyclic_subspace(std::span<const ComplexMatrix* const> ops,
                              std::span<const cplx> seed, double tol = 1e-9);

}  // namespace parastat
