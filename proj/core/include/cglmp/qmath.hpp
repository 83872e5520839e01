// Minimal dense complex linear algebra: vectors, matrices, Kronecker products,
// conjugate transpose, trace, outer products. Everything is a plain value type
// backed by std::vector<std::complex<double>>; dimensions stay small enough
// (at most d^2 x d^2 with d <= 16 on the brute-force paths) that dense
// storage and naive products are the right tool.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace cglmp::qmath {

using Complex = std::complex<double>;

// Absolute tolerance for double-precision equality cross-checks.
inline constexpr double kTol = 1e-12;

class ComplexVector {
 public:
  ComplexVector() = default;
  explicit ComplexVector(std::size_t dim) : entries_(dim) {}
  ComplexVector(std::initializer_list<Complex> entries) : entries_(entries) {}
  explicit ComplexVector(std::vector<Complex> entries) : entries_(std::move(entries)) {}

  // Computational basis vector e_index.
  static ComplexVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return entries_.size(); }
  Complex& operator[](std::size_t i) { return entries_[i]; }
  const Complex& operator[](std::size_t i) const { return entries_[i]; }

  double norm() const;
  ComplexVector normalized() const;  // throws std::domain_error on zero vector

  // Inner product <this|other>; conjugates this vector's entries.
  Complex dot(const ComplexVector& other) const;

  const std::vector<Complex>& entries() const { return entries_; }

 private:
  std::vector<Complex> entries_;
};

// Row-major dense complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(const std::vector<Complex>& diag);
  static ComplexMatrix diagonal(const std::vector<double>& diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  bool is_hermitian(double tol = kTol) const;
  double max_abs_diff(const ComplexMatrix& other) const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexVector operator*(const ComplexMatrix& m, const ComplexVector& v);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Complex> entries_;
};

// Kronecker product: (a (x) b)[i*rb+k, j*cb+l] = a[i,j] * b[k,l].
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

// Conjugate transpose.
ComplexMatrix dagger(const ComplexMatrix& m);

// Sum of diagonal entries; throws std::invalid_argument for non-square input.
Complex trace(const ComplexMatrix& m);

// outer(v, w)[i,j] = v_i * conj(w_j), i.e. |v><w|.
ComplexMatrix outer(const ComplexVector& v, const ComplexVector& w);

// <v|m|v>; the workhorse of the brute-force probability path.
Complex expectation(const ComplexVector& v, const ComplexMatrix& m);

}  // namespace cglmp::qmath
