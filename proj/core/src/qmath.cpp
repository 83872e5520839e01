#include "cglmp/qmath.hpp"

#include <cmath>
#include <stdexcept>

namespace cglmp::qmath {

ComplexVector ComplexVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw std::invalid_argument("basis index out of range");
  ComplexVector v(dim);
  v[index] = 1.0;
  return v;
}

double ComplexVector::norm() const {
  double sum = 0.0;
  for (const auto& e : entries_) sum += std::norm(e);
  return std::sqrt(sum);
}

ComplexVector ComplexVector::normalized() const {
  const double n = norm();
  if (n <= 0.0) throw std::domain_error("cannot normalize zero vector");
  ComplexVector out(*this);
  for (auto& e : out.entries_) e /= n;
  return out;
}

Complex ComplexVector::dot(const ComplexVector& other) const {
  if (dim() != other.dim()) throw std::invalid_argument("dot: dimension mismatch");
  Complex sum = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) sum += std::conj(entries_[i]) * other.entries_[i];
  return sum;
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<Complex>& diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    worst = std::max(worst, std::abs(entries_[i] - other.entries_[i]));
  return worst;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("operator+=: shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& e : entries_) e *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("operator*: inner dimension mismatch");
  ComplexMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexVector operator*(const ComplexMatrix& m, const ComplexVector& v) {
  if (m.cols_ != v.dim()) throw std::invalid_argument("operator*: dimension mismatch");
  ComplexVector out(m.rows_);
  for (std::size_t i = 0; i < m.rows_; ++i) {
    Complex sum = 0.0;
    for (std::size_t j = 0; j < m.cols_; ++j) sum += m(i, j) * v[j];
    out[i] = sum;
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
  return out;
}

ComplexMatrix dagger(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
  return out;
}

Complex trace(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("trace: matrix is not square");
  Complex sum = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) sum += m(i, i);
  return sum;
}

ComplexMatrix outer(const ComplexVector& v, const ComplexVector& w) {
  ComplexMatrix out(v.dim(), w.dim());
  for (std::size_t i = 0; i < v.dim(); ++i)
    for (std::size_t j = 0; j < w.dim(); ++j) out(i, j) = v[i] * std::conj(w[j]);
  return out;
}

Complex expectation(const ComplexVector& v, const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() != v.dim())
    throw std::invalid_argument("expectation: dimension mismatch");
  Complex sum = 0.0;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    Complex row = 0.0;
    for (std::size_t j = 0; j < v.dim(); ++j) row += m(i, j) * v[j];
    sum += std::conj(v[i]) * row;
  }
  return sum;
}

}  // namespace cglmp::qmath
