#include "darboux/matrix.hpp"

#include <cmath>
#include <string>

#include "darboux/errors.hpp"

namespace darboux {

namespace {

void require_same(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw DimensionMismatch(std::string(op) + ": dimension " + std::to_string(a) +
                            " vs " + std::to_string(b));
  }
}

}  // namespace

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

StateVector StateVector::conj() const {
  StateVector out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = std::conj(data_[i]);
  return out;
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (!(n > 0.0)) throw StructureError("cannot normalize a zero vector");
  StateVector out = *this;
  out *= 1.0 / n;
  return out;
}

StateVector& StateVector::operator+=(const StateVector& other) {
  require_same(dim(), other.dim(), "vector +");
  for (std::size_t i = 0; i < dim(); ++i) data_[i] += other.data_[i];
  return *this;
}

StateVector& StateVector::operator-=(const StateVector& other) {
  require_same(dim(), other.dim(), "vector -");
  for (std::size_t i = 0; i < dim(); ++i) data_[i] -= other.data_[i];
  return *this;
}

StateVector& StateVector::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
StateVector operator*(Complex s, StateVector v) { return v *= s; }

Complex inner(const StateVector& a, const StateVector& b) {
  require_same(a.dim(), b.dim(), "inner");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

Complex bilinear(const StateVector& row, const StateVector& col) {
  require_same(row.dim(), col.dim(), "bilinear");
  Complex s = 0.0;
  for (std::size_t i = 0; i < row.dim(); ++i) s += row[i] * col[i];
  return s;
}

Matrix::Matrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

Matrix::Matrix(std::size_t dim, std::vector<Complex> row_major)
    : dim_(dim), data_(std::move(row_major)) {
  if (data_.size() != dim_ * dim_) {
    throw DimensionMismatch("matrix storage does not hold dim^2 entries");
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
  data_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    require_same(row.size(), dim_, "matrix literal row");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t dim) {
  Matrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
  Matrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

Matrix Matrix::diagonal(std::span<const Complex> values) {
  Matrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

Matrix Matrix::outer(const StateVector& a, const StateVector& b) {
  require_same(a.dim(), b.dim(), "outer");
  Matrix m(a.dim());
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < b.dim(); ++c) m(r, c) = a[r] * std::conj(b[c]);
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix m(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) m(c, r) = (*this)(r, c);
  return m;
}

Complex Matrix::trace() const {
  Complex s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) s += (*this)(i, i);
  return s;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

bool Matrix::all_finite() const {
  for (const auto& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require_same(dim_, other.dim_, "matrix +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require_same(dim_, other.dim_, "matrix -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Complex s, Matrix m) { return m *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same(a.dim(), b.dim(), "matrix *");
  const std::size_t n = a.dim();
  Matrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

StateVector operator*(const Matrix& m, const StateVector& v) {
  require_same(m.dim(), v.dim(), "matrix * vector");
  StateVector out(v.dim());
  for (std::size_t r = 0; r < m.dim(); ++r) {
    Complex s = 0.0;
    for (std::size_t c = 0; c < m.dim(); ++c) s += m(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

StateVector row_times(const StateVector& row, const Matrix& m) {
  require_same(m.dim(), row.dim(), "row * matrix");
  StateVector out(row.dim());
  for (std::size_t c = 0; c < m.dim(); ++c) {
    Complex s = 0.0;
    for (std::size_t r = 0; r < m.dim(); ++r) s += row[r] * m(r, c);
    out[c] = s;
  }
  return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

double distance(const Matrix& a, const Matrix& b) { return (a - b).frobenius_norm(); }

}  // namespace darboux
