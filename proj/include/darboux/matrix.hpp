#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace darboux {

using Complex = std::complex<double>;

/// Dense complex column vector. Bra vectors are stored by their row components
/// (not conjugated); use `adjoint_row` to turn a ket into the matching bra.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::size_t dim) : data_(dim) {}
  StateVector(std::initializer_list<Complex> values) : data_(values) {}
  explicit StateVector(std::vector<Complex> values) : data_(std::move(values)) {}

  std::size_t dim() const noexcept { return data_.size(); }
  Complex& operator[](std::size_t i) { return data_[i]; }
  const Complex& operator[](std::size_t i) const { return data_[i]; }
  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<Complex> entries() noexcept { return data_; }

  double norm() const;
  StateVector conj() const;
  StateVector normalized() const;

  StateVector& operator+=(const StateVector& other);
  StateVector& operator-=(const StateVector& other);
  StateVector& operator*=(Complex s);

 private:
  std::vector<Complex> data_;
};

StateVector operator+(StateVector a, const StateVector& b);
StateVector operator-(StateVector a, const StateVector& b);
StateVector operator*(Complex s, StateVector v);

/// <a|b> with the first argument conjugated.
Complex inner(const StateVector& a, const StateVector& b);
/// Plain bilinear product sum_i a_i b_i (bra components times ket).
Complex bilinear(const StateVector& row, const StateVector& col);

/// Dense square complex matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t dim);
  Matrix(std::size_t dim, std::vector<Complex> row_major);
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix identity(std::size_t dim);
  static Matrix zeros(std::size_t dim) { return Matrix(dim); }
  static Matrix diagonal(std::span<const double> values);
  static Matrix diagonal(std::span<const Complex> values);
  /// |a><b| (b conjugated).
  static Matrix outer(const StateVector& a, const StateVector& b);

  std::size_t dim() const noexcept { return dim_; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
  std::span<const Complex> entries() const noexcept { return data_; }

  Matrix adjoint() const;
  Matrix transpose() const;
  Complex trace() const;
  double frobenius_norm() const;
  bool all_finite() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(Complex s);

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(Complex s, Matrix m);
StateVector operator*(const Matrix& m, const StateVector& v);
/// Row vector times matrix: (v^T M)_j = sum_i v_i M_ij.
StateVector row_times(const StateVector& row, const Matrix& m);

Matrix commutator(const Matrix& a, const Matrix& b);
double distance(const Matrix& a, const Matrix& b);

}  // namespace darboux
