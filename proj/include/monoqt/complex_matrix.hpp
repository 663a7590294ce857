// Copyright (c) 2026 The monoqt developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "monoqt/config.hpp"

namespace monoqt {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major. The universal numeric carrier for
/// states, density operators and unitaries up to dimension 1024.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {
    check_shape(rows, cols);
  }

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    check_shape(rows, cols);
    if (data_.size() != rows_ * cols_)
      throw std::invalid_argument("ComplexMatrix: data size does not match shape");
    for (const Complex& z : data_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::invalid_argument("ComplexMatrix: non-finite entry");
  }

  /// Row-of-rows constructor for small literals in tests and fixtures.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows.begin() == rows.end() ? 0 : rows.begin()->size();
    check_shape(rows_, cols_);
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_)
        throw std::invalid_argument("ComplexMatrix: ragged initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix zero(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Complex>& data() { return data_; }
  const std::vector<Complex>& data() const { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }

  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }

  ComplexMatrix& operator*=(Complex s) {
    for (Complex& z : data_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_)
      throw std::invalid_argument("ComplexMatrix: product shape mismatch");
    ComplexMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex(0.0, 0.0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  ComplexMatrix transpose() const {
    ComplexMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  ComplexMatrix conjugate() const {
    ComplexMatrix c(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) c.data_[i] = std::conj(data_[i]);
    return c;
  }

  ComplexMatrix dagger() const {
    ComplexMatrix d(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) d(j, i) = std::conj((*this)(i, j));
    return d;
  }

  Complex trace() const {
    if (!square()) throw std::invalid_argument("ComplexMatrix: trace of non-square matrix");
    Complex t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const Complex& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (const Complex& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  /// Largest entry-wise deviation from the conjugate transpose.
  double hermiticity_error() const {
    if (!square()) return std::numeric_limits<double>::infinity();
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
  }

  bool is_hermitian(double tol = tols().hermiticity) const {
    return square() && hermiticity_error() <= tol;
  }

 private:
  static void check_shape(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0)
      throw std::invalid_argument("ComplexMatrix: zero dimension");
    if (rows > tols().max_dimension || cols > tols().max_dimension)
      throw std::invalid_argument("ComplexMatrix: dimension exceeds supported maximum " +
                                  std::to_string(tols().max_dimension));
  }

  void require_same_shape(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("ComplexMatrix: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Kronecker product. Entry ((i*b.rows+k),(j*b.cols+l)) = a(i,j)*b(k,l).
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() > tols().max_dimension / b.rows() ||
      a.cols() > tols().max_dimension / b.cols())
    throw std::invalid_argument("kron: result dimension exceeds supported maximum");
  ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex(0.0, 0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return c;
}

inline bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    if (std::abs(a.data()[i] - b.data()[i]) > tol) return false;
  return true;
}

}  // namespace monoqt
