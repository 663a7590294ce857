// Copyright (c) 2026 The monoqt developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "monoqt/complex_matrix.hpp"
#include "monoqt/config.hpp"

namespace monoqt {

/// Spectral decomposition of a Hermitian matrix. Eigenvalues ascending,
/// eigenvector columns orthonormal.
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

namespace detail {

// One-sided threshold check plus rotation of the (p,q) plane. Columns first
// (A <- A J), then rows (A <- J^dagger A); V accumulates the same column
// operations. Zeroes the pivot pair exactly and keeps the diagonal real.
inline void jacobi_rotate(std::vector<Complex>& a, std::size_t n, std::size_t p,
                          std::size_t q, std::vector<Complex>* v) {
  const Complex b = a[p * n + q];
  const double absb = std::abs(b);
  if (absb == 0.0) return;

  const double app = a[p * n + p].real();
  const double aqq = a[q * n + q].real();
  const double beta = (aqq - app) / (2.0 * absb);
  const double t = (beta >= 0.0 ? 1.0 : -1.0) / (std::abs(beta) + std::sqrt(beta * beta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = c * t;
  const Complex u = b / absb;
  const Complex su = s * u;
  const Complex su_conj = s * std::conj(u);

  for (std::size_t i = 0; i < n; ++i) {
    const Complex aip = a[i * n + p];
    const Complex aiq = a[i * n + q];
    a[i * n + p] = c * aip - su_conj * aiq;
    a[i * n + q] = su * aip + c * aiq;
  }
  for (std::size_t j = 0; j < n; ++j) {
    const Complex apj = a[p * n + j];
    const Complex aqj = a[q * n + j];
    a[p * n + j] = c * apj - su * aqj;
    a[q * n + j] = su_conj * apj + c * aqj;
  }
  a[p * n + q] = 0.0;
  a[q * n + p] = 0.0;
  a[p * n + p] = Complex(a[p * n + p].real(), 0.0);
  a[q * n + q] = Complex(a[q * n + q].real(), 0.0);

  if (v) {
    std::vector<Complex>& vv = *v;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vip = vv[i * n + p];
      const Complex viq = vv[i * n + q];
      vv[i * n + p] = c * vip - su_conj * viq;
      vv[i * n + q] = su * vip + c * viq;
    }
  }
}

inline double off_diagonal_norm(const std::vector<Complex>& a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s += std::norm(a[i * n + j]);
  return std::sqrt(2.0 * s);
}

// Cyclic Jacobi with threshold sweeps on a Hermitian matrix. Fills
// eigenvalues (ascending) and, when vectors != nullptr, the matching
// orthonormal eigenvector columns.
inline void jacobi_hermitian(const ComplexMatrix& h, std::vector<double>& eigenvalues,
                             ComplexMatrix* vectors, const Tolerances& tol) {
  if (!h.square()) throw std::invalid_argument("hermitian_eig: matrix is not square");
  if (h.hermiticity_error() > tol.hermiticity)
    throw std::invalid_argument("hermitian_eig: matrix is not Hermitian within tolerance");

  const std::size_t n = h.rows();
  std::vector<Complex> a(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i * n + i] = Complex(h(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex z = 0.5 * (h(i, j) + std::conj(h(j, i)));
      a[i * n + j] = z;
      a[j * n + i] = std::conj(z);
    }
  }

  std::vector<Complex> v;
  if (vectors) {
    v.assign(n * n, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  }

  double fro = 0.0;
  for (const Complex& z : a) fro += std::norm(z);
  fro = std::sqrt(fro);
  const double target = tol.jacobi_off_rel * fro;

  int sweep = 0;
  double off = off_diagonal_norm(a, n);
  while (off > target) {
    if (sweep >= tol.jacobi_max_sweeps)
      throw std::runtime_error("hermitian_eig: no convergence after " +
                               std::to_string(sweep) + " sweeps (off-diagonal " +
                               std::to_string(off) + ")");
    // pivots already far below the convergence target are skipped
    const double skip = target / (2.0 * static_cast<double>(n));
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        if (std::abs(a[p * n + q]) > skip)
          jacobi_rotate(a, n, p, q, vectors ? &v : nullptr);
    ++sweep;
    off = off_diagonal_norm(a, n);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a[x * n + x].real() < a[y * n + y].real();
  });

  eigenvalues.resize(n);
  for (std::size_t k = 0; k < n; ++k) eigenvalues[k] = a[order[k] * n + order[k]].real();

  if (vectors) {
    *vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) (*vectors)(i, k) = v[i * n + order[k]];
  }
}

}  // namespace detail

/// Eigenvalues only, ascending. Cheaper than hermitian_eig when the
/// eigenvectors are not needed (trace norms, spectra checks).
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h,
                                                 const Tolerances& tol = tols()) {
  std::vector<double> ev;
  detail::jacobi_hermitian(h, ev, nullptr, tol);
  return ev;
}

/// Full spectral decomposition by cyclic Jacobi rotations.
inline EigenDecomposition hermitian_eig(const ComplexMatrix& h,
                                        const Tolerances& tol = tols()) {
  EigenDecomposition d;
  detail::jacobi_hermitian(h, d.eigenvalues, &d.eigenvectors, tol);
  return d;
}

/// Trace norm of a Hermitian matrix: sum of absolute eigenvalues.
inline double trace_norm_hermitian(const ComplexMatrix& h,
                                   const Tolerances& tol = tols()) {
  double s = 0.0;
  for (double lambda : hermitian_eigenvalues(h, tol)) s += std::abs(lambda);
  return s;
}

/// U = exp(i h) for Hermitian h, via the spectral decomposition.
inline ComplexMatrix unitary_from_generator(const ComplexMatrix& h,
                                            const Tolerances& tol = tols()) {
  const EigenDecomposition d = hermitian_eig(h, tol);
  const std::size_t n = h.rows();
  ComplexMatrix scaled = d.eigenvectors;
  for (std::size_t k = 0; k < n; ++k) {
    const Complex phase = std::polar(1.0, d.eigenvalues[k]);
    for (std::size_t i = 0; i < n; ++i) scaled(i, k) *= phase;
  }
  return scaled * d.eigenvectors.dagger();
}

/// Positive-semidefinite square root; eigenvalues below zero are clamped.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& h, const Tolerances& tol = tols()) {
  const EigenDecomposition d = hermitian_eig(h, tol);
  const std::size_t n = h.rows();
  ComplexMatrix scaled = d.eigenvectors;
  for (std::size_t k = 0; k < n; ++k) {
    const double root = std::sqrt(std::max(0.0, d.eigenvalues[k]));
    for (std::size_t i = 0; i < n; ++i) scaled(i, k) *= root;
  }
  return scaled * d.eigenvectors.dagger();
}

}  // namespace monoqt
