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
#include "monoqt/hermitian_eigen.hpp"

namespace monoqt {

using Dims = std::vector<std::size_t>;

inline std::size_t total_dimension(const Dims& dims) {
  std::size_t d = 1;
  for (std::size_t x : dims) {
    if (x < 2) throw std::invalid_argument("subsystem dimension must be at least 2");
    if (d > tols().max_dimension / x)
      throw std::invalid_argument("total dimension exceeds supported maximum");
    d *= x;
  }
  return d;
}

/// Decode a flat amplitude index into the mixed-radix multi-index matching
/// ket ordering |i1,...,in>.
inline std::vector<std::size_t> unravel_index(std::size_t flat, const Dims& dims) {
  std::vector<std::size_t> idx(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    idx[k] = flat % dims[k];
    flat /= dims[k];
  }
  return idx;
}

inline std::size_t ravel_index(const std::vector<std::size_t>& idx, const Dims& dims) {
  std::size_t flat = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) flat = flat * dims[k] + idx[k];
  return flat;
}

/// Bipartition of the subsystem indices (0-based). Both sides non-empty,
/// disjoint, covering.
struct Cut {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;

  static Cut against(std::vector<std::size_t> left_set, std::size_t n_subsystems) {
    std::sort(left_set.begin(), left_set.end());
    Cut c;
    c.left = std::move(left_set);
    std::vector<bool> in_left(n_subsystems, false);
    for (std::size_t i : c.left) {
      if (i >= n_subsystems) throw std::invalid_argument("Cut: subsystem index out of range");
      if (in_left[i]) throw std::invalid_argument("Cut: duplicate subsystem index");
      in_left[i] = true;
    }
    for (std::size_t i = 0; i < n_subsystems; ++i)
      if (!in_left[i]) c.right.push_back(i);
    c.validate(n_subsystems);
    return c;
  }

  void validate(std::size_t n_subsystems) const {
    if (left.empty() || right.empty())
      throw std::invalid_argument("Cut: both sides must be non-empty");
    std::vector<bool> seen(n_subsystems, false);
    for (std::size_t i : left) {
      if (i >= n_subsystems || seen[i]) throw std::invalid_argument("Cut: invalid left set");
      seen[i] = true;
    }
    for (std::size_t i : right) {
      if (i >= n_subsystems || seen[i]) throw std::invalid_argument("Cut: invalid right set");
      seen[i] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
      throw std::invalid_argument("Cut: sides do not cover all subsystems");
  }
};

/// Normalized pure state over an ordered list of subsystem dimensions.
class StateVector {
 public:
  StateVector(Dims dims, std::vector<Complex> amplitudes,
              const Tolerances& tol = tols())
      : dims_(std::move(dims)), amps_(std::move(amplitudes)) {
    const std::size_t d = total_dimension(dims_);
    if (amps_.size() != d)
      throw std::invalid_argument("StateVector: amplitude count does not match dimensions");
    double norm2 = 0.0;
    for (const Complex& z : amps_) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::invalid_argument("StateVector: non-finite amplitude");
      norm2 += std::norm(z);
    }
    if (std::abs(norm2 - 1.0) > tol.unit_norm)
      throw std::invalid_argument("StateVector: not normalized (|norm^2-1| = " +
                                  std::to_string(std::abs(norm2 - 1.0)) + ")");
  }

  static StateVector basis(Dims dims, const std::vector<std::size_t>& ket) {
    const std::size_t d = total_dimension(dims);
    if (ket.size() != dims.size())
      throw std::invalid_argument("StateVector: ket length does not match dimensions");
    std::vector<Complex> amps(d, Complex(0.0, 0.0));
    amps[ravel_index(ket, dims)] = 1.0;
    return StateVector(std::move(dims), std::move(amps));
  }

  const Dims& dims() const { return dims_; }
  std::size_t dim() const { return amps_.size(); }
  std::size_t subsystems() const { return dims_.size(); }
  const std::vector<Complex>& amplitudes() const& { return amps_; }
  std::vector<Complex> amplitudes() && { return std::move(amps_); }

 private:
  Dims dims_;
  std::vector<Complex> amps_;
};

/// Hermitian, unit-trace operator with subsystem structure. Hermiticity and
/// trace are checked at construction; positivity is checked on demand
/// because it costs an eigendecomposition.
class DensityOperator {
 public:
  DensityOperator(Dims dims, ComplexMatrix matrix, const Tolerances& tol = tols())
      : dims_(std::move(dims)), mat_(std::move(matrix)) {
    const std::size_t d = total_dimension(dims_);
    if (mat_.rows() != d || mat_.cols() != d)
      throw std::invalid_argument("DensityOperator: matrix size does not match dimensions");
    if (mat_.hermiticity_error() > tol.hermiticity)
      throw std::invalid_argument("DensityOperator: matrix is not Hermitian");
    if (std::abs(mat_.trace().real() - 1.0) > tol.unit_trace ||
        std::abs(mat_.trace().imag()) > tol.unit_trace)
      throw std::invalid_argument("DensityOperator: trace is not 1");
  }

  const Dims& dims() const { return dims_; }
  std::size_t dim() const { return mat_.rows(); }
  std::size_t subsystems() const { return dims_.size(); }
  const ComplexMatrix& matrix() const& { return mat_; }
  ComplexMatrix matrix() && { return std::move(mat_); }

  double min_eigenvalue(const Tolerances& tol = tols()) const {
    return hermitian_eigenvalues(mat_, tol).front();
  }

  void validate_psd(const Tolerances& tol = tols()) const {
    if (min_eigenvalue(tol) < tol.psd_floor)
      throw std::invalid_argument("DensityOperator: negative eigenvalue beyond tolerance");
  }

 private:
  Dims dims_;
  ComplexMatrix mat_;
};

/// |psi><psi| with the same subsystem structure.
inline DensityOperator density_from_state(const StateVector& psi) {
  const std::size_t d = psi.dim();
  ComplexMatrix m(d, d);
  const auto& a = psi.amplitudes();
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i] == Complex(0.0, 0.0)) continue;
    for (std::size_t j = 0; j < d; ++j) m(i, j) = a[i] * std::conj(a[j]);
  }
  return DensityOperator(psi.dims(), std::move(m));
}

/// Partial trace onto the given (non-empty, proper) subset of subsystems;
/// kept order follows the original subsystem order.
inline DensityOperator partial_trace(const DensityOperator& rho,
                                     std::vector<std::size_t> keep) {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  const Dims& dims = rho.dims();
  if (keep.empty() || keep.size() >= dims.size())
    throw std::invalid_argument("partial_trace: keep set must be a non-empty proper subset");
  for (std::size_t i : keep)
    if (i >= dims.size()) throw std::invalid_argument("partial_trace: index out of range");

  std::vector<std::size_t> traced;
  for (std::size_t i = 0; i < dims.size(); ++i)
    if (std::find(keep.begin(), keep.end(), i) == keep.end()) traced.push_back(i);

  // strides of each subsystem in the flat index
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t k = dims.size() - 1; k-- > 0;) stride[k] = stride[k + 1] * dims[k + 1];

  Dims kept_dims, traced_dims;
  for (std::size_t i : keep) kept_dims.push_back(dims[i]);
  for (std::size_t i : traced) traced_dims.push_back(dims[i]);
  const std::size_t dk = std::accumulate(kept_dims.begin(), kept_dims.end(),
                                         std::size_t{1}, std::multiplies<>());
  const std::size_t dt = std::accumulate(traced_dims.begin(), traced_dims.end(),
                                         std::size_t{1}, std::multiplies<>());

  // flat offsets contributed by each kept / traced multi-index
  std::vector<std::size_t> keep_offset(dk), trace_offset(dt);
  for (std::size_t a = 0; a < dk; ++a) {
    const auto idx = unravel_index(a, kept_dims);
    std::size_t off = 0;
    for (std::size_t k = 0; k < keep.size(); ++k) off += idx[k] * stride[keep[k]];
    keep_offset[a] = off;
  }
  for (std::size_t t = 0; t < dt; ++t) {
    const auto idx = unravel_index(t, traced_dims);
    std::size_t off = 0;
    for (std::size_t k = 0; k < traced.size(); ++k) off += idx[k] * stride[traced[k]];
    trace_offset[t] = off;
  }

  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out(dk, dk);
  for (std::size_t a = 0; a < dk; ++a)
    for (std::size_t b = 0; b < dk; ++b) {
      Complex s = 0.0;
      for (std::size_t t = 0; t < dt; ++t)
        s += m(keep_offset[a] + trace_offset[t], keep_offset[b] + trace_offset[t]);
      out(a, b) = s;
    }
  return DensityOperator(kept_dims, std::move(out));
}

/// Partial transpose of a two-subsystem density operator. The result is
/// Hermitian with unit trace but generally not positive, hence a plain
/// matrix.
inline ComplexMatrix partial_transpose(const DensityOperator& rho, std::size_t subsystem) {
  if (rho.subsystems() != 2)
    throw std::invalid_argument("partial_transpose: operator must have exactly 2 subsystems");
  if (subsystem > 1)
    throw std::invalid_argument("partial_transpose: subsystem index out of range");
  const std::size_t da = rho.dims()[0];
  const std::size_t db = rho.dims()[1];
  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out(da * db, da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t k = 0; k < da; ++k)
        for (std::size_t l = 0; l < db; ++l) {
          // <i,j| out |k,l> = <i,l| rho |k,j>  (transpose on B)
          // <i,j| out |k,l> = <k,j| rho |i,l>  (transpose on A)
          const Complex z = (subsystem == 1) ? m(i * db + l, k * db + j)
                                             : m(k * db + j, i * db + l);
          out(i * db + j, k * db + l) = z;
        }
  return out;
}

namespace detail {

inline std::vector<std::size_t> cut_permutation(const Cut& cut) {
  std::vector<std::size_t> perm = cut.left;
  perm.insert(perm.end(), cut.right.begin(), cut.right.end());
  return perm;
}

// old flat index -> new flat index under subsystem reordering
inline std::vector<std::size_t> permuted_flat_map(const Dims& dims,
                                                  const std::vector<std::size_t>& perm) {
  Dims new_dims(dims.size());
  for (std::size_t k = 0; k < perm.size(); ++k) new_dims[k] = dims[perm[k]];
  const std::size_t d = std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                                        std::multiplies<>());
  std::vector<std::size_t> map(d);
  for (std::size_t flat = 0; flat < d; ++flat) {
    const auto idx = unravel_index(flat, dims);
    std::vector<std::size_t> new_idx(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) new_idx[k] = idx[perm[k]];
    map[flat] = ravel_index(new_idx, new_dims);
  }
  return map;
}

inline Dims fused_dims(const Dims& dims, const Cut& cut) {
  std::size_t dl = 1, dr = 1;
  for (std::size_t i : cut.left) dl *= dims[i];
  for (std::size_t i : cut.right) dr *= dims[i];
  return {dl, dr};
}

}  // namespace detail

/// Reorder subsystems so the cut's left block is contiguous and first, then
/// fuse each side into one subsystem.
inline StateVector reshape_to_cut(const StateVector& psi, const Cut& cut) {
  cut.validate(psi.subsystems());
  const auto map = detail::permuted_flat_map(psi.dims(), detail::cut_permutation(cut));
  std::vector<Complex> out(psi.dim());
  for (std::size_t i = 0; i < psi.dim(); ++i) out[map[i]] = psi.amplitudes()[i];
  return StateVector(detail::fused_dims(psi.dims(), cut), std::move(out));
}

inline DensityOperator reshape_to_cut(const DensityOperator& rho, const Cut& cut) {
  cut.validate(rho.subsystems());
  const auto map = detail::permuted_flat_map(rho.dims(), detail::cut_permutation(cut));
  const std::size_t d = rho.dim();
  ComplexMatrix out(d, d);
  const ComplexMatrix& m = rho.matrix();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out(map[i], map[j]) = m(i, j);
  return DensityOperator(detail::fused_dims(rho.dims(), cut), std::move(out));
}

/// Generalized shift/phase unitary W_{mn} = sum_k omega^{kn} |k+m mod d><k|.
inline ComplexMatrix weyl_operator(std::size_t d, std::size_t m, std::size_t n) {
  if (d < 2) throw std::invalid_argument("weyl_operator: dimension must be at least 2");
  if (m >= d || n >= d) throw std::invalid_argument("weyl_operator: index out of range");
  ComplexMatrix w(d, d);
  for (std::size_t k = 0; k < d; ++k)
    w((k + m) % d, k) = std::polar(1.0, 2.0 * M_PI * static_cast<double>(k * n) /
                                            static_cast<double>(d));
  return w;
}

}  // namespace monoqt
