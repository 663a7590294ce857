// Copyright (c) 2026 The monoqt developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "monoqt/config.hpp"
#include "monoqt/rng.hpp"
#include "monoqt/states.hpp"

namespace monoqt {

/// Haar-uniform pure state: i.i.d. standard complex Gaussian amplitudes,
/// normalized.
inline StateVector haar_random_state(const Dims& dims, Rng& rng) {
  const std::size_t d = total_dimension(dims);
  std::vector<Complex> amps(d);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (Complex& z : amps) {
      z = rng.complex_gaussian();
      norm2 += std::norm(z);
    }
  } while (norm2 < 1e-24);
  const double inv = 1.0 / std::sqrt(norm2);
  for (Complex& z : amps) z *= inv;
  return StateVector(dims, std::move(amps));
}

inline StateVector haar_random_state(const Dims& dims, std::uint64_t seed) {
  Rng rng(seed);
  return haar_random_state(dims, rng);
}

namespace detail {

// Coefficient classes of the constrained three-qutrit normal form, flat
// index i*9 + j*3 + k.
struct QutritForm {
  std::array<bool, 27> zero{};
  std::array<bool, 27> real_nonneg{};

  QutritForm() {
    // c_jii = c_iji = c_iij = 0 for i < j
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) {
        zero[j * 9 + i * 3 + i] = true;
        zero[i * 9 + j * 3 + i] = true;
        zero[i * 9 + i * 3 + j] = true;
      }
    // real and non-negative when at most one index differs from 2
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) {
          const int differing = (i != 2) + (j != 2) + (k != 2);
          if (differing <= 1) real_nonneg[i * 9 + j * 3 + k] = true;
        }
  }

  // |c_000| must dominate everything; |c_111| must dominate the all-{1,2}
  // block; the |c_222| condition is vacuous.
  bool ordering_holds(const std::vector<Complex>& c) const {
    const double a0 = std::abs(c[0]);
    for (std::size_t f = 1; f < 27; ++f)
      if (std::abs(c[f]) > a0) return false;
    const double a1 = std::abs(c[1 * 9 + 1 * 3 + 1]);
    for (std::size_t i = 1; i < 3; ++i)
      for (std::size_t j = 1; j < 3; ++j)
        for (std::size_t k = 1; k < 3; ++k)
          if (std::abs(c[i * 9 + j * 3 + k]) > a1) return false;
    return true;
  }
};

inline const QutritForm& qutrit_form() {
  static const QutritForm f{};
  return f;
}

}  // namespace detail

/// Three-qutrit pure state drawn directly in the constrained normal form:
/// structural zeros, real non-negative entries where required, and the
/// magnitude ordering enforced by rejection-and-redraw (the accepted law is
/// the unconstrained one conditioned on the ordering, not a sorted variant).
inline StateVector canonical_qutrit_sample(Rng& rng,
                                           int rejection_budget = tols().rejection_budget) {
  const auto& form = detail::qutrit_form();
  std::vector<Complex> c(27);
  for (int attempt = 0; attempt < rejection_budget; ++attempt) {
    for (std::size_t f = 0; f < 27; ++f) {
      if (form.zero[f])
        c[f] = 0.0;
      else if (form.real_nonneg[f])
        c[f] = rng.half_normal();
      else
        c[f] = rng.complex_gaussian();
    }
    if (!form.ordering_holds(c)) continue;
    double norm2 = 0.0;
    for (const Complex& z : c) norm2 += std::norm(z);
    if (norm2 < 1e-24) continue;
    const double inv = 1.0 / std::sqrt(norm2);
    for (Complex& z : c) z *= inv;
    return StateVector({3, 3, 3}, std::move(c));
  }
  throw std::runtime_error("canonical_qutrit_sample: ordering constraint not met within " +
                           std::to_string(rejection_budget) + " attempts");
}

inline StateVector canonical_qutrit_sample(std::uint64_t seed,
                                           int rejection_budget = tols().rejection_budget) {
  Rng rng(seed);
  return canonical_qutrit_sample(rng, rejection_budget);
}

/// Random mixed state: Haar pure states combined with Dirichlet-uniform
/// weights. rank = 1 gives a random pure density operator.
inline DensityOperator random_mixed(const Dims& dims, std::size_t rank, std::uint64_t seed) {
  const std::size_t d = total_dimension(dims);
  if (rank < 1 || rank > d)
    throw std::invalid_argument("random_mixed: rank must be in [1, dim]");
  Rng rng(seed);
  std::vector<double> weights(rank);
  double wsum = 0.0;
  for (double& w : weights) {
    w = -std::log(1.0 - rng.uniform());  // Exp(1) draws normalize to Dirichlet(1,...,1)
    wsum += w;
  }
  ComplexMatrix m(d, d);
  for (std::size_t r = 0; r < rank; ++r) {
    const StateVector phi = haar_random_state(dims, rng);
    const double w = weights[r] / wsum;
    const auto& a = phi.amplitudes();
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) += w * a[i] * std::conj(a[j]);
  }
  return DensityOperator(dims, std::move(m));
}

}  // namespace monoqt
