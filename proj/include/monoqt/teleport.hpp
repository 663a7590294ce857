// Copyright (c) 2026 The monoqt developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "monoqt/complex_matrix.hpp"
#include "monoqt/config.hpp"
#include "monoqt/measures.hpp"
#include "monoqt/rng.hpp"
#include "monoqt/samplers.hpp"
#include "monoqt/states.hpp"

namespace monoqt {

/// Monte-Carlo estimate of the average teleportation fidelity of the
/// standard scheme over the resource rho, with Haar-sampled input states.
///
/// Protocol per input |xi>: a generalized Bell measurement on (input, A)
/// yields outcome (m, n); Bob applies the Weyl correction for that outcome
/// twisted by the supplied local unitary (the optimal twirl from the
/// fully-entangled-fraction search). All d^2 outcomes are summed exactly,
/// so the only sampling is over inputs.
inline MeasureResult mc_teleportation_fidelity(const DensityOperator& rho,
                                               const ComplexMatrix& correction,
                                               long n_samples, std::uint64_t seed) {
  detail::require_square_bipartite(rho, "mc_teleportation_fidelity");
  if (n_samples < 1)
    throw std::invalid_argument("mc_teleportation_fidelity: need at least one sample");
  const std::size_t d = rho.dims()[0];
  if (correction.rows() != d || correction.cols() != d)
    throw std::invalid_argument("mc_teleportation_fidelity: correction has wrong shape");
  {
    const ComplexMatrix gram = correction.dagger() * correction;
    if (!approx_equal(gram, ComplexMatrix::identity(d), 1e-9))
      throw std::invalid_argument("mc_teleportation_fidelity: correction is not unitary");
  }

  // Bob's state for outcome (m, n) and ideal resource (I o U)|Phi+> is
  // proportional to U W_{m,-n} |xi>, so his correction is (U W_{m,-n})^dag.
  std::vector<ComplexMatrix> undo;
  undo.reserve(d * d);
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t n = 0; n < d; ++n)
      undo.push_back((correction * weyl_operator(d, m, (d - n) % d)).dagger());

  const ComplexMatrix& res = rho.matrix();
  Rng rng(seed);
  double sum = 0.0;
  double sum_sq = 0.0;
  std::vector<Complex> bra(d);     // measurement half projected onto A
  std::vector<Complex> out_in(d);  // corrected output, input side

  for (long s = 0; s < n_samples; ++s) {
    const StateVector xi = haar_random_state({d}, rng);
    const auto& x = xi.amplitudes();
    double fidelity = 0.0;
    for (std::size_t m = 0; m < d; ++m)
      for (std::size_t n = 0; n < d; ++n) {
        // |v> on A from projecting the Bell outcome against the input:
        // v[l+m] = omega^{l n} conj(xi_l) / sqrt(d)
        const double r = 1.0 / std::sqrt(static_cast<double>(d));
        for (std::size_t l = 0; l < d; ++l)
          bra[(l + m) % d] = r * std::polar(1.0, 2.0 * M_PI * static_cast<double>(l * n) /
                                                     static_cast<double>(d)) *
                             std::conj(x[l]);
        const ComplexMatrix& c = undo[m * d + n];
        // w = C^dag |xi| ... fidelity term <xi| C omega C^dag |xi> = w^dag omega w
        for (std::size_t j = 0; j < d; ++j) {
          Complex wj = 0.0;
          for (std::size_t k = 0; k < d; ++k) wj += std::conj(c(k, j)) * x[k];
          out_in[j] = wj;
        }
        // omega_{jk} = sum_{a,a'} conj(v_a) rho[(a j),(a' k)] v_{a'}
        Complex term = 0.0;
        for (std::size_t a = 0; a < d; ++a) {
          if (bra[a] == Complex(0.0, 0.0)) continue;
          for (std::size_t ap = 0; ap < d; ++ap) {
            const Complex va = std::conj(bra[a]) * bra[ap];
            Complex inner = 0.0;
            for (std::size_t j = 0; j < d; ++j)
              for (std::size_t k = 0; k < d; ++k)
                inner += std::conj(out_in[j]) * res(a * d + j, ap * d + k) * out_in[k];
            term += va * inner;
          }
        }
        fidelity += term.real();
      }
    sum += fidelity;
    sum_sq += fidelity * fidelity;
  }

  const double mean = sum / static_cast<double>(n_samples);
  double std_error = 0.0;
  if (n_samples > 1) {
    const double var =
        std::max(0.0, (sum_sq - sum * sum / static_cast<double>(n_samples)) /
                          static_cast<double>(n_samples - 1));
    std_error = std::sqrt(var / static_cast<double>(n_samples));
  }
  return {detail::clamp_measure(mean, 0.0, 1.0, "mc_teleportation_fidelity"),
          detail::bipartite_cut(), Method::monte_carlo, n_samples, std_error};
}

}  // namespace monoqt
