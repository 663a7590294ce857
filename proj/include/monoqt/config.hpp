// Copyright (c) 2026 The monoqt developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

namespace monoqt {

// Numeric tolerances and limits shared by the library, the test suites and
// the CLI.
struct Tolerances {
  double hermiticity = 1e-10;       // max-entry deviation of H from H^dagger
  double eigen_residual = 1e-9;     // ||H v - lambda v|| relative to ||H||
  double jacobi_off_rel = 1e-12;    // off-diagonal Frobenius norm, relative
  int jacobi_max_sweeps = 100;
  double unit_norm = 1e-12;         // state vector normalization
  double unit_trace = 1e-10;        // density operator trace
  double psd_floor = -1e-9;         // smallest admissible density eigenvalue
  double measure_clamp = 1e-12;     // out-of-range slack absorbed silently
  double radicand_clamp = 1e-14;    // sqrt arguments this close to 0 are 0
  double violation_threshold = -1e-9;  // residual below this is a violation
  int rejection_budget = 10000;     // constrained sampler redraw limit
  std::size_t max_dimension = 1024; // largest supported matrix dimension
};

inline const Tolerances& tols() {
  static const Tolerances t{};
  return t;
}

}  // namespace monoqt
