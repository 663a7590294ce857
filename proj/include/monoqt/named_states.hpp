// Copyright (c) 2026 The monoqt developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "monoqt/config.hpp"
#include "monoqt/states.hpp"

namespace monoqt {

namespace detail {

inline double clamped_sqrt(double x) {
  if (x < 0.0 && x > -tols().radicand_clamp) x = 0.0;
  if (x < 0.0) throw std::invalid_argument("negative radicand");
  return std::sqrt(x);
}

inline std::vector<Complex> ou_amplitudes() {
  std::vector<Complex> a(27, Complex(0.0, 0.0));
  const double r = 1.0 / std::sqrt(6.0);
  // (|012> - |021> + |120> - |102> + |201> - |210>) / sqrt(6)
  a[0 * 9 + 1 * 3 + 2] = r;
  a[0 * 9 + 2 * 3 + 1] = -r;
  a[1 * 9 + 2 * 3 + 0] = r;
  a[1 * 9 + 0 * 3 + 2] = -r;
  a[2 * 9 + 0 * 3 + 1] = r;
  a[2 * 9 + 1 * 3 + 0] = -r;
  return a;
}

inline std::vector<Complex> ks_amplitudes() {
  std::vector<Complex> a(27, Complex(0.0, 0.0));
  const double r = 1.0 / std::sqrt(6.0);
  // (sqrt(2)|010> + sqrt(2)|101> + |200> + |211>) / sqrt(6)
  a[0 * 9 + 1 * 3 + 0] = std::sqrt(2.0) * r;
  a[1 * 9 + 0 * 3 + 1] = std::sqrt(2.0) * r;
  a[2 * 9 + 0 * 3 + 0] = r;
  a[2 * 9 + 1 * 3 + 1] = r;
  return a;
}

inline StateVector superpose_with_basis(const std::vector<Complex>& base,
                                        std::size_t basis_flat, double p) {
  const double sp = clamped_sqrt(p);
  const double sq = clamped_sqrt(1.0 - p);
  std::vector<Complex> a(27);
  for (std::size_t i = 0; i < 27; ++i) a[i] = sp * base[i];
  a[basis_flat] += sq;
  return StateVector({3, 3, 3}, std::move(a));
}

}  // namespace detail

/// Named reference states.
///   Ou, KS           -- the two fixed three-qutrit states
///   Ou_p, KS_p       -- their superpositions with |000> / |222>, need p
///   MaxEnt<d>        -- two-qudit maximally entangled state, e.g. MaxEnt3
///   GHZ3             -- (|000> + |111> + |222>)/sqrt(3)
///   Product          -- |000> on three qutrits
inline StateVector named_state(const std::string& name,
                               std::optional<double> p = std::nullopt) {
  const auto need_p = [&]() -> double {
    if (!p) throw std::invalid_argument("named_state: '" + name + "' requires p");
    if (*p < 0.0 || *p > 1.0)
      throw std::invalid_argument("named_state: p must lie in [0, 1]");
    return *p;
  };

  if (name == "Ou") {
    return StateVector({3, 3, 3}, detail::ou_amplitudes());
  }
  if (name == "KS") {
    return StateVector({3, 3, 3}, detail::ks_amplitudes());
  }
  if (name == "Ou_p") {
    return detail::superpose_with_basis(detail::ou_amplitudes(), 0, need_p());
  }
  if (name == "KS_p") {
    return detail::superpose_with_basis(detail::ks_amplitudes(), 26, need_p());
  }
  if (name == "GHZ3") {
    std::vector<Complex> a(27, Complex(0.0, 0.0));
    const double r = 1.0 / std::sqrt(3.0);
    a[0] = a[13] = a[26] = r;  // |000>, |111>, |222>
    return StateVector({3, 3, 3}, std::move(a));
  }
  if (name == "Product") {
    return StateVector::basis({3, 3, 3}, {0, 0, 0});
  }
  if (name.rfind("MaxEnt", 0) == 0) {
    const std::string suffix = name.substr(6);
    std::size_t d = 3;
    if (!suffix.empty()) {
      try {
        d = std::stoul(suffix);
      } catch (const std::exception&) {
        throw std::invalid_argument("named_state: unknown state '" + name + "'");
      }
    }
    if (d < 2 || d > 31)
      throw std::invalid_argument("named_state: MaxEnt dimension out of range");
    std::vector<Complex> a(d * d, Complex(0.0, 0.0));
    const double r = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t k = 0; k < d; ++k) a[k * d + k] = r;
    return StateVector({d, d}, std::move(a));
  }
  throw std::invalid_argument("named_state: unknown state '" + name + "'");
}

}  // namespace monoqt
