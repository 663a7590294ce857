// Copyright (c) 2026 The monoqt developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "monoqt/complex_matrix.hpp"
#include "monoqt/config.hpp"
#include "monoqt/hermitian_eigen.hpp"
#include "monoqt/rng.hpp"
#include "monoqt/states.hpp"

namespace monoqt {

enum class Method { exact, closed_form, optimizer, monte_carlo };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::exact: return "exact";
    case Method::closed_form: return "closed_form";
    case Method::optimizer: return "optimizer";
    case Method::monte_carlo: return "monte_carlo";
  }
  return "?";
}

/// A named scalar measure value with provenance.
struct MeasureResult {
  double value = 0.0;
  Cut cut;
  Method method = Method::exact;
  long iterations = 0;
  double std_error = 0.0;  // non-zero only for Monte-Carlo estimates
};

struct OptimizerConfig {
  int restarts = 8;
  int max_iterations = 500;
  double step_size = 0.1;
  double gradient_tolerance = 1e-8;

  void validate() const {
    if (restarts < 1 || max_iterations < 1 || step_size <= 0.0 || gradient_tolerance <= 0.0)
      throw std::invalid_argument("OptimizerConfig: all fields must be positive");
  }
};

namespace detail {

// Values within measure_clamp of the admissible range are float noise and
// are clamped; anything farther out is a genuine error, not a clamp.
inline double clamp_measure(double v, double lo, double hi, const char* what) {
  const double slack = tols().measure_clamp;
  if (v < lo - slack || v > hi + slack)
    throw std::runtime_error(std::string(what) + ": value " + std::to_string(v) +
                             " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return std::min(hi, std::max(lo, v));
}

inline Cut bipartite_cut() { return Cut::against({0}, 2); }

inline void require_square_bipartite(const DensityOperator& rho, const char* what) {
  if (rho.subsystems() != 2 || rho.dims()[0] != rho.dims()[1])
    throw std::invalid_argument(std::string(what) + ": needs a bipartite d x d state");
}

}  // namespace detail

/// Negativity across the cut: (||rho^{T_B}|| - 1)/(d - 1) with
/// d = min(dim_left, dim_right), clamped into [0, 1].
inline MeasureResult negativity(const DensityOperator& rho, const Cut& cut,
                                const Tolerances& tol = tols()) {
  const DensityOperator grouped = reshape_to_cut(rho, cut);
  const ComplexMatrix pt = partial_transpose(grouped, 1);
  const double tn = trace_norm_hermitian(pt, tol);
  const double d = static_cast<double>(std::min(grouped.dims()[0], grouped.dims()[1]));
  const double v = (tn - 1.0) / (d - 1.0);
  return {detail::clamp_measure(v, 0.0, 1.0, "negativity"), cut, Method::exact, 0, 0.0};
}

/// Schmidt coefficients across the cut, descending; squares sum to 1.
inline std::vector<double> schmidt_coefficients(const StateVector& psi, const Cut& cut,
                                                const Tolerances& tol = tols()) {
  const StateVector grouped = reshape_to_cut(psi, cut);
  const std::size_t dl = grouped.dims()[0];
  const std::size_t dr = grouped.dims()[1];
  // left marginal = M M^dagger with M the amplitude matrix
  ComplexMatrix marginal(dl, dl);
  const auto& a = grouped.amplitudes();
  for (std::size_t i = 0; i < dl; ++i)
    for (std::size_t j = 0; j < dl; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < dr; ++k) s += a[i * dr + k] * std::conj(a[j * dr + k]);
      marginal(i, j) = s;
    }
  std::vector<double> evals = hermitian_eigenvalues(marginal, tol);
  std::vector<double> s(evals.size());
  for (std::size_t k = 0; k < evals.size(); ++k)
    s[k] = std::sqrt(std::max(0.0, evals[evals.size() - 1 - k]));
  return s;
}

/// Pure-state negativity from the Schmidt spectrum:
/// ((sum_i s_i)^2 - 1)/(d - 1). Equals the capability of the pure state.
inline double pure_negativity_closed_form(const StateVector& psi, const Cut& cut,
                                          const Tolerances& tol = tols()) {
  const std::vector<double> s = schmidt_coefficients(psi, cut, tol);
  const StateVector grouped = reshape_to_cut(psi, cut);
  const double d = static_cast<double>(std::min(grouped.dims()[0], grouped.dims()[1]));
  double sum = 0.0;
  for (double x : s) sum += x;
  return detail::clamp_measure((sum * sum - 1.0) / (d - 1.0), 0.0, 1.0,
                               "pure_negativity_closed_form");
}

/// Outcome of the fully-entangled-fraction search: best overlap value, the
/// local unitary attaining it, iteration count and convergence flag.
struct FefOptimum {
  double value = 0.0;
  ComplexMatrix twirl;
  long iterations = 0;
  bool converged = false;
};

namespace detail {

// Hermitian basis of u(d): d diagonal units, then for each i<j the real and
// imaginary off-diagonal pair.
inline std::vector<ComplexMatrix> hermitian_basis(std::size_t d) {
  std::vector<ComplexMatrix> basis;
  basis.reserve(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    ComplexMatrix b(d, d);
    b(i, i) = 1.0;
    basis.push_back(std::move(b));
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      ComplexMatrix re(d, d);
      re(i, j) = 1.0;
      re(j, i) = 1.0;
      basis.push_back(std::move(re));
      ComplexMatrix im(d, d);
      im(i, j) = Complex(0.0, 1.0);
      im(j, i) = Complex(0.0, -1.0);
      basis.push_back(std::move(im));
    }
  return basis;
}

// <Phi_U| rho |Phi_U> with |Phi_U> = (I o U) (1/sqrt d) sum_k |kk>,
// i.e. phi[(k,j)] = U(j,k)/sqrt(d).
inline double fef_objective(const DensityOperator& rho, const ComplexMatrix& u) {
  const std::size_t d = u.rows();
  std::vector<Complex> phi(d * d);
  const double r = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t j = 0; j < d; ++j) phi[k * d + j] = r * u(j, k);
  const ComplexMatrix& m = rho.matrix();
  Complex s = 0.0;
  for (std::size_t i = 0; i < d * d; ++i) {
    if (phi[i] == Complex(0.0, 0.0)) continue;
    Complex row = 0.0;
    for (std::size_t j = 0; j < d * d; ++j) row += m(i, j) * phi[j];
    s += std::conj(phi[i]) * row;
  }
  return s.real();
}

inline ComplexMatrix random_hermitian(Rng& rng, std::size_t d, double scale) {
  ComplexMatrix h(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    h(i, i) = scale * rng.gaussian();
    for (std::size_t j = i + 1; j < d; ++j) {
      const Complex z = scale * rng.complex_gaussian();
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  }
  return h;
}

}  // namespace detail

/// Maximal overlap with a maximally entangled state, max_U <Phi_U|rho|Phi_U>,
/// by gradient ascent on a Hermitian generator through the exponential map.
/// Gradients are central differences (step 1e-5) along a fixed Hermitian
/// basis; restarts are deterministic. The reported value is a lower bound of
/// the true maximum.
inline FefOptimum fef_optimize(const DensityOperator& rho,
                               const OptimizerConfig& cfg = OptimizerConfig{}) {
  detail::require_square_bipartite(rho, "fully_entangled_fraction");
  cfg.validate();
  const std::size_t d = rho.dims()[0];
  const double fd_step = 1e-5;
  const double min_step = 1e-12;

  const std::vector<ComplexMatrix> basis = detail::hermitian_basis(d);
  std::vector<ComplexMatrix> plus, minus;  // exp(+/- i*fd_step*B), fixed across iterations
  plus.reserve(basis.size());
  minus.reserve(basis.size());
  for (const ComplexMatrix& b : basis) {
    plus.push_back(unitary_from_generator(fd_step * b));
    minus.push_back(unitary_from_generator(Complex(-fd_step) * b));
  }

  Rng rng(0x6d6f6e6f71746673ULL);  // fixed stream: restarts are reproducible
  FefOptimum best;
  long total_iterations = 0;
  bool any_converged = false;

  for (int r = 0; r < cfg.restarts; ++r) {
    ComplexMatrix u = (r == 0) ? ComplexMatrix::identity(d)
                               : unitary_from_generator(detail::random_hermitian(rng, d, 1.0));
    double f = detail::fef_objective(rho, u);
    double step = cfg.step_size;
    bool converged = false;

    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
      ++total_iterations;
      std::vector<double> grad(basis.size());
      double gnorm2 = 0.0;
      for (std::size_t k = 0; k < basis.size(); ++k) {
        const double fp = detail::fef_objective(rho, plus[k] * u);
        const double fm = detail::fef_objective(rho, minus[k] * u);
        grad[k] = (fp - fm) / (2.0 * fd_step);
        gnorm2 += grad[k] * grad[k];
      }
      if (std::sqrt(gnorm2) < cfg.gradient_tolerance) {
        converged = true;
        break;
      }

      ComplexMatrix direction(d, d);
      for (std::size_t k = 0; k < basis.size(); ++k)
        if (grad[k] != 0.0) direction += grad[k] * basis[k];

      bool improved = false;
      while (step >= min_step) {
        const ComplexMatrix u_try = unitary_from_generator(step * direction) * u;
        const double f_try = detail::fef_objective(rho, u_try);
        if (f_try > f) {
          u = u_try;
          f = f_try;
          step = std::min(step * 1.3, std::max(cfg.step_size, 1.0));
          improved = true;
          break;
        }
        step *= 0.5;
      }
      if (!improved) break;  // finite-difference noise dominates; settled
    }

    any_converged = any_converged || converged;
    if (f > best.value || best.twirl.rows() == 0) {
      best.value = f;
      best.twirl = u;
    }
  }

  best.iterations = any_converged
                        ? total_iterations
                        : static_cast<long>(cfg.restarts) * cfg.max_iterations;
  best.converged = any_converged;
  best.value = detail::clamp_measure(best.value, 0.0, 1.0, "fully_entangled_fraction");
  return best;
}

inline MeasureResult fully_entangled_fraction(const DensityOperator& rho,
                                              const OptimizerConfig& cfg = OptimizerConfig{}) {
  const FefOptimum opt = fef_optimize(rho, cfg);
  return {opt.value, detail::bipartite_cut(), Method::optimizer, opt.iterations, 0.0};
}

/// Maximal average teleportation fidelity of the standard scheme:
/// f = (F d + 1)/(d + 1) with F the fully entangled fraction.
inline MeasureResult teleportation_fidelity(const DensityOperator& rho,
                                            const OptimizerConfig& cfg = OptimizerConfig{}) {
  detail::require_square_bipartite(rho, "teleportation_fidelity");
  const FefOptimum opt = fef_optimize(rho, cfg);
  const double d = static_cast<double>(rho.dims()[0]);
  const double f = (opt.value * d + 1.0) / (d + 1.0);
  return {detail::clamp_measure(f, 0.0, 1.0, "teleportation_fidelity"),
          detail::bipartite_cut(), Method::optimizer, opt.iterations, 0.0};
}

/// Rescaled fidelity max{((d+1) f - 2)/(d - 1), 0}: positive iff the state
/// beats classical teleportation, 1 iff teleportation is perfect.
inline MeasureResult teleportation_capability(const DensityOperator& rho,
                                              const OptimizerConfig& cfg = OptimizerConfig{}) {
  const MeasureResult fid = teleportation_fidelity(rho, cfg);
  const double d = static_cast<double>(rho.dims()[0]);
  const double t = std::max(((d + 1.0) * fid.value - 2.0) / (d - 1.0), 0.0);
  return {detail::clamp_measure(t, 0.0, 1.0, "teleportation_capability"),
          fid.cut, Method::optimizer, fid.iterations, 0.0};
}

/// Two-qubit concurrence: max{0, l1 - l2 - l3 - l4} with l_i the descending
/// square roots of the spectrum of sqrt(rho) (YoY) rho* (YoY) sqrt(rho).
inline MeasureResult wootters_concurrence(const DensityOperator& rho,
                                          const Tolerances& tol = tols()) {
  if (rho.subsystems() != 2 || rho.dims()[0] != 2 || rho.dims()[1] != 2)
    throw std::invalid_argument("wootters_concurrence: needs a two-qubit state");
  // kron(Y, Y) has real entries {-1, 0, 1}
  const ComplexMatrix y = {{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}};
  const ComplexMatrix yy = kron(y, y);
  const ComplexMatrix spin_flipped = yy * rho.matrix().conjugate() * yy;
  const ComplexMatrix root = psd_sqrt(rho.matrix(), tol);
  const ComplexMatrix product = root * spin_flipped * root;
  std::vector<double> evals = hermitian_eigenvalues(product, tol);  // ascending
  std::vector<double> lambda(4);
  for (std::size_t k = 0; k < 4; ++k) lambda[k] = std::sqrt(std::max(0.0, evals[3 - k]));
  const double c = lambda[0] - lambda[1] - lambda[2] - lambda[3];
  return {detail::clamp_measure(std::max(c, 0.0), 0.0, 1.0, "wootters_concurrence"),
          detail::bipartite_cut(), Method::closed_form, 0, 0.0};
}

/// Bipartite concurrence of a pure state across the cut,
/// sqrt(2 (1 - tr marginal^2)); for three qubits this is the C_{1(23)} of
/// the qubit monogamy inequality.
inline double pure_state_concurrence(const StateVector& psi, const Cut& cut,
                                     const Tolerances& tol = tols()) {
  const std::vector<double> s = schmidt_coefficients(psi, cut, tol);
  double purity = 0.0;
  for (double x : s) purity += x * x * x * x;
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
}

}  // namespace monoqt
