// Copyright (c) 2026 The monoqt developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "monoqt/config.hpp"
#include "monoqt/measures.hpp"
#include "monoqt/named_states.hpp"
#include "monoqt/samplers.hpp"
#include "monoqt/states.hpp"

namespace monoqt {

enum class SamplerKind { haar, canonical, named };

inline const char* sampler_name(SamplerKind s) {
  switch (s) {
    case SamplerKind::haar: return "haar";
    case SamplerKind::canonical: return "canonical";
    case SamplerKind::named: return "named";
  }
  return "?";
}

inline SamplerKind sampler_from_name(const std::string& s) {
  if (s == "haar") return SamplerKind::haar;
  if (s == "canonical") return SamplerKind::canonical;
  if (s == "named") return SamplerKind::named;
  throw std::invalid_argument("unknown sampler '" + s + "'");
}

/// One sample of the one-vs-rest against pairwise comparison:
/// lhs = sqrt(n_ab^2 + n_ac^2), residual = n_a_bc^2 - n_ab^2 - n_ac^2.
struct MonogamyRecord {
  long sample_id = 0;
  double n_ab = 0.0;
  double n_ac = 0.0;
  double n_a_bc = 0.0;
  double lhs = 0.0;
  double residual = 0.0;
  SamplerKind sampler = SamplerKind::named;
  std::uint64_t seed = 0;
};

enum class Branch { low, high, not_applicable };

inline const char* branch_name(Branch b) {
  switch (b) {
    case Branch::low: return "low";
    case Branch::high: return "high";
    case Branch::not_applicable: return "not_applicable";
  }
  return "?";
}

/// One point of an analytic-vs-numeric residual sweep.
struct SweepRecord {
  double p = 0.0;
  double analytic_residual = 0.0;
  double numeric_residual = 0.0;
  Branch branch = Branch::not_applicable;
};

namespace detail {

inline double clamp0(double x) {
  return (x < 0.0 && x > -tols().radicand_clamp) ? 0.0 : x;
}

inline MonogamyRecord residual_record(double n_ab, double n_ac, double n_a_bc) {
  MonogamyRecord rec;
  rec.n_ab = n_ab;
  rec.n_ac = n_ac;
  rec.n_a_bc = n_a_bc;
  rec.lhs = std::sqrt(n_ab * n_ab + n_ac * n_ac);
  rec.residual = n_a_bc * n_a_bc - n_ab * n_ab - n_ac * n_ac;
  return rec;
}

}  // namespace detail

/// Negativity monogamy residual of a three-party pure state with the given
/// focus party: one-vs-rest negativity on the pure state, pairwise
/// negativities on the two-party marginals.
inline MonogamyRecord negativity_residual(const StateVector& psi, std::size_t focus) {
  if (psi.subsystems() != 3)
    throw std::invalid_argument("negativity_residual: state must have exactly 3 subsystems");
  if (focus >= 3) throw std::invalid_argument("negativity_residual: focus out of range");

  const DensityOperator rho = density_from_state(psi);
  const Cut one_vs_rest = Cut::against({focus}, 3);
  const double n_a_bc = negativity(rho, one_vs_rest).value;

  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < 3; ++i)
    if (i != focus) others.push_back(i);

  double pairwise[2];
  for (int k = 0; k < 2; ++k) {
    const DensityOperator marginal = partial_trace(rho, {focus, others[k]});
    // after the trace the kept order is ascending, so locate the focus
    const std::size_t focus_pos = focus < others[k] ? 0 : 1;
    pairwise[k] = negativity(marginal, Cut::against({focus_pos}, 2)).value;
  }
  return detail::residual_record(pairwise[0], pairwise[1], n_a_bc);
}

/// Teleportation-capability monogamy residual. The pairwise terms run the
/// capability optimizer on the 3x3 marginals; the one-vs-rest term is the
/// pure-state negativity, which equals the capability of a pure state (the
/// 3x9 cut has no d x d teleportation scheme of its own).
inline MonogamyRecord capability_residual(const StateVector& psi, std::size_t focus,
                                          const OptimizerConfig& cfg = OptimizerConfig{}) {
  if (psi.subsystems() != 3)
    throw std::invalid_argument("capability_residual: state must have exactly 3 subsystems");
  if (focus >= 3) throw std::invalid_argument("capability_residual: focus out of range");

  const DensityOperator rho = density_from_state(psi);
  const double t_a_bc = negativity(rho, Cut::against({focus}, 3)).value;

  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < 3; ++i)
    if (i != focus) others.push_back(i);

  double pairwise[2];
  for (int k = 0; k < 2; ++k) {
    DensityOperator marginal = partial_trace(rho, {focus, others[k]});
    if (focus > others[k])
      marginal = reshape_to_cut(marginal, Cut::against({1}, 2));  // focus first
    pairwise[k] = teleportation_capability(marginal, cfg).value;
  }
  return detail::residual_record(pairwise[0], pairwise[1], t_a_bc);
}

// ---------------------------------------------------------------------------
// Closed forms for the two superposition families.
// ---------------------------------------------------------------------------

/// One-vs-rest negativity of the Ou superposition: (p + 2 sqrt(p(3-2p)))/3.
inline double oup_one_vs_rest_negativity(double p) {
  return (p + 2.0 * std::sqrt(detail::clamp0(p * (3.0 - 2.0 * p)))) / 3.0;
}

/// Pairwise marginal negativity of the Ou superposition.
inline double oup_pair_negativity(double p) {
  const double s6 = std::sqrt(detail::clamp0(6.0 * p * (1.0 - p)));
  const double s33 = std::sqrt(33.0 * p * p - 60.0 * p + 36.0);
  return (std::abs(p + s6) + std::abs(p - s6)) / 6.0 + (s33 + 3.0 * p - 6.0) / 12.0;
}

/// One-vs-rest negativity of the KS superposition (same marginal spectrum
/// as the Ou family, hence the same value).
inline double ksp_one_vs_rest_negativity(double p) { return oup_one_vs_rest_negativity(p); }

/// Pairwise marginal negativity of the KS superposition as usually quoted,
/// sqrt(2) p / 3. Direct evaluation of the partial transpose does NOT
/// reproduce this value: the 2x2 blocks of rho_1j^{T_B} are
/// [[0, sqrt(2)p/6], [sqrt(2)p/6, p/6]] with eigenvalues {p/3, -p/6}, so the
/// measured negativity is p/3 (the quoted form corresponds to dropping the
/// p/6 diagonal). See ksp_pair_negativity_from_spectrum; the sweep surfaces
/// the mismatch.
inline double ksp_pair_negativity(double p) { return std::sqrt(2.0) * p / 3.0; }

/// Pairwise marginal negativity of the KS superposition derived from the
/// partial-transpose spectrum: p/3. Matches the numeric computation.
inline double ksp_pair_negativity_from_spectrum(double p) { return p / 3.0; }

/// KS-family residual consistent with the partial-transpose spectrum:
/// (12p - 9p^2 + 4p sqrt(p(3-2p)))/9. Matches the numeric residual.
inline double ksp_residual_from_spectrum(double p) {
  return (12.0 * p - 9.0 * p * p +
          4.0 * p * std::sqrt(detail::clamp0(p * (3.0 - 2.0 * p)))) / 9.0;
}

/// Boundary between the two branches of the Ou-family residual.
inline constexpr double oup_branch_point() { return 6.0 / 7.0; }

/// Analytic Ou-family residual with its piecewise branch, alongside the
/// numeric residual recomputed through the partial transpose.
inline SweepRecord analytic_oup_residual(double p) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("analytic_oup_residual: p must lie in [0, 1]");
  const double n123 = oup_one_vs_rest_negativity(p);
  const double s6 = std::sqrt(detail::clamp0(6.0 * p * (1.0 - p)));
  const double s33 = std::sqrt(33.0 * p * p - 60.0 * p + 36.0);
  SweepRecord rec;
  rec.p = p;
  if (p <= oup_branch_point()) {
    const double pair = (s33 + 4.0 * s6 + 3.0 * p - 6.0) / 12.0;
    rec.analytic_residual = n123 * n123 - 2.0 * pair * pair;
    rec.branch = Branch::low;
  } else {
    const double pair = (s33 + 7.0 * p - 6.0) / 12.0;
    rec.analytic_residual = n123 * n123 - 2.0 * pair * pair;
    rec.branch = Branch::high;
  }
  rec.numeric_residual = negativity_residual(named_state("Ou_p", p), 0).residual;
  return rec;
}

/// Analytic KS-family residual as usually quoted,
/// (12p - 11p^2 + 4p sqrt(p(3-2p)))/9, with the numeric cross-check. The
/// quoted form follows from the sqrt(2)p/3 pairwise value and inherits its
/// error: the numeric residual equals ksp_residual_from_spectrum instead
/// (difference 2p^2/9), so sweeps over this family report a mismatch.
inline SweepRecord analytic_ksp_residual(double p) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("analytic_ksp_residual: p must lie in [0, 1]");
  SweepRecord rec;
  rec.p = p;
  rec.analytic_residual =
      (12.0 * p - 11.0 * p * p +
       4.0 * p * std::sqrt(detail::clamp0(p * (3.0 - 2.0 * p)))) / 9.0;
  rec.numeric_residual = negativity_residual(named_state("KS_p", p), 0).residual;
  rec.branch = Branch::not_applicable;
  return rec;
}

// ---------------------------------------------------------------------------
// Monte-Carlo runner.
// ---------------------------------------------------------------------------

struct McSummary {
  long n = 0;
  double min_residual = 0.0;
  long violations = 0;
  SamplerKind sampler = SamplerKind::haar;
  std::uint64_t base_seed = 0;
};

struct McRun {
  std::vector<MonogamyRecord> records;
  McSummary summary;
};

/// Worker cap: MONOQT_THREADS if set, otherwise the hardware concurrency.
inline std::size_t worker_count(std::size_t n_items) {
  std::size_t workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MONOQT_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) workers = std::min<std::size_t>(workers, static_cast<std::size_t>(cap));
  }
  return std::min(workers, std::max<std::size_t>(1, n_items));
}

/// n independent three-qutrit samples, sample i seeded with base_seed + i;
/// scheduling cannot change the result. Violations (residual below the
/// threshold) are counted, never silently dropped.
inline McRun run_monte_carlo(long n, SamplerKind sampler, std::uint64_t base_seed) {
  if (n < 1) throw std::invalid_argument("run_monte_carlo: need at least one sample");
  if (sampler == SamplerKind::named)
    throw std::invalid_argument("run_monte_carlo: sampler must be haar or canonical");

  McRun run;
  run.records.resize(static_cast<std::size_t>(n));

  const auto work = [&](long begin, long end) {
    for (long i = begin; i < end; ++i) {
      const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(i);
      const StateVector psi = (sampler == SamplerKind::haar)
                                  ? haar_random_state({3, 3, 3}, seed)
                                  : canonical_qutrit_sample(seed);
      MonogamyRecord rec = negativity_residual(psi, 0);
      rec.sample_id = i;
      rec.sampler = sampler;
      rec.seed = seed;
      run.records[static_cast<std::size_t>(i)] = rec;
    }
  };

  const std::size_t workers = worker_count(static_cast<std::size_t>(n));
  if (workers <= 1) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    const long chunk = (n + static_cast<long>(workers) - 1) / static_cast<long>(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      const long begin = static_cast<long>(w) * chunk;
      const long end = std::min(n, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(work, begin, end);
    }
    for (std::thread& t : pool) t.join();
  }

  run.summary.n = n;
  run.summary.sampler = sampler;
  run.summary.base_seed = base_seed;
  run.summary.min_residual = run.records.front().residual;
  for (const MonogamyRecord& rec : run.records) {
    run.summary.min_residual = std::min(run.summary.min_residual, rec.residual);
    if (rec.residual < tols().violation_threshold) ++run.summary.violations;
  }
  return run;
}

}  // namespace monoqt
