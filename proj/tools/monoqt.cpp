// Copyright (c) 2026 The monoqt developers
// SPDX-License-Identifier: Apache-2.0
//
// Command-line laboratory for bipartite negativity, teleportation
// capability and their monogamy on three-qutrit states.
//
//   monoqt report <name> [p]        measures of one named state (JSON)
//   monoqt sweep <family> ...       analytic-vs-numeric residual sweep
//   monoqt sample ...               Monte-Carlo monogamy scatter
//   monoqt verify [--quick]         invariant battery
//
// Exit codes: 0 success, 1 verify/internal failure, 2 usage,
// 3 analytic/numeric mismatch, 4 monogamy violation found.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "monoqt/monoqt.hpp"

using namespace monoqt;
namespace fs = std::filesystem;

namespace {

std::string json_list(const std::vector<double>& xs) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out << ", ";
    out << format_sig12(xs[i]);
  }
  out << ']';
  return out.str();
}

std::vector<double> spectrum_descending(const ComplexMatrix& m) {
  std::vector<double> ev = hermitian_eigenvalues(m);
  std::reverse(ev.begin(), ev.end());
  return ev;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

int cmd_report(const std::string& name, std::optional<double> p,
               const OptimizerConfig& cfg) {
  const StateVector psi = named_state(name, p);
  std::ostringstream out;
  out << "{\n";
  out << "  \"name\": \"" << name << "\",\n";
  if (p) out << "  \"p\": " << format_sig12(*p) << ",\n";
  out << "  \"dims\": [";
  for (std::size_t i = 0; i < psi.dims().size(); ++i)
    out << (i ? ", " : "") << psi.dims()[i];
  out << "],\n";

  if (psi.subsystems() == 3) {
    const DensityOperator rho = density_from_state(psi);
    const MonogamyRecord rec = negativity_residual(psi, 0);
    const MonogamyRecord cap = capability_residual(psi, 0, cfg);
    out << "  \"n_a_bc\": " << format_sig12(rec.n_a_bc) << ",\n";
    out << "  \"n_ab\": " << format_sig12(rec.n_ab) << ",\n";
    out << "  \"n_ac\": " << format_sig12(rec.n_ac) << ",\n";
    out << "  \"lhs\": " << format_sig12(rec.lhs) << ",\n";
    out << "  \"residual\": " << format_sig12(rec.residual) << ",\n";
    out << "  \"t_ab\": " << format_sig12(cap.n_ab) << ",\n";
    out << "  \"t_ac\": " << format_sig12(cap.n_ac) << ",\n";
    out << "  \"t_a_bc\": " << format_sig12(cap.n_a_bc) << ",\n";
    out << "  \"t_a_bc_method\": \"pure-state negativity\",\n";
    out << "  \"capability_residual\": " << format_sig12(cap.residual) << ",\n";
    const DensityOperator m1 = partial_trace(rho, {0});
    const DensityOperator m12 = partial_trace(rho, {0, 1});
    const DensityOperator m13 = partial_trace(rho, {0, 2});
    out << "  \"marginal_spectra\": {\n";
    out << "    \"rho_1\": " << json_list(spectrum_descending(m1.matrix())) << ",\n";
    out << "    \"rho_12\": " << json_list(spectrum_descending(m12.matrix())) << ",\n";
    out << "    \"rho_13\": " << json_list(spectrum_descending(m13.matrix())) << "\n";
    out << "  }";
    const bool ou_family = (name == "Ou" || name == "Ou_p");
    const bool ks_family = (name == "KS" || name == "KS_p");
    if (ou_family || ks_family) {
      const double pv = p ? *p : 1.0;
      out << ",\n  \"analytic\": {\n";
      if (ou_family) {
        const SweepRecord a = analytic_oup_residual(pv);
        out << "    \"n_a_bc\": " << format_sig12(oup_one_vs_rest_negativity(pv)) << ",\n";
        out << "    \"n_pair\": " << format_sig12(oup_pair_negativity(pv)) << ",\n";
        out << "    \"residual\": " << format_sig12(a.analytic_residual) << ",\n";
        out << "    \"branch\": \"" << branch_name(a.branch) << "\"\n";
      } else {
        const SweepRecord a = analytic_ksp_residual(pv);
        out << "    \"n_a_bc\": " << format_sig12(ksp_one_vs_rest_negativity(pv)) << ",\n";
        out << "    \"n_pair_quoted\": " << format_sig12(ksp_pair_negativity(pv)) << ",\n";
        out << "    \"n_pair_from_spectrum\": "
            << format_sig12(ksp_pair_negativity_from_spectrum(pv)) << ",\n";
        out << "    \"residual_quoted\": " << format_sig12(a.analytic_residual) << ",\n";
        out << "    \"residual_from_spectrum\": "
            << format_sig12(ksp_residual_from_spectrum(pv)) << "\n";
      }
      out << "  }";
    }
    out << "\n}\n";
  } else {
    const DensityOperator rho = density_from_state(psi);
    const Cut cut = Cut::against({0}, 2);
    out << "  \"negativity\": " << format_sig12(negativity(rho, cut).value) << ",\n";
    out << "  \"fully_entangled_fraction\": "
        << format_sig12(fully_entangled_fraction(rho, cfg).value) << ",\n";
    out << "  \"teleportation_fidelity\": "
        << format_sig12(teleportation_fidelity(rho, cfg).value) << ",\n";
    out << "  \"teleportation_capability\": "
        << format_sig12(teleportation_capability(rho, cfg).value) << "\n";
    out << "}\n";
  }
  std::cout << out.str();
  return 0;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

std::vector<double> sweep_grid(int points, bool insert_branch_point) {
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i)
    grid[i] = static_cast<double>(i) / static_cast<double>(points - 1);
  if (insert_branch_point) {
    // replace the interior point nearest 6/7 so the branch point is exact
    std::size_t nearest = 1;
    for (std::size_t i = 1; i + 1 < grid.size(); ++i)
      if (std::abs(grid[i] - oup_branch_point()) <
          std::abs(grid[nearest] - oup_branch_point()))
        nearest = i;
    grid[nearest] = oup_branch_point();
  }
  return grid;
}

int cmd_sweep(const std::string& family, int points, const fs::path& out_dir,
              double tolerance) {
  if (family != "Ou_p" && family != "KS_p")
    throw CLI::ValidationError("family must be Ou_p or KS_p");
  const bool ou = (family == "Ou_p");
  const std::vector<double> grid = sweep_grid(points, ou);

  std::vector<SweepRecord> records;
  records.reserve(grid.size());
  for (double p : grid)
    records.push_back(ou ? analytic_oup_residual(p) : analytic_ksp_residual(p));

  fs::create_directories(out_dir);
  emit_sweep_csv(records, out_dir / ("sweep_" + family + ".csv"));
  emit_sweep_svg(records, out_dir / ("sweep_" + family + ".svg"));

  double max_mismatch = 0.0;
  double min_residual = 0.0;
  for (const SweepRecord& r : records) {
    max_mismatch = std::max(max_mismatch, std::abs(r.analytic_residual - r.numeric_residual));
    min_residual = std::min({min_residual, r.analytic_residual, r.numeric_residual});
  }
  std::cout << "{\n"
            << "  \"family\": \"" << family << "\",\n"
            << "  \"points\": " << records.size() << ",\n"
            << "  \"max_mismatch\": " << format_sig12(max_mismatch) << ",\n"
            << "  \"min_residual\": " << format_sig12(min_residual) << ",\n"
            << "  \"tolerance\": " << format_sig12(tolerance) << "\n"
            << "}\n";
  if (max_mismatch > tolerance) {
    std::cerr << "sweep: analytic and numeric residuals disagree by " << max_mismatch
              << " (tolerance " << tolerance << ")\n";
    return 3;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// sample
// ---------------------------------------------------------------------------

void dump_state(const StateVector& psi, const MonogamyRecord& rec, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  out << "{\n  \"sample_id\": " << rec.sample_id << ",\n  \"seed\": " << rec.seed
      << ",\n  \"residual\": " << format_sig12(rec.residual)
      << ",\n  \"amplitudes_re\": [";
  for (std::size_t i = 0; i < psi.dim(); ++i)
    out << (i ? ", " : "") << format_sig12(psi.amplitudes()[i].real());
  out << "],\n  \"amplitudes_im\": [";
  for (std::size_t i = 0; i < psi.dim(); ++i)
    out << (i ? ", " : "") << format_sig12(psi.amplitudes()[i].imag());
  out << "]\n}\n";
}

int cmd_sample(long n, const std::string& sampler_str, std::uint64_t seed,
               const fs::path& out_dir) {
  const SamplerKind sampler = sampler_from_name(sampler_str);
  if (sampler == SamplerKind::named)
    throw CLI::ValidationError("sampler must be haar or canonical");
  const McRun run = run_monte_carlo(n, sampler, seed);

  fs::create_directories(out_dir);
  emit_csv(run.records, out_dir / "samples.csv");
  emit_svg_scatter(run.records, out_dir / "samples.svg");
  emit_summary_json(run.summary, out_dir / "summary.json");
  std::cout << summary_json(run.summary);

  if (run.summary.violations > 0) {
    for (const MonogamyRecord& rec : run.records) {
      if (rec.residual >= tols().violation_threshold) continue;
      const StateVector psi = (sampler == SamplerKind::haar)
                                  ? haar_random_state({3, 3, 3}, rec.seed)
                                  : canonical_qutrit_sample(rec.seed);
      dump_state(psi, rec,
                 out_dir / ("violation_" + std::to_string(rec.sample_id) + ".json"));
    }
    std::cerr << "sample: " << run.summary.violations
              << " residual(s) below the violation threshold; offending states dumped\n";
    return 4;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct CheckRow {
  std::string name;
  bool pass;
  std::string detail;
};

StateVector qubit_ghz() {
  std::vector<Complex> a(8, Complex(0.0, 0.0));
  a[0] = a[7] = 1.0 / std::sqrt(2.0);
  return StateVector({2, 2, 2}, std::move(a));
}

StateVector qubit_w() {
  std::vector<Complex> a(8, Complex(0.0, 0.0));
  a[1] = a[2] = a[4] = 1.0 / std::sqrt(3.0);
  return StateVector({2, 2, 2}, std::move(a));
}

double ckw_residual(const StateVector& psi) {
  const DensityOperator rho = density_from_state(psi);
  const double c_one_rest = pure_state_concurrence(psi, Cut::against({0}, 3));
  const double c12 = wootters_concurrence(partial_trace(rho, {0, 1})).value;
  const double c13 = wootters_concurrence(partial_trace(rho, {0, 2})).value;
  return c_one_rest * c_one_rest - c12 * c12 - c13 * c13;
}

int cmd_verify(bool quick) {
  const int n_states = quick ? 25 : 200;
  std::vector<CheckRow> rows;
  const auto add = [&rows](const std::string& name, bool pass, const std::string& detail) {
    rows.push_back({name, pass, detail});
  };

  {  // eigensolver fixtures and reconstruction
    const ComplexMatrix pauli_x = {{0.0, 1.0}, {1.0, 0.0}};
    const auto xe = hermitian_eigenvalues(pauli_x);
    bool ok = std::abs(xe[0] + 1.0) < 1e-12 && std::abs(xe[1] - 1.0) < 1e-12;
    double worst = 0.0;
    Rng rng(1001);
    for (int rep = 0; rep < (quick ? 5 : 25); ++rep) {
      ComplexMatrix h(9, 9);
      for (std::size_t i = 0; i < 9; ++i) {
        h(i, i) = rng.gaussian();
        for (std::size_t j = i + 1; j < 9; ++j) {
          const Complex z = rng.complex_gaussian();
          h(i, j) = z;
          h(j, i) = std::conj(z);
        }
      }
      const EigenDecomposition e = hermitian_eig(h);
      ComplexMatrix scaled = e.eigenvectors;
      for (std::size_t k = 0; k < 9; ++k)
        for (std::size_t i = 0; i < 9; ++i) scaled(i, k) *= e.eigenvalues[k];
      worst = std::max(worst, (scaled * e.eigenvectors.dagger() - h).frobenius_norm() /
                                  h.frobenius_norm());
    }
    ok = ok && worst < 1e-9;
    add("eigensolver: fixtures + reconstruction", ok,
        "max relative reconstruction error " + format_sig12(worst));
  }

  {  // pure states: capability equals negativity
    double worst = 0.0;
    for (int i = 0; i < n_states; ++i) {
      const StateVector psi = haar_random_state({3, 3}, 20000 + i);
      const DensityOperator rho = density_from_state(psi);
      const double n = negativity(rho, Cut::against({0}, 2)).value;
      const double t = teleportation_capability(rho).value;
      worst = std::max(worst, std::abs(n - t));
    }
    add("pure two-qutrit states: |T - N| <= 1e-5 (" + std::to_string(n_states) + " states)",
        worst <= 1e-5, "max |T - N| = " + format_sig12(worst));
  }

  {  // mixed states: negativity dominates capability
    double worst = 1.0;
    for (int i = 0; i < n_states; ++i) {
      const DensityOperator rho = random_mixed({3, 3}, 1 + i % 9, 30000 + i);
      const double n = negativity(rho, Cut::against({0}, 2)).value;
      const double t = teleportation_capability(rho).value;
      worst = std::min(worst, n - t);
    }
    add("mixed two-qutrit states: N - T >= -1e-6 (" + std::to_string(n_states) + " states)",
        worst >= -1e-6, "min N - T = " + format_sig12(worst));
  }

  {  // qubit concurrence monogamy
    double worst = 1.0;
    for (int i = 0; i < n_states; ++i)
      worst = std::min(worst, ckw_residual(haar_random_state({2, 2, 2}, 40000 + i)));
    add("three-qubit concurrence monogamy residual >= -1e-9 (" +
            std::to_string(n_states) + " states)",
        worst >= -1e-9, "min residual = " + format_sig12(worst));

    const double ghz = ckw_residual(qubit_ghz());
    add("GHZ concurrence residual = 1", std::abs(ghz - 1.0) <= 1e-9,
        "residual = " + format_sig12(ghz));
    // W saturates the inequality: C_1(23) = 2*sqrt(2)/3, both C_1j = 2/3
    const double w = ckw_residual(qubit_w());
    add("W concurrence residual = 0 (saturation)", std::abs(w) <= 1e-9,
        "residual = " + format_sig12(w));
  }

  {  // marginal spectrum fixtures
    double worst = 0.0;
    for (int i = 0; i <= 10; ++i) {
      const double p = i / 10.0;
      const DensityOperator ou = density_from_state(named_state("Ou_p", p));
      const DensityOperator ks = density_from_state(named_state("KS_p", p));
      std::vector<double> ou_expected = {p / 3.0, p / 3.0, 1.0 - 2.0 * p / 3.0};
      std::vector<double> ks_expected = {p / 2.0, p / 2.0, 1.0 - p};
      std::sort(ou_expected.begin(), ou_expected.end());
      std::sort(ks_expected.begin(), ks_expected.end());
      for (std::size_t other : {1UL, 2UL}) {
        const auto eo = hermitian_eigenvalues(partial_trace(ou, {0, other}).matrix());
        const auto ek = hermitian_eigenvalues(partial_trace(ks, {0, other}).matrix());
        for (int k = 0; k < 3; ++k) {
          worst = std::max(worst, std::abs(eo[6 + k] - ou_expected[k]));
          worst = std::max(worst, std::abs(ek[6 + k] - ks_expected[k]));
        }
        for (int k = 0; k < 6; ++k)
          worst = std::max(worst, std::max(std::abs(eo[k]), std::abs(ek[k])));
      }
    }
    add("superposition family marginal spectra within 1e-10", worst <= 1e-10,
        "max deviation = " + format_sig12(worst));
  }

  bool all = true;
  std::cout << "verify (" << (quick ? "quick" : "full") << ")\n";
  for (const CheckRow& row : rows) {
    all = all && row.pass;
    std::cout << (row.pass ? "PASS  " : "FAIL  ") << row.name << "  [" << row.detail
              << "]\n";
  }
  std::cout << (all ? "all checks passed\n" : "checks FAILED\n");
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"negativity / teleportation-capability monogamy laboratory"};
  app.require_subcommand(1);

  OptimizerConfig cfg;

  std::string report_name;
  double report_p = -1.0;
  CLI::App* report = app.add_subcommand("report", "measures of a named state (JSON to stdout)");
  report->add_option("name", report_name,
                     "Ou | KS | Ou_p | KS_p | GHZ3 | Product | MaxEnt<d>")->required();
  report->add_option("p", report_p, "superposition weight in [0,1] (Ou_p/KS_p)");
  report->add_option("--restarts", cfg.restarts, "optimizer restarts");
  report->add_option("--iterations", cfg.max_iterations, "optimizer iteration cap");

  std::string sweep_family;
  int sweep_points = 101;
  std::string sweep_out;
  double sweep_tolerance = 1e-9;
  CLI::App* sweep = app.add_subcommand("sweep", "analytic vs numeric residual sweep");
  sweep->add_option("family", sweep_family, "Ou_p | KS_p")->required();
  sweep->add_option("--grid", sweep_points, "number of p-grid points")->check(CLI::Range(2, 100000));
  sweep->add_option("--out", sweep_out, "output directory")->required();
  sweep->add_option("--tolerance", sweep_tolerance, "analytic/numeric mismatch tolerance");

  long sample_n = 1000;
  std::string sample_sampler = "haar";
  std::uint64_t sample_seed = 0;
  std::string sample_out;
  CLI::App* sample = app.add_subcommand("sample", "Monte-Carlo monogamy scatter");
  sample->add_option("--n", sample_n, "number of samples")->check(CLI::Range(1L, 100000000L));
  sample->add_option("--sampler", sample_sampler, "haar | canonical");
  sample->add_option("--seed", sample_seed, "base seed; sample i uses seed + i");
  sample->add_option("--out", sample_out, "output directory")->required();

  bool quick = false;
  CLI::App* verify = app.add_subcommand("verify", "run the invariant battery");
  verify->add_flag("--quick", quick, "smaller state counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (report->parsed()) {
      std::optional<double> p;
      if (report->count("p")) p = report_p;
      return cmd_report(report_name, p, cfg);
    }
    if (sweep->parsed()) return cmd_sweep(sweep_family, sweep_points, sweep_out, sweep_tolerance);
    if (sample->parsed()) return cmd_sample(sample_n, sample_sampler, sample_seed, sample_out);
    if (verify->parsed()) return cmd_verify(quick);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
