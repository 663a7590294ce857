// Copyright (c) 2026 The monoqt developers
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch.hpp>

#include <cmath>

#include "monoqt/monogamy.hpp"

using namespace monoqt;

TEST_CASE("negativity_residual fixtures", "[monogamy]") {
  SECTION("Ou state: 1 vs two 1/3 marginals, residual 7/9") {
    const MonogamyRecord rec = negativity_residual(named_state("Ou"), 0);
    REQUIRE(rec.n_a_bc == Approx(1.0).margin(1e-9));
    REQUIRE(rec.n_ab == Approx(1.0 / 3.0).margin(1e-9));
    REQUIRE(rec.n_ac == Approx(1.0 / 3.0).margin(1e-9));
    REQUIRE(rec.residual == Approx(7.0 / 9.0).margin(1e-9));
    REQUIRE(rec.lhs * rec.lhs == Approx(rec.n_ab * rec.n_ab + rec.n_ac * rec.n_ac).margin(1e-12));
  }

  SECTION("KS state: marginals 1/3, residual 7/9") {
    // the partial-transpose blocks [[0, sqrt(2)/6],[sqrt(2)/6, 1/6]] have
    // eigenvalues {1/3, -1/6}, so each marginal negativity is 1/3
    const MonogamyRecord rec = negativity_residual(named_state("KS"), 0);
    REQUIRE(rec.n_a_bc == Approx(1.0).margin(1e-9));
    REQUIRE(rec.n_ab == Approx(1.0 / 3.0).margin(1e-9));
    REQUIRE(rec.n_ac == Approx(1.0 / 3.0).margin(1e-9));
    REQUIRE(rec.residual == Approx(7.0 / 9.0).margin(1e-9));
  }

  SECTION("GHZ3: classical marginals, residual 1") {
    const MonogamyRecord rec = negativity_residual(named_state("GHZ3"), 0);
    REQUIRE(rec.n_ab == Approx(0.0).margin(1e-10));
    REQUIRE(rec.n_ac == Approx(0.0).margin(1e-10));
    REQUIRE(rec.residual == Approx(1.0).margin(1e-9));
  }

  SECTION("focus symmetry of the Ou state") {
    for (std::size_t focus : {0UL, 1UL, 2UL}) {
      const MonogamyRecord rec = negativity_residual(named_state("Ou"), focus);
      REQUIRE(rec.residual == Approx(7.0 / 9.0).margin(1e-9));
    }
  }

  SECTION("argument validation") {
    REQUIRE_THROWS_AS(negativity_residual(named_state("Ou"), 3), std::invalid_argument);
    REQUIRE_THROWS_AS(negativity_residual(named_state("MaxEnt3"), 0), std::invalid_argument);
  }
}

TEST_CASE("capability_residual", "[monogamy][optimizer]") {
  SECTION("product state: every term zero") {
    const MonogamyRecord rec = capability_residual(named_state("Product"), 0);
    REQUIRE(rec.n_ab == Approx(0.0).margin(1e-8));
    REQUIRE(rec.n_ac == Approx(0.0).margin(1e-8));
    REQUIRE(rec.n_a_bc == Approx(0.0).margin(1e-8));
    REQUIRE(rec.residual == Approx(0.0).margin(1e-7));
  }

  SECTION("KS state: marginal capability below marginal negativity") {
    const MonogamyRecord rec = capability_residual(named_state("KS"), 0);
    REQUIRE(rec.n_ab <= std::sqrt(2.0) / 3.0 + 1e-6);
    REQUIRE(rec.n_ac <= std::sqrt(2.0) / 3.0 + 1e-6);
    REQUIRE(rec.residual >= 5.0 / 9.0 - 1e-6);
  }

  SECTION("bounded below by the negativity residual on random canonical states") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const StateVector psi = canonical_qutrit_sample(3100 + seed);
      const double cap = capability_residual(psi, 0).residual;
      const double neg = negativity_residual(psi, 0).residual;
      REQUIRE(cap >= neg - 1e-6);
    }
  }
}

TEST_CASE("analytic residual formulas", "[monogamy]") {
  SECTION("Ou family endpoints and midpoint") {
    REQUIRE(analytic_oup_residual(0.0).analytic_residual == Approx(0.0).margin(1e-12));
    const SweepRecord mid = analytic_oup_residual(0.5);
    // N_1(23)(1/2) = 5/6; low-branch pairwise term enters squared
    REQUIRE(oup_one_vs_rest_negativity(0.5) == Approx(5.0 / 6.0).margin(1e-12));
    REQUIRE(mid.branch == Branch::low);
    REQUIRE(mid.analytic_residual == Approx(mid.numeric_residual).margin(1e-9));
    const SweepRecord top = analytic_oup_residual(1.0);
    REQUIRE(top.branch == Branch::high);
    REQUIRE(top.analytic_residual == Approx(7.0 / 9.0).margin(1e-12));
  }

  SECTION("Ou family branch continuity at p = 6/7") {
    const double p = oup_branch_point();
    const double n123 = oup_one_vs_rest_negativity(p);
    const double s6 = std::sqrt(6.0 * p * (1.0 - p));
    const double s33 = std::sqrt(33.0 * p * p - 60.0 * p + 36.0);
    const double low_pair = (s33 + 4.0 * s6 + 3.0 * p - 6.0) / 12.0;
    const double high_pair = (s33 + 7.0 * p - 6.0) / 12.0;
    const double low = n123 * n123 - 2.0 * low_pair * low_pair;
    const double high = n123 * n123 - 2.0 * high_pair * high_pair;
    REQUIRE(std::abs(low - high) <= 1e-12);
  }

  SECTION("KS family quoted formula values") {
    REQUIRE(analytic_ksp_residual(0.0).analytic_residual == Approx(0.0).margin(1e-12));
    REQUIRE(analytic_ksp_residual(1.0).analytic_residual == Approx(5.0 / 9.0).margin(1e-12));
    // (12p - 11p^2 + 4p sqrt(p(3-2p)))/9 at p = 1/2: (6 - 2.75 + 2)/9
    const SweepRecord mid = analytic_ksp_residual(0.5);
    REQUIRE(mid.analytic_residual == Approx(5.25 / 9.0).margin(1e-12));
    REQUIRE(mid.branch == Branch::not_applicable);
  }

  SECTION("Ou family analytic matches numeric on a coarse grid") {
    for (int i = 0; i <= 20; ++i) {
      const double p = static_cast<double>(i) / 20.0;
      const SweepRecord ou = analytic_oup_residual(p);
      REQUIRE(ou.analytic_residual == Approx(ou.numeric_residual).margin(1e-9));
      REQUIRE(ou.analytic_residual >= -1e-12);
      REQUIRE(ou.numeric_residual >= -1e-12);
    }
  }

  SECTION("KS family: numerics follow the spectrum-derived forms; the quoted "
          "formula is off by exactly 2p^2/9") {
    for (int i = 0; i <= 20; ++i) {
      const double p = static_cast<double>(i) / 20.0;
      const SweepRecord ks = analytic_ksp_residual(p);
      REQUIRE(ks.numeric_residual == Approx(ksp_residual_from_spectrum(p)).margin(1e-9));
      REQUIRE(ks.numeric_residual - ks.analytic_residual ==
              Approx(2.0 * p * p / 9.0).margin(1e-9));
      REQUIRE(ks.analytic_residual >= -1e-12);
      REQUIRE(ks.numeric_residual >= -1e-12);
    }
  }

  SECTION("pairwise closed forms against the numeric marginals") {
    for (double p : {0.25, 0.5, 0.75, 1.0}) {
      REQUIRE(negativity_residual(named_state("Ou_p", p), 0).n_ab ==
              Approx(oup_pair_negativity(p)).margin(1e-9));
      REQUIRE(negativity_residual(named_state("KS_p", p), 0).n_ab ==
              Approx(ksp_pair_negativity_from_spectrum(p)).margin(1e-9));
    }
  }

  SECTION("p out of range") {
    REQUIRE_THROWS_AS(analytic_oup_residual(-0.01), std::invalid_argument);
    REQUIRE_THROWS_AS(analytic_ksp_residual(1.01), std::invalid_argument);
  }
}

TEST_CASE("run_monte_carlo", "[monogamy]") {
  SECTION("haar samples satisfy the inequality") {
    const McRun run = run_monte_carlo(200, SamplerKind::haar, 42);
    REQUIRE(run.records.size() == 200);
    REQUIRE(run.summary.violations == 0);
    REQUIRE(run.summary.min_residual >= -1e-9);
  }

  SECTION("canonical samples satisfy the inequality") {
    const McRun run = run_monte_carlo(200, SamplerKind::canonical, 43);
    REQUIRE(run.summary.violations == 0);
  }

  SECTION("bit-identical reruns and per-sample seeds") {
    const McRun a = run_monte_carlo(50, SamplerKind::haar, 7);
    const McRun b = run_monte_carlo(50, SamplerKind::haar, 7);
    for (std::size_t i = 0; i < 50; ++i) {
      REQUIRE(a.records[i].n_a_bc == b.records[i].n_a_bc);
      REQUIRE(a.records[i].residual == b.records[i].residual);
      REQUIRE(a.records[i].seed == 7 + i);
      REQUIRE(a.records[i].sample_id == static_cast<long>(i));
    }
  }

  SECTION("named sampler is not a Monte-Carlo source") {
    REQUIRE_THROWS_AS(run_monte_carlo(1, SamplerKind::named, 0), std::invalid_argument);
  }
}
