// Copyright (c) 2026 The monoqt developers
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch.hpp>

#include <cmath>

#include "monoqt/measures.hpp"
#include "monoqt/named_states.hpp"
#include "monoqt/samplers.hpp"

using namespace monoqt;

namespace {

const Cut kPair = Cut::against({0}, 2);

DensityOperator two_qutrit_product() {
  std::vector<Complex> a(9, Complex(0.0, 0.0));
  a[0] = 1.0;  // |00>
  return density_from_state(StateVector({3, 3}, std::move(a)));
}

DensityOperator maximally_mixed_two_qutrit() {
  ComplexMatrix m = ComplexMatrix::identity(9);
  m *= Complex(1.0 / 9.0);
  return DensityOperator({3, 3}, std::move(m));
}

}  // namespace

TEST_CASE("negativity", "[measures]") {
  SECTION("maximally entangled two-qutrit state") {
    REQUIRE(negativity(density_from_state(named_state("MaxEnt3")), kPair).value ==
            Approx(1.0).margin(1e-10));
  }

  SECTION("product state is PPT") {
    REQUIRE(negativity(two_qutrit_product(), kPair).value == Approx(0.0).margin(1e-12));
  }

  SECTION("Ou superposition at p = 1/2 across 1|(23) equals 5/6") {
    // closed form (p + 2 sqrt(p(3-2p)))/3 at p = 1/2
    const DensityOperator rho = density_from_state(named_state("Ou_p", 0.5));
    const MeasureResult n = negativity(rho, Cut::against({0}, 3));
    REQUIRE(n.value == Approx(5.0 / 6.0).margin(1e-9));
    REQUIRE(n.method == Method::exact);
  }

  SECTION("invariant under local unitaries") {
    Rng rng(77);
    for (int rep = 0; rep < 5; ++rep) {
      const DensityOperator rho = random_mixed({3, 3}, 3, 770 + rep);
      ComplexMatrix ga(3, 3), gb(3, 3);
      for (std::size_t i = 0; i < 3; ++i) {
        ga(i, i) = rng.gaussian();
        gb(i, i) = rng.gaussian();
        for (std::size_t j = i + 1; j < 3; ++j) {
          const Complex za = rng.complex_gaussian(), zb = rng.complex_gaussian();
          ga(i, j) = za;
          ga(j, i) = std::conj(za);
          gb(i, j) = zb;
          gb(j, i) = std::conj(zb);
        }
      }
      const ComplexMatrix u = kron(unitary_from_generator(ga), unitary_from_generator(gb));
      const DensityOperator rotated({3, 3}, u * rho.matrix() * u.dagger());
      REQUIRE(negativity(rotated, kPair).value ==
              Approx(negativity(rho, kPair).value).margin(1e-9));
    }
  }
}

TEST_CASE("schmidt_coefficients and the pure closed form", "[measures]") {
  SECTION("product state has a single coefficient 1") {
    const auto s = schmidt_coefficients(StateVector::basis({3, 3}, {1, 2}), kPair);
    REQUIRE(s[0] == Approx(1.0).margin(1e-12));
    REQUIRE(s[1] == Approx(0.0).margin(1e-12));
    REQUIRE(s[2] == Approx(0.0).margin(1e-12));
  }

  SECTION("maximally entangled state: all 1/sqrt(3), value 1") {
    const StateVector psi = named_state("MaxEnt3");
    for (double s : schmidt_coefficients(psi, kPair))
      REQUIRE(s == Approx(1.0 / std::sqrt(3.0)).margin(1e-10));
    REQUIRE(pure_negativity_closed_form(psi, kPair) == Approx(1.0).margin(1e-10));
  }

  SECTION("product state closed form is 0") {
    REQUIRE(pure_negativity_closed_form(StateVector::basis({3, 3}, {0, 0}), kPair) ==
            Approx(0.0).margin(1e-12));
  }

  SECTION("squares sum to one; closed form matches the partial transpose") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const StateVector psi = haar_random_state({3, 3}, 4000 + seed);
      double sum2 = 0.0;
      for (double s : schmidt_coefficients(psi, kPair)) sum2 += s * s;
      REQUIRE(sum2 == Approx(1.0).margin(1e-10));
      REQUIRE(pure_negativity_closed_form(psi, kPair) ==
              Approx(negativity(density_from_state(psi), kPair).value).margin(1e-9));
    }
  }
}

TEST_CASE("fully_entangled_fraction", "[measures][optimizer]") {
  SECTION("maximally entangled state reaches 1") {
    const MeasureResult f = fully_entangled_fraction(density_from_state(named_state("MaxEnt3")));
    REQUIRE(f.value == Approx(1.0).margin(1e-8));
    REQUIRE(f.method == Method::optimizer);
  }

  SECTION("pure states reach the Schmidt bound and never exceed it") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const StateVector psi = haar_random_state({3, 3}, 5000 + seed);
      double sum = 0.0;
      for (double s : schmidt_coefficients(psi, kPair)) sum += s;
      const double bound = sum * sum / 3.0;
      const double found = fully_entangled_fraction(density_from_state(psi)).value;
      REQUIRE(found <= bound + 1e-9);
      REQUIRE(found == Approx(bound).margin(1e-6));
    }
  }

  SECTION("maximally mixed state: overlap 1/9 for every twirl") {
    REQUIRE(fully_entangled_fraction(maximally_mixed_two_qutrit()).value ==
            Approx(1.0 / 9.0).margin(1e-8));
  }

  SECTION("non-square bipartition is rejected") {
    Rng rng(88);
    const DensityOperator rho = density_from_state(haar_random_state({2, 3}, rng));
    REQUIRE_THROWS_AS(fully_entangled_fraction(rho), std::invalid_argument);
  }

  SECTION("degenerate optimizer configs are rejected") {
    const DensityOperator rho = density_from_state(named_state("MaxEnt3"));
    OptimizerConfig bad;
    bad.restarts = 0;
    REQUIRE_THROWS_AS(fully_entangled_fraction(rho, bad), std::invalid_argument);
  }
}

TEST_CASE("teleportation fidelity and capability", "[measures][optimizer]") {
  SECTION("maximally entangled state teleports perfectly") {
    const DensityOperator rho = density_from_state(named_state("MaxEnt3"));
    REQUIRE(teleportation_fidelity(rho).value == Approx(1.0).margin(1e-8));
    REQUIRE(teleportation_capability(rho).value == Approx(1.0).margin(1e-8));
  }

  SECTION("product state sits at the classical threshold 2/(d+1)") {
    const DensityOperator rho = two_qutrit_product();
    REQUIRE(teleportation_fidelity(rho).value == Approx(0.5).margin(1e-8));
    REQUIRE(teleportation_capability(rho).value == Approx(0.0).margin(1e-8));
  }

  SECTION("maximally mixed state: f = (1/9*3 + 1)/4 = 1/3") {
    REQUIRE(teleportation_fidelity(maximally_mixed_two_qutrit()).value ==
            Approx(1.0 / 3.0).margin(1e-8));
  }

  SECTION("capability equals negativity on pure states") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const StateVector psi = haar_random_state({3, 3}, 6000 + seed);
      const DensityOperator rho = density_from_state(psi);
      REQUIRE(teleportation_capability(rho).value ==
              Approx(negativity(rho, kPair).value).margin(1e-6));
    }
  }

  SECTION("capability never exceeds negativity on mixed states") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const DensityOperator rho = random_mixed({3, 3}, 1 + seed % 9, 7000 + seed);
      const double n = negativity(rho, kPair).value;
      const double t = teleportation_capability(rho).value;
      REQUIRE(n - t >= -1e-6);
    }
  }
}

TEST_CASE("wootters_concurrence", "[measures]") {
  SECTION("Bell state") {
    REQUIRE(wootters_concurrence(density_from_state(named_state("MaxEnt2"))).value ==
            Approx(1.0).margin(1e-10));
  }

  SECTION("product two-qubit states") {
    Rng rng(99);
    for (int rep = 0; rep < 5; ++rep) {
      const StateVector a = haar_random_state({2}, rng);
      const StateVector b = haar_random_state({2}, rng);
      std::vector<Complex> joint(4);
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
          joint[i * 2 + j] = a.amplitudes()[i] * b.amplitudes()[j];
      const DensityOperator rho = density_from_state(StateVector({2, 2}, std::move(joint)));
      REQUIRE(wootters_concurrence(rho).value == Approx(0.0).margin(1e-8));
    }
  }

  SECTION("Werner state at p = 0.8: C = (3p-1)/2 = 0.7") {
    const DensityOperator bell = density_from_state(named_state("MaxEnt2"));
    ComplexMatrix m = ComplexMatrix::identity(4);
    m *= Complex(0.2 / 4.0);
    m += Complex(0.8) * bell.matrix();
    REQUIRE(wootters_concurrence(DensityOperator({2, 2}, std::move(m))).value ==
            Approx(0.7).margin(1e-9));
  }

  SECTION("wrong dimensions are rejected") {
    REQUIRE_THROWS_AS(wootters_concurrence(two_qutrit_product()), std::invalid_argument);
  }
}
