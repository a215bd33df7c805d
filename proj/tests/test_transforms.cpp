#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qrel/constants.hpp"
#include "qrel/rng.hpp"
#include "qrel/transforms.hpp"

#include <cmath>

using namespace qrel;
using namespace qrel::transforms;

TEST_CASE("length dilation is the identity at equal masses") {
    CHECK(dilate_length(3.7, 2.0, 2.0) == doctest::Approx(3.7).epsilon(1e-15));
}

TEST_CASE("a 1:4 mass ratio halves a unit length") {
    CHECK(dilate_length(1.0, 1.0, 4.0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("an electron described by a kilogram frame shrinks to sub-femtometer scale") {
    const double out = dilate_length(1.0, constants::electron_mass, 1.0);
    CHECK(out == doctest::Approx(9.544e-16).epsilon(1e-3));
}

TEST_CASE("dilation rejects nonpositive masses") {
    CHECK_THROWS_AS(dilate_length(1.0, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(dilate_length(1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("dilation round trips and composes over mass triples") {
    SeededRng rng(5);
    for (int rep = 0; rep < 1000; ++rep) {
        const double m1 = std::exp(6.0 * (rng.uniform() - 0.5));
        const double m2 = std::exp(6.0 * (rng.uniform() - 0.5));
        const double m3 = std::exp(6.0 * (rng.uniform() - 0.5));
        const double dx = 0.1 + rng.uniform();
        CHECK(std::abs(dilate_length(dilate_length(dx, m1, m2), m2, m1) - dx) < 1e-12 * dx);
        const double composed = dilate_length(dilate_length(dx, m1, m2), m2, m3);
        CHECK(std::abs(composed - dilate_length(dx, m1, m3)) < 1e-12 * dx);
    }
}

TEST_CASE("the matter-wave product inverts its own definition") {
    const double m = 2.0, v = 3.0;
    const double lambda = constants::hbar / (m * v);
    CHECK(debroglie_product(m, v, lambda) == doctest::Approx(constants::hbar).epsilon(1e-15));
    CHECK(debroglie_product(1.0, 1.0, 1.0) == 1.0);
}

TEST_CASE("an electron at a million meters per second has its textbook product") {
    const double p = debroglie_product(constants::electron_mass, 1e6, 1.157e-10);
    CHECK(p == doctest::Approx(1.054e-34).epsilon(1e-3));
}

TEST_CASE("frame swap is symmetric at equal masses") {
    const auto swap = frame_swap_debroglie(2.0, 2.0, 5.0);
    CHECK(swap.lambda_forward == doctest::Approx(swap.lambda_backward).epsilon(1e-15));
    CHECK(swap.magnified_length == doctest::Approx(swap.lambda_backward).epsilon(1e-15));
}

TEST_CASE("a 1e4 mass ratio scales the backward and magnified wavelengths as expected") {
    const auto swap = frame_swap_debroglie(1.0, 1e4, 1.0, 1.0);
    CHECK(swap.lambda_backward == doctest::Approx(swap.lambda_forward * 1e-4).epsilon(1e-12));
    CHECK(swap.magnified_length == doctest::Approx(swap.lambda_forward * 1e-2).epsilon(1e-12));
}

TEST_CASE("both directional products equal the action constant for random masses") {
    SeededRng rng(21);
    for (int rep = 0; rep < 100; ++rep) {
        const double m_S = std::exp(10.0 * (rng.uniform() - 0.5));
        const double m_A = std::exp(10.0 * (rng.uniform() - 0.5));
        const double v = 0.1 + rng.uniform();
        const auto swap = frame_swap_debroglie(m_S, m_A, v);
        CHECK(std::abs(debroglie_product(m_S, v, swap.lambda_forward) - constants::hbar) <
              1e-9 * constants::hbar);
        CHECK(std::abs(debroglie_product(m_A, v, swap.lambda_backward) - constants::hbar) <
              1e-9 * constants::hbar);
    }
}

TEST_CASE("the interval reduces to elapsed time at equal energies") {
    CHECK(quantum_interval({2.5, 3.0, 3.0}) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(quantum_interval({0.0, 3.0, 3.0}) == 0.0);
}

TEST_CASE("the interval closes the 3-4-5 triangle") {
    CHECK(quantum_interval({3.0, 5.0, 1.0}) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("the interval is symmetric in its arguments and rejects nonpositive energies") {
    SeededRng rng(31);
    for (int rep = 0; rep < 200; ++rep) {
        const double dt = 4.0 * (rng.uniform() - 0.5);
        const double j1 = 0.1 + rng.uniform();
        const double j2 = 0.1 + rng.uniform();
        CHECK(quantum_interval({dt, j1, j2}) ==
              doctest::Approx(quantum_interval({dt, j2, j1})).epsilon(1e-14));
        CHECK(quantum_interval({dt, j1, j2}) ==
              doctest::Approx(quantum_interval({-dt, j1, j2})).epsilon(1e-14));
        CHECK(quantum_interval({dt, j1, j2}) >= 0.0);
    }
    CHECK_THROWS_AS(quantum_interval({1.0, 0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("the kinematic factor takes its textbook values") {
    CHECK(gamma_factor(0.0, 1.0) == doctest::Approx(1.0));
    CHECK(gamma_factor(0.6, 1.0) == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(gamma_factor(0.99, 1.0) == doctest::Approx(7.0888).epsilon(1e-4));
    CHECK_THROWS_AS(gamma_factor(1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(gamma_factor(-1.2, 1.0), std::domain_error);
}

TEST_CASE("the energy-time factor mirrors the kinematic one") {
    CHECK(delta_factor({1.0, 1.0, 0.0, 1.0, 1.0}) == doctest::Approx(1.0));
    CHECK(delta_factor({1.0, 1.0, 0.6, 1.0, 1.0}) == doctest::Approx(1.25).epsilon(1e-12));
    for (int i = 0; i <= 99; ++i) {
        const double x = static_cast<double>(i) / 100.0;
        CHECK(std::abs(delta_factor({1.0, 1.0, x, 1.0, 1.0}) - gamma_factor(x, 1.0)) < 1e-12);
    }
    CHECK_THROWS_AS(delta_factor({1.0, 1.0, 1.0, 1.0, 1.0}), std::domain_error);
}

TEST_CASE("the five-component interval behaves like a Euclidean norm") {
    CHECK(flat_5_interval({0, 0, 0, 0, 0}) == 0.0);
    CHECK(flat_5_interval({3, 4, 0, 0, 0}) == doctest::Approx(5.0).epsilon(1e-15));

    SeededRng rng(41);
    for (int rep = 0; rep < 200; ++rep) {
        FiveDisplacement a{rng.uniform() - 0.5, rng.uniform() - 0.5, rng.uniform() - 0.5,
                           rng.uniform() - 0.5, rng.uniform() - 0.5};
        FiveDisplacement b{rng.uniform() - 0.5, rng.uniform() - 0.5, rng.uniform() - 0.5,
                           rng.uniform() - 0.5, rng.uniform() - 0.5};
        // Oracle: explicit componentwise sum of squares.
        const double expect = std::sqrt(a.dA * a.dA + a.dB * a.dB + a.dC * a.dC +
                                        a.dD * a.dD + a.dE * a.dE);
        CHECK(flat_5_interval(a) == doctest::Approx(expect).epsilon(1e-14));
        const FiveDisplacement sum{a.dA + b.dA, a.dB + b.dB, a.dC + b.dC, a.dD + b.dD,
                                   a.dE + b.dE};
        CHECK(flat_5_interval(sum) <= flat_5_interval(a) + flat_5_interval(b) + 1e-14);
    }
}

TEST_CASE("natural unit scales make the action constant equal one") {
    const NaturalUnits units{constants::electron_mass, 1e-10};
    const double hbar_in_units = constants::hbar * units.time_scale() /
                                 (units.mass_scale * units.length_scale * units.length_scale);
    CHECK(hbar_in_units == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(units.energy_scale() * units.time_scale() ==
          doctest::Approx(constants::hbar).epsilon(1e-12));
}
