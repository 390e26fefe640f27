#include <doctest.h>

#include <complex>

#include <robh2/example_plants.hpp>
#include <robh2/weights.hpp>

#include "test_systems.hpp"

using namespace robh2;

TEST_CASE("transfer-function realization evaluates correctly") {
    // (0.3 s + 1.2)/(s + 0.04)
    const LtiSystem w = LtiSystem::from_tf({0.3, 1.2}, {1.0, 0.04});
    CHECK(w.order() == 1);
    for (double omega : {0.0, 0.1, 1.0, 10.0}) {
        const std::complex<double> s(0.0, omega);
        const std::complex<double> expected = (0.3 * s + 1.2) / (s + 0.04);
        const std::complex<double> got = w.eval(s)(0, 0);
        CHECK(std::abs(expected - got) < 1e-12);
    }
}

TEST_CASE("balanced first-order form matches from_tf") {
    const LtiSystem a = LtiSystem::first_order(100.0, 10.0, 12500.0);
    const LtiSystem b = LtiSystem::from_tf({1.0, 0.1}, {0.01, 125.0});
    for (double omega : {0.01, 1.0, 100.0, 1e4}) {
        const std::complex<double> s(0.0, omega);
        CHECK(std::abs(a.eval(s)(0, 0) - b.eval(s)(0, 0)) < 1e-9 * std::abs(b.eval(s)(0, 0)));
    }
}

TEST_CASE("improper transfer functions are rejected") {
    CHECK_THROWS_AS(LtiSystem::from_tf({1.0, 0.0, 0.0}, {1.0, 1.0}), ImproperWeight);
    CHECK_THROWS_AS(LtiSystem::from_tf({1.0}, {0.0}), ImproperWeight);
}

TEST_CASE("empty scheme leaves the plant unchanged") {
    fixtures::Rng rng(20);
    const LftPlant p = fixtures::random_lft_plant(rng, 3, 1, 2, 2, 1, 1);
    const LftPlant w = augment_with_weights(p, WeightingScheme{});
    CHECK(w.n == p.n);
    CHECK((w.A - p.A).cwiseAbs().maxCoeff() == 0.0);
    CHECK((w.C1 - p.C1).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("first-order weight on e adds one state and cascades the response") {
    fixtures::Rng rng(21);
    LftPlant p = fixtures::random_lft_plant(rng, 3, 0, 1, 1, 1, 1);
    p.sample_time = 0.0;
    p.A = fixtures::random_stable_a(rng, 3, 0.8) - Matrix::Identity(3, 3);  // ct-stable

    WeightingScheme scheme;
    WeightingScheme::ErrorChannel ch;
    ch.Cx = Matrix::Zero(1, 3);
    ch.Du = Matrix::Zero(1, 1);
    ch.De = Matrix::Identity(1, 1);
    ch.weight = LtiSystem::first_order(0.3, 1.2, 0.04);
    scheme.error_channels.push_back(ch);

    const LftPlant w = augment_with_weights(p, scheme);
    CHECK(w.n == p.n + 1);

    // d -> e response of the cascade equals W(s) * G(s) on a frequency grid.
    for (int i = 0; i < 10; ++i) {
        const std::complex<double> s(0.0, 0.05 * std::pow(10.0, 3.0 * i / 9.0));
        LtiSystem plant_sys{p.A, p.B1, p.C1, Matrix::Zero(1, 1)};
        LtiSystem weighted_sys{w.A, w.B1, w.C1, Matrix::Zero(1, 1)};
        const std::complex<double> expected =
            ch.weight.eval(s)(0, 0) * plant_sys.eval(s)(0, 0);
        const std::complex<double> got = weighted_sys.eval(s)(0, 0);
        CHECK(std::abs(expected - got) < 1e-10 * (1.0 + std::abs(expected)));
    }
}

TEST_CASE("two-disk interconnection dimensions") {
    const auto build = build_two_disk();
    // 4 plant states + actuator + W_e + W_u + W_n.
    CHECK(build.weighted.n == 8);
    CHECK(build.weighted.nd == 4);  // d(2) + input disturbance + sensor noise
    CHECK(build.weighted.ne == 2);
    CHECK(build.weighted.nu == 1);
    CHECK(build.weighted.np == 2);
    CHECK(build.weighted.sample_time == 0.01);
}

TEST_CASE("readout dimension mismatches are topology errors") {
    fixtures::Rng rng(22);
    const LftPlant p = fixtures::random_lft_plant(rng, 3, 0, 1, 1, 1, 1);
    WeightingScheme scheme;
    WeightingScheme::ErrorChannel ch;
    ch.Cx = Matrix::Zero(1, 2);  // wrong state count
    ch.Du = Matrix::Zero(1, 1);
    ch.De = Matrix::Zero(1, 1);
    ch.weight = LtiSystem::gain(1.0);
    scheme.error_channels.push_back(ch);
    CHECK_THROWS_AS(augment_with_weights(p, scheme), TopologyMismatch);
}

TEST_CASE("input disturbance into a D02 path is rejected") {
    fixtures::Rng rng(23);
    LftPlant p = fixtures::random_lft_plant(rng, 2, 1, 1, 1, 1, 1);
    p.D02 = Matrix::Constant(1, 1, 0.5);  // u couples into q
    WeightingScheme scheme;
    scheme.input_disturbance_gain = Matrix::Constant(1, 1, 1e-3);
    CHECK_THROWS_AS(augment_with_weights(p, scheme), TopologyMismatch);
}
