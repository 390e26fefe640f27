#include <doctest.h>

#include <robh2/discretize.hpp>
#include <robh2/simulate.hpp>

#include "oracles.hpp"
#include "test_systems.hpp"

using namespace robh2;

namespace {

LftPlant continuous_siso(const Matrix& a, const Matrix& b1) {
    const int n = static_cast<int>(a.rows());
    LftPlant p = LftPlant::zero(n, 0, static_cast<int>(b1.cols()), n, 0, n);
    p.A = a;
    p.B1 = b1;
    p.C1 = Matrix::Identity(n, n);
    p.C2 = Matrix::Identity(n, n);
    return p;
}

}  // namespace

TEST_CASE("integrator hold") {
    const LftPlant p = continuous_siso(Matrix::Zero(1, 1), Matrix::Identity(1, 1));
    const LftPlant d = zoh_discretize(p, 0.01);
    CHECK(d.A(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d.B1(0, 0) == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(d.sample_time == 0.01);
}

TEST_CASE("scalar hold closed form") {
    const double a = -1.7, b = 0.8, ts = 0.05;
    const LftPlant p = continuous_siso(Matrix::Constant(1, 1, a), Matrix::Constant(1, 1, b));
    const LftPlant d = zoh_discretize(p, ts);
    CHECK(d.A(0, 0) == doctest::Approx(std::exp(a * ts)).epsilon(1e-13));
    CHECK(d.B1(0, 0) == doctest::Approx((std::exp(a * ts) - 1.0) * b / a).epsilon(1e-13));
}

TEST_CASE("double integrator is exact for the nilpotent series") {
    Matrix a(2, 2);
    a << 0, 1, 0, 0;
    Matrix b(2, 1);
    b << 0, 1;
    const LftPlant d = zoh_discretize(continuous_siso(a, b), 0.1);
    CHECK(d.A(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d.A(0, 1) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(d.A(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d.B1(0, 0) == doctest::Approx(0.005).epsilon(1e-13));
    CHECK(d.B1(1, 0) == doctest::Approx(0.1).epsilon(1e-13));
}

TEST_CASE("held-input discrete simulation matches continuous integration") {
    Matrix a(2, 2);
    a << -0.3, 1.2, -1.2, -0.3;
    Matrix b(2, 1);
    b << 0.5, 1.0;
    const double ts = 0.05;
    const LftPlant plant = continuous_siso(a, b);
    const LftPlant disc = zoh_discretize(plant, ts);

    const int horizon = 40;
    fixtures::Rng rng(9);
    Matrix d(1, horizon);
    for (int k = 0; k < horizon; ++k) d(0, k) = rng.normal();

    ClosedLoopLft cl = open_loop(disc);
    const SimulationRun run =
        simulate(cl, DeltaTrajectory::zero(0), d, Vector::Zero(2), horizon);

    Vector x = Vector::Zero(2);
    for (int k = 0; k < horizon; ++k) {
        x = oracle::rk4_hold(a, b, x, d.col(k), ts, 2000);
        CHECK((x - run.states.col(k + 1)).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("discretizing a discrete plant is rejected") {
    LftPlant p = continuous_siso(Matrix::Zero(1, 1), Matrix::Identity(1, 1));
    p.sample_time = 0.1;
    CHECK_THROWS_AS(zoh_discretize(p, 0.1), DimensionMismatch);
}
