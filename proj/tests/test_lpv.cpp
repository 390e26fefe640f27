#include <doctest.h>

#include <robh2/example_plants.hpp>
#include <robh2/lpv.hpp>

#include "test_systems.hpp"

using namespace robh2;

namespace {

AffineLpvSystem scalar_lpv(double a0, double a1, double rho_min, double rho_max) {
    AffineLpvSystem s;
    s.A0 = Matrix::Constant(1, 1, a0);
    s.A1 = Matrix::Constant(1, 1, a1);
    s.B1 = Matrix::Identity(1, 1);
    s.B2 = Matrix::Identity(1, 1);
    s.C1 = Matrix::Identity(1, 1);
    s.D11 = Matrix::Zero(1, 1);
    s.D12 = Matrix::Zero(1, 1);
    s.C2 = Matrix::Identity(1, 1);
    s.D21 = Matrix::Zero(1, 1);
    s.D22 = Matrix::Zero(1, 1);
    s.rho_min = rho_min;
    s.rho_max = rho_max;
    return s;
}

}  // namespace

TEST_CASE("no parameter dependence gives a nominal plant") {
    const auto r = lpv_to_lft(scalar_lpv(-1.0, 0.0, -1.0, 1.0));
    CHECK(r.plant.np == 0);
    CHECK(r.delta_block_size == 0);
    CHECK(r.plant.A(0, 0) == doctest::Approx(-1.0));
}

TEST_CASE("scalar factorization") {
    // A(rho) = -1 + rho on [-1, 1]: nominal A = -1, B0*C0 = 1.
    const auto r = lpv_to_lft(scalar_lpv(-1.0, 1.0, -1.0, 1.0));
    CHECK(r.rho0 == doctest::Approx(0.0));
    CHECK(r.rho1 == doctest::Approx(1.0));
    CHECK(r.delta_block_size == 1);
    CHECK(r.plant.A(0, 0) == doctest::Approx(-1.0));
    CHECK((r.plant.B0 * r.plant.C0)(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.plant.structure.scalar_blocks == std::vector<int>{1});
}

TEST_CASE("bearing model normalization and rank") {
    const auto amb = build_amb();
    const auto r = amb.lft;
    CHECK(r.rho0 == doctest::Approx(707.5));
    CHECK(r.rho1 == doctest::Approx(392.5));
    CHECK(r.delta_block_size == 2);
    CHECK(r.plant.structure.scalar_blocks == std::vector<int>{2});
}

TEST_CASE("normalization round trip over the parameter range") {
    fixtures::Rng rng(12);
    Matrix a0 = fixtures::random_matrix(rng, 4, 4);
    Matrix a1 = fixtures::random_matrix(rng, 4, 2) * fixtures::random_matrix(rng, 2, 4);
    AffineLpvSystem s = scalar_lpv(0, 0, 2.0, 10.0);
    s.A0 = a0;
    s.A1 = a1;
    s.B1 = Matrix::Identity(4, 4);
    s.B2 = Matrix::Identity(4, 4);
    s.C1 = Matrix::Identity(4, 4);
    s.D11 = Matrix::Zero(4, 4);
    s.D12 = Matrix::Zero(4, 4);
    s.C2 = Matrix::Identity(4, 4);
    s.D21 = Matrix::Zero(4, 4);
    s.D22 = Matrix::Zero(4, 4);

    const auto r = lpv_to_lft(s);
    CHECK(r.delta_block_size == 2);
    for (int i = 0; i < 20; ++i) {
        const double rho = 2.0 + 8.0 * i / 19.0;
        const double delta = lpv_delta(r, rho);
        CHECK(std::abs(delta) <= 1.0 + 1e-12);
        const Matrix truth = a0 + rho * a1;
        const Matrix lft = r.plant.A + r.plant.B0 * delta * r.plant.C0;
        CHECK((truth - lft).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("empty parameter range is rejected") {
    CHECK_THROWS_AS(lpv_to_lft(scalar_lpv(0.0, 1.0, 1.0, 1.0)), DimensionMismatch);
}
