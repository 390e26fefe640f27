#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <robh2/synthesis.hpp>

#include "oracles.hpp"
#include "test_systems.hpp"

using namespace robh2;

namespace {

LftPlant scalar_sf_plant(double a, double b1, double b2, double c1) {
    LftPlant p = LftPlant::zero(1, 0, 1, 1, 1, 1);
    p.sample_time = 1.0;
    p.A(0, 0) = a;
    p.B1(0, 0) = b1;
    p.B2(0, 0) = b2;
    p.C1(0, 0) = c1;
    p.C2(0, 0) = 1.0;
    return p;
}

}  // namespace

TEST_CASE("congruence inequality behind the synthesis derivation") {
    // P^{-1} >= V^{-T} (V + V' - P) V^{-1} for any nonsingular V and P > 0.
    fixtures::Rng rng(70);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_u64() % 6);
        Matrix v = fixtures::random_matrix(rng, n, n);
        Eigen::JacobiSVD<Matrix> svd(v);
        if (svd.singularValues()(n - 1) < 0.1) {
            v += Matrix::Identity(n, n);
        }
        Matrix g = fixtures::random_matrix(rng, n, n);
        const Matrix p = g * g.transpose() + 0.1 * Matrix::Identity(n, n);
        const Matrix vinv = v.inverse();
        const Matrix gap =
            p.inverse() - vinv.transpose() * (v + v.transpose() - p) * vinv;
        Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (gap + gap.transpose()),
                                                  Eigen::EigenvaluesOnly);
        CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
    }
}

TEST_CASE("scalar nominal synthesis recovers the do-nothing controller") {
    // x+ = 0 x + d + u, e = x: the output variance is 1 + F^2 * stuff, so the
    // sweep oracle has its minimum at F = 0 with gamma = 1.
    const auto plant = scalar_sf_plant(0.0, 1.0, 1.0, 1.0);
    double best_gamma = 1e300, best_f = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double f = -2.0 + 4.0 * i / 400.0;
        if (std::abs(f) >= 1.0) continue;  // closed loop must stay stable
        const double g = oracle::h2_norm_gramian(Matrix::Constant(1, 1, f),
                                                 Matrix::Identity(1, 1),
                                                 Matrix::Identity(1, 1));
        if (g < best_gamma) {
            best_gamma = g;
            best_f = f;
        }
    }
    CHECK(best_gamma == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(best_f == doctest::Approx(0.0).epsilon(1e-9));

    const auto result = synthesize_sf(validate_plant(plant));
    CHECK(result.gamma == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(std::abs(result.F(0, 0)) < 1e-2);
}

TEST_CASE("inert control channel reduces to analysis on a decoupled plant") {
    // With A = 0, B2 = 0, C0 = 0 and D10 = 0 the intermediate-variable
    // conditions lose nothing, so the synthesis value must match the analysis
    // value of the open loop.
    fixtures::Rng rng(71);
    LftPlant p = LftPlant::zero(2, 1, 2, 2, 1, 1);
    p.sample_time = 1.0;
    p.structure = UncertaintyStructure::scalars({1});
    p.B0 = fixtures::random_matrix(rng, 2, 1, 0.4);
    p.D00 = Matrix::Constant(1, 1, 0.3);
    p.B1 = fixtures::random_matrix(rng, 2, 2);
    p.C1 = Matrix::Identity(2, 2);

    const double gamma_syn = synthesize_sf(validate_plant(p)).gamma;
    const double gamma_ana = analyze_robust_h2(open_loop(p)).gamma;
    CHECK(gamma_syn == doctest::Approx(gamma_ana).epsilon(1e-4));
}

TEST_CASE("synthesis value never beats the analysis of its own closed loop") {
    fixtures::Rng rng(72);
    for (int trial = 0; trial < 6; ++trial) {
        LftPlant p = fixtures::random_lft_plant(rng, 2, 1, 1, 1, 1, 1, 0.6, 0.2);
        p.B2.setZero();
        p.D02.setZero();
        p.D12.setZero();
        double gamma_syn = 0.0, gamma_ana = 0.0;
        try {
            gamma_syn = synthesize_sf(validate_plant(p)).gamma;
            gamma_ana = analyze_robust_h2(open_loop(p)).gamma;
        } catch (const InfeasibleError&) {
            continue;
        }
        CHECK(gamma_syn >= gamma_ana * (1.0 - 1e-6) - 1e-6);
    }
}

TEST_CASE("regression set: every success re-certifies within 0.1 percent") {
    fixtures::Rng rng(73);
    int successes = 0;
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 3);
        const int np = static_cast<int>(rng.next_u64() % 3);
        const LftPlant p = fixtures::random_lft_plant(rng, n, np, 2, 2, 1, 1, 0.7, 0.25);
        SfSynthesisResult result;
        try {
            result = synthesize_sf(validate_plant(p));
        } catch (const InfeasibleError&) {
            continue;
        }
        ++successes;
        const auto cert = analyze_robust_h2(close_state_feedback(p, result.F));
        CHECK(cert.gamma <= result.gamma * 1.001 + 1e-9);
        CHECK((result.F * result.v - result.m).cwiseAbs().maxCoeff() <
              1e-9 * (1.0 + result.m.cwiseAbs().maxCoeff()));
    }
    CHECK(successes >= 5);
}

TEST_CASE("continuous plants are rejected") {
    LftPlant p = scalar_sf_plant(0.0, 1.0, 1.0, 1.0);
    p.sample_time = 0.0;
    CHECK_THROWS_AS(synthesize_sf(validate_plant(p)), DimensionMismatch);
}
