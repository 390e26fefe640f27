#include <doctest.h>

#include <robh2/uncertainty.hpp>

#include "test_systems.hpp"

using namespace robh2;

TEST_CASE("structure dimensions and validation") {
    UncertaintyStructure s;
    s.scalar_blocks = {2, 1};
    s.full_blocks = {3};
    CHECK(s.dimension() == 6);
    CHECK(s.doubled_copy().dimension() == 12);

    UncertaintyStructure bad;
    bad.scalar_blocks = {0};
    CHECK_THROWS_AS(bad.validate(), DimensionMismatch);
}

TEST_CASE("sample with bound zero is the zero matrix") {
    UncertaintyStructure s;
    s.scalar_blocks = {1, 2};
    s.full_blocks = {2};
    const Matrix d = sample_uncertainty(s, 3u, 0.0);
    CHECK(d.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("repeated scalar block is delta times identity") {
    const auto s = UncertaintyStructure::scalars({2});
    const Matrix d = sample_uncertainty(s, 7u, 1.0);
    CHECK(d(0, 0) == d(1, 1));
    CHECK(d(0, 1) == 0.0);
    CHECK(d(1, 0) == 0.0);
    CHECK(std::abs(d(0, 0)) <= 1.0);
}

TEST_CASE("samples respect the norm bound") {
    UncertaintyStructure s;
    s.scalar_blocks = {1};
    s.full_blocks = {3};
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const Matrix d = sample_uncertainty(s, seed, 0.8);
        const double top = d.jacobiSvd().singularValues()(0);
        CHECK(top <= 0.8 + 1e-12);
    }
}

TEST_CASE("doubled samples carry the same base block twice") {
    UncertaintyStructure s;
    s.scalar_blocks = {2};
    s.full_blocks = {2};
    const auto d2 = s.doubled_copy();
    const Matrix d = sample_uncertainty(d2, 11u, 1.0);
    const int nb = s.dimension();
    CHECK((d.topLeftCorner(nb, nb) - d.bottomRightCorner(nb, nb)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(d.topRightCorner(nb, nb).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sampling is deterministic in the seed") {
    UncertaintyStructure s;
    s.scalar_blocks = {1};
    s.full_blocks = {2};
    const Matrix a = sample_uncertainty(s, 42u, 1.0);
    const Matrix b = sample_uncertainty(s, 42u, 1.0);
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("scaling coordinate counts") {
    UncertaintyStructure s;
    s.scalar_blocks = {2};
    s.full_blocks = {3};
    CHECK(scaling_dim(s) == 4);  // sym(2) has 3 entries, full block one scalar

    const auto d2 = s.doubled_copy();
    // Two symmetric copies plus coupling (2x2 full block and one scalar).
    CHECK(scaling_dim(d2) == 2 * 4 + 4 + 1);
}

TEST_CASE("scaling commutes with sampled uncertainty exactly") {
    UncertaintyStructure s;
    s.scalar_blocks = {2, 1};
    s.full_blocks = {2};
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        Vector coords(scaling_dim(s));
        for (int i = 0; i < coords.size(); ++i) coords(i) = rng.normal();
        const ScalingValue x = ScalingValue::from_coords(s, coords);
        for (int k = 0; k < 50; ++k) {
            const Matrix delta = sample_uncertainty(s, rng, 1.0);
            const Matrix comm = x.matrix() * delta - delta * x.matrix();
            CHECK(comm.cwiseAbs().maxCoeff() == 0.0);
        }
    }
}

TEST_CASE("doubled scaling commutes with doubled uncertainty exactly") {
    UncertaintyStructure s;
    s.scalar_blocks = {2};
    s.full_blocks = {1};
    const auto d2 = s.doubled_copy();
    Rng rng(6);
    for (int trial = 0; trial < 5; ++trial) {
        Vector coords(scaling_dim(d2));
        for (int i = 0; i < coords.size(); ++i) coords(i) = rng.normal();
        const ScalingValue x = ScalingValue::from_coords(d2, coords);
        for (int k = 0; k < 50; ++k) {
            const Matrix delta = sample_uncertainty(d2, rng, 1.0);
            const Matrix comm = x.matrix() * delta - delta * x.matrix();
            CHECK(comm.cwiseAbs().maxCoeff() == 0.0);
        }
    }
}

TEST_CASE("scaling from blocks and coordinate round trip") {
    UncertaintyStructure s;
    s.scalar_blocks = {2};
    s.full_blocks = {2};
    Matrix d1(2, 2);
    d1 << 2.0, 0.5, 0.5, 3.0;
    const ScalingValue x = ScalingValue::from_blocks(s, {d1}, {1.5});
    CHECK(x.matrix()(0, 1) == 0.5);
    CHECK(x.matrix()(2, 2) == 1.5);
    CHECK(x.matrix()(3, 3) == 1.5);

    const ScalingValue y = ScalingValue::from_coords(s, x.coords());
    CHECK((x.matrix() - y.matrix()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("matrices outside the commutant are rejected") {
    UncertaintyStructure s;
    s.scalar_blocks = {1, 1};
    Matrix bad(2, 2);
    bad << 1.0, 0.7, 0.7, 2.0;  // cross term between distinct scalars
    CHECK_THROWS_AS(ScalingValue(s, bad), StructuralViolation);
}

TEST_CASE("frozen uncertainty from block values") {
    UncertaintyStructure s;
    s.scalar_blocks = {2};
    s.full_blocks = {1};
    Vector v(2);
    v << 0.5, -1.0;
    const Matrix d = frozen_uncertainty(s, v);
    CHECK(d(0, 0) == 0.5);
    CHECK(d(1, 1) == 0.5);
    CHECK(d(2, 2) == -1.0);
}
