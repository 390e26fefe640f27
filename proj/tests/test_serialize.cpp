#include <doctest.h>

#include <robh2/json_io.hpp>

#include "test_systems.hpp"

using namespace robh2;

TEST_CASE("plant json round trip is exact") {
    fixtures::Rng rng(100);
    const LftPlant p = fixtures::random_lft_plant(rng, 3, 2, 2, 1, 1, 2);
    const std::string text = plant_to_json(p);
    const LftPlant back = plant_from_json(text);
    CHECK(back.n == p.n);
    CHECK(back.sample_time == p.sample_time);
    CHECK((back.A - p.A).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.B0 - p.B0).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.D21 - p.D21).cwiseAbs().maxCoeff() == 0.0);
    CHECK(back.structure == p.structure);
    // Serialization itself is stable.
    CHECK(plant_to_json(back) == text);
}

TEST_CASE("missing optional blocks default to zero") {
    const std::string text = R"({"n":2,"np":0,"nd":1,"ne":1,"nu":1,"ny":1,
        "A":[[0.5,0],[0,0.25]]})";
    const LftPlant p = plant_from_json(text);
    CHECK(p.B1.cwiseAbs().maxCoeff() == 0.0);
    CHECK(p.C1.cwiseAbs().maxCoeff() == 0.0);
    CHECK(p.sample_time == 0.0);
}

TEST_CASE("malformed documents are rejected") {
    CHECK_THROWS_AS(plant_from_json("{not json"), StructuralViolation);
    CHECK_THROWS_AS(plant_from_json(R"({"n":2})"), DimensionMismatch);
    CHECK_THROWS_AS(plant_from_json(R"({"n":1,"np":0,"nd":0,"ne":0,"nu":0,"ny":0,
        "A":[[1,2]]})"),
                    DimensionMismatch);
    CHECK_THROWS_AS(plant_from_json(R"({"n":1,"np":1,"nd":0,"ne":0,"nu":0,"ny":0})"),
                    DimensionMismatch);
}

TEST_CASE("non-finite entries are rejected") {
    CHECK_THROWS_AS(plant_from_json(R"({"n":1,"np":0,"nd":0,"ne":0,"nu":0,"ny":0,
        "A":[[1e999]]})"),
                    NonFiniteResult);
}

TEST_CASE("controller files round trip") {
    SUBCASE("state feedback") {
        ControllerFile c;
        c.type = ControllerFile::Type::state_feedback;
        c.F = (Matrix(1, 2) << -0.5, 0.25).finished();
        const ControllerFile back = controller_from_json(controller_to_json(c));
        CHECK(back.type == ControllerFile::Type::state_feedback);
        CHECK((back.F - c.F).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("lft output feedback") {
        fixtures::Rng rng(101);
        ControllerFile c;
        c.type = ControllerFile::Type::lft_output_feedback;
        c.lft.nk = 2;
        c.lft.Ak = fixtures::random_matrix(rng, 2, 2);
        c.lft.Bk1 = fixtures::random_matrix(rng, 2, 1);
        c.lft.Bk0 = fixtures::random_matrix(rng, 2, 1);
        c.lft.Ck1 = fixtures::random_matrix(rng, 1, 2);
        c.lft.Ck0 = fixtures::random_matrix(rng, 1, 2);
        c.lft.Dk10 = fixtures::random_matrix(rng, 1, 1);
        c.lft.Dk00 = fixtures::random_matrix(rng, 1, 1);
        const ControllerFile back = controller_from_json(controller_to_json(c));
        CHECK(back.type == ControllerFile::Type::lft_output_feedback);
        CHECK((back.lft.Ak - c.lft.Ak).cwiseAbs().maxCoeff() == 0.0);
        CHECK((back.lft.Dk00 - c.lft.Dk00).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("digest is stable and content sensitive") {
    CHECK(content_digest("abc") == content_digest("abc"));
    CHECK(content_digest("abc") != content_digest("abd"));
    CHECK(content_digest("").rfind("fnv1a:", 0) == 0);
}
