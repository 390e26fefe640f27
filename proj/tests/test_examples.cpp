#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include <robh2/example_plants.hpp>
#include <robh2/json_io.hpp>

#include "test_systems.hpp"

using namespace robh2;

TEST_CASE("two-disk matrix entries match the published arithmetic") {
    const auto build = build_two_disk();
    const LftPlant& p = build.raw;
    CHECK(p.A(2, 0) == doctest::Approx(-195.5));   // 4.5 - k/M1
    CHECK(p.A(3, 1) == doctest::Approx(-387.5));   // 12.5 - k/M2
    CHECK(p.A(2, 1) == doctest::Approx(-200.0));
    CHECK(p.A(3, 3) == doctest::Approx(-2.0));
    CHECK(p.B0(2, 0) == doctest::Approx(4.5));
    CHECK(p.B0(3, 1) == doctest::Approx(12.5));
    CHECK(p.B1(2, 0) == doctest::Approx(0.1));
    CHECK(p.B2(2, 0) == doctest::Approx(1.0));
    CHECK(p.C2(0, 1) == 1.0);  // y = r2
    CHECK(p.structure.scalar_blocks == std::vector<int>{1, 1});
    CHECK(p.structure.full_blocks.empty());
}

TEST_CASE("collapsed velocity ranges remove the uncertainty channel") {
    TwoDiskParams prm;
    prm.omega1_min = prm.omega1_max = 2.0;
    prm.omega2_min = prm.omega2_max = 3.0;
    const auto build = build_two_disk(prm);
    CHECK(build.raw.np == 0);
    CHECK(build.weighted.np == 0);
    CHECK_NOTHROW(validate_plant(build.weighted));
}

TEST_CASE("bearing constants and gyroscopic entries") {
    const auto amb = build_amb();
    // rho * Ja/Jr at rho = 1000 rad/s.
    const double coupling = 1000.0 * 0.0136 / 0.333;
    CHECK(coupling == doctest::Approx(40.84).epsilon(1e-3));
    const Matrix a1000 = amb.lpv.A0 + 1000.0 * amb.lpv.A1;
    CHECK(a1000(2, 3) == doctest::Approx(-coupling));
    CHECK(a1000(3, 2) == doctest::Approx(coupling));

    CHECK(amb.lpv.B1.cwiseAbs().maxCoeff() == 0.0);  // disturbances act as sensor noise
    CHECK((amb.lpv.D21 - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(amb.lft.delta_block_size == 2);

    // Derived flux constants from the published formulas, in SI units.
    CHECK(amb.c1 == doctest::Approx(2.0 * 4.6755576e8 * 2.09e-4 *
                                    (1.0 + 2.0 * 5.5e-4 / (3.14159265358979 * 0.04)))
                        .epsilon(1e-9));
    CHECK(amb.c2 ==
          doctest::Approx(2.0 * 4.6755576e8 * 2.09e-4 * 2.09e-4 / (3.14159265358979 * 0.04))
              .epsilon(1e-9));
}

TEST_CASE("builders produce valid plants deterministically") {
    const auto a = build_two_disk();
    const auto b = build_two_disk();
    CHECK_NOTHROW(validate_plant(a.weighted));
    CHECK(plant_to_json(a.weighted) == plant_to_json(b.weighted));

    const auto amb1 = build_amb();
    const auto amb2 = build_amb();
    CHECK_NOTHROW(validate_plant(amb1.weighted));
    CHECK(plant_to_json(amb1.weighted) == plant_to_json(amb2.weighted));
    CHECK(amb1.weighted.n == 10);
    CHECK(amb1.weighted.nd == 2);
    CHECK(amb1.weighted.ne == 4);
    CHECK(amb1.weighted.sample_time == 0.01);
}

namespace {

void check_against_golden(const std::string& name, const std::string& text) {
    const std::string path = std::string(ROBH2_GOLDEN_DIR) + "/" + name;
    if (std::getenv("ROBH2_REGEN_GOLDEN")) {
        write_file(path, text);
        return;
    }
    INFO("golden file: " << path);
    const std::string golden = read_file(path);
    CHECK(golden == text);
}

}  // namespace

TEST_CASE("serialized example plants are locked by golden files") {
    check_against_golden("two_disk_weighted.json", plant_to_json(build_two_disk().weighted));
    check_against_golden("amb_weighted.json", plant_to_json(build_amb().weighted));
}
