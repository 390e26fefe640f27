#include "robh2/example_plants.hpp"

#include <cmath>

#include "robh2/discretize.hpp"

namespace robh2 {

TwoDiskBuild build_two_disk(const TwoDiskParams& prm) {
    require(prm.m1 > 0 && prm.m2 > 0 && prm.b > 0 && prm.k > 0 && prm.ts > 0,
            "two-disk parameters must be positive");
    require(prm.omega1_min <= prm.omega1_max && prm.omega2_min <= prm.omega2_max,
            "angular velocity ranges must be ordered");

    // Omega_i^2 = center_i + radius_i * delta_i with delta_i in [-1, 1].
    const double c1 = 0.5 * (prm.omega1_min * prm.omega1_min + prm.omega1_max * prm.omega1_max);
    const double r1 = 0.5 * (prm.omega1_max * prm.omega1_max - prm.omega1_min * prm.omega1_min);
    const double c2 = 0.5 * (prm.omega2_min * prm.omega2_min + prm.omega2_max * prm.omega2_max);
    const double r2 = 0.5 * (prm.omega2_max * prm.omega2_max - prm.omega2_min * prm.omega2_min);

    std::vector<int> blocks;
    if (r1 > 0.0) blocks.push_back(1);
    if (r2 > 0.0) blocks.push_back(1);
    const int np = static_cast<int>(blocks.size());

    LftPlant p = LftPlant::zero(4, np, 2, 0, 1, 1);
    p.structure = UncertaintyStructure::scalars(blocks);

    p.A << 0, 0, 1, 0,
           0, 0, 0, 1,
           c1 - prm.k / prm.m1, -prm.k / prm.m1, -prm.b / prm.m1, 0,
           -prm.k / prm.m2, c2 - prm.k / prm.m2, 0, -prm.b / prm.m2;
    int col = 0;
    if (r1 > 0.0) {
        p.B0(2, col) = r1;
        p.C0(col, 0) = 1.0;
        ++col;
    }
    if (r2 > 0.0) {
        p.B0(3, col) = r2;
        p.C0(col, 1) = 1.0;
    }
    p.B1(2, 0) = 0.1 / prm.m1;
    p.B1(3, 1) = 0.1 / prm.m2;
    p.B2(2, 0) = 1.0 / prm.m1;
    p.C2(0, 1) = 1.0;  // y = r2

    WeightingScheme scheme;
    // W_e = (0.3 s + 1.2)/(s + 0.04) on y, W_u = (s + 0.1)/(0.01 s + 125) on u.
    WeightingScheme::ErrorChannel on_y;
    on_y.Cx = p.C2;
    on_y.Du = Matrix::Zero(1, 1);
    on_y.De = Matrix::Zero(1, 0);
    on_y.weight = LtiSystem::first_order(0.3, 1.2, 0.04);
    scheme.error_channels.push_back(on_y);
    WeightingScheme::ErrorChannel on_u;
    on_u.Cx = Matrix::Zero(1, 4);
    on_u.Du = Matrix::Identity(1, 1);
    on_u.De = Matrix::Zero(1, 0);
    on_u.weight = LtiSystem::first_order(100.0, 10.0, 12500.0);
    scheme.error_channels.push_back(on_u);
    // Act = 1/(0.01 s + 1), W_a = 1e-5, W_n = (s + 0.4)/(0.01 s + 400).
    scheme.actuator = LtiSystem::first_order(0.0, 100.0, 100.0);
    scheme.input_disturbance_gain = Matrix::Constant(1, 1, 1e-5);
    scheme.sensor_noise_weight = LtiSystem::first_order(100.0, 40.0, 40000.0);

    TwoDiskBuild build;
    build.raw = p;
    build.weighted = balance_states(zoh_discretize(augment_with_weights(p, scheme), prm.ts));
    return build;
}

AmbBuild build_amb(const AmbParams& prm) {
    require(prm.pole_area_mm2 > 0 && prm.pole_width_mm > 0 && prm.nominal_gap_mm > 0 &&
                prm.inertia_radial > 0 && prm.inertia_axial > 0 && prm.half_length > 0 &&
                prm.k_const > 0 && prm.coil_turns > 0 && prm.coil_resistance > 0 &&
                prm.nominal_flux > 0 && prm.permeability > 0 && prm.rotor_mass > 0 &&
                prm.ts > 0,
            "bearing parameters must be positive");
    require(prm.rho_min < prm.rho_max, "rotor speed range must be nonempty");

    const double pi = 3.14159265358979323846;
    const double area = prm.pole_area_mm2 * 1e-6;  // mm^2 -> m^2
    const double h = prm.pole_width_mm * 1e-3;
    const double g0 = prm.nominal_gap_mm * 1e-3;
    const double k = prm.k_const;
    const double phi0 = prm.nominal_flux;
    const double nturns = prm.coil_turns;
    const double rcoil = prm.coil_resistance;
    const double nu0 = prm.permeability;
    const double m = prm.rotor_mass;
    const double jr = prm.inertia_radial;
    const double ja = prm.inertia_axial;

    AmbBuild build;
    build.c1 = 2.0 * k * phi0 * (1.0 + 2.0 * g0 / (pi * h));
    build.c2 = 2.0 * k * phi0 * phi0 / (pi * h);
    build.d1 = 2.0 * rcoil * g0 / (nu0 * area * nturns);
    build.d2 = 2.0 * rcoil * phi0 / (nu0 * area * nturns);

    AffineLpvSystem lpv;
    lpv.A0 = Matrix::Zero(6, 6);
    lpv.A0(0, 2) = 1.0;
    lpv.A0(1, 3) = 1.0;
    lpv.A0(2, 0) = -4.0 * build.c2 / m;
    lpv.A0(2, 4) = 2.0 * build.c1 / m;
    lpv.A0(3, 1) = -4.0 * build.c2 / m;
    lpv.A0(3, 5) = 2.0 * build.c1 / m;
    lpv.A0(4, 0) = 2.0 * build.d2 / nturns;
    lpv.A0(4, 4) = -build.d1 / nturns;
    lpv.A0(5, 1) = 2.0 * build.d2 / nturns;
    lpv.A0(5, 5) = -build.d1 / nturns;
    lpv.A1 = Matrix::Zero(6, 6);
    lpv.A1(2, 3) = -ja / jr;
    lpv.A1(3, 2) = ja / jr;

    lpv.B1 = Matrix::Zero(6, 2);
    lpv.B2 = Matrix::Zero(6, 2);
    lpv.B2(4, 0) = 1.0 / nturns;
    lpv.B2(5, 1) = 1.0 / nturns;
    lpv.C1 = Matrix::Zero(4, 6);
    lpv.C1(0, 0) = 1.0;
    lpv.C1(1, 1) = 1.0;
    lpv.D11 = Matrix::Zero(4, 2);
    lpv.D12 = Matrix::Zero(4, 2);
    lpv.D12(2, 0) = 1.0;
    lpv.D12(3, 1) = 1.0;
    lpv.C2 = Matrix::Zero(2, 6);
    lpv.C2(0, 0) = 1.0;
    lpv.C2(1, 1) = 1.0;
    lpv.D21 = Matrix::Identity(2, 2);
    lpv.D22 = Matrix::Zero(2, 2);
    lpv.rho_min = prm.rho_min;
    lpv.rho_max = prm.rho_max;
    build.lpv = lpv;

    build.lft = lpv_to_lft(lpv);

    WeightingScheme scheme;
    // W_z = 10 (s + 8)/(s + 0.001) I2 on the displacement states.
    WeightingScheme::ErrorChannel on_disp;
    on_disp.Cx = Matrix::Zero(2, 6);
    on_disp.Cx(0, 0) = 1.0;
    on_disp.Cx(1, 1) = 1.0;
    on_disp.Du = Matrix::Zero(2, 2);
    on_disp.De = Matrix::Zero(2, 4);
    on_disp.weight = LtiSystem::first_order(10.0, 80.0, 0.001).diagonal_repeat(2);
    scheme.error_channels.push_back(on_disp);
    // W_u = 0.01 (s + 100)/(s + 100000) I2 on the voltage commands.
    WeightingScheme::ErrorChannel on_u;
    on_u.Cx = Matrix::Zero(2, 6);
    on_u.Du = Matrix::Identity(2, 2);
    on_u.De = Matrix::Zero(2, 4);
    on_u.weight = LtiSystem::first_order(0.01, 1.0, 100000.0).diagonal_repeat(2);
    scheme.error_channels.push_back(on_u);
    // W_n = 0.001 I2: the disturbance forces act as measurement noise.
    scheme.existing_disturbance_filter = LtiSystem::gain(0.001 * Matrix::Identity(2, 2));

    build.weighted =
        balance_states(zoh_discretize(augment_with_weights(build.lft.plant, scheme), prm.ts));
    return build;
}

}  // namespace robh2
