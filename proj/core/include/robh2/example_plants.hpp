#pragma once

#include <utility>

#include "robh2/lpv.hpp"
#include "robh2/weights.hpp"

namespace robh2 {

// Two spinning disks with sliders coupled by a spring; the squared angular
// velocities enter as two normalized scalar uncertainties.
struct TwoDiskParams {
    double m1 = 1.0;   // kg
    double m2 = 0.5;   // kg
    double b = 1.0;    // kg/s
    double k = 200.0;  // N/m
    double omega1_min = 0.0, omega1_max = 3.0;  // rad/s
    double omega2_min = 0.0, omega2_max = 5.0;  // rad/s
    double ts = 0.01;  // s
};

struct TwoDiskBuild {
    LftPlant raw;       // continuous-time LFT plant, states [r1 r2 r1' r2']
    LftPlant weighted;  // discrete-time weighted synthesis plant
};

// Weighting: actuator lag in series with u, e = [W_e y; W_u u], sensor noise
// shaped by W_n, and a small W_a-scaled disturbance added to the plant input.
TwoDiskBuild build_two_disk(const TwoDiskParams& params = {});

// Active magnetic bearing with gyroscopic coupling proportional to rotor
// speed; the speed is the measured scheduling parameter.
struct AmbParams {
    double pole_area_mm2 = 1531.79;
    double pole_width_mm = 40.00;
    double nominal_gap_mm = 0.55;
    double inertia_radial = 0.333;   // kg m^2
    double inertia_axial = 0.0136;   // kg m^2
    double half_length = 0.13;       // m
    double k_const = 4.6755576e8;
    double coil_turns = 400.0;
    double coil_resistance = 14.6;        // Ohm
    double nominal_flux = 2.09e-4;        // Wb
    double permeability = 1.2566370614359172e-6;  // vacuum, 4*pi*1e-7
    double rotor_mass = 10.0;             // kg; not part of the published table
    double rho_min = 315.0, rho_max = 1100.0;  // rad/s
    double ts = 0.01;  // s
};

struct AmbBuild {
    AffineLpvSystem lpv;      // continuous-time affine model in the rotor speed
    LpvToLftResult lft;       // normalized LFT form of the LPV model
    LftPlant weighted;        // discrete-time weighted synthesis plant
    double c1 = 0.0, c2 = 0.0, d1 = 0.0, d2 = 0.0;  // derived flux constants
};

// Weighting: e = [W_z (rotor displacement); W_u u], measurement disturbances
// scaled by the static W_n.
AmbBuild build_amb(const AmbParams& params = {});

}  // namespace robh2
