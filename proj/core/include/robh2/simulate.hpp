#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "robh2/plant.hpp"

namespace robh2 {

// Per-step uncertainty: a callable producing Delta(k) of the closed loop's
// full p-dimension, plus a human-readable descriptor for reports.
struct DeltaTrajectory {
    std::function<Matrix(int)> delta;
    std::string descriptor = "zero";

    static DeltaTrajectory zero(int np);
    static DeltaTrajectory constant(Matrix delta0);
    // Independent uniform resample inside the unit ball each step,
    // deterministic for a given seed (doubled structures get equal copies).
    static DeltaTrajectory random(const UncertaintyStructure& structure, std::uint64_t seed,
                                  double bound = 1.0);
};

struct SimulationRun {
    int horizon = 0;
    Matrix states;   // n x (T+1), includes the initial state
    Matrix outputs;  // ne x T
    Matrix inputs;   // nd x T
    std::string delta_descriptor;
    std::uint64_t seed = 0;

    // CSV with header "k,d_1..d_nd,e_1..e_ne".
    std::string to_csv() const;
};

// Steps the uncertain loop: p = (I - Delta D00)^{-1} Delta C0 x, then
// x+ = A x + B0 p + B1 d, e = C1 x + D10 p. Throws IllPosedLoop (with the
// step index) when I - Delta D00 has condition number above 1e12.
SimulationRun simulate(const ClosedLoopLft& clp, const DeltaTrajectory& delta_traj,
                       const Matrix& d_traj, const Vector& x0, int horizon);

// Step disturbance of the given magnitude with alternating signs across the
// disturbance channels (+m, -m, +m, ...), applied to a frozen-parameter loop.
// Throws UnstableFrozenLoop when the frozen A has spectral radius >= 1.
SimulationRun step_disturbance_response(const DiscreteLti& frozen, double magnitude,
                                        int horizon);

}  // namespace robh2
