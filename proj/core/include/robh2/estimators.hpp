#pragma once

#include <cstdint>
#include <vector>

#include "robh2/simulate.hpp"

namespace robh2 {

struct GainEstimate {
    enum class Kind { white_noise_rms, induced_l2_lower_bound };
    Kind kind = Kind::white_noise_rms;
    double value = 0.0;
    double standard_error = 0.0;  // white-noise kind only
    int runs = 0;
    int samples_per_run = 0;
};

struct WhiteNoiseOptions {
    int n_runs = 64;
    int horizon = 4096;
    int burn_in = 512;
    std::uint64_t seed = 0;
};

// Drives the loop with unit-variance white noise, resampling Delta(k)
// uniformly in the unit ball each step, and reports the RMS of e after
// burn-in averaged over runs. Per-run seeds are seed^run_index and the
// reduction is in fixed run order, so results do not depend on any worker
// count. Estimates a lower statistic of the certified upper bound gamma.
GainEstimate estimate_h2_white_noise(const ClosedLoopLft& clp,
                                     const UncertaintyStructure& structure,
                                     const WhiteNoiseOptions& options = {});

// Largest singular value of the frozen d->e response over a frequency grid.
double peak_gain(const DiscreteLti& frozen, const std::vector<double>& freq_grid);

// Log-spaced grid of `count` frequencies in (0, pi].
std::vector<double> default_freq_grid(int count = 512);

// Lower bound on the worst-case induced l2 gain: max over the frozen Delta
// grid of the peak frequency-domain gain. Frozen parameters only, so a lower
// bound on the time-varying worst case. Throws UnstableFrozenLoop naming the
// offending grid point.
GainEstimate estimate_induced_gain(const ClosedLoopLft& clp,
                                   const std::vector<Matrix>& delta_grid,
                                   const std::vector<double>& freq_grid);

// All combinations of per-scalar-block values from a linspace over [-1, 1]
// (full blocks held at the same scalar times identity). Intended for small
// numbers of scalar blocks.
std::vector<Matrix> scalar_delta_grid(const UncertaintyStructure& structure,
                                      int points_per_block);

}  // namespace robh2
