#pragma once

#include "robh2/plant.hpp"

namespace robh2 {

// Exact zero-order hold of a continuous-time LFT plant over all input
// channels [p; d; u], via the matrix exponential of the block embedding
// [[A, B], [0, 0]] * Ts. Output and feedthrough blocks are copied.
//
// Holding the uncertainty channel p is an approximation: an exact
// parameter-dependent ZOH does not exist, so the discrete plant treats
// Delta as constant over each sample period.
LftPlant zoh_discretize(const LftPlant& plant, double Ts);

}  // namespace robh2
