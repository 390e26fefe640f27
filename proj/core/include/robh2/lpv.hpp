#pragma once

#include "robh2/plant.hpp"

namespace robh2 {

// Affine LPV system  x' = (A0 + rho*A1) x + B1 d + B2 u,
//                    e  = C1 x + D11 d + D12 u,
//                    y  = C2 x + D21 d + D22 u,   rho in [rho_min, rho_max].
struct AffineLpvSystem {
    Matrix A0, A1;
    Matrix B1, B2;
    Matrix C1, D11, D12;
    Matrix C2, D21, D22;
    double rho_min = 0.0, rho_max = 0.0;
};

struct LpvToLftResult {
    LftPlant plant;        // continuous-time, nominal A = A0 + rho0*A1
    double rho0 = 0.0;     // (rho_min + rho_max) / 2
    double rho1 = 0.0;     // (rho_max - rho_min) / 2
    int delta_block_size = 0;
    bool rank_ambiguous = false;  // a singular value sat near the truncation tolerance
};

// Normalizes rho = rho0 + rho1*delta with delta in [-1, 1] and factors
// rho1*A1 = E*G by a balanced SVD split truncated at relative tolerance
// `rank_tol`. The plant gets B0 = E, C0 = G, D00 = 0 and one repeated-scalar
// block of size rank(A1).
LpvToLftResult lpv_to_lft(const AffineLpvSystem& sys, double rank_tol = 1e-10);

// delta value of a given parameter value under the normalization above.
inline double lpv_delta(const LpvToLftResult& r, double rho) {
    return r.rho1 == 0.0 ? 0.0 : (rho - r.rho0) / r.rho1;
}

}  // namespace robh2
