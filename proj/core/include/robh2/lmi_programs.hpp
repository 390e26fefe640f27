#pragma once

#include "robh2/lmi_expr.hpp"
#include "robh2/plant.hpp"

namespace robh2 {

// Robust H2 analysis program for a closed-loop LFT system: two Lyapunov-type
// conditions sharing one scaling X, the coupling block with B1, a positivity
// floor on the variables, and objective tr(Q) (gamma^2 bound).
struct AnalysisProgram {
    LmiProgram program;
    int p_minus = -1, p_plus = -1, q = -1;
    int x = -1;  // absent when np == 0
};
AnalysisProgram build_analysis(const ClosedLoopLft& clp);

// State-feedback synthesis program: the two 5x5 block conditions in the
// intermediate variable V with M = F*V, the coupling block, positivity floor,
// and objective tr(Q). The recovered gain is F = M V^{-1}.
struct SfSynthesisProgram {
    LmiProgram program;
    int p_minus = -1, p_plus = -1, q = -1, v = -1, m = -1;
    int x = -1;  // absent when np == 0
};
SfSynthesisProgram build_sf_synthesis(const ValidatedPlant& plant);

// Gain-scheduling output-feedback synthesis program in the transformed
// controller variables (hat matrices), with scalings L, J, square factors
// R, S, U and the doubled Lyapunov variables T+, T-.
struct GsSynthesisProgram {
    LmiProgram program;
    int t_plus = -1, t_minus = -1, q = -1;
    int l = -1, j = -1;  // absent when np == 0
    int r = -1, s = -1, u = -1;
    int ak = -1, bk1 = -1;
    int bk0 = -1, ck1 = -1, ck0 = -1, dk10 = -1, dk00 = -1;  // np/nu dependent
};
GsSynthesisProgram build_gs_synthesis(const ValidatedPlant& plant);

}  // namespace robh2
