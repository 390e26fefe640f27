#pragma once

#include "robh2/lmi_programs.hpp"
#include "robh2/solver.hpp"

namespace robh2 {

// Feasible certificate of the robust H2 analysis conditions. gamma is an
// upper bound on the robust H2 measure of the closed loop.
struct AnalysisCertificate {
    Matrix p_minus, p_plus;
    ScalingValue x;  // empty when np == 0
    Matrix q;
    double gamma = 0.0;
    MarginReport margins;
    SolveStatus solver_status = SolveStatus::numerical_failure;
    int iterations = 0;
};

// Minimizes tr(Q) over the analysis conditions. Throws InfeasibleError when
// no certificate exists in the scaling class (reported as exactly that: the
// conditions are sufficient only), SolverFailure on numerical breakdown.
AnalysisCertificate analyze_robust_h2(const ClosedLoopLft& clp, const SolveOptions& opts = {});

struct SfSynthesisResult {
    Matrix F;  // u = F x
    double gamma = 0.0;
    Matrix v, m;
    Matrix p_minus, p_plus, q;
    ScalingValue x;
    SolveStatus solver_status = SolveStatus::numerical_failure;
    int iterations = 0;
};

// Robust H2 state-feedback synthesis; recovers F = M V^{-1}.
// Throws InfeasibleError, IllConditionedV, SolverFailure.
SfSynthesisResult synthesize_sf(const ValidatedPlant& plant, const SolveOptions& opts = {});

// Raw decision variables of a gain-scheduling synthesis.
struct GsRawVariables {
    Matrix t_plus, t_minus, q;
    ScalingValue l, j;  // base-structure scalings (empty when np == 0)
    Matrix r, s, u;
    Matrix ak, bk1, bk0, ck1, ck0, dk10, dk00;  // hat controller matrices
};

// Stacked hat matrix [Ak^ Bk1^ Bk0^; Ck1^ 0 Dk10^; Ck0^ 0 Dk00^].
Matrix stack_gs_hats(const GsRawVariables& vars, const LftPlant& plant);

// Transformation factors: hat = gamma_c + pi_left * K * pi_right with the
// factor choice N = I, M = U - R S, J2 = I, L2 = I - L J.
struct GsTransform {
    Matrix gamma_c, pi_left, pi_right;
    Matrix m, n, l2, j2;
};
GsTransform gs_transform(const GsRawVariables& vars, const LftPlant& plant);

// Forward application of the transformation to a concrete controller.
Matrix apply_gs_transform(const GsRawVariables& vars, const LftPlant& plant,
                          const LftController& controller);

// Inverts the transformation. Throws SingularFactor when M = U - RS or
// L2 = I - LJ is numerically singular (no retry at this level).
LftController recover_gs_controller(const GsRawVariables& vars, const LftPlant& plant);

// Completion X = W2 W1^{-1} of the closed-loop scaling over diag(Delta, Delta).
ScalingValue complete_gs_scaling(const GsRawVariables& vars,
                                 const UncertaintyStructure& base_structure);

struct GsSynthesisResult {
    LftController controller;
    double gamma = 0.0;
    GsRawVariables raw;
    Matrix m_factor, n_factor, l2_factor, j2_factor;
    ScalingValue completed_scaling;  // over the doubled structure (np > 0 only)
    double hat_residual = 0.0;       // relative transform round-trip error
    bool retried_with_perturbation = false;
    SolveStatus solver_status = SolveStatus::numerical_failure;
    int iterations = 0;
};

// Gain-scheduling output-feedback synthesis (controller order n_k = n).
// On a singular recovery factor, retries once with U <- U + 1e-6 I after
// re-certifying feasibility of the perturbed assignment.
// Throws InfeasibleError, SingularFactor, SolverFailure.
GsSynthesisResult synthesize_gs(const ValidatedPlant& plant, const SolveOptions& opts = {});

}  // namespace robh2
