#include "robh2/synthesis.hpp"

namespace robh2 {

SfSynthesisResult synthesize_sf(const ValidatedPlant& plant, const SolveOptions& opts) {
    SfSynthesisProgram built = build_sf_synthesis(plant);
    const StandardSdp sdp = to_standard_form(built.program);
    const SdpSolution sol = solve(sdp, opts);

    if (sol.status == SolveStatus::infeasible)
        throw InfeasibleError("state-feedback synthesis conditions are infeasible");
    if (sol.status != SolveStatus::optimal && sol.status != SolveStatus::feasible)
        throw SolverFailure("state-feedback solve failed: " +
                            std::string(to_string(sol.status)) +
                            (sol.message.empty() ? "" : " (" + sol.message + ")"));

    const Assignment a = built.program.vars().scatter(sol.x);
    SfSynthesisResult result;
    result.v = a.at(built.v);
    result.m = a.at(built.m);
    result.p_minus = a.at(built.p_minus);
    result.p_plus = a.at(built.p_plus);
    result.q = a.at(built.q);
    if (built.x >= 0) result.x = ScalingValue(plant->structure, a.at(built.x));
    result.gamma = std::sqrt(std::max(0.0, result.q.trace()));
    result.solver_status = sol.status;
    result.iterations = sol.iterations;

    Eigen::JacobiSVD<Matrix> svd(result.v);
    const auto& sv = svd.singularValues();
    if (plant->n > 0 && (sv(0) == 0.0 || sv(sv.size() - 1) < 1e-9 * sv(0)))
        throw IllConditionedV("intermediate matrix V is numerically singular");
    result.F = result.v.transpose().partialPivLu().solve(result.m.transpose()).transpose();
    return result;
}

}  // namespace robh2
