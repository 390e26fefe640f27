#include "robh2/synthesis.hpp"

namespace robh2 {

AnalysisCertificate analyze_robust_h2(const ClosedLoopLft& clp, const SolveOptions& opts) {
    AnalysisProgram built = build_analysis(clp);
    const StandardSdp sdp = to_standard_form(built.program);
    const SdpSolution sol = solve(sdp, opts);

    if (sol.status == SolveStatus::infeasible)
        throw InfeasibleError(
            "no robust H2 certificate exists in this scaling class (the conditions are "
            "sufficient only; this does not prove instability)");
    if (sol.status != SolveStatus::optimal && sol.status != SolveStatus::feasible)
        throw SolverFailure("analysis solve failed: " + std::string(to_string(sol.status)) +
                            (sol.message.empty() ? "" : " (" + sol.message + ")"));

    const Assignment a = built.program.vars().scatter(sol.x);
    AnalysisCertificate cert;
    cert.p_minus = a.at(built.p_minus);
    cert.p_plus = a.at(built.p_plus);
    cert.q = a.at(built.q);
    if (built.x >= 0) cert.x = ScalingValue(clp.structure, a.at(built.x));
    cert.gamma = std::sqrt(std::max(0.0, cert.q.trace()));
    cert.margins = check_solution(built.program, a);
    cert.solver_status = sol.status;
    cert.iterations = sol.iterations;
    return cert;
}

}  // namespace robh2
