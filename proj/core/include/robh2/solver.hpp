#pragma once

#include <string>
#include <vector>

#include "robh2/standard_form.hpp"

namespace robh2 {

enum class SolveStatus { optimal, feasible, infeasible, max_iterations, numerical_failure };

const char* to_string(SolveStatus status);

struct SolveOptions {
    double tol = 1e-7;        // relative duality gap and residual target
    int max_iter = 200;
    double feas_margin = 1e-8;  // reported margins must exceed -feas_margin
    bool verbose = false;
};

struct SdpSolution {
    SolveStatus status = SolveStatus::numerical_failure;
    Vector x;
    double objective = 0.0;
    double dual_objective = 0.0;
    std::vector<double> block_margins;  // min eigenvalue of F(x) per block
    int iterations = 0;
    double duality_gap = 0.0;  // relative
    std::string message;

    double min_margin() const;
};

// Primal-dual interior-point method (Mehrotra predictor-corrector, HKM
// direction) on the inequality form min c'x s.t. F(x) >= 0. All scalar
// variables are free. Primal infeasibility is certified through a dual
// improving ray. Deterministic: identical inputs give identical outputs.
SdpSolution solve(const StandardSdp& sdp, const SolveOptions& options = {});

// Margins of every constraint of a program at a concrete assignment
// (minimum eigenvalue of the unshifted expression) plus the objective value.
struct MarginReport {
    std::vector<double> margins;
    std::vector<std::string> names;
    double objective = 0.0;

    double min_margin() const;
    bool all_above(double tol) const;
};
MarginReport check_solution(const LmiProgram& program, const Assignment& assignment,
                            double tol = 0.0);

}  // namespace robh2
