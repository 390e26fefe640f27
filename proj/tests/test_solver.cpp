#include <doctest.h>

#include <sstream>

#include <robh2/lmi_programs.hpp>
#include <robh2/solver.hpp>

#include "test_systems.hpp"

using namespace robh2;

namespace {

// min x s.t. x - lo >= 0.
StandardSdp scalar_bound_problem(double lo) {
    LmiProgram prog;
    const int x = prog.vars().add_symmetric(1, "x");
    SymLmiBuilder b({1});
    b.var_block(0, 0, Matrix::Identity(1, 1), x, Matrix::Identity(1, 1));
    b.const_block(0, 0, Matrix::Constant(1, 1, -lo));
    prog.add_psd(b.take(), "bound", 0.0);
    prog.add_trace_objective(x);
    return to_standard_form(prog);
}

// min q s.t. [[q, b], [b, p]] >= 0 with p, b fixed.
StandardSdp schur_problem(double b_val, double p_val) {
    LmiProgram prog;
    const int q = prog.vars().add_symmetric(1, "q");
    SymLmiBuilder b({1, 1});
    b.var_block(0, 0, Matrix::Identity(1, 1), q, Matrix::Identity(1, 1));
    b.const_block(1, 0, Matrix::Constant(1, 1, b_val));
    b.const_block(1, 1, Matrix::Constant(1, 1, p_val));
    prog.add_psd(b.take(), "schur", 0.0);
    prog.add_trace_objective(q);
    return to_standard_form(prog);
}

}  // namespace

TEST_CASE("scalar bound problem") {
    const SdpSolution sol = solve(scalar_bound_problem(1.0));
    CHECK(sol.status == SolveStatus::optimal);
    CHECK(sol.x(0) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(sol.min_margin() >= -1e-8);
}

TEST_CASE("schur scalar problem q* = b^2/p") {
    const SdpSolution sol = solve(schur_problem(2.0, 4.0));
    CHECK(sol.status == SolveStatus::optimal);
    CHECK(std::abs(sol.x(0) - 1.0) < 1e-6);
}

TEST_CASE("constant negative block is infeasible") {
    LmiProgram prog;
    MatExpr e(2);
    e.add_constant(-Matrix::Identity(2, 2));
    prog.add_psd(std::move(e), "neg", 0.0);
    const SdpSolution sol = solve(to_standard_form(prog));
    CHECK(sol.status == SolveStatus::infeasible);
}

TEST_CASE("conflicting scalar constraints are infeasible") {
    // x - 1 >= 0 and -x - 1 >= 0 cannot hold together.
    LmiProgram prog;
    const int x = prog.vars().add_symmetric(1, "x");
    {
        SymLmiBuilder b({1});
        b.var_block(0, 0, Matrix::Identity(1, 1), x, Matrix::Identity(1, 1));
        b.const_block(0, 0, Matrix::Constant(1, 1, -1.0));
        prog.add_psd(b.take(), "lower", 0.0);
    }
    {
        SymLmiBuilder b({1});
        b.var_block(0, 0, -Matrix::Identity(1, 1), x, Matrix::Identity(1, 1));
        b.const_block(0, 0, Matrix::Constant(1, 1, -1.0));
        prog.add_psd(b.take(), "upper", 0.0);
    }
    const SdpSolution sol = solve(to_standard_form(prog));
    CHECK(sol.status == SolveStatus::infeasible);
}

TEST_CASE("determinism is bit-exact across repeated solves") {
    fixtures::Rng rng(50);
    const ClosedLoopLft cl = fixtures::random_nominal_loop(rng, 4, 2, 2, 0.85);
    const AnalysisProgram built = build_analysis(cl);
    const StandardSdp sdp = to_standard_form(built.program);
    const SdpSolution a = solve(sdp);
    const SdpSolution b = solve(sdp);
    REQUIRE(a.status == b.status);
    REQUIRE(a.x.size() == b.x.size());
    for (int i = 0; i < a.x.size(); ++i) {
        CHECK(std::memcmp(&a.x(i), &b.x(i), sizeof(double)) == 0);
    }
    CHECK(std::memcmp(&a.objective, &b.objective, sizeof(double)) == 0);
}

TEST_CASE("weak duality on regression problems") {
    fixtures::Rng rng(51);
    for (int trial = 0; trial < 8; ++trial) {
        const ClosedLoopLft cl = fixtures::random_nominal_loop(rng, 3, 2, 2, 0.8);
        const StandardSdp sdp = to_standard_form(build_analysis(cl).program);
        const SdpSolution sol = solve(sdp);
        REQUIRE(sol.status == SolveStatus::optimal);
        CHECK(sol.objective >= sol.dual_objective - 1e-6 * (1.0 + std::abs(sol.objective)));
    }
}

TEST_CASE("argmin is stable under rescaling one constraint") {
    fixtures::Rng rng(52);
    const ClosedLoopLft cl = fixtures::random_nominal_loop(rng, 3, 2, 2, 0.8);
    LmiProgram base;
    {
        // Rebuild the analysis program twice, scaling the coupling block by 10
        // the second time.
        const AnalysisProgram built = build_analysis(cl);
        const SdpSolution ref = solve(to_standard_form(built.program));
        REQUIRE(ref.status == SolveStatus::optimal);

        AnalysisProgram scaled = build_analysis(cl);
        StandardSdp sdp = to_standard_form(scaled.program);
        for (auto& blk : sdp.blocks) {
            if (blk.name != "coupling") continue;
            blk.f0 *= 10.0;
            for (auto& cc : blk.coeffs)
                for (auto& e : cc.entries) e.value *= 10.0;
        }
        const SdpSolution alt = solve(sdp);
        REQUIRE(alt.status == SolveStatus::optimal);
        const double denom = 1.0 + ref.x.cwiseAbs().maxCoeff();
        CHECK((ref.x - alt.x).cwiseAbs().maxCoeff() / denom < 1e-5);
    }
}

TEST_CASE("margin report flips under perturbation") {
    fixtures::Rng rng(53);
    const ClosedLoopLft cl = fixtures::random_nominal_loop(rng, 3, 1, 1, 0.8);
    const AnalysisProgram built = build_analysis(cl);
    const SdpSolution sol = solve(to_standard_form(built.program));
    REQUIRE(sol.status == SolveStatus::optimal);
    Assignment a = built.program.vars().scatter(sol.x);

    const MarginReport clean = check_solution(built.program, a);
    CHECK(clean.all_above(0.0));
    CHECK(clean.margins.size() == 4);

    // Subtracting a multiple of the achieved margin from P+ breaks at least
    // one condition.
    const double shift = 10.0 * std::max(1e-9, clean.min_margin());
    a[built.p_plus] -= shift * Matrix::Identity(cl.n, cl.n);
    const MarginReport dirty = check_solution(built.program, a);
    CHECK(dirty.min_margin() < 0.0);
}

TEST_CASE("empty program yields an empty report") {
    LmiProgram prog;
    const MarginReport report = check_solution(prog, {});
    CHECK(report.margins.empty());
    CHECK(report.objective == 0.0);
}

TEST_CASE("solution margins respect the feasibility contract") {
    const SdpSolution sol = solve(schur_problem(2.0, 4.0));
    REQUIRE((sol.status == SolveStatus::optimal || sol.status == SolveStatus::feasible));
    for (double m : sol.block_margins) CHECK(m >= -1e-8);
}
