#include "robh2/synthesis.hpp"

namespace robh2 {

namespace {

// Smallest/largest singular value ratio test.
bool numerically_singular(const Matrix& m) {
    if (m.rows() == 0) return false;
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& sv = svd.singularValues();
    return sv(0) == 0.0 || sv(sv.size() - 1) < 1e-9 * sv(0);
}

Matrix stack_controller(const LftController& k, int n, int nu, int ny, int np) {
    Matrix t = Matrix::Zero(n + nu + np, n + ny + np);
    t.block(0, 0, n, n) = k.Ak;
    t.block(0, n, n, ny) = k.Bk1;
    t.block(0, n + ny, n, np) = k.Bk0;
    t.block(n, 0, nu, n) = k.Ck1;
    t.block(n, n + ny, nu, np) = k.Dk10;
    t.block(n + nu, 0, np, n) = k.Ck0;
    t.block(n + nu, n + ny, np, np) = k.Dk00;
    return t;
}

}  // namespace

Matrix stack_gs_hats(const GsRawVariables& vars, const LftPlant& p) {
    LftController hats;
    hats.nk = p.n;
    hats.Ak = vars.ak;
    hats.Bk1 = vars.bk1;
    hats.Bk0 = vars.bk0;
    hats.Ck1 = vars.ck1;
    hats.Ck0 = vars.ck0;
    hats.Dk10 = vars.dk10;
    hats.Dk00 = vars.dk00;
    return stack_controller(hats, p.n, p.nu, p.ny, p.np);
}

GsTransform gs_transform(const GsRawVariables& vars, const LftPlant& p) {
    const int n = p.n, nu = p.nu, ny = p.ny, np = p.np;
    const Matrix l = np > 0 ? vars.l.matrix() : Matrix::Zero(0, 0);
    const Matrix j = np > 0 ? vars.j.matrix() : Matrix::Zero(0, 0);

    GsTransform t;
    t.n = Matrix::Identity(n, n);
    t.m = vars.u - vars.r * vars.s;
    t.j2 = Matrix::Identity(np, np);
    t.l2 = Matrix::Identity(np, np) - l * j;

    t.gamma_c = Matrix::Zero(n + nu + np, n + ny + np);
    t.gamma_c.block(0, 0, n, n) = vars.r * p.A * vars.s;
    t.gamma_c.block(0, n + ny, n, np) = vars.r * p.B0 * j;
    t.gamma_c.block(n + nu, 0, np, n) = l * p.C0 * vars.s;
    t.gamma_c.block(n + nu, n + ny, np, np) = l * p.D00 * j;

    t.pi_left = Matrix::Zero(n + nu + np, n + nu + np);
    t.pi_left.block(0, 0, n, n) = t.m;
    t.pi_left.block(0, n, n, nu) = vars.r * p.B2;
    t.pi_left.block(n, n, nu, nu) = Matrix::Identity(nu, nu);
    t.pi_left.block(n + nu, n, np, nu) = l * p.D02;
    t.pi_left.block(n + nu, n + nu, np, np) = t.l2;

    t.pi_right = Matrix::Zero(n + ny + np, n + ny + np);
    t.pi_right.block(0, 0, n, n) = t.n;
    t.pi_right.block(n, 0, ny, n) = p.C2 * vars.s;
    t.pi_right.block(n, n, ny, ny) = Matrix::Identity(ny, ny);
    t.pi_right.block(n, n + ny, ny, np) = p.D20 * j;
    t.pi_right.block(n + ny, n + ny, np, np) = t.j2.transpose();
    return t;
}

Matrix apply_gs_transform(const GsRawVariables& vars, const LftPlant& p,
                          const LftController& controller) {
    const GsTransform t = gs_transform(vars, p);
    return t.gamma_c +
           t.pi_left * stack_controller(controller, p.n, p.nu, p.ny, p.np) * t.pi_right;
}

LftController recover_gs_controller(const GsRawVariables& vars, const LftPlant& p) {
    const int n = p.n, nu = p.nu, ny = p.ny, np = p.np;
    const GsTransform t = gs_transform(vars, p);
    if (numerically_singular(t.m))
        throw SingularFactor("recovery factor M = U - R*S is numerically singular");
    if (numerically_singular(t.l2))
        throw SingularFactor("recovery factor L2 = I - L*J is numerically singular");

    const Matrix hats = stack_gs_hats(vars, p);
    const Matrix k_full = t.pi_left.partialPivLu().solve(
        t.pi_right.transpose().partialPivLu().solve((hats - t.gamma_c).transpose()).transpose());

    LftController k;
    k.nk = n;
    k.Ak = k_full.block(0, 0, n, n);
    k.Bk1 = k_full.block(0, n, n, ny);
    k.Bk0 = k_full.block(0, n + ny, n, np);
    k.Ck1 = k_full.block(n, 0, nu, n);
    k.Dk10 = k_full.block(n, n + ny, nu, np);
    k.Ck0 = k_full.block(n + nu, 0, np, n);
    k.Dk00 = k_full.block(n + nu, n + ny, np, np);
    return k;
}

ScalingValue complete_gs_scaling(const GsRawVariables& vars,
                                 const UncertaintyStructure& base_structure) {
    const int np = base_structure.dimension();
    require(np > 0, "scaling completion needs a nonempty structure");
    const Matrix l = vars.l.matrix();
    const Matrix j = vars.j.matrix();
    const Matrix l2 = Matrix::Identity(np, np) - l * j;

    Matrix w1 = Matrix::Zero(2 * np, 2 * np);
    w1.topLeftCorner(np, np) = l;
    w1.topRightCorner(np, np) = Matrix::Identity(np, np);
    w1.bottomLeftCorner(np, np) = l2.transpose();

    Matrix w2 = Matrix::Zero(2 * np, 2 * np);
    w2.topLeftCorner(np, np) = Matrix::Identity(np, np);
    w2.topRightCorner(np, np) = j;
    w2.bottomRightCorner(np, np) = Matrix::Identity(np, np);

    const Matrix x =
        w1.transpose().partialPivLu().solve(w2.transpose()).transpose();  // W2 W1^{-1}
    return ScalingValue(base_structure.doubled_copy(), 0.5 * (x + x.transpose()), 1e-6);
}

namespace {

GsRawVariables extract_raw(const GsSynthesisProgram& built, const Assignment& a,
                           const LftPlant& p) {
    GsRawVariables raw;
    raw.t_plus = a.at(built.t_plus);
    raw.t_minus = a.at(built.t_minus);
    raw.q = a.at(built.q);
    raw.r = a.at(built.r);
    raw.s = a.at(built.s);
    raw.u = a.at(built.u);
    raw.ak = a.at(built.ak);
    raw.bk1 = a.at(built.bk1);
    if (built.l >= 0) {
        raw.l = ScalingValue(p.structure, a.at(built.l));
        raw.j = ScalingValue(p.structure, a.at(built.j));
        raw.bk0 = a.at(built.bk0);
        raw.ck0 = a.at(built.ck0);
        raw.dk00 = a.at(built.dk00);
    } else {
        raw.bk0 = Matrix::Zero(p.n, 0);
        raw.ck0 = Matrix::Zero(0, p.n);
        raw.dk00 = Matrix::Zero(0, 0);
    }
    if (built.ck1 >= 0) {
        raw.ck1 = a.at(built.ck1);
        raw.dk10 = built.dk10 >= 0 ? a.at(built.dk10) : Matrix::Zero(p.nu, 0);
    } else {
        raw.ck1 = Matrix::Zero(0, p.n);
        raw.dk10 = Matrix::Zero(0, p.np);
    }
    return raw;
}

}  // namespace

GsSynthesisResult synthesize_gs(const ValidatedPlant& plant, const SolveOptions& opts) {
    const LftPlant& p = plant.get();
    GsSynthesisProgram built = build_gs_synthesis(plant);
    const StandardSdp sdp = to_standard_form(built.program);
    const SdpSolution sol = solve(sdp, opts);

    if (sol.status == SolveStatus::infeasible)
        throw InfeasibleError("gain-scheduling synthesis conditions are infeasible");
    if (sol.status != SolveStatus::optimal && sol.status != SolveStatus::feasible)
        throw SolverFailure("gain-scheduling solve failed: " +
                            std::string(to_string(sol.status)) +
                            (sol.message.empty() ? "" : " (" + sol.message + ")"));

    Assignment a = built.program.vars().scatter(sol.x);
    GsRawVariables raw = extract_raw(built, a, p);

    GsSynthesisResult result;
    result.solver_status = sol.status;
    result.iterations = sol.iterations;

    LftController controller;
    try {
        controller = recover_gs_controller(raw, p);
    } catch (const SingularFactor&) {
        // Perturb U away from the degenerate factor and re-certify feasibility
        // of the perturbed assignment before retrying once.
        a[built.u] += 1e-6 * Matrix::Identity(p.n, p.n);
        const MarginReport margins = check_solution(built.program, a);
        if (!margins.all_above(0.0)) throw;
        raw = extract_raw(built, a, p);
        controller = recover_gs_controller(raw, p);
        result.retried_with_perturbation = true;
    }

    result.controller = controller;
    result.raw = raw;
    result.gamma = std::sqrt(std::max(0.0, raw.q.trace()));

    const GsTransform t = gs_transform(raw, p);
    result.m_factor = t.m;
    result.n_factor = t.n;
    result.l2_factor = t.l2;
    result.j2_factor = t.j2;
    if (p.np > 0) result.completed_scaling = complete_gs_scaling(raw, p.structure);

    const Matrix hats = stack_gs_hats(raw, p);
    const Matrix reproduced = apply_gs_transform(raw, p, controller);
    const double scale = 1.0 + hats.cwiseAbs().maxCoeff();
    result.hat_residual = (reproduced - hats).cwiseAbs().maxCoeff() / scale;
    return result;
}

}  // namespace robh2
