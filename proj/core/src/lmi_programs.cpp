#include "robh2/lmi_programs.hpp"

namespace robh2 {

namespace {

Matrix eye(int n) { return Matrix::Identity(n, n); }

// diag(vars...) >= eps*I floor enforcing strict positive definiteness of the
// listed symmetric/scaling variables.
MatExpr positivity_floor(const VariableSet& vars, const std::vector<int>& ids) {
    std::vector<int> sizes;
    sizes.reserve(ids.size());
    for (int id : ids) sizes.push_back(vars.var(id).rows);
    SymLmiBuilder b(sizes);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const int n = sizes[i];
        if (n > 0) b.var_block(static_cast<int>(i), static_cast<int>(i), eye(n), ids[i], eye(n));
    }
    return b.take();
}

}  // namespace

AnalysisProgram build_analysis(const ClosedLoopLft& clp) {
    require(clp.sample_time > 0.0, "analysis expects a discrete-time closed loop");
    require(clp.structure.dimension() == clp.np, "structure does not match np");

    const int n = clp.n, np = clp.np, nd = clp.nd, ne = clp.ne;

    AnalysisProgram out;
    LmiProgram& prog = out.program;
    out.p_minus = prog.vars().add_symmetric(n, "P-");
    out.p_plus = prog.vars().add_symmetric(n, "P+");
    out.q = prog.vars().add_symmetric(nd, "Q");
    if (np > 0) out.x = prog.vars().add_scaling(clp.structure, "X");

    // diag(P, X, I) - [A B0; C0 D00; C1 D10] diag(P, X) [.]' > 0
    auto lyapunov = [&](int p_var, const char* name) {
        SymLmiBuilder b({n, np, ne});
        b.var_block(0, 0, eye(n), p_var, eye(n));
        b.var_block(0, 0, -clp.A, p_var, clp.A.transpose());
        b.var_block(0, 1, -clp.A, p_var, clp.C0.transpose());
        b.var_block(0, 2, -clp.A, p_var, clp.C1.transpose());
        b.var_block(1, 1, -clp.C0, p_var, clp.C0.transpose());
        b.var_block(1, 2, -clp.C0, p_var, clp.C1.transpose());
        b.var_block(2, 2, -clp.C1, p_var, clp.C1.transpose());
        if (np > 0) {
            b.var_block(1, 1, eye(np), out.x, eye(np));
            b.var_block(0, 0, -clp.B0, out.x, clp.B0.transpose());
            b.var_block(0, 1, -clp.B0, out.x, clp.D00.transpose());
            b.var_block(0, 2, -clp.B0, out.x, clp.D10.transpose());
            b.var_block(1, 1, -clp.D00, out.x, clp.D00.transpose());
            b.var_block(1, 2, -clp.D00, out.x, clp.D10.transpose());
            b.var_block(2, 2, -clp.D10, out.x, clp.D10.transpose());
        }
        b.const_block(2, 2, eye(ne));
        prog.add_psd(b.take(), name);
    };
    lyapunov(out.p_minus, "lyapunov(P-)");
    lyapunov(out.p_plus, "lyapunov(P+)");

    // [Q B1'; B1 P+ - P-] > 0
    {
        SymLmiBuilder b({nd, n});
        b.var_block(0, 0, eye(nd), out.q, eye(nd));
        b.const_block(1, 0, clp.B1);
        b.var_block(1, 1, eye(n), out.p_plus, eye(n));
        b.var_block(1, 1, -eye(n), out.p_minus, eye(n));
        prog.add_psd(b.take(), "coupling");
    }

    {
        std::vector<int> ids = {out.p_minus, out.p_plus, out.q};
        if (out.x >= 0) ids.push_back(out.x);
        prog.add_psd(positivity_floor(prog.vars(), ids), "positivity");
    }

    prog.add_trace_objective(out.q);
    return out;
}

SfSynthesisProgram build_sf_synthesis(const ValidatedPlant& vp) {
    const LftPlant& p = vp.get();
    require(p.is_discrete(), "state-feedback synthesis expects a discrete-time plant");

    const int n = p.n, np = p.np, nd = p.nd, ne = p.ne, nu = p.nu;

    SfSynthesisProgram out;
    LmiProgram& prog = out.program;
    out.p_minus = prog.vars().add_symmetric(n, "P-");
    out.p_plus = prog.vars().add_symmetric(n, "P+");
    out.q = prog.vars().add_symmetric(nd, "Q");
    if (np > 0) out.x = prog.vars().add_scaling(p.structure, "X");
    out.m = prog.vars().add_rectangular(nu, n, "M");
    out.v = prog.vars().add_rectangular(n, n, "V");

    // Five-block condition; the (2,5) slot carries X*D10' (the transposed
    // mirror of D10*X placed at (5,2)).
    auto five_block = [&](int p_var, const char* name) {
        SymLmiBuilder b({n, np, n, np, ne});
        b.var_block(0, 0, eye(n), out.v, eye(n));
        b.var_block(0, 0, eye(n), out.v, eye(n), true);
        b.var_block(0, 0, -eye(n), p_var, eye(n));
        b.var_block(2, 0, p.A, out.v, eye(n));
        b.var_block(2, 0, p.B2, out.m, eye(n));
        b.var_block(3, 0, p.C0, out.v, eye(n));
        b.var_block(3, 0, p.D02, out.m, eye(n));
        b.var_block(4, 0, p.C1, out.v, eye(n));
        b.var_block(4, 0, p.D12, out.m, eye(n));
        b.var_block(2, 2, eye(n), p_var, eye(n));
        if (np > 0) {
            b.var_block(1, 1, eye(np), out.x, eye(np));
            b.var_block(2, 1, p.B0, out.x, eye(np));
            b.var_block(3, 1, p.D00, out.x, eye(np));
            b.var_block(4, 1, p.D10, out.x, eye(np));
            b.var_block(3, 3, eye(np), out.x, eye(np));
        }
        b.const_block(4, 4, eye(ne));
        prog.add_psd(b.take(), name);
    };
    five_block(out.p_plus, "five-block(P+)");
    five_block(out.p_minus, "five-block(P-)");

    {
        SymLmiBuilder b({nd, n});
        b.var_block(0, 0, eye(nd), out.q, eye(nd));
        b.const_block(1, 0, p.B1);
        b.var_block(1, 1, eye(n), out.p_plus, eye(n));
        b.var_block(1, 1, -eye(n), out.p_minus, eye(n));
        prog.add_psd(b.take(), "coupling");
    }

    {
        std::vector<int> ids = {out.p_minus, out.p_plus, out.q};
        if (out.x >= 0) ids.push_back(out.x);
        prog.add_psd(positivity_floor(prog.vars(), ids), "positivity");
    }

    prog.add_trace_objective(out.q);
    return out;
}

GsSynthesisProgram build_gs_synthesis(const ValidatedPlant& vp) {
    const LftPlant& p = vp.get();
    require(p.is_discrete(), "gain-scheduling synthesis expects a discrete-time plant");

    const int n = p.n, np = p.np, nd = p.nd, ne = p.ne, nu = p.nu, ny = p.ny;

    GsSynthesisProgram out;
    LmiProgram& prog = out.program;
    out.t_plus = prog.vars().add_symmetric(2 * n, "T+");
    out.t_minus = prog.vars().add_symmetric(2 * n, "T-");
    out.q = prog.vars().add_symmetric(nd, "Q");
    if (np > 0) {
        out.l = prog.vars().add_scaling(p.structure, "L");
        out.j = prog.vars().add_scaling(p.structure, "J");
    }
    out.r = prog.vars().add_rectangular(n, n, "R");
    out.s = prog.vars().add_rectangular(n, n, "S");
    out.u = prog.vars().add_rectangular(n, n, "U");
    out.ak = prog.vars().add_rectangular(n, n, "Ak^");
    out.bk1 = prog.vars().add_rectangular(n, ny, "Bk1^");
    if (np > 0) {
        out.bk0 = prog.vars().add_rectangular(n, np, "Bk0^");
        out.ck0 = prog.vars().add_rectangular(np, n, "Ck0^");
        out.dk00 = prog.vars().add_rectangular(np, np, "Dk00^");
    }
    if (nu > 0) {
        out.ck1 = prog.vars().add_rectangular(nu, n, "Ck1^");
        if (np > 0) out.dk10 = prog.vars().add_rectangular(nu, np, "Dk10^");
    }

    // Selectors for the two n-halves of T.
    Matrix sel_a = Matrix::Zero(n, 2 * n);
    sel_a.leftCols(n) = eye(n);
    Matrix sel_b = Matrix::Zero(n, 2 * n);
    sel_b.rightCols(n) = eye(n);

    // Fine block layout [n, n, np, np, n, n, np, np, ne].
    auto big_condition = [&](int t_var, const char* name) {
        SymLmiBuilder b({n, n, np, np, n, n, np, np, ne});

        // (1,1) corner: [S+S', I+U'; U+I, R'+R] - T.
        b.var_block(0, 0, eye(n), out.s, eye(n));
        b.var_block(0, 0, eye(n), out.s, eye(n), true);
        b.const_block(0, 1, eye(n));
        b.var_block(0, 1, eye(n), out.u, eye(n), true);
        b.var_block(1, 1, eye(n), out.r, eye(n));
        b.var_block(1, 1, eye(n), out.r, eye(n), true);
        b.var_block(0, 0, -sel_a, t_var, sel_a.transpose());
        b.var_block(0, 1, -sel_a, t_var, sel_b.transpose());
        b.var_block(1, 1, -sel_b, t_var, sel_b.transpose());

        // (3,3) corner: +T.
        b.var_block(4, 4, sel_a, t_var, sel_a.transpose());
        b.var_block(4, 5, sel_a, t_var, sel_b.transpose());
        b.var_block(5, 5, sel_b, t_var, sel_b.transpose());

        if (np > 0) {
            // Scaling corners [L I; I J] at (2,2) and (4,4).
            b.var_block(2, 2, eye(np), out.l, eye(np));
            b.const_block(2, 3, eye(np));
            b.var_block(3, 3, eye(np), out.j, eye(np));
            b.var_block(6, 6, eye(np), out.l, eye(np));
            b.const_block(6, 7, eye(np));
            b.var_block(7, 7, eye(np), out.j, eye(np));
        }
        b.const_block(8, 8, eye(ne));

        // Constant part of the G assembly.
        b.var_block(4, 0, p.A, out.s, eye(n));
        b.const_block(4, 1, p.A);
        if (np > 0) {
            b.const_block(4, 2, p.B0);
            b.var_block(4, 3, p.B0, out.j, eye(np));
            b.var_block(5, 2, eye(n), out.r, p.B0);
            b.var_block(6, 1, eye(np), out.l, p.C0);
            b.var_block(6, 2, eye(np), out.l, p.D00);
            b.var_block(7, 0, p.C0, out.s, eye(n));
            b.const_block(7, 1, p.C0);
            b.const_block(7, 2, p.D00);
            b.var_block(7, 3, p.D00, out.j, eye(np));
            b.var_block(8, 3, p.D10, out.j, eye(np));
            b.const_block(8, 2, p.D10);
        }
        b.var_block(5, 1, eye(n), out.r, p.A);
        b.var_block(8, 0, p.C1, out.s, eye(n));
        b.const_block(8, 1, p.C1);

        // Hat-variable part of the G assembly.
        if (nu > 0) {
            b.var_block(4, 0, p.B2, out.ck1, eye(n));
            b.var_block(7, 0, p.D02, out.ck1, eye(n));
            b.var_block(8, 0, p.D12, out.ck1, eye(n));
            if (np > 0) {
                b.var_block(4, 3, p.B2, out.dk10, eye(np));
                b.var_block(7, 3, p.D02, out.dk10, eye(np));
                b.var_block(8, 3, p.D12, out.dk10, eye(np));
            }
        }
        b.var_block(5, 0, eye(n), out.ak, eye(n));
        b.var_block(5, 1, eye(n), out.bk1, p.C2);
        if (np > 0) {
            b.var_block(5, 2, eye(n), out.bk1, p.D20);
            b.var_block(5, 3, eye(n), out.bk0, eye(np));
            b.var_block(6, 0, eye(np), out.ck0, eye(n));
            b.var_block(6, 3, eye(np), out.dk00, eye(np));
        }

        prog.add_psd(b.take(), name);
    };
    big_condition(out.t_plus, "transformed(T+)");
    big_condition(out.t_minus, "transformed(T-)");

    // [Q H21'; H21 T+ - T-] with H21 = [B1; R B1 + Bk1^ D21].
    {
        SymLmiBuilder b({nd, n, n});
        b.var_block(0, 0, eye(nd), out.q, eye(nd));
        b.const_block(1, 0, p.B1);
        b.var_block(2, 0, eye(n), out.r, p.B1);
        b.var_block(2, 0, eye(n), out.bk1, p.D21);
        b.var_block(1, 1, sel_a, out.t_plus, sel_a.transpose());
        b.var_block(1, 2, sel_a, out.t_plus, sel_b.transpose());
        b.var_block(2, 2, sel_b, out.t_plus, sel_b.transpose());
        b.var_block(1, 1, -sel_a, out.t_minus, sel_a.transpose());
        b.var_block(1, 2, -sel_a, out.t_minus, sel_b.transpose());
        b.var_block(2, 2, -sel_b, out.t_minus, sel_b.transpose());
        prog.add_psd(b.take(), "coupling");
    }

    prog.add_psd(positivity_floor(prog.vars(), {out.t_plus, out.t_minus, out.q}), "positivity");

    prog.add_trace_objective(out.q);
    return out;
}

}  // namespace robh2
