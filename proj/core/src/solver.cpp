#include "robh2/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace robh2 {

const char* to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::feasible: return "feasible";
        case SolveStatus::infeasible: return "infeasible";
        case SolveStatus::max_iterations: return "max_iterations";
        case SolveStatus::numerical_failure: return "numerical_failure";
    }
    return "unknown";
}

double SdpSolution::min_margin() const {
    double m = std::numeric_limits<double>::infinity();
    for (double v : block_margins) m = std::min(m, v);
    return block_margins.empty() ? 0.0 : m;
}

double MarginReport::min_margin() const {
    double m = std::numeric_limits<double>::infinity();
    for (double v : margins) m = std::min(m, v);
    return margins.empty() ? 0.0 : m;
}

bool MarginReport::all_above(double tol) const {
    for (double v : margins)
        if (!(v > tol)) return false;
    return true;
}

SdpSolution solve_core(const StandardSdp& sdp, const SolveOptions& opts);

namespace {

using Block = StandardSdp::Block;

double frob(const Matrix& m) { return m.size() == 0 ? 0.0 : m.norm(); }

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// tr(F_k * W) for a sparse coefficient list.
double inner(const std::vector<StandardSdp::Entry>& entries, const Matrix& w) {
    double v = 0.0;
    for (const auto& e : entries) v += e.value * w(e.col, e.row);
    return v;
}

// Accumulates sum_k x_k F_k into `out`.
void scatter_into(const Block& blk, const Vector& x, Matrix& out) {
    for (const auto& cc : blk.coeffs) {
        const double xv = x(cc.coord);
        if (xv == 0.0) continue;
        for (const auto& e : cc.entries) out(e.row, e.col) += e.value * xv;
    }
}

// Largest step alpha in (0, 1] keeping S + alpha*dS psd, given S = L L'.
double max_step(const Eigen::LLT<Matrix>& llt, const Matrix& ds) {
    const Matrix u = llt.matrixL().solve(llt.matrixL().solve(ds).transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (u + u.transpose()),
                                              Eigen::EigenvaluesOnly);
    const double lmin = eig.eigenvalues().minCoeff();
    if (lmin >= 0.0) return 1.0;
    return std::min(1.0, -1.0 / lmin);
}

struct Workspace {
    std::vector<Matrix> s, z, sinv, rp;
    std::vector<Eigen::LLT<Matrix>> s_llt, z_llt;
};

// Phase-I test: minimize t subject to F(x) + t I >= 0 and t >= -1. The
// original problem has a feasible point iff the optimum is <= 0; a clearly
// positive optimum certifies infeasibility.
SolveStatus phase_one_verdict(const StandardSdp& sdp, const SolveOptions& opts) {
    StandardSdp aug = sdp;
    const int t_coord = sdp.num_coords();
    aug.c = Vector::Zero(t_coord + 1);
    aug.c(t_coord) = 1.0;
    double f_scale = 0.0;
    for (auto& blk : aug.blocks) {
        f_scale = std::max(f_scale, max_abs(blk.f0));
        StandardSdp::CoordCoeffs cc;
        cc.coord = t_coord;
        for (int i = 0; i < blk.dim; ++i) cc.entries.push_back({i, i, 1.0});
        blk.coeffs.push_back(std::move(cc));
    }
    StandardSdp::Block bound;
    bound.dim = 1;
    bound.f0 = Matrix::Constant(1, 1, 1.0);
    bound.name = "phase1-bound";
    bound.coeffs.push_back({t_coord, {{0, 0, 1.0}}});
    aug.blocks.push_back(std::move(bound));

    SolveOptions popts = opts;
    popts.tol = 1e-9;
    popts.max_iter = std::max(100, opts.max_iter);
    const SdpSolution psol = solve_core(aug, popts);
    // The dual objective is a valid lower bound on the optimal shift, so a
    // positive value proves no feasible assignment exists. Infeasibility can
    // be marginal at the strictness-shift scale, hence the small threshold,
    // widened with the data magnitude to avoid false positives on badly
    // scaled problems.
    if (psol.status == SolveStatus::optimal && psol.dual_objective > 1e-8 * (1.0 + f_scale))
        return SolveStatus::infeasible;
    return SolveStatus::max_iterations;
}

}  // namespace

SdpSolution solve(const StandardSdp& sdp, const SolveOptions& opts) {
    SdpSolution sol = solve_core(sdp, opts);
    if (sol.status == SolveStatus::max_iterations) {
        if (phase_one_verdict(sdp, opts) == SolveStatus::infeasible) {
            sol.status = SolveStatus::infeasible;
            sol.message = "phase-I certificate: no assignment satisfies the constraints";
        }
    }
    return sol;
}

SdpSolution solve_core(const StandardSdp& sdp, const SolveOptions& opts) {
    const int m = sdp.num_coords();
    const int nb = static_cast<int>(sdp.blocks.size());

    SdpSolution sol;
    sol.x = Vector::Zero(m);

    auto compute_margins = [&](const Vector& x) {
        std::vector<double> margins;
        margins.reserve(nb);
        for (int b = 0; b < nb; ++b) {
            const Matrix f = sdp.eval_block(b, x);
            Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (f + f.transpose()),
                                                      Eigen::EigenvaluesOnly);
            margins.push_back(eig.eigenvalues().minCoeff());
        }
        return margins;
    };

    // No PSD blocks at all: any x is feasible, and the objective must be zero
    // for the problem to be bounded.
    if (nb == 0) {
        sol.status = sdp.c.cwiseAbs().maxCoeff() == 0.0 ? SolveStatus::optimal
                                                        : SolveStatus::numerical_failure;
        sol.message = sol.status == SolveStatus::optimal ? "" : "unbounded: no constraints";
        return sol;
    }

    // Coordinates that appear in no constraint: fixed to zero; a nonzero
    // objective on such a coordinate makes the problem unbounded.
    std::vector<bool> active(m, false);
    for (const auto& blk : sdp.blocks)
        for (const auto& cc : blk.coeffs) active[cc.coord] = true;
    for (int k = 0; k < m; ++k) {
        if (!active[k] && sdp.c(k) != 0.0) {
            sol.status = SolveStatus::numerical_failure;
            sol.message = "objective is unbounded along an unconstrained coordinate";
            return sol;
        }
    }

    if (m == 0 || std::none_of(active.begin(), active.end(), [](bool a) { return a; })) {
        sol.block_margins = compute_margins(sol.x);
        sol.status = sol.min_margin() >= -opts.feas_margin ? SolveStatus::optimal
                                                           : SolveStatus::infeasible;
        if (sol.status == SolveStatus::infeasible)
            sol.message = "constant constraint block is not positive semidefinite";
        return sol;
    }

    // Scale-aware identity start.
    double f_scale = 1.0, c_scale = 1.0;
    for (const auto& blk : sdp.blocks) {
        f_scale = std::max(f_scale, max_abs(blk.f0));
        for (const auto& cc : blk.coeffs)
            for (const auto& e : cc.entries) c_scale = std::max(c_scale, std::abs(e.value));
    }
    const double beta_p = 10.0 * std::max(1.0, std::sqrt(f_scale));
    const double beta_d =
        10.0 * std::max(1.0, std::sqrt(std::max(1.0, sdp.c.cwiseAbs().maxCoeff()) / c_scale));

    Workspace w;
    w.s.resize(nb);
    w.z.resize(nb);
    w.sinv.resize(nb);
    w.rp.resize(nb);
    w.s_llt.resize(nb);
    w.z_llt.resize(nb);
    int total_dim = 0;
    for (int b = 0; b < nb; ++b) {
        const int d = sdp.blocks[b].dim;
        w.s[b] = beta_p * Matrix::Identity(d, d);
        w.z[b] = beta_d * Matrix::Identity(d, d);
        total_dim += d;
    }

    Vector x = Vector::Zero(m);
    Vector r_d(m);
    Matrix mmat(m, m);
    Vector rhs(m), dx(m), dx_aff(m);
    std::vector<Matrix> h_aff_dz(nb), h_dz(nb), ds_aff(nb), dz_aff(nb), ds(nb), dz(nb), gmat(nb);

    const double tiny = 1e-300;
    double mu = 0.0;
    double last_mu = std::numeric_limits<double>::infinity();
    int stall_count = 0;
    constexpr int kWindow = 16;
    double gap_hist[kWindow];
    std::fill(gap_hist, gap_hist + kWindow, std::numeric_limits<double>::infinity());

    auto finish_feasible_or_max = [&](int iter) {
        sol.block_margins = compute_margins(x);
        sol.iterations = iter;
        if (sol.min_margin() >= -opts.feas_margin) {
            sol.status = SolveStatus::feasible;
            sol.message = "tolerance not reached; returning a feasible point";
        } else {
            sol.status = SolveStatus::max_iterations;
            sol.message = "iteration limit reached without convergence";
        }
    };

    for (int iter = 0; iter < opts.max_iter; ++iter) {
        // Residuals.
        double p_res = 0.0;
        for (int b = 0; b < nb; ++b) {
            const Block& blk = sdp.blocks[b];
            Matrix f = blk.f0;
            scatter_into(blk, x, f);
            w.rp[b] = f - w.s[b];
            p_res = std::max(p_res, max_abs(w.rp[b]));
        }
        for (int k = 0; k < m; ++k) r_d(k) = sdp.c(k);
        double sz = 0.0;
        for (int b = 0; b < nb; ++b) {
            const Block& blk = sdp.blocks[b];
            for (const auto& cc : blk.coeffs) r_d(cc.coord) -= inner(cc.entries, w.z[b]);
            sz += w.s[b].cwiseProduct(w.z[b]).sum();
        }
        mu = sz / std::max(1, total_dim);

        const double pobj = sdp.c.dot(x);
        double dobj = 0.0;
        for (int b = 0; b < nb; ++b) dobj -= sdp.blocks[b].f0.cwiseProduct(w.z[b]).sum();

        const double obj_scale = 1.0 + std::abs(pobj) + std::abs(dobj);
        const double gap_rel = std::abs(pobj - dobj) / obj_scale;
        const double mu_rel = sz / obj_scale;
        const double p_rel = p_res / (1.0 + f_scale);
        const double d_rel = r_d.cwiseAbs().maxCoeff() / (1.0 + sdp.c.cwiseAbs().maxCoeff());

        if (opts.verbose)
            std::fprintf(stderr, "it %3d  mu %9.2e  gap %9.2e  pres %9.2e  dres %9.2e\n", iter,
                         mu, gap_rel, p_rel, d_rel);

        if (p_rel <= opts.tol && d_rel <= opts.tol && gap_rel <= opts.tol &&
            mu_rel <= std::sqrt(opts.tol)) {
            sol.block_margins = compute_margins(x);
            if (sol.min_margin() >= -opts.feas_margin) {
                sol.status = SolveStatus::optimal;
                sol.x = x;
                sol.objective = pobj;
                sol.dual_objective = dobj;
                sol.iterations = iter;
                sol.duality_gap = gap_rel;
                return sol;
            }
        }

        // Dual improving ray: Z >= 0 with A*(Z) ~ 0 and <F0, Z> < 0 certifies
        // that no primal feasible point exists.
        double znorm = 0.0;
        for (int b = 0; b < nb; ++b) znorm += frob(w.z[b]) * frob(w.z[b]);
        znorm = std::sqrt(znorm);
        if (znorm > 1e5 * beta_d * std::sqrt(static_cast<double>(total_dim))) {
            double ray_obj = 0.0;
            Vector ray_res = sdp.c;  // A*(Z)/|Z| measured against c's scale
            for (int k = 0; k < m; ++k) ray_res(k) = 0.0;
            for (int b = 0; b < nb; ++b) {
                const Block& blk = sdp.blocks[b];
                ray_obj -= blk.f0.cwiseProduct(w.z[b]).sum() / znorm;
                for (const auto& cc : blk.coeffs)
                    ray_res(cc.coord) += inner(cc.entries, w.z[b]) / znorm;
            }
            const double ray_err = ray_res.cwiseAbs().maxCoeff() * (1.0 + f_scale);
            if (ray_obj > 1e-10 && ray_err < 1e-7 * ray_obj) {
                sol.status = SolveStatus::infeasible;
                sol.iterations = iter;
                sol.message = "dual improving ray found: no feasible assignment exists";
                sol.x = x;
                sol.block_margins = compute_margins(x);
                return sol;
            }
        }

        // Stall detection: no meaningful complementarity progress for many
        // consecutive iterations, or no meaningful gap progress over a window
        // while the iterate is already primal-clean (degenerate optimal faces
        // can make the gap oscillate without converging further).
        if (mu > 0.995 * last_mu)
            ++stall_count;
        else
            stall_count = 0;
        last_mu = mu;
        const bool window_stalled = iter >= 2 * kWindow &&
                                    gap_rel > 0.9 * gap_hist[iter % kWindow] &&
                                    p_rel <= 100.0 * opts.tol;
        gap_hist[iter % kWindow] = gap_rel;
        if (stall_count >= 25 || window_stalled || mu < tiny) {
            finish_feasible_or_max(iter);
            sol.x = x;
            sol.objective = pobj;
            sol.dual_objective = dobj;
            sol.duality_gap = gap_rel;
            return sol;
        }

        // Factorizations.
        bool fact_ok = true;
        for (int b = 0; b < nb && fact_ok; ++b) {
            w.s_llt[b].compute(w.s[b]);
            w.z_llt[b].compute(w.z[b]);
            if (w.s_llt[b].info() != Eigen::Success || w.z_llt[b].info() != Eigen::Success)
                fact_ok = false;
            const int d = sdp.blocks[b].dim;
            if (fact_ok) w.sinv[b] = w.s_llt[b].solve(Matrix::Identity(d, d));
        }
        if (!fact_ok) {
            // The iterate may already be usable even when the cone
            // factorization gives out at extreme conditioning.
            finish_feasible_or_max(iter);
            if (sol.status == SolveStatus::max_iterations) {
                sol.status = SolveStatus::numerical_failure;
                sol.message = "slack factorization broke down";
            }
            sol.x = x;
            sol.objective = sdp.c.dot(x);
            return sol;
        }

        // Schur complement M_kl = tr(F_k S^-1 F_l Z).
        mmat.setZero();
        for (int b = 0; b < nb; ++b) {
            const Block& blk = sdp.blocks[b];
            const int d = blk.dim;
            Matrix h(d, d);
            for (const auto& ccl : blk.coeffs) {
                h.setZero();
                for (const auto& e : ccl.entries)
                    h.noalias() += e.value * (w.sinv[b].col(e.row) * w.z[b].row(e.col));
                for (const auto& cck : blk.coeffs)
                    mmat(cck.coord, ccl.coord) += inner(cck.entries, h);
            }
        }
        mmat = 0.5 * (mmat + mmat.transpose()).eval();

        Eigen::LDLT<Matrix> mldlt;
        double ridge = 0.0;
        for (int attempt = 0; attempt < 4; ++attempt) {
            Matrix reg = mmat;
            if (ridge > 0.0) reg.diagonal().array() += ridge;
            mldlt.compute(reg);
            if (mldlt.info() == Eigen::Success && mldlt.isPositive()) break;
            ridge = ridge == 0.0 ? 1e-12 * (1.0 + mmat.trace() / m) : ridge * 100.0;
        }
        if (mldlt.info() != Eigen::Success) {
            sol.status = SolveStatus::numerical_failure;
            sol.message = "Schur complement factorization failed";
            sol.iterations = iter;
            sol.x = x;
            return sol;
        }
        auto solve_system = [&](const Vector& b) {
            Vector v = mldlt.solve(b);
            v += mldlt.solve(b - mmat * v);  // one refinement step
            return v;
        };

        // Predictor (affine scaling) direction.
        for (int b = 0; b < nb; ++b) {
            // G_aff - S^-1 Rp Z with G_aff = -Z.
            gmat[b] = -w.z[b] - w.sinv[b] * w.rp[b] * w.z[b];
        }
        for (int k = 0; k < m; ++k) rhs(k) = -r_d(k);
        for (int b = 0; b < nb; ++b) {
            const Block& blk = sdp.blocks[b];
            for (const auto& cc : blk.coeffs) rhs(cc.coord) += inner(cc.entries, gmat[b]);
        }
        dx_aff = solve_system(rhs);

        double alpha_p_aff = 1.0, alpha_d_aff = 1.0;
        for (int b = 0; b < nb; ++b) {
            const Block& blk = sdp.blocks[b];
            Matrix df = Matrix::Zero(blk.dim, blk.dim);
            scatter_into(blk, dx_aff, df);
            ds_aff[b] = w.rp[b] + df;
            Matrix raw = gmat[b] - w.sinv[b] * df * w.z[b];
            dz_aff[b] = 0.5 * (raw + raw.transpose());
            alpha_p_aff = std::min(alpha_p_aff, max_step(w.s_llt[b], ds_aff[b]));
            alpha_d_aff = std::min(alpha_d_aff, max_step(w.z_llt[b], dz_aff[b]));
        }

        double sz_aff = 0.0;
        for (int b = 0; b < nb; ++b)
            sz_aff += (w.s[b] + alpha_p_aff * ds_aff[b])
                          .cwiseProduct(w.z[b] + alpha_d_aff * dz_aff[b])
                          .sum();
        const double mu_aff = sz_aff / std::max(1, total_dim);
        double sigma = mu > 0.0 ? std::pow(std::max(0.0, mu_aff / mu), 3.0) : 0.0;
        sigma = std::clamp(sigma, 1e-8, 1.0);

        // Corrector direction.
        for (int b = 0; b < nb; ++b) {
            const Matrix corr = ds_aff[b] * dz_aff[b];
            gmat[b] = sigma * mu * w.sinv[b] - w.z[b] - w.sinv[b] * corr -
                      w.sinv[b] * w.rp[b] * w.z[b];
        }
        for (int k = 0; k < m; ++k) rhs(k) = -r_d(k);
        for (int b = 0; b < nb; ++b) {
            const Block& blk = sdp.blocks[b];
            for (const auto& cc : blk.coeffs) rhs(cc.coord) += inner(cc.entries, gmat[b]);
        }
        dx = solve_system(rhs);

        double alpha_p = 1.0, alpha_d = 1.0;
        for (int b = 0; b < nb; ++b) {
            const Block& blk = sdp.blocks[b];
            Matrix df = Matrix::Zero(blk.dim, blk.dim);
            scatter_into(blk, dx, df);
            ds[b] = w.rp[b] + df;
            Matrix raw = gmat[b] - w.sinv[b] * df * w.z[b];
            dz[b] = 0.5 * (raw + raw.transpose());
            alpha_p = std::min(alpha_p, max_step(w.s_llt[b], ds[b]));
            alpha_d = std::min(alpha_d, max_step(w.z_llt[b], dz[b]));
        }
        const double tau = 0.98;
        alpha_p = std::min(1.0, tau * alpha_p);
        alpha_d = std::min(1.0, tau * alpha_d);

        x += alpha_p * dx;
        bool finite = x.allFinite();
        for (int b = 0; b < nb; ++b) {
            w.s[b] += alpha_p * ds[b];
            w.z[b] += alpha_d * dz[b];
            w.s[b] = 0.5 * (w.s[b] + w.s[b].transpose()).eval();
            w.z[b] = 0.5 * (w.z[b] + w.z[b].transpose()).eval();
            finite = finite && w.s[b].allFinite() && w.z[b].allFinite();
        }
        if (!finite) {
            sol.status = SolveStatus::numerical_failure;
            sol.message = "iterates diverged to non-finite values";
            sol.iterations = iter;
            return sol;
        }
    }

    finish_feasible_or_max(opts.max_iter);
    sol.x = x;
    sol.objective = sdp.c.dot(x);
    return sol;
}

MarginReport check_solution(const LmiProgram& program, const Assignment& assignment, double tol) {
    MarginReport report;
    report.objective = program.objective_value(assignment);
    for (const LmiConstraint& con : program.constraints()) {
        if (con.expr.dim() == 0) continue;
        const Matrix f = eval_expr(con.expr, program.vars(), assignment);
        Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (f + f.transpose()),
                                                  Eigen::EigenvaluesOnly);
        report.margins.push_back(eig.eigenvalues().minCoeff() - tol);
        report.names.push_back(con.name);
    }
    return report;
}

}  // namespace robh2
