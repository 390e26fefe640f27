#include "robh2/plant.hpp"

#include <Eigen/Eigenvalues>

namespace robh2 {

LftPlant LftPlant::zero(int n, int np, int nd, int ne, int nu, int ny) {
    LftPlant p;
    p.n = n;
    p.np = np;
    p.nd = nd;
    p.ne = ne;
    p.nu = nu;
    p.ny = ny;
    p.A = Matrix::Zero(n, n);
    p.B0 = Matrix::Zero(n, np);
    p.B1 = Matrix::Zero(n, nd);
    p.B2 = Matrix::Zero(n, nu);
    p.C0 = Matrix::Zero(np, n);
    p.D00 = Matrix::Zero(np, np);
    p.D01 = Matrix::Zero(np, nd);
    p.D02 = Matrix::Zero(np, nu);
    p.C1 = Matrix::Zero(ne, n);
    p.D10 = Matrix::Zero(ne, np);
    p.D11 = Matrix::Zero(ne, nd);
    p.D12 = Matrix::Zero(ne, nu);
    p.C2 = Matrix::Zero(ny, n);
    p.D20 = Matrix::Zero(ny, np);
    p.D21 = Matrix::Zero(ny, nd);
    p.D22 = Matrix::Zero(ny, nu);
    return p;
}

namespace {

void check_block(const Matrix& m, int rows, int cols, const char* name) {
    if (m.rows() != rows || m.cols() != cols)
        throw DimensionMismatch(std::string("block ") + name + " must be " +
                                std::to_string(rows) + "x" + std::to_string(cols) + ", got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    if (!m.allFinite()) throw NonFiniteResult(std::string("block ") + name + " has non-finite entries");
}

void check_zero(const Matrix& m, const char* name) {
    if (m.size() > 0 && m.cwiseAbs().maxCoeff() != 0.0)
        throw StructuralViolation(std::string("block ") + name +
                                  " must be structurally zero in the plant layout");
}

}  // namespace

ValidatedPlant validate_plant(const LftPlant& plant) {
    if (plant.n < 0 || plant.np < 0 || plant.nd < 0 || plant.ne < 0 || plant.nu < 0 || plant.ny < 0)
        throw DimensionMismatch("plant dimensions must be nonnegative");
    plant.structure.validate();
    if (plant.structure.dimension() != plant.np)
        throw DimensionMismatch("uncertainty structure dimension " +
                                std::to_string(plant.structure.dimension()) +
                                " does not match np = " + std::to_string(plant.np));

    check_block(plant.A, plant.n, plant.n, "A");
    check_block(plant.B0, plant.n, plant.np, "B0");
    check_block(plant.B1, plant.n, plant.nd, "B1");
    check_block(plant.B2, plant.n, plant.nu, "B2");
    check_block(plant.C0, plant.np, plant.n, "C0");
    check_block(plant.D00, plant.np, plant.np, "D00");
    check_block(plant.D01, plant.np, plant.nd, "D01");
    check_block(plant.D02, plant.np, plant.nu, "D02");
    check_block(plant.C1, plant.ne, plant.n, "C1");
    check_block(plant.D10, plant.ne, plant.np, "D10");
    check_block(plant.D11, plant.ne, plant.nd, "D11");
    check_block(plant.D12, plant.ne, plant.nu, "D12");
    check_block(plant.C2, plant.ny, plant.n, "C2");
    check_block(plant.D20, plant.ny, plant.np, "D20");
    check_block(plant.D21, plant.ny, plant.nd, "D21");
    check_block(plant.D22, plant.ny, plant.nu, "D22");

    check_zero(plant.D01, "D01 (d->q)");
    check_zero(plant.D11, "D11 (d->e)");
    check_zero(plant.D22, "D22 (u->y)");

    return ValidatedPlant(plant);
}

namespace {

// PBH test: rank [A - lambda I, B] == n for the given eigenvalue.
bool pbh_controllable_at(const Matrix& A, const Matrix& B, std::complex<double> lambda) {
    const int n = static_cast<int>(A.rows());
    Eigen::MatrixXcd pencil(n, n + B.cols());
    pencil.leftCols(n) = A.cast<std::complex<double>>() -
                         lambda * Eigen::MatrixXcd::Identity(n, n);
    pencil.rightCols(B.cols()) = B.cast<std::complex<double>>();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(pencil);
    const auto& sv = svd.singularValues();
    const double tol = 1e-9 * std::max(1.0, sv(0));
    return sv(std::min<int>(n, static_cast<int>(sv.size())) - 1) > tol;
}

}  // namespace

AssumptionReport check_assumptions(const LftPlant& plant) {
    require(plant.is_discrete(), "check_assumptions expects a discrete-time plant");
    AssumptionReport report;
    report.stabilizable = true;
    report.detectable = true;
    if (plant.n == 0) return report;

    const Eigen::EigenSolver<Matrix> eig(plant.A);
    for (int i = 0; i < plant.n; ++i) {
        const std::complex<double> lambda = eig.eigenvalues()(i);
        if (std::abs(lambda) < 1.0 - 1e-12) continue;
        if (!pbh_controllable_at(plant.A, plant.B2, lambda)) {
            report.stabilizable = false;
            report.unstabilizable_modes.push_back(lambda);
        }
        if (!pbh_controllable_at(plant.A.transpose(), plant.C2.transpose(), std::conj(lambda))) {
            report.detectable = false;
            report.undetectable_modes.push_back(lambda);
        }
    }
    return report;
}

ClosedLoopLft close_state_feedback(const LftPlant& plant, const Matrix& F) {
    if (F.rows() != plant.nu || F.cols() != plant.n)
        throw DimensionMismatch("state-feedback gain must be nu x n");
    ClosedLoopLft cl;
    cl.n = plant.n;
    cl.np = plant.np;
    cl.nd = plant.nd;
    cl.ne = plant.ne;
    cl.sample_time = plant.sample_time;
    cl.structure = plant.structure;
    cl.A = plant.A + plant.B2 * F;
    cl.B0 = plant.B0;
    cl.B1 = plant.B1;
    cl.C0 = plant.C0 + plant.D02 * F;
    cl.D00 = plant.D00;
    cl.D01 = Matrix::Zero(plant.np, plant.nd);
    cl.C1 = plant.C1 + plant.D12 * F;
    cl.D10 = plant.D10;
    cl.D11 = Matrix::Zero(plant.ne, plant.nd);
    return cl;
}

ClosedLoopLft close_output_feedback(const LftPlant& plant, const LftController& k) {
    const int n = plant.n, np = plant.np, nd = plant.nd, ne = plant.ne;
    if (k.nk != n)
        throw DimensionMismatch("controller order nk must equal plant order n");
    if (k.Ak.rows() != n || k.Ak.cols() != n || k.Bk1.rows() != n || k.Bk1.cols() != plant.ny ||
        k.Bk0.rows() != n || k.Bk0.cols() != np || k.Ck1.rows() != plant.nu || k.Ck1.cols() != n ||
        k.Ck0.rows() != np || k.Ck0.cols() != n || k.Dk10.rows() != plant.nu ||
        k.Dk10.cols() != np || k.Dk00.rows() != np || k.Dk00.cols() != np)
        throw DimensionMismatch("controller blocks do not match plant dimensions");

    ClosedLoopLft cl;
    cl.n = 2 * n;
    cl.np = 2 * np;
    cl.nd = nd;
    cl.ne = ne;
    cl.sample_time = plant.sample_time;
    cl.structure = plant.structure.doubled_copy();

    cl.A = Matrix::Zero(2 * n, 2 * n);
    cl.A.topLeftCorner(n, n) = plant.A;
    cl.A.topRightCorner(n, n) = plant.B2 * k.Ck1;
    cl.A.bottomLeftCorner(n, n) = k.Bk1 * plant.C2;
    cl.A.bottomRightCorner(n, n) = k.Ak;

    cl.B0 = Matrix::Zero(2 * n, 2 * np);
    cl.B0.topLeftCorner(n, np) = plant.B0;
    cl.B0.topRightCorner(n, np) = plant.B2 * k.Dk10;
    cl.B0.bottomLeftCorner(n, np) = k.Bk1 * plant.D20;
    cl.B0.bottomRightCorner(n, np) = k.Bk0;

    cl.B1 = Matrix::Zero(2 * n, nd);
    cl.B1.topRows(n) = plant.B1;
    cl.B1.bottomRows(n) = k.Bk1 * plant.D21;

    cl.C0 = Matrix::Zero(2 * np, 2 * n);
    cl.C0.topLeftCorner(np, n) = plant.C0;
    cl.C0.topRightCorner(np, n) = plant.D02 * k.Ck1;
    cl.C0.bottomRightCorner(np, n) = k.Ck0;

    cl.D00 = Matrix::Zero(2 * np, 2 * np);
    cl.D00.topLeftCorner(np, np) = plant.D00;
    cl.D00.topRightCorner(np, np) = plant.D02 * k.Dk10;
    cl.D00.bottomRightCorner(np, np) = k.Dk00;

    cl.D01 = Matrix::Zero(2 * np, nd);

    cl.C1 = Matrix::Zero(ne, 2 * n);
    cl.C1.leftCols(n) = plant.C1;
    cl.C1.rightCols(n) = plant.D12 * k.Ck1;

    cl.D10 = Matrix::Zero(ne, 2 * np);
    cl.D10.leftCols(np) = plant.D10;
    cl.D10.rightCols(np) = plant.D12 * k.Dk10;

    cl.D11 = Matrix::Zero(ne, nd);
    return cl;
}

ClosedLoopLft open_loop(const LftPlant& plant) {
    ClosedLoopLft cl;
    cl.n = plant.n;
    cl.np = plant.np;
    cl.nd = plant.nd;
    cl.ne = plant.ne;
    cl.sample_time = plant.sample_time;
    cl.structure = plant.structure;
    cl.A = plant.A;
    cl.B0 = plant.B0;
    cl.B1 = plant.B1;
    cl.C0 = plant.C0;
    cl.D00 = plant.D00;
    cl.D01 = Matrix::Zero(plant.np, plant.nd);
    cl.C1 = plant.C1;
    cl.D10 = plant.D10;
    cl.D11 = Matrix::Zero(plant.ne, plant.nd);
    return cl;
}

LftPlant balance_states(const LftPlant& plant) {
    const int n = plant.n;
    LftPlant p = plant;
    for (int sweep = 0; sweep < 100; ++sweep) {
        bool changed = false;
        for (int i = 0; i < n; ++i) {
            double row = p.B0.row(i).cwiseAbs().sum() + p.B1.row(i).cwiseAbs().sum() +
                         p.B2.row(i).cwiseAbs().sum();
            double col = p.C0.col(i).cwiseAbs().sum() + p.C1.col(i).cwiseAbs().sum() +
                         p.C2.col(i).cwiseAbs().sum();
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                row += std::abs(p.A(i, j));
                col += std::abs(p.A(j, i));
            }
            if (row == 0.0 || col == 0.0) continue;
            // x_i' = x_i / f: row sums scale by 1/f, column sums by f.
            double f = 1.0;
            while (col * f >= 2.0 * row / f) f *= 0.5;
            while (col * f < 0.5 * row / f) f *= 2.0;
            if (f == 1.0) continue;
            changed = true;
            const double diag = p.A(i, i);
            p.A.row(i) /= f;
            p.B0.row(i) /= f;
            p.B1.row(i) /= f;
            p.B2.row(i) /= f;
            p.A.col(i) *= f;
            p.C0.col(i) *= f;
            p.C1.col(i) *= f;
            p.C2.col(i) *= f;
            p.A(i, i) = diag;
        }
        if (!changed) break;
    }
    return p;
}

DiscreteLti freeze_closed_loop(const ClosedLoopLft& clp, const Matrix& delta) {
    require(delta.rows() == clp.np && delta.cols() == clp.np,
            "frozen Delta must match the closed-loop uncertainty dimension");
    const Matrix loop = Matrix::Identity(clp.np, clp.np) - clp.D00 * delta;
    Matrix gain;  // Delta (I - D00 Delta)^{-1}
    if (clp.np > 0) {
        Eigen::JacobiSVD<Matrix> svd(loop, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        if (sv(sv.size() - 1) <= 1e-12 * std::max(1.0, sv(0)))
            throw IllPosedLoop("I - D00*Delta is singular for the frozen Delta");
        gain = delta * loop.inverse();
    } else {
        gain = Matrix::Zero(0, 0);
    }
    DiscreteLti sys;
    sys.sample_time = clp.sample_time;
    sys.A = clp.A + clp.B0 * gain * clp.C0;
    sys.B = clp.B1;
    sys.C = clp.C1 + clp.D10 * gain * clp.C0;
    sys.D = Matrix::Zero(clp.ne, clp.nd);
    return sys;
}

double spectral_radius(const Matrix& A) {
    if (A.rows() == 0) return 0.0;
    return A.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace robh2
