#include "robh2/simulate.hpp"

#include <memory>
#include <sstream>

#include "robh2/rng.hpp"

namespace robh2 {

DeltaTrajectory DeltaTrajectory::zero(int np) {
    DeltaTrajectory t;
    t.delta = [np](int) { return Matrix::Zero(np, np); };
    t.descriptor = "zero";
    return t;
}

DeltaTrajectory DeltaTrajectory::constant(Matrix delta0) {
    DeltaTrajectory t;
    auto held = std::make_shared<Matrix>(std::move(delta0));
    t.delta = [held](int) { return *held; };
    t.descriptor = "constant";
    return t;
}

DeltaTrajectory DeltaTrajectory::random(const UncertaintyStructure& structure,
                                        std::uint64_t seed, double bound) {
    DeltaTrajectory t;
    auto rng = std::make_shared<Rng>(seed);
    t.delta = [structure, rng, bound](int) { return sample_uncertainty(structure, *rng, bound); };
    t.descriptor = "random(seed=" + std::to_string(seed) + ")";
    return t;
}

std::string SimulationRun::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "k";
    for (int i = 0; i < inputs.rows(); ++i) os << ",d_" << i + 1;
    for (int i = 0; i < outputs.rows(); ++i) os << ",e_" << i + 1;
    os << "\n";
    for (int k = 0; k < horizon; ++k) {
        os << k;
        for (int i = 0; i < inputs.rows(); ++i) os << "," << inputs(i, k);
        for (int i = 0; i < outputs.rows(); ++i) os << "," << outputs(i, k);
        os << "\n";
    }
    return os.str();
}

SimulationRun simulate(const ClosedLoopLft& clp, const DeltaTrajectory& delta_traj,
                       const Matrix& d_traj, const Vector& x0, int horizon) {
    require(horizon >= 0, "horizon must be nonnegative");
    require(d_traj.rows() == clp.nd && d_traj.cols() >= horizon,
            "disturbance trajectory must be nd x horizon");
    require(x0.size() == clp.n, "initial state must have length n");

    SimulationRun run;
    run.horizon = horizon;
    run.delta_descriptor = delta_traj.descriptor;
    run.states = Matrix::Zero(clp.n, horizon + 1);
    run.outputs = Matrix::Zero(clp.ne, horizon);
    run.inputs = d_traj.leftCols(horizon);
    run.states.col(0) = x0;

    Vector x = x0;
    const Matrix eye = Matrix::Identity(clp.np, clp.np);
    for (int k = 0; k < horizon; ++k) {
        Vector p = Vector::Zero(clp.np);
        if (clp.np > 0) {
            const Matrix delta = delta_traj.delta(k);
            require(delta.rows() == clp.np && delta.cols() == clp.np,
                    "Delta(k) has wrong dimension");
            const Matrix loop = eye - delta * clp.D00;
            Eigen::JacobiSVD<Matrix> svd(loop);
            const auto& sv = svd.singularValues();
            if (sv(sv.size() - 1) <= 1e-12 * sv(0))
                throw IllPosedLoop("loop ill-posed at step " + std::to_string(k) +
                                   ": cond(I - Delta*D00) > 1e12");
            p = loop.partialPivLu().solve(delta * (clp.C0 * x));
        }
        run.outputs.col(k) = clp.C1 * x + clp.D10 * p;
        x = clp.A * x + clp.B0 * p + clp.B1 * d_traj.col(k);
        run.states.col(k + 1) = x;
        if (!x.allFinite())
            throw NonFiniteResult("state diverged to non-finite values at step " +
                                  std::to_string(k));
    }
    return run;
}

SimulationRun step_disturbance_response(const DiscreteLti& frozen, double magnitude,
                                        int horizon) {
    const double rho = spectral_radius(frozen.A);
    if (rho >= 1.0)
        throw UnstableFrozenLoop("frozen loop is unstable (spectral radius " +
                                 std::to_string(rho) + ")");
    const int nd = static_cast<int>(frozen.B.cols());
    Matrix d = Matrix::Zero(nd, horizon);
    for (int i = 0; i < nd; ++i) d.row(i).setConstant(i % 2 == 0 ? magnitude : -magnitude);

    SimulationRun run;
    run.horizon = horizon;
    run.delta_descriptor = "step";
    run.inputs = d;
    run.states = Matrix::Zero(frozen.order(), horizon + 1);
    run.outputs = Matrix::Zero(frozen.C.rows(), horizon);
    Vector x = Vector::Zero(frozen.order());
    for (int k = 0; k < horizon; ++k) {
        run.outputs.col(k) = frozen.C * x + frozen.D * d.col(k);
        x = frozen.A * x + frozen.B * d.col(k);
        run.states.col(k + 1) = x;
    }
    return run;
}

}  // namespace robh2
