#include "robh2/discretize.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace robh2 {

LftPlant zoh_discretize(const LftPlant& plant, double Ts) {
    require(plant.sample_time == 0.0, "zoh_discretize expects a continuous-time plant");
    require(Ts > 0.0, "sampling time must be positive");

    const int n = plant.n;
    const int m = plant.np + plant.nd + plant.nu;

    Matrix embedding = Matrix::Zero(n + m, n + m);
    embedding.topLeftCorner(n, n) = plant.A;
    embedding.block(0, n, n, plant.np) = plant.B0;
    embedding.block(0, n + plant.np, n, plant.nd) = plant.B1;
    embedding.block(0, n + plant.np + plant.nd, n, plant.nu) = plant.B2;
    embedding *= Ts;

    const Matrix expm = embedding.exp();
    if (!expm.allFinite())
        throw NonFiniteResult("matrix exponential overflowed in zoh_discretize");

    LftPlant d = plant;
    d.sample_time = Ts;
    d.A = expm.topLeftCorner(n, n);
    d.B0 = expm.block(0, n, n, plant.np);
    d.B1 = expm.block(0, n + plant.np, n, plant.nd);
    d.B2 = expm.block(0, n + plant.np + plant.nd, n, plant.nu);
    return d;
}

}  // namespace robh2
