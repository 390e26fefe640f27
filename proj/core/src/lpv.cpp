#include "robh2/lpv.hpp"

namespace robh2 {

LpvToLftResult lpv_to_lft(const AffineLpvSystem& sys, double rank_tol) {
    const int n = static_cast<int>(sys.A0.rows());
    require(sys.A0.cols() == n && sys.A1.rows() == n && sys.A1.cols() == n,
            "A0 and A1 must be square of equal size");
    require(sys.rho_min < sys.rho_max, "parameter range must be nonempty");

    const int nd = static_cast<int>(sys.B1.cols());
    const int nu = static_cast<int>(sys.B2.cols());
    const int ne = static_cast<int>(sys.C1.rows());
    const int ny = static_cast<int>(sys.C2.rows());

    LpvToLftResult result;
    result.rho0 = 0.5 * (sys.rho_min + sys.rho_max);
    result.rho1 = 0.5 * (sys.rho_max - sys.rho_min);

    // Balanced rank-revealing split of rho1*A1 = E*G.
    const Matrix scaled = result.rho1 * sys.A1;
    Eigen::JacobiSVD<Matrix> svd(scaled, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector sv = svd.singularValues();
    const double top = sv.size() > 0 ? sv(0) : 0.0;

    int rank = 0;
    for (int i = 0; i < sv.size(); ++i) {
        if (top > 0.0 && sv(i) > rank_tol * top) ++rank;
        const double ratio = top > 0.0 ? sv(i) / top : 0.0;
        if (ratio > rank_tol * 1e-2 && ratio < rank_tol * 1e2) result.rank_ambiguous = true;
    }
    result.delta_block_size = rank;

    Matrix E(n, rank), G(rank, n);
    if (rank > 0) {
        const Vector root = sv.head(rank).cwiseSqrt();
        E = svd.matrixU().leftCols(rank) * root.asDiagonal();
        G = root.asDiagonal() * svd.matrixV().leftCols(rank).transpose();
    }

    LftPlant p = LftPlant::zero(n, rank, nd, ne, nu, ny);
    p.A = sys.A0 + result.rho0 * sys.A1;
    p.B0 = E;
    p.B1 = sys.B1;
    p.B2 = sys.B2;
    p.C0 = G;
    p.C1 = sys.C1;
    p.D11 = sys.D11;
    p.D12 = sys.D12;
    p.C2 = sys.C2;
    p.D21 = sys.D21;
    p.D22 = sys.D22;
    if (rank > 0) p.structure = UncertaintyStructure::scalars({rank});

    result.plant = std::move(p);
    return result;
}

}  // namespace robh2
