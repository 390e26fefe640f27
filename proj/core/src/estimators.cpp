#include "robh2/estimators.hpp"

#include <cmath>
#include <memory>

#include "robh2/rng.hpp"

namespace robh2 {

GainEstimate estimate_h2_white_noise(const ClosedLoopLft& clp,
                                     const UncertaintyStructure& structure,
                                     const WhiteNoiseOptions& options) {
    require(options.n_runs > 0 && options.horizon > options.burn_in,
            "estimator needs n_runs > 0 and horizon > burn_in");
    require(structure.dimension() == clp.np, "structure does not match the closed loop");

    const int window = options.horizon - options.burn_in;
    std::vector<double> mean_square(options.n_runs, 0.0);

    for (int run = 0; run < options.n_runs; ++run) {
        Rng rng(options.seed ^ static_cast<std::uint64_t>(run));
        Matrix d(clp.nd, options.horizon);
        for (int k = 0; k < options.horizon; ++k)
            for (int i = 0; i < clp.nd; ++i) d(i, k) = rng.normal();
        DeltaTrajectory deltas;
        if (clp.np > 0) {
            auto delta_rng = std::make_shared<Rng>(rng.next_u64());
            deltas.delta = [structure, delta_rng](int) {
                return sample_uncertainty(structure, *delta_rng, 1.0);
            };
            deltas.descriptor = "random-per-step";
        } else {
            deltas = DeltaTrajectory::zero(0);
        }
        const SimulationRun sim =
            simulate(clp, deltas, d, Vector::Zero(clp.n), options.horizon);
        double acc = 0.0;
        for (int k = options.burn_in; k < options.horizon; ++k)
            acc += sim.outputs.col(k).squaredNorm();
        mean_square[run] = acc / window;
    }

    double mean = 0.0;
    for (double v : mean_square) mean += v;
    mean /= options.n_runs;
    double var = 0.0;
    for (double v : mean_square) var += (v - mean) * (v - mean);
    var = options.n_runs > 1 ? var / (options.n_runs - 1) : 0.0;
    const double se_mean_square = std::sqrt(var / options.n_runs);

    GainEstimate est;
    est.kind = GainEstimate::Kind::white_noise_rms;
    est.value = std::sqrt(std::max(0.0, mean));
    est.standard_error = est.value > 0.0 ? se_mean_square / (2.0 * est.value) : 0.0;
    est.runs = options.n_runs;
    est.samples_per_run = window;
    return est;
}

double peak_gain(const DiscreteLti& frozen, const std::vector<double>& freq_grid) {
    const int n = frozen.order();
    double peak = 0.0;
    for (double w : freq_grid) {
        const std::complex<double> z(std::cos(w), std::sin(w));
        Eigen::MatrixXcd g = frozen.D.cast<std::complex<double>>();
        if (n > 0) {
            const Eigen::MatrixXcd resolvent =
                (z * Eigen::MatrixXcd::Identity(n, n) - frozen.A.cast<std::complex<double>>())
                    .partialPivLu()
                    .solve(frozen.B.cast<std::complex<double>>());
            g += frozen.C.cast<std::complex<double>>() * resolvent;
        }
        if (g.size() == 0) continue;
        peak = std::max(peak, g.jacobiSvd().singularValues()(0));
    }
    return peak;
}

std::vector<double> default_freq_grid(int count) {
    std::vector<double> grid(count);
    const double pi = 3.14159265358979323846;
    // Log-spaced in (0, pi]: from pi*10^-4 up to pi.
    for (int i = 0; i < count; ++i) {
        const double t = count == 1 ? 1.0 : static_cast<double>(i) / (count - 1);
        grid[i] = pi * std::pow(10.0, -4.0 * (1.0 - t));
    }
    return grid;
}

GainEstimate estimate_induced_gain(const ClosedLoopLft& clp,
                                   const std::vector<Matrix>& delta_grid,
                                   const std::vector<double>& freq_grid) {
    GainEstimate est;
    est.kind = GainEstimate::Kind::induced_l2_lower_bound;
    est.runs = static_cast<int>(delta_grid.size());
    est.samples_per_run = static_cast<int>(freq_grid.size());
    for (std::size_t i = 0; i < delta_grid.size(); ++i) {
        const DiscreteLti frozen = freeze_closed_loop(clp, delta_grid[i]);
        const double rho = spectral_radius(frozen.A);
        if (rho >= 1.0)
            throw UnstableFrozenLoop("frozen loop unstable at grid point " + std::to_string(i) +
                                     " (spectral radius " + std::to_string(rho) + ")");
        est.value = std::max(est.value, peak_gain(frozen, freq_grid));
    }
    return est;
}

std::vector<Matrix> scalar_delta_grid(const UncertaintyStructure& structure,
                                      int points_per_block) {
    require(points_per_block >= 1, "grid needs at least one point per block");
    const int nblocks =
        static_cast<int>(structure.scalar_blocks.size() + structure.full_blocks.size());
    std::vector<double> axis(points_per_block);
    for (int i = 0; i < points_per_block; ++i)
        axis[i] = points_per_block == 1
                      ? 0.0
                      : -1.0 + 2.0 * static_cast<double>(i) / (points_per_block - 1);

    const int dim = structure.dimension();
    if (nblocks == 0) return {Matrix::Zero(dim, dim)};

    std::vector<Matrix> grid;
    std::vector<int> idx(nblocks, 0);
    while (true) {
        Vector values(nblocks);
        for (int b = 0; b < nblocks; ++b) values(b) = axis[idx[b]];
        grid.push_back(frozen_uncertainty(structure, values));
        int pos = nblocks - 1;
        while (pos >= 0 && ++idx[pos] == points_per_block) idx[pos--] = 0;
        if (pos < 0) break;
    }
    return grid;
}

}  // namespace robh2
