#include "robh2/weights.hpp"

#include <cmath>

namespace robh2 {

LtiSystem LtiSystem::gain(const Matrix& k) {
    LtiSystem w;
    w.A = Matrix::Zero(0, 0);
    w.B = Matrix::Zero(0, k.cols());
    w.C = Matrix::Zero(k.rows(), 0);
    w.D = k;
    return w;
}

LtiSystem LtiSystem::from_tf(const std::vector<double>& num, const std::vector<double>& den) {
    auto lead_trimmed = [](const std::vector<double>& c) {
        std::size_t i = 0;
        while (i + 1 < c.size() && c[i] == 0.0) ++i;
        return std::vector<double>(c.begin() + i, c.end());
    };
    const auto nc = lead_trimmed(num);
    const auto dc = lead_trimmed(den);
    if (dc.empty() || dc[0] == 0.0) throw ImproperWeight("denominator is zero");
    if (nc.size() > dc.size()) throw ImproperWeight("transfer function is improper");

    const int n = static_cast<int>(dc.size()) - 1;
    // Monic denominator and numerator padded to the same length.
    std::vector<double> a(n), b(dc.size(), 0.0);
    for (int i = 0; i < n; ++i) a[i] = dc[i + 1] / dc[0];
    const std::size_t pad = dc.size() - nc.size();
    for (std::size_t i = 0; i < nc.size(); ++i) b[pad + i] = nc[i] / dc[0];

    LtiSystem w;
    w.D = Matrix::Constant(1, 1, b[0]);
    w.A = Matrix::Zero(n, n);
    w.B = Matrix::Zero(n, 1);
    w.C = Matrix::Zero(1, n);
    if (n == 0) return w;
    // Controllable companion form.
    for (int i = 0; i < n; ++i) w.A(0, i) = -a[i];
    for (int i = 1; i < n; ++i) w.A(i, i - 1) = 1.0;
    w.B(0, 0) = 1.0;
    for (int i = 0; i < n; ++i) w.C(0, i) = b[i + 1] - a[i] * b[0];
    return w;
}

LtiSystem LtiSystem::first_order(double b1, double b0, double a) {
    LtiSystem w;
    w.A = Matrix::Constant(1, 1, -a);
    w.D = Matrix::Constant(1, 1, b1);
    const double residue = b0 - a * b1;
    const double s = std::sqrt(std::abs(residue));
    w.B = Matrix::Constant(1, 1, s);
    w.C = Matrix::Constant(1, 1, residue >= 0.0 ? s : -s);
    return w;
}

LtiSystem LtiSystem::diagonal_repeat(int copies) const {
    require(copies >= 1, "diagonal_repeat needs at least one copy");
    const int n = order(), p = outputs(), m = inputs();
    LtiSystem w;
    w.A = Matrix::Zero(n * copies, n * copies);
    w.B = Matrix::Zero(n * copies, m * copies);
    w.C = Matrix::Zero(p * copies, n * copies);
    w.D = Matrix::Zero(p * copies, m * copies);
    for (int k = 0; k < copies; ++k) {
        w.A.block(k * n, k * n, n, n) = A;
        w.B.block(k * n, k * m, n, m) = B;
        w.C.block(k * p, k * n, p, n) = C;
        w.D.block(k * p, k * m, p, m) = D;
    }
    return w;
}

Eigen::MatrixXcd LtiSystem::eval(std::complex<double> s) const {
    const int n = order();
    Eigen::MatrixXcd resolvent =
        (s * Eigen::MatrixXcd::Identity(n, n) - A.cast<std::complex<double>>())
            .partialPivLu()
            .solve(B.cast<std::complex<double>>());
    return C.cast<std::complex<double>>() * resolvent + D.cast<std::complex<double>>();
}

LftPlant augment_with_weights(const LftPlant& plant, const WeightingScheme& scheme) {
    if (scheme.empty()) return plant;

    const int n = plant.n, np = plant.np, nd = plant.nd, nu = plant.nu, ny = plant.ny;
    const int ne_raw = plant.ne;

    const int n_extra = static_cast<int>(scheme.input_disturbance_gain.cols());
    if (n_extra > 0 && scheme.input_disturbance_gain.rows() != nu)
        throw TopologyMismatch("input disturbance gain must have nu rows");

    const LtiSystem* act = scheme.actuator ? &*scheme.actuator : nullptr;
    if (act && (act->inputs() != nu || act->outputs() != nu))
        throw TopologyMismatch("actuator must be square on the control channel");

    const LtiSystem* dfilt =
        scheme.existing_disturbance_filter ? &*scheme.existing_disturbance_filter : nullptr;
    if (dfilt && (dfilt->inputs() != nd || dfilt->outputs() != nd))
        throw TopologyMismatch("disturbance filter must be square on the d channel");

    const LtiSystem* noise = scheme.sensor_noise_weight ? &*scheme.sensor_noise_weight : nullptr;
    if (noise && noise->outputs() != ny)
        throw TopologyMismatch("sensor noise weight must produce ny outputs");
    const int n_noise = noise ? noise->inputs() : 0;

    for (const auto& ch : scheme.error_channels) {
        const int k = ch.weight.inputs();
        if (ch.Cx.rows() != k || ch.Cx.cols() != n || ch.Du.rows() != k || ch.Du.cols() != nu ||
            ch.De.rows() != k || ch.De.cols() != ne_raw)
            throw TopologyMismatch("error channel readout does not match weight inputs");
    }

    const int kd = dfilt ? dfilt->order() : 0;
    const int ka = act ? act->order() : 0;
    int kw = 0, ne_new = 0;
    for (const auto& ch : scheme.error_channels) {
        kw += ch.weight.order();
        ne_new += ch.weight.outputs();
    }
    const int kn = noise ? noise->order() : 0;
    if (scheme.error_channels.empty()) ne_new = ne_raw;

    const int N = n + kd + ka + kw + kn;
    const int ND = nd + n_extra + n_noise;

    // State offsets.
    const int oxd = n, oxa = n + kd, oxw = n + kd + ka, oxn = n + kd + ka + kw;
    // Disturbance offsets.
    const int ode = nd, odn = nd + n_extra;

    LftPlant w = LftPlant::zero(N, np, ND, ne_new, nu, ny);
    w.sample_time = plant.sample_time;
    w.structure = plant.structure;

    // Effective plant input u_plant = Ca*xa + Da*u + G*d_extra (u when no actuator).
    Matrix up_x = Matrix::Zero(nu, N);
    Matrix up_u = Matrix::Identity(nu, nu);
    if (act) {
        up_x.block(0, oxa, nu, ka) = act->C;
        up_u = act->D;
    }
    Matrix up_d = Matrix::Zero(nu, ND);
    if (n_extra > 0) up_d.block(0, ode, nu, n_extra) = scheme.input_disturbance_gain;

    // Effective disturbance d_eff = Cd*xd + Dd*d (d when no filter).
    Matrix de_x = Matrix::Zero(nd, N);
    Matrix de_d = Matrix::Zero(nd, ND);
    de_d.leftCols(nd) = Matrix::Identity(nd, nd);
    if (dfilt) {
        de_x.block(0, oxd, nd, kd) = dfilt->C;
        de_d.leftCols(nd) = dfilt->D;
    }

    // Plant state rows.
    w.A.block(0, 0, n, n) = plant.A;
    w.A.block(0, 0, n, N) += plant.B1 * de_x + plant.B2 * up_x;
    w.B0.topRows(n) = plant.B0;
    w.B1.topRows(n) = plant.B1 * de_d + plant.B2 * up_d;
    w.B2.topRows(n) = plant.B2 * up_u;

    // Disturbance filter states.
    if (dfilt) {
        w.A.block(oxd, oxd, kd, kd) = dfilt->A;
        w.B1.block(oxd, 0, kd, nd) = dfilt->B;
    }
    // Actuator states.
    if (act) {
        w.A.block(oxa, oxa, ka, ka) = act->A;
        w.B2.middleRows(oxa, ka) = act->B;
    }

    // Raw performance signal e_raw = C1*x + D10*p + D12*u_plant (row form over
    // the augmented inputs).
    Matrix eraw_x = Matrix::Zero(ne_raw, N);
    eraw_x.leftCols(n) = plant.C1;
    eraw_x += plant.D12 * up_x;
    const Matrix eraw_p = plant.D10;
    const Matrix eraw_d = plant.D12 * up_d;
    const Matrix eraw_u = plant.D12 * up_u;

    // Uncertainty output rows (unchanged except for actuator coupling).
    w.C0.leftCols(n) = plant.C0;
    w.C0 += plant.D02 * up_x;
    w.D00 = plant.D00;
    w.D01 = plant.D02 * up_d;
    w.D02 = plant.D02 * up_u;

    // Error rows.
    if (scheme.error_channels.empty()) {
        w.C1 = eraw_x;
        w.D10 = eraw_p;
        w.D11 = eraw_d;
        w.D12 = eraw_u;
    } else {
        int row = 0, sx = oxw;
        for (const auto& ch : scheme.error_channels) {
            const int k = ch.weight.inputs();
            const int p = ch.weight.outputs();
            const int o = ch.weight.order();
            // Readout s = Cx*x + Du*u + De*e_raw expressed over augmented signals.
            Matrix s_x = Matrix::Zero(k, N);
            s_x.leftCols(n) = ch.Cx;
            s_x += ch.De * eraw_x;
            const Matrix s_p = ch.De * eraw_p;
            const Matrix s_d = ch.De * eraw_d;
            const Matrix s_u = ch.Du + ch.De * eraw_u;

            if (o > 0) {
                w.A.block(sx, sx, o, o) = ch.weight.A;
                w.A.block(sx, 0, o, N) += ch.weight.B * s_x;
                w.B0.middleRows(sx, o) = ch.weight.B * s_p;
                w.B1.middleRows(sx, o) += ch.weight.B * s_d;
                w.B2.middleRows(sx, o) += ch.weight.B * s_u;
            }
            w.C1.middleRows(row, p) = ch.weight.D * s_x;
            if (o > 0) w.C1.block(row, sx, p, o) = ch.weight.C;
            w.D10.middleRows(row, p) = ch.weight.D * s_p;
            w.D11.middleRows(row, p) = ch.weight.D * s_d;
            w.D12.middleRows(row, p) = ch.weight.D * s_u;
            row += p;
            sx += o;
        }
    }

    // Measurement rows.
    w.C2.leftCols(n) = plant.C2;
    w.C2 += plant.D21 * de_x;
    w.D20 = plant.D20;
    w.D21 = plant.D21 * de_d;
    if (noise) {
        if (kn > 0) {
            w.A.block(oxn, oxn, kn, kn) = noise->A;
            w.B1.block(oxn, odn, kn, n_noise) = noise->B;
            w.C2.block(0, oxn, ny, kn) = noise->C;
        }
        w.D21.block(0, odn, ny, n_noise) = noise->D;
    }

    if (w.D01.size() > 0 && w.D01.cwiseAbs().maxCoeff() != 0.0)
        throw TopologyMismatch("interconnection creates a forbidden d->q feedthrough");
    if (w.D11.size() > 0 && w.D11.cwiseAbs().maxCoeff() != 0.0)
        throw TopologyMismatch("interconnection creates a forbidden d->e feedthrough");

    return w;
}

}  // namespace robh2
