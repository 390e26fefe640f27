#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "robh2/plant.hpp"

namespace robh2 {

// Proper LTI system in state-space form, used for weighting filters. The
// domain (continuous vs discrete) is whatever the surrounding interconnection
// uses; weights carry no sample time of their own.
struct LtiSystem {
    Matrix A, B, C, D;

    int order() const { return static_cast<int>(A.rows()); }
    int inputs() const { return static_cast<int>(D.cols()); }
    int outputs() const { return static_cast<int>(D.rows()); }

    // Static gain block.
    static LtiSystem gain(const Matrix& k);
    static LtiSystem gain(double k) { return gain(Matrix::Constant(1, 1, k)); }

    // SISO transfer function num(s)/den(s), coefficients highest power first.
    // Throws ImproperWeight when deg(num) > deg(den). Realized in balanced
    // companion form.
    static LtiSystem from_tf(const std::vector<double>& num, const std::vector<double>& den);

    // (b1*s + b0) / (s + a) in balanced form.
    static LtiSystem first_order(double b1, double b0, double a);

    // Block-diagonal repetition (e.g. W(s) * I_k).
    LtiSystem diagonal_repeat(int copies) const;

    // Frequency response C (sI - A)^{-1} B + D.
    Eigen::MatrixXcd eval(std::complex<double> s) const;
};

// Weighted interconnection around an LFT plant. Everything is optional; the
// empty scheme returns the plant unchanged.
//
// New disturbance ordering: [d (original); d_extra (input disturbance);
// d_noise (sensor noise)]. New state ordering: [plant; disturbance filter;
// actuator; error weights in order; noise weight].
struct WeightingScheme {
    // One block of the new performance output: weight applied to the readout
    // Cx*x + Du*u + De*e_raw (u is the commanded input). When any channel is
    // present the raw e is replaced by the stacked weighted outputs.
    struct ErrorChannel {
        Matrix Cx, Du, De;
        LtiSystem weight;
    };
    std::vector<ErrorChannel> error_channels;

    // Actuator dynamics in series with u before the plant input.
    std::optional<LtiSystem> actuator;

    // Extra disturbance channels entering the plant input: u_plant += G * d_extra.
    Matrix input_disturbance_gain;  // nu x n_extra (empty for none)

    // Appends noise channels to y: y += W_n * d_noise.
    std::optional<LtiSystem> sensor_noise_weight;

    // Filters the plant's own d channels (all of them jointly) before they
    // enter B1 and D21.
    std::optional<LtiSystem> existing_disturbance_filter;

    bool empty() const {
        return error_channels.empty() && !actuator && input_disturbance_gain.size() == 0 &&
               !sensor_noise_weight && !existing_disturbance_filter;
    }
};

// Series/parallel interconnection of the plant with the scheme's weights.
// State dimension grows by the sum of the weight orders; the uncertainty
// channel is untouched. Throws TopologyMismatch when dimensions do not fit or
// when the wiring would create a forbidden d->q / d->e feedthrough.
LftPlant augment_with_weights(const LftPlant& plant, const WeightingScheme& scheme);

}  // namespace robh2
