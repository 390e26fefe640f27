#pragma once

#include <complex>
#include <vector>

#include "robh2/types.hpp"
#include "robh2/uncertainty.hpp"

namespace robh2 {

// Four-channel LFT plant
//
//   [x+ ]   [ A    B0   B1   B2  ] [x]
//   [q  ] = [ C0   D00  0    D02 ] [p]        p = Delta(k) q
//   [e  ]   [ C1   D10  0    D12 ] [d]
//   [y  ]   [ C2   D20  D21  0   ] [u]
//
// The d->q, d->e and u->y feedthroughs are structurally zero; they are carried
// as explicit blocks (D01, D11, D22) so violations are representable and
// rejected by validate_plant. sample_time == 0 marks a continuous-time plant.
struct LftPlant {
    int n = 0, np = 0, nd = 0, ne = 0, nu = 0, ny = 0;
    double sample_time = 0.0;

    Matrix A, B0, B1, B2;
    Matrix C0, D00, D01, D02;
    Matrix C1, D10, D11, D12;
    Matrix C2, D20, D21, D22;

    UncertaintyStructure structure;

    // All blocks zero-sized consistently with the given dimensions.
    static LftPlant zero(int n, int np, int nd, int ne, int nu, int ny);

    bool is_discrete() const { return sample_time > 0.0; }
};

class ValidatedPlant;

// Enforces block dimension consistency and the structural zeros above.
// Throws DimensionMismatch (naming the offending block) or StructuralViolation.
ValidatedPlant validate_plant(const LftPlant& plant);

// Proof token: can only be produced by validate_plant.
class ValidatedPlant {
public:
    const LftPlant& get() const { return plant_; }
    const LftPlant* operator->() const { return &plant_; }

private:
    friend ValidatedPlant validate_plant(const LftPlant&);
    explicit ValidatedPlant(LftPlant plant) : plant_(std::move(plant)) {}
    LftPlant plant_;
};

struct AssumptionReport {
    bool stabilizable = false;
    bool detectable = false;
    std::vector<std::complex<double>> unstabilizable_modes;
    std::vector<std::complex<double>> undetectable_modes;
};

// PBH rank tests on every eigenvalue of A with |lambda| >= 1 (discrete time).
AssumptionReport check_assumptions(const LftPlant& plant);

// Closed loop of an LFT plant with either controller type:
//
//   [x+]   [ A    B0   B1  ] [x]
//   [q ] = [ C0   D00  D01 ] [p]      p = Delta_cl(k) q
//   [e ]   [ C1   D10  D11 ] [d]
//
// D01 and D11 are exactly zero by construction for both closures.
struct ClosedLoopLft {
    int n = 0, np = 0, nd = 0, ne = 0;
    double sample_time = 0.0;

    Matrix A, B0, B1;
    Matrix C0, D00, D01;
    Matrix C1, D10, D11;

    UncertaintyStructure structure;
};

// Gain-scheduled LFT controller mirroring the plant's Delta channel:
//
//   [xk+]   [ Ak    Bk1  Bk0  ] [xk]
//   [u  ] = [ Ck1   0    Dk10 ] [y ]      pk = Delta(k) qk
//   [qk ]   [ Ck0   0    Dk00 ] [pk]
struct LftController {
    int nk = 0;
    Matrix Ak, Bk1, Bk0;
    Matrix Ck1, Ck0;
    Matrix Dk10, Dk00;
};

// u = F x. Structure and the p/d channels are unchanged.
ClosedLoopLft close_state_feedback(const LftPlant& plant, const Matrix& F);

// Closes the output-feedback LFT controller around the plant. The resulting
// uncertainty channel is [q; qk] driven by diag(Delta, Delta); the returned
// structure is the doubled copy of the plant structure.
ClosedLoopLft close_output_feedback(const LftPlant& plant, const LftController& controller);

// Nominal (Delta = 0) closed loop of a plant, as a ClosedLoopLft view.
ClosedLoopLft open_loop(const LftPlant& plant);

// Diagonal state similarity scaling (powers of two, so exactly invertible)
// equalizing row and column magnitudes of the realization. All transfer
// functions and channel semantics are unchanged; only the state basis moves.
// Stiff weight realizations otherwise put entries of very different magnitude
// into one semidefinite program.
LftPlant balance_states(const LftPlant& plant);

// Plain discrete LTI system d -> e used for frozen-parameter work.
struct DiscreteLti {
    Matrix A, B, C, D;
    double sample_time = 0.0;
    int order() const { return static_cast<int>(A.rows()); }
};

// Frozen-parameter LTI closure at a constant Delta. Throws IllPosedLoop when
// I - D00*Delta is numerically singular.
DiscreteLti freeze_closed_loop(const ClosedLoopLft& clp, const Matrix& delta);

double spectral_radius(const Matrix& A);

}  // namespace robh2
