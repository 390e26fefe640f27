#pragma once

#include <string>
#include <vector>

#include "robh2/lmi_expr.hpp"

namespace robh2 {

// Block-diagonal standard-form SDP:  min c'x  s.t.  F0_b + sum_k x_k F_kb >= 0
// for every block b. Coefficient matrices are stored as sparse entry lists
// (both triangles), constants as dense matrices. The per-constraint
// strictness shift of the LmiProgram is baked into F0 (F0 = constant - eps*I)
// and recorded in `shift`.
struct StandardSdp {
    struct Entry {
        int row, col;
        double value;
    };
    struct CoordCoeffs {
        int coord;
        std::vector<Entry> entries;
    };
    struct Block {
        int dim = 0;
        Matrix f0;
        double shift = 0.0;
        std::string name;
        std::vector<CoordCoeffs> coeffs;  // ordered by coord
    };

    Vector c;
    std::vector<Block> blocks;

    int num_coords() const { return static_cast<int>(c.size()); }

    // F0 + sum x_k F_k of one block.
    Matrix eval_block(int b, const Vector& x) const;
};

// Scatters the structured variables of a program into scalar coordinates.
// Evaluation through the standard form agrees with eval_expr up to the
// recorded shift.
StandardSdp to_standard_form(const LmiProgram& program);

// Serializes the SDP in sparse SDPA format (m, nblocks, block sizes, c,
// entry lines "k block i j value" with the SDPA sign convention for F0).
std::string to_sdpa(const StandardSdp& sdp);

}  // namespace robh2
