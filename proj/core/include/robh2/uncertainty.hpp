#pragma once

#include <cstdint>
#include <vector>

#include "robh2/rng.hpp"
#include "robh2/types.hpp"

namespace robh2 {

// Block structure of the uncertainty set: repeated-scalar blocks delta_i*I_{m_i}
// followed by full blocks of size r_j, every block norm-bounded by 1.
//
// When `doubled` is set the structure describes diag(Delta, Delta) with the
// SAME Delta in both copies (the shape produced by closing a gain-scheduled
// controller around the plant). scalar_blocks/full_blocks then describe the
// base Delta and the total channel dimension is twice the base dimension.
struct UncertaintyStructure {
    std::vector<int> scalar_blocks;  // multiplicities m_i
    std::vector<int> full_blocks;    // sizes r_j
    bool doubled = false;

    int base_dimension() const;
    int dimension() const;  // base_dimension(), doubled once when `doubled`
    bool empty() const { return dimension() == 0; }

    // Throws DimensionMismatch when a block size is < 1.
    void validate() const;

    UncertaintyStructure doubled_copy() const;

    static UncertaintyStructure scalars(std::vector<int> multiplicities) {
        UncertaintyStructure s;
        s.scalar_blocks = std::move(multiplicities);
        return s;
    }

    bool operator==(const UncertaintyStructure&) const = default;
};

// Random structured uncertainty sample: each scalar |delta_i| <= bound, each
// full block with spectral norm <= bound. For doubled structures the base
// sample is placed in both diagonal copies.
Matrix sample_uncertainty(const UncertaintyStructure& structure, Rng& rng, double bound);
Matrix sample_uncertainty(const UncertaintyStructure& structure, std::uint64_t seed, double bound);

// Builds a frozen Delta from per-block values: one value per scalar block
// (full blocks get value*I). Used for gridding frozen-parameter loops.
Matrix frozen_uncertainty(const UncertaintyStructure& structure, const Vector& block_values);

// Number of free coordinates of the symmetric commutant (the scaling set) of
// the structure. For base structures: one symmetric m_i x m_i block per scalar
// block plus one positive scalar per full block. For doubled structures the
// commutant of diag(Delta, Delta) additionally carries coupling blocks between
// the two copies.
int scaling_dim(const UncertaintyStructure& structure);

// Symmetric basis matrices of the scaling set, one per free coordinate.
std::vector<Matrix> scaling_basis(const UncertaintyStructure& structure);

// A concrete element of the scaling set: a symmetric matrix commuting with
// every Delta in the structure.
class ScalingValue {
public:
    ScalingValue() = default;

    // Validates that the matrix lies in the commutant parameterization (exact
    // sparsity/repetition pattern) up to `pattern_tol`.
    ScalingValue(UncertaintyStructure structure, Matrix value, double pattern_tol = 1e-9);

    static ScalingValue identity(const UncertaintyStructure& structure);
    static ScalingValue from_coords(const UncertaintyStructure& structure, const Vector& coords);

    // Diagonal blocks D_1..D_s, d_{s+1}I..; base structures only.
    static ScalingValue from_blocks(const UncertaintyStructure& structure,
                                    const std::vector<Matrix>& scalar_block_values,
                                    const std::vector<double>& full_block_values);

    const Matrix& matrix() const { return value_; }
    const UncertaintyStructure& structure() const { return structure_; }
    Vector coords() const;

private:
    UncertaintyStructure structure_;
    Matrix value_;
};

}  // namespace robh2
