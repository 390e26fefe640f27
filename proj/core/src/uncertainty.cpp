#include "robh2/uncertainty.hpp"

#include <numeric>

namespace robh2 {

int UncertaintyStructure::base_dimension() const {
    int d = std::accumulate(scalar_blocks.begin(), scalar_blocks.end(), 0);
    d += std::accumulate(full_blocks.begin(), full_blocks.end(), 0);
    return d;
}

int UncertaintyStructure::dimension() const {
    return base_dimension() * (doubled ? 2 : 1);
}

void UncertaintyStructure::validate() const {
    for (int m : scalar_blocks)
        if (m < 1) throw DimensionMismatch("scalar block multiplicity must be >= 1");
    for (int r : full_blocks)
        if (r < 1) throw DimensionMismatch("full block size must be >= 1");
}

UncertaintyStructure UncertaintyStructure::doubled_copy() const {
    if (doubled) throw DimensionMismatch("structure is already doubled");
    UncertaintyStructure s = *this;
    s.doubled = true;
    return s;
}

namespace {

Matrix sample_base(const UncertaintyStructure& s, Rng& rng, double bound) {
    const int n = s.base_dimension();
    Matrix delta = Matrix::Zero(n, n);
    int off = 0;
    for (int m : s.scalar_blocks) {
        const double d = bound * rng.uniform(-1.0, 1.0);
        delta.block(off, off, m, m) = d * Matrix::Identity(m, m);
        off += m;
    }
    for (int r : s.full_blocks) {
        Matrix g(r, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) g(i, j) = rng.normal();
        const double radius = bound * rng.uniform();
        const double top = g.jacobiSvd().singularValues()(0);
        if (top > 0.0) g *= radius / top;
        delta.block(off, off, r, r) = g;
        off += r;
    }
    return delta;
}

}  // namespace

Matrix sample_uncertainty(const UncertaintyStructure& structure, Rng& rng, double bound) {
    structure.validate();
    const Matrix base = sample_base(structure, rng, bound);
    if (!structure.doubled) return base;
    const int nb = structure.base_dimension();
    Matrix delta = Matrix::Zero(2 * nb, 2 * nb);
    delta.topLeftCorner(nb, nb) = base;
    delta.bottomRightCorner(nb, nb) = base;
    return delta;
}

Matrix sample_uncertainty(const UncertaintyStructure& structure, std::uint64_t seed, double bound) {
    Rng rng(seed);
    return sample_uncertainty(structure, rng, bound);
}

Matrix frozen_uncertainty(const UncertaintyStructure& structure, const Vector& block_values) {
    structure.validate();
    const int nblocks =
        static_cast<int>(structure.scalar_blocks.size() + structure.full_blocks.size());
    require(block_values.size() == nblocks, "frozen_uncertainty: one value per block expected");
    const int nb = structure.base_dimension();
    Matrix base = Matrix::Zero(nb, nb);
    int off = 0;
    int idx = 0;
    for (int m : structure.scalar_blocks) {
        base.block(off, off, m, m) = block_values(idx++) * Matrix::Identity(m, m);
        off += m;
    }
    for (int r : structure.full_blocks) {
        base.block(off, off, r, r) = block_values(idx++) * Matrix::Identity(r, r);
        off += r;
    }
    if (!structure.doubled) return base;
    Matrix delta = Matrix::Zero(2 * nb, 2 * nb);
    delta.topLeftCorner(nb, nb) = base;
    delta.bottomRightCorner(nb, nb) = base;
    return delta;
}

namespace {

int base_sym_dim(const UncertaintyStructure& s) {
    int d = 0;
    for (int m : s.scalar_blocks) d += m * (m + 1) / 2;
    d += static_cast<int>(s.full_blocks.size());
    return d;
}

// Appends the symmetric-commutant basis of the base structure embedded at
// diagonal offset `off` of an n x n matrix.
void append_base_sym_basis(const UncertaintyStructure& s, int off, int n,
                           std::vector<Matrix>& basis) {
    int pos = off;
    for (int m : s.scalar_blocks) {
        for (int a = 0; a < m; ++a) {
            for (int b = a; b < m; ++b) {
                Matrix e = Matrix::Zero(n, n);
                e(pos + a, pos + b) = 1.0;
                e(pos + b, pos + a) = 1.0;
                basis.push_back(e);
            }
        }
        pos += m;
    }
    for (int r : s.full_blocks) {
        Matrix e = Matrix::Zero(n, n);
        e.block(pos, pos, r, r) = Matrix::Identity(r, r);
        basis.push_back(e);
        pos += r;
    }
}

// Appends the coupling basis between the two copies of a doubled structure:
// a full m x m (non-symmetric) block per scalar block, one scalar per full
// block, always placed symmetrically across the off-diagonal corners.
void append_coupling_basis(const UncertaintyStructure& s, int n, std::vector<Matrix>& basis) {
    const int nb = s.base_dimension();
    int pos = 0;
    for (int m : s.scalar_blocks) {
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < m; ++b) {
                Matrix e = Matrix::Zero(n, n);
                e(pos + a, nb + pos + b) = 1.0;
                e(nb + pos + b, pos + a) = 1.0;
                basis.push_back(e);
            }
        }
        pos += m;
    }
    for (int r : s.full_blocks) {
        Matrix e = Matrix::Zero(n, n);
        e.block(pos, nb + pos, r, r) = Matrix::Identity(r, r);
        e.block(nb + pos, pos, r, r) = Matrix::Identity(r, r);
        basis.push_back(e);
        pos += r;
    }
}

}  // namespace

int scaling_dim(const UncertaintyStructure& structure) {
    const int base = base_sym_dim(structure);
    if (!structure.doubled) return base;
    int coupling = 0;
    for (int m : structure.scalar_blocks) coupling += m * m;
    coupling += static_cast<int>(structure.full_blocks.size());
    return 2 * base + coupling;
}

std::vector<Matrix> scaling_basis(const UncertaintyStructure& structure) {
    structure.validate();
    const int n = structure.dimension();
    std::vector<Matrix> basis;
    basis.reserve(scaling_dim(structure));
    if (!structure.doubled) {
        append_base_sym_basis(structure, 0, n, basis);
        return basis;
    }
    const int nb = structure.base_dimension();
    append_base_sym_basis(structure, 0, n, basis);
    append_base_sym_basis(structure, nb, n, basis);
    append_coupling_basis(structure, n, basis);
    return basis;
}

ScalingValue::ScalingValue(UncertaintyStructure structure, Matrix value, double pattern_tol)
    : structure_(std::move(structure)), value_(std::move(value)) {
    const int n = structure_.dimension();
    require(value_.rows() == n && value_.cols() == n, "scaling value has wrong dimension");
    // Project onto the commutant parameterization and verify nothing is lost.
    Vector c = coords();
    const auto basis = scaling_basis(structure_);
    Matrix rebuilt = Matrix::Zero(n, n);
    for (int k = 0; k < c.size(); ++k) rebuilt += c(k) * basis[k];
    const double scale = 1.0 + value_.cwiseAbs().maxCoeff();
    if ((rebuilt - value_).cwiseAbs().maxCoeff() > pattern_tol * scale)
        throw StructuralViolation("matrix is not in the scaling commutant of the structure");
    value_ = rebuilt;
}

ScalingValue ScalingValue::identity(const UncertaintyStructure& structure) {
    const int n = structure.dimension();
    ScalingValue v;
    v.structure_ = structure;
    v.value_ = Matrix::Identity(n, n);
    return v;
}

ScalingValue ScalingValue::from_coords(const UncertaintyStructure& structure, const Vector& coords) {
    const auto basis = scaling_basis(structure);
    require(coords.size() == static_cast<int>(basis.size()),
            "scaling coords length does not match structure");
    const int n = structure.dimension();
    ScalingValue v;
    v.structure_ = structure;
    v.value_ = Matrix::Zero(n, n);
    for (int k = 0; k < coords.size(); ++k) v.value_ += coords(k) * basis[k];
    return v;
}

ScalingValue ScalingValue::from_blocks(const UncertaintyStructure& structure,
                                       const std::vector<Matrix>& scalar_block_values,
                                       const std::vector<double>& full_block_values) {
    require(!structure.doubled, "from_blocks applies to base structures");
    require(scalar_block_values.size() == structure.scalar_blocks.size() &&
                full_block_values.size() == structure.full_blocks.size(),
            "scaling blocks do not match structure");
    const int n = structure.dimension();
    Matrix x = Matrix::Zero(n, n);
    int off = 0;
    for (std::size_t i = 0; i < structure.scalar_blocks.size(); ++i) {
        const int m = structure.scalar_blocks[i];
        require(scalar_block_values[i].rows() == m && scalar_block_values[i].cols() == m,
                "scaling block has wrong size");
        x.block(off, off, m, m) = scalar_block_values[i];
        off += m;
    }
    for (std::size_t j = 0; j < structure.full_blocks.size(); ++j) {
        const int r = structure.full_blocks[j];
        x.block(off, off, r, r) = full_block_values[j] * Matrix::Identity(r, r);
        off += r;
    }
    return ScalingValue(structure, std::move(x));
}

Vector ScalingValue::coords() const {
    const int nb = structure_.base_dimension();
    Vector c(scaling_dim(structure_));
    int k = 0;
    auto read_sym = [&](int off) {
        int pos = off;
        for (int m : structure_.scalar_blocks) {
            for (int a = 0; a < m; ++a)
                for (int b = a; b < m; ++b) c(k++) = value_(pos + a, pos + b);
            pos += m;
        }
        for (int r : structure_.full_blocks) {
            c(k++) = value_(pos, pos);
            pos += r;
        }
    };
    read_sym(0);
    if (structure_.doubled) {
        read_sym(nb);
        int pos = 0;
        for (int m : structure_.scalar_blocks) {
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) c(k++) = value_(pos + a, nb + pos + b);
            pos += m;
        }
        for (int r : structure_.full_blocks) {
            c(k++) = value_(pos, nb + pos);
            pos += r;
        }
    }
    return c;
}

}  // namespace robh2
