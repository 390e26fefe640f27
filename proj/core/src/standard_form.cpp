#include "robh2/standard_form.hpp"

#include <map>
#include <sstream>

namespace robh2 {

Matrix StandardSdp::eval_block(int b, const Vector& x) const {
    const Block& blk = blocks.at(b);
    Matrix m = blk.f0;
    for (const auto& cc : blk.coeffs)
        for (const auto& e : cc.entries) m(e.row, e.col) += e.value * x(cc.coord);
    return m;
}

StandardSdp to_standard_form(const LmiProgram& program) {
    const VariableSet& vars = program.vars();
    StandardSdp sdp;
    sdp.c = program.has_objective() ? program.objective() : Vector::Zero(vars.total_coords());
    require(sdp.c.size() == vars.total_coords(), "objective does not cover all coordinates");

    for (const LmiConstraint& con : program.constraints()) {
        const int dim = con.expr.dim();
        if (dim == 0) continue;
        StandardSdp::Block blk;
        blk.dim = dim;
        blk.name = con.name;
        blk.shift = con.strictness_eps;
        blk.f0 = con.expr.constant() - con.strictness_eps * Matrix::Identity(dim, dim);

        std::map<int, Matrix> coeff;  // coord -> dense coefficient
        for (const MatExpr::Term& t : con.expr.terms()) {
            const DecisionVar& v = vars.var(t.var);
            const auto& basis = vars.basis(t.var);
            const int off = vars.offset(t.var);
            for (int k = 0; k < v.dim; ++k) {
                if (basis[k].empty()) continue;
                auto [it, inserted] = coeff.try_emplace(off + k, Matrix::Zero(dim, dim));
                Matrix& f = it->second;
                for (const auto& e : basis[k]) {
                    // d/dx_k of L * op(X) * R: basis entry (r,c,w) contributes
                    // w * L.col(r) R.row(c), transposed op swaps (r,c).
                    const int r = t.transposed ? e.col : e.row;
                    const int c = t.transposed ? e.row : e.col;
                    f.noalias() += e.value * (t.left.col(r) * t.right.row(c));
                }
            }
        }

        for (auto& [coord, f] : coeff) {
            Matrix sym = 0.5 * (f + f.transpose());
            StandardSdp::CoordCoeffs cc;
            cc.coord = coord;
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j)
                    if (sym(i, j) != 0.0) cc.entries.push_back({i, j, sym(i, j)});
            if (!cc.entries.empty()) blk.coeffs.push_back(std::move(cc));
        }
        sdp.blocks.push_back(std::move(blk));
    }
    return sdp;
}

std::string to_sdpa(const StandardSdp& sdp) {
    std::ostringstream os;
    os.precision(17);
    const int m = sdp.num_coords();
    os << m << "\n";
    os << sdp.blocks.size() << "\n";
    for (std::size_t b = 0; b < sdp.blocks.size(); ++b)
        os << sdp.blocks[b].dim << (b + 1 < sdp.blocks.size() ? " " : "\n");
    if (sdp.blocks.empty()) os << "\n";
    for (int k = 0; k < m; ++k) os << sdp.c(k) << (k + 1 < m ? " " : "");
    os << "\n";
    // SDPA convention: constraint is sum x_k F_k - F0 >= 0, entries upper
    // triangle only, 1-based indices, matrix index 0 holds F0.
    for (std::size_t b = 0; b < sdp.blocks.size(); ++b) {
        const auto& blk = sdp.blocks[b];
        for (int i = 0; i < blk.dim; ++i)
            for (int j = i; j < blk.dim; ++j)
                if (blk.f0(i, j) != 0.0)
                    os << "0 " << b + 1 << " " << i + 1 << " " << j + 1 << " " << -blk.f0(i, j)
                       << "\n";
        for (const auto& cc : blk.coeffs)
            for (const auto& e : cc.entries)
                if (e.row <= e.col)
                    os << cc.coord + 1 << " " << b + 1 << " " << e.row + 1 << " " << e.col + 1
                       << " " << e.value << "\n";
    }
    return os.str();
}

}  // namespace robh2
