#include "robh2/lmi_expr.hpp"

#include <numeric>

namespace robh2 {

int VariableSet::add(DecisionVar v, std::vector<std::vector<BasisEntry>> basis) {
    v.id = count();
    v.dim = static_cast<int>(basis.size());
    offsets_.push_back(total_);
    total_ += v.dim;
    vars_.push_back(std::move(v));
    bases_.push_back(std::move(basis));
    return vars_.back().id;
}

int VariableSet::add_symmetric(int n, std::string name) {
    DecisionVar v;
    v.kind = VarKind::symmetric;
    v.name = std::move(name);
    v.rows = v.cols = n;
    std::vector<std::vector<BasisEntry>> basis;
    for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) {
            if (a == b)
                basis.push_back({{a, a, 1.0}});
            else
                basis.push_back({{a, b, 1.0}, {b, a, 1.0}});
        }
    }
    return add(std::move(v), std::move(basis));
}

int VariableSet::add_rectangular(int rows, int cols, std::string name) {
    DecisionVar v;
    v.kind = VarKind::rectangular;
    v.name = std::move(name);
    v.rows = rows;
    v.cols = cols;
    std::vector<std::vector<BasisEntry>> basis;
    basis.reserve(static_cast<std::size_t>(rows) * cols);
    for (int a = 0; a < rows; ++a)
        for (int b = 0; b < cols; ++b) basis.push_back({{a, b, 1.0}});
    return add(std::move(v), std::move(basis));
}

int VariableSet::add_scaling(const UncertaintyStructure& structure, std::string name) {
    DecisionVar v;
    v.kind = VarKind::scaling;
    v.name = std::move(name);
    v.rows = v.cols = structure.dimension();
    v.structure = structure;
    std::vector<std::vector<BasisEntry>> basis;
    for (const Matrix& e : scaling_basis(structure)) {
        std::vector<BasisEntry> entries;
        for (int i = 0; i < e.rows(); ++i)
            for (int j = 0; j < e.cols(); ++j)
                if (e(i, j) != 0.0) entries.push_back({i, j, e(i, j)});
        basis.push_back(std::move(entries));
    }
    return add(std::move(v), std::move(basis));
}

Matrix VariableSet::materialize(int id, const Vector& coords) const {
    const DecisionVar& v = var(id);
    Matrix m = Matrix::Zero(v.rows, v.cols);
    const int off = offset(id);
    const auto& basis = bases_.at(id);
    for (int k = 0; k < v.dim; ++k)
        for (const auto& e : basis[k]) m(e.row, e.col) += e.value * coords(off + k);
    return m;
}

Vector VariableSet::gather(const Assignment& assignment) const {
    Vector coords = Vector::Zero(total_);
    for (const DecisionVar& v : vars_) {
        auto it = assignment.find(v.id);
        if (it == assignment.end())
            throw MissingVariable("assignment is missing variable " + v.name);
        const Matrix& m = it->second;
        require(m.rows() == v.rows && m.cols() == v.cols,
                "assignment for " + v.name + " has wrong shape");
        const int off = offset(v.id);
        if (v.kind == VarKind::scaling) {
            coords.segment(off, v.dim) = ScalingValue(v.structure, m).coords();
            continue;
        }
        // For symmetric/rectangular the first basis entry of each coordinate
        // is the defining (row, col) slot.
        const auto& basis = bases_.at(v.id);
        for (int k = 0; k < v.dim; ++k)
            coords(off + k) = m(basis[k][0].row, basis[k][0].col);
    }
    return coords;
}

Assignment VariableSet::scatter(const Vector& coords) const {
    require(coords.size() == total_, "coordinate vector has wrong length");
    Assignment a;
    for (const DecisionVar& v : vars_) a[v.id] = materialize(v.id, coords);
    return a;
}

void MatExpr::add_constant(const Matrix& c) {
    require(c.rows() == dim_ && c.cols() == dim_, "constant term has wrong dimension");
    constant_ += c;
}

void MatExpr::add_term(Matrix left, int var, Matrix right, bool transposed) {
    require(left.rows() == dim_ && right.cols() == dim_, "term placement has wrong dimension");
    terms_.push_back({std::move(left), var, std::move(right), transposed});
}

Matrix MatExpr::eval(const VariableSet& vars, const Assignment& assignment) const {
    Matrix m = constant_;
    for (const Term& t : terms_) {
        auto it = assignment.find(t.var);
        if (it == assignment.end())
            throw MissingVariable("assignment is missing variable " + vars.var(t.var).name);
        if (t.transposed)
            m.noalias() += t.left * it->second.transpose() * t.right;
        else
            m.noalias() += t.left * it->second * t.right;
    }
    return m;
}

Matrix eval_expr(const MatExpr& expr, const VariableSet& vars, const Assignment& assignment) {
    return expr.eval(vars, assignment);
}

SymLmiBuilder::SymLmiBuilder(std::vector<int> block_sizes)
    : sizes_(std::move(block_sizes)) {
    offsets_.resize(sizes_.size());
    int off = 0;
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
        offsets_[i] = off;
        off += sizes_[i];
    }
    dim_ = off;
    expr_ = MatExpr(dim_);
}

void SymLmiBuilder::const_block(int bi, int bj, const Matrix& value) {
    require(value.rows() == sizes_.at(bi) && value.cols() == sizes_.at(bj),
            "constant block has wrong size");
    Matrix c = Matrix::Zero(dim_, dim_);
    c.block(offsets_[bi], offsets_[bj], sizes_[bi], sizes_[bj]) = value;
    if (bi != bj)
        c.block(offsets_[bj], offsets_[bi], sizes_[bj], sizes_[bi]) = value.transpose();
    expr_.add_constant(c);
}

void SymLmiBuilder::var_block(int bi, int bj, const Matrix& left, int var, const Matrix& right,
                              bool transposed) {
    require(left.rows() == sizes_.at(bi) && right.cols() == sizes_.at(bj),
            "variable block has wrong size");
    Matrix l = Matrix::Zero(dim_, left.cols());
    l.middleRows(offsets_[bi], sizes_[bi]) = left;
    Matrix r = Matrix::Zero(right.rows(), dim_);
    r.middleCols(offsets_[bj], sizes_[bj]) = right;
    expr_.add_term(std::move(l), var, std::move(r), transposed);
    if (bi != bj) {
        Matrix lm = Matrix::Zero(dim_, right.rows());
        lm.middleRows(offsets_[bj], sizes_[bj]) = right.transpose();
        Matrix rm = Matrix::Zero(left.cols(), dim_);
        rm.middleCols(offsets_[bi], sizes_[bi]) = left.transpose();
        expr_.add_term(std::move(lm), var, std::move(rm), !transposed);
    }
}

void LmiProgram::add_psd(MatExpr expr, std::string name, double eps) {
    if (eps < 0.0) {
        const double scale =
            expr.constant().size() > 0 ? expr.constant().cwiseAbs().maxCoeff() : 0.0;
        eps = 1e-7 * (1.0 + scale);
    }
    constraints_.push_back({std::move(expr), eps, std::move(name)});
}

void LmiProgram::add_trace_objective(int var_id) {
    if (objective_.size() == 0) objective_ = Vector::Zero(vars_.total_coords());
    require(objective_.size() == vars_.total_coords(),
            "objective must be sized after all variables are declared");
    const DecisionVar& v = vars_.var(var_id);
    const auto& basis = vars_.basis(var_id);
    const int off = vars_.offset(var_id);
    for (int k = 0; k < v.dim; ++k)
        for (const auto& e : basis[k])
            if (e.row == e.col) objective_(off + k) += e.value;
}

double LmiProgram::objective_value(const Assignment& assignment) const {
    if (!has_objective()) return 0.0;
    return objective_.dot(vars_.gather(assignment));
}

}  // namespace robh2
