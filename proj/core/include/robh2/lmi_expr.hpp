#pragma once

#include <map>
#include <string>
#include <vector>

#include "robh2/types.hpp"
#include "robh2/uncertainty.hpp"

namespace robh2 {

enum class VarKind { symmetric, rectangular, scaling };

// One structured decision variable. Scalar coordinates enumerate only the
// free entries: upper triangle for symmetric, all entries for rectangular,
// the commutant basis for scaling.
struct DecisionVar {
    int id = -1;
    VarKind kind = VarKind::rectangular;
    std::string name;
    int rows = 0, cols = 0;
    UncertaintyStructure structure;  // scaling only
    int dim = 0;                     // number of scalar coordinates
};

using Assignment = std::map<int, Matrix>;  // variable id -> matrix value

// Owns the decision variables of a program and the mapping between matrices
// and flat coordinate vectors.
class VariableSet {
public:
    int add_symmetric(int n, std::string name);
    int add_rectangular(int rows, int cols, std::string name);
    int add_scaling(const UncertaintyStructure& structure, std::string name);

    int count() const { return static_cast<int>(vars_.size()); }
    const DecisionVar& var(int id) const { return vars_.at(id); }
    const std::vector<DecisionVar>& all() const { return vars_; }

    int total_coords() const { return total_; }
    int offset(int id) const { return offsets_.at(id); }

    // Nonzero entries of the basis matrix of one coordinate of a variable.
    struct BasisEntry {
        int row, col;
        double value;
    };
    const std::vector<std::vector<BasisEntry>>& basis(int id) const { return bases_.at(id); }

    Matrix materialize(int id, const Vector& coords) const;  // full coordinate vector
    Vector gather(const Assignment& assignment) const;
    Assignment scatter(const Vector& coords) const;

private:
    int add(DecisionVar v, std::vector<std::vector<BasisEntry>> basis);

    std::vector<DecisionVar> vars_;
    std::vector<int> offsets_;
    std::vector<std::vector<std::vector<BasisEntry>>> bases_;
    int total_ = 0;
};

// Affine symmetric-matrix expression: constant + sum of L * op(X_v) * R terms.
// Terms are stored with full-size placement factors so evaluation is a plain
// accumulation.
class MatExpr {
public:
    MatExpr() = default;
    explicit MatExpr(int dim) : dim_(dim), constant_(Matrix::Zero(dim, dim)) {}

    struct Term {
        Matrix left;   // dim x var_rows (or var_cols when transposed)
        int var;
        Matrix right;  // var_cols (or var_rows) x dim
        bool transposed;
    };

    int dim() const { return dim_; }
    const Matrix& constant() const { return constant_; }
    const std::vector<Term>& terms() const { return terms_; }

    void add_constant(const Matrix& c);
    void add_term(Matrix left, int var, Matrix right, bool transposed = false);

    Matrix eval(const VariableSet& vars, const Assignment& assignment) const;

private:
    int dim_ = 0;
    Matrix constant_;
    std::vector<Term> terms_;
};

// Evaluates an expression at an assignment; throws MissingVariable.
Matrix eval_expr(const MatExpr& expr, const VariableSet& vars, const Assignment& assignment);

// Helper for assembling block-symmetric expressions. Off-diagonal blocks are
// mirrored automatically (with the transposed term); diagonal blocks must be
// given as symmetric sums by the caller.
class SymLmiBuilder {
public:
    explicit SymLmiBuilder(std::vector<int> block_sizes);

    void const_block(int bi, int bj, const Matrix& value);
    // Places L * op(X_var) * R at block (bi, bj).
    void var_block(int bi, int bj, const Matrix& left, int var, const Matrix& right,
                   bool transposed = false);

    int dim() const { return dim_; }
    MatExpr take() { return std::move(expr_); }

private:
    std::vector<int> sizes_, offsets_;
    int dim_ = 0;
    MatExpr expr_;
};

struct LmiConstraint {
    MatExpr expr;            // required to be positive definite
    double strictness_eps;   // realized as expr - eps*I >= 0 in the SDP
    std::string name;
};

// A semidefinite feasibility/optimization program over structured variables:
// every constraint expression must be positive definite, the objective is a
// linear functional of the coordinates (empty = pure feasibility).
class LmiProgram {
public:
    VariableSet& vars() { return vars_; }
    const VariableSet& vars() const { return vars_; }

    // eps defaults to 1e-7 * (1 + max|constant|), following the strictness
    // convention used throughout the builders.
    void add_psd(MatExpr expr, std::string name, double eps = -1.0);

    const std::vector<LmiConstraint>& constraints() const { return constraints_; }

    // Objective: minimize c' * coords.
    void set_objective(Vector c) { objective_ = std::move(c); }
    void add_trace_objective(int var_id);  // adds tr(var) to the objective
    const Vector& objective() const { return objective_; }
    bool has_objective() const { return objective_.size() > 0; }

    double objective_value(const Assignment& assignment) const;

private:
    VariableSet vars_;
    std::vector<LmiConstraint> constraints_;
    Vector objective_;
};

}  // namespace robh2
