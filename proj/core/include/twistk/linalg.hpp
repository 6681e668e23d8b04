#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "twistk/field.hpp"

namespace twistk {

// Sparse coordinate vector: terms sorted by index, zero coefficients never stored.
struct SparseVec {
    int dim = 0;
    std::vector<std::pair<int, Scalar>> terms;

    SparseVec() = default;
    explicit SparseVec(int d) : dim(d) {}
    static SparseVec unit(int d, int i, const Scalar& c);

    bool is_zero() const { return terms.empty(); }
    int nnz() const { return static_cast<int>(terms.size()); }
    const Scalar* at(int i) const;  // nullptr when absent

    void add_term(int i, const Scalar& c);  // accumulate one coefficient
    void add_scaled(const SparseVec& o, const Scalar& c);
    void scale(const Scalar& c);
    void negate();

    // first/last populated index (-1 when zero)
    int lead_first() const { return terms.empty() ? -1 : terms.front().first; }
    int lead_last() const { return terms.empty() ? -1 : terms.back().first; }

    std::vector<Scalar> dense(const FieldSpec& f) const;
    bool operator==(const SparseVec& o) const { return dim == o.dim && terms == o.terms; }
};

// Dense exact matrix over one field. Row-major.
class ExactMatrix {
  public:
    ExactMatrix() : rows_(0), cols_(0), field_(FieldSpec::Q()) {}
    ExactMatrix(int rows, int cols, FieldSpec f);
    static ExactMatrix identity(int n, const FieldSpec& f);
    static ExactMatrix from_rows(const std::vector<SparseVec>& rows, int cols, const FieldSpec& f);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const FieldSpec& field() const { return field_; }

    const Scalar& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }
    Scalar& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    void set(int r, int c, Scalar v) { at(r, c) = std::move(v); }

    SparseVec row_sparse(int r) const;
    SparseVec col_sparse(int c) const;

    ExactMatrix mul(const ExactMatrix& o) const;
    std::vector<Scalar> mul_vec(const std::vector<Scalar>& v) const;
    ExactMatrix transpose() const;
    bool operator==(const ExactMatrix& o) const;

  private:
    int rows_, cols_;
    FieldSpec field_;
    std::vector<Scalar> a_;
};

// Incremental sparse row echelon. Pivots are restricted to columns < pivot_limit;
// support beyond the limit rides along (used for augmented right-hand sides).
// pivot mode: prefer_first picks the smallest populated column as leading entry,
// prefer_last the largest (the latter realizes greedy normal-word selection).
class SparseRref {
  public:
    SparseRref(int pivot_limit, bool prefer_last) : limit_(pivot_limit), prefer_last_(prefer_last) {}

    // Reduces the row against current pivots. If it acquires a fresh pivot it is
    // stored and the pivot column returned. A row whose pivot-range support
    // vanishes ends up in residuals() (if nonzero beyond the limit) or is dropped.
    int insert(SparseVec row);

    // Full back-substitution: every pivot column is eliminated from every other
    // stored row and rows are scaled to leading coefficient 1. Canonical RREF.
    void finalize();

    int rank() const { return static_cast<int>(by_pivot_.size()); }
    const std::map<int, SparseVec>& rows() const { return by_pivot_; }
    const std::vector<SparseVec>& residuals() const { return residuals_; }
    bool has_pivot(int c) const { return by_pivot_.count(c) != 0; }

    // Residue of v modulo the row space (pivot columns eliminated).
    SparseVec reduce(const SparseVec& v) const;

  private:
    int limit_;
    bool prefer_last_;
    bool finalized_ = false;
    std::map<int, SparseVec> by_pivot_;
    std::vector<SparseVec> residuals_;

    int lead(const SparseVec& v) const;
};

struct RankKernel {
    int rank = 0;
    // kernel basis in reduced row echelon form (rows), canonical
    std::vector<std::vector<Scalar>> kernel;
};

// rank + canonical reduced-echelon kernel basis of M (as column-vector kernel).
RankKernel rank_and_kernel(const ExactMatrix& M);

// Extends an independent family to a basis by admitting standard basis vectors
// greedily in the supplied priority order.
std::vector<std::vector<Scalar>> complement_basis(const std::vector<std::vector<Scalar>>& subspace,
                                                  int ambient_dim, const std::vector<int>& priority);

// Shared engine for the left-factor problem F * D = R, consumed column by
// column: each equation is one domain element's pair (column of D, column of R).
// The canonical particular solution is supported on the leftmost-pivot columns
// of im D and vanishes on the complementary standard basis vectors.
class LeftFactorSystem {
  public:
    LeftFactorSystem(int t_dim, int q_dim, FieldSpec f)
        : t_dim_(t_dim), q_dim_(q_dim), field_(std::move(f)), rref_(t_dim, /*prefer_last=*/false) {}

    void add_equation(const SparseVec& d_col, const SparseVec& r_col);

    struct Result {
        bool consistent = true;
        int rank = 0;    // rank of D
        int corank = 0;  // t_dim - rank
        // particular solution: column c of F for each pivot column c of im D;
        // all other columns of F are zero.
        std::map<int, SparseVec> f_columns;
        std::vector<int> complement_cols;  // canonical complement of im D
        // the reduced-row tails: e_p + row_complement[p] lies in im D, so the
        // full solution family is F(e_c) = g_c, F(e_p) = f_columns[p] -
        // sum_c row_complement[p][c] g_c over free vectors g_c
        std::map<int, SparseVec> row_complement;
    };
    Result solve();

  private:
    int t_dim_, q_dim_;
    FieldSpec field_;
    SparseRref rref_;
};

struct SolveOutcome {
    bool consistent = false;
    ExactMatrix particular;                        // q x n with particular * D = R
    std::vector<std::vector<Scalar>> kernel_of_D;  // right kernel of D (canonical)
    std::vector<int> image_complement;             // canonical complement of im D in k^n
    int corank = 0;                                // dim of that complement
};

// Solve F * D = R for F (D: n x m, R: q x m). Inconsistent iff some kernel
// vector of D is not annihilated by R.
SolveOutcome solve_left_factor(const ExactMatrix& D, const ExactMatrix& R);

// Inverse of a square matrix; nullopt when singular.
std::optional<ExactMatrix> try_inverse(const ExactMatrix& M);

}  // namespace twistk
