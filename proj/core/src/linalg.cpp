#include "twistk/linalg.hpp"

#include <algorithm>

namespace twistk {

SparseVec SparseVec::unit(int d, int i, const Scalar& c) {
    SparseVec v(d);
    if (!c.is_zero()) v.terms.emplace_back(i, c);
    return v;
}

const Scalar* SparseVec::at(int i) const {
    auto it = std::lower_bound(terms.begin(), terms.end(), i,
                               [](const auto& t, int k) { return t.first < k; });
    if (it != terms.end() && it->first == i) return &it->second;
    return nullptr;
}

void SparseVec::add_term(int i, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = std::lower_bound(terms.begin(), terms.end(), i,
                               [](const auto& t, int k) { return t.first < k; });
    if (it != terms.end() && it->first == i) {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    } else {
        terms.insert(it, {i, c});
    }
}

void SparseVec::add_scaled(const SparseVec& o, const Scalar& c) {
    if (c.is_zero() || o.terms.empty()) return;
    std::vector<std::pair<int, Scalar>> out;
    out.reserve(terms.size() + o.terms.size());
    size_t i = 0, j = 0;
    while (i < terms.size() && j < o.terms.size()) {
        if (terms[i].first < o.terms[j].first) {
            out.push_back(std::move(terms[i++]));
        } else if (terms[i].first > o.terms[j].first) {
            out.emplace_back(o.terms[j].first, o.terms[j].second * c);
            ++j;
        } else {
            Scalar s = terms[i].second + o.terms[j].second * c;
            if (!s.is_zero()) out.emplace_back(terms[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    for (; i < terms.size(); ++i) out.push_back(std::move(terms[i]));
    for (; j < o.terms.size(); ++j) out.emplace_back(o.terms[j].first, o.terms[j].second * c);
    terms = std::move(out);
}

void SparseVec::scale(const Scalar& c) {
    if (c.is_zero()) {
        terms.clear();
        return;
    }
    for (auto& t : terms) t.second *= c;
}

void SparseVec::negate() {
    for (auto& t : terms) t.second = -t.second;
}

std::vector<Scalar> SparseVec::dense(const FieldSpec& f) const {
    std::vector<Scalar> v(dim, Scalar::zero(f));
    for (const auto& [i, c] : terms) v[i] = c;
    return v;
}

ExactMatrix::ExactMatrix(int rows, int cols, FieldSpec f)
    : rows_(rows), cols_(cols), field_(std::move(f)),
      a_(static_cast<size_t>(rows) * cols, Scalar::zero(field_)) {
    if (rows < 0 || cols < 0) throw StructuralError("negative matrix dimension");
}

ExactMatrix ExactMatrix::identity(int n, const FieldSpec& f) {
    ExactMatrix m(n, n, f);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<SparseVec>& rows, int cols, const FieldSpec& f) {
    ExactMatrix m(static_cast<int>(rows.size()), cols, f);
    for (int r = 0; r < m.rows(); ++r)
        for (const auto& [i, c] : rows[r].terms) m.at(r, i) = c;
    return m;
}

SparseVec ExactMatrix::row_sparse(int r) const {
    SparseVec v(cols_);
    for (int c = 0; c < cols_; ++c)
        if (!at(r, c).is_zero()) v.terms.emplace_back(c, at(r, c));
    return v;
}

SparseVec ExactMatrix::col_sparse(int c) const {
    SparseVec v(rows_);
    for (int r = 0; r < rows_; ++r)
        if (!at(r, c).is_zero()) v.terms.emplace_back(r, at(r, c));
    return v;
}

ExactMatrix ExactMatrix::mul(const ExactMatrix& o) const {
    if (cols_ != o.rows_ || field_ != o.field_) throw StructuralError("matrix product shape mismatch");
    ExactMatrix r(rows_, o.cols_, field_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Scalar& aik = at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) {
                if (o.at(k, j).is_zero()) continue;
                r.at(i, j) += aik * o.at(k, j);
            }
        }
    return r;
}

std::vector<Scalar> ExactMatrix::mul_vec(const std::vector<Scalar>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw StructuralError("matrix-vector shape mismatch");
    std::vector<Scalar> r(rows_, Scalar::zero(field_));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] += at(i, j) * v[j];
    return r;
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix r(cols_, rows_, field_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool ExactMatrix::operator==(const ExactMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || field_ != o.field_) return false;
    for (size_t i = 0; i < a_.size(); ++i)
        if (!(a_[i] == o.a_[i])) return false;
    return true;
}

int SparseRref::lead(const SparseVec& v) const {
    if (v.terms.empty()) return -1;
    if (prefer_last_) {
        // largest index strictly below the pivot limit
        auto it = std::lower_bound(v.terms.begin(), v.terms.end(), limit_,
                                   [](const auto& t, int k) { return t.first < k; });
        if (it == v.terms.begin()) return -1;
        return std::prev(it)->first;
    }
    return v.terms.front().first < limit_ ? v.terms.front().first : -1;
}

int SparseRref::insert(SparseVec row) {
    finalized_ = false;
    while (true) {
        int l = lead(row);
        if (l < 0) {
            if (!row.terms.empty()) residuals_.push_back(std::move(row));
            return -1;
        }
        auto it = by_pivot_.find(l);
        if (it == by_pivot_.end()) {
            const Scalar* c = row.at(l);
            Scalar inv = c->inv();
            row.scale(inv);
            by_pivot_.emplace(l, std::move(row));
            return l;
        }
        Scalar c = *row.at(l);
        row.add_scaled(it->second, -c);
    }
}

void SparseRref::finalize() {
    if (finalized_) return;
    // With prefer_first pivots each row's support sits at columns >= its pivot,
    // so a single descending pass fully reduces; ascending for prefer_last.
    auto reduce_row = [&](SparseVec& r, int own) {
        bool again = true;
        while (again) {
            again = false;
            for (const auto& [i, c] : r.terms) {
                if (i == own || i >= limit_) continue;
                auto it = by_pivot_.find(i);
                if (it == by_pivot_.end()) continue;
                Scalar coeff = c;
                r.add_scaled(it->second, -coeff);
                again = true;
                break;
            }
        }
    };
    if (prefer_last_) {
        for (auto it = by_pivot_.begin(); it != by_pivot_.end(); ++it) reduce_row(it->second, it->first);
    } else {
        for (auto it = by_pivot_.rbegin(); it != by_pivot_.rend(); ++it) reduce_row(it->second, it->first);
    }
    finalized_ = true;
}

SparseVec SparseRref::reduce(const SparseVec& v) const {
    SparseVec r = v;
    bool again = true;
    while (again) {
        again = false;
        for (const auto& [i, c] : r.terms) {
            if (i >= limit_) continue;
            auto it = by_pivot_.find(i);
            if (it == by_pivot_.end()) continue;
            Scalar coeff = c;
            r.add_scaled(it->second, -coeff);
            again = true;
            break;
        }
    }
    return r;
}

RankKernel rank_and_kernel(const ExactMatrix& M) {
    const FieldSpec& f = M.field();
    SparseRref rref(M.cols(), /*prefer_last=*/false);
    for (int r = 0; r < M.rows(); ++r) rref.insert(M.row_sparse(r));
    rref.finalize();

    RankKernel out;
    out.rank = rref.rank();
    std::vector<int> free_cols;
    for (int c = 0; c < M.cols(); ++c)
        if (!rref.has_pivot(c)) free_cols.push_back(c);

    // standard kernel vectors, one per free column
    std::vector<SparseVec> kernel_rows;
    for (int fc : free_cols) {
        SparseVec v(M.cols());
        v.add_term(fc, Scalar::one(f));
        for (const auto& [pc, row] : rref.rows()) {
            const Scalar* c = row.at(fc);
            if (c) v.add_term(pc, -*c);
        }
        kernel_rows.push_back(std::move(v));
    }
    // canonicalize: reduced echelon form of the kernel space
    SparseRref krref(M.cols(), false);
    for (auto& v : kernel_rows) krref.insert(std::move(v));
    krref.finalize();
    for (const auto& [pc, row] : krref.rows()) out.kernel.push_back(row.dense(f));
    return out;
}

std::vector<std::vector<Scalar>> complement_basis(const std::vector<std::vector<Scalar>>& subspace,
                                                  int ambient_dim, const std::vector<int>& priority) {
    if (static_cast<int>(priority.size()) != ambient_dim)
        throw StructuralError("priority list must enumerate all coordinates");
    {
        std::vector<bool> seen(ambient_dim, false);
        for (int i : priority) {
            if (i < 0 || i >= ambient_dim || seen[i]) throw StructuralError("priority list is not a permutation");
            seen[i] = true;
        }
    }
    FieldSpec f = FieldSpec::Q();
    if (!subspace.empty()) {
        if (static_cast<int>(subspace[0].size()) != ambient_dim)
            throw StructuralError("subspace vector length differs from ambient dimension");
        f = subspace[0][0].field();
    }
    SparseRref rref(ambient_dim, false);
    for (const auto& v : subspace) {
        if (static_cast<int>(v.size()) != ambient_dim)
            throw StructuralError("subspace vector length differs from ambient dimension");
        SparseVec s(ambient_dim);
        for (int i = 0; i < ambient_dim; ++i)
            if (!v[i].is_zero()) s.terms.emplace_back(i, v[i]);
        if (rref.insert(std::move(s)) < 0) throw StructuralError("dependent input to complement_basis");
    }
    std::vector<std::vector<Scalar>> chosen;
    for (int i : priority) {
        SparseVec e = SparseVec::unit(ambient_dim, i, Scalar::one(f));
        if (rref.insert(std::move(e)) >= 0) {
            std::vector<Scalar> u(ambient_dim, Scalar::zero(f));
            u[i] = Scalar::one(f);
            chosen.push_back(std::move(u));
        }
    }
    return chosen;
}

void LeftFactorSystem::add_equation(const SparseVec& d_col, const SparseVec& r_col) {
    SparseVec row(t_dim_ + q_dim_);
    row.terms.reserve(d_col.terms.size() + r_col.terms.size());
    for (const auto& [i, c] : d_col.terms) row.terms.emplace_back(i, c);
    for (const auto& [i, c] : r_col.terms) row.terms.emplace_back(t_dim_ + i, c);
    rref_.insert(std::move(row));
}

LeftFactorSystem::Result LeftFactorSystem::solve() {
    Result res;
    if (!rref_.residuals().empty()) {
        res.consistent = false;
        res.rank = rref_.rank();
        res.corank = t_dim_ - res.rank;
        return res;
    }
    rref_.finalize();
    res.consistent = true;
    res.rank = rref_.rank();
    res.corank = t_dim_ - res.rank;
    for (const auto& [pc, row] : rref_.rows()) {
        SparseVec col(q_dim_);
        SparseVec tail(t_dim_);
        for (const auto& [i, c] : row.terms) {
            if (i >= t_dim_)
                col.terms.emplace_back(i - t_dim_, c);
            else if (i != pc)
                tail.terms.emplace_back(i, c);
        }
        res.f_columns.emplace(pc, std::move(col));
        if (!tail.is_zero()) res.row_complement.emplace(pc, std::move(tail));
    }
    for (int c = 0; c < t_dim_; ++c)
        if (!rref_.has_pivot(c)) res.complement_cols.push_back(c);
    return res;
}

SolveOutcome solve_left_factor(const ExactMatrix& D, const ExactMatrix& R) {
    if (D.cols() != R.cols()) throw StructuralError("solve_left_factor: domain dimension mismatch");
    if (D.field() != R.field()) throw StructuralError("solve_left_factor: field mismatch");
    const FieldSpec& f = D.field();
    LeftFactorSystem sys(D.rows(), R.rows(), f);
    for (int k = 0; k < D.cols(); ++k) sys.add_equation(D.col_sparse(k), R.col_sparse(k));
    auto res = sys.solve();

    SolveOutcome out;
    out.consistent = res.consistent;
    out.kernel_of_D = rank_and_kernel(D).kernel;
    out.corank = res.corank;
    out.image_complement = res.complement_cols;
    if (res.consistent) {
        out.particular = ExactMatrix(R.rows(), D.rows(), f);
        for (const auto& [pc, col] : res.f_columns)
            for (const auto& [i, c] : col.terms) out.particular.at(i, pc) = c;
    }
    return out;
}

std::optional<ExactMatrix> try_inverse(const ExactMatrix& M) {
    if (M.rows() != M.cols()) throw StructuralError("try_inverse: matrix not square");
    const int n = M.rows();
    const FieldSpec& f = M.field();
    // rows [M | I], reduce pivots over the left half
    SparseRref rref(n, /*prefer_last=*/false);
    for (int r = 0; r < n; ++r) {
        SparseVec row(2 * n);
        for (int c = 0; c < n; ++c)
            if (!M.at(r, c).is_zero()) row.terms.emplace_back(c, M.at(r, c));
        row.terms.emplace_back(n + r, Scalar::one(f));
        rref.insert(std::move(row));
    }
    if (rref.rank() != n) return std::nullopt;
    rref.finalize();
    ExactMatrix inv(n, n, f);
    for (const auto& [pc, row] : rref.rows())
        for (const auto& [i, c] : row.terms)
            if (i >= n) inv.at(pc, i - n) = c;
    return inv;
}

}  // namespace twistk
