#include "twistk/twisting.hpp"

#include <algorithm>

namespace twistk {

KunnethBasis::KunnethBasis(const TruncatedAlgebra& A, const TruncatedAlgebra& B, int n) : n_(n) {
    if (n > A.bound() || n > B.bound()) throw BoundError("Kunneth degree beyond truncation bound");
    adims_.resize(n + 1);
    bdims_.resize(n + 1);
    for (int d = 0; d <= n; ++d) {
        adims_[d] = A.dim(d);
        bdims_[d] = B.dim(d);
    }
    offsets_.resize(n + 2);
    int off = 0;
    for (int k = 0; k <= n; ++k) {  // block with A-degree p = n - k
        offsets_[k] = off;
        off += adims_[n - k] * bdims_[k];
    }
    offsets_[n + 1] = off;
    dim_ = off;
}

int KunnethBasis::index(int p, int ai, int bi) const {
    int k = n_ - p;
    return offsets_[k] + ai * bdims_[k] + bi;
}

KunnethBasis::Entry KunnethBasis::decode(int idx) const {
    int k = static_cast<int>(std::upper_bound(offsets_.begin(), offsets_.begin() + n_ + 2, idx) -
                             offsets_.begin()) -
            1;
    int rel = idx - offsets_[k];
    Entry e;
    e.p = n_ - k;
    e.q = k;
    e.ai = rel / bdims_[k];
    e.bi = rel % bdims_[k];
    return e;
}

DomainBasis::DomainBasis(const TruncatedAlgebra& A, const TruncatedAlgebra& B, int n) : n_(n) {
    adims_.resize(n + 1);
    bdims_.resize(n + 1);
    for (int d = 0; d <= n; ++d) {
        adims_[d] = A.dim(d);
        bdims_[d] = B.dim(d);
    }
    offsets_.assign(n + 1, 0);
    int off = 0;
    for (int j = 1; j <= n - 1; ++j) {
        offsets_[j] = off;
        off += bdims_[j] * adims_[n - j];
    }
    dim_ = off;
}

int DomainBasis::index(int j, int i, int bi, int ai) const {
    return offsets_[j] + bi * adims_[i] + ai;
}

DomainBasis::Entry DomainBasis::decode(int idx) const {
    int j = 1;
    while (j + 1 <= n_ - 1 && offsets_[j + 1] <= idx) ++j;
    int rel = idx - offsets_[j];
    Entry e;
    e.j = j;
    e.i = n_ - j;
    e.bi = rel / adims_[e.i];
    e.ai = rel % adims_[e.i];
    return e;
}

std::vector<int> SeparableSplit::unprimed(int b1_dim) const {
    std::vector<bool> in(b1_dim, false);
    for (int i : primed) in[i] = true;
    std::vector<int> out;
    for (int i = 0; i < b1_dim; ++i)
        if (!in[i]) out.push_back(i);
    return out;
}

void SeparableSplit::validate(int b1_dim) const {
    std::vector<bool> seen(b1_dim, false);
    for (int i : primed) {
        if (i < 0 || i >= b1_dim) throw StructuralError("separable split index out of range");
        if (seen[i]) throw StructuralError("separable split index repeated");
        seen[i] = true;
    }
}

TwistingMap::TwistingMap(AlgebraPtr A, AlgebraPtr B, int bound) : A_(std::move(A)), B_(std::move(B)), bound_(bound) {
    if (A_->field() != B_->field()) throw StructuralError("twisting map components over different fields");
    if (bound_ < 2) throw PreconditionError("twisting map bound must be at least 2");
    if (bound_ > A_->bound() || bound_ > B_->bound())
        throw BoundError("twisting map bound exceeds component truncation bound");
    for (int n = 0; n <= bound_; ++n) kunneth_.emplace_back(*A_, *B_, n);
    for (int j = 1; j < bound_; ++j)
        for (int i = 1; i + j <= bound_; ++i) {
            std::vector<SparseVec> cols(static_cast<size_t>(B_->dim(j)) * A_->dim(i),
                                        SparseVec(kunneth_[i + j].dim()));
            blocks_.emplace(std::make_pair(j, i), std::move(cols));
        }
}

void TwistingMap::check_block(int j, int i) const {
    if (j < 1 || i < 1 || i + j > bound_) throw BoundError("twisting block out of range");
}

void TwistingMap::set_block_column(int j, int i, int bi, int ai, SparseVec col) {
    check_block(j, i);
    if (col.dim != kunneth_[i + j].dim()) throw StructuralError("twisting column has wrong target dimension");
    blocks_.at({j, i})[static_cast<size_t>(bi) * A_->dim(i) + ai] = std::move(col);
}

const SparseVec& TwistingMap::block_column(int j, int i, int bi, int ai) const {
    check_block(j, i);
    return blocks_.at({j, i})[static_cast<size_t>(bi) * A_->dim(i) + ai];
}

SparseVec TwistingMap::apply_basis(int j, int i, int bi, int ai) const {
    if (i < 0 || j < 0 || i + j > bound_) throw BoundError("tau applied outside table bound");
    if (j == 0 && i == 0) return SparseVec::unit(1, 0, Scalar::one(field()));
    if (j == 0) return SparseVec::unit(kunneth_[i].dim(), kunneth_[i].index(i, ai, 0), Scalar::one(field()));
    if (i == 0) return SparseVec::unit(kunneth_[j].dim(), kunneth_[j].index(0, 0, bi), Scalar::one(field()));
    return block_column(j, i, bi, ai);
}

SparseVec TwistingMap::apply(int j, int i, const SparseVec& v) const {
    SparseVec out(kunneth_[i + j].dim());
    const int da = (i == 0) ? 1 : A_->dim(i);
    for (const auto& [idx, c] : v.terms) out.add_scaled(apply_basis(j, i, idx / da, idx % da), c);
    return out;
}

SparseVec TwistingMap::tA(int j, int i, int bi, int ai) const {
    SparseVec out(A_->dim(i + j));
    const auto& kb = kunneth_[i + j];
    for (const auto& [idx, c] : apply_basis(j, i, bi, ai).terms) {
        auto e = kb.decode(idx);
        if (e.q == 0) out.add_term(e.ai, c);
    }
    return out;
}

SparseVec TwistingMap::tB(int j, int i, int bi, int ai) const {
    SparseVec out(B_->dim(i + j));
    const auto& kb = kunneth_[i + j];
    for (const auto& [idx, c] : apply_basis(j, i, bi, ai).terms) {
        auto e = kb.decode(idx);
        if (e.p == 0) out.add_term(e.bi, c);
    }
    return out;
}

ExactMatrix TwistingMap::block_matrix(int j, int i) const {
    check_block(j, i);
    ExactMatrix m(kunneth_[i + j].dim(), B_->dim(j) * A_->dim(i), field());
    for (int bi = 0; bi < B_->dim(j); ++bi)
        for (int ai = 0; ai < A_->dim(i); ++ai) {
            int col = bi * A_->dim(i) + ai;
            for (const auto& [r, c] : block_column(j, i, bi, ai).terms) m.at(r, col) = c;
        }
    return m;
}

TwistingMap TwistingMap::restricted(int new_bound) const {
    if (new_bound > bound_) throw BoundError("cannot restrict to a larger bound");
    TwistingMap out(A_, B_, new_bound);
    for (const auto& [key, cols] : blocks_)
        if (key.first + key.second <= new_bound) out.blocks_[key] = cols;
    return out;
}

bool TwistingMap::equal_blocks(const TwistingMap& o) const {
    if (bound_ != o.bound_) return false;
    return blocks_ == o.blocks_;
}

const KunnethBasis& TwistingMap::kunneth(int n) const {
    if (n < 0 || n > bound_) throw BoundError("Kunneth degree out of range");
    return kunneth_[n];
}

std::string VerifyFailure::describe(const TwistingMap& tw) const {
    const auto& ga = tw.algA()->presentation().gens.names;
    const auto& gb = tw.algB()->presentation().gens.names;
    auto aw = [&](int d, int idx) { return word_str(tw.algA()->basis(d)[idx], ga); };
    auto bw = [&](int d, int idx) { return word_str(tw.algB()->basis(d)[idx], gb); };
    std::string triple = identity == 1
                             ? bw(j, x0) + " (x) " + aw(i, x1) + " (x) " + aw(k, x2)
                             : bw(j, x0) + " (x) " + bw(i, x1) + " (x) " + aw(k, x2);
    return "identity " + std::to_string(identity) + " fails in degree " + std::to_string(degree) +
           " at " + triple;
}

namespace {

// (mu_A (x) 1_B)(1_A (x) tau)(tau(b (x) a) (x) a''): the right side of the
// first Remark identity, evaluated on one basis triple.
SparseVec rhs_identity1(const TwistingMap& tw, int j, int i, int k, int bi, int ai, int ki) {
    const auto& A = *tw.algA();
    const int deg = i + j + k;
    const auto& kb_out = tw.kunneth(deg);
    SparseVec out(kb_out.dim());
    const auto& mid = tw.apply_basis(j, i, bi, ai);
    const auto& kb_mid = tw.kunneth(i + j);
    for (const auto& [idx, c] : mid.terms) {
        auto e = kb_mid.decode(idx);
        SparseVec inner = tw.apply_basis(e.q, k, e.bi, ki);
        const auto& kb_in = tw.kunneth(e.q + k);
        for (const auto& [idx2, c2] : inner.terms) {
            auto e2 = kb_in.decode(idx2);
            const SparseVec& prod = A.multiply_basis(e.p, e.ai, e2.p, e2.ai);
            Scalar cc = c * c2;
            for (const auto& [ar, c3] : prod.terms)
                out.add_term(kb_out.index(e.p + e2.p, ar, e2.bi), cc * c3);
        }
    }
    return out;
}

// (1_A (x) mu_B)(tau (x) 1_B)(1_B (x) tau)(b' (x) b (x) a): right side of the
// second Remark identity.
SparseVec rhs_identity2(const TwistingMap& tw, int jp, int j, int i, int bpi, int bi, int ai) {
    const auto& B = *tw.algB();
    const int deg = i + j + jp;
    const auto& kb_out = tw.kunneth(deg);
    SparseVec out(kb_out.dim());
    const auto& inner = tw.apply_basis(j, i, bi, ai);
    const auto& kb_in = tw.kunneth(i + j);
    for (const auto& [idx, c] : inner.terms) {
        auto e = kb_in.decode(idx);
        SparseVec mid = tw.apply_basis(jp, e.p, bpi, e.ai);
        const auto& kb_mid = tw.kunneth(jp + e.p);
        for (const auto& [idx2, c2] : mid.terms) {
            auto e2 = kb_mid.decode(idx2);
            const SparseVec& prod = B.multiply_basis(e2.q, e2.bi, e.q, e.bi);
            Scalar cc = c * c2;
            for (const auto& [br, c3] : prod.terms)
                out.add_term(kb_out.index(e2.p, e2.ai, br), cc * c3);
        }
    }
    return out;
}

}  // namespace

Verdict verify_twisting_in_degree(const TwistingMap& tw, int deg) {
    if (deg > tw.bound()) throw BoundError("verification degree exceeds table bound");
    const auto& A = *tw.algA();
    const auto& B = *tw.algB();
    // identity 1 on (B_+ (x) A_+ (x) A_+)_deg
    for (int j = 1; j <= deg - 2; ++j)
        for (int i = 1; i <= deg - j - 1; ++i) {
            int k = deg - j - i;
            for (int bi = 0; bi < B.dim(j); ++bi)
                for (int ai = 0; ai < A.dim(i); ++ai)
                    for (int ki = 0; ki < A.dim(k); ++ki) {
                        SparseVec lhs = tw.apply(j, i + k, [&] {
                            const SparseVec& prod = A.multiply_basis(i, ai, k, ki);
                            SparseVec v(B.dim(j) * A.dim(i + k));
                            for (const auto& [t, c] : prod.terms) v.add_term(bi * A.dim(i + k) + t, c);
                            return v;
                        }());
                        SparseVec rhs = rhs_identity1(tw, j, i, k, bi, ai, ki);
                        if (!(lhs == rhs)) {
                            Verdict v;
                            v.ok = false;
                            v.failure = VerifyFailure{deg, 1, j, i, k, bi, ai, ki};
                            return v;
                        }
                    }
        }
    // identity 2 on (B_+ (x) B_+ (x) A_+)_deg
    for (int jp = 1; jp <= deg - 2; ++jp)
        for (int j = 1; j <= deg - jp - 1; ++j) {
            int i = deg - jp - j;
            for (int bpi = 0; bpi < B.dim(jp); ++bpi)
                for (int bi = 0; bi < B.dim(j); ++bi)
                    for (int ai = 0; ai < A.dim(i); ++ai) {
                        SparseVec lhs = tw.apply(jp + j, i, [&] {
                            const SparseVec& prod = B.multiply_basis(jp, bpi, j, bi);
                            SparseVec v(B.dim(jp + j) * A.dim(i));
                            for (const auto& [t, c] : prod.terms) v.add_term(t * A.dim(i) + ai, c);
                            return v;
                        }());
                        SparseVec rhs = rhs_identity2(tw, jp, j, i, bpi, bi, ai);
                        if (!(lhs == rhs)) {
                            Verdict v;
                            v.ok = false;
                            v.failure = VerifyFailure{deg, 2, jp, j, i, bpi, bi, ai};
                            return v;
                        }
                    }
        }
    return Verdict{};
}

Verdict verify_twisting_to_degree(const TwistingMap& tw, int n) {
    if (n > tw.bound()) throw BoundError("verification degree exceeds table bound");
    for (int deg = 3; deg <= n; ++deg) {
        Verdict v = verify_twisting_in_degree(tw, deg);
        if (!v.ok) return v;
    }
    return Verdict{};
}

ClassificationReport classify(const TwistingMap& tw, const std::optional<SeparableSplit>& split) {
    const auto& A = *tw.algA();
    const auto& B = *tw.algB();
    ClassificationReport rep;
    rep.one_sided_toward_B = rep.one_sided_toward_A = rep.pure = rep.strongly_graded = true;
    for (int j = 1; j < tw.bound(); ++j)
        for (int i = 1; i + j <= tw.bound(); ++i) {
            const auto& kb = tw.kunneth(i + j);
            for (int bi = 0; bi < B.dim(j); ++bi)
                for (int ai = 0; ai < A.dim(i); ++ai)
                    for (const auto& [idx, c] : tw.block_column(j, i, bi, ai).terms) {
                        auto e = kb.decode(idx);
                        if (e.p == 0) rep.one_sided_toward_B = false;
                        if (e.q == 0) rep.one_sided_toward_A = false;
                        if (e.p == 0 || e.q == 0) rep.pure = false;
                        if (e.p != i || e.q != j) rep.strongly_graded = false;
                    }
        }
    if (split) {
        split->validate(B.dim(1));
        std::vector<bool> is_primed(B.dim(1), false);
        for (int i : split->primed) is_primed[i] = true;
        auto unprimed = split->unprimed(B.dim(1));

        // span of mu_B(B_1 (x) B_1'') inside B_2
        SparseRref span(B.dim(2), /*prefer_last=*/false);
        for (int b = 0; b < B.dim(1); ++b)
            for (int d : unprimed) span.insert(B.multiply_basis(1, b, 1, d));
        span.finalize();

        bool ok = true;
        const auto& kb2 = tw.kunneth(2);
        for (int bi = 0; bi < B.dim(1) && ok; ++bi) {
            for (int ai = 0; ai < A.dim(1) && ok; ++ai) {
                SparseVec corner(B.dim(2));
                for (const auto& [idx, c] : tw.block_column(1, 1, bi, ai).terms) {
                    auto e = kb2.decode(idx);
                    if (is_primed[bi]) {
                        // allowed: A_2 (x) B_0 or A_1 (x) B_1'
                        if (e.p == 2) continue;
                        if (e.p == 1 && is_primed[e.bi]) continue;
                        ok = false;
                        break;
                    }
                    // unprimed: allowed A_1 (x) B_1'' or A_0 (x) mu_B(B_1 (x) B_1'')
                    if (e.p == 1 && !is_primed[e.bi]) continue;
                    if (e.p == 0) {
                        corner.add_term(e.bi, c);
                        continue;
                    }
                    ok = false;
                    break;
                }
                if (ok && !is_primed[bi] && !span.reduce(corner).is_zero()) ok = false;
            }
        }
        rep.separable = ok;
    }
    return rep;
}

namespace {

// degree-d matrices of the graded algebra endomorphism induced by a degree-1
// matrix (columns = images of generators), as columns over the normal basis
std::vector<std::vector<SparseVec>> induced_degree_maps(const TruncatedAlgebra& A, const ExactMatrix& m,
                                                        int bound) {
    std::vector<std::vector<SparseVec>> out(bound + 1);
    out[0] = {SparseVec::unit(1, 0, Scalar::one(A.field()))};
    for (int d = 1; d <= bound; ++d) {
        out[d].resize(A.dim(d));
        for (int idx = 0; idx < A.dim(d); ++idx) {
            const Word& w = A.basis(d)[idx];
            SparseVec v = m.col_sparse(w[0]);
            for (size_t k = 1; k < w.size(); ++k)
                v = A.multiply(static_cast<int>(k), v, 1, m.col_sparse(w[k]));
            out[d][idx] = std::move(v);
        }
    }
    return out;
}

void check_automorphism(const TruncatedAlgebra& A, const ExactMatrix& m) {
    if (m.rows() != A.dim(1) || m.cols() != A.dim(1))
        throw StructuralError("automorphism matrix has wrong shape");
    // relations must map into the ideal: the transformed relation has zero normal form
    for (const auto& r : A.presentation().relations) {
        if (r.degree > A.bound()) throw BoundError("relation degree beyond truncation bound");
        SparseVec img(A.dim(r.degree));
        for (const auto& [w, c] : r.terms) {
            SparseVec v = m.col_sparse(w[0]);
            for (size_t k = 1; k < w.size(); ++k)
                v = A.multiply(static_cast<int>(k), v, 1, m.col_sparse(w[k]));
            img.add_scaled(v, c);
        }
        if (!img.is_zero())
            throw StructuralError("matrix does not preserve the relation ideal: not a graded automorphism");
    }
}

}  // namespace

TwistingMap conjugate(const TwistingMap& tw, const ExactMatrix& autA, const ExactMatrix& autB) {
    const auto& A = *tw.algA();
    const auto& B = *tw.algB();
    auto invA = try_inverse(autA);
    auto invB = try_inverse(autB);
    if (!invA || !invB) throw StructuralError("automorphism matrix is singular");
    check_automorphism(A, autA);
    check_automorphism(B, autB);
    check_automorphism(A, *invA);
    check_automorphism(B, *invB);

    auto mapsA = induced_degree_maps(A, autA, tw.bound());
    auto mapsB = induced_degree_maps(B, autB, tw.bound());
    auto mapsAinv = induced_degree_maps(A, *invA, tw.bound());
    auto mapsBinv = induced_degree_maps(B, *invB, tw.bound());

    TwistingMap out(tw.algA(), tw.algB(), tw.bound());
    for (int j = 1; j < tw.bound(); ++j)
        for (int i = 1; i + j <= tw.bound(); ++i) {
            const auto& kb = tw.kunneth(i + j);
            for (int bi = 0; bi < B.dim(j); ++bi)
                for (int ai = 0; ai < A.dim(i); ++ai) {
                    SparseVec acc(kb.dim());
                    for (const auto& [b1, cb] : mapsBinv[j][bi].terms)
                        for (const auto& [a1, ca] : mapsAinv[i][ai].terms) {
                            Scalar c0 = cb * ca;
                            for (const auto& [idx, c] : tw.block_column(j, i, b1, a1).terms) {
                                auto e = kb.decode(idx);
                                const SparseVec& ia = mapsA[e.p][e.ai];
                                const SparseVec& ib = mapsB[e.q][e.bi];
                                Scalar c1 = c0 * c;
                                for (const auto& [a2, ca2] : ia.terms)
                                    for (const auto& [b2, cb2] : ib.terms)
                                        acc.add_term(kb.index(e.p, a2, b2), c1 * ca2 * cb2);
                            }
                        }
                    out.set_block_column(j, i, bi, ai, std::move(acc));
                }
        }
    return out;
}

}  // namespace twistk
