#pragma once

#include <optional>

#include "twistk/algebra.hpp"

namespace twistk {

// Basis bookkeeping for (A (x) B)_n with A-degree descending: the block
// A_n (x) B_0 comes first, A_0 (x) B_n last. Index within a block is
// a-index major, b-index minor.
class KunnethBasis {
  public:
    KunnethBasis(const TruncatedAlgebra& A, const TruncatedAlgebra& B, int n);

    int dim() const { return dim_; }
    int degree() const { return n_; }
    int index(int p, int ai, int bi) const;  // a in A_p, b in B_{n-p}
    struct Entry {
        int p, q, ai, bi;
    };
    Entry decode(int idx) const;

  private:
    int n_, dim_;
    std::vector<int> offsets_;  // offset of block with A-degree p = n - position
    std::vector<int> adims_, bdims_;
};

// Basis bookkeeping for (B_+ (x) A_+)_n: blocks keyed (j, i) with j = deg b
// ascending, b-index major within a block.
class DomainBasis {
  public:
    DomainBasis(const TruncatedAlgebra& A, const TruncatedAlgebra& B, int n);

    int dim() const { return dim_; }
    int degree() const { return n_; }
    int index(int j, int i, int bi, int ai) const;
    struct Entry {
        int j, i, bi, ai;
    };
    Entry decode(int idx) const;

  private:
    int n_, dim_;
    std::vector<int> offsets_;  // per j = 1..n-1
    std::vector<int> adims_, bdims_;
};

// Declared splitting B_1 = B_1' (+) B_1'' by generator indices (coordinate
// subspaces).
struct SeparableSplit {
    std::vector<int> primed;  // generator indices spanning B_1'

    std::vector<int> unprimed(int b1_dim) const;
    void validate(int b1_dim) const;
};

struct ClassificationReport {
    bool one_sided_toward_B = false;  // tau(B_+ (x) A_+) avoids A_0 (x) B_+
    bool one_sided_toward_A = false;  // tau(B_+ (x) A_+) avoids A_+ (x) B_0
    bool pure = false;
    bool strongly_graded = false;
    std::optional<bool> separable;  // relative to a supplied split
};

// Graded twisting-map table: blocks tau_{(j,i)} : B_j (x) A_i -> (A (x) B)_{i+j}
// for 1 <= i, j with i + j <= bound. Unital behavior (tau(1 (x) a) = a (x) 1,
// tau(b (x) 1) = 1 (x) b) is a rule, never stored. Columns are sparse vectors
// over the Kunneth basis of the target degree.
class TwistingMap {
  public:
    TwistingMap(AlgebraPtr A, AlgebraPtr B, int bound);

    const AlgebraPtr& algA() const { return A_; }
    const AlgebraPtr& algB() const { return B_; }
    int bound() const { return bound_; }
    const FieldSpec& field() const { return A_->field(); }

    void set_block_column(int j, int i, int bi, int ai, SparseVec col);
    const SparseVec& block_column(int j, int i, int bi, int ai) const;

    // tau applied to one basis tensor b (x) a, unital cases included
    SparseVec apply_basis(int j, int i, int bi, int ai) const;
    // tau applied to a coordinate vector on B_j (x) A_i (b-major indexing)
    SparseVec apply(int j, int i, const SparseVec& v) const;

    // degree-preserving corner projections of tau(b (x) a)
    SparseVec tA(int j, int i, int bi, int ai) const;  // component in A_{i+j} (x) B_0
    SparseVec tB(int j, int i, int bi, int ai) const;  // component in A_0 (x) B_{i+j}

    ExactMatrix block_matrix(int j, int i) const;  // dense view, rows = Kunneth coords
    TwistingMap restricted(int new_bound) const;
    bool equal_blocks(const TwistingMap& o) const;

    const KunnethBasis& kunneth(int n) const;

  private:
    AlgebraPtr A_, B_;
    int bound_;
    std::map<std::pair<int, int>, std::vector<SparseVec>> blocks_;
    std::vector<KunnethBasis> kunneth_;

    void check_block(int j, int i) const;
};

struct VerifyFailure {
    int degree = 0;
    // which Remark identity failed: 1 = tau(1 (x) mu_A), 2 = tau(mu_B (x) 1)
    int identity = 0;
    // witness basis triple: identity 1 carries (b, a, a'), identity 2 (b, b', a)
    int j = 0, i = 0, k = 0;      // degrees of the three tensor factors
    int x0 = 0, x1 = 0, x2 = 0;   // basis indices
    std::string describe(const TwistingMap& tw) const;
};

struct Verdict {
    bool ok = true;
    std::optional<VerifyFailure> failure;
};

// Checks the two twisting identities on every positively-graded basis triple in
// total degrees <= n; reports the smallest failing degree with a witness.
Verdict verify_twisting_to_degree(const TwistingMap& tw, int n);

// Identity checks at exactly total degree n (callers guarantee degrees < n).
Verdict verify_twisting_in_degree(const TwistingMap& tw, int n);

ClassificationReport classify(const TwistingMap& tw,
                              const std::optional<SeparableSplit>& split = std::nullopt);

// Conjugated table (alpha (x) beta) tau (beta^{-1} (x) alpha^{-1}) for graded
// automorphisms given by their degree-1 matrices. Relation preservation is
// verified; failure is a structural error.
TwistingMap conjugate(const TwistingMap& tw, const ExactMatrix& autA, const ExactMatrix& autB);

}  // namespace twistk
