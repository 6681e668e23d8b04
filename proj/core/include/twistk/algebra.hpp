#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "twistk/linalg.hpp"

namespace twistk {

// A word in the generators; degree equals length (every generator has degree 1).
using Word = std::vector<uint8_t>;

std::string word_str(const Word& w, const std::vector<std::string>& gens);

// Homogeneous noncommutative polynomial: all words share one length.
struct NcPoly {
    int degree = 0;
    std::vector<std::pair<Word, Scalar>> terms;  // sorted by word, no zeros

    static NcPoly from_terms(int degree, std::vector<std::pair<Word, Scalar>> terms);
    bool is_zero() const { return terms.empty(); }
    std::string str(const std::vector<std::string>& gens) const;
};

struct GeneratorSet {
    std::vector<std::string> names;  // all of degree 1, distinct

    int count() const { return static_cast<int>(names.size()); }
    int index(const std::string& name) const;  // -1 when absent
    void validate() const;
};

// Generators plus homogeneous relations of degree >= 2 presenting a connected
// one-generated algebra T(V)/<relations>.
struct Presentation {
    GeneratorSet gens;
    std::vector<NcPoly> relations;
    FieldSpec field = FieldSpec::Q();

    void validate() const;
    bool is_quadratic() const;  // no relations of degree >= 3
};

Presentation free_presentation(std::vector<std::string> names, FieldSpec f);

class TruncatedAlgebra;
using AlgebraPtr = std::shared_ptr<const TruncatedAlgebra>;

// Degreewise model of T(V)/<relations> up to the bound: normal-word bases,
// normal forms, and multiplication. Normal words in each degree are the
// complement of the ideal component chosen greedily in degree-lexicographic
// order (generator order as listed). Immutable after construction.
class TruncatedAlgebra : public std::enable_shared_from_this<TruncatedAlgebra> {
  public:
    static AlgebraPtr truncate(Presentation p, int bound);

    const Presentation& presentation() const { return pres_; }
    const FieldSpec& field() const { return pres_.field; }
    int bound() const { return bound_; }
    int generator_count() const { return pres_.gens.count(); }
    bool is_free() const { return pres_.relations.empty(); }

    int dim(int n) const;
    long long ideal_dim(int n) const;
    std::vector<long long> hilbert() const;  // dims for degrees 0..bound

    const std::vector<Word>& basis(int n) const;
    int basis_index(int n, const Word& w) const;  // -1 if w is not a normal word

    // normal form of a word / polynomial as coordinates in its degree's basis
    SparseVec normal_form(const Word& w) const;
    SparseVec normal_form(const NcPoly& p) const;

    // letter actions A_n -> A_{n+1}
    const SparseVec& lmul_letter(int g, int n, int basis_idx) const;
    const SparseVec& rmul_letter(int g, int n, int basis_idx) const;
    SparseVec lmul_letter_vec(int g, int n, const SparseVec& v) const;
    SparseVec rmul_letter_vec(int g, int n, const SparseVec& v) const;

    // mu_{i,j}: products of coordinate vectors / basis elements
    SparseVec multiply(int i, const SparseVec& u, int j, const SparseVec& v) const;
    const SparseVec& multiply_basis(int i, int ai, int j, int aj) const;

  private:
    Presentation pres_;
    int bound_;
    std::vector<std::vector<Word>> basis_;             // per degree
    std::vector<std::map<Word, int>> index_;           // word -> basis index
    std::vector<long long> ideal_dim_;                 // per degree
    std::vector<std::vector<std::vector<SparseVec>>> lmul_;  // [n][g][idx] : A_n -> A_{n+1}
    std::vector<std::vector<std::vector<SparseVec>>> rmul_;

    mutable std::mutex mul_mutex_;
    mutable std::map<std::pair<int, int>, std::vector<SparseVec>> mul_cache_;

    TruncatedAlgebra() = default;
    void check_degree(int n) const;
};

// Count of minimal generators of <relations> by degree through N
// (degrees with count zero omitted).
std::map<int, int> minimal_generator_degrees(const Presentation& p, int N);

// Presentation keeping exactly the degree-2 relation span, as a canonical
// reduced-echelon basis.
Presentation quadratic_part(const Presentation& p);

// Degree-n component of the two-sided ideal <relations> as canonical RREF rows
// over the word basis of T_n. Intended for small inputs (tests, automorphism
// checks); throws when g^n is impractically large.
std::vector<SparseVec> ideal_space(const Presentation& p, int n);

}  // namespace twistk
