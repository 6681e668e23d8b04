#pragma once

#include "twistk/extension.hpp"

namespace twistk {

// Presentation of the twisted tensor product inside T(A_1 (+) B_1):
// component relations plus the tau-relations b a - tau(b (x) a) lifted through
// the normal-word sections.
struct ProductPresentation {
    Presentation combined;            // all relations through degree N
    std::vector<NcPoly> relA, relB;   // lifted component relations
    std::map<int, std::vector<NcPoly>> tau_relations;  // per degree
    std::map<int, int> minimal_degrees;
    std::vector<long long> dims;      // quotient dimensions 0..N (equals Kunneth)
};

ProductPresentation twisted_product_presentation(const TwistingMap& tw, int N);

struct TauQuadratic {
    bool quadratic = false;
    int witness_degree = 0;  // smallest degree with excess relations, when not quadratic
};

// True iff the tau-relation ideal is generated in degree 2 (together with the
// component relations), decided through degree N by Hilbert comparison of the
// degree-2-generated quotient against the Kunneth dimensions.
TauQuadratic tau_quadratic_check(const TwistingMap& tw, int N);

// Quadratic dual: relations are the annihilator of the relation span under the
// pairing <u (x) v, u* (x) v*> = delta delta.
Presentation quadratic_dual(const Presentation& p);

// Numerical Koszulity pre-filter: coefficients of h_A(t) * h_{A^!}(-t) equal
// (1, 0, ..., 0) through degree N.
bool hilbert_koszul_identity(const Presentation& p, int N);

struct TorTable {
    int i_max = 0, j_max = 0;
    std::map<std::pair<int, int>, long long> entries;  // zero entries omitted

    long long at(int i, int j) const;
    bool diagonal_through(int j_max) const;  // no nonzero entry off the diagonal
};

// Bigraded Tor_{i,j}(k,k) of the truncated algebra via the reduced bar complex
// (exact ranks of the bar differentials). Exponential in j; intended for small
// fixtures and as an independent oracle.
TorTable bar_tor_table(const AlgebraPtr& alg, int i_max, int j_max);

// The same table via a minimal graded free resolution built by iterated
// degreewise syzygy computation. Polynomial in the graded dimensions; the
// default engine behind koszul_verdict.
TorTable minimal_tor_table(const AlgebraPtr& alg, int i_max, int j_max);

struct KoszulVerdict {
    enum class Kind { koszul_to_degree, not_koszul, not_quadratic };
    Kind kind = Kind::koszul_to_degree;
    int degree = 0;                       // N for koszul_to_degree, witness degree for not_quadratic
    std::pair<int, int> witness = {0, 0}; // off-diagonal bidegree for not_koszul
    std::optional<TorTable> tor;          // present unless not_quadratic
    std::string str() const;
};

// Desk-scale Koszulity certificate: never an unconditional theorem, always
// "to degree N".
KoszulVerdict koszul_verdict(const AlgebraPtr& alg, int N);

struct SeparableHypotheses {
    bool condition1 = true;  // pi_{A_0 A_2 B_1} (1 (x) tau)(tau_B (x) 1)(B_1 (x) I_2) = 0
    bool condition2 = true;  // pi_{A_1 B_2 B_0} (tau (x) 1)(1 (x) tau_A)(J_2 (x) A_1) = 0
    std::string witness1, witness2;
};

// The two side conditions of the separable Koszul theorem, evaluated exactly on
// bases of B_1 (x) I_2 and J_2 (x) A_1. Components must be quadratic; the table
// must reach degree 3.
SeparableHypotheses separable_hypotheses_check(const TwistingMap& tw, const SeparableSplit& split);

}  // namespace twistk
