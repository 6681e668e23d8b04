#pragma once

#include <functional>
#include <variant>

#include "twistk/twisting.hpp"

namespace twistk {

// Existence/uniqueness data for one step of the twisting map extension problem.
struct ExtensionReport {
    int degree = 0;             // the degree n+1 being reached
    long long delta_rank = 0;   // rank of delta_{n+1}
    long long delta_corank = 0; // codimension of im delta in (B_+ (x) A_+)_{n+1}
    bool exists = false;
    bool unique = false;
    long long freedom_dim = 0;  // delta_corank * dim (A (x) B)_{n+1}
    std::optional<TwistingMap> extended;  // table to degree n+1, present iff exists
};

// tau followed by the corner projections onto A resp. B.
struct ProjectionPair {
    SparseVec tA, tB;
};
ProjectionPair projections(const TwistingMap& tw, int j, int i, int bi, int ai);

// The full delta / R matrices of the extension problem at degree bound+1, in
// the documented tensor bases: columns enumerate (B_+ A_+ A_+)_{n+1} followed
// by (B_+ B_+ A_+)_{n+1}; delta rows enumerate (B_+ A_+)_{n+1} (DomainBasis
// order) and R rows the Kunneth basis of (A (x) B)_{n+1}. Dense; intended for
// desk-scale fixtures.
struct DeltaR {
    ExactMatrix delta;
    ExactMatrix R;
};
DeltaR build_delta_R(const TwistingMap& tw);

// One extension step n -> n+1. Verifies the precondition (tw twisting to its
// bound) and re-verifies the returned table in degree n+1.
ExtensionReport extend_one_degree(const TwistingMap& tw);

enum class ExtendPolicy { require_unique, take_canonical };

struct StuckInfo {
    int degree = 0;
    enum class Reason { inconsistent, ambiguous } reason = Reason::inconsistent;
    std::string str() const;
};

struct ExtendOutcome {
    std::optional<TwistingMap> table;  // present iff extension reached the target
    std::optional<StuckInfo> stuck;
    std::vector<ExtensionReport> per_degree;  // summaries (tables omitted)
};

// Iterates extend_one_degree from the seed up to degree N and re-verifies the
// result. Under take_canonical, non-unique steps proceed with the canonical
// particular solution.
ExtendOutcome extend_to_degree(const TwistingMap& seed, int N, ExtendPolicy policy);

// unique(n) = (delta_n is surjective), for n = 3..bound, where delta_n is built
// from tw restricted to degree n-1. Precondition: tw twisting to its bound.
std::map<int, bool> uep_profile(const TwistingMap& tw);

// Extends a separable degree-2 seed on free algebras to degree N; by the
// separable extension and uniqueness theorems every step must be uniquely
// solvable, so any stuck outcome raises an internal consistency error.
// t1 columns are b-major over B_1 (x) A_1 with values in (A (x) B)_2.
TwistingMap separable_seed_extend(const AlgebraPtr& A, const AlgebraPtr& B,
                                  const std::vector<SparseVec>& t1, const SeparableSplit& split, int N);

struct ContainmentFailure {
    int degree = 0;
    std::string witness;  // offending spanning element, e.g. "d (x) x^2"
};

using InducedOutcome = std::variant<TwistingMap, ContainmentFailure>;

// Pushes a twisting map on free algebras to the quotients by the given
// relation lists, after verifying tau(B (x) I + J (x) A) <= I (x) B + A (x) J
// degreewise on a spanning set. The returned map is re-verified.
InducedOutcome induced_on_quotient(const TwistingMap& tw_free, const std::vector<NcPoly>& idealA,
                                   const std::vector<NcPoly>& idealB);

// Lift-perturbation hook: lifts of quotient basis classes may be shifted by
// ideal elements (splitting independence is exercised in tests through this).
using LiftPerturbation = std::function<NcPoly(int degree, int basis_index)>;
InducedOutcome induced_on_quotient_with_lifts(const TwistingMap& tw_free, const AlgebraPtr& Aq,
                                              const AlgebraPtr& Bq, const LiftPerturbation& liftA,
                                              const LiftPerturbation& liftB);

// The simpler extension conditions: the two twisting identities restricted to
// (B (x) A (x) A_1) and (B_1 (x) B (x) A) at the table's top degree. By the
// extension theorem, together with twisting to bound-1 they imply twisting to
// the full bound (cross-checked against verify_twisting_to_degree in tests).
Verdict check_simpler_conditions(const TwistingMap& tw);

}  // namespace twistk
