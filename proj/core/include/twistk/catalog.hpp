#pragma once

#include "twistk/koszul.hpp"

namespace twistk {

struct UnivariatePolynomial {
    FieldSpec field = FieldSpec::Q();
    std::vector<Scalar> coeffs;  // ascending degree, no trailing zero

    static UnivariatePolynomial from_coeffs(FieldSpec f, std::vector<Scalar> coeffs);
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }  // -1 for zero
    bool is_zero() const { return coeffs.empty(); }
    Scalar eval(const Scalar& t) const;
    UnivariatePolynomial operator+(const UnivariatePolynomial& o) const;
    UnivariatePolynomial operator-(const UnivariatePolynomial& o) const;
    UnivariatePolynomial operator*(const UnivariatePolynomial& o) const;
    bool operator==(const UnivariatePolynomial& o) const { return field == o.field && coeffs == o.coeffs; }
    std::string str(const std::string& var = "t") const;
};

// S_1 = S_2 = 1, S_n = S_{n-1} - t S_{n-2}; the recursion result is checked
// against the closed binomial form and a mismatch is an internal error.
UnivariatePolynomial s_poly(int n, const FieldSpec& f = FieldSpec::Q());

// S_{i+1} S_{i+j} = t^i S_j + S_{i+j+1} S_i
bool s_product_identity(int i, int j, const FieldSpec& f = FieldSpec::Q());
// S_n^2 - t^{n-1} = S_{n+1} S_{n-1}
bool s_square_identity(int n, const FieldSpec& f = FieldSpec::Q());
// both identities for all applicable index combinations with i + j <= max_total
bool s_identities_hold(int max_total, const FieldSpec& f = FieldSpec::Q());

struct AbcSeed {
    Scalar a, b, c;
};

// Degree-2 table tau(y (x) x) = a x^2 (x) 1 + b x (x) y + c 1 (x) y^2 between
// free algebras on one generator each, truncated to degree N.
TwistingMap abc_seed_table(const AbcSeed& seed, int N);

// Coefficient s_i^d: the 1 (x) y^d component of tau(y^i (x) x^{d-i}).
Scalar abc_s_coefficient(const TwistingMap& tw, int i, int d);

struct B0Result {
    std::optional<TwistingMap> table;  // present iff no obstruction
    int obstruction_degree = 0;        // least n with S_n(c) = 0 otherwise
};

// Closed-form table tau(y^j (x) x^i) = S_{i+j}^{-1}(S_i x^{i+j} (x) 1 +
// c^i S_j 1 (x) y^{i+j}) when no S_n(c) vanishes for n <= N; the least
// vanishing degree otherwise.
B0Result b0_closed_form(const Scalar& c, int N);

// Scaling x by a square root of a c^{-1} equalizes the outer coefficients of a
// (a, 0, c) seed; the common value is returned (c' with c'^2 = ac).
std::optional<Scalar> b0_normalized_coefficient(const Scalar& a, const Scalar& c);

struct Fixture {
    std::string name;
    AlgebraPtr A, B;
    TwistingMap table;                   // full table for the ex* fixtures, seed for abc/b0
    bool is_seed = false;                // table is a degree-2 seed to be extended
    std::optional<SeparableSplit> split; // declared split where one exists
};

// Stable fixture identifiers: ex5_3, ex7_1, ex7_1_induced, ex7_2, ex7_4, plus
// parametric abc(a,b,c), b0(c), ex7_2(lambda,mu).
const std::vector<std::string>& fixture_names();
bool is_fixture_name(const std::string& name);
Fixture make_fixture(const std::string& name, const FieldSpec& f = FieldSpec::Q(), int N = 8);

// Verify the ex7_2 two-parameter family over a grid; returns (lambda, mu,
// passes verification to degree 4) triples in row-major grid order.
struct CensusEntry {
    Scalar lambda, mu;
    bool twisting = false;
};
std::vector<CensusEntry> ex7_2_census(const std::vector<Scalar>& lambda_grid,
                                      const std::vector<Scalar>& mu_grid);

}  // namespace twistk
