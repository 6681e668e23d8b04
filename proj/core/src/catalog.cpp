#include "twistk/catalog.hpp"

#include <algorithm>

namespace twistk {

UnivariatePolynomial UnivariatePolynomial::from_coeffs(FieldSpec f, std::vector<Scalar> coeffs) {
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    UnivariatePolynomial p;
    p.field = std::move(f);
    p.coeffs = std::move(coeffs);
    return p;
}

Scalar UnivariatePolynomial::eval(const Scalar& t) const {
    Scalar acc = Scalar::zero(field);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
    return acc;
}

UnivariatePolynomial UnivariatePolynomial::operator+(const UnivariatePolynomial& o) const {
    std::vector<Scalar> c(std::max(coeffs.size(), o.coeffs.size()), Scalar::zero(field));
    for (size_t i = 0; i < coeffs.size(); ++i) c[i] += coeffs[i];
    for (size_t i = 0; i < o.coeffs.size(); ++i) c[i] += o.coeffs[i];
    return from_coeffs(field, std::move(c));
}

UnivariatePolynomial UnivariatePolynomial::operator-(const UnivariatePolynomial& o) const {
    std::vector<Scalar> c(std::max(coeffs.size(), o.coeffs.size()), Scalar::zero(field));
    for (size_t i = 0; i < coeffs.size(); ++i) c[i] += coeffs[i];
    for (size_t i = 0; i < o.coeffs.size(); ++i) c[i] -= o.coeffs[i];
    return from_coeffs(field, std::move(c));
}

UnivariatePolynomial UnivariatePolynomial::operator*(const UnivariatePolynomial& o) const {
    if (is_zero() || o.is_zero()) return from_coeffs(field, {});
    std::vector<Scalar> c(coeffs.size() + o.coeffs.size() - 1, Scalar::zero(field));
    for (size_t i = 0; i < coeffs.size(); ++i)
        for (size_t j = 0; j < o.coeffs.size(); ++j) c[i + j] += coeffs[i] * o.coeffs[j];
    return from_coeffs(field, std::move(c));
}

std::string UnivariatePolynomial::str(const std::string& var) const {
    if (coeffs.empty()) return "0";
    std::string out;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].is_zero()) continue;
        std::string cs = coeffs[i].str();
        bool neg = !cs.empty() && cs[0] == '-';
        if (neg) cs = cs.substr(1);
        out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
        if (i == 0)
            out += cs;
        else
            out += (cs == "1" ? "" : cs + "*") + var + (i == 1 ? "" : "^" + std::to_string(i));
    }
    return out.empty() ? "0" : out;
}

UnivariatePolynomial s_poly(int n, const FieldSpec& f) {
    if (n < 1) throw PreconditionError("s_poly is defined for n >= 1");
    const Scalar one = Scalar::one(f);
    UnivariatePolynomial t = UnivariatePolynomial::from_coeffs(f, {Scalar::zero(f), one});
    UnivariatePolynomial prev = UnivariatePolynomial::from_coeffs(f, {one});  // S_1
    UnivariatePolynomial cur = prev;                                          // S_2
    if (n >= 3) {
        for (int k = 3; k <= n; ++k) {
            UnivariatePolynomial next = cur - t * prev;
            prev = std::move(cur);
            cur = std::move(next);
        }
    }
    // closed form: sum_j (-1)^j C(n-1-j, j) t^j
    {
        int r = (n % 2 == 0) ? (n - 2) / 2 : (n - 1) / 2;
        std::vector<Scalar> c(r + 1, Scalar::zero(f));
        for (int j = 0; j <= r; ++j) {
            mpz_class bin;
            mpz_bin_uiui(bin.get_mpz_t(), static_cast<unsigned long>(n - 1 - j),
                         static_cast<unsigned long>(j));
            Scalar v = f.is_rational() ? Scalar::from_mpq(mpq_class(bin))
                                       : *Scalar::parse(f, bin.get_str());
            c[j] = (j % 2 == 0) ? v : -v;
        }
        auto closed = UnivariatePolynomial::from_coeffs(f, std::move(c));
        if (!(closed == cur))
            throw InternalCheckError("S_" + std::to_string(n) +
                                     ": recursion and closed binomial form disagree");
    }
    return cur;
}

bool s_product_identity(int i, int j, const FieldSpec& f) {
    if (i < 1 || j < 1) throw PreconditionError("identity needs i, j >= 1");
    UnivariatePolynomial ti = UnivariatePolynomial::from_coeffs(f, {Scalar::one(f)});
    {
        std::vector<Scalar> c(i + 1, Scalar::zero(f));
        c[i] = Scalar::one(f);
        ti = UnivariatePolynomial::from_coeffs(f, std::move(c));
    }
    auto lhs = s_poly(i + 1, f) * s_poly(i + j, f);
    auto rhs = ti * s_poly(j, f) + s_poly(i + j + 1, f) * s_poly(i, f);
    return lhs == rhs;
}

bool s_square_identity(int n, const FieldSpec& f) {
    if (n < 2) throw PreconditionError("identity needs n >= 2");
    std::vector<Scalar> c(n, Scalar::zero(f));
    c[n - 1] = Scalar::one(f);
    auto tpow = UnivariatePolynomial::from_coeffs(f, std::move(c));
    auto lhs = s_poly(n, f) * s_poly(n, f) - tpow;
    auto rhs = s_poly(n + 1, f) * s_poly(n - 1, f);
    return lhs == rhs;
}

bool s_identities_hold(int max_total, const FieldSpec& f) {
    for (int i = 1; i < max_total; ++i)
        for (int j = 1; i + j <= max_total; ++j)
            if (!s_product_identity(i, j, f)) return false;
    for (int n = 2; n + 1 <= max_total; ++n)
        if (!s_square_identity(n, f)) return false;
    return true;
}

TwistingMap abc_seed_table(const AbcSeed& seed, int N) {
    const FieldSpec f = seed.a.field();
    auto A = TruncatedAlgebra::truncate(free_presentation({"x"}, f), N);
    auto B = TruncatedAlgebra::truncate(free_presentation({"y"}, f), N);
    TwistingMap tw(A, B, 2);
    const auto& kb = tw.kunneth(2);
    SparseVec col(kb.dim());
    col.add_term(kb.index(2, 0, 0), seed.a);
    col.add_term(kb.index(1, 0, 0), seed.b);
    col.add_term(kb.index(0, 0, 0), seed.c);
    tw.set_block_column(1, 1, 0, 0, std::move(col));
    return tw;
}

Scalar abc_s_coefficient(const TwistingMap& tw, int i, int d) {
    if (i < 1 || d <= i) throw PreconditionError("abc_s_coefficient needs 1 <= i < d");
    const auto& kb = tw.kunneth(d);
    const SparseVec& col = tw.block_column(i, d - i, 0, 0);
    const Scalar* c = col.at(kb.index(0, 0, 0));
    return c ? *c : Scalar::zero(tw.field());
}

B0Result b0_closed_form(const Scalar& c, int N) {
    const FieldSpec f = c.field();
    std::vector<Scalar> s(N + 2, Scalar::zero(f));
    for (int n = 1; n <= N + 1; ++n) s[n] = s_poly(n, f).eval(c);
    for (int n = 1; n <= N; ++n)
        if (s[n].is_zero()) return B0Result{std::nullopt, n};

    auto A = TruncatedAlgebra::truncate(free_presentation({"x"}, f), N);
    auto B = TruncatedAlgebra::truncate(free_presentation({"y"}, f), N);
    TwistingMap tw(A, B, N);
    for (int j = 1; j < N; ++j)
        for (int i = 1; i + j <= N; ++i) {
            const auto& kb = tw.kunneth(i + j);
            // c^i
            Scalar cpow = Scalar::one(f);
            for (int k = 0; k < i; ++k) cpow *= c;
            Scalar inv = s[i + j].inv();
            SparseVec col(kb.dim());
            col.add_term(kb.index(i + j, 0, 0), inv * s[i]);
            col.add_term(kb.index(0, 0, 0), inv * cpow * s[j]);
            tw.set_block_column(j, i, 0, 0, std::move(col));
        }
    Verdict v = verify_twisting_to_degree(tw, N);
    if (!v.ok)
        throw InternalCheckError("b0 closed form fails twisting verification: " + v.failure->describe(tw));
    return B0Result{std::move(tw), 0};
}

std::optional<Scalar> b0_normalized_coefficient(const Scalar& a, const Scalar& c) {
    if (a.is_zero() || c.is_zero()) return std::nullopt;
    auto lambda = field_sqrt(a / c);
    if (!lambda) return std::nullopt;
    return c * *lambda;
}

const std::vector<std::string>& fixture_names() {
    static const std::vector<std::string> names = {"ex5_3", "ex7_1", "ex7_1_induced", "ex7_2", "ex7_4"};
    return names;
}

namespace {

// "abc(1,-1,1)" -> {"abc", {"1","-1","1"}}
std::pair<std::string, std::vector<std::string>> split_name(const std::string& s) {
    auto open = s.find('(');
    if (open == std::string::npos) return {s, {}};
    if (s.back() != ')') throw StructuralError("malformed fixture name: " + s);
    std::string base = s.substr(0, open);
    std::vector<std::string> args;
    std::string cur;
    for (size_t i = open + 1; i + 1 < s.size(); ++i) {
        if (s[i] == ',') {
            args.push_back(cur);
            cur.clear();
        } else if (!isspace(static_cast<unsigned char>(s[i]))) {
            cur += s[i];
        }
    }
    args.push_back(cur);
    return {base, args};
}

Scalar parse_scalar_or_throw(const FieldSpec& f, const std::string& s) {
    auto v = Scalar::parse(f, s);
    if (!v) throw StructuralError("bad scalar in fixture name: " + s);
    return *v;
}

TwistingMap make_ex5_3(const FieldSpec& f, int N) {
    auto A = TruncatedAlgebra::truncate(free_presentation({"x"}, f), N);
    auto B = TruncatedAlgebra::truncate(free_presentation({"y"}, f), N);
    TwistingMap tw(A, B, N);
    const Scalar one = Scalar::one(f);
    for (int j = 1; j < N; ++j)
        for (int i = 1; i + j <= N; ++i) {
            const auto& kb = tw.kunneth(i + j);
            SparseVec col(kb.dim());
            if (j % 2 == 0 || i % 2 == 0) {
                col.add_term(kb.index(i, 0, 0), one);
            } else {
                col.add_term(kb.index(i + 1, 0, 0), one);
                col.add_term(kb.index(i, 0, 0), -one);
                col.add_term(kb.index(i - 1, 0, 0), one);
            }
            tw.set_block_column(j, i, 0, 0, std::move(col));
        }
    return tw;
}

TwistingMap make_ex7_2(const FieldSpec& f, int N, const Scalar& lambda, const Scalar& mu) {
    if (N < 4) throw PreconditionError("ex7_2 needs degree at least 4");
    Presentation pa = free_presentation({"x"}, f);
    pa.relations.push_back(NcPoly::from_terms(3, {{Word{0, 0, 0}, Scalar::one(f)}}));
    Presentation pb = free_presentation({"y"}, f);
    pb.relations.push_back(NcPoly::from_terms(3, {{Word{0, 0, 0}, Scalar::one(f)}}));
    auto A = TruncatedAlgebra::truncate(pa, N);
    auto B = TruncatedAlgebra::truncate(pb, N);
    TwistingMap tw(A, B, N);
    const Scalar one = Scalar::one(f);
    {
        const auto& kb = tw.kunneth(2);
        SparseVec col(kb.dim());
        col.add_term(kb.index(2, 0, 0), one);
        col.add_term(kb.index(1, 0, 0), -one);
        col.add_term(kb.index(0, 0, 0), one);
        tw.set_block_column(1, 1, 0, 0, std::move(col));
    }
    {
        const auto& kb = tw.kunneth(3);
        SparseVec col(kb.dim());  // tau(y^2 (x) x) = lambda x^2 y + mu x y^2
        col.add_term(kb.index(2, 0, 0), lambda);
        col.add_term(kb.index(1, 0, 0), mu);
        tw.set_block_column(2, 1, 0, 0, std::move(col));
        SparseVec col2(kb.dim());  // tau(y (x) x^2) = (lambda+1) x^2 y + (mu-1) x y^2
        col2.add_term(kb.index(2, 0, 0), lambda + one);
        col2.add_term(kb.index(1, 0, 0), mu - one);
        tw.set_block_column(1, 2, 0, 0, std::move(col2));
    }
    {
        const auto& kb = tw.kunneth(4);
        SparseVec col(kb.dim());  // tau(y^2 (x) x^2) = (lambda + mu^2) x^2 y^2
        col.add_term(kb.index(2, 0, 0), lambda + mu * mu);
        tw.set_block_column(2, 2, 0, 0, std::move(col));
    }
    return tw;
}

Fixture make_ex7_1(const FieldSpec& f, int N) {
    auto A = TruncatedAlgebra::truncate(free_presentation({"x", "y"}, f), N);
    auto B = TruncatedAlgebra::truncate(free_presentation({"d", "u"}, f), N);
    const Scalar one = Scalar::one(f);
    // seed columns, b-major over B_1 (x) A_1; d = index 0, u = index 1
    KunnethBasis kb(*A, *B, 2);
    auto col = [&](std::initializer_list<std::tuple<int, int, int>> terms) {
        SparseVec v(kb.dim());
        for (auto [p, ai, bi] : terms) v.add_term(kb.index(p, ai, bi), one);
        return v;
    };
    std::vector<SparseVec> t1(4, SparseVec(kb.dim()));
    // tau(d (x) x) = x (x) d + 1 (x) d^2   (d^2 is B_2 basis word "dd")
    int dd = B->basis_index(2, Word{0, 0});
    int xx = A->basis_index(2, Word{0, 0});
    int yy = A->basis_index(2, Word{1, 1});
    t1[0 * 2 + 0] = col({{1, 0, 0}, {0, 0, dd}});
    // tau(d (x) y) = y (x) d + 1 (x) d^2
    t1[0 * 2 + 1] = col({{1, 1, 0}, {0, 0, dd}});
    // tau(u (x) x) = x (x) u + x^2 (x) 1
    t1[1 * 2 + 0] = col({{1, 0, 1}, {2, xx, 0}});
    // tau(u (x) y) = y (x) u + y^2 (x) 1
    t1[1 * 2 + 1] = col({{1, 1, 1}, {2, yy, 0}});

    SeparableSplit split{{1}};  // B_1' = span{u}
    TwistingMap table = separable_seed_extend(A, B, t1, split, N);
    return Fixture{"ex7_1", A, B, std::move(table), false, split};
}

Fixture make_ex7_4(const FieldSpec& f, int N) {
    auto A = TruncatedAlgebra::truncate(free_presentation({"x"}, f), N);
    auto B = TruncatedAlgebra::truncate(free_presentation({"d", "u"}, f), N);
    const Scalar one = Scalar::one(f);
    KunnethBasis kb(*A, *B, 2);
    int dd = B->basis_index(2, Word{0, 0});
    std::vector<SparseVec> t1(2, SparseVec(kb.dim()));
    {
        SparseVec v(kb.dim());  // tau(d (x) x) = x (x) d + 1 (x) d^2
        v.add_term(kb.index(1, 0, 0), one);
        v.add_term(kb.index(0, 0, dd), one);
        t1[0] = std::move(v);
    }
    {
        SparseVec v(kb.dim());  // tau(u (x) x) = x^2 (x) 1 + x (x) u
        v.add_term(kb.index(2, 0, 0), one);
        v.add_term(kb.index(1, 0, 1), one);
        t1[1] = std::move(v);
    }
    SeparableSplit split{{1}};
    TwistingMap table = separable_seed_extend(A, B, t1, split, N);
    return Fixture{"ex7_4", A, B, std::move(table), false, split};
}

}  // namespace

bool is_fixture_name(const std::string& name) {
    auto [base, args] = split_name(name);
    if (base == "abc") return args.size() == 3;
    if (base == "b0") return args.size() == 1;
    if (base == "ex7_2") return args.empty() || args.size() == 2;
    for (const auto& n : fixture_names())
        if (n == base) return args.empty();
    return false;
}

Fixture make_fixture(const std::string& name, const FieldSpec& f, int N) {
    auto [base, args] = split_name(name);
    if (base == "ex5_3") {
        TwistingMap table = make_ex5_3(f, N);
        AlgebraPtr A = table.algA(), B = table.algB();
        return Fixture{base, A, B, std::move(table), false, std::nullopt};
    }
    if (base == "ex7_1") return make_ex7_1(f, N);
    if (base == "ex7_1_induced") {
        Fixture free_fx = make_ex7_1(f, N);
        std::vector<NcPoly> idealA = {NcPoly::from_terms(
            2, {{Word{0, 1}, Scalar::one(f)}, {Word{1, 0}, -Scalar::one(f)}})};  // xy - yx
        auto outcome = induced_on_quotient(free_fx.table, idealA, {});
        if (std::holds_alternative<ContainmentFailure>(outcome))
            throw InternalCheckError("ex7_1 induced map unexpectedly failed containment");
        TwistingMap table = std::get<TwistingMap>(std::move(outcome));
        AlgebraPtr A = table.algA(), B = table.algB();
        return Fixture{"ex7_1_induced", A, B, std::move(table), false, free_fx.split};
    }
    if (base == "ex7_2") {
        Scalar lambda = args.size() == 2 ? parse_scalar_or_throw(f, args[0]) : -Scalar::one(f);
        Scalar mu = args.size() == 2 ? parse_scalar_or_throw(f, args[1]) : Scalar::zero(f);
        TwistingMap table = make_ex7_2(f, std::max(N, 4), lambda, mu);
        AlgebraPtr A = table.algA(), B = table.algB();
        return Fixture{args.empty() ? base : name, A, B, std::move(table), false, std::nullopt};
    }
    if (base == "ex7_4") return make_ex7_4(f, N);
    if (base == "abc" && args.size() == 3) {
        AbcSeed seed{parse_scalar_or_throw(f, args[0]), parse_scalar_or_throw(f, args[1]),
                     parse_scalar_or_throw(f, args[2])};
        TwistingMap table = abc_seed_table(seed, N);
        AlgebraPtr A = table.algA(), B = table.algB();
        return Fixture{name, A, B, std::move(table), true, std::nullopt};
    }
    if (base == "b0" && args.size() == 1) {
        AbcSeed seed{Scalar::one(f), Scalar::zero(f), parse_scalar_or_throw(f, args[0])};
        TwistingMap table = abc_seed_table(seed, N);
        AlgebraPtr A = table.algA(), B = table.algB();
        return Fixture{name, A, B, std::move(table), true, std::nullopt};
    }
    throw StructuralError("unknown fixture: " + name);
}

std::vector<CensusEntry> ex7_2_census(const std::vector<Scalar>& lambda_grid,
                                      const std::vector<Scalar>& mu_grid) {
    std::vector<CensusEntry> out;
    for (const auto& l : lambda_grid)
        for (const auto& m : mu_grid) {
            TwistingMap tw = make_ex7_2(l.field(), 4, l, m);
            out.push_back(CensusEntry{l, m, verify_twisting_to_degree(tw, 4).ok});
        }
    return out;
}

}  // namespace twistk
