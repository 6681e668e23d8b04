#include <doctest.h>

#include "test_helpers.hpp"
#include "twistk/catalog.hpp"

using namespace twistk;
using twistk::testing::q;

namespace {

// the flip tau(b (x) a) = a (x) b between one-generator free algebras
TwistingMap flip_map(const FieldSpec& f, int N) {
    auto A = TruncatedAlgebra::truncate(free_presentation({"x"}, f), N);
    auto B = TruncatedAlgebra::truncate(free_presentation({"y"}, f), N);
    TwistingMap tw(A, B, N);
    for (int j = 1; j < N; ++j)
        for (int i = 1; i + j <= N; ++i) {
            const auto& kb = tw.kunneth(i + j);
            tw.set_block_column(j, i, 0, 0, SparseVec::unit(kb.dim(), kb.index(i, 0, 0), Scalar::one(f)));
        }
    return tw;
}

}  // namespace

TEST_CASE("flip map verifies to any degree") {
    auto tw = flip_map(FieldSpec::Q(), 8);
    CHECK(verify_twisting_to_degree(tw, 8).ok);
}

TEST_CASE("parity fixture is a twisting map to degree 8") {
    auto fx = make_fixture("ex5_3");
    CHECK(verify_twisting_to_degree(fx.table, 8).ok);
    // monotone: verified at 8 implies verified at every smaller degree
    for (int n = 3; n <= 8; ++n) CHECK(verify_twisting_to_degree(fx.table, n).ok);
}

TEST_CASE("ex7_2 family: (-1,0) is twisting; (0,0) fails in degree 4") {
    auto ok = make_fixture("ex7_2");
    CHECK(verify_twisting_to_degree(ok.table, 4).ok);
    CHECK(verify_twisting_to_degree(ok.table, 8).ok);  // blocks vanish beyond 4

    auto bad = make_fixture("ex7_2(0,0)");
    auto v = verify_twisting_to_degree(bad.table, 4);
    REQUIRE(!v.ok);
    CHECK(v.failure->degree == 4);
    CHECK(verify_twisting_to_degree(bad.table, 3).ok);
}

TEST_CASE("verification bound errors") {
    auto tw = flip_map(FieldSpec::Q(), 4);
    CHECK_THROWS_AS(verify_twisting_to_degree(tw, 5), BoundError);
}

TEST_CASE("the parity fixture works over a prime field") {
    auto fp = FieldSpec::Fp(101);
    auto fx = make_fixture("ex5_3", fp, 8);
    CHECK(verify_twisting_to_degree(fx.table, 8).ok);
    auto prof = uep_profile(fx.table);
    CHECK(!prof.at(3));
    for (int n = 4; n <= 8; ++n) CHECK(prof.at(n));
    auto pp = twisted_product_presentation(fx.table, 8);
    CHECK(pp.minimal_degrees == std::map<int, int>{{2, 1}, {3, 1}});
    // the canonical extension lands on the same table mod p
    auto out = extend_to_degree(make_fixture("abc(1,-1,1)", fp, 8).table, 8,
                                ExtendPolicy::take_canonical);
    REQUIRE(out.table.has_value());
    CHECK(out.table->equal_blocks(fx.table));
}

TEST_CASE("classification flags") {
    auto f = FieldSpec::Q();
    SUBCASE("flip map is strongly graded, pure, and one-sided both ways") {
        auto rep = classify(flip_map(f, 6));
        CHECK(rep.strongly_graded);
        CHECK(rep.pure);
        CHECK(rep.one_sided_toward_B);
        CHECK(rep.one_sided_toward_A);
    }
    SUBCASE("ex7_4 is separable but one-sided in neither direction") {
        auto fx = make_fixture("ex7_4", f, 6);
        auto rep = classify(fx.table, fx.split);
        REQUIRE(rep.separable.has_value());
        CHECK(*rep.separable);
        CHECK(!rep.one_sided_toward_B);
        CHECK(!rep.one_sided_toward_A);
        CHECK(!rep.pure);
        CHECK(!rep.strongly_graded);
    }
    SUBCASE("tau(y (x) x) = x (x) y + x^2 (x) 1 is one-sided toward B only") {
        auto seed = abc_seed_table(AbcSeed{q(1), q(1), q(0)}, 4);
        auto rep = classify(seed);
        CHECK(rep.one_sided_toward_B);
        CHECK(!rep.pure);
        CHECK(!rep.one_sided_toward_A);
    }
    SUBCASE("flag implications hold on every fixture") {
        for (std::string name : {"ex5_3", "ex7_2", "ex7_4"}) {
            auto rep = classify(make_fixture(name, f, 6).table);
            if (rep.strongly_graded) CHECK(rep.pure);
            if (rep.pure) {
                CHECK(rep.one_sided_toward_B);
                CHECK(rep.one_sided_toward_A);
            }
        }
    }
    SUBCASE("split with an out-of-range index is structural") {
        auto fx = make_fixture("ex7_4", f, 4);
        CHECK_THROWS_AS(classify(fx.table, SeparableSplit{{5}}), StructuralError);
    }
}

TEST_CASE("ex7_1 classifies as separable for the declared split") {
    auto fx = make_fixture("ex7_1", FieldSpec::Q(), 5);
    auto rep = classify(fx.table, fx.split);
    REQUIRE(rep.separable.has_value());
    CHECK(*rep.separable);
    CHECK(!rep.one_sided_toward_B);
    CHECK(!rep.one_sided_toward_A);
    // the swapped split is not separable for this table
    auto swapped = classify(fx.table, SeparableSplit{{0}});
    CHECK(!swapped.separable.value());
}

TEST_CASE("conjugation") {
    auto f = FieldSpec::Q();
    SUBCASE("identity automorphisms leave the table unchanged") {
        auto fx = make_fixture("ex5_3", f, 6);
        auto id = ExactMatrix::identity(1, f);
        CHECK(conjugate(fx.table, id, id).equal_blocks(fx.table));
    }
    SUBCASE("y -> -y fixes the flip map and keeps it strongly graded") {
        auto tw = flip_map(f, 6);
        ExactMatrix minus(1, 1, f);
        minus.at(0, 0) = q(-1);
        auto tw2 = conjugate(tw, ExactMatrix::identity(1, f), minus);
        CHECK(tw2.equal_blocks(tw));
        CHECK(classify(tw2).strongly_graded);
    }
    SUBCASE("scaling x normalizes a (4,0,1) seed to equal outer coefficients") {
        // lambda^2 = a c^{-1} = 4; the normalized coefficient is c' = c lambda = 2
        auto seed = abc_seed_table(AbcSeed{q(4), q(0), q(1)}, 4);
        ExactMatrix autA(1, 1, f);
        autA.at(0, 0) = q(1, 2);  // alpha(x) = x/2, so x is scaled by lambda = 2 on the inverse side
        auto tw2 = conjugate(seed, autA, ExactMatrix::identity(1, f));
        const auto& kb = tw2.kunneth(2);
        const SparseVec& col = tw2.block_column(1, 1, 0, 0);
        auto cprime = b0_normalized_coefficient(q(4), q(1));
        REQUIRE(cprime.has_value());
        CHECK(*cprime == q(2));
        CHECK(*col.at(kb.index(2, 0, 0)) == *cprime);
        CHECK(*col.at(kb.index(0, 0, 0)) == *cprime);
        CHECK(col.at(kb.index(1, 0, 0)) == nullptr);
    }
    SUBCASE("round trip through inverse automorphisms is exact") {
        auto fx = make_fixture("ex7_4", f, 5);
        ExactMatrix autB(2, 2, f);
        autB.at(0, 0) = q(2);
        autB.at(1, 1) = q(1);  // d -> 2d, u -> u on the free algebra
        auto id = ExactMatrix::identity(1, f);
        auto once = conjugate(fx.table, id, autB);
        auto back = conjugate(once, id, try_inverse(autB).value());
        CHECK(back.equal_blocks(fx.table));
    }
    SUBCASE("conjugation preserves the verification verdict degreewise") {
        auto fx = make_fixture("ex7_2(0,0)", f, 4);  // fails exactly in degree 4
        ExactMatrix autA(1, 1, f);
        autA.at(0, 0) = q(3);
        auto tw2 = conjugate(fx.table, autA, ExactMatrix::identity(1, f));
        CHECK(verify_twisting_to_degree(tw2, 3).ok);
        auto v = verify_twisting_to_degree(tw2, 4);
        REQUIRE(!v.ok);
        CHECK(v.failure->degree == 4);
    }
    SUBCASE("singular matrices are rejected") {
        auto fx = make_fixture("ex7_2", f, 4);
        ExactMatrix zero(1, 1, f);
        CHECK_THROWS_AS(conjugate(fx.table, ExactMatrix::identity(1, f), zero), StructuralError);
    }
    SUBCASE("a matrix that breaks the relations is rejected") {
        // on k<v,w>/<v^2>, swapping v and w sends v^2 to w^2 which is not in the ideal
        Presentation p = free_presentation({"v", "w"}, f);
        p.relations.push_back(NcPoly::from_terms(2, {{Word{0, 0}, Scalar::one(f)}}));
        auto A = TruncatedAlgebra::truncate(p, 4);
        auto B = TruncatedAlgebra::truncate(free_presentation({"y"}, f), 4);
        TwistingMap tw(A, B, 4);  // zero blocks suffice for the automorphism check
        ExactMatrix swap(2, 2, f);
        swap.at(0, 1) = q(1);
        swap.at(1, 0) = q(1);
        CHECK_THROWS_AS(conjugate(tw, swap, ExactMatrix::identity(1, f)), StructuralError);
    }
}

TEST_CASE("mu_tau is associative on the truncation for verified tables") {
    auto f = FieldSpec::Q();
    for (std::string name : {"ex5_3", "ex7_2"}) {
        auto fx = make_fixture(name, f, 6);
        const auto& tw = fx.table;
        const auto& A = *tw.algA();
        const auto& B = *tw.algB();
        const int N = 5;
        // mu_tau on basis tensors: (mu_A (x) mu_B)(1 (x) tau (x) 1)
        auto mult = [&](int p, int ai, int bq, int bi, int pp, int ai2, int qq, int bi2) {
            const auto& out_kb = tw.kunneth(p + bq + pp + qq);
            SparseVec out(out_kb.dim());
            for (const auto& [idx, c] : tw.apply_basis(bq, pp, bi, ai2).terms) {
                auto e = tw.kunneth(bq + pp).decode(idx);
                const SparseVec& pa = A.multiply_basis(p, ai, e.p, e.ai);
                const SparseVec& pb = B.multiply_basis(e.q, e.bi, qq, bi2);
                for (const auto& [xa, ca] : pa.terms)
                    for (const auto& [xb, cb] : pb.terms)
                        out.add_term(out_kb.index(p + e.p, xa, xb), c * ca * cb);
            }
            return out;
        };
        for (int d1 = 1; d1 < N; ++d1)
            for (int d2 = 1; d1 + d2 < N; ++d2)
                for (int d3 = 1; d1 + d2 + d3 <= N; ++d3)
                    for (int p1 = 0; p1 <= d1; ++p1)
                        for (int p2 = 0; p2 <= d2; ++p2)
                            for (int p3 = 0; p3 <= d3; ++p3) {
                                int q1 = d1 - p1, q2 = d2 - p2, q3 = d3 - p3;
                                for (int a1 = 0; a1 < A.dim(p1); ++a1)
                                    for (int b1 = 0; b1 < B.dim(q1); ++b1)
                                        for (int a2 = 0; a2 < A.dim(p2); ++a2)
                                            for (int b2 = 0; b2 < B.dim(q2); ++b2)
                                                for (int a3 = 0; a3 < A.dim(p3); ++a3)
                                                    for (int b3 = 0; b3 < B.dim(q3); ++b3) {
                                                        SparseVec xy = mult(p1, a1, q1, b1, p2, a2, q2, b2);
                                                        SparseVec lhs(tw.kunneth(d1 + d2 + d3).dim());
                                                        const auto& kb12 = tw.kunneth(d1 + d2);
                                                        for (const auto& [idx, c] : xy.terms) {
                                                            auto e = kb12.decode(idx);
                                                            lhs.add_scaled(
                                                                mult(e.p, e.ai, e.q, e.bi, p3, a3, q3, b3), c);
                                                        }
                                                        SparseVec yz = mult(p2, a2, q2, b2, p3, a3, q3, b3);
                                                        SparseVec rhs(tw.kunneth(d1 + d2 + d3).dim());
                                                        const auto& kb23 = tw.kunneth(d2 + d3);
                                                        for (const auto& [idx, c] : yz.terms) {
                                                            auto e = kb23.decode(idx);
                                                            rhs.add_scaled(
                                                                mult(p1, a1, q1, b1, e.p, e.ai, e.q, e.bi), c);
                                                        }
                                                        CHECK(lhs == rhs);
                                                    }
                            }
    }
}
