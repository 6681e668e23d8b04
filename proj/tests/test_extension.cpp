#include <doctest.h>

#include "test_helpers.hpp"
#include "twistk/catalog.hpp"

using namespace twistk;
using twistk::testing::matrix_from;
using twistk::testing::q;

TEST_CASE("delta and R of the parity seed at degree 3 match the hand expansion") {
    auto fx = make_fixture("abc(1,-1,1)", FieldSpec::Q(), 4);
    auto dr = build_delta_R(fx.table);
    // rows y (x) x^2, y^2 (x) x; columns y (x) x (x) x then y (x) y (x) x
    CHECK(dr.delta == matrix_from(FieldSpec::Q(), {{1, -1}, {-1, 1}}));
    // R rows over (A (x) B)_3 = {x^3 (x) 1, x^2 (x) y, x (x) y^2, 1 (x) y^3}
    CHECK(dr.R == matrix_from(FieldSpec::Q(), {{0, 0}, {1, -1}, {-1, 1}, {0, 0}}));

    // solver consistency: the kernel vector (1,1) of delta annihilates R
    auto out = solve_left_factor(dr.delta, dr.R);
    REQUIRE(out.consistent);
    CHECK(out.corank == 1);
    REQUIRE(out.kernel_of_D.size() == 1);
    CHECK(out.kernel_of_D[0][0].is_one());
    CHECK(out.kernel_of_D[0][1].is_one());
}

TEST_CASE("flip-style seeds have surjective delta in every degree") {
    auto fx = make_fixture("abc(0,1,0)", FieldSpec::Q(), 8);
    auto out = extend_to_degree(fx.table, 8, ExtendPolicy::require_unique);
    REQUIRE(out.table.has_value());
    for (const auto& rep : out.per_degree) {
        CHECK(rep.exists);
        CHECK(rep.unique);
        CHECK(rep.delta_corank == 0);
    }
    // the result is the flip map: block columns are the bidegree-corner units
    for (int j = 1; j < 8; ++j)
        for (int i = 1; i + j <= 8; ++i) {
            const auto& kb = out.table->kunneth(i + j);
            const SparseVec& col = out.table->block_column(j, i, 0, 0);
            REQUIRE(col.nnz() == 1);
            CHECK(col.terms[0].first == kb.index(i, 0, 0));
            CHECK(col.terms[0].second.is_one());
        }
}

TEST_CASE("extension report invariants at the ambiguous degree") {
    auto fx = make_fixture("abc(1,-1,1)", FieldSpec::Q(), 4);
    auto rep = extend_one_degree(fx.table);
    CHECK(rep.degree == 3);
    CHECK(rep.exists);
    CHECK(!rep.unique);
    CHECK(rep.delta_rank == 1);
    CHECK(rep.delta_corank == 1);
    CHECK(rep.freedom_dim == 4);  // corank x dim (A (x) B)_3
    CHECK((rep.unique == (rep.delta_corank == 0)));
    REQUIRE(rep.extended.has_value());
    CHECK(verify_twisting_to_degree(*rep.extended, 3).ok);
}

TEST_CASE("canonical extension of the parity seed reproduces the closed formula") {
    auto f = FieldSpec::Q();
    auto fx = make_fixture("abc(1,-1,1)", f, 8);
    auto out = extend_to_degree(fx.table, 8, ExtendPolicy::take_canonical);
    REQUIRE(out.table.has_value());
    CHECK(out.table->equal_blocks(make_fixture("ex5_3", f, 8).table));
    REQUIRE(out.per_degree.size() == 6);
    CHECK(out.per_degree[0].degree == 3);
    CHECK(out.per_degree[0].delta_corank == 1);
    for (size_t k = 1; k < out.per_degree.size(); ++k) CHECK(out.per_degree[k].unique);
    // under require_unique the same seed stops at the ambiguous degree
    auto strict = extend_to_degree(fx.table, 8, ExtendPolicy::require_unique);
    REQUIRE(strict.stuck.has_value());
    CHECK(strict.stuck->degree == 3);
    CHECK(strict.stuck->reason == StuckInfo::Reason::ambiguous);
}

TEST_CASE("obstructed b = 0 seeds get stuck exactly at the first S_n root") {
    auto f = FieldSpec::Q();
    SUBCASE("c = 1: S_3(1) = 0") {
        auto fx = make_fixture("b0(1)", f, 8);
        auto out = extend_to_degree(fx.table, 8, ExtendPolicy::take_canonical);
        REQUIRE(out.stuck.has_value());
        CHECK(out.stuck->degree == 3);
        CHECK(out.stuck->reason == StuckInfo::Reason::inconsistent);
    }
    SUBCASE("c = 1/2: S_4(1/2) = 0") {
        auto fx = make_fixture("b0(1/2)", f, 8);
        auto out = extend_to_degree(fx.table, 8, ExtendPolicy::take_canonical);
        REQUIRE(out.stuck.has_value());
        CHECK(out.stuck->degree == 4);
    }
    SUBCASE("c = 2 reaches degree 8 with all S_n(2) nonzero") {
        auto fx = make_fixture("b0(2)", f, 8);
        auto out = extend_to_degree(fx.table, 8, ExtendPolicy::take_canonical);
        REQUIRE(out.table.has_value());
        auto closed = b0_closed_form(q(2), 8);
        REQUIRE(closed.table.has_value());
        CHECK(out.table->equal_blocks(*closed.table));
    }
}

TEST_CASE("uep profiles") {
    auto f = FieldSpec::Q();
    SUBCASE("parity fixture: not unique at 3, unique at 4..8") {
        auto fx = make_fixture("ex5_3", f, 8);
        auto prof = uep_profile(fx.table);
        CHECK(!prof.at(3));
        for (int n = 4; n <= 8; ++n) CHECK(prof.at(n));
    }
    SUBCASE("generic (1,1,2) family member is unique everywhere") {
        auto seed = make_fixture("abc(1,1,2)", f, 8);
        auto out = extend_to_degree(seed.table, 8, ExtendPolicy::require_unique);
        REQUIRE(out.table.has_value());
        auto prof = uep_profile(*out.table);
        for (int n = 3; n <= 8; ++n) CHECK(prof.at(n));
    }
    SUBCASE("flip map between free algebras is unique everywhere") {
        auto seed = make_fixture("abc(0,1,0)", f, 8);
        auto out = extend_to_degree(seed.table, 8, ExtendPolicy::take_canonical);
        auto prof = uep_profile(*out.table);
        for (int n = 3; n <= 8; ++n) CHECK(prof.at(n));
    }
    SUBCASE("ex7_2 loses uniqueness at degree 3") {
        auto fx = make_fixture("ex7_2", f, 6);
        auto prof = uep_profile(fx.table);
        CHECK(!prof.at(3));
    }
}

TEST_CASE("ex7_2 seed: freedom matches the two-parameter family, no member survives canonically") {
    auto f = FieldSpec::Q();
    auto fx = make_fixture("ex7_2", f, 6);
    TwistingMap seed = fx.table.restricted(2);
    auto rep = extend_one_degree(seed);
    CHECK(rep.exists);
    CHECK(rep.delta_corank == 1);
    CHECK(rep.freedom_dim == 2);  // the (lambda, mu) family at degree 3
    // only (-1, 0) is a twisting map, and the canonical member is not it:
    // the blind extension must die at degree 4 while the fixture sails through
    auto out = extend_to_degree(seed, 6, ExtendPolicy::take_canonical);
    REQUIRE(out.stuck.has_value());
    CHECK(out.stuck->degree == 4);
    CHECK(out.stuck->reason == StuckInfo::Reason::inconsistent);
    CHECK(verify_twisting_to_degree(fx.table, 6).ok);
}

TEST_CASE("the abc coefficient trace never hits 1 - a s = 0 while 1 - ac != 0") {
    for (auto [a, b, c] : std::vector<std::array<long long, 3>>{{1, 1, 2}, {1, -1, 1}, {2, 3, -1}}) {
        AbcSeed seed{q(a), q(b), q(c)};
        if ((q(1) - seed.a * seed.c).is_zero()) continue;
        auto out = extend_to_degree(abc_seed_table(seed, 8), 8, ExtendPolicy::take_canonical);
        REQUIRE(out.table.has_value());
        for (int d = 2; d <= 7; ++d) {
            Scalar s = abc_s_coefficient(*out.table, d - 1, d);
            CHECK(!(q(1) - seed.a * s).is_zero());
        }
    }
}

TEST_CASE("separable seed extension") {
    auto f = FieldSpec::Q();
    SUBCASE("the trivial flip seed extends to the flip map") {
        auto A = TruncatedAlgebra::truncate(free_presentation({"x"}, f), 6);
        auto B = TruncatedAlgebra::truncate(free_presentation({"y"}, f), 6);
        KunnethBasis kb(*A, *B, 2);
        std::vector<SparseVec> t1 = {SparseVec::unit(kb.dim(), kb.index(1, 0, 0), Scalar::one(f))};
        auto tw = separable_seed_extend(A, B, t1, SeparableSplit{{0}}, 6);
        for (int j = 1; j < 6; ++j)
            for (int i = 1; i + j <= 6; ++i) {
                const SparseVec& col = tw.block_column(j, i, 0, 0);
                REQUIRE(col.nnz() == 1);
                CHECK(col.terms[0].first == tw.kunneth(i + j).index(i, 0, 0));
            }
    }
    SUBCASE("ex7_1 extends to degree 8 and stays verified") {
        auto fx = make_fixture("ex7_1", f, 8);
        CHECK(fx.table.bound() == 8);
        CHECK(verify_twisting_to_degree(fx.table, 8).ok);
        // all steps of the separable class are unique
        auto prof = uep_profile(fx.table);
        for (int n = 3; n <= 8; ++n) CHECK(prof.at(n));
    }
    SUBCASE("a seed violating the split containments is a precondition error") {
        auto A = TruncatedAlgebra::truncate(free_presentation({"x"}, f), 4);
        auto B = TruncatedAlgebra::truncate(free_presentation({"d", "u"}, f), 4);
        KunnethBasis kb(*A, *B, 2);
        // tau(d (x) x) = x (x) u is outside A_1 (x) B_1'' for the split B_1'' = {d}
        std::vector<SparseVec> t1(2, SparseVec(kb.dim()));
        t1[0] = SparseVec::unit(kb.dim(), kb.index(1, 0, 1), Scalar::one(f));
        CHECK_THROWS_AS(separable_seed_extend(A, B, t1, SeparableSplit{{1}}, 4), PreconditionError);
    }
    SUBCASE("quotient components are rejected") {
        auto fx = make_fixture("ex7_2", f, 4);
        std::vector<SparseVec> t1(1, SparseVec(fx.table.kunneth(2).dim()));
        CHECK_THROWS_AS(separable_seed_extend(fx.A, fx.B, t1, SeparableSplit{{0}}, 4),
                        PreconditionError);
    }
}

TEST_CASE("paper values inside the ex7_1 table") {
    auto f = FieldSpec::Q();
    auto fx = make_fixture("ex7_1", f, 4);
    const auto& tw = fx.table;
    const auto& A = *tw.algA();
    const auto& B = *tw.algB();
    const Scalar one = Scalar::one(f);

    SUBCASE("tau(d (x) x^2) = x^2 (x) d + 2 x (x) d^2 + 2 (x) d^3") {
        const auto& kb = tw.kunneth(3);
        SparseVec expected(kb.dim());
        expected.add_term(kb.index(2, A.basis_index(2, Word{0, 0}), 0), one);
        expected.add_term(kb.index(1, 0, B.basis_index(2, Word{0, 0})), q(2));
        expected.add_term(kb.index(0, 0, B.basis_index(3, Word{0, 0, 0})), q(2));
        CHECK(tw.apply_basis(1, 2, 0, A.basis_index(2, Word{0, 0})) == expected);
    }
    SUBCASE("tau(u (x) (xy - yx)) = (xxy + xyy - yxx - yyx) (x) 1 + (xy - yx) (x) u") {
        const auto& kb = tw.kunneth(3);
        SparseVec got = tw.apply_basis(1, 2, 1, A.basis_index(2, Word{0, 1}));
        got.add_scaled(tw.apply_basis(1, 2, 1, A.basis_index(2, Word{1, 0})), -one);
        SparseVec expected(kb.dim());
        expected.add_term(kb.index(3, A.basis_index(3, Word{0, 0, 1}), 0), one);
        expected.add_term(kb.index(3, A.basis_index(3, Word{0, 1, 1}), 0), one);
        expected.add_term(kb.index(3, A.basis_index(3, Word{1, 0, 0}), 0), -one);
        expected.add_term(kb.index(3, A.basis_index(3, Word{1, 1, 0}), 0), -one);
        expected.add_term(kb.index(2, A.basis_index(2, Word{0, 1}), 1), one);
        expected.add_term(kb.index(2, A.basis_index(2, Word{1, 0}), 1), -one);
        CHECK(got == expected);
    }
    SUBCASE("tau(d (x) (xy - yx)) = (xy - yx) (x) d") {
        const auto& kb = tw.kunneth(3);
        SparseVec got = tw.apply_basis(1, 2, 0, A.basis_index(2, Word{0, 1}));
        got.add_scaled(tw.apply_basis(1, 2, 0, A.basis_index(2, Word{1, 0})), -one);
        SparseVec expected(kb.dim());
        expected.add_term(kb.index(2, A.basis_index(2, Word{0, 1}), 0), one);
        expected.add_term(kb.index(2, A.basis_index(2, Word{1, 0}), 0), -one);
        CHECK(got == expected);
    }
}

TEST_CASE("induced maps on quotients") {
    auto f = FieldSpec::Q();
    auto free_fx = make_fixture("ex7_1", f, 6);
    SUBCASE("commutator ideal is preserved and the induced map verifies") {
        std::vector<NcPoly> idealA = {
            NcPoly::from_terms(2, {{Word{0, 1}, Scalar::one(f)}, {Word{1, 0}, -Scalar::one(f)}})};
        auto outcome = induced_on_quotient(free_fx.table, idealA, {});
        REQUIRE(std::holds_alternative<TwistingMap>(outcome));
        const auto& tw = std::get<TwistingMap>(outcome);
        CHECK(tw.algA()->hilbert() == std::vector<long long>{1, 2, 3, 4, 5, 6, 7});
        CHECK(verify_twisting_to_degree(tw, 6).ok);
    }
    SUBCASE("the ideal <x^2> fails containment with witness d (x) x^2 in degree 3") {
        std::vector<NcPoly> idealA = {NcPoly::from_terms(2, {{Word{0, 0}, Scalar::one(f)}})};
        auto outcome = induced_on_quotient(free_fx.table, idealA, {});
        REQUIRE(std::holds_alternative<ContainmentFailure>(outcome));
        const auto& fail = std::get<ContainmentFailure>(outcome);
        CHECK(fail.degree == 3);
        CHECK(fail.witness == "d (x) x^2");
    }
    SUBCASE("the flip map descends along arbitrary ideals") {
        auto seed = make_fixture("abc(0,1,0)", f, 6);
        auto flip = extend_to_degree(seed.table, 6, ExtendPolicy::take_canonical);
        std::vector<NcPoly> idealA = {NcPoly::from_terms(3, {{Word{0, 0, 0}, Scalar::one(f)}})};
        std::vector<NcPoly> idealB = {NcPoly::from_terms(2, {{Word{0, 0}, Scalar::one(f)}})};
        auto outcome = induced_on_quotient(*flip.table, idealA, idealB);
        REQUIRE(std::holds_alternative<TwistingMap>(outcome));
        CHECK(verify_twisting_to_degree(std::get<TwistingMap>(outcome), 6).ok);
    }
    SUBCASE("the induced map does not depend on the lift of the basis classes") {
        std::vector<NcPoly> idealA = {
            NcPoly::from_terms(2, {{Word{0, 1}, Scalar::one(f)}, {Word{1, 0}, -Scalar::one(f)}})};
        Presentation pa = free_fx.A->presentation();
        pa.relations = idealA;
        auto Aq = TruncatedAlgebra::truncate(pa, 6);
        auto Bq = free_fx.B;
        auto plain = induced_on_quotient_with_lifts(free_fx.table, Aq, Bq, nullptr, nullptr);
        // perturb every A-lift by a fixed ideal element of the right degree
        auto lift = [&](int degree, int idx) -> NcPoly {
            (void)idx;
            if (degree < 2) return NcPoly::from_terms(degree, {});
            auto rows = ideal_space(pa, degree);
            if (rows.empty()) return NcPoly::from_terms(degree, {});
            std::vector<std::pair<Word, Scalar>> terms;
            const int g = 2;
            for (const auto& [widx, c] : rows[0].terms) {
                Word w;
                int v = widx;
                for (int k = 0; k < degree; ++k) {
                    w.insert(w.begin(), static_cast<uint8_t>(v % g));
                    v /= g;
                }
                terms.emplace_back(std::move(w), c * q(3));
            }
            return NcPoly::from_terms(degree, std::move(terms));
        };
        auto shifted = induced_on_quotient_with_lifts(free_fx.table, Aq, Bq, lift, nullptr);
        REQUIRE(std::holds_alternative<TwistingMap>(plain));
        REQUIRE(std::holds_alternative<TwistingMap>(shifted));
        CHECK(std::get<TwistingMap>(plain).equal_blocks(std::get<TwistingMap>(shifted)));
    }
}

TEST_CASE("simpler conditions agree with full verification") {
    auto f = FieldSpec::Q();
    SUBCASE("parity fixture passes at every degree") {
        auto fx = make_fixture("ex5_3", f, 8);
        for (int d = 3; d <= 8; ++d) CHECK(check_simpler_conditions(fx.table.restricted(d)).ok);
    }
    SUBCASE("ex7_2(0,0) is twisting to degree 3 and the conditions agree") {
        auto fx = make_fixture("ex7_2(0,0)", f, 4);
        CHECK(check_simpler_conditions(fx.table.restricted(3)).ok);
        CHECK(!check_simpler_conditions(fx.table.restricted(4)).ok);
        CHECK(!verify_twisting_in_degree(fx.table, 4).ok);
    }
    SUBCASE("a corrupted top-degree entry produces a witness") {
        auto fx = make_fixture("ex5_3", f, 5);
        TwistingMap tw = fx.table;
        SparseVec col = tw.block_column(1, 4, 0, 0);
        col.add_term(0, Scalar::one(f));
        tw.set_block_column(1, 4, 0, 0, std::move(col));
        auto v = check_simpler_conditions(tw);
        REQUIRE(!v.ok);
        CHECK(v.failure->degree == 5);
        CHECK(!verify_twisting_in_degree(tw, 5).ok);
    }
}

TEST_CASE("full and restricted extension systems agree on random seeds") {
    // build_delta_R materializes the whole (B A A) + (B B A) domain; the
    // extension engine solves the A_1 / B_1 restriction. Existence and corank
    // must coincide.
    auto fp = FieldSpec::Fp(101);
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        AbcSeed seed{Scalar::from_int(fp, static_cast<long long>(rng() % 101)),
                     Scalar::from_int(fp, static_cast<long long>(rng() % 101)),
                     Scalar::from_int(fp, static_cast<long long>(rng() % 101))};
        auto tw = abc_seed_table(seed, 5);
        TwistingMap cur = tw;
        for (int step = 0; step < 3; ++step) {
            auto dr = build_delta_R(cur);
            auto dense = solve_left_factor(dr.delta, dr.R);
            auto rep = extend_one_degree(cur);
            CHECK(dense.consistent == rep.exists);
            if (!rep.exists) break;
            CHECK(dense.corank == rep.delta_corank);
            CHECK(dr.delta.rows() - dense.corank == rep.delta_rank);
            cur = std::move(*rep.extended);
        }
    }
}

TEST_CASE("corner projections of tau") {
    auto fx = make_fixture("ex5_3", FieldSpec::Q(), 4);
    // tau(y (x) x) = x^2 (x) 1 - x (x) y + 1 (x) y^2: tA picks x^2, tB picks y^2
    auto pr = projections(fx.table, 1, 1, 0, 0);
    REQUIRE(pr.tA.nnz() == 1);
    CHECK(pr.tA.terms[0].second.is_one());   // coefficient of x^2 in A_2
    REQUIRE(pr.tB.nnz() == 1);
    CHECK(pr.tB.terms[0].second.is_one());   // coefficient of y^2 in B_2
    // even-parity block (2, 2) has neither corner
    auto pr22 = projections(fx.table, 2, 2, 0, 0);
    CHECK(pr22.tA.is_zero());
    CHECK(pr22.tB.is_zero());
}

TEST_CASE("extension preconditions are enforced") {
    auto fx = make_fixture("ex7_2(0,0)", FieldSpec::Q(), 4);
    CHECK_THROWS_AS(extend_one_degree(fx.table), PreconditionError);
    CHECK_THROWS_AS(uep_profile(fx.table), PreconditionError);
    CHECK_THROWS_AS(extend_to_degree(fx.table, 6, ExtendPolicy::take_canonical), PreconditionError);
}
