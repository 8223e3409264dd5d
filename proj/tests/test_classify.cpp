#include <catch2/catch_amalgamated.hpp>

#include "mal/classify.hpp"
#include "testbed.hpp"

using namespace mal;

TEST_CASE("sphere certification") {
    auto c = certify_sphere(boundary_of_simplex(4));
    CHECK(c.dim == 3);
    CHECK(c.verdict == SphereVerdict::CertifiedHomology);
    CHECK(c.ok());

    auto cj = certify_sphere(testbed::c4_join_triangle());
    CHECK(cj.dim == 3);
    CHECK(cj.verdict == SphereVerdict::CertifiedHomology);

    auto crp = certify_sphere(testbed::rp2());
    CHECK(crp.verdict == SphereVerdict::Failed);
    CHECK_FALSE(crp.ok());

    auto ct = certify_sphere(testbed::torus7());
    CHECK(ct.verdict == SphereVerdict::Failed);

    CHECK(certify_sphere(testbed::polygon(6)).exact());
    CHECK(certify_sphere(boundary_of_simplex(3)).exact());
    CHECK(certify_sphere(testbed::stacked_six()).exact());
    CHECK(certify_sphere(testbed::antiprism_bipyramid()).exact());
    CHECK(certify_sphere(SimplicialComplex::from_facets(2, {{1}, {2}})).exact());
    CHECK_FALSE(certify_sphere(SimplicialComplex::from_facets(3, {{1}, {2}, {3}})).ok());
    CHECK_FALSE(certify_sphere(SimplicialComplex::from_facets(3, {{1, 2}, {2, 3}})).ok());

    // the join of a 2-sphere and a circle is a certified homology 4-sphere
    auto j = join(boundary_of_simplex(3), testbed::polygon(5));
    auto cjj = certify_sphere(j);
    CHECK(cjj.dim == 4);
    CHECK(cjj.verdict == SphereVerdict::CertifiedHomology);
}

TEST_CASE("mcgavran decompositions") {
    auto d52 = mcgavran_decomposition(5, 2);
    CHECK(d52.total == 7);
    CHECK(d52.summands == std::map<std::vector<int>, long>{{{3, 4}, 5}});
    CHECK(d52.summand_count() == 5);

    auto d63 = mcgavran_decomposition(6, 3);
    CHECK(d63.summands == std::map<std::vector<int>, long>{{{3, 6}, 3}, {{4, 5}, 2}});

    auto empty = mcgavran_decomposition(4, 3);
    CHECK(empty.summands.empty());
    CHECK(empty.total == 7);

    CHECK_THROWS_AS(mcgavran_decomposition(3, 3), std::invalid_argument);
}

TEST_CASE("decomposition to betti") {
    CHECK(decomposition_to_betti(mcgavran_decomposition(5, 2), 7) ==
          std::map<int, long>{{0, 1}, {3, 5}, {4, 5}, {7, 1}});

    SphereDecomposition triple;
    triple.total = 11;
    triple.summands[{3, 3, 5}] = 1;
    CHECK(decomposition_to_betti(triple, 11) ==
          std::map<int, long>{{0, 1}, {3, 2}, {5, 1}, {6, 1}, {8, 2}, {11, 1}});

    SphereDecomposition none;
    none.total = 9;
    CHECK(decomposition_to_betti(none, 9) == std::map<int, long>{{0, 1}, {9, 1}});

    SphereDecomposition bad;
    bad.total = 9;
    bad.summands[{3, 3}] = 1;
    CHECK_THROWS_AS(decomposition_to_betti(bad, 9), std::invalid_argument);
}

TEST_CASE("mcgavran agrees with decompose on stacked spheres") {
    for (int cuts : {0, 1, 3}) {
        auto K = generate_stacked_sphere(2, cuts, 100 + cuts);
        auto t = BigradedTable::decompose(K);
        auto pred = decomposition_to_betti(mcgavran_decomposition(K.vertex_count(), 3),
                                           K.vertex_count() + 3);
        CHECK(pred == t.betti());
    }
}

TEST_CASE("stellar subdivision preserves the sphere certificate") {
    auto K = boundary_of_simplex(3);
    for (int i = 0; i < 4; ++i) {
        K = stellar_subdivide_facet(K, K.facets()[i % K.facets().size()]);
        CHECK(certify_sphere(K).exact());
    }
    auto L = boundary_of_simplex(4);
    for (int i = 0; i < 3; ++i) {
        L = stellar_subdivide_facet(L, L.facets().front());
        auto c = certify_sphere(L);
        CHECK(c.dim == 3);
        CHECK(c.ok());
    }
}

TEST_CASE("recognize_dual_stacked") {
    CHECK(recognize_dual_stacked(boundary_of_simplex(3))->empty());

    auto seq = recognize_dual_stacked(testbed::stacked_six());
    REQUIRE(seq.has_value());
    CHECK(seq->size() == 2);

    // octahedron: every vertex has degree four, no reduction applies
    CHECK_FALSE(recognize_dual_stacked(testbed::cross_polytope(3)).has_value());
    CHECK_FALSE(recognize_dual_stacked(testbed::antiprism_bipyramid()).has_value());

    CHECK_THROWS_AS(recognize_dual_stacked(testbed::rp2()), std::invalid_argument);

    for (int cuts : {2, 4, 6}) {
        auto K = generate_stacked_sphere(2, cuts, 55 + cuts);
        auto s = recognize_dual_stacked(K);
        REQUIRE(s.has_value());
        CHECK(static_cast<int>(s->size()) == cuts);
    }
}

TEST_CASE("cross polytope detection") {
    CHECK(is_cross_polytope_boundary(testbed::cross_polytope(3), 3));
    CHECK(is_cross_polytope_boundary(testbed::cross_polytope(4), 4));
    CHECK_FALSE(is_cross_polytope_boundary(boundary_of_simplex(3), 3));
    CHECK_FALSE(is_cross_polytope_boundary(testbed::c4_join_triangle(), 4));
    // relabelled: C4 is S^0 * S^0 with the diagonal pairs {1,3} and {2,4}
    CHECK(is_cross_polytope_boundary(testbed::polygon(4), 2));
}

TEST_CASE("pairs presentations") {
    auto p = pairs_presentation_from_betti({{0, 1}, {3, 5}, {4, 5}, {7, 1}}, 7);
    REQUIRE(p.has_value());
    CHECK(p->summands == std::vector<std::vector<int>>(5, {3, 4}));
    CHECK(p->graded_ranks() == std::map<int, long>{{0, 1}, {3, 5}, {4, 5}, {7, 1}});

    // odd middle rank cannot pair up
    CHECK_FALSE(pairs_presentation_from_betti({{0, 1}, {3, 3}, {6, 1}}, 6).has_value());
}

TEST_CASE("verify_presentation") {
    auto C5 = testbed::polygon(5);
    auto t = BigradedTable::decompose(C5);
    auto pres = pairs_presentation_from_betti(t.betti(), 7);
    REQUIRE(pres.has_value());
    auto rep = verify_presentation(t, *pres, CaseLabel::Chordal);
    CHECK(rep.rank_match);
    CHECK(rep.torsion_free);
    CHECK(rep.pairings_unimodular);
    CHECK(rep.zero_products_ok);
    CHECK(rep.pass());

    // deliberately wrong presentation: swap one degree
    RingPresentation wrong = *pres;
    wrong.summands[0] = {2, 5};
    auto bad = verify_presentation(t, wrong, CaseLabel::Chordal);
    CHECK_FALSE(bad.rank_match);
    CHECK_FALSE(bad.pass());

    // the empty presentation passes for a simplex boundary (single sphere)
    auto t4 = BigradedTable::decompose(boundary_of_simplex(4));
    RingPresentation singleton{9, {}};
    CHECK(verify_presentation(t4, singleton, CaseLabel::Chordal).pass());
}

TEST_CASE("classify 2-spheres") {
    // the 6-vertex stacked sphere: chordal, dual stacked, verified pairs
    auto K = testbed::stacked_six();
    auto t = BigradedTable::decompose(K);
    auto rep = classify_2sphere(K, t);
    CHECK(rep.case_label == CaseLabel::Chordal);
    CHECK(rep.chordality.chordal);
    REQUIRE(rep.decomposition.has_value());
    CHECK(rep.decomposition->summands ==
          std::map<std::vector<int>, long>{{{3, 6}, 3}, {{4, 5}, 2}});
    REQUIRE(rep.verification.has_value());
    CHECK(rep.verification->pass());
    CHECK(rep.verified());
    REQUIRE(rep.weak_min_non_golod_flag.has_value());
    CHECK(*rep.weak_min_non_golod_flag);

    // octahedron: the product case
    auto O = testbed::cross_polytope(3);
    auto to = BigradedTable::decompose(O);
    auto ro = classify_2sphere(O, to);
    CHECK(ro.case_label == CaseLabel::CrossPolytope);
    REQUIRE(ro.presentation.has_value());
    CHECK(ro.presentation->summands == std::vector<std::vector<int>>{{3, 3, 3}});
    CHECK(ro.verified());

    // a 2-sphere with a chordless rim: case None with a witness
    auto A = testbed::antiprism_bipyramid();
    auto ta = BigradedTable::decompose(A);
    auto ra = classify_2sphere(A, ta, /*golod_check=*/false);
    CHECK(ra.case_label == CaseLabel::None);
    REQUIRE(ra.chordality.witness.has_value());

    CHECK_THROWS_AS(classify_2sphere(testbed::rp2(), BigradedTable::decompose(testbed::rp2())),
                    std::invalid_argument);
}

TEST_CASE("classify 3-spheres") {
    // cross-polytope
    auto X = testbed::cross_polytope(4);
    auto tx = BigradedTable::decompose(X);
    auto rx = classify_3sphere(X, tx);
    CHECK(rx.case_label == CaseLabel::CrossPolytope);
    CHECK(rx.verified());
    CHECK(tx.product_length() == 4);

    // simplex boundary: chordal with the empty presentation
    auto S = boundary_of_simplex(4);
    auto ts = BigradedTable::decompose(S);
    auto rs = classify_3sphere(S, ts);
    CHECK(rs.case_label == CaseLabel::Chordal);
    REQUIRE(rs.presentation.has_value());
    CHECK(rs.presentation->summands.empty());
    CHECK(rs.verified());

    // two missing edges forming a chordless 4-cycle
    auto J = testbed::c4_join_triangle();
    auto tj = BigradedTable::decompose(J);
    auto rj = classify_3sphere(J, tj);
    CHECK(rj.case_label == CaseLabel::TwoMissingEdges);
    REQUIRE(rj.presentation.has_value());
    CHECK(rj.presentation->summands == std::vector<std::vector<int>>{{3, 3, 5}});
    CHECK(rj.verified());

    // five overlapping missing edges: no case applies
    auto N = testbed::c5_join_triangle();
    auto tn = BigradedTable::decompose(N);
    auto rn = classify_3sphere(N, tn);
    CHECK(rn.case_label == CaseLabel::None);
    CHECK_FALSE(rn.verified());

    // whenever a case holds, the table is torsion-free and the product length
    // obeys the bound with equality only for the cross-polytope
    CHECK(tx.torsion_free());
    CHECK(tj.torsion_free());
    CHECK(tj.product_length() == 3);  // a1 a2 b
    CHECK(ts.product_length() == 1);
}

TEST_CASE("missing-face generation sufficient condition") {
    // stacked 3-spheres: q = 1, generated by missing faces, pairs verified;
    // and a verified pairs presentation forces a chordal 1-skeleton
    for (int cuts : {1, 2}) {
        auto K = generate_stacked_sphere(3, cuts, 7 + cuts);
        auto t = BigradedTable::decompose(K);
        auto res = check_generated_by_missing_faces(K, t);
        CHECK(res.q == 1);
        CHECK(res.generated_by_missing_faces);
        auto pres = pairs_presentation_from_betti(t.betti(), K.vertex_count() + 4);
        REQUIRE(pres.has_value());
        bool pairs_ok = verify_presentation(t, *pres, CaseLabel::Chordal).pass();
        CHECK(pairs_ok);
        if (pairs_ok) CHECK(is_chordal(Graph::from_skeleton(skeleton(K, 1))).chordal);
    }

    // d = 2, q = 1: a 2-sphere with chordless rims fails at l <= 1
    auto A = testbed::antiprism_bipyramid();
    auto ta = BigradedTable::decompose(A);
    auto ra = check_generated_by_missing_faces(A, ta);
    CHECK(ra.q == 1);
    CHECK_FALSE(ra.generated_by_missing_faces);

    CHECK_THROWS_AS(check_generated_by_missing_faces(boundary_of_simplex(4),
                                 BigradedTable::decompose(boundary_of_simplex(4))),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_generated_by_missing_faces(testbed::rp2(), BigradedTable::decompose(testbed::rp2())),
                    std::invalid_argument);
}

TEST_CASE("weak golod checks") {
    auto r6 = weak_min_non_golod(testbed::stacked_six());
    CHECK_FALSE(r6.self_products_trivial);
    CHECK(r6.deletions_trivial);
    CHECK(r6.weak_min_non_golod());

    // the tetrahedron boundary has no products at all, so it is not even
    // weakly non-Golod
    auto r4 = weak_min_non_golod(boundary_of_simplex(3));
    CHECK(r4.self_products_trivial);
    CHECK_FALSE(r4.weak_min_non_golod());

    // informational on arbitrary complexes: a forest has no induced cycles, so
    // every product of positive classes lands in a vanishing H~^1
    auto D = SimplicialComplex::from_facets(4, {{1, 2}, {3, 4}});
    auto rd = weak_min_non_golod(D);
    CHECK(rd.self_products_trivial);
    CHECK_FALSE(rd.weak_min_non_golod());
}

TEST_CASE("2-sphere meta equivalence on small fixtures") {
    // chordal skeleton == dual-stacked reduction == verified pairs presentation
    std::vector<SimplicialComplex> spheres{boundary_of_simplex(3), testbed::stacked_six(),
                                           testbed::antiprism_bipyramid()};
    for (int cuts : {1, 2, 3}) spheres.push_back(generate_stacked_sphere(2, cuts, 400 + cuts));
    for (const auto& K : spheres) {
        if (is_cross_polytope_boundary(K, 3)) continue;
        auto t = BigradedTable::decompose(K);
        bool chordal = is_chordal(Graph::from_skeleton(skeleton(K, 1))).chordal;
        bool stacked = recognize_dual_stacked(K).has_value();
        bool pairs_ok = false;
        auto pres = pairs_presentation_from_betti(t.betti(), K.vertex_count() + 3);
        if (pres) pairs_ok = verify_presentation(t, *pres, CaseLabel::Chordal).pass();
        CHECK(chordal == stacked);
        CHECK(chordal == pairs_ok);
    }
}
