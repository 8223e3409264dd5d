#include <catch2/catch_amalgamated.hpp>

#include "mal/simplicial_complex.hpp"
#include "testbed.hpp"

using namespace mal;

TEST_CASE("vertex set basics and lexicographic order") {
    VertexSet s = VertexSet::of({3, 1, 5});
    CHECK(s.size() == 3);
    CHECK(s.labels() == std::vector<int>{1, 3, 5});
    CHECK(s.min() == 1);
    CHECK(s.max() == 5);
    CHECK(s.nth(1) == 3);
    CHECK(s.index_of(5) == 2);
    CHECK(VertexSet::full(4).labels() == std::vector<int>{1, 2, 3, 4});

    // lex order agrees with the order on ascending label sequences
    std::mt19937_64 rng(7);
    for (int it = 0; it < 2000; ++it) {
        VertexSet a(rng() & 0xfful), b(rng() & 0xfful);
        bool expect = a.labels() < b.labels();
        CHECK(lex_less(a, b) == expect);
    }
}

TEST_CASE("k_subsets enumerates in lexicographic order") {
    auto subs = k_subsets(VertexSet::full(4), 2);
    REQUIRE(subs.size() == 6);
    CHECK(subs.front() == VertexSet::of({1, 2}));
    CHECK(subs.back() == VertexSet::of({3, 4}));
    CHECK(std::is_sorted(subs.begin(), subs.end(), LexLess{}));
    CHECK(all_subsets(3).size() == 8);
}

TEST_CASE("build_complex canonicalizes") {
    auto K = SimplicialComplex::from_facets(4, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}});
    CHECK(K.dim() == 2);
    CHECK(K.facets().size() == 4);
    CHECK(K == boundary_of_simplex(3));

    auto C4 = SimplicialComplex::from_facets(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
    CHECK(C4.dim() == 1);
    CHECK(C4.facets().size() == 4);

    // absorption of non-maximal input faces
    auto A = SimplicialComplex::from_facets(3, {{1, 2, 3}, {1, 2}});
    CHECK(A.facets() == std::vector<Simplex>{VertexSet::of({1, 2, 3})});

    CHECK_THROWS_AS(SimplicialComplex::from_facets(3, {{1, 2, 5}}), std::invalid_argument);
    CHECK_THROWS_AS(SimplicialComplex::from_facets(3, {{1, 2}}), std::invalid_argument);  // 3 uncovered
    CHECK_THROWS_AS(SimplicialComplex::from_facets(3, {{1, 2, 2}, {3}}), std::invalid_argument);
}

TEST_CASE("canonical encoding is deterministic") {
    auto a = SimplicialComplex::from_facets(4, {{3, 4}, {1, 2}, {2, 3}, {1, 4}});
    auto b = SimplicialComplex::from_facets(4, {{1, 4}, {1, 2}, {3, 4}, {2, 3}});
    CHECK(a == b);
    CHECK(a.canonical_text() == b.canonical_text());
    CHECK(a.hash() == b.hash());
}

TEST_CASE("full subcomplex") {
    auto C4 = testbed::polygon(4);
    auto sub = full_subcomplex(C4, VertexSet::of({1, 3}));
    CHECK(sub.complex.vertex_count() == 2);
    CHECK(sub.complex.dim() == 0);
    CHECK(sub.complex.facets().size() == 2);  // two isolated points
    CHECK(sub.vertex_map == std::vector<int>{1, 3});

    auto T = full_subcomplex(boundary_of_simplex(3), VertexSet::of({1, 2, 3}));
    CHECK(T.complex == SimplicialComplex::from_facets(3, {{1, 2, 3}}));

    // C5 on {2,4,5}: edge {4,5} plus isolated point 2
    auto C5 = testbed::polygon(5);
    auto s2 = full_subcomplex(C5, VertexSet::of({2, 4, 5}));
    CHECK(s2.complex == SimplicialComplex::from_facets(3, {{1}, {2, 3}}));
    CHECK(s2.to_parent_set(VertexSet::of({2, 3})) == VertexSet::of({4, 5}));

    // empty subset: the empty complex (one face, the empty simplex)
    auto e = full_subcomplex(C5, VertexSet());
    CHECK(e.complex.vertex_count() == 0);
    CHECK(e.complex.dim() == -1);
    CHECK(e.complex.has_face(Simplex()));
}

TEST_CASE("full subcomplex functoriality") {
    auto K = testbed::stacked_six();
    std::mt19937_64 rng(11);
    for (int it = 0; it < 50; ++it) {
        VertexSet J(rng() & 0x3ful);
        J = J & K.vertices();
        VertexSet Jp(rng() & 0x3ful);
        Jp = Jp & J;
        auto big = full_subcomplex(K, J);
        // relabel J' into the coordinates of K_J
        VertexSet JpRel;
        for (int v : Jp) JpRel = JpRel.with(J.index_of(v) + 1);
        auto nested = full_subcomplex(big.complex, JpRel);
        auto direct = full_subcomplex(K, Jp);
        CHECK(nested.complex == direct.complex);
    }
}

TEST_CASE("join") {
    auto S0 = SimplicialComplex::from_facets(2, {{1}, {2}});
    auto C4 = join(S0, S0);
    // S^0 * S^0 is a 4-cycle (as a complex: all pairs except the two diagonals)
    CHECK(C4.dim() == 1);
    CHECK(C4.facets().size() == 4);
    CHECK(missing_faces(C4, 1).size() == 2);

    auto K = join(testbed::polygon(4), boundary_of_simplex(2));
    CHECK(K.vertex_count() == 7);
    CHECK(K.dim() == 3);
    CHECK(K.facets().size() == 12);
    for (const Simplex& f : K.facets()) CHECK(f.size() == 4);

    CHECK(join(K, SimplicialComplex()) == K);
    CHECK(join(SimplicialComplex(), K) == K);

    // dim is additive plus one
    auto J2 = join(boundary_of_simplex(3), testbed::polygon(5));
    CHECK(J2.dim() == boundary_of_simplex(3).dim() + testbed::polygon(5).dim() + 1);

    // associativity: the label shifts compose identically on either side
    auto A = testbed::polygon(4);
    auto B = SimplicialComplex::from_facets(2, {{1}, {2}});
    auto C = boundary_of_simplex(2);
    CHECK(join(join(A, B), C) == join(A, join(B, C)));
}

TEST_CASE("missing faces") {
    auto bd3 = boundary_of_simplex(3);
    CHECK(missing_faces(bd3, 3).size() == 1);
    CHECK(missing_faces(bd3, 3)[0].vertices == VertexSet::full(4));
    CHECK(missing_faces(bd3, 2).empty());

    auto C4 = testbed::polygon(4);
    auto mf = missing_faces(C4, 1);
    REQUIRE(mf.size() == 2);
    CHECK(mf[0].vertices == VertexSet::of({1, 3}));
    CHECK(mf[1].vertices == VertexSet::of({2, 4}));

    // joins add no cross-factor missing edges
    auto K = join(testbed::polygon(4), boundary_of_simplex(2));
    auto mfj = missing_faces(K, 1);
    REQUIRE(mfj.size() == 2);
    CHECK(mfj[0].vertices == VertexSet::of({1, 3}));
    CHECK(mfj[1].vertices == VertexSet::of({2, 4}));

    // every missing face has its full boundary present
    for (const auto& m : missing_faces(testbed::stacked_six(), 1)) {
        CHECK(is_missing_face(testbed::stacked_six(), m.vertices));
        CHECK_FALSE(testbed::stacked_six().has_face(m.vertices));
    }
}

TEST_CASE("stellar subdivision") {
    auto bd3 = boundary_of_simplex(3);
    auto once = stellar_subdivide_facet(bd3, VertexSet::of({1, 2, 3}));
    CHECK(once.vertex_count() == 5);
    CHECK(once.facets().size() == 6);  // 4 - 1 + 3

    auto twice = stellar_subdivide_facet(once, VertexSet::of({1, 2, 4}));
    CHECK(twice == testbed::stacked_six());
    CHECK(twice.facets().size() == 8);

    CHECK_THROWS_AS(stellar_subdivide_facet(bd3, VertexSet::of({1, 2})), std::invalid_argument);
}

TEST_CASE("generate_stacked_sphere") {
    CHECK(generate_stacked_sphere(2, 0, 1) == boundary_of_simplex(3));
    for (int cuts : {0, 1, 3, 5})
        CHECK(generate_stacked_sphere(3, cuts, 42).vertex_count() == 5 + cuts);
    // reproducible
    CHECK(generate_stacked_sphere(2, 4, 9) == generate_stacked_sphere(2, 4, 9));
}

TEST_CASE("link and skeleton") {
    auto bd3 = boundary_of_simplex(3);
    auto lk = link(bd3, 4);
    CHECK(lk.complex == boundary_of_simplex(2));
    CHECK(lk.vertex_map == std::vector<int>{1, 2, 3});

    auto sk = skeleton(boundary_of_simplex(4), 1);
    CHECK(sk.dim() == 1);
    CHECK(sk.facets().size() == 10);  // K5

    auto lc = link(testbed::polygon(4), 1);
    CHECK(lc.complex == SimplicialComplex::from_facets(2, {{1}, {2}}));
    CHECK(lc.vertex_map == std::vector<int>{2, 4});
}

TEST_CASE("all_faces") {
    auto bd3 = boundary_of_simplex(3);
    auto faces = bd3.all_faces();
    CHECK(faces.size() == 15);  // 2^4 - 1 (everything except the full set)
    CHECK(faces.front() == Simplex());
    CHECK(std::is_sorted(faces.begin(), faces.end(),
                         [](Simplex a, Simplex b) { return card_lex_less(a, b); }));
}
