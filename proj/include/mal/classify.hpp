#pragma once
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mal/bigraded.hpp"
#include "mal/graph.hpp"

namespace mal {

// ---------------------------------------------------------------------------
// sphere certification
// ---------------------------------------------------------------------------

enum class SphereVerdict { Certified, CertifiedHomology, Failed };

// Certificate for "K triangulates a d-sphere". Dimensions 0-2 are decided
// exactly; d = 3 relies on 2-sphere links plus the homology of S^3 and is
// deliberately labelled CertifiedHomology (genuine S^3 recognition is out of
// scope); d >= 4 gets homology checks only.
struct SphereCertificate {
    int dim = -1;
    SphereVerdict verdict = SphereVerdict::Failed;
    bool pure = false;
    bool pseudomanifold = false;        // every (d-1)-face in exactly two facets
    bool strongly_connected = false;
    bool links_ok = false;
    bool homology_ok = false;
    std::string reason;

    bool ok() const { return verdict != SphereVerdict::Failed; }
    bool exact() const { return verdict == SphereVerdict::Certified; }
};

namespace detail {

inline bool is_pseudomanifold(const SimplicialComplex& K) {
    if (K.dim() < 1) return false;
    std::map<std::uint64_t, int> ridge_count;
    for (const Simplex& f : K.facets())
        for (int v : f) ++ridge_count[f.without(v).raw()];
    for (const auto& [r, n] : ridge_count)
        if (n != 2) return false;
    return true;
}

inline bool is_strongly_connected(const SimplicialComplex& K) {
    const auto& fs = K.facets();
    if (fs.empty()) return false;
    std::vector<int> comp(fs.size(), -1);
    std::vector<std::size_t> stack{0};
    comp[0] = 0;
    while (!stack.empty()) {
        std::size_t i = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < fs.size(); ++j) {
            if (comp[j] >= 0) continue;
            if ((fs[i] & fs[j]).size() == fs[i].size() - 1) {
                comp[j] = 0;
                stack.push_back(j);
            }
        }
    }
    for (int c : comp)
        if (c < 0) return false;
    return true;
}

inline bool is_circle(const SimplicialComplex& K) {
    if (K.dim() != 1 || K.vertex_count() < 3) return false;
    Graph g = Graph::from_skeleton(K);
    for (int v : g.vertices())
        if (g.degree(v) != 2) return false;
    // connected with all degrees two and euler characteristic zero: one cycle
    auto s = reduced_summary(K);
    return s.h(0).trivial() && s.h(1) == GroupSummary{1, {}};
}

inline bool homology_is_sphere(const SimplicialComplex& K, int d) {
    auto s = reduced_summary(K);
    if (s.homology.size() != 1) return false;
    return s.h(d) == GroupSummary{1, {}};
}

}  // namespace detail

inline SphereCertificate certify_sphere(const SimplicialComplex& K) {
    SphereCertificate cert;
    cert.dim = K.dim();
    const int d = K.dim();
    if (d < 0) {
        cert.reason = "empty complex";
        return cert;
    }
    if (d == 0) {
        // S^0 is exactly two points
        cert.pure = K.pure();
        if (K.vertex_count() == 2 && K.facets().size() == 2) {
            cert.verdict = SphereVerdict::Certified;
            cert.pseudomanifold = cert.strongly_connected = cert.links_ok = cert.homology_ok = true;
        } else {
            cert.reason = "zero-dimensional but not two points";
        }
        return cert;
    }
    cert.pure = K.pure();
    if (!cert.pure) {
        cert.reason = "not pure";
        return cert;
    }
    cert.pseudomanifold = detail::is_pseudomanifold(K);
    if (!cert.pseudomanifold) {
        cert.reason = "a ridge is not contained in exactly two facets";
        return cert;
    }
    cert.strongly_connected = detail::is_strongly_connected(K);
    if (!cert.strongly_connected) {
        cert.reason = "facet adjacency graph is disconnected";
        return cert;
    }
    if (d == 1) {
        cert.links_ok = true;
        cert.homology_ok = detail::is_circle(K);
        cert.verdict = cert.homology_ok ? SphereVerdict::Certified : SphereVerdict::Failed;
        if (!cert.homology_ok) cert.reason = "one-dimensional but not a single cycle";
        return cert;
    }
    if (d == 2) {
        cert.links_ok = true;
        for (int v = 1; v <= K.vertex_count(); ++v)
            if (!detail::is_circle(link(K, v).complex)) {
                cert.links_ok = false;
                cert.reason = "link of vertex " + std::to_string(v) + " is not a circle";
                break;
            }
        if (!cert.links_ok) return cert;
        cert.homology_ok = detail::homology_is_sphere(K, 2);
        if (!cert.homology_ok) {
            cert.reason = "homology differs from S^2";
            return cert;
        }
        cert.verdict = SphereVerdict::Certified;  // closed surface with chi = 2
        return cert;
    }
    if (d == 3) {
        cert.links_ok = true;
        for (int v = 1; v <= K.vertex_count(); ++v) {
            auto lk = certify_sphere(link(K, v).complex);
            if (!(lk.dim == 2 && lk.exact())) {
                cert.links_ok = false;
                cert.reason = "link of vertex " + std::to_string(v) + " is not a 2-sphere";
                break;
            }
        }
        if (!cert.links_ok) return cert;
        cert.homology_ok = detail::homology_is_sphere(K, 3);
        if (!cert.homology_ok) {
            cert.reason = "homology differs from S^3";
            return cert;
        }
        cert.verdict = SphereVerdict::CertifiedHomology;
        return cert;
    }
    // d >= 4: homology checks only (links included one level deep)
    cert.links_ok = true;
    for (int v = 1; v <= K.vertex_count(); ++v)
        if (!detail::homology_is_sphere(link(K, v).complex, d - 1)) {
            cert.links_ok = false;
            cert.reason = "link of vertex " + std::to_string(v) + " lacks S^" +
                          std::to_string(d - 1) + " homology";
            break;
        }
    if (!cert.links_ok) return cert;
    cert.homology_ok = detail::homology_is_sphere(K, d);
    if (!cert.homology_ok) {
        cert.reason = "homology differs from S^" + std::to_string(d);
        return cert;
    }
    cert.verdict = SphereVerdict::CertifiedHomology;
    return cert;
}

// ---------------------------------------------------------------------------
// sphere decompositions and ring presentations
// ---------------------------------------------------------------------------

// Multiset of sphere products; each summand is the ascending list of sphere
// dimensions. An empty summand list is a single sphere S^{total}.
struct SphereDecomposition {
    int total = 0;  // dimension of the manifold, = m + n
    std::map<std::vector<int>, long> summands;

    long summand_count() const {
        long n = 0;
        for (const auto& [s, c] : summands) n += c;
        return n;
    }
    std::string to_string() const {
        if (summands.empty()) return "S^" + std::to_string(total);
        std::ostringstream os;
        bool first = true;
        for (const auto& [dims, count] : summands) {
            if (!first) os << " # ";
            os << "(";
            for (std::size_t i = 0; i < dims.size(); ++i)
                os << (i ? " x " : "") << "S^" << dims[i];
            os << ")";
            if (count > 1) os << "^#" << count;
            first = false;
        }
        return os.str();
    }
};

// Connected sums of dual stacked polytopes: for a dual stacked n-polytope with
// m facets the moment-angle manifold is
//   #_{k=3}^{m-n+1} (S^k x S^{m+n-k})^{# (k-2) C(m-n, k-1)}.
// m = n+1 yields the empty sum, a single sphere S^{m+n}.
inline SphereDecomposition mcgavran_decomposition(int m, int n) {
    if (m < n + 1) throw std::invalid_argument("mcgavran_decomposition: m < n+1");
    SphereDecomposition dec;
    dec.total = m + n;
    for (int k = 3; k <= m - n + 1; ++k) {
        long count = static_cast<long>(k - 2);
        // binomial C(m-n, k-1)
        long binom = 1;
        for (int t = 0; t < k - 1; ++t) binom = binom * (m - n - t) / (t + 1);
        count *= binom;
        if (count <= 0) continue;
        std::vector<int> dims{k, m + n - k};
        std::sort(dims.begin(), dims.end());
        dec.summands[dims] += count;
    }
    return dec;
}

// Graded ranks of the cohomology of a connected sum of sphere products:
// 1 in degrees 0 and total; every proper nonempty sub-product of each summand
// contributes in its degree.
inline std::map<int, long> decomposition_to_betti(const SphereDecomposition& dec, int total_dim) {
    std::map<int, long> out;
    out[0] += 1;
    out[total_dim] += 1;
    for (const auto& [dims, count] : dec.summands) {
        long sum = 0;
        for (int d : dims) sum += d;
        if (sum != total_dim)
            throw std::invalid_argument("decomposition_to_betti: summand dimensions do not sum to " +
                                        std::to_string(total_dim));
        const int n = static_cast<int>(dims.size());
        for (int mask = 1; mask + 1 < (1 << n); ++mask) {
            int deg = 0;
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i)) deg += dims[i];
            out[deg] += count;
        }
    }
    return out;
}

// A ring presentation for H*(Z_K) in connected-sum-of-sphere-products shape.
// The free abelian basis is {1, all proper nonempty sub-products of each
// summand, c}; the full monomial of each summand equals the fundamental class
// c and every other product of generators vanishes.
struct RingPresentation {
    int total_degree = 0;
    std::vector<std::vector<int>> summands;  // generator degrees, ascending

    std::map<int, long> graded_ranks() const {
        SphereDecomposition dec;
        dec.total = total_degree;
        for (const auto& s : summands) dec.summands[s] += 1;
        return decomposition_to_betti(dec, total_degree);
    }
    SphereDecomposition decomposition() const {
        SphereDecomposition dec;
        dec.total = total_degree;
        for (const auto& s : summands) dec.summands[s] += 1;
        return dec;
    }
};

// pairs-only presentation read off an aggregated Betti table
inline std::optional<RingPresentation> pairs_presentation_from_betti(
    const std::map<int, long>& betti, int total) {
    RingPresentation pres;
    pres.total_degree = total;
    for (const auto& [deg, rank] : betti) {
        if (deg == 0 || deg == total) continue;
        if (2 * deg > total) continue;  // handled by the dual side
        if (2 * deg == total) {
            if (rank % 2 != 0) return std::nullopt;  // middle classes must pair up
            for (long i = 0; i < rank / 2; ++i) pres.summands.push_back({deg, deg});
        } else {
            for (long i = 0; i < rank; ++i) pres.summands.push_back({deg, total - deg});
        }
    }
    return pres;
}

// ---------------------------------------------------------------------------
// dual-stacked recognition for 2-spheres
// ---------------------------------------------------------------------------

// Reverse vertex cuts: repeatedly remove a degree-3 vertex and fill its link
// triangle, largest label first, until the tetrahedron boundary remains.
// Returns the deleted vertices (original labels), or nullopt when stuck.
inline std::optional<std::vector<int>> recognize_dual_stacked(const SimplicialComplex& K) {
    {
        auto cert = certify_sphere(K);
        if (!(cert.dim == 2 && cert.exact()))
            throw std::invalid_argument("recognize_dual_stacked: not a certified 2-sphere");
    }
    SimplicialComplex cur = K;
    std::vector<int> labels(K.vertex_count());
    for (int i = 0; i < K.vertex_count(); ++i) labels[i] = i + 1;
    std::vector<int> deleted;
    while (cur.vertex_count() > 4) {
        Graph g = Graph::from_skeleton(cur);
        int pick = -1;
        for (int v = cur.vertex_count(); v >= 1; --v) {
            if (g.degree(v) != 3) continue;
            Simplex tri = g.neighbors(v);
            if (cur.has_face(tri)) continue;  // filling would not reverse a cut
            pick = v;
            break;
        }
        if (pick < 0) return std::nullopt;
        deleted.push_back(labels[pick - 1]);
        Simplex tri = g.neighbors(pick);
        // delete the vertex, add the filled triangle, relabel to 1..m-1
        std::vector<Simplex> faces;
        for (const Simplex& f : cur.facets())
            if (!f.contains(pick)) faces.push_back(f);
        faces.push_back(tri);
        std::vector<Simplex> relabeled;
        VertexSet keep = cur.vertices().without(pick);
        for (const Simplex& f : faces) {
            Simplex r;
            for (int v : f) r = r.with(keep.index_of(v) + 1);
            relabeled.push_back(r);
        }
        std::vector<int> newlabels;
        for (int v : keep) newlabels.push_back(labels[v - 1]);
        labels = std::move(newlabels);
        cur = SimplicialComplex::from_simplices(cur.vertex_count() - 1, std::move(relabeled));
    }
    if (cur == boundary_of_simplex(3)) return deleted;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// cross-polytope detection
// ---------------------------------------------------------------------------

// K = S^0 * ... * S^0 (n factors) iff m = 2n, every vertex has a unique
// non-neighbour, and the facets are exactly the transversals of the pairs.
inline bool is_cross_polytope_boundary(const SimplicialComplex& K, int n) {
    if (K.vertex_count() != 2 * n || K.dim() != n - 1) return false;
    auto me = missing_faces(K, 1);
    if (static_cast<int>(me.size()) != n) return false;
    VertexSet covered;
    for (const auto& mf : me) {
        if (covered.intersects(mf.vertices)) return false;
        covered = covered | mf.vertices;
    }
    if (covered != K.vertices()) return false;
    if (static_cast<long>(K.facets().size()) != (1L << n)) return false;
    for (const Simplex& f : K.facets())
        for (const auto& mf : me)
            if ((f & mf.vertices).size() != 1) return false;
    return true;
}

// ---------------------------------------------------------------------------
// presentation verification
// ---------------------------------------------------------------------------

enum class CaseLabel { CrossPolytope, Chordal, TwoMissingEdges, None };

inline const char* to_string(CaseLabel c) {
    switch (c) {
        case CaseLabel::CrossPolytope: return "CrossPolytope";
        case CaseLabel::Chordal: return "Chordal";
        case CaseLabel::TwoMissingEdges: return "TwoMissingEdges";
        case CaseLabel::None: return "None";
    }
    return "?";
}

struct VerificationReport {
    bool rank_match = false;
    bool torsion_free = false;
    bool pairings_unimodular = false;
    bool zero_products_ok = false;
    bool special_products_ok = false;
    std::vector<std::string> notes;

    bool pass() const {
        return rank_match && torsion_free && pairings_unimodular && zero_products_ok &&
               special_products_ok;
    }
};

namespace detail {

inline bool block_unimodular(const IntMat& mat) {
    if (mat.rows() != mat.cols()) return false;
    if (mat.rows() == 0) return true;
    auto inv = snf_invariants(mat);
    if (static_cast<int>(inv.size()) != mat.rows()) return false;
    for (const Int& d : inv)
        if (d != 1) return false;
    return true;
}

}  // namespace detail

// Checks a claimed connected-sum presentation against the computed table:
//   (1) graded ranks agree, (2) no torsion anywhere, (3) every complementary
//   Poincare pairing block is square and unimodular, (4) products that the
//   presentation declares zero vanish at class level, (5) the case-specific
//   distinguished products hit the fundamental class with coefficient +-1.
inline VerificationReport verify_presentation(const BigradedTable& table,
                                              const RingPresentation& pres,
                                              CaseLabel label) {
    VerificationReport rep;
    const int d = table.dim();
    const int m = table.m();
    const int total = m + d + 1;

    // (1) rank match
    std::map<int, long> expected = pres.graded_ranks();
    rep.rank_match = (pres.total_degree == total) && (expected == table.betti());
    if (!rep.rank_match) rep.notes.push_back("graded rank mismatch");

    // (2) torsion
    rep.torsion_free = table.torsion_free();
    if (!rep.torsion_free) rep.notes.push_back("table has torsion");
    if (!rep.rank_match || !rep.torsion_free) {
        rep.pairings_unimodular = rep.zero_products_ok = rep.special_products_ok = false;
        return rep;
    }

    // (3) complementary pairing blocks, the unit/top block included
    rep.pairings_unimodular = true;
    for (const auto& [l, J] : table.nonzero_entries()) {
        // process each complementary pair once
        const VertexSet comp = J.complement_in(m);
        const int lc = d - 1 - l;
        if (J.raw() > comp.raw()) continue;
        const long left = table.rank(l, J);
        const long right = table.rank(lc, comp);
        if (left != right) {
            rep.pairings_unimodular = false;
            rep.notes.push_back("pairing block (" + std::to_string(l) + ", " + J.to_string() +
                                ") is not square");
            continue;
        }
        if (left == 0) continue;
        if (!detail::block_unimodular(table.pairing_matrix(l, J))) {
            rep.pairings_unimodular = false;
            rep.notes.push_back("pairing block (" + std::to_string(l) + ", " + J.to_string() +
                                ") is not unimodular");
        }
    }

    // (4) + (5): scan all products of generators from disjoint supports.
    // Sub-top products must vanish, except those the presentation declares:
    // none for pairs-only, the sub-products of the three-sphere summand for
    // the triple case, everything for a product-of-spheres presentation.
    const bool product_case = label == CaseLabel::CrossPolytope;
    std::vector<VertexSet> triple_supports;  // I1, I2, and their complement
    std::optional<std::pair<VertexSet, VertexSet>> allowed_pair;
    if (label == CaseLabel::TwoMissingEdges) {
        auto me = missing_faces(table.complex(), 1);
        if (me.size() == 2) {
            allowed_pair = std::make_pair(me[0].vertices, me[1].vertices);
            triple_supports = {me[0].vertices, me[1].vertices,
                               (me[0].vertices | me[1].vertices).complement_in(m)};
        }
    }
    rep.zero_products_ok = true;
    const auto entries = table.nonzero_entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& [la, Ja] = entries[i];
        if (la == -1) continue;  // unit multiplies trivially
        for (std::size_t j = i + 1; j < entries.size(); ++j) {
            const auto& [lb, Jb] = entries[j];
            if (lb == -1 || Ja.intersects(Jb)) continue;
            if (la + lb + 1 > d) continue;
            const bool lands_on_top = (la + lb + 1 == d) && ((Ja | Jb) == table.complex().vertices());
            if (lands_on_top) continue;  // covered by (3)
            bool allowed = product_case;
            if (!triple_supports.empty()) {
                bool a_in = false, b_in = false;
                for (const VertexSet& s : triple_supports) {
                    if (Ja == s) a_in = true;
                    if (Jb == s) b_in = true;
                }
                if (a_in && b_in) allowed = true;
            }
            for (const auto& a : table.generators(la, Ja).all)
                for (const auto& b : table.generators(lb, Jb).all) {
                    const bool zero = table.is_zero_class(table.cup(a, b));
                    if (!allowed && !zero) {
                        rep.zero_products_ok = false;
                        rep.notes.push_back("unexpected nonzero product at (" +
                                            std::to_string(la) + ", " + Ja.to_string() + ") x (" +
                                            std::to_string(lb) + ", " + Jb.to_string() + ")");
                    }
                    if (product_case && zero) {
                        rep.zero_products_ok = false;
                        rep.notes.push_back("product presentation requires nonzero product at (" +
                                            std::to_string(la) + ", " + Ja.to_string() + ") x (" +
                                            std::to_string(lb) + ", " + Jb.to_string() + ")");
                    }
                }
        }
    }

    // (5) distinguished products
    rep.special_products_ok = true;
    if (label == CaseLabel::TwoMissingEdges) {
        rep.special_products_ok = false;
        if (allowed_pair) {
            const auto& [I1, I2] = *allowed_pair;
            const auto& g1 = table.generators(0, I1).free_part;
            const auto& g2 = table.generators(0, I2).free_part;
            const VertexSet rest = (I1 | I2).complement_in(m);
            const auto& gb = table.generators(d - 2, rest).free_part;
            if (g1.size() == 1 && g2.size() == 1 && gb.size() == 1) {
                Int v = table.pair_with_fundamental(
                    table.cup({g1[0], g2[0], gb[0]}));
                rep.special_products_ok = (v == 1 || v == -1);
                if (!rep.special_products_ok)
                    rep.notes.push_back("triple product does not hit the fundamental class");
            } else {
                rep.notes.push_back("missing-edge entries do not have rank one");
            }
        } else {
            rep.notes.push_back("expected exactly two missing edges");
        }
    } else if (product_case) {
        // the full product of the diagonal classes represents the fundamental class
        auto me = missing_faces(table.complex(), 1);
        std::vector<CohomologyClass> factors;
        bool ok = true;
        for (const auto& mf : me) {
            const auto& g = table.generators(0, mf.vertices).free_part;
            if (g.size() != 1) { ok = false; break; }
            factors.push_back(g[0]);
        }
        if (ok && !factors.empty()) {
            Int v = table.pair_with_fundamental(table.cup(factors));
            rep.special_products_ok = (v == 1 || v == -1);
        } else {
            rep.special_products_ok = false;
        }
        if (!rep.special_products_ok)
            rep.notes.push_back("full product does not hit the fundamental class");
    }
    return rep;
}

// ---------------------------------------------------------------------------
// weak Golod checks (products only; Massey products are out of scope)
// ---------------------------------------------------------------------------

struct WeakGolodResult {
    bool self_products_trivial = false;       // products in H*(Z_K) all vanish
    bool deletions_trivial = true;            // every K minus a vertex is product-trivial
    std::vector<int> failing_deletions;
    // weak analogue of minimal non-Golodness: K fails, every deletion passes
    bool weak_min_non_golod() const { return !self_products_trivial && deletions_trivial; }
};

inline WeakGolodResult weak_min_non_golod(const SimplicialComplex& K, const TableOptions& opt = {}) {
    WeakGolodResult res;
    BigradedTable t = BigradedTable::decompose(K, opt);
    res.self_products_trivial = t.has_trivial_products();
    for (int v = 1; v <= K.vertex_count(); ++v) {
        BigradedTable tv = BigradedTable::decompose(delete_vertex(K, v), opt);
        if (!tv.has_trivial_products()) {
            res.deletions_trivial = false;
            res.failing_deletions.push_back(v);
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// missing-face generation check (sufficient condition in any dimension)
// ---------------------------------------------------------------------------

struct MissingFaceGenerationResult {
    int q = 0;  // floor((2d-1)/3)
    bool generated_by_missing_faces = false;
    struct PerDegree {
        int l;
        bool all_injective;
    };
    std::vector<PerDegree> detail;
};

// For a certified d-sphere K (not a simplex boundary): if every H~^l(K_J) with
// l <= floor((2d-1)/3) embeds via evaluation against missing-face cycles, the
// ring is a connected sum of products of two spheres.
inline MissingFaceGenerationResult check_generated_by_missing_faces(const SimplicialComplex& K, const BigradedTable& table) {
    const int d = K.dim();
    if (!certify_sphere(K).ok())
        throw std::invalid_argument("check_generated_by_missing_faces: not a certified sphere");
    if (K == boundary_of_simplex(d + 1))
        throw std::invalid_argument("check_generated_by_missing_faces: simplex boundaries are excluded");
    MissingFaceGenerationResult res;
    res.q = (2 * d - 1) / 3;
    res.generated_by_missing_faces = true;
    for (int l = 0; l <= res.q; ++l) {
        auto ev = table.missing_face_evaluation(l);
        res.detail.push_back({l, ev.all_injective});
        if (!ev.all_injective) res.generated_by_missing_faces = false;
    }
    return res;
}

// ---------------------------------------------------------------------------
// classification reports
// ---------------------------------------------------------------------------

struct ClassificationReport {
    SphereCertificate certificate;
    ChordalityResult chordality;
    MissingEdgeReport missing_edges;
    CaseLabel case_label = CaseLabel::None;
    std::optional<SphereDecomposition> decomposition;
    std::optional<RingPresentation> presentation;
    std::optional<VerificationReport> verification;
    std::optional<std::vector<int>> dual_stacked_sequence;  // 2-spheres only
    std::optional<bool> weak_min_non_golod_flag;            // informational
    std::map<int, long> betti;
    std::vector<std::string> notes;

    bool verified() const {
        return case_label != CaseLabel::None && verification && verification->pass();
    }
};

namespace detail {

inline void attach_common(ClassificationReport& rep, const SimplicialComplex& K,
                          const BigradedTable& table) {
    rep.betti = table.betti();
    rep.chordality = is_chordal(Graph::from_skeleton(skeleton(K, 1)));
    rep.missing_edges = missing_edge_structure(K);
}

}  // namespace detail

// Two-dimensional spheres: the octahedron (cube dual) is the product case;
// otherwise chordality of the 1-skeleton, dual-stacked recognition and the
// verified pairs presentation are equivalent, and all three are computed.
inline ClassificationReport classify_2sphere(const SimplicialComplex& K, const BigradedTable& table,
                                             bool golod_check = true) {
    auto cert = certify_sphere(K);
    if (!(cert.dim == 2 && cert.exact()))
        throw std::invalid_argument("classify_2sphere: not a certified 2-sphere");
    ClassificationReport rep;
    rep.certificate = cert;
    detail::attach_common(rep, K, table);
    const int m = K.vertex_count();
    const int total = m + 3;

    if (is_cross_polytope_boundary(K, 3)) {
        rep.case_label = CaseLabel::CrossPolytope;
        rep.presentation = RingPresentation{total, {{3, 3, 3}}};
        rep.decomposition = rep.presentation->decomposition();
        rep.verification = verify_presentation(table, *rep.presentation, rep.case_label);
        rep.notes.push_back("octahedron: Z_K is the threefold product of 3-spheres");
        return rep;
    }

    rep.dual_stacked_sequence = recognize_dual_stacked(K);
    const bool stacked = rep.dual_stacked_sequence.has_value();
    if (stacked != rep.chordality.chordal)
        rep.notes.push_back("internal inconsistency: chordality and dual-stacked disagree");

    if (rep.chordality.chordal) {
        rep.case_label = CaseLabel::Chordal;
        rep.decomposition = mcgavran_decomposition(m, 3);
        auto pres = pairs_presentation_from_betti(table.betti(), total);
        if (pres) {
            rep.presentation = *pres;
            rep.verification = verify_presentation(table, *pres, rep.case_label);
        } else {
            rep.notes.push_back("no pairs presentation: odd middle rank");
        }
        if (golod_check) {
            auto wg = weak_min_non_golod(K, TableOptions{});
            rep.weak_min_non_golod_flag = wg.weak_min_non_golod();
        }
    } else {
        rep.case_label = CaseLabel::None;
        rep.notes.push_back("1-skeleton has a chordless cycle; no connected-sum ring");
    }
    return rep;
}

// Circles (boundaries of polygons): every polygon is dual stacked, so the
// table always matches the connected-sum formula. The square is the 2-dim
// cross-polytope (a product of two spheres); larger polygons get the pairs
// presentation.
inline ClassificationReport classify_circle(const SimplicialComplex& K,
                                            const BigradedTable& table) {
    auto cert = certify_sphere(K);
    if (!(cert.dim == 1 && cert.exact()))
        throw std::invalid_argument("classify_circle: not a certified circle");
    ClassificationReport rep;
    rep.certificate = cert;
    detail::attach_common(rep, K, table);
    const int m = K.vertex_count();
    const int total = m + 2;
    if (is_cross_polytope_boundary(K, 2)) {
        rep.case_label = CaseLabel::CrossPolytope;
        rep.presentation = RingPresentation{total, {{3, 3}}};
        rep.decomposition = rep.presentation->decomposition();
        rep.verification = verify_presentation(table, *rep.presentation, rep.case_label);
        return rep;
    }
    rep.case_label = CaseLabel::Chordal;
    rep.decomposition = mcgavran_decomposition(m, 2);
    auto pres = pairs_presentation_from_betti(table.betti(), total);
    if (pres) {
        rep.presentation = *pres;
        rep.verification = verify_presentation(table, *pres, rep.case_label);
    }
    rep.notes.push_back("polygon boundary: dual stacked for every m");
    return rep;
}

// Spheres of dimension >= 4: the two-way characterization is specific to
// dimensions 2 and 3; here only the missing-face sufficient condition is
// available. A verified pass reports case Chordal (pairs presentation); a
// failure is inconclusive and reports case None with a caveat.
inline ClassificationReport classify_higher_sphere(const SimplicialComplex& K,
                                                   const BigradedTable& table) {
    auto cert = certify_sphere(K);
    const int d = K.dim();
    if (!(d >= 4 && cert.ok()))
        throw std::invalid_argument("classify_higher_sphere: not a certified sphere of dim >= 4");
    ClassificationReport rep;
    rep.certificate = cert;
    detail::attach_common(rep, K, table);
    const int total = K.vertex_count() + d + 1;
    rep.notes.push_back("dimension " + std::to_string(d) +
                        ": only the missing-face sufficient condition applies");
    if (K == boundary_of_simplex(d + 1)) {
        rep.case_label = CaseLabel::Chordal;
        rep.presentation = RingPresentation{total, {}};
        rep.decomposition = rep.presentation->decomposition();
        rep.verification = verify_presentation(table, *rep.presentation, rep.case_label);
        return rep;
    }
    auto ss = check_generated_by_missing_faces(K, table);
    std::ostringstream q;
    q << "missing-face generation up to degree " << ss.q << ": "
      << (ss.generated_by_missing_faces ? "holds" : "fails");
    rep.notes.push_back(q.str());
    if (ss.generated_by_missing_faces) {
        auto pres = pairs_presentation_from_betti(table.betti(), total);
        if (pres) {
            rep.presentation = *pres;
            rep.decomposition = pres->decomposition();
            rep.verification = verify_presentation(table, *pres, CaseLabel::Chordal);
            if (rep.verification->pass()) {
                rep.case_label = CaseLabel::Chordal;
                return rep;
            }
        }
    }
    rep.case_label = CaseLabel::None;
    rep.notes.push_back("inconclusive: the sufficient condition does not decide this sphere");
    return rep;
}

// Three-dimensional spheres: cross-polytope, chordal skeleton, or exactly two
// missing edges forming a chordless 4-cycle; anything else gets case None.
inline ClassificationReport classify_3sphere(const SimplicialComplex& K,
                                             const BigradedTable& table) {
    auto cert = certify_sphere(K);
    if (!(cert.dim == 3 && cert.ok()))
        throw std::invalid_argument("classify_3sphere: not a certified 3-sphere");
    ClassificationReport rep;
    rep.certificate = cert;
    detail::attach_common(rep, K, table);
    const int m = K.vertex_count();
    const int total = m + 4;
    if (cert.verdict == SphereVerdict::CertifiedHomology)
        rep.notes.push_back("3-sphere certificate is homological; PL recognition is out of scope");

    if (is_cross_polytope_boundary(K, 4)) {
        rep.case_label = CaseLabel::CrossPolytope;
        rep.presentation = RingPresentation{total, {{3, 3, 3, 3}}};
        rep.decomposition = rep.presentation->decomposition();
        rep.verification = verify_presentation(table, *rep.presentation, rep.case_label);
        return rep;
    }

    if (rep.chordality.chordal) {
        rep.case_label = CaseLabel::Chordal;
        auto pres = pairs_presentation_from_betti(table.betti(), total);
        if (pres) {
            rep.presentation = *pres;
            rep.decomposition = pres->decomposition();
            rep.verification = verify_presentation(table, *pres, rep.case_label);
        } else {
            rep.notes.push_back("no pairs presentation: odd middle rank");
        }
        return rep;
    }

    const auto& me = rep.missing_edges;
    if (me.missing_edges.size() == 2 && me.pairwise_disjoint && me.all_pairs_chordless_4cycles) {
        rep.case_label = CaseLabel::TwoMissingEdges;
        // one product of three spheres (3, 3, m-2) plus N hyperbolic pairs
        RingPresentation pres{total, {{3, 3, m - 2}}};
        std::map<int, long> covered = pres.graded_ranks();
        bool consistent = true;
        for (const auto& [deg, rank] : table.betti()) {
            long extra = rank - (covered.count(deg) ? covered[deg] : 0);
            if (extra < 0) consistent = false;
            if (deg == 0 || deg == total || 2 * deg > total) continue;
            if (2 * deg == total) {
                if (extra % 2 != 0) consistent = false;
                for (long i = 0; i < extra / 2; ++i) pres.summands.push_back({deg, deg});
            } else {
                for (long i = 0; i < extra; ++i) pres.summands.push_back({deg, total - deg});
            }
        }
        if (!consistent)
            rep.notes.push_back("betti table undercuts the triple-product presentation");
        rep.presentation = pres;
        rep.decomposition = pres.decomposition();
        rep.verification = verify_presentation(table, pres, rep.case_label);
        return rep;
    }

    rep.case_label = CaseLabel::None;
    if (!me.pairwise_disjoint)
        rep.notes.push_back("missing edges are not pairwise disjoint; no connected-sum ring");
    else
        rep.notes.push_back("missing-edge structure matches no case");
    return rep;
}

}  // namespace mal
