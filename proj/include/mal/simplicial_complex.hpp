#pragma once
#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mal/vertex_set.hpp"

namespace mal {

// An abstract simplex is identified with its vertex set.
using Simplex = VertexSet;

// A missing face (minimal non-face): not a face, every proper subset is one.
struct MissingFace {
    Simplex vertices;
    int dimension = 0;  // |vertices| - 1
};

// Finite simplicial complex on the vertex set {1..m}, stored by its
// inclusion-maximal faces in lexicographic order. Canonical: two complexes are
// equal iff their encodings are byte-identical. Every label 1..m must occur in
// some facet; the empty simplex is always a face. Immutable after construction.
class SimplicialComplex {
public:
    SimplicialComplex() = default;  // the empty complex (m = 0, single face {})

    // Canonicalizing constructor: absorbs non-maximal faces, sorts, checks coverage.
    static SimplicialComplex from_simplices(int m, std::vector<Simplex> faces) {
        if (m < 0 || m > VertexSet::max_label)
            throw std::invalid_argument("vertex count out of range");
        SimplicialComplex K;
        K.m_ = m;
        std::sort(faces.begin(), faces.end(), LexLess{});
        faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
        VertexSet covered;
        for (const Simplex& f : faces) {
            if (!f.subset_of(VertexSet::full(m)))
                throw std::invalid_argument("vertex label out of range 1.." + std::to_string(m));
            covered = covered | f;
        }
        if (covered != VertexSet::full(m)) {
            int missing = VertexSet::full(m).minus(covered).min();
            throw std::invalid_argument("vertex " + std::to_string(missing) +
                                        " does not occur in any facet");
        }
        for (const Simplex& f : faces) {
            bool maximal = true;
            for (const Simplex& g : faces)
                if (f != g && f.subset_of(g)) { maximal = false; break; }
            if (maximal) K.facets_.push_back(f);
        }
        if (m == 0) K.facets_.clear();
        for (const Simplex& f : K.facets_) K.dim_ = std::max(K.dim_, f.size() - 1);
        return K;
    }

    // Public builder from raw facet lists (1-based labels). Rejects duplicate
    // vertices within a facet and labels outside 1..m.
    static SimplicialComplex from_facets(int m, const std::vector<std::vector<int>>& facets) {
        std::vector<Simplex> fs;
        fs.reserve(facets.size());
        for (const auto& f : facets) {
            Simplex s;
            for (int v : f) {
                if (v < 1 || v > m)
                    throw std::invalid_argument("vertex label " + std::to_string(v) +
                                                " out of range 1.." + std::to_string(m));
                if (s.contains(v))
                    throw std::invalid_argument("duplicate vertex " + std::to_string(v) +
                                                " inside a facet");
                s = s.with(v);
            }
            fs.push_back(s);
        }
        return from_simplices(m, std::move(fs));
    }

    int vertex_count() const { return m_; }
    int dim() const { return dim_; }  // -1 for the empty complex
    const std::vector<Simplex>& facets() const { return facets_; }
    VertexSet vertices() const { return VertexSet::full(m_); }

    bool has_face(Simplex s) const {
        if (s.empty()) return true;
        for (const Simplex& f : facets_)
            if (s.subset_of(f)) return true;
        return false;
    }

    bool pure() const {
        for (const Simplex& f : facets_)
            if (f.size() - 1 != dim_) return false;
        return true;
    }

    // All faces including the empty simplex, by (dimension, lex). The count is
    // exponential in the facet size; fine for the desk-scale complexes here.
    std::vector<Simplex> all_faces() const {
        std::vector<Simplex> out;
        std::vector<std::uint64_t> seen;
        for (const Simplex& f : facets_) {
            // enumerate subsets of the facet mask
            std::uint64_t fm = f.raw();
            std::uint64_t sub = fm;
            while (true) {
                seen.push_back(sub);
                if (sub == 0) break;
                sub = (sub - 1) & fm;
            }
        }
        seen.push_back(0);
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        out.reserve(seen.size());
        for (std::uint64_t b : seen) out.push_back(Simplex(b));
        std::sort(out.begin(), out.end(), card_lex_less);
        return out;
    }

    std::size_t face_count() const { return all_faces().size(); }

    // Canonical text encoding (also the on-disk format payload).
    std::string canonical_text() const {
        std::ostringstream os;
        os << "m " << m_ << "\n";
        for (const Simplex& f : facets_) {
            bool first = true;
            for (int v : f) {
                if (!first) os << ' ';
                os << v;
                first = false;
            }
            os << "\n";
        }
        return os.str();
    }

    // FNV-1a of the canonical encoding; stable across runs and platforms.
    std::uint64_t hash() const {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (unsigned char c : canonical_text()) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        return h;
    }

    bool operator==(const SimplicialComplex& o) const {
        return m_ == o.m_ && facets_ == o.facets_;
    }

private:
    int m_ = 0;
    std::vector<Simplex> facets_;
    int dim_ = -1;
};

// A full subcomplex relabelled to 1..|J|, with the map back to parent labels.
struct Subcomplex {
    SimplicialComplex complex;
    std::vector<int> vertex_map;  // vertex_map[i] = parent label of vertex i+1

    int to_parent(int v) const { return vertex_map.at(v - 1); }
    VertexSet to_parent_set(VertexSet s) const {
        VertexSet out;
        for (int v : s) out = out.with(to_parent(v));
        return out;
    }
};

// Faces of K contained in J, with their original labels (no relabelling).
inline std::vector<Simplex> restricted_facets(const SimplicialComplex& K, VertexSet J) {
    std::vector<Simplex> faces;
    for (const Simplex& f : K.facets()) faces.push_back(f & J);
    for (int v : J) faces.push_back(Simplex::single(v));
    return faces;
}

inline Subcomplex full_subcomplex(const SimplicialComplex& K, VertexSet J) {
    if (!J.subset_of(K.vertices()))
        throw std::invalid_argument("full_subcomplex: J not a subset of the vertex set");
    Subcomplex out;
    out.vertex_map = J.labels();
    std::vector<Simplex> faces;
    for (const Simplex& f : restricted_facets(K, J)) {
        Simplex rel;
        for (int v : f) rel = rel.with(J.index_of(v) + 1);
        faces.push_back(rel);
    }
    out.complex = SimplicialComplex::from_simplices(J.size(), std::move(faces));
    return out;
}

inline SimplicialComplex delete_vertex(const SimplicialComplex& K, int v) {
    return full_subcomplex(K, K.vertices().without(v)).complex;
}

// Join K1 * K2; the labels of K2 are shifted by m1. Joining with the empty
// complex is the identity.
inline SimplicialComplex join(const SimplicialComplex& K1, const SimplicialComplex& K2) {
    const int m1 = K1.vertex_count(), m2 = K2.vertex_count();
    if (m1 + m2 > VertexSet::max_label) throw std::invalid_argument("join: too many vertices");
    if (m1 == 0) return K2;
    if (m2 == 0) return K1;
    std::vector<Simplex> faces;
    for (const Simplex& f1 : K1.facets())
        for (const Simplex& f2 : K2.facets())
            faces.push_back(f1 | Simplex(f2.raw() << m1));
    return SimplicialComplex::from_simplices(m1 + m2, std::move(faces));
}

// link(K, v) = { s \ {v} : v in s in K }, relabelled like a full subcomplex.
inline Subcomplex link(const SimplicialComplex& K, int v) {
    if (!K.vertices().contains(v)) throw std::invalid_argument("link: no such vertex");
    VertexSet nbrs;
    for (const Simplex& f : K.facets())
        if (f.contains(v)) nbrs = nbrs | f.without(v);
    Subcomplex out;
    out.vertex_map = nbrs.labels();
    std::vector<Simplex> faces;
    faces.push_back(Simplex());
    for (const Simplex& f : K.facets()) {
        if (!f.contains(v)) continue;
        Simplex rel;
        for (int u : f.without(v)) rel = rel.with(nbrs.index_of(u) + 1);
        faces.push_back(rel);
    }
    out.complex = SimplicialComplex::from_simplices(nbrs.size(), std::move(faces));
    return out;
}

// k-skeleton; skeleton(K, 1) is the graph of K.
inline SimplicialComplex skeleton(const SimplicialComplex& K, int k) {
    if (k < 0 || k > K.dim()) throw std::invalid_argument("skeleton: bad dimension");
    std::vector<Simplex> faces;
    for (const Simplex& f : K.facets()) {
        if (f.size() - 1 <= k) {
            faces.push_back(f);
            continue;
        }
        for (const Simplex& s : k_subsets(f, k + 1)) faces.push_back(s);
    }
    return SimplicialComplex::from_simplices(K.vertex_count(), std::move(faces));
}

// MF_n(K): missing faces of dimension n (|I| = n+1). I is missing iff I is not
// a face but every boundary facet of I is.
inline std::vector<MissingFace> missing_faces(const SimplicialComplex& K, int n) {
    if (n < 0 || n > K.dim() + 1) throw std::invalid_argument("missing_faces: bad dimension");
    std::vector<MissingFace> out;
    for (const Simplex& c : k_subsets(K.vertices(), n + 1)) {
        if (K.has_face(c)) continue;
        bool boundary_present = true;
        for (int v : c)
            if (!K.has_face(c.without(v))) { boundary_present = false; break; }
        if (boundary_present) out.push_back({c, n});
    }
    return out;
}

inline bool is_missing_face(const SimplicialComplex& K, Simplex I) {
    if (I.size() < 1 || K.has_face(I)) return false;
    for (int v : I)
        if (!K.has_face(I.without(v))) return false;
    return true;
}

// Stellar subdivision of a facet: the new vertex m+1 is coned over the facet
// boundary. A facet of size s is replaced by s facets.
inline SimplicialComplex stellar_subdivide_facet(const SimplicialComplex& K, Simplex facet) {
    const auto& fs = K.facets();
    if (std::find(fs.begin(), fs.end(), facet) == fs.end())
        throw std::invalid_argument("stellar_subdivide_facet: not a facet");
    if (!K.pure()) throw std::invalid_argument("stellar_subdivide_facet: complex is not pure");
    const int nv = K.vertex_count() + 1;
    std::vector<Simplex> faces;
    for (const Simplex& f : fs)
        if (f != facet) faces.push_back(f);
    for (int v : facet) faces.push_back(facet.without(v).with(nv));
    return SimplicialComplex::from_simplices(nv, std::move(faces));
}

// Seeded stacked d-sphere: start from the boundary of the (d+1)-simplex and
// stellarly subdivide `cuts` pseudo-randomly chosen facets (splitmix64, facet
// index = next() mod facet count against the canonical facet order).
inline SimplicialComplex boundary_of_simplex(int k) {
    if (k < 1 || k + 1 > VertexSet::max_label)
        throw std::invalid_argument("boundary_of_simplex: bad dimension");
    std::vector<Simplex> faces = k_subsets(VertexSet::full(k + 1), k);
    return SimplicialComplex::from_simplices(k + 1, std::move(faces));
}

inline SimplicialComplex generate_stacked_sphere(int d, int cuts, std::uint64_t seed) {
    if (d < 1 || cuts < 0) throw std::invalid_argument("generate_stacked_sphere: bad parameters");
    SimplicialComplex K = boundary_of_simplex(d + 1);
    SplitMix64 rng(seed);
    for (int i = 0; i < cuts; ++i) {
        std::size_t idx = static_cast<std::size_t>(rng.below(K.facets().size()));
        K = stellar_subdivide_facet(K, K.facets()[idx]);
    }
    return K;
}

}  // namespace mal
