#pragma once
#include <map>
#include <stdexcept>
#include <vector>

#include "mal/linalg.hpp"
#include "mal/simplicial_complex.hpp"

namespace mal {

// Ordered bases of the reduced simplicial chain groups: for each degree
// k >= -1 the lexicographically sorted k-simplices. Index 0 holds degree -1,
// whose single basis element is the empty simplex; this keeps the augmentation
// inside the same code path as every other boundary map.
class ChainBasis {
public:
    ChainBasis() = default;

    static ChainBasis from_faces(std::vector<Simplex> faces) {
        ChainBasis b;
        std::sort(faces.begin(), faces.end(), card_lex_less);
        for (const Simplex& f : faces) {
            int slot = f.size();  // degree + 1
            if (static_cast<int>(b.by_degree_.size()) <= slot) b.by_degree_.resize(slot + 1);
            b.by_degree_[slot].push_back(f);
        }
        if (b.by_degree_.empty()) b.by_degree_.push_back({Simplex()});
        return b;
    }

    static ChainBasis of(const SimplicialComplex& K) { return from_faces(K.all_faces()); }

    // faces of K contained in J, original labels kept
    static ChainBasis restricted(const std::vector<Simplex>& all_faces, VertexSet J) {
        std::vector<Simplex> sel;
        for (const Simplex& f : all_faces)
            if (f.subset_of(J)) sel.push_back(f);
        return from_faces(std::move(sel));
    }

    int max_degree() const { return static_cast<int>(by_degree_.size()) - 2; }

    const std::vector<Simplex>& faces(int k) const {
        static const std::vector<Simplex> none;
        int slot = k + 1;
        if (slot < 0 || slot >= static_cast<int>(by_degree_.size())) return none;
        return by_degree_[slot];
    }

    int count(int k) const { return static_cast<int>(faces(k).size()); }

    int index_of(int k, Simplex s) const {
        const auto& fs = faces(k);
        auto it = std::lower_bound(fs.begin(), fs.end(), s, LexLess{});
        if (it == fs.end() || *it != s) throw std::out_of_range("ChainBasis: no such simplex");
        return static_cast<int>(it - fs.begin());
    }

private:
    std::vector<std::vector<Simplex>> by_degree_;
};

// Matrix of d_k : C_k -> C_{k-1}; the column of a k-simplex has sign (-1)^i on
// the face obtained by removing its i-th smallest vertex. d_0 is the
// augmentation onto the empty simplex.
inline Mat64 boundary_matrix(const ChainBasis& basis, int k) {
    Mat64 m(basis.count(k - 1), basis.count(k));
    const auto& cols = basis.faces(k);
    for (int j = 0; j < static_cast<int>(cols.size()); ++j) {
        int i = 0;
        for (int v : cols[j]) {
            m.at(basis.index_of(k - 1, cols[j].without(v)), j) = (i % 2 == 0) ? 1 : -1;
            ++i;
        }
    }
    return m;
}

struct GroupSummary {
    long rank = 0;
    std::vector<Int> torsion;  // invariant factors > 1, d_1 | d_2 | ...
    bool trivial() const { return rank == 0 && torsion.empty(); }
    bool operator==(const GroupSummary&) const = default;
};

// Ranks and torsion of all reduced homology and cohomology groups, computed
// from the Smith invariants of the boundary maps. Degrees with trivial groups
// are omitted. Universal coefficients hold by construction:
//   rank H~^k = rank H~_k,  torsion H~^k = torsion H~_{k-1}.
struct HomologySummary {
    std::map<int, GroupSummary> homology;
    std::map<int, GroupSummary> cohomology;

    const GroupSummary& h(int k) const { return get(homology, k); }
    const GroupSummary& coh(int k) const { return get(cohomology, k); }

private:
    static const GroupSummary& get(const std::map<int, GroupSummary>& m, int k) {
        static const GroupSummary zero;
        auto it = m.find(k);
        return it == m.end() ? zero : it->second;
    }
};

inline HomologySummary reduced_summary(const ChainBasis& basis) {
    const int maxd = basis.max_degree();
    std::vector<long> rank(maxd + 3, 0);                 // rank[k+1] = rank d_k
    std::vector<std::vector<Int>> tors(maxd + 3);        // factors > 1 of d_k
    for (int k = 0; k <= maxd; ++k) {
        auto inv = snf_invariants_checked(boundary_matrix(basis, k));
        rank[k + 1] = static_cast<long>(inv.size());
        for (const Int& d : inv)
            if (d > 1) tors[k + 1].push_back(d);
    }
    HomologySummary out;
    for (int k = -1; k <= maxd; ++k) {
        GroupSummary hom, coh;
        hom.rank = coh.rank = basis.count(k) - rank[k + 1] - rank[k + 2];
        hom.torsion = tors[k + 2];  // torsion of H_k comes from d_{k+1}
        coh.torsion = tors[k + 1];  // torsion of H^k comes from d_k
        if (!hom.trivial()) out.homology[k] = hom;
        if (!coh.trivial()) out.cohomology[k] = coh;
    }
    return out;
}

inline HomologySummary reduced_summary(const SimplicialComplex& K) {
    return reduced_summary(ChainBasis::of(K));
}

// Generator representatives of ker(out_map) / im(in_map) over Z, where
// out_map * in_map = 0. Free generators first, then torsion with orders.
struct Generators {
    std::vector<std::vector<Int>> free_part;
    std::vector<std::pair<std::vector<Int>, Int>> torsion_part;  // (vector, order)

    std::size_t total() const { return free_part.size() + torsion_part.size(); }
    std::vector<std::vector<Int>> all() const {
        auto v = free_part;
        for (const auto& [g, o] : torsion_part) v.push_back(g);
        return v;
    }
};

inline Generators quotient_generators(const IntMat& out_map, const IntMat& in_map) {
    Generators res;
    const auto sf = smith_normal_form(out_map);
    const int n = out_map.cols();
    const int z = n - sf.rank;  // kernel dimension
    if (z == 0) return res;
    // kernel basis = last z columns of Q; kernel coordinates of x are the last
    // z rows of C x (C = Q^{-1})
    IntMat Z(n, z);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < z; ++j) Z.at(i, j) = sf.q.at(i, sf.rank + j);
    IntMat X(z, in_map.cols());
    {
        IntMat cb = sf.c.times(in_map);
        for (int i = 0; i < z; ++i)
            for (int j = 0; j < in_map.cols(); ++j) X.at(i, j) = cb.at(sf.rank + i, j);
    }
    const auto sx = smith_normal_form(X);
    // columns of P^{-1} (= R) are the generators in kernel coordinates; the
    // i-th has order d_i for i < rank, infinite order past the rank
    for (int i = 0; i < z; ++i) {
        Int order = i < sx.rank ? sx.d.at(i, i) : Int(0);
        if (order == 1) continue;
        std::vector<Int> col(z);
        for (int k = 0; k < z; ++k) col[k] = sx.r.at(k, i);
        std::vector<Int> vec = Z.times(col);
        if (order == 0)
            res.free_part.push_back(std::move(vec));
        else
            res.torsion_part.emplace_back(std::move(vec), order);
    }
    return res;
}

inline Generators homology_generators(const ChainBasis& basis, int degree) {
    return quotient_generators(widen(boundary_matrix(basis, degree)),
                               widen(boundary_matrix(basis, degree + 1)));
}

inline Generators cohomology_generators(const ChainBasis& basis, int degree) {
    return quotient_generators(widen(boundary_matrix(basis, degree + 1)).transposed(),
                               widen(boundary_matrix(basis, degree)).transposed());
}

// Kronecker pairing <c, g> = sum c(s) g(s) over the shared basis.
inline Int evaluate(const std::vector<Int>& cochain, const std::vector<Int>& chain) {
    if (cochain.size() != chain.size())
        throw std::invalid_argument("evaluate: basis mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < chain.size(); ++i)
        if (cochain[i] != 0 && chain[i] != 0) s += cochain[i] * chain[i];
    return s;
}

// As above but asserts the inputs actually descend to (co)homology.
inline Int evaluate_checked(const ChainBasis& basis, int degree,
                            const std::vector<Int>& cochain, const std::vector<Int>& chain) {
    if (static_cast<int>(cochain.size()) != basis.count(degree) ||
        static_cast<int>(chain.size()) != basis.count(degree))
        throw std::invalid_argument("evaluate: basis mismatch");
    const Mat64 dk = boundary_matrix(basis, degree);
    const Mat64 dk1 = boundary_matrix(basis, degree + 1);
    // d(chain) = 0
    std::vector<Int> img(dk.rows(), Int(0));
    for (int i = 0; i < dk.rows(); ++i)
        for (int j = 0; j < dk.cols(); ++j)
            if (dk.at(i, j) != 0) img[i] += Int(dk.at(i, j)) * chain[j];
    for (const Int& x : img)
        if (x != 0) throw std::invalid_argument("evaluate: chain is not a cycle");
    // delta(cochain) = cochain o d_{degree+1} = 0
    for (int j = 0; j < dk1.cols(); ++j) {
        Int acc = 0;
        for (int i = 0; i < dk1.rows(); ++i)
            if (dk1.at(i, j) != 0) acc += Int(dk1.at(i, j)) * cochain[i];
        if (acc != 0) throw std::invalid_argument("evaluate: cochain is not a cocycle");
    }
    return evaluate(cochain, chain);
}

// The boundary cycle of the simplex on a missing face I, written in the chain
// basis at degree |I| - 2. It is a cycle of K because every proper subset of a
// missing face is a face.
inline std::vector<Int> missing_face_cycle(const SimplicialComplex& K, const ChainBasis& basis,
                                           Simplex I) {
    if (!is_missing_face(K, I))
        throw std::invalid_argument("missing_face_cycle: not a missing face");
    const int degree = I.size() - 2;
    std::vector<Int> v(basis.count(degree), Int(0));
    int i = 0;
    for (int w : I) {
        v[basis.index_of(degree, I.without(w))] = (i % 2 == 0) ? 1 : -1;
        ++i;
    }
    return v;
}

}  // namespace mal
