#pragma once
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "mal/cache.hpp"
#include "mal/homology.hpp"
#include "mal/parallel.hpp"
#include "mal/simplicial_complex.hpp"

namespace mal {

// The cohomology of the moment-angle complex Z_K decomposes over the vertex
// subsets (Hochster):  H^l(Z_K) = (+)_J  H~^{l-|J|-1}(K_J), and the ring
// structure is induced by the simplicial inclusions K_{I u J} -> K_I * K_J for
// disjoint I, J. This module computes the full table over all 2^m subsets,
// the aggregated Betti numbers, and the cochain-level products.

struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct TableOptions {
    int cap = 24;       // refuse vertex counts beyond this without force
    bool force = false;
    int threads = 0;    // decompose pool size; 0 = auto, 1 = serial
    HomologyCache* cache = nullptr;
};

// A cochain representative attached to a bidegree (l, J); the vector is over
// the chain basis of K_J in degree l. The support J is recorded even when the
// vector is identically zero. The unit of the ring lives at (-1, {}).
struct CohomologyClass {
    int degree = -1;
    VertexSet support;
    std::vector<Int> coeffs;

    bool zero_vector() const {
        for (const Int& x : coeffs)
            if (x != 0) return false;
        return true;
    }
    // total degree inside H*(Z_K)
    int z_degree() const { return degree + support.size() + 1; }
};

namespace detail {
// sign of the shuffle sorting (sorted s&I, then sorted s&J) into sorted s:
// (-1)^{# pairs u in I-block, v in J-block with u > v}
inline int shuffle_sign(Simplex s, VertexSet I) {
    int inversions = 0;
    int i_seen = 0;
    for (int v : s) {
        if (I.contains(v))
            ++i_seen;
        else
            inversions += i_seen;
    }
    // inversions counts pairs (u in I, v in J) with u < v -- we need u > v:
    // total cross pairs = |s&I| * |s&J|
    int total = (s & I).size() * s.minus(I).size();
    return ((total - inversions) % 2 == 0) ? 1 : -1;
}
}  // namespace detail

class BigradedTable {
public:
    static BigradedTable decompose(const SimplicialComplex& K, const TableOptions& opt = {}) {
        const int m = K.vertex_count();
        if (m > opt.cap && !opt.force) {
            std::ostringstream os;
            os << "decompose: m = " << m << " exceeds the subset cap " << opt.cap << " ("
               << (std::uint64_t{1} << std::min(m, 62)) << " subsets, ~"
               << ((std::uint64_t{1} << std::min(m, 62)) >> 13) << " MiB of table); "
               << "pass force to proceed";
            throw CapExceeded(os.str());
        }
        BigradedTable t;
        t.K_ = K;
        t.hash_ = K.hash();
        t.global_faces_ = K.all_faces();
        t.subsets_ = all_subsets(m);
        t.tier1_.resize(t.subsets_.size());
        for (std::size_t i = 0; i < t.subsets_.size(); ++i)
            t.index_[t.subsets_[i].raw()] = i;
        HomologyCache* cache = opt.cache;
        parallel_for(t.subsets_.size(), opt.threads, [&](std::size_t i) {
            const VertexSet J = t.subsets_[i];
            if (cache) {
                if (auto hit = cache->load(t.hash_, J)) {
                    t.tier1_[i] = std::move(*hit);
                    return;
                }
            }
            t.tier1_[i] = reduced_summary(ChainBasis::restricted(t.global_faces_, J));
            if (cache) cache->store(t.hash_, J, t.tier1_[i]);
        });
        if (cache) {
            t.stats_.hits = cache->hits();
            t.stats_.misses = cache->misses();
        }
        // single-writer aggregation in enumeration order
        for (std::size_t i = 0; i < t.subsets_.size(); ++i) {
            const VertexSet J = t.subsets_[i];
            for (const auto& [l, g] : t.tier1_[i].cohomology) {
                const int deg = l + J.size() + 1;
                t.betti_[deg] += g.rank;
                for (const Int& d : g.torsion) t.torsion_[deg].push_back(d);
                t.nonzero_.emplace_back(l, J);
            }
        }
        return t;
    }

    const SimplicialComplex& complex() const { return K_; }
    int m() const { return K_.vertex_count(); }
    int dim() const { return K_.dim(); }
    std::uint64_t complex_hash() const { return hash_; }

    const HomologySummary& subset_summary(VertexSet J) const {
        return tier1_.at(index_.at(J.raw()));
    }
    GroupSummary entry(int l, VertexSet J) const { return subset_summary(J).coh(l); }
    long rank(int l, VertexSet J) const { return entry(l, J).rank; }

    // aggregated Betti numbers of Z_K (degree -> rank) and torsion by degree
    const std::map<int, long>& betti() const { return betti_; }
    const std::map<int, std::vector<Int>>& betti_torsion() const { return torsion_; }
    bool torsion_free() const { return torsion_.empty(); }

    // all (l, J) with nontrivial cohomology, in (|J|, lex J, l) order;
    // includes the unit entry (-1, {})
    const std::vector<std::pair<int, VertexSet>>& nonzero_entries() const { return nonzero_; }

    struct CacheStats {
        long hits = 0, misses = 0;
    };
    CacheStats cache_stats() const { return stats_; }

    // ---- tier 2: bases, generators, products (lazy, memoized) ----

    const ChainBasis& basis(VertexSet J) const {
        std::lock_guard<std::mutex> lock(memo_->mu);
        auto it = memo_->bases.find(J.raw());
        if (it == memo_->bases.end())
            it = memo_->bases.emplace(J.raw(), ChainBasis::restricted(global_faces_, J)).first;
        return it->second;
    }

    struct EntryGenerators {
        std::vector<CohomologyClass> free_part;
        std::vector<std::pair<CohomologyClass, Int>> torsion_part;
        std::vector<CohomologyClass> all;  // free then torsion
    };

    const EntryGenerators& generators(int l, VertexSet J) const {
        const Key key{l, J.raw()};
        {
            std::lock_guard<std::mutex> lock(memo_->mu);
            auto it = memo_->gens.find(key);
            if (it != memo_->gens.end()) return it->second;
        }
        const ChainBasis& b = basis(J);
        Generators g = cohomology_generators(b, l);
        EntryGenerators eg;
        for (auto& v : g.free_part) {
            CohomologyClass c{l, J, std::move(v)};
            eg.free_part.push_back(c);
            eg.all.push_back(std::move(c));
        }
        for (auto& [v, order] : g.torsion_part) {
            CohomologyClass c{l, J, std::move(v)};
            eg.torsion_part.emplace_back(c, order);
            eg.all.push_back(std::move(c));
        }
        // cross-check against tier 1
        const GroupSummary t1 = entry(l, J);
        if (static_cast<long>(eg.free_part.size()) != t1.rank ||
            eg.torsion_part.size() != t1.torsion.size())
            throw std::logic_error("generators: tier-1/tier-2 mismatch");
        std::lock_guard<std::mutex> lock(memo_->mu);
        return memo_->gens.emplace(key, std::move(eg)).first->second;
    }

    CohomologyClass unit() const { return CohomologyClass{-1, VertexSet(), {Int(1)}}; }

    CohomologyClass zero_class(int l, VertexSet J) const {
        return CohomologyClass{l, J, std::vector<Int>(std::size_t(basis(J).count(l)), Int(0))};
    }

    bool is_cocycle(const CohomologyClass& c) const {
        const ChainBasis& b = basis(c.support);
        Mat64 d = boundary_matrix(b, c.degree + 1);
        for (int j = 0; j < d.cols(); ++j) {
            Int acc = 0;
            for (int i = 0; i < d.rows(); ++i)
                if (d.at(i, j) != 0) acc += Int(d.at(i, j)) * c.coeffs[i];
            if (acc != 0) return false;
        }
        return true;
    }

    // The join/shuffle product. Zero whenever the supports meet; otherwise the
    // value on a simplex s of K_{I u J} is sign * a(s&I) * b(s&J) when the
    // split has the right sizes. The unit is a two-sided identity.
    CohomologyClass cup(const CohomologyClass& a, const CohomologyClass& b) const {
        const int deg = a.degree + b.degree + 1;
        const VertexSet uni = a.support | b.support;
        if (a.support.intersects(b.support)) return zero_class(deg, uni);
        const ChainBasis& bu = basis(uni);
        const ChainBasis& ba = basis(a.support);
        const ChainBasis& bb = basis(b.support);
        CohomologyClass out{deg, uni, std::vector<Int>(std::size_t(bu.count(deg)), Int(0))};
        const auto& faces = bu.faces(deg);
        for (std::size_t s = 0; s < faces.size(); ++s) {
            const Simplex sig = faces[s];
            const Simplex sa = sig & a.support;
            if (sa.size() != a.degree + 1) continue;
            const Simplex sb = sig & b.support;
            const Int& ca = a.coeffs[ba.index_of(a.degree, sa)];
            if (ca == 0) continue;
            const Int& cb = b.coeffs[bb.index_of(b.degree, sb)];
            if (cb == 0) continue;
            out.coeffs[s] = detail::shuffle_sign(sig, a.support) * ca * cb;
        }
        if (!is_cocycle(out)) throw std::logic_error("cup: product is not a cocycle");
        return out;
    }

    CohomologyClass cup(const std::vector<CohomologyClass>& factors) const {
        CohomologyClass acc = unit();
        for (const auto& f : factors) acc = cup(acc, f);
        return acc;
    }

    // class-level zero test: is the cocycle a coboundary of K_J?
    bool is_zero_class(const CohomologyClass& c) const {
        if (c.zero_vector()) return true;
        const SnfResult& snf = coboundary_snf(c.degree, c.support);
        return snf.solve(c.coeffs).has_value();
    }

    // ---- duality machinery (certified spheres) ----

    // Generator cycle of H~_d(K), normalized so the lexicographically smallest
    // facet carries +1. Throws unless the top homology is exactly Z.
    const std::vector<Int>& fundamental_cycle() const {
        std::lock_guard<std::mutex> lock(memo_->fund_mu);
        if (memo_->fundamental) return *memo_->fundamental;
        const int d = dim();
        const ChainBasis& b = basis(K_.vertices());
        Generators g = homology_generators(b, d);
        if (g.free_part.size() != 1 || !g.torsion_part.empty())
            throw std::logic_error("fundamental_cycle: top homology is not Z");
        std::vector<Int> z = std::move(g.free_part[0]);
        const Int& lead = z[0];  // faces(d) is lex-sorted; index 0 is the smallest facet
        if (lead != 1 && lead != -1)
            throw std::logic_error("fundamental_cycle: generator is not an orientation");
        if (lead == -1)
            for (Int& x : z) x = -x;
        memo_->fundamental = std::move(z);
        return *memo_->fundamental;
    }

    // <c, z> against the fundamental cycle; the value of a top class relative
    // to the fixed orientation.
    Int pair_with_fundamental(const CohomologyClass& c) const {
        if (c.degree != dim() || !(c.support == K_.vertices()))
            throw std::invalid_argument("pair_with_fundamental: not a top class");
        return evaluate(c.coeffs, fundamental_cycle());
    }

    // Matrix of cup products H~^i(K_I) x H~^{d-1-i}(K_{[m]\I}) -> H~^d(K) = Z
    // over the free generators, relative to the fixed orientation.
    IntMat pairing_matrix(int i, VertexSet I) const {
        const VertexSet comp = I.complement_in(m());
        const auto& left = generators(i, I).free_part;
        const auto& right = generators(dim() - 1 - i, comp).free_part;
        IntMat mat(static_cast<int>(left.size()), static_cast<int>(right.size()));
        for (int r = 0; r < mat.rows(); ++r)
            for (int c = 0; c < mat.cols(); ++c)
                mat.at(r, c) = pair_with_fundamental(cup(left[r], right[c]));
        return mat;
    }

    // ---- ring-level queries ----

    // Largest r with a nonzero r-fold product of positive-degree classes.
    // Depth-first over generator tuples with disjoint supports; a product that
    // is zero at class level cannot become nonzero again, so it prunes.
    int product_length() const {
        std::vector<std::pair<int, VertexSet>> entries = positive_entries();
        int best = 0;
        const int bound = dim() + 1;
        CohomologyClass start = unit();
        dfs_length(entries, 0, start, 0, best, bound);
        return best;
    }

    // true iff every product of two positive-degree generator classes vanishes
    // (all longer products factor through these)
    bool has_trivial_products() const {
        auto entries = positive_entries();
        for (std::size_t i = 0; i < entries.size(); ++i)
            for (std::size_t j = i + 1; j < entries.size(); ++j) {
                const auto& [la, Ja] = entries[i];
                const auto& [lb, Jb] = entries[j];
                if (Ja.intersects(Jb)) continue;
                if (la + lb + 1 > dim()) continue;
                for (const auto& a : generators(la, Ja).all)
                    for (const auto& b : generators(lb, Jb).all) {
                        CohomologyClass p = cup(a, b);
                        if (!is_zero_class(p)) return false;
                    }
            }
        return true;
    }

    // Evaluation of the (l, J) entries against the boundary cycles of the
    // missing faces of dimension l+1 contained in J.
    struct MissingFaceEvaluation {
        int degree = 0;
        std::vector<Simplex> missing;  // MF_{l+1}(K)
        struct PerEntry {
            VertexSet J;
            std::vector<Simplex> columns;  // missing faces inside J
            IntMat matrix;                 // generators x columns
            bool torsion_obstruction = false;
            bool injective = false;
        };
        std::vector<PerEntry> entries;
        bool all_injective = true;
    };

    MissingFaceEvaluation missing_face_evaluation(int l) const {
        MissingFaceEvaluation ev;
        ev.degree = l;
        if (l + 1 <= K_.dim() + 1)
            for (const MissingFace& mf : missing_faces(K_, l + 1)) ev.missing.push_back(mf.vertices);
        for (const auto& [el, J] : nonzero_entries()) {
            if (el != l) continue;
            MissingFaceEvaluation::PerEntry pe;
            pe.J = J;
            for (const Simplex& I : ev.missing)
                if (I.subset_of(J)) pe.columns.push_back(I);
            const auto& gen = generators(l, J);
            const ChainBasis& b = basis(J);
            pe.matrix = IntMat(static_cast<int>(gen.all.size()),
                               static_cast<int>(pe.columns.size()));
            for (int c = 0; c < pe.matrix.cols(); ++c) {
                std::vector<Int> cyc = missing_face_cycle(K_, b, pe.columns[c]);
                for (int r = 0; r < pe.matrix.rows(); ++r)
                    pe.matrix.at(r, c) = evaluate(gen.all[r].coeffs, cyc);
            }
            pe.torsion_obstruction = !gen.torsion_part.empty();
            // injective as a map of abelian groups into Z^N: no torsion, and
            // the free rows are independent over Q
            if (pe.torsion_obstruction) {
                pe.injective = false;
            } else {
                IntMat freerows(static_cast<int>(gen.free_part.size()), pe.matrix.cols());
                for (int r = 0; r < freerows.rows(); ++r)
                    for (int c = 0; c < freerows.cols(); ++c)
                        freerows.at(r, c) = pe.matrix.at(r, c);
                pe.injective =
                    static_cast<int>(snf_invariants(freerows).size()) == freerows.rows();
            }
            if (!pe.injective) ev.all_injective = false;
            ev.entries.push_back(std::move(pe));
        }
        return ev;
    }

private:
    struct Key {
        int l;
        std::uint64_t j;
        bool operator<(const Key& o) const { return l != o.l ? l < o.l : j < o.j; }
    };

    std::vector<std::pair<int, VertexSet>> positive_entries() const {
        std::vector<std::pair<int, VertexSet>> out;
        for (const auto& e : nonzero_entries())
            if (!(e.first == -1 && e.second.empty())) out.push_back(e);
        return out;
    }

    const SnfResult& coboundary_snf(int l, VertexSet J) const {
        const Key key{l, J.raw()};
        {
            std::lock_guard<std::mutex> lock(memo_->mu);
            auto it = memo_->cob_snf.find(key);
            if (it != memo_->cob_snf.end()) return it->second;
        }
        const ChainBasis& b = basis(J);
        SnfResult snf = smith_normal_form(widen(boundary_matrix(b, l)).transposed());
        std::lock_guard<std::mutex> lock(memo_->mu);
        return memo_->cob_snf.emplace(key, std::move(snf)).first->second;
    }

    void dfs_length(const std::vector<std::pair<int, VertexSet>>& entries, std::size_t from,
                    const CohomologyClass& acc, int depth, int& best, int bound) const {
        if (best >= bound) return;
        for (std::size_t i = from; i < entries.size(); ++i) {
            const auto& [l, J] = entries[i];
            if (acc.support.intersects(J)) continue;
            if (acc.degree + l + 1 > dim()) continue;
            for (const auto& g : generators(l, J).all) {
                CohomologyClass p = cup(acc, g);
                if (p.zero_vector() || is_zero_class(p)) continue;
                if (depth + 1 > best) best = depth + 1;
                dfs_length(entries, i + 1, p, depth + 1, best, bound);
                if (best >= bound) return;
            }
        }
    }

    SimplicialComplex K_;
    std::uint64_t hash_ = 0;
    std::vector<Simplex> global_faces_;
    std::vector<VertexSet> subsets_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
    std::vector<HomologySummary> tier1_;
    std::map<int, long> betti_;
    std::map<int, std::vector<Int>> torsion_;
    std::vector<std::pair<int, VertexSet>> nonzero_;
    CacheStats stats_;

    // lazily memoized tier-2 state, heap-held so the table itself stays movable
    struct Memo {
        std::mutex mu;
        std::unordered_map<std::uint64_t, ChainBasis> bases;
        std::map<Key, EntryGenerators> gens;
        std::map<Key, SnfResult> cob_snf;
        std::mutex fund_mu;
        std::optional<std::vector<Int>> fundamental;
    };
    std::unique_ptr<Memo> memo_ = std::make_unique<Memo>();
};

}  // namespace mal
