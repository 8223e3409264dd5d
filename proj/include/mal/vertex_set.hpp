#pragma once
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace mal {

// Subset of the vertex set {1, ..., m}, m <= 63, as a bit mask (bit v-1 <-> vertex v).
// Iteration yields labels in strictly increasing order. Also serves as the
// canonical representation of an abstract simplex (a simplex is its vertex set).
class VertexSet {
public:
    constexpr VertexSet() = default;
    constexpr explicit VertexSet(std::uint64_t raw) : bits_(raw) {}

    static constexpr int max_label = 63;

    static VertexSet of(std::initializer_list<int> labels) {
        VertexSet s;
        for (int v : labels) s = s.with(v);
        return s;
    }
    static VertexSet of(const std::vector<int>& labels) {
        VertexSet s;
        for (int v : labels) s = s.with(v);
        return s;
    }
    // {1, ..., m}
    static VertexSet full(int m) {
        if (m < 0 || m > max_label) throw std::invalid_argument("VertexSet::full: bad m");
        return m == 0 ? VertexSet() : VertexSet((~std::uint64_t{0}) >> (64 - m));
    }
    static VertexSet single(int v) { return VertexSet().with(v); }

    constexpr std::uint64_t raw() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int size() const { return std::popcount(bits_); }

    constexpr bool contains(int v) const {
        return v >= 1 && v <= max_label && (bits_ >> (v - 1)) & 1u;
    }
    VertexSet with(int v) const {
        if (v < 1 || v > max_label) throw std::invalid_argument("vertex label out of range");
        return VertexSet(bits_ | (std::uint64_t{1} << (v - 1)));
    }
    VertexSet without(int v) const {
        if (v < 1 || v > max_label) throw std::invalid_argument("vertex label out of range");
        return VertexSet(bits_ & ~(std::uint64_t{1} << (v - 1)));
    }

    constexpr bool subset_of(VertexSet o) const { return (bits_ & ~o.bits_) == 0; }
    constexpr bool intersects(VertexSet o) const { return (bits_ & o.bits_) != 0; }

    constexpr VertexSet operator|(VertexSet o) const { return VertexSet(bits_ | o.bits_); }
    constexpr VertexSet operator&(VertexSet o) const { return VertexSet(bits_ & o.bits_); }
    constexpr VertexSet minus(VertexSet o) const { return VertexSet(bits_ & ~o.bits_); }
    VertexSet complement_in(int m) const { return full(m).minus(*this); }

    constexpr bool operator==(const VertexSet&) const = default;

    int min() const {
        if (empty()) throw std::logic_error("min of empty set");
        return std::countr_zero(bits_) + 1;
    }
    int max() const {
        if (empty()) throw std::logic_error("max of empty set");
        return 64 - std::countl_zero(bits_);
    }

    // i-th smallest label, i = 0-based
    int nth(int i) const {
        std::uint64_t b = bits_;
        while (i-- > 0) b &= b - 1;
        if (b == 0) throw std::out_of_range("VertexSet::nth");
        return std::countr_zero(b) + 1;
    }
    // position of v among the labels (0-based); v must be contained
    int index_of(int v) const {
        if (!contains(v)) throw std::out_of_range("VertexSet::index_of");
        return std::popcount(bits_ & ((std::uint64_t{1} << (v - 1)) - 1));
    }

    std::vector<int> labels() const {
        std::vector<int> out;
        out.reserve(size());
        for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
        return out;
    }

    struct iterator {
        std::uint64_t rest;
        int operator*() const { return std::countr_zero(rest) + 1; }
        iterator& operator++() { rest &= rest - 1; return *this; }
        bool operator!=(const iterator& o) const { return rest != o.rest; }
    };
    iterator begin() const { return {bits_}; }
    iterator end() const { return {0}; }

    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (int v : *this) {
            if (!first) s += ',';
            s += std::to_string(v);
            first = false;
        }
        return s + "}";
    }

private:
    std::uint64_t bits_ = 0;
};

// Lexicographic order on the ascending label sequences ({1,2,4} < {1,3}; {1,2} < {1,2,4}).
inline bool lex_less(VertexSet a, VertexSet b) {
    std::uint64_t d = a.raw() ^ b.raw();
    if (d == 0) return false;
    std::uint64_t low = d & (~d + 1);
    if (a.raw() & low) {
        // a owns the first differing label; a is smaller unless b is a strict prefix
        return (b.raw() & ~(low - 1)) != 0;
    }
    // b owns it; a is smaller exactly when a is a strict prefix of b
    return (a.raw() & ~(low - 1)) == 0;
}

struct LexLess {
    bool operator()(VertexSet a, VertexSet b) const { return lex_less(a, b); }
};

// Order by cardinality, then lexicographic. Used for chain bases and subset
// enumeration so every run produces identical layouts.
inline bool card_lex_less(VertexSet a, VertexSet b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return lex_less(a, b);
}

// All k-subsets of `ground`, in lexicographic order.
inline std::vector<VertexSet> k_subsets(VertexSet ground, int k) {
    std::vector<VertexSet> out;
    const std::vector<int> g = ground.labels();
    const int n = static_cast<int>(g.size());
    if (k < 0 || k > n) return out;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        VertexSet s;
        for (int i : idx) s = s.with(g[i]);
        out.push_back(s);
        int p = k - 1;
        while (p >= 0 && idx[p] == n - k + p) --p;
        if (p < 0) break;
        ++idx[p];
        for (int q = p + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
    }
    return out;
}

// All 2^m subsets of {1..m}, by cardinality then lexicographic.
inline std::vector<VertexSet> all_subsets(int m) {
    std::vector<VertexSet> out;
    out.reserve(std::size_t{1} << m);
    for (int k = 0; k <= m; ++k) {
        auto part = k_subsets(VertexSet::full(m), k);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

// splitmix64: tiny documented PRNG used wherever reproducible pseudo-random
// choices are needed (stacked-sphere generation). State advances by the golden
// gamma; output is the finalizer of Steele et al.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return next() % n; }

private:
    std::uint64_t state_;
};

}  // namespace mal
