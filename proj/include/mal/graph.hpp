#pragma once
#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mal/simplicial_complex.hpp"
#include "mal/vertex_set.hpp"

namespace mal {

// Simple graph on a subset of {1..m} (induced subgraphs keep their original
// labels). No loops, no multi-edges.
class Graph {
public:
    Graph() = default;
    Graph(int m, VertexSet active) : m_(m), active_(active), adj_(m) {}

    static Graph from_skeleton(const SimplicialComplex& K) {
        Graph g(K.vertex_count(), K.vertices());
        for (const Simplex& f : K.facets())
            for (int u : f)
                for (int v : f)
                    if (u < v) g.add_edge(u, v);
        return g;
    }

    static Graph from_edges(int m, const std::vector<std::pair<int, int>>& edges) {
        Graph g(m, VertexSet::full(m));
        for (auto [u, v] : edges) g.add_edge(u, v);
        return g;
    }

    void add_edge(int u, int v) {
        check(u); check(v);
        if (u == v) throw std::invalid_argument("graph: no loops");
        adj_[u - 1] = adj_[u - 1].with(v);
        adj_[v - 1] = adj_[v - 1].with(u);
    }

    int label_bound() const { return m_; }
    VertexSet vertices() const { return active_; }
    int vertex_count() const { return active_.size(); }
    bool has_edge(int u, int v) const { return active_.contains(u) && adj_[u - 1].contains(v); }
    VertexSet neighbors(int v) const { check(v); return adj_[v - 1] & active_; }
    int degree(int v) const { return neighbors(v).size(); }

    long edge_count() const {
        long e = 0;
        for (int v : active_) e += degree(v);
        return e / 2;
    }

    // Induced subgraph; labels are preserved.
    Graph induced(VertexSet sub) const {
        Graph g(m_, sub & active_);
        g.adj_ = adj_;
        return g;
    }

private:
    void check(int v) const {
        if (v < 1 || v > m_ || !active_.contains(v))
            throw std::invalid_argument("graph: vertex " + std::to_string(v) + " not present");
    }

    int m_ = 0;
    VertexSet active_;
    std::vector<VertexSet> adj_;
};

// Order in which each vertex's earlier neighbours form a clique.
struct EliminationOrder {
    std::vector<int> order;
};

inline bool is_valid_peo(const Graph& g, const EliminationOrder& eo) {
    if (static_cast<int>(eo.order.size()) != g.vertex_count()) return false;
    VertexSet seen;
    for (int v : eo.order) {
        if (!g.vertices().contains(v) || seen.contains(v)) return false;
        VertexSet earlier = g.neighbors(v) & seen;
        for (int a : earlier)
            for (int b : earlier)
                if (a < b && !g.has_edge(a, b)) return false;
        seen = seen.with(v);
    }
    return true;
}

struct ChordalityResult {
    bool chordal = false;
    std::optional<EliminationOrder> order;       // present iff chordal
    std::optional<std::vector<int>> witness;     // chordless cycle, length >= 4, iff not
};

namespace detail {

// Shortest x..y path inside `allowed` (BFS); returns the full vertex sequence.
inline std::optional<std::vector<int>> bfs_path(const Graph& g, int x, int y, VertexSet allowed) {
    if (x == y) return std::vector<int>{x};
    std::vector<int> parent(g.label_bound() + 1, 0);
    std::vector<int> queue{x};
    VertexSet visited = VertexSet::single(x);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int u = queue[qi];
        for (int w : g.neighbors(u) & allowed) {
            if (visited.contains(w)) continue;
            visited = visited.with(w);
            parent[w] = u;
            if (w == y) {
                std::vector<int> path{y};
                for (int p = u; p != x; p = parent[p]) path.push_back(p);
                path.push_back(x);
                std::reverse(path.begin(), path.end());
                return path;
            }
            queue.push_back(w);
        }
    }
    return std::nullopt;
}

// Given v with non-adjacent neighbours x, y, find a chordless cycle through v:
// v-x-...-y-v where the x..y path avoids N[v] \ {x,y}. A shortest such path has
// no chords among its own vertices, so the cycle is induced.
inline std::optional<std::vector<int>> chordless_cycle_via(const Graph& g, int v, int x, int y) {
    VertexSet allowed = g.vertices().minus(g.neighbors(v)).without(v).with(x).with(y);
    auto path = bfs_path(g, x, y, allowed);
    if (!path) return std::nullopt;
    std::vector<int> cycle{v};
    cycle.insert(cycle.end(), path->begin(), path->end());
    return cycle;
}

// Canonical form: smallest vertex first, then the lexicographically smaller
// direction of traversal.
inline std::vector<int> canonical_cycle(std::vector<int> c) {
    auto it = std::min_element(c.begin(), c.end());
    std::rotate(c.begin(), it, c.end());
    if (c.size() > 2 && c[1] > c.back()) {
        std::reverse(c.begin() + 1, c.end());
    }
    return c;
}

}  // namespace detail

// All chordless (induced) cycles with 4 <= length <= max_len, deduplicated up
// to rotation/reflection. Exponential in the worst case; desk scale only.
inline std::vector<std::vector<int>> find_chordless_cycles(const Graph& g, int max_len) {
    if (max_len < 4) throw std::invalid_argument("find_chordless_cycles: max_len must be >= 4");
    std::vector<std::vector<int>> out;
    std::vector<int> path;
    // grow paths s = v0 < v1, v2, ... with vi > s; extension must be adjacent to
    // the last vertex and non-adjacent to all earlier ones except possibly s.
    auto search = [&](auto&& self) -> void {
        const int s = path.front();
        const int last = path.back();
        for (int u : g.neighbors(last)) {
            if (u <= s) continue;
            if (std::find(path.begin(), path.end(), u) != path.end()) continue;
            bool chord = false;
            for (std::size_t i = 1; i + 1 < path.size(); ++i)
                if (g.has_edge(u, path[i])) { chord = true; break; }
            if (chord) continue;
            // adjacency to the start vertex is the path edge itself while the
            // path has a single vertex; afterwards it either closes a cycle or
            // rules the extension out as a chord
            if (path.size() >= 2 && g.has_edge(u, s)) {
                if (path.size() + 1 >= 4) {
                    std::vector<int> cycle = path;
                    cycle.push_back(u);
                    if (cycle[1] < cycle.back())  // keep one direction only
                        out.push_back(cycle);
                }
                continue;
            }
            if (static_cast<int>(path.size()) + 1 < max_len) {
                path.push_back(u);
                self(self);
                path.pop_back();
            }
        }
    };
    for (int s : g.vertices()) {
        path = {s};
        search(search);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Chordality test: maximum cardinality search (ties broken by smallest label),
// then the clique check on every vertex's earlier neighbours. On failure the
// witness is extracted by BFS in the failed neighbourhood; the exhaustive cycle
// search is a fallback that should not trigger.
inline ChordalityResult is_chordal(const Graph& g) {
    const int n = g.vertex_count();
    ChordalityResult res;
    std::vector<int> order;
    order.reserve(n);
    VertexSet chosen;
    std::vector<int> weight(g.label_bound() + 1, 0);
    for (int step = 0; step < n; ++step) {
        int best = -1, bw = -1;
        for (int v : g.vertices().minus(chosen)) {
            if (weight[v] > bw) { bw = weight[v]; best = v; }
        }
        chosen = chosen.with(best);
        order.push_back(best);
        for (int u : g.neighbors(best).minus(chosen)) ++weight[u];
    }
    VertexSet seen;
    for (int v : order) {
        VertexSet earlier = g.neighbors(v) & seen;
        for (int a : earlier)
            for (int b : earlier)
                if (a < b && !g.has_edge(a, b)) {
                    auto cyc = detail::chordless_cycle_via(g, v, a, b);
                    if (!cyc) {
                        auto all = find_chordless_cycles(g, g.vertex_count());
                        cyc = all.front();
                    }
                    res.chordal = false;
                    res.witness = detail::canonical_cycle(*cyc);
                    return res;
                }
        seen = seen.with(v);
    }
    res.chordal = true;
    res.order = EliminationOrder{order};
    return res;
}

// Deleting the vertex eliminated last keeps chordality, and the restricted
// order stays a valid elimination order (asserted).
inline std::pair<Graph, EliminationOrder> peo_delete_last(const Graph& g,
                                                          const EliminationOrder& eo) {
    if (!is_valid_peo(g, eo))
        throw std::invalid_argument("peo_delete_last: not a valid perfect elimination order");
    if (eo.order.empty()) throw std::invalid_argument("peo_delete_last: empty order");
    int last = eo.order.back();
    Graph h = g.induced(g.vertices().without(last));
    EliminationOrder rest{std::vector<int>(eo.order.begin(), eo.order.end() - 1)};
    if (!is_valid_peo(h, rest))
        throw std::logic_error("peo_delete_last: restriction is not an elimination order");
    return {h, rest};
}

// Missing-edge structure of a complex: the list I_1..I_r of missing edges and
// the three conditions used by the connected-sum classification.
struct MissingEdgeReport {
    std::vector<Simplex> missing_edges;
    bool pairwise_disjoint = true;
    bool all_pairs_chordless_4cycles = true;  // every pair spans an induced 4-cycle
    bool join_condition = true;               // K on the union is the join of the K_{I_j}
};

inline MissingEdgeReport missing_edge_structure(const SimplicialComplex& K) {
    MissingEdgeReport rep;
    for (const MissingFace& mf : missing_faces(K, 1)) rep.missing_edges.push_back(mf.vertices);
    const auto& me = rep.missing_edges;
    for (std::size_t i = 0; i < me.size(); ++i)
        for (std::size_t j = i + 1; j < me.size(); ++j) {
            if (me[i].intersects(me[j])) {
                rep.pairwise_disjoint = false;
                rep.all_pairs_chordless_4cycles = false;
                continue;
            }
            // disjoint pair {a,b},{c,d} spans an induced 4-cycle iff the four
            // cross pairs are all edges of K
            for (int a : me[i])
                for (int c : me[j])
                    if (!K.has_face(Simplex::of({a, c}))) rep.all_pairs_chordless_4cycles = false;
        }
    if (me.empty()) {
        rep.join_condition = true;
        return rep;
    }
    if (!rep.pairwise_disjoint) {
        rep.join_condition = false;
        return rep;
    }
    // faces of K on the union vs. faces of the join of the K_{I_j} (each K_{I_j}
    // is two isolated points, so join faces pick at most one endpoint per edge)
    VertexSet uni;
    for (const Simplex& e : me) uni = uni | e;
    std::vector<Simplex> expected;
    std::vector<Simplex> stack{Simplex()};
    for (const Simplex& e : me) {
        std::vector<Simplex> next;
        for (const Simplex& s : stack) {
            next.push_back(s);
            for (int v : e) next.push_back(s.with(v));
        }
        stack = std::move(next);
    }
    std::sort(stack.begin(), stack.end(), card_lex_less);
    // direct face-by-face comparison
    for (const Simplex& s : stack)
        if (!K.has_face(s)) { rep.join_condition = false; break; }
    if (rep.join_condition) {
        // and conversely: every face of K inside the union picks <= 1 vertex per edge
        for (const Simplex& f : K.facets()) {
            Simplex g = f & uni;
            for (const Simplex& e : me)
                if ((g & e).size() > 1) { rep.join_condition = false; break; }
            if (!rep.join_condition) break;
        }
    }
    return rep;
}

}  // namespace mal
