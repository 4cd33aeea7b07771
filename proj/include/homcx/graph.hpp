/**
 * Finite graphs, vertex maps, and the constructions feeding the
 * homomorphism complexes.
 *
 * Graphs are undirected, loops allowed, vertices 0-based.  Adjacency is
 * stored as one 64-bit mask per vertex, which caps graphs at 64 vertices;
 * every product graph materialized downstream (G x complement(H) and
 * friends) stays far below that, and the cap is enforced with a clear
 * error.  All enumeration here is deterministic (lexicographic).
 */

#ifndef HOMCX_GRAPH_HPP
#define HOMCX_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <homcx/errors.hpp>

namespace homcx {

/** Maximum vertex count supported by the bitmask representation. */
inline constexpr int max_graph_vertices = 64;

/**
 * Undirected graph with optional loops on up to 64 vertices.
 */
struct Graph {
    int n = 0;                          //!< number of vertices
    std::vector<std::uint64_t> adj;     //!< adj[u] bit v set iff u~v (bit u = loop)
    std::vector<std::string> labels;    //!< optional vertex labels (empty or size n)

    Graph() = default;

    explicit Graph(int n_vertices) : n(n_vertices), adj(static_cast<std::size_t>(n_vertices), 0)
    {
        if (n_vertices < 0 || n_vertices > max_graph_vertices)
            throw std::invalid_argument("Graph: vertex count must be in [0, 64]");
    }

    /** Add the undirected edge {u, v}; u == v adds a loop. */
    void add_edge(int u, int v)
    {
        check_vertex(u);
        check_vertex(v);
        adj[static_cast<std::size_t>(u)] |= (std::uint64_t{1} << v);
        adj[static_cast<std::size_t>(v)] |= (std::uint64_t{1} << u);
    }

    bool has_edge(int u, int v) const
    {
        check_vertex(u);
        check_vertex(v);
        return (adj[static_cast<std::size_t>(u)] >> v) & 1u;
    }

    bool has_loop(int v) const { return has_edge(v, v); }

    bool any_loop() const
    {
        for (int v = 0; v < n; ++v)
            if (has_loop(v))
                return true;
        return false;
    }

    /** Number of undirected edges, loops counted once. */
    int edge_count() const
    {
        int twice = 0;
        for (int v = 0; v < n; ++v) {
            twice += __builtin_popcountll(adj[static_cast<std::size_t>(v)]);
            if (has_loop(v))
                ++twice;   // a loop contributes one bit; count it as a full edge
        }
        return twice / 2;
    }

    /** Neighbor mask of v (includes v itself iff v has a loop). */
    std::uint64_t neighbors(int v) const
    {
        check_vertex(v);
        return adj[static_cast<std::size_t>(v)];
    }

    /** Sorted list of edges {u, v} with u <= v. */
    std::vector<std::pair<int, int>> edges() const
    {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < n; ++u)
            for (int v = u; v < n; ++v)
                if (has_edge(u, v))
                    out.emplace_back(u, v);
        return out;
    }

    bool operator==(const Graph& other) const { return n == other.n && adj == other.adj; }

    void check_vertex(int v) const
    {
        if (v < 0 || v >= n)
            throw std::invalid_argument("Graph: vertex index out of range");
    }
};

/* ------------------------------------------------------------------ *
 *  Families and named graphs                                          *
 * ------------------------------------------------------------------ */

/** Complete loop-free graph on m >= 1 vertices. */
inline Graph complete_graph(int m)
{
    if (m < 1)
        throw std::invalid_argument("complete_graph: need m >= 1");
    Graph g(m);
    for (int u = 0; u < m; ++u)
        for (int v = u + 1; v < m; ++v)
            g.add_edge(u, v);
    return g;
}

/** Cycle 0 - 1 - ... - (m-1) - 0 on m >= 3 vertices. */
inline Graph cycle_graph(int m)
{
    if (m < 3)
        throw std::invalid_argument("cycle_graph: need m >= 3");
    Graph g(m);
    for (int v = 0; v < m; ++v)
        g.add_edge(v, (v + 1) % m);
    return g;
}

/** Path on m >= 1 vertices (m = 2 gives K2). */
inline Graph path_graph(int m)
{
    if (m < 1)
        throw std::invalid_argument("path_graph: need m >= 1");
    Graph g(m);
    for (int v = 0; v + 1 < m; ++v)
        g.add_edge(v, v + 1);
    return g;
}

/** Perfect matching: k disjoint edges {2i, 2i+1} on 2k vertices. */
inline Graph matching_graph(int k)
{
    if (k < 1)
        throw std::invalid_argument("matching_graph: need k >= 1 edges");
    Graph g(2 * k);
    for (int i = 0; i < k; ++i)
        g.add_edge(2 * i, 2 * i + 1);
    return g;
}

/** Star K_{1,m}: center 0 joined to m >= 1 leaves. */
inline Graph star_graph(int m)
{
    if (m < 1)
        throw std::invalid_argument("star_graph: need m >= 1 leaves");
    Graph g(m + 1);
    for (int v = 1; v <= m; ++v)
        g.add_edge(0, v);
    return g;
}

/** A few named test graphs ("petersen", "moser_spindle"). */
inline Graph named_graph(const std::string& name)
{
    if (name == "petersen") {
        // Kneser graph K(5,2): vertices = 2-subsets of [5], edges = disjointness.
        std::vector<std::pair<int, int>> sets;
        for (int a = 0; a < 5; ++a)
            for (int b = a + 1; b < 5; ++b)
                sets.emplace_back(a, b);
        Graph g(static_cast<int>(sets.size()));
        for (std::size_t i = 0; i < sets.size(); ++i)
            for (std::size_t j = i + 1; j < sets.size(); ++j) {
                auto [a, b] = sets[i];
                auto [c, d] = sets[j];
                if (a != c && a != d && b != c && b != d)
                    g.add_edge(static_cast<int>(i), static_cast<int>(j));
            }
        return g;
    }
    if (name == "moser_spindle") {
        // 7 vertices, chromatic number 4.
        Graph g(7);
        const int e[][2] = {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {3, 4},
                            {0, 5}, {0, 6}, {4, 5}, {4, 6}, {5, 6}};
        for (auto& uv : e)
            g.add_edge(uv[0], uv[1]);
        return g;
    }
    throw std::invalid_argument("named_graph: unknown name '" + name + "'");
}

/* ------------------------------------------------------------------ *
 *  Graph operations                                                   *
 * ------------------------------------------------------------------ */

/**
 * Strong complement: edge set is (V x V) minus the edges of g, so loop
 * status flips on every vertex.  complement(K_n) is n isolated looped
 * vertices.
 */
inline Graph strong_complement(const Graph& g)
{
    Graph out(g.n);
    const std::uint64_t full = (g.n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << g.n) - 1);
    for (int v = 0; v < g.n; ++v)
        out.adj[static_cast<std::size_t>(v)] = full & ~g.adj[static_cast<std::size_t>(v)];
    return out;
}

/** Vertex id of (u, w) inside tensor_product(g, h). */
inline int product_vertex(const Graph& /*g*/, const Graph& h, int u, int w)
{
    return u * h.n + w;
}

/**
 * Tensor (categorical) product: (u,w) ~ (u',w') iff u~u' in g and w~w' in h.
 */
inline Graph tensor_product(const Graph& g, const Graph& h)
{
    if (g.n * h.n > max_graph_vertices)
        throw resource_error("tensor_product: product exceeds 64 vertices");
    Graph out(g.n * h.n);
    for (int u = 0; u < g.n; ++u)
        for (int w = 0; w < h.n; ++w)
            for (int u2 = u; u2 < g.n; ++u2)
                for (int w2 = 0; w2 < h.n; ++w2)
                    if (g.has_edge(u, u2) && h.has_edge(w, w2)) {
                        int a = product_vertex(g, h, u, w);
                        int b = product_vertex(g, h, u2, w2);
                        if (a <= b)
                            out.add_edge(a, b);
                    }
    return out;
}

/**
 * Plus construction: adjoin a dominating base vertex (id = old n) that is
 * adjacent to every vertex including itself.
 */
inline Graph plus_construction(const Graph& g)
{
    if (g.n + 1 > max_graph_vertices)
        throw resource_error("plus_construction: exceeds 64 vertices");
    Graph out(g.n);
    out.adj = g.adj;
    out.n = g.n + 1;
    out.adj.push_back(0);
    for (int v = 0; v <= g.n; ++v)
        out.add_edge(v, g.n);
    return out;
}

/** Induced subgraph on the sorted vertex list `verts` (ids relabeled 0..k-1). */
inline Graph induced_subgraph(const Graph& g, const std::vector<int>& verts)
{
    Graph out(static_cast<int>(verts.size()));
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i; j < verts.size(); ++j)
            if (g.has_edge(verts[i], verts[j]))
                out.add_edge(static_cast<int>(i), static_cast<int>(j));
    return out;
}

/** Disjoint union, vertices of h shifted by g.n. */
inline Graph disjoint_union(const Graph& g, const Graph& h)
{
    if (g.n + h.n > max_graph_vertices)
        throw resource_error("disjoint_union: exceeds 64 vertices");
    Graph out(g.n + h.n);
    for (auto [u, v] : g.edges())
        out.add_edge(u, v);
    for (auto [u, v] : h.edges())
        out.add_edge(u + g.n, v + g.n);
    return out;
}

/** Connected components as sorted vertex lists (singletons included). */
inline std::vector<std::vector<int>> connected_components(const Graph& g)
{
    std::vector<int> comp(static_cast<std::size_t>(g.n), -1);
    int ncomp = 0;
    for (int s = 0; s < g.n; ++s) {
        if (comp[static_cast<std::size_t>(s)] >= 0)
            continue;
        std::vector<int> stack{s};
        comp[static_cast<std::size_t>(s)] = ncomp;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < g.n; ++v)
                if (v != u && g.has_edge(u, v) && comp[static_cast<std::size_t>(v)] < 0) {
                    comp[static_cast<std::size_t>(v)] = ncomp;
                    stack.push_back(v);
                }
        }
        ++ncomp;
    }
    std::vector<std::vector<int>> out(static_cast<std::size_t>(ncomp));
    for (int v = 0; v < g.n; ++v)
        out[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])].push_back(v);
    return out;
}

/** True iff g is loop-free and 2-colorable. */
inline bool is_bipartite(const Graph& g)
{
    if (g.any_loop())
        return false;
    std::vector<int> color(static_cast<std::size_t>(g.n), -1);
    for (int s = 0; s < g.n; ++s) {
        if (color[static_cast<std::size_t>(s)] >= 0)
            continue;
        color[static_cast<std::size_t>(s)] = 0;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < g.n; ++v)
                if (v != u && g.has_edge(u, v)) {
                    if (color[static_cast<std::size_t>(v)] < 0) {
                        color[static_cast<std::size_t>(v)] = 1 - color[static_cast<std::size_t>(u)];
                        stack.push_back(v);
                    } else if (color[static_cast<std::size_t>(v)] == color[static_cast<std::size_t>(u)]) {
                        return false;
                    }
                }
        }
    }
    return true;
}

/**
 * Decompose a vertex subset of the cycle C_m into maximal arcs
 * (runs of cyclically consecutive vertices), each arc listed in cycle
 * order; arcs sorted by their first vertex.
 */
inline std::vector<std::vector<int>> cycle_arc_decomposition(int m, const std::vector<int>& subset)
{
    if (m < 3)
        throw std::invalid_argument("cycle_arc_decomposition: need m >= 3");
    std::vector<bool> in(static_cast<std::size_t>(m), false);
    for (int v : subset) {
        if (v < 0 || v >= m)
            throw std::invalid_argument("cycle_arc_decomposition: vertex out of range");
        in[static_cast<std::size_t>(v)] = true;
    }
    std::vector<std::vector<int>> arcs;
    if (subset.empty())
        return arcs;
    if (std::all_of(in.begin(), in.end(), [](bool b) { return b; })) {
        std::vector<int> whole(static_cast<std::size_t>(m));
        std::iota(whole.begin(), whole.end(), 0);
        return {whole};
    }
    std::vector<bool> seen(static_cast<std::size_t>(m), false);
    for (int v = 0; v < m; ++v) {
        if (!in[static_cast<std::size_t>(v)] || seen[static_cast<std::size_t>(v)])
            continue;
        // walk back to the start of this arc, then forward collecting it
        int start = v;
        while (in[static_cast<std::size_t>((start + m - 1) % m)])
            start = (start + m - 1) % m;
        std::vector<int> arc;
        int cur = start;
        while (in[static_cast<std::size_t>(cur)] && !seen[static_cast<std::size_t>(cur)]) {
            seen[static_cast<std::size_t>(cur)] = true;
            arc.push_back(cur);
            cur = (cur + 1) % m;
        }
        arcs.push_back(std::move(arc));
    }
    std::sort(arcs.begin(), arcs.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) { return a.front() < b.front(); });
    return arcs;
}

/* ------------------------------------------------------------------ *
 *  Vertex maps, homomorphisms, involutions                            *
 * ------------------------------------------------------------------ */

/** A map V(from) -> V(to), stored as the image list. */
struct VertexMap {
    int from_n = 0;
    int to_n = 0;
    std::vector<int> image;   //!< image[v] in [0, to_n)

    VertexMap() = default;
    VertexMap(int from, int to, std::vector<int> img) : from_n(from), to_n(to), image(std::move(img))
    {
        if (static_cast<int>(image.size()) != from_n)
            throw std::invalid_argument("VertexMap: image size mismatch");
        for (int w : image)
            if (w < 0 || w >= to_n)
                throw std::invalid_argument("VertexMap: image vertex out of range");
    }

    int operator()(int v) const { return image[static_cast<std::size_t>(v)]; }

    bool operator==(const VertexMap& other) const
    {
        return from_n == other.from_n && to_n == other.to_n && image == other.image;
    }
};

/** Compose vertex maps: (g_after . f_first)(v) = g_after(f_first(v)). */
inline VertexMap compose(const VertexMap& g_after, const VertexMap& f_first)
{
    if (f_first.to_n != g_after.from_n)
        throw std::invalid_argument("compose: domain/codomain mismatch");
    std::vector<int> img(static_cast<std::size_t>(f_first.from_n));
    for (int v = 0; v < f_first.from_n; ++v)
        img[static_cast<std::size_t>(v)] = g_after(f_first(v));
    return VertexMap(f_first.from_n, g_after.to_n, std::move(img));
}

/** True iff f maps every edge of g (loops included) to an edge of h. */
inline bool is_homomorphism(const Graph& g, const Graph& h, const VertexMap& f)
{
    if (f.from_n != g.n || f.to_n != h.n)
        return false;
    for (int u = 0; u < g.n; ++u)
        for (int v = u; v < g.n; ++v)
            if (g.has_edge(u, v) && !h.has_edge(f(u), f(v)))
                return false;
    return true;
}

/**
 * All graph homomorphisms g -> h in lexicographic order of their image
 * vectors, by backtracking over vertices 0..n-1.
 */
inline std::vector<VertexMap> enumerate_homomorphisms(const Graph& g, const Graph& h)
{
    std::vector<VertexMap> out;
    std::vector<int> img(static_cast<std::size_t>(g.n), -1);
    // candidate masks refined vertex by vertex
    auto consistent = [&](int v, int w) {
        if (g.has_edge(v, v) && !h.has_edge(w, w))
            return false;
        for (int u = 0; u < v; ++u)
            if (g.has_edge(u, v) && !h.has_edge(img[static_cast<std::size_t>(u)], w))
                return false;
        return true;
    };
    std::vector<int> order(static_cast<std::size_t>(g.n));
    std::iota(order.begin(), order.end(), 0);
    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == g.n) {
            out.emplace_back(g.n, h.n, img);
            return;
        }
        for (int w = 0; w < h.n; ++w)
            if (consistent(depth, w)) {
                img[static_cast<std::size_t>(depth)] = w;
                self(self, depth + 1);
                img[static_cast<std::size_t>(depth)] = -1;
            }
    };
    if (g.n == 0)
        out.emplace_back(0, h.n, std::vector<int>{});
    else
        rec(rec, 0);
    return out;
}

/** Existence of at least one homomorphism g -> h (early-exit search). */
inline bool graph_hom_exists(const Graph& g, const Graph& h)
{
    std::vector<int> img(static_cast<std::size_t>(g.n), -1);
    auto consistent = [&](int v, int w) {
        if (g.has_edge(v, v) && !h.has_edge(w, w))
            return false;
        for (int u = 0; u < v; ++u)
            if (g.has_edge(u, v) && !h.has_edge(img[static_cast<std::size_t>(u)], w))
                return false;
        return true;
    };
    auto rec = [&](auto&& self, int depth) -> bool {
        if (depth == g.n)
            return true;
        for (int w = 0; w < h.n; ++w)
            if (consistent(depth, w)) {
                img[static_cast<std::size_t>(depth)] = w;
                if (self(self, depth + 1))
                    return true;
                img[static_cast<std::size_t>(depth)] = -1;
            }
        return false;
    };
    return g.n == 0 || rec(rec, 0);
}

/**
 * An involutive graph automorphism of g.
 */
struct Involution {
    VertexMap map;

    Involution() = default;

    Involution(const Graph& g, std::vector<int> img) : map(g.n, g.n, std::move(img))
    {
        for (int v = 0; v < g.n; ++v)
            if (map(map(v)) != v)
                throw std::invalid_argument("Involution: map is not an involution");
        if (!is_automorphism(g))
            throw std::invalid_argument("Involution: map is not a graph automorphism");
    }

    int operator()(int v) const { return map(v); }

    bool is_identity() const
    {
        for (int v = 0; v < map.from_n; ++v)
            if (map(v) != v)
                return false;
        return true;
    }

    /** Vertices fixed by the involution, sorted. */
    std::vector<int> fixed_vertices() const
    {
        std::vector<int> out;
        for (int v = 0; v < map.from_n; ++v)
            if (map(v) == v)
                out.push_back(v);
        return out;
    }

    /** Number of 2-cycles (swapped vertex pairs). */
    int swapped_pair_count() const { return (map.from_n - static_cast<int>(fixed_vertices().size())) / 2; }

  private:
    bool is_automorphism(const Graph& g) const
    {
        for (int u = 0; u < g.n; ++u)
            for (int v = u; v < g.n; ++v)
                if (g.has_edge(u, v) != g.has_edge(map(u), map(v)))
                    return false;
        return true;
    }
};

/** True iff some edge {u, v} has gamma(u) = v and gamma(v) = u. */
inline bool flips_edge(const Graph& g, const Involution& gamma)
{
    for (auto [u, v] : g.edges())
        if (u != v && gamma(u) == v && gamma(v) == u)
            return true;
    return false;
}

/**
 * Reflection of the cycle C_m.  Odd m: v -> (m - v) mod m, fixing 0 and
 * flipping the edge {r, r+1} where m = 2r+1.  Even m: v -> m-1-v, fixing
 * no vertex and flipping the edges {r-1, r} and {m-1, 0} where m = 2r.
 */
inline Involution reflection_involution(const Graph& cycle)
{
    const int m = cycle.n;
    if (cycle == path_graph(2)) {
        // allow K2 = C2 degenerate use: swap the endpoints
        return Involution(cycle, {1, 0});
    }
    if (!(cycle == cycle_graph(m)))
        throw std::invalid_argument("reflection_involution: expected a cycle graph");
    std::vector<int> img(static_cast<std::size_t>(m));
    for (int v = 0; v < m; ++v)
        img[static_cast<std::size_t>(v)] = (m % 2 == 1) ? (m - v) % m : m - 1 - v;
    return Involution(cycle, std::move(img));
}

/** Swap vertices 0 and 1 of the complete graph K_m (m >= 2). */
inline Involution swap_involution(const Graph& complete)
{
    const int m = complete.n;
    if (m < 2 || !(complete == complete_graph(m)))
        throw std::invalid_argument("swap_involution: expected K_m with m >= 2");
    std::vector<int> img(static_cast<std::size_t>(m));
    std::iota(img.begin(), img.end(), 0);
    img[0] = 1;
    img[1] = 0;
    return Involution(complete, std::move(img));
}

/* ------------------------------------------------------------------ *
 *  Chromatic number                                                   *
 * ------------------------------------------------------------------ */

/**
 * Exact chromatic number by branch and bound (greedy clique lower bound,
 * iterative deepening on the color count).
 *
 * @param g          loop-free graph
 * @param size_limit largest vertex count accepted (guards runtime)
 * @returns chi(g); 0 for the empty graph
 * @throws std::domain_error on loops, resource_error over the size limit
 */
inline int exact_chromatic_number(const Graph& g, int size_limit = 12)
{
    if (g.any_loop())
        throw std::domain_error("exact_chromatic_number: graph has a loop");
    if (g.n > size_limit)
        throw resource_error("exact_chromatic_number: vertex count exceeds limit");
    if (g.n == 0)
        return 0;
    if (g.edge_count() == 0)
        return 1;

    // vertex order: descending degree (helps pruning)
    std::vector<int> order(static_cast<std::size_t>(g.n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return __builtin_popcountll(g.neighbors(a)) > __builtin_popcountll(g.neighbors(b));
    });

    // greedy clique on the ordered vertices gives a lower bound
    int clique = 0;
    {
        std::uint64_t common = (g.n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << g.n) - 1);
        for (int v : order)
            if ((common >> v) & 1u) {
                ++clique;
                common &= g.neighbors(v);
            }
    }

    std::vector<int> color(static_cast<std::size_t>(g.n), -1);
    auto feasible = [&](auto&& self, int idx, int k) -> bool {
        if (idx == g.n)
            return true;
        int v = order[static_cast<std::size_t>(idx)];
        int used_max = 0;   // only try one brand-new color (symmetry breaking)
        for (int i = 0; i < idx; ++i)
            used_max = std::max(used_max, color[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] + 1);
        for (int c = 0; c < std::min(k, used_max + 1); ++c) {
            bool ok = true;
            for (int u = 0; u < g.n; ++u)
                if (u != v && g.has_edge(u, v) && color[static_cast<std::size_t>(u)] == c) {
                    ok = false;
                    break;
                }
            if (ok) {
                color[static_cast<std::size_t>(v)] = c;
                if (self(self, idx + 1, k))
                    return true;
                color[static_cast<std::size_t>(v)] = -1;
            }
        }
        return false;
    };
    for (int k = std::max(clique, 1);; ++k) {
        std::fill(color.begin(), color.end(), -1);
        if (feasible(feasible, 0, k))
            return k;
    }
}

}   // namespace homcx

#endif   // HOMCX_GRAPH_HPP
