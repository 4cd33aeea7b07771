/**
 * The two cell models of the space of graph homomorphisms G -> H.
 *
 *  - hom_complex(g, h): prodsimplicial; cells are "multihoms", assignments
 *    of a nonempty vertex subset eta(v) of H to every vertex v of G such
 *    that eta(u) x eta(v) lands in the edge set of H for every edge uv of
 *    G (loops included, so a looped vertex must map into a set of mutually
 *    adjacent looped vertices).  Vertices of the complex are the graph
 *    homomorphisms; the dimension of a cell is sum(|eta(v)| - 1).
 *
 *  - hom_plus_complex(g, h): simplicial; the independence complex of the
 *    categorical product of g with the strong complement of h.  Its
 *    simplices are the *partial* multihoms (eta may be empty on some
 *    vertices); the full-support part reproduces hom_complex up to an
 *    index shift of |V(g)| - 1, via a signed basis bijection implemented
 *    by support_shift_sign below.
 *
 * Both builders accept a dimension window: cells of dimension greater
 * than the bound are never materialized (the truncation is closed under
 * faces, so boundary operators below the bound are unaffected).
 */

#ifndef HOMCX_HOM_COMPLEXES_HPP
#define HOMCX_HOM_COMPLEXES_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include <homcx/cell_complex.hpp>
#include <homcx/graph.hpp>

namespace homcx {

/**
 * Independence complex: simplices are the nonempty independent vertex
 * sets (looped vertices are self-adjacent, hence never independent).
 * Faces of dimension greater than max_dim are skipped when max_dim >= 0.
 */
inline CellComplex independence_complex(const Graph& g, int max_dim = -1)
{
    std::vector<std::vector<int>> faces;
    std::vector<int> current;
    std::uint64_t forbidden = 0;
    // grow independent sets in increasing vertex order
    auto rec = [&](auto&& self, int from, std::uint64_t excl) -> void {
        for (int v = from; v < g.n; ++v) {
            if ((excl >> v) & 1u)
                continue;
            if (g.has_loop(v))
                continue;
            current.push_back(v);
            faces.push_back(current);
            if (max_dim < 0 || static_cast<int>(current.size()) <= max_dim)
                self(self, v + 1, excl | g.adj[static_cast<std::size_t>(v)]);
            current.pop_back();
        }
    };
    rec(rec, 0, forbidden);
    contract_check(!faces.empty(), "independence complex is empty (every vertex looped)");
    return CellComplex::simplicial(std::move(faces));
}

/** Decode a product vertex id into its (g-vertex, h-vertex) pair. */
inline std::pair<int, int> pair_of_vertex(int id, int h_n) { return {id / h_n, id % h_n}; }

/**
 * Simplicial model: independence complex of g x complement(h), vertex
 * (v, w) numbered v*|V(h)| + w.
 */
inline CellComplex hom_plus_complex(const Graph& g, const Graph& h, int max_dim = -1)
{
    return independence_complex(tensor_product(g, strong_complement(h)), max_dim);
}

/** Partial multihom encoded by a simplex of hom_plus_complex. */
inline Multihom simplex_to_multihom(const std::vector<int>& verts, int g_n, int h_n)
{
    Multihom eta(static_cast<std::size_t>(g_n));
    for (int id : verts) {
        auto [v, w] = pair_of_vertex(id, h_n);
        eta[static_cast<std::size_t>(v)].push_back(w);
    }
    return eta;   // sorted: verts ascending and id is lexicographic in (v, w)
}

inline std::vector<int> multihom_to_simplex(const Multihom& eta, int h_n)
{
    std::vector<int> verts;
    for (std::size_t v = 0; v < eta.size(); ++v)
        for (int w : eta[v])
            verts.push_back(static_cast<int>(v) * h_n + w);
    return verts;
}

/** Number of positions where the (partial) multihom is nonempty. */
inline int support_size(const Multihom& eta)
{
    int s = 0;
    for (auto& part : eta)
        if (!part.empty())
            ++s;
    return s;
}

/**
 * Prodsimplicial model.  Cells of dimension greater than max_dim are
 * pruned during enumeration when max_dim >= 0.  When max_cells >= 0 the
 * enumeration aborts with a resource_error as soon as the cell count
 * would exceed it (used by sweeps to skip oversized instances).
 */
inline CellComplex hom_complex(const Graph& g, const Graph& h, int max_dim = -1,
                               long long max_cells = -1)
{
    contract_check(h.n <= max_graph_vertices, "target graph too large");
    // candidate_mask[v] during DFS: vertices of h compatible with all
    // already-assigned neighbours of v
    std::vector<std::uint64_t> allowed(static_cast<std::size_t>(g.n), h.n >= 64 ? ~0ull : ((1ull << h.n) - 1));
    std::vector<Multihom> found;
    Multihom eta(static_cast<std::size_t>(g.n));
    std::vector<std::uint64_t> chosen_mask(static_cast<std::size_t>(g.n), 0);

    auto common_adjacency = [&](std::uint64_t set_mask) {
        std::uint64_t m = h.n >= 64 ? ~0ull : ((1ull << h.n) - 1);
        for (int w = 0; w < h.n; ++w)
            if ((set_mask >> w) & 1u)
                m &= h.adj[static_cast<std::size_t>(w)];
        return m;
    };

    auto rec = [&](auto&& self, int v, int dim_so_far) -> void {
        if (v == g.n) {
            if (max_cells >= 0 && static_cast<long long>(found.size()) >= max_cells)
                throw resource_error("hom complex exceeds the requested cell budget");
            found.push_back(eta);
            return;
        }
        std::uint64_t cand = allowed[static_cast<std::size_t>(v)];
        bool looped = g.has_loop(v);
        if (looped) {
            // every chosen vertex must be self-adjacent
            std::uint64_t loops = 0;
            for (int w = 0; w < h.n; ++w)
                if (h.has_loop(w))
                    loops |= (1ull << w);
            cand &= loops;
        }
        // enumerate nonempty subsets of cand, smallest first is not
        // required (builder sorts); iterate standard submask order
        for (std::uint64_t s = cand; s != 0; s = (s - 1) & cand) {
            int extra = __builtin_popcountll(s) - 1;
            if (max_dim >= 0 && dim_so_far + extra > max_dim)
                continue;
            if (looped) {
                // s must be mutually adjacent inside h
                bool ok = true;
                for (int w = 0; w < h.n && ok; ++w)
                    if ((s >> w) & 1u)
                        if ((s & ~h.adj[static_cast<std::size_t>(w)]) != 0)
                            ok = false;
                if (!ok)
                    continue;
            }
            // assign and narrow the masks of later neighbours
            std::uint64_t narrow = common_adjacency(s);
            std::vector<std::pair<int, std::uint64_t>> saved;
            bool dead = false;
            for (std::uint64_t nb = g.neighbors(v); nb != 0; nb &= nb - 1) {
                int u = __builtin_ctzll(nb);
                if (u <= v)
                    continue;
                saved.emplace_back(u, allowed[static_cast<std::size_t>(u)]);
                allowed[static_cast<std::size_t>(u)] &= narrow;
                if (allowed[static_cast<std::size_t>(u)] == 0)
                    dead = true;
            }
            if (!dead) {
                auto& part = eta[static_cast<std::size_t>(v)];
                part.clear();
                for (int w = 0; w < h.n; ++w)
                    if ((s >> w) & 1u)
                        part.push_back(w);
                self(self, v + 1, dim_so_far + extra);
            }
            for (auto& [u, m] : saved)
                allowed[static_cast<std::size_t>(u)] = m;
        }
    };
    rec(rec, 0, 0);
    contract_check(!found.empty(), "hom complex is empty (no multihoms at all)");
    return CellComplex::prodsimplicial(std::move(found));
}

/**
 * Sign of the degree-shift isomorphism between the full-support part of
 * the simplicial model and the prodsimplicial model: (-1)^c with c the
 * sum of |eta(i)| over every second position (the second, fourth, ...
 * in position order).
 */
inline int support_shift_sign(const Multihom& eta)
{
    long long c = 0;
    for (std::size_t v = 1; v < eta.size(); v += 2)
        c += static_cast<long long>(eta[v].size());
    return (c % 2 == 0) ? 1 : -1;
}

/* ------------------------------------------------------------------ *
 *  Induced chain maps                                                  *
 * ------------------------------------------------------------------ */

/**
 * Chain map induced by restricting the source graph to an induced
 * subgraph.  `sub_vertices` lists the kept vertices of the big graph in
 * increasing order (matching induced_subgraph's relabeling).  A cell of
 * hom_complex(big, h) maps to its restriction when every discarded
 * position is a single vertex, and to zero otherwise; the surviving cell
 * keeps orientation (point factors carry no orientation data).
 *
 * Returns one matrix per degree d in [0, dmax]: columns are the d-cells
 * of `from` (the big complex), rows the d-cells of `to`.
 */
inline std::vector<SparseIntMatrix> restriction_chain_map(const CellComplex& from, const CellComplex& to,
                                                          const std::vector<int>& sub_vertices, int dmax)
{
    contract_check(from.kind == ComplexKind::prodsimplicial && to.kind == ComplexKind::prodsimplicial,
                   "restriction_chain_map expects prodsimplicial models");
    std::vector<SparseIntMatrix> maps;
    for (int d = 0; d <= dmax; ++d) {
        SparseIntMatrix m(to.count(d), from.count(d));
        for (int j = 0; j < from.count(d); ++j) {
            const Cell& c = from.cells[static_cast<std::size_t>(from.offset(d) + j)];
            bool collapses = false;
            std::size_t keep = 0;
            Multihom restricted(sub_vertices.size());
            for (std::size_t v = 0; v < c.multihom.size(); ++v) {
                bool kept = keep < sub_vertices.size() &&
                            sub_vertices[keep] == static_cast<int>(v);
                if (kept) {
                    restricted[keep] = c.multihom[v];
                    ++keep;
                } else if (c.multihom[v].size() != 1) {
                    collapses = true;   // positive-dimensional factor dropped
                    break;
                }
            }
            if (collapses)
                continue;
            int idx = to.find_multihom(restricted);
            contract_check(idx >= 0, "restriction image cell missing from target complex");
            m.cols[static_cast<std::size_t>(j)].emplace_back(idx - to.offset(d), 1);
        }
        maps.push_back(std::move(m));
    }
    return maps;
}

/**
 * Chain map induced by an injective-or-collapsing map of target graphs
 * psi: h -> h'.  Factors whose image shrinks make the cell degenerate
 * (image zero); otherwise each factor contributes the sign of the
 * permutation sorting its image list.
 */
inline std::vector<SparseIntMatrix> pushforward_chain_map(const CellComplex& from, const CellComplex& to,
                                                          const VertexMap& psi, int dmax)
{
    contract_check(from.kind == ComplexKind::prodsimplicial && to.kind == ComplexKind::prodsimplicial,
                   "pushforward_chain_map expects prodsimplicial models");
    std::vector<SparseIntMatrix> maps;
    for (int d = 0; d <= dmax; ++d) {
        SparseIntMatrix m(to.count(d), from.count(d));
        for (int j = 0; j < from.count(d); ++j) {
            const Cell& c = from.cells[static_cast<std::size_t>(from.offset(d) + j)];
            Multihom image(c.multihom.size());
            int sign = 1;
            bool degenerate = false;
            for (std::size_t v = 0; v < c.multihom.size() && !degenerate; ++v) {
                std::vector<int> img;
                for (int w : c.multihom[v])
                    img.push_back(psi(w));
                // bubble-sort parity; duplicates mean a degenerate factor
                for (std::size_t a = 0; a + 1 < img.size(); ++a)
                    for (std::size_t b = 0; b + 1 < img.size() - a; ++b) {
                        if (img[b] == img[b + 1])
                            degenerate = true;
                        else if (img[b] > img[b + 1]) {
                            std::swap(img[b], img[b + 1]);
                            sign = -sign;
                        }
                    }
                image[v] = std::move(img);
            }
            if (degenerate)
                continue;
            int idx = to.find_multihom(image);
            contract_check(idx >= 0, "pushforward image cell missing from target complex");
            m.cols[static_cast<std::size_t>(j)].emplace_back(idx - to.offset(d), sign);
        }
        maps.push_back(std::move(m));
    }
    return maps;
}

/** Verifies boundary-compatibility of a degree-wise chain map (tests). */
inline bool is_chain_map(const CellComplex& from, const CellComplex& to,
                         const std::vector<SparseIntMatrix>& maps)
{
    for (int d = 1; d < static_cast<int>(maps.size()); ++d) {
        SparseIntMatrix bd_from = from.boundary_matrix(d);
        SparseIntMatrix bd_to = to.boundary_matrix(d);
        // compare f_{d-1} o del_from with del_to o f_d column by column
        for (int j = 0; j < bd_from.ncols(); ++j) {
            std::unordered_map<int, long long> lhs, rhs;
            for (auto& [i, v] : bd_from.cols[static_cast<std::size_t>(j)])
                for (auto& [i2, v2] : maps[static_cast<std::size_t>(d) - 1].cols[static_cast<std::size_t>(i)])
                    lhs[i2] += v * v2;
            for (auto& [i, v] : maps[static_cast<std::size_t>(d)].cols[static_cast<std::size_t>(j)])
                for (auto& [i2, v2] : bd_to.cols[static_cast<std::size_t>(i)])
                    rhs[i2] += v * v2;
            for (auto& [k, v] : rhs)
                lhs[k] -= v;
            for (auto& [k, v] : lhs)
                if (v != 0)
                    return false;
        }
    }
    return true;
}

}   // namespace homcx

#endif   // HOMCX_HOM_COMPLEXES_HPP
