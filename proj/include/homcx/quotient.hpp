/**
 * Quotients of cell complexes by involutions, over Z/2.
 *
 * Two sound routes are provided, each guarded by the property that makes
 * it sound:
 *
 *  - quotient_mod2: quotient of a *simplicial* complex by a simplicial
 *    involution that is regular (every setwise-invariant simplex is fixed
 *    vertexwise).  Regularity makes closed simplices embed into the
 *    quotient, so orbits of simplices form a valid delta complex and its
 *    mod-2 chain complex computes the homology of the orbit space.  The
 *    regularity hypothesis is CHECKED cell by cell, not assumed.  An
 *    arbitrary cellular involution becomes regular on the order complex
 *    (barycentric subdivision): elements of an invariant chain have
 *    pairwise distinct dimensions, and the involution preserves
 *    dimension, so the chain is fixed elementwise.
 *
 *  - quotient_free_cells: quotient of an arbitrary complex by an
 *    involution with no fixed cells; orbit cells inherit the boundary of
 *    a representative.  (Checked: freeness.)
 *
 * Order complexes can be windowed: chains longer than a bound are not
 * materialized, which truncates the complex above a dimension but leaves
 * every boundary operator below it intact.
 *
 * For join-shaped complexes with a factor-preserving action, the join of
 * the factors' order complexes is a far smaller regular model than the
 * order complex of the join; subdivided_join builds it.
 */

#ifndef HOMCX_QUOTIENT_HPP
#define HOMCX_QUOTIENT_HPP

#include <algorithm>
#include <unordered_map>
#include <vector>

#include <homcx/cell_complex.hpp>
#include <homcx/involution.hpp>

namespace homcx {

/**
 * Order complex of the face poset: vertices are the cells of x, and the
 * k-simplices are the strictly increasing chains of length k+1 in the
 * transitive face order (consecutive elements need not be covering
 * pairs).  Chains longer than max_chain_len are skipped when the bound
 * is nonnegative; the result is then the (max_chain_len-1)-skeleton of
 * the subdivision.
 */
inline CellComplex order_complex(const CellComplex& x, int max_chain_len = -1)
{
    const int n = x.size();
    // transitive proper-face closures, bottom up, then inverted to cofaces
    std::vector<std::vector<int>> closure(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::vector<int>& cl = closure[static_cast<std::size_t>(i)];
        const auto& bnd = x.cells[static_cast<std::size_t>(i)].boundary;
        for (std::size_t a = 0; a < bnd.size(); ++a) {
            // the face poset only sees a regular complex faithfully: a cell
            // gluing onto one face twice has no well-defined subdivision here
            for (std::size_t b = a + 1; b < bnd.size(); ++b)
                contract_check(bnd[a].first != bnd[b].first,
                               "order_complex requires a regular complex (repeated face)");
            int f = bnd[a].first;
            cl.push_back(f);
            cl.insert(cl.end(), closure[static_cast<std::size_t>(f)].begin(),
                      closure[static_cast<std::size_t>(f)].end());
        }
        std::sort(cl.begin(), cl.end());
        cl.erase(std::unique(cl.begin(), cl.end()), cl.end());
    }
    std::vector<std::vector<int>> cofaces(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int f : closure[static_cast<std::size_t>(i)])
            cofaces[static_cast<std::size_t>(f)].push_back(i);

    std::vector<std::vector<int>> chains;
    std::vector<int> current;
    auto rec = [&](auto&& self, int top) -> void {
        current.push_back(top);
        chains.push_back(current);
        if (max_chain_len < 0 || static_cast<int>(current.size()) < max_chain_len)
            for (int up : cofaces[static_cast<std::size_t>(top)])
                self(self, up);
        current.pop_back();
    };
    for (int i = 0; i < n; ++i)
        rec(rec, i);
    // cells are sorted by dimension, so chains are ascending in cell id
    return CellComplex::simplicial(std::move(chains));
}

/** Join of simplicial complexes; vertex ids are offset block by block. */
inline CellComplex join_complex(const std::vector<const CellComplex*>& factors,
                                std::vector<int>* vertex_offsets = nullptr)
{
    contract_check(!factors.empty(), "join of zero factors");
    std::vector<int> offsets;
    int total = 0;
    for (auto* f : factors) {
        contract_check(f->kind == ComplexKind::simplicial, "join needs simplicial factors");
        int ground = 0;
        for (int i = 0; i < f->count(0); ++i)
            ground = std::max(ground, f->cells[static_cast<std::size_t>(i)].simplex[0] + 1);
        offsets.push_back(total);
        total += ground;
    }
    if (vertex_offsets)
        *vertex_offsets = offsets;

    std::vector<std::vector<int>> faces;
    std::vector<int> current;
    // pick a (possibly empty) face from each factor, at least one nonempty
    auto rec = [&](auto&& self, std::size_t fi) -> void {
        if (fi == factors.size()) {
            if (!current.empty())
                faces.push_back(current);
            return;
        }
        self(self, fi + 1);   // empty part from this factor
        const CellComplex& f = *factors[fi];
        for (const Cell& c : f.cells) {
            std::size_t before = current.size();
            for (int v : c.simplex)
                current.push_back(v + offsets[fi]);
            self(self, fi + 1);
            current.resize(before);
        }
    };
    rec(rec, 0);
    for (auto& f : faces)
        std::sort(f.begin(), f.end());
    return CellComplex::simplicial(std::move(faces));
}

/** A simplicial complex together with an involutive ground-vertex permutation. */
struct EquivariantComplex {
    CellComplex cx;
    std::vector<int> vperm;
};

/**
 * Join of the factors' order complexes, with the involution assembled
 * from per-factor cell permutations.  Homeomorphic to the join of the
 * factors, and the assembled action is regular: an invariant simplex
 * meets each factor in an invariant chain, which is fixed elementwise.
 */
inline EquivariantComplex subdivided_join(const std::vector<const CellComplex*>& factors,
                                          const std::vector<std::vector<int>>& factor_cell_perms)
{
    contract_check(factors.size() == factor_cell_perms.size(), "factor/permutation count mismatch");
    std::vector<CellComplex> sds;
    sds.reserve(factors.size());
    for (auto* f : factors)
        sds.push_back(order_complex(*f));
    std::vector<const CellComplex*> ptrs;
    for (auto& s : sds)
        ptrs.push_back(&s);
    std::vector<int> offsets;
    EquivariantComplex out;
    out.cx = join_complex(ptrs, &offsets);
    for (std::size_t fi = 0; fi < factors.size(); ++fi) {
        contract_check(static_cast<int>(factor_cell_perms[fi].size()) == factors[fi]->size(),
                       "factor permutation has wrong length");
        for (int p : factor_cell_perms[fi])
            out.vperm.push_back(p + offsets[fi]);
    }
    return out;
}

/**
 * Mod-2 quotient data.  `rep` holds a representative simplex (vertex
 * list, in rank order) per quotient cell for the subdivision route, or a
 * single covering-cell id for the cell-level route; `vertex_orbit` maps
 * every ground vertex of the covering complex to its quotient 0-cell;
 * `orbit_size` is 1 for fixed cells and 2 for free orbits.
 */
struct QuotientZ2 {
    CellComplex cx;                      //!< delta complex; use mod-2 boundaries only
    std::vector<std::vector<int>> rep;   //!< representative per quotient cell
    std::vector<int> vertex_orbit;       //!< ground vertex -> quotient 0-cell index
    std::vector<int> orbit_size;         //!< 1 or 2 per quotient cell
    std::vector<int> vperm;              //!< covering involution (empty for cell-level route)
    std::unordered_map<std::vector<int>, int, IntVecHash> orbit_index;

    /** Quotient cell of a covering simplex (sorted vertex list); -1 if absent. */
    int orbit_of(const std::vector<int>& s) const
    {
        std::vector<int> img;
        img.reserve(s.size());
        for (int v : s)
            img.push_back(vperm[static_cast<std::size_t>(v)]);
        std::sort(img.begin(), img.end());
        auto it = orbit_index.find(std::min(s, img));
        return it == orbit_index.end() ? -1 : it->second;
    }

    /** Euler characteristic of the fixed subcomplex (cells with orbit_size 1). */
    long long fixed_euler() const
    {
        long long chi = 0;
        for (std::size_t i = 0; i < orbit_size.size(); ++i)
            if (orbit_size[i] == 1)
                chi += (cx.cells[i].dim % 2 == 0) ? 1 : -1;
        return chi;
    }
};

/**
 * Quotient of a simplicial complex by a simplicial involution given as a
 * permutation of the ground vertices.  Requires regularity: an invariant
 * simplex must be fixed vertexwise (validated; violated input raises a
 * contract error - subdivide first in that case).
 */
inline QuotientZ2 quotient_mod2(const CellComplex& x, const std::vector<int>& vperm)
{
    contract_check(x.kind == ComplexKind::simplicial, "quotient_mod2 expects a simplicial complex");
    const int n = x.size();
    std::unordered_map<std::vector<int>, int, IntVecHash> orbit_index;
    std::vector<int> orbit_cell;   // the cell whose simplex is the canonical key
    std::vector<int> orbit_of_cell(static_cast<std::size_t>(n));
    std::vector<int> osize;

    std::vector<int> img;
    for (int i = 0; i < n; ++i) {
        const std::vector<int>& s = x.cells[static_cast<std::size_t>(i)].simplex;
        img.clear();
        for (int v : s)
            img.push_back(vperm[static_cast<std::size_t>(v)]);
        std::sort(img.begin(), img.end());
        if (img == s) {
            // setwise invariant: regularity demands vertexwise fixed
            for (int v : s)
                contract_check(vperm[static_cast<std::size_t>(v)] == v,
                               "involution is not regular on this complex; subdivide first");
        }
        const std::vector<int>& key = std::min(s, img);
        auto it = orbit_index.find(key);
        if (it == orbit_index.end()) {
            it = orbit_index.emplace(key, static_cast<int>(orbit_cell.size())).first;
            orbit_cell.push_back(key == s ? i : -1);
            osize.push_back(img == s ? 1 : 2);
        } else if (it->second < static_cast<int>(orbit_cell.size()) &&
                   orbit_cell[static_cast<std::size_t>(it->second)] < 0 &&
                   key == s) {
            orbit_cell[static_cast<std::size_t>(it->second)] = i;
        }
        orbit_of_cell[static_cast<std::size_t>(i)] = it->second;
    }

    const int m = static_cast<int>(orbit_cell.size());
    std::vector<int> dims(static_cast<std::size_t>(m));
    std::vector<std::vector<std::pair<int, int>>> bnds(static_cast<std::size_t>(m));
    for (int o = 0; o < m; ++o) {
        int cell = orbit_cell[static_cast<std::size_t>(o)];
        contract_check(cell >= 0, "orbit canonical representative missing from complex");
        const Cell& c = x.cells[static_cast<std::size_t>(cell)];
        dims[static_cast<std::size_t>(o)] = c.dim;
        for (auto& [f, sign] : c.boundary)
            bnds[static_cast<std::size_t>(o)].emplace_back(orbit_of_cell[static_cast<std::size_t>(f)], 1);
    }

    // CellComplex::delta stably re-sorts by dimension and remaps face ids;
    // mirror the same permutation for the side arrays
    QuotientZ2 out;
    std::vector<int> order(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return dims[static_cast<std::size_t>(a)] < dims[static_cast<std::size_t>(b)]; });
    out.cx = CellComplex::delta(dims, bnds);
    out.rep.resize(static_cast<std::size_t>(m));
    out.orbit_size.resize(static_cast<std::size_t>(m));
    std::vector<int> new_of_old(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        int old = order[static_cast<std::size_t>(k)];
        new_of_old[static_cast<std::size_t>(old)] = k;
        out.rep[static_cast<std::size_t>(k)] =
            x.cells[static_cast<std::size_t>(orbit_cell[static_cast<std::size_t>(old)])].simplex;
        out.orbit_size[static_cast<std::size_t>(k)] = osize[static_cast<std::size_t>(old)];
    }
    out.vperm = vperm;
    out.orbit_index.reserve(orbit_index.size());
    for (auto& [key, old] : orbit_index)
        out.orbit_index.emplace(key, new_of_old[static_cast<std::size_t>(old)]);
    out.vertex_orbit.assign(vperm.size(), -1);
    for (int i = 0; i < n; ++i) {
        const std::vector<int>& s = x.cells[static_cast<std::size_t>(i)].simplex;
        if (s.size() == 1)
            out.vertex_orbit[static_cast<std::size_t>(s[0])] =
                new_of_old[static_cast<std::size_t>(orbit_of_cell[static_cast<std::size_t>(i)])];
    }
    return out;
}

/**
 * Quotient of a cell complex by a cellular involution through one
 * barycentric subdivision (which regularizes any cellular involution).
 * max_chain_len windows the subdivision as in order_complex.
 */
inline QuotientZ2 quotient_delta_complex(const CellComplex& x, const CellInvolution& inv,
                                         int max_chain_len = -1)
{
    return quotient_mod2(order_complex(x, max_chain_len), inv.perm);
}

/**
 * Quotient of an arbitrary cell complex by a cell involution that is
 * free on cells: orbit cells carry the representative's boundary pushed
 * to orbits.  Valid over Z/2 (orientations are not tracked).
 */
inline QuotientZ2 quotient_free_cells(const CellComplex& x, const CellInvolution& inv)
{
    contract_check(inv.is_free(), "quotient_free_cells requires a cell-free involution");
    const int n = x.size();
    std::vector<int> orbit_of_cell(static_cast<std::size_t>(n), -1);
    std::vector<int> rep_cell;
    for (int i = 0; i < n; ++i) {
        if (orbit_of_cell[static_cast<std::size_t>(i)] >= 0)
            continue;
        int j = inv.perm[static_cast<std::size_t>(i)];
        orbit_of_cell[static_cast<std::size_t>(i)] = static_cast<int>(rep_cell.size());
        orbit_of_cell[static_cast<std::size_t>(j)] = static_cast<int>(rep_cell.size());
        rep_cell.push_back(std::min(i, j));
    }
    const int m = static_cast<int>(rep_cell.size());
    std::vector<int> dims(static_cast<std::size_t>(m));
    std::vector<std::vector<std::pair<int, int>>> bnds(static_cast<std::size_t>(m));
    for (int o = 0; o < m; ++o) {
        const Cell& c = x.cells[static_cast<std::size_t>(rep_cell[static_cast<std::size_t>(o)])];
        dims[static_cast<std::size_t>(o)] = c.dim;
        for (auto& [f, sign] : c.boundary)
            bnds[static_cast<std::size_t>(o)].emplace_back(orbit_of_cell[static_cast<std::size_t>(f)], 1);
    }
    QuotientZ2 out;
    std::vector<int> order(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return dims[static_cast<std::size_t>(a)] < dims[static_cast<std::size_t>(b)]; });
    out.cx = CellComplex::delta(dims, bnds);
    out.rep.resize(static_cast<std::size_t>(m));
    out.orbit_size.assign(static_cast<std::size_t>(m), 2);
    for (int k = 0; k < m; ++k)
        out.rep[static_cast<std::size_t>(k)] = {rep_cell[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])]};
    return out;
}

}   // namespace homcx

#endif   // HOMCX_QUOTIENT_HPP
