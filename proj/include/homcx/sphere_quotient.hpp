#pragma once

/**
 * Mod-2 cohomology of involution quotients of products of d-spheres,
 * in two flavors:
 *
 *  - odd count (2t+1 spheres): the involution swaps spheres 2i and 2i+1
 *    for i in [1,t] and acts antipodally on the first sphere;
 *  - even count (2t spheres): the involution swaps spheres 2i-1 and 2i
 *    (the quotient is the symmetric square of a product of t spheres).
 *
 * Cells are written in d-symbols: '*' is the open d-cell of a sphere,
 * 'o' its basepoint 0-cell, so a t-tuple of symbols names a cell of the
 * t-fold product.  The symbolic route materializes the known quotient
 * cell structures:
 *
 *  - odd: cells (i,x,y) with i in [0,d] (a projective-space coordinate;
 *    the first sphere is subdivided as a join of d+1 0-spheres) and x,y
 *    t-tuples of symbols; dim = i + dim x + dim y; mod-2 coboundary
 *    delta (i,x,y)* = (i+1,x,y)* + (i+1,y,x)* (zero when i = d, and the
 *    two terms cancel when x = y);
 *  - even: cells {x,y} for unordered pairs x != y (coboundary zero) and
 *    (x,x,k) with 0 <= k <= dim x (diagonal cells subdivided along a
 *    half-open flag of hyperplanes); the only nonzero coboundary is
 *    delta (x,x,0)* = (x,x,1)* for dim x >= 1.
 *
 * Alongside the computed mod-2 Betti numbers, each quotient carries the
 * predicted generator census (odd: (i,x,x) for every i, plus {x,y} pairs
 * at i = 0 and i = d only; even: every cell except the (x,x,0)/(x,x,1)
 * pairs), and the two are compared degreewise.
 *
 * The geometric crosscheck rebuilds the same spaces from honest cell
 * complexes - cross-polytope spheres, cellular products, the cell-level
 * involution - and runs them through the generic quotient machinery
 * (free-orbit quotient for the odd case, barycentric regularization for
 * the even case), comparing Betti numbers with the symbolic route.
 */

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "cell_complex.hpp"
#include "homology.hpp"
#include "involution.hpp"
#include "quotient.hpp"
#include "z2linalg.hpp"

namespace homcx
{

/** Specification of a sphere-product quotient in d-symbol language. */
struct SphereSymbolArray
{
    int t = 0;              ///< number of swapped sphere pairs
    int d = 2;              ///< sphere dimension, >= 2
    bool odd_count = true;  ///< 2t+1 spheres with antipodal first factor, else 2t
};

/** A labeled cell or cohomology generator with its degree. */
struct SymbolCell
{
    std::string label;
    int dim = 0;
};

/** Symbolic quotient complex: cells, coboundary, cohomology, census. */
struct SphereQuotient
{
    SphereSymbolArray spec;
    std::vector<SymbolCell> cells;              ///< quotient cells, dimension order
    std::vector<std::vector<int>> coboundary;   ///< per cell: mod-2 coboundary targets
    std::vector<int> betti;                     ///< dim H^q(X/Z2; Z2), unreduced
    std::vector<SymbolCell> census;             ///< predicted generators
    std::vector<int> census_by_degree;
    bool census_matches = false;
};

namespace detail
{

inline std::string symbol_tuple(int mask, int t)
{
    std::string s;
    for (int i = 0; i < t; ++i)
        s += ((mask >> i) & 1) ? '*' : 'o';
    return s.empty() ? std::string("-") : s;
}

/** Betti numbers of a graded mod-2 cochain complex given per-cell data. */
inline std::vector<int> coboundary_betti(const std::vector<SymbolCell>& cells,
                                         const std::vector<std::vector<int>>& cob)
{
    int top = 0;
    for (const auto& c : cells)
        top = std::max(top, c.dim);
    std::vector<std::vector<int>> by_dim(static_cast<std::size_t>(top + 1));
    std::vector<int> local(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        local[i] = static_cast<int>(by_dim[static_cast<std::size_t>(cells[i].dim)].size());
        by_dim[static_cast<std::size_t>(cells[i].dim)].push_back(static_cast<int>(i));
    }
    std::vector<int> rank(static_cast<std::size_t>(top + 2), 0); // rank of delta out of q
    for (int q = 0; q < top; ++q) {
        z2::SparseMatrix m(static_cast<int>(by_dim[static_cast<std::size_t>(q + 1)].size()),
                           static_cast<int>(by_dim[static_cast<std::size_t>(q)].size()));
        for (std::size_t jj = 0; jj < by_dim[static_cast<std::size_t>(q)].size(); ++jj) {
            int cell = by_dim[static_cast<std::size_t>(q)][jj];
            for (int tgt : cob[static_cast<std::size_t>(cell)]) {
                contract_check(cells[static_cast<std::size_t>(tgt)].dim == q + 1,
                               "coboundary raises degree by exactly one");
                m.cols[jj].push_back(local[static_cast<std::size_t>(tgt)]);
            }
            std::sort(m.cols[jj].begin(), m.cols[jj].end());
        }
        rank[static_cast<std::size_t>(q)] = z2::rank(std::move(m));
    }
    std::vector<int> betti(static_cast<std::size_t>(top + 1));
    for (int q = 0; q <= top; ++q)
        betti[static_cast<std::size_t>(q)] =
            static_cast<int>(by_dim[static_cast<std::size_t>(q)].size()) -
            rank[static_cast<std::size_t>(q)] - (q > 0 ? rank[static_cast<std::size_t>(q - 1)] : 0);
    return betti;
}

} // namespace detail

/**
 * Build the symbolic quotient complex, compute its mod-2 cohomology, and
 * compare with the predicted generator census.
 */
inline SphereQuotient symbolic_sphere_quotient(const SphereSymbolArray& spec)
{
    contract_check(spec.t >= 0 && spec.t <= 12, "pair count out of range");
    contract_check(spec.d >= 2, "sphere dimension must be at least 2");
    const int t = spec.t, d = spec.d;
    const int ntup = 1 << t;
    auto tdim = [&](int mask) { return d * __builtin_popcount(static_cast<unsigned>(mask)); };
    auto tup = [&](int mask) { return detail::symbol_tuple(mask, t); };

    SphereQuotient out;
    out.spec = spec;

    if (spec.odd_count) {
        // cells (i, x, y), indexed i * ntup^2 + x * ntup + y
        auto id = [&](int i, int x, int y) { return (i * ntup + x) * ntup + y; };
        out.cells.resize(static_cast<std::size_t>((d + 1) * ntup * ntup));
        out.coboundary.resize(out.cells.size());
        for (int i = 0; i <= d; ++i)
            for (int x = 0; x < ntup; ++x)
                for (int y = 0; y < ntup; ++y) {
                    SymbolCell& c = out.cells[static_cast<std::size_t>(id(i, x, y))];
                    c.dim = i + tdim(x) + tdim(y);
                    c.label = "(" + std::to_string(i) + "," + tup(x) + "," + tup(y) + ")";
                    if (i < d && x != y) {
                        // delta (i,x,y)* = (i+1,x,y)* + (i+1,y,x)*; for x = y
                        // the two terms coincide and cancel mod 2
                        out.coboundary[static_cast<std::size_t>(id(i, x, y))] = {id(i + 1, x, y),
                                                                                 id(i + 1, y, x)};
                    }
                }
        // census: (i,x,x) for every i; +{x,y} pairs at i = 0 and i = d
        for (int i = 0; i <= d; ++i)
            for (int x = 0; x < ntup; ++x)
                out.census.push_back({"(" + std::to_string(i) + "," + tup(x) + "," + tup(x) + ")",
                                      i + 2 * tdim(x)});
        for (int x = 0; x < ntup; ++x)
            for (int y = x + 1; y < ntup; ++y) {
                out.census.push_back({"(0,{" + tup(x) + "," + tup(y) + "})", tdim(x) + tdim(y)});
                out.census.push_back({"(" + std::to_string(d) + ",{" + tup(x) + "," + tup(y) + "})",
                                      d + tdim(x) + tdim(y)});
            }
    } else {
        // Type 1: unordered pairs {x,y}, x != y, coboundary zero
        for (int x = 0; x < ntup; ++x)
            for (int y = x + 1; y < ntup; ++y) {
                out.cells.push_back({"{" + tup(x) + "," + tup(y) + "}", tdim(x) + tdim(y)});
                out.coboundary.emplace_back();
                out.census.push_back(out.cells.back());
            }
        // Type 2: (x,x,k), 0 <= k <= dim x; delta (x,x,0)* = (x,x,1)*
        for (int x = 0; x < ntup; ++x) {
            const int base = static_cast<int>(out.cells.size());
            for (int k = 0; k <= tdim(x); ++k) {
                out.cells.push_back(
                    {"(" + tup(x) + "," + tup(x) + ",k=" + std::to_string(k) + ")", tdim(x) + k});
                out.coboundary.emplace_back();
                if (k >= 2 || tdim(x) == 0)
                    out.census.push_back(out.cells.back());
            }
            if (tdim(x) >= 1)
                out.coboundary[static_cast<std::size_t>(base)] = {base + 1};
        }
    }

    // delta . delta = 0, cell by cell
    for (std::size_t i = 0; i < out.cells.size(); ++i) {
        std::vector<int> dd;
        for (int mid : out.coboundary[i])
            for (int tgt : out.coboundary[static_cast<std::size_t>(mid)])
                dd.push_back(tgt);
        std::sort(dd.begin(), dd.end());
        for (std::size_t a = 0; a + 1 < dd.size(); a += 2)
            contract_check(dd[a] == dd[a + 1], "delta squared has an unpaired term");
        contract_check(dd.size() % 2 == 0, "delta squared has an unpaired term");
    }

    out.betti = detail::coboundary_betti(out.cells, out.coboundary);
    out.census_by_degree.assign(out.betti.size(), 0);
    for (const auto& g : out.census) {
        contract_check(g.dim < static_cast<int>(out.census_by_degree.size()),
                       "census degree beyond the top cell dimension");
        ++out.census_by_degree[static_cast<std::size_t>(g.dim)];
    }
    out.census_matches = (out.betti == out.census_by_degree);
    return out;
}

namespace detail
{

/** Boundary sphere of the (d+1)-dimensional cross-polytope: a regular
 *  simplicial S^d on vertex pairs {2j, 2j+1}, antipodal under v ^ 1. */
inline CellComplex cross_polytope_sphere(int d)
{
    std::vector<std::vector<int>> faces;
    const int pairs = d + 1;
    std::vector<int> face;
    auto rec = [&](auto&& self, int j) -> void {
        if (j == pairs) {
            if (!face.empty())
                faces.push_back(face);
            return;
        }
        self(self, j + 1);
        for (int side = 0; side < 2; ++side) {
            face.push_back(2 * j + side);
            self(self, j + 1);
            face.pop_back();
        }
    };
    rec(rec, 0);
    for (auto& f : faces)
        std::sort(f.begin(), f.end());
    return CellComplex::simplicial(std::move(faces));
}

/** Minimal CW d-sphere: one 0-cell, one d-cell, empty boundaries. */
inline CellComplex minimal_sphere(int d)
{
    return CellComplex::delta({0, d}, {{}, {}});
}

/**
 * Cellular product of complexes.  Cells are mixed-radix tuples of factor
 * cells; boundaries follow the graded Leibniz rule.  `index` maps the
 * mixed-radix tuple id (factor 0 slowest) to the cell index in the
 * returned complex.
 */
inline CellComplex product_complex(const std::vector<const CellComplex*>& factors,
                                   std::vector<int>& index)
{
    contract_check(!factors.empty(), "product of zero factors");
    long long total = 1;
    for (auto* f : factors) {
        total *= f->size();
        contract_check(total <= 50'000'000, "product complex too large");
    }
    const int n = static_cast<int>(total);

    std::vector<int> dims(static_cast<std::size_t>(n));
    for (int id = 0; id < n; ++id) {
        int rest = id, dim = 0;
        for (std::size_t fi = factors.size(); fi-- > 0;) {
            const CellComplex& f = *factors[fi];
            dim += f.cells[static_cast<std::size_t>(rest % f.size())].dim;
            rest /= f.size();
        }
        dims[static_cast<std::size_t>(id)] = dim;
    }

    // place cells in dimension order ourselves so tuple ids stay decodable
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return dims[static_cast<std::size_t>(a)] < dims[static_cast<std::size_t>(b)];
    });
    index.assign(static_cast<std::size_t>(n), 0);
    for (int k = 0; k < n; ++k)
        index[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = k;

    std::vector<int> sorted_dims(static_cast<std::size_t>(n));
    std::vector<std::vector<std::pair<int, int>>> bnds(static_cast<std::size_t>(n));
    std::vector<int> digits(factors.size());
    for (int id = 0; id < n; ++id) {
        int rest = id;
        for (std::size_t fi = factors.size(); fi-- > 0;) {
            digits[fi] = rest % factors[fi]->size();
            rest /= factors[fi]->size();
        }
        const int k = index[static_cast<std::size_t>(id)];
        sorted_dims[static_cast<std::size_t>(k)] = dims[static_cast<std::size_t>(id)];
        // Leibniz: replace one digit by a face; the sign alternates with
        // the total dimension of the preceding factors
        int sign_prefix = 1;
        long long stride = n;
        for (std::size_t fi = 0; fi < factors.size(); ++fi) {
            const CellComplex& f = *factors[fi];
            stride /= f.size();
            const Cell& c = f.cells[static_cast<std::size_t>(digits[fi])];
            for (const auto& [face, s] : c.boundary) {
                const long long fid = id + (face - digits[fi]) * stride;
                bnds[static_cast<std::size_t>(k)].emplace_back(
                    index[static_cast<std::size_t>(fid)], sign_prefix * s);
            }
            if (c.dim % 2 != 0)
                sign_prefix = -sign_prefix;
        }
    }
    return CellComplex::delta(sorted_dims, bnds);
}

} // namespace detail

/** Result of comparing the symbolic and geometric quotient computations. */
struct SphereQuotientCrosscheck
{
    std::vector<int> symbolic_betti;
    std::vector<int> geometric_betti;
    bool match = false;
    int covering_cells = 0;  ///< cells in the geometric covering complex
    int quotient_cells = 0;  ///< cells in the geometric quotient
};

/**
 * Rebuild the sphere-product quotient geometrically and compare Betti
 * numbers with the symbolic computation.
 *
 * Odd case: cross-polytope first factor (antipodal map is free on its
 * cells) times minimal spheres; the involution is free on cells, so the
 * orbit complex is taken directly.  Even case: a product of
 * cross-polytope spheres with the swap involution, which fixes diagonal
 * cells only setwise; one barycentric subdivision regularizes it.
 *
 * Budgeted: the default limits match (t,d) in {0,1} x {2}.
 */
inline SphereQuotientCrosscheck geometric_sphere_quotient_crosscheck(int t, int d, bool odd_count,
                                                                     long long max_cells = 300'000)
{
    SphereQuotient sym = symbolic_sphere_quotient({t, d, odd_count});

    CellComplex cover;
    QuotientZ2 q;
    if (odd_count) {
        CellComplex first = detail::cross_polytope_sphere(d);
        CellComplex mini = detail::minimal_sphere(d);
        std::vector<const CellComplex*> factors{&first};
        for (int i = 0; i < 2 * t; ++i)
            factors.push_back(&mini);
        long long total = first.size();
        for (int i = 0; i < 2 * t; ++i)
            total *= mini.size();
        if (total > max_cells)
            throw resource_error("geometric crosscheck budget exceeded");
        std::vector<int> index;
        cover = detail::product_complex(factors, index);

        // antipodal map on the first factor, swap of minimal pairs behind it
        CellInvolution first_inv;
        {
            std::vector<int> vperm(static_cast<std::size_t>(2 * (d + 1)));
            for (int v = 0; v < 2 * (d + 1); ++v)
                vperm[static_cast<std::size_t>(v)] = v ^ 1;
            first_inv = induced_involution_simplicial(first, vperm);
        }
        const int m = mini.size();
        CellInvolution inv;
        inv.perm.resize(static_cast<std::size_t>(cover.size()));
        inv.sign.assign(static_cast<std::size_t>(cover.size()), 1);
        const int n = cover.size();
        for (int id = 0; id < n; ++id) {
            // decode (c0, e_1, ..., e_2t), image: (antipode(c0), e_2, e_1, ...)
            int rest = id;
            std::vector<int> e(static_cast<std::size_t>(2 * t));
            for (int i = 2 * t - 1; i >= 0; --i) {
                e[static_cast<std::size_t>(i)] = rest % m;
                rest /= m;
            }
            const int c0 = rest;
            long long img = first_inv.perm[static_cast<std::size_t>(c0)];
            for (int i = 0; i < 2 * t; ++i)
                img = img * m + e[static_cast<std::size_t>(i ^ 1)];
            inv.perm[static_cast<std::size_t>(index[static_cast<std::size_t>(id)])] =
                index[static_cast<std::size_t>(img)];
        }
        q = quotient_free_cells(cover, inv);
    } else {
        if (t == 0) {
            // zero spheres: the quotient of a point is a point
            SphereQuotientCrosscheck out;
            out.symbolic_betti = sym.betti;
            out.geometric_betti = {1};
            out.match = (out.symbolic_betti == out.geometric_betti);
            out.covering_cells = 1;
            out.quotient_cells = 1;
            return out;
        }
        CellComplex sphere = detail::cross_polytope_sphere(d);
        std::vector<const CellComplex*> factors(static_cast<std::size_t>(2 * t), &sphere);
        long long total = 1;
        for (int i = 0; i < 2 * t; ++i)
            total *= sphere.size();
        if (total > max_cells)
            throw resource_error("geometric crosscheck budget exceeded");
        std::vector<int> index;
        cover = detail::product_complex(factors, index);

        const int m = sphere.size();
        CellInvolution inv;
        inv.perm.resize(static_cast<std::size_t>(cover.size()));
        inv.sign.assign(static_cast<std::size_t>(cover.size()), 1);
        const int n = cover.size();
        for (int id = 0; id < n; ++id) {
            // decode (s_1, s_2, ..., s_{2t-1}, s_2t), image swaps each pair
            int rest = id;
            std::vector<int> e(static_cast<std::size_t>(2 * t));
            for (int i = 2 * t - 1; i >= 0; --i) {
                e[static_cast<std::size_t>(i)] = rest % m;
                rest /= m;
            }
            long long img = 0;
            for (int i = 0; i < 2 * t; ++i)
                img = img * m + e[static_cast<std::size_t>(i ^ 1)];
            inv.perm[static_cast<std::size_t>(index[static_cast<std::size_t>(id)])] =
                index[static_cast<std::size_t>(img)];
        }
        q = quotient_delta_complex(cover, inv);
        if (q.cx.size() > max_cells)
            throw resource_error("geometric crosscheck budget exceeded");
    }

    HomologyCalculator calc(q.cx);
    std::vector<int> geo(static_cast<std::size_t>(q.cx.top_dim() + 1));
    for (int k = 0; k <= q.cx.top_dim(); ++k)
        geo[static_cast<std::size_t>(k)] = calc.betti_z2(k);
    while (geo.size() < sym.betti.size())
        geo.push_back(0);
    std::vector<int> symb = sym.betti;
    while (symb.size() < geo.size())
        symb.push_back(0);

    SphereQuotientCrosscheck out;
    out.symbolic_betti = std::move(symb);
    out.geometric_betti = std::move(geo);
    out.match = (out.symbolic_betti == out.geometric_betti);
    out.covering_cells = cover.size();
    out.quotient_cells = q.cx.size();
    return out;
}

} // namespace homcx
