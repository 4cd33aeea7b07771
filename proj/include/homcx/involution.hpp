/**
 * Cellular involutions with orientation bookkeeping.
 *
 * An automorphism of the source graph (or of the target) permutes the
 * cells of both models of the map complex.  On the simplicial model the
 * orientation sign is the parity of the permutation the relabeling
 * induces on each vertex list; on the prodsimplicial model a cell is an
 * ordered tensor product of simplices, so permuting the factors picks up
 * the graded (Koszul) sign - each transposition of adjacent factors of
 * dimensions p and q contributes (-1)^(p*q) - times the per-factor
 * relabeling parities.
 *
 * The quotient machinery downstream only needs the cell permutation; the
 * signs feed the action on (co)homology.
 */

#ifndef HOMCX_INVOLUTION_HPP
#define HOMCX_INVOLUTION_HPP

#include <algorithm>
#include <map>
#include <vector>

#include <homcx/cell_complex.hpp>
#include <homcx/graph.hpp>
#include <homcx/hom_complexes.hpp>

namespace homcx {

/** Signed cell permutation of order two. */
struct CellInvolution {
    std::vector<int> perm;   //!< image cell index per cell
    std::vector<int> sign;   //!< orientation sign (+-1) per cell

    int size() const { return static_cast<int>(perm.size()); }

    /** Cells mapped to themselves (regardless of sign). */
    std::vector<int> fixed_cells() const
    {
        std::vector<int> out;
        for (int i = 0; i < size(); ++i)
            if (perm[static_cast<std::size_t>(i)] == i)
                out.push_back(i);
        return out;
    }

    /** Free on cells: no cell is mapped to itself. */
    bool is_free() const
    {
        for (int i = 0; i < size(); ++i)
            if (perm[static_cast<std::size_t>(i)] == i)
                return false;
        return true;
    }
};

namespace detail {

/** Parity sign of the permutation sorting `v` ascending; 0 on repeats. */
inline int sort_parity(std::vector<int>& v)
{
    int sign = 1;
    for (std::size_t a = 0; a + 1 < v.size(); ++a)
        for (std::size_t b = 0; b + 1 < v.size() - a; ++b) {
            if (v[b] == v[b + 1])
                return 0;
            if (v[b] > v[b + 1]) {
                std::swap(v[b], v[b + 1]);
                sign = -sign;
            }
        }
    return sign;
}

inline void check_involution_shape(const CellComplex& cx, const CellInvolution& inv)
{
    contract_check(inv.size() == cx.size(), "involution covers every cell");
    for (int i = 0; i < inv.size(); ++i) {
        int j = inv.perm[static_cast<std::size_t>(i)];
        contract_check(cx.cells[static_cast<std::size_t>(i)].dim == cx.cells[static_cast<std::size_t>(j)].dim,
                       "involution preserves dimension");
        contract_check(inv.perm[static_cast<std::size_t>(j)] == i, "cell map squares to the identity");
        contract_check(inv.sign[static_cast<std::size_t>(i)] * inv.sign[static_cast<std::size_t>(j)] == 1,
                       "signs along an orbit multiply to one");
    }
}

}   // namespace detail

/**
 * Involution of a simplicial complex induced by an order-two permutation
 * of its ground vertices.  Every image simplex must exist.
 */
inline CellInvolution induced_involution_simplicial(const CellComplex& cx,
                                                    const std::vector<int>& vertex_perm)
{
    contract_check(cx.kind == ComplexKind::simplicial, "simplicial complex expected");
    CellInvolution inv;
    inv.perm.resize(static_cast<std::size_t>(cx.size()));
    inv.sign.resize(static_cast<std::size_t>(cx.size()));
    for (int i = 0; i < cx.size(); ++i) {
        std::vector<int> img;
        for (int v : cx.cells[static_cast<std::size_t>(i)].simplex)
            img.push_back(vertex_perm[static_cast<std::size_t>(v)]);
        int s = detail::sort_parity(img);
        contract_check(s != 0, "vertex permutation must be injective on each simplex");
        int j = cx.find_simplex(img);
        contract_check(j >= 0, "image simplex missing: not an automorphism of the complex");
        inv.perm[static_cast<std::size_t>(i)] = j;
        inv.sign[static_cast<std::size_t>(i)] = s;
    }
    detail::check_involution_shape(cx, inv);
    return inv;
}

/**
 * Involution of a prodsimplicial map complex induced by automorphisms
 * gamma of the source positions and (optionally) psi of the target
 * vertices: the image cell reads eta'(v) = psi(eta(gamma(v))).
 */
inline CellInvolution induced_involution_prodsimplicial(const CellComplex& cx,
                                                        const std::vector<int>& gamma,
                                                        const std::vector<int>* psi = nullptr)
{
    contract_check(cx.kind == ComplexKind::prodsimplicial, "prodsimplicial complex expected");
    CellInvolution inv;
    inv.perm.resize(static_cast<std::size_t>(cx.size()));
    inv.sign.resize(static_cast<std::size_t>(cx.size()));
    for (int i = 0; i < cx.size(); ++i) {
        const Multihom& eta = cx.cells[static_cast<std::size_t>(i)].multihom;
        contract_check(eta.size() == gamma.size(), "gamma must permute the positions");
        Multihom img(eta.size());
        int s = 1;
        for (std::size_t v = 0; v < eta.size(); ++v) {
            std::vector<int> part = eta[static_cast<std::size_t>(gamma[v])];
            if (psi)
                for (int& w : part)
                    w = (*psi)[static_cast<std::size_t>(w)];
            int ps = detail::sort_parity(part);
            contract_check(ps != 0, "psi must be injective on each factor");
            s *= ps;
            img[v] = std::move(part);
        }
        // Koszul sign of reordering the graded factors: a pair of source
        // positions appearing out of order in the image contributes the
        // product of the factor dimensions
        for (std::size_t a = 0; a < eta.size(); ++a)
            for (std::size_t b = a + 1; b < eta.size(); ++b)
                if (gamma[a] > gamma[b]) {
                    long long da = static_cast<long long>(eta[static_cast<std::size_t>(gamma[a])].size()) - 1;
                    long long db = static_cast<long long>(eta[static_cast<std::size_t>(gamma[b])].size()) - 1;
                    if ((da * db) % 2 != 0)
                        s = -s;
                }
        int j = cx.find_multihom(img);
        contract_check(j >= 0, "image cell missing: not an automorphism of the complex");
        inv.perm[static_cast<std::size_t>(i)] = j;
        inv.sign[static_cast<std::size_t>(i)] = s;
    }
    detail::check_involution_shape(cx, inv);
    return inv;
}

/**
 * Involution on the simplicial map model induced by a source-graph
 * involution (acting on pair vertices (v, w) as (gamma v, w)) and an
 * optional target involution psi (acting as (v, psi w)).
 */
inline CellInvolution induced_involution_hom_plus(const CellComplex& cx, const Involution& gamma,
                                                  int h_n, const Involution* psi = nullptr)
{
    std::vector<int> vperm(static_cast<std::size_t>(gamma.map.from_n) * static_cast<std::size_t>(h_n));
    for (int v = 0; v < gamma.map.from_n; ++v)
        for (int w = 0; w < h_n; ++w)
            vperm[static_cast<std::size_t>(v * h_n + w)] =
                gamma.map(v) * h_n + (psi ? psi->map(w) : w);
    return induced_involution_simplicial(cx, vperm);
}

/** Same for the prodsimplicial model. */
inline CellInvolution induced_involution_hom(const CellComplex& cx, const Involution& gamma,
                                             const Involution* psi = nullptr)
{
    std::vector<int> g(static_cast<std::size_t>(gamma.map.from_n));
    for (int v = 0; v < gamma.map.from_n; ++v)
        g[static_cast<std::size_t>(v)] = gamma.map(v);
    if (!psi)
        return induced_involution_prodsimplicial(cx, g, nullptr);
    std::vector<int> p(static_cast<std::size_t>(psi->map.from_n));
    for (int w = 0; w < psi->map.from_n; ++w)
        p[static_cast<std::size_t>(w)] = psi->map(w);
    return induced_involution_prodsimplicial(cx, g, &p);
}

/**
 * Chain-level equivariance: boundary(image of c) equals the signed image
 * of boundary(c) for every cell.  Quadratic; for tests.
 */
inline bool commutes_with_boundary(const CellComplex& cx, const CellInvolution& inv)
{
    for (int i = 0; i < cx.size(); ++i) {
        const Cell& c = cx.cells[static_cast<std::size_t>(i)];
        std::map<int, long long> lhs, rhs;
        for (auto& [f, s] : cx.cells[static_cast<std::size_t>(inv.perm[static_cast<std::size_t>(i)])].boundary)
            lhs[f] += static_cast<long long>(s) * inv.sign[static_cast<std::size_t>(i)];
        for (auto& [f, s] : c.boundary)
            rhs[inv.perm[static_cast<std::size_t>(f)]] +=
                static_cast<long long>(s) * inv.sign[static_cast<std::size_t>(f)];
        for (auto& [k, v] : rhs)
            lhs[k] -= v;
        for (auto& [k, v] : lhs)
            if (v != 0)
                return false;
    }
    return true;
}

/**
 * Action of a cell involution on the cohomology presentation in one
 * degree: the matrix column j gives the class of the pullback of
 * generator j.  (The pullback of a cochain z is z' with
 * z'(c) = sign(c) * z(image of c).)
 */
inline SparseIntVec<BigInt> pullback_cochain(const CellComplex& cx, const CellInvolution& inv, int degree,
                                             const SparseIntVec<BigInt>& z)
{
    const int off = cx.offset(degree);
    std::vector<std::pair<int, BigInt>> out;
    for (int j = 0; j < cx.count(degree); ++j) {
        int img = inv.perm[static_cast<std::size_t>(off + j)] - off;
        auto it = std::lower_bound(z.begin(), z.end(), img,
                                   [](const std::pair<int, BigInt>& p, int k) { return p.first < k; });
        if (it != z.end() && it->first == img) {
            BigInt v = it->second * inv.sign[static_cast<std::size_t>(off + j)];
            if (v != 0)
                out.emplace_back(j, v);
        }
    }
    return out;
}

}   // namespace homcx

#endif   // HOMCX_INVOLUTION_HPP
