#pragma once

/**
 * Boundary ranks of a cell complex over the prime field Z/p, computed by
 * column reduction in decreasing dimension with clearing.
 *
 * Motivation: for large complexes the integer Smith normal form of a middle
 * boundary operator can suffer catastrophic fill-in, while the same rank over
 * a small field is often tractable.  Beyond mod-p Betti numbers, field ranks
 * can certify *integer* ranks exactly: writing c_d for the number of d-cells,
 * r_d = rank_Q(del_d) and z_d = dim_Q ker(del_d), rank-nullity gives
 * c_d = r_d + z_d, and del.del = 0 gives z_d >= r_{d+1}.  Since field ranks
 * never exceed rational ranks,
 *
 *     c_d  =  r_d + z_d  >=  r_d + r_{d+1}  >=  rank_p(del_d) + rank_p(del_{d+1}).
 *
 * Whenever rank_p(del_d) + rank_p(del_{d+1}) == c_d — equivalently the mod-p
 * Betti number b_d(F_p) vanishes — the chain collapses and
 * rank_Z(del_d) == rank_p(del_d) exactly, with no probabilistic step.
 *
 * The reduction itself is the standard persistence-style column algorithm:
 * for each dimension, repeatedly add earlier reduced columns to cancel the
 * lowest (largest-index) row of the current column until that row is unowned
 * or the column vanishes.  Processing dimensions from the top down enables
 * clearing: a finished pivot in del_{d} with low row i proves (via del.del=0)
 * that column i of del_{d-1} lies in the span of columns of smaller index, so
 * its reduction is skipped outright.  Only one dimension's columns are held
 * in memory at a time.
 */

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cell_complex.hpp"

namespace homcx
{

/** Ranks of every boundary operator of a complex over Z/p. */
struct ModpRanks
{
    int p = 2;                      ///< the prime used
    std::vector<int> cell_count;    ///< cells per dimension, index 0..top_dim
    std::vector<int> boundary_rank; ///< rank_p(del_d) at index d; index 0 and
                                    ///< top_dim+1 are 0 (empty operators)
    std::vector<int> betti;         ///< b_d(F_p) = c_d - r_d - r_{d+1}

    /**
     * Integer rank of del_d certified by the sandwich argument above:
     * returns rank_Z(del_d) when b_d(F_p) == 0 forces every inequality in
     * the chain tight, and nullopt otherwise (the field rank is then only a
     * lower bound and nothing exact can be concluded from this prime alone).
     */
    std::optional<int> certified_integer_rank(int d) const
    {
        if (d < 1 || d >= static_cast<int>(boundary_rank.size()))
            return std::nullopt;
        // b_d(F_p) = 0 collapses the sandwich
        //   c_d >= rank(D_d) + rank(D_{d+1}) >= rank_p(D_d) + rank_p(D_{d+1}) = c_d,
        // pinning the integer ranks of both D_d and D_{d+1} to the mod-p
        // values; so either neighbouring vanishing certifies rank(D_d).
        auto b = [&](int k) {
            return k >= 0 && k < static_cast<int>(betti.size()) &&
                   betti[static_cast<std::size_t>(k)] == 0;
        };
        if (b(d) || b(d - 1))
            return boundary_rank[static_cast<std::size_t>(d)];
        return std::nullopt;
    }
};

/**
 * Compute rank_p(del_d) for all d, plus mod-p Betti numbers, by column
 * reduction with clearing.  p must be a prime below 2^15 (field arithmetic is
 * done in int); incidence values are reduced mod p on load.
 */
inline ModpRanks modp_boundary_ranks(const CellComplex& x, int p = 2)
{
    if (p < 2)
        throw contract_error("modp_boundary_ranks: p must be a prime >= 2");
    if (p >= (1 << 15))
        throw contract_error("modp_boundary_ranks: p too large");

    const int top = x.top_dim();
    ModpRanks out;
    out.p = p;
    out.cell_count.assign(static_cast<std::size_t>(top < 0 ? 1 : top + 1), 0);
    for (int d = 0; d <= top; ++d)
        out.cell_count[static_cast<std::size_t>(d)] = x.count(d);
    out.boundary_rank.assign(static_cast<std::size_t>(top < 0 ? 1 : top + 2), 0);

    // Inverses mod p by brute force; p is tiny.
    std::vector<int> inv(static_cast<std::size_t>(p), 0);
    for (int v = 1; v < p; ++v)
        for (int w = 1; w < p; ++w)
            if (v * w % p == 1) {
                inv[static_cast<std::size_t>(v)] = w;
                break;
            }

    using Col = std::vector<std::pair<int, int>>; // (row, value), sorted by row

    // cleared[j] for the dimension currently being reduced: column j is a
    // linear combination of earlier columns, proven by a pivot one dimension up.
    std::vector<char> cleared;
    Col merged, scaled;

    for (int d = top; d >= 1; --d) {
        const int n_cols = x.count(d);
        const int n_rows = x.count(d - 1);
        const int off = x.offset(d);
        const int off_prev = x.offset(d - 1);

        std::vector<Col> cols(static_cast<std::size_t>(n_cols));
        for (int j = 0; j < n_cols; ++j) {
            if (!cleared.empty() && cleared[static_cast<std::size_t>(j)])
                continue;
            Col& c = cols[static_cast<std::size_t>(j)];
            const auto& bd = x.cells[static_cast<std::size_t>(off + j)].boundary;
            c.reserve(bd.size());
            for (const auto& [face, sign] : bd)
                c.emplace_back(face - off_prev, sign);
            std::sort(c.begin(), c.end());
            // coalesce repeated faces (delta complexes) and reduce mod p
            std::size_t w = 0;
            for (std::size_t rd = 0; rd < c.size();) {
                std::size_t e = rd;
                long long sum = 0;
                while (e < c.size() && c[e].first == c[rd].first)
                    sum += c[e++].second;
                int v = static_cast<int>(sum % p);
                if (v < 0)
                    v += p;
                if (v != 0)
                    c[w++] = {c[rd].first, v};
                rd = e;
            }
            c.resize(w);
        }

        std::vector<int> low_owner(static_cast<std::size_t>(n_rows), -1);
        std::vector<char> next_cleared(static_cast<std::size_t>(n_rows), 0);
        int rank = 0;

        for (int j = 0; j < n_cols; ++j) {
            if (!cleared.empty() && cleared[static_cast<std::size_t>(j)])
                continue;
            Col& c = cols[static_cast<std::size_t>(j)];
            while (!c.empty()) {
                const int i = c.back().first;
                const int owner = low_owner[static_cast<std::size_t>(i)];
                if (owner < 0) {
                    low_owner[static_cast<std::size_t>(i)] = j;
                    next_cleared[static_cast<std::size_t>(i)] = 1;
                    ++rank;
                    break;
                }
                // c -= (c.low / owner.low) * owner, mod p
                const Col& o = cols[static_cast<std::size_t>(owner)];
                const int f = c.back().second * inv[static_cast<std::size_t>(o.back().second)] % p;
                merged.clear();
                merged.reserve(c.size() + o.size());
                std::size_t a = 0, b = 0;
                while (a < c.size() && b < o.size()) {
                    if (c[a].first < o[b].first)
                        merged.push_back(c[a++]);
                    else if (c[a].first > o[b].first) {
                        int v = (p - f * o[b].second % p) % p;
                        if (v != 0)
                            merged.emplace_back(o[b].first, v);
                        ++b;
                    } else {
                        int v = (c[a].second - f * o[b].second % p + p * p) % p;
                        if (v != 0)
                            merged.emplace_back(c[a].first, v);
                        ++a;
                        ++b;
                    }
                }
                while (a < c.size())
                    merged.push_back(c[a++]);
                while (b < o.size()) {
                    int v = (p - f * o[b].second % p) % p;
                    if (v != 0)
                        merged.emplace_back(o[b].first, v);
                    ++b;
                }
                c.swap(merged);
            }
            if (c.empty())
                Col().swap(c); // release capacity of fully reduced columns
        }

        out.boundary_rank[static_cast<std::size_t>(d)] = rank;
        cleared = std::move(next_cleared);
    }

    out.betti.assign(static_cast<std::size_t>(top < 0 ? 1 : top + 1), 0);
    for (int d = 0; d <= top; ++d)
        out.betti[static_cast<std::size_t>(d)] = out.cell_count[static_cast<std::size_t>(d)] -
                                                 out.boundary_rank[static_cast<std::size_t>(d)] -
                                                 out.boundary_rank[static_cast<std::size_t>(d + 1)];
    if (top < 0)
        out.betti.clear();
    return out;
}

} // namespace homcx
