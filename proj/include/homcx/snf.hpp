/**
 * Exact integer linear algebra: sparse Smith normal form, integer column
 * echelon / kernel lattices, and small dense helpers.
 *
 * The Smith computation runs in two phases.  Phase one eliminates +-1
 * pivots chosen Markowitz-style (sparsest column, then sparsest row) with
 * unimodular row/column operations; boundary matrices of the complexes
 * built here are almost entirely reduced this way.  Phase two moves the
 * small remaining core into a dense arbitrary-precision matrix and runs
 * the textbook algorithm, so overflow is impossible and the divisibility
 * chain d1 | d2 | ... is restored exactly.
 *
 * Phase one first tries 64-bit arithmetic with overflow checks and
 * transparently restarts with arbitrary-precision integers if a check
 * ever fires.
 */

#ifndef HOMCX_SNF_HPP
#define HOMCX_SNF_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include <homcx/errors.hpp>

namespace homcx {

using BigInt = boost::multiprecision::cpp_int;

/** Sparse integer vector: sorted (index, value) pairs, values nonzero. */
template <class I>
using SparseIntVec = std::vector<std::pair<int, I>>;

/**
 * Sparse integer matrix in column-major form; entry values at build time
 * are incidence numbers (always +-1 for our complexes) but may be any
 * 64-bit integer.
 */
struct SparseIntMatrix {
    int rows = 0;
    std::vector<SparseIntVec<long long>> cols;

    SparseIntMatrix() = default;
    SparseIntMatrix(int nrows, int ncols) : rows(nrows), cols(static_cast<std::size_t>(ncols)) {}

    int ncols() const { return static_cast<int>(cols.size()); }

    std::size_t nnz() const
    {
        std::size_t t = 0;
        for (auto& c : cols)
            t += c.size();
        return t;
    }

    SparseIntMatrix transpose() const
    {
        SparseIntMatrix out(ncols(), rows);
        for (int j = 0; j < ncols(); ++j)
            for (auto& [i, v] : cols[static_cast<std::size_t>(j)])
                out.cols[static_cast<std::size_t>(i)].emplace_back(j, v);
        return out;   // entries appended in increasing j per row: sorted
    }
};

/** Rank and invariant factors (in divisibility order, units included). */
struct SmithSummary {
    int rank = 0;
    std::vector<BigInt> invariant_factors;   //!< d_1 | d_2 | ... | d_rank, all positive

    /** Invariant factors greater than one (the torsion part). */
    std::vector<BigInt> nontrivial_factors() const
    {
        std::vector<BigInt> out;
        for (auto& d : invariant_factors)
            if (d > 1)
                out.push_back(d);
        return out;
    }
};

namespace detail {

struct overflow_needs_bigint {};

template <class I>
struct int_ops {
    static I add(const I& a, const I& b) { return a + b; }
    static I sub(const I& a, const I& b) { return a - b; }
    static I mul(const I& a, const I& b) { return a * b; }
};

template <>
struct int_ops<long long> {
    static long long add(long long a, long long b)
    {
        long long r;
        if (__builtin_add_overflow(a, b, &r))
            throw overflow_needs_bigint{};
        return r;
    }
    static long long sub(long long a, long long b)
    {
        long long r;
        if (__builtin_sub_overflow(a, b, &r))
            throw overflow_needs_bigint{};
        return r;
    }
    static long long mul(long long a, long long b)
    {
        long long r;
        if (__builtin_mul_overflow(a, b, &r))
            throw overflow_needs_bigint{};
        return r;
    }
};

/**
 * Textbook dense Smith normal form over BigInt.  When u/uinv are given
 * they accumulate the row operations: on exit D = U * A_in * V with
 * U = *u, U^-1 = *uinv (V is not tracked).
 */
inline std::vector<BigInt> dense_smith_core(std::vector<std::vector<BigInt>>& a,
                                            std::vector<std::vector<BigInt>>* u,
                                            std::vector<std::vector<BigInt>>* uinv)
{
    std::vector<BigInt> diag;
    const int nr = static_cast<int>(a.size());
    const int nc = nr ? static_cast<int>(a[0].size()) : 0;
    if (u) {
        u->assign(static_cast<std::size_t>(nr), std::vector<BigInt>(static_cast<std::size_t>(nr), 0));
        uinv->assign(static_cast<std::size_t>(nr), std::vector<BigInt>(static_cast<std::size_t>(nr), 0));
        for (int i = 0; i < nr; ++i)
            (*u)[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
                (*uinv)[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    }
    // row ops mirrored into U (same op) and U^-1 (inverse op, applied to columns)
    auto swap_rows = [&](int i, int j) {
        std::swap(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(j)]);
        if (u) {
            std::swap((*u)[static_cast<std::size_t>(i)], (*u)[static_cast<std::size_t>(j)]);
            for (auto& row : *uinv)
                std::swap(row[static_cast<std::size_t>(i)], row[static_cast<std::size_t>(j)]);
        }
    };
    auto row_axpy = [&](int dst, const BigInt& c, int src) {
        // row_dst += c * row_src
        for (std::size_t j = 0; j < a[static_cast<std::size_t>(dst)].size(); ++j)
            a[static_cast<std::size_t>(dst)][j] += c * a[static_cast<std::size_t>(src)][j];
        if (u) {
            for (std::size_t j = 0; j < u->size(); ++j)
                (*u)[static_cast<std::size_t>(dst)][j] += c * (*u)[static_cast<std::size_t>(src)][j];
            for (auto& row : *uinv)
                row[static_cast<std::size_t>(src)] -= c * row[static_cast<std::size_t>(dst)];
        }
    };
    int t = 0;
    auto nonzero_in_block = [&](int& bi, int& bj) {
        bool found = false;
        BigInt best = 0;
        for (int i = t; i < nr; ++i)
            for (int j = t; j < nc; ++j)
                if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0) {
                    BigInt mag = abs(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
                    if (!found || mag < best) {
                        found = true;
                        best = mag;
                        bi = i;
                        bj = j;
                    }
                }
        return found;
    };
    while (t < nr && t < nc) {
        int bi = -1, bj = -1;
        if (!nonzero_in_block(bi, bj))
            break;
        auto at = [&](int i, int j) -> BigInt& {
            return a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        };
        swap_rows(t, bi);
        for (int i = 0; i < nr; ++i)
            std::swap(at(i, t), at(i, bj));
        // clear row and column t, restarting whenever a remainder shrinks the pivot
        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < nr; ++i) {
                if (at(i, t) == 0)
                    continue;
                BigInt q = at(i, t) / at(t, t);
                if (q != 0)
                    row_axpy(i, -q, t);
                if (at(i, t) != 0) {   // remainder became the smaller pivot candidate
                    swap_rows(t, i);
                    clean = false;
                }
            }
            if (!clean)
                continue;
            for (int j = t + 1; j < nc; ++j) {
                if (at(t, j) == 0)
                    continue;
                BigInt q = at(t, j) / at(t, t);
                for (int i = t; i < nr; ++i)
                    at(i, j) -= q * at(i, t);
                if (at(t, j) != 0) {
                    for (int i = t; i < nr; ++i)
                        std::swap(at(i, t), at(i, j));
                    clean = false;
                }
            }
            if (!clean)
                continue;
            // a trailing column swap may have reintroduced entries below the pivot
            for (int i = t + 1; i < nr && clean; ++i)
                if (at(i, t) != 0)
                    clean = false;
            if (!clean)
                continue;
            // pivot must divide the rest of the block; if not, pull the
            // offending row in and keep reducing
            for (int i = t + 1; i < nr && clean; ++i)
                for (int j = t + 1; j < nc && clean; ++j)
                    if (at(i, j) % at(t, t) != 0) {
                        row_axpy(t, 1, i);
                        clean = false;
                    }
        }
        if (at(t, t) < 0) {
            // normalize the pivot sign so diagonal entries are positive
            for (int j = t; j < nc; ++j)
                at(t, j) = -at(t, j);
            if (u) {
                for (auto& x : (*u)[static_cast<std::size_t>(t)])
                    x = -x;
                for (auto& row : *uinv)
                    row[static_cast<std::size_t>(t)] = -row[static_cast<std::size_t>(t)];
            }
        }
        diag.push_back(at(t, t));
        ++t;
    }
    return diag;
}

/** Dense Smith normal form diagonal (no transforms). */
inline std::vector<BigInt> dense_smith(std::vector<std::vector<BigInt>> a)
{
    return dense_smith_core(a, nullptr, nullptr);
}

/**
 * Phase-one sparse eliminator.  Returns the number of +-1 pivots removed
 * and the remaining core as a dense BigInt matrix.
 *
 * Memory-lean layout for boundary matrices with millions of nonzeros:
 * rows are sorted (column, value) vectors, the column index is a lazy
 * row-id list (stale ids are skipped and compacted on visit), and the
 * pivot hunt runs over a bucket queue keyed by exact live column count.
 * Pivots are +-1 entries in the sparsest live column, shortest row
 * first; columns currently lacking a unit entry go dormant until an
 * elimination touches them again.
 */
template <class I>
std::pair<int, std::vector<std::vector<BigInt>>> sparse_unit_eliminate(const SparseIntMatrix& input,
                                                                       std::size_t dense_core_budget)
{
    using Ops = int_ops<I>;
    const int nrows = input.rows;
    const int ncols = input.ncols();

    std::vector<std::vector<std::pair<int, I>>> row(static_cast<std::size_t>(nrows));
    std::vector<int> col_live(static_cast<std::size_t>(ncols), 0);
    {
        std::vector<int> row_len(static_cast<std::size_t>(nrows), 0);
        for (int j = 0; j < ncols; ++j)
            for (auto& [i, v] : input.cols[static_cast<std::size_t>(j)])
                if (v != 0)
                    ++row_len[static_cast<std::size_t>(i)];
        for (int i = 0; i < nrows; ++i)
            row[static_cast<std::size_t>(i)].reserve(static_cast<std::size_t>(row_len[static_cast<std::size_t>(i)]));
    }
    for (int j = 0; j < ncols; ++j)
        for (auto& [i, v] : input.cols[static_cast<std::size_t>(j)])
            if (v != 0) {
                row[static_cast<std::size_t>(i)].emplace_back(j, static_cast<I>(v));
                ++col_live[static_cast<std::size_t>(j)];
            }
    // columns were visited in increasing j: rows are already sorted
    std::vector<std::vector<int>> col_rows(static_cast<std::size_t>(ncols));
    for (int j = 0; j < ncols; ++j)
        col_rows[static_cast<std::size_t>(j)].reserve(static_cast<std::size_t>(col_live[static_cast<std::size_t>(j)]));
    for (int i = 0; i < nrows; ++i)
        for (auto& [j, v] : row[static_cast<std::size_t>(i)])
            col_rows[static_cast<std::size_t>(j)].push_back(i);

    // bucket queue over live counts; entries go stale when counts move
    std::vector<std::vector<int>> bucket;
    std::size_t cursor = 1;
    auto enqueue = [&](int j) {
        int c = col_live[static_cast<std::size_t>(j)];
        if (c <= 0)
            return;
        if (bucket.size() <= static_cast<std::size_t>(c))
            bucket.resize(static_cast<std::size_t>(c) + 1);
        bucket[static_cast<std::size_t>(c)].push_back(j);
        cursor = std::min(cursor, static_cast<std::size_t>(c));
    };
    for (int j = 0; j < ncols; ++j)
        enqueue(j);

    // value of row i at column j, or nullptr
    auto entry_at = [&](int i, int j) -> I* {
        auto& r = row[static_cast<std::size_t>(i)];
        auto it = std::lower_bound(r.begin(), r.end(), j,
                                   [](const std::pair<int, I>& p, int k) { return p.first < k; });
        return (it != r.end() && it->first == j) ? &it->second : nullptr;
    };

    int units = 0;
    std::vector<std::pair<int, I>> merged;
    while (true) {
        // pop the next fresh column from the bucket queue
        while (cursor < bucket.size() && bucket[cursor].empty())
            ++cursor;
        if (cursor >= bucket.size())
            break;
        int pj = bucket[cursor].back();
        bucket[cursor].pop_back();
        if (col_live[static_cast<std::size_t>(pj)] != static_cast<int>(cursor))
            continue;   // stale entry

        // compact the column's row list and hunt for the best unit pivot
        auto& clist = col_rows[static_cast<std::size_t>(pj)];
        std::vector<int> live;
        live.reserve(clist.size());
        int pi = -1;
        std::size_t best_len = 0;
        for (int i : clist) {
            I* v = entry_at(i, pj);
            if (!v)
                continue;   // stale id
            if (!live.empty() && live.back() == i)
                continue;   // duplicate id from repeated pushes
            live.push_back(i);
            if (*v == 1 || *v == -1) {
                std::size_t len = row[static_cast<std::size_t>(i)].size();
                if (pi < 0 || len < best_len || (len == best_len && i < pi)) {
                    pi = i;
                    best_len = len;
                }
            }
        }
        clist = live;
        if (pi < 0)
            continue;   // no unit here: dormant until touched again

        // detach the pivot row
        std::vector<std::pair<int, I>> prow = std::move(row[static_cast<std::size_t>(pi)]);
        row[static_cast<std::size_t>(pi)].clear();
        I pval = 0;
        for (auto& [j, v] : prow) {
            if (j == pj)
                pval = v;
            --col_live[static_cast<std::size_t>(j)];
        }

        // row_i -= (a * pval) * prow for every other row with a at pj
        for (int i : clist) {
            if (i == pi)
                continue;
            auto& r = row[static_cast<std::size_t>(i)];
            I a = 0;
            {
                I* pa = entry_at(i, pj);
                if (!pa)
                    continue;
                a = *pa;
            }
            I f = Ops::mul(a, pval);
            merged.clear();
            merged.reserve(r.size() + prow.size());
            std::size_t x = 0, y = 0;
            while (x < r.size() || y < prow.size()) {
                if (y >= prow.size() || (x < r.size() && r[x].first < prow[y].first)) {
                    merged.push_back(r[x]);
                    ++x;
                } else if (x >= r.size() || prow[y].first < r[x].first) {
                    I nv = Ops::sub(I(0), Ops::mul(f, prow[y].second));
                    if (nv != 0) {
                        int j = prow[y].first;
                        merged.emplace_back(j, nv);
                        ++col_live[static_cast<std::size_t>(j)];
                        col_rows[static_cast<std::size_t>(j)].push_back(i);
                        enqueue(j);
                    }
                    ++y;
                } else {
                    I nv = Ops::sub(r[x].second, Ops::mul(f, prow[y].second));
                    int j = r[x].first;
                    if (nv != 0) {
                        merged.emplace_back(j, nv);
                    } else {
                        --col_live[static_cast<std::size_t>(j)];
                        enqueue(j);
                    }
                    ++x;
                    ++y;
                }
            }
            r.assign(merged.begin(), merged.end());
            r.shrink_to_fit();
        }
        // pivot row left its columns: requeue them at their new counts
        for (auto& [j, v] : prow)
            enqueue(j);
        ++units;
    }

    // collect the core
    std::vector<int> live_rows, live_cols;
    for (int j = 0; j < ncols; ++j)
        if (col_live[static_cast<std::size_t>(j)] > 0)
            live_cols.push_back(j);
    for (int i = 0; i < nrows; ++i)
        if (!row[static_cast<std::size_t>(i)].empty())
            live_rows.push_back(i);
    if (static_cast<std::size_t>(live_rows.size()) * live_cols.size() > dense_core_budget)
        throw resource_error("smith_normal_form: dense core exceeds budget");
    std::vector<std::vector<BigInt>> core(live_rows.size(), std::vector<BigInt>(live_cols.size(), 0));
    std::unordered_map<int, int> col_pos;
    for (std::size_t k = 0; k < live_cols.size(); ++k)
        col_pos[live_cols[k]] = static_cast<int>(k);
    for (std::size_t r = 0; r < live_rows.size(); ++r)
        for (auto& [j, v] : row[static_cast<std::size_t>(live_rows[r])])
            core[r][static_cast<std::size_t>(col_pos.at(j))] = BigInt(v);
    return {units, std::move(core)};
}

}   // namespace detail

/**
 * Smith normal form summary (rank + invariant factors) of a sparse
 * integer matrix.  Exact; arbitrary precision.
 */
inline SmithSummary smith_normal_form(const SparseIntMatrix& m,
                                      std::size_t dense_core_budget = std::size_t{1} << 24)
{
    std::pair<int, std::vector<std::vector<BigInt>>> phase1;
    try {
        phase1 = detail::sparse_unit_eliminate<long long>(m, dense_core_budget);
    } catch (const detail::overflow_needs_bigint&) {
        phase1 = detail::sparse_unit_eliminate<BigInt>(m, dense_core_budget);
    }
    std::vector<BigInt> tail = detail::dense_smith(std::move(phase1.second));
    // drop zero diagonal entries (they do not contribute to the rank)
    while (!tail.empty() && tail.back() == 0)
        tail.pop_back();
    SmithSummary out;
    out.rank = phase1.first + static_cast<int>(tail.size());
    out.invariant_factors.assign(static_cast<std::size_t>(phase1.first), BigInt(1));
    out.invariant_factors.insert(out.invariant_factors.end(), tail.begin(), tail.end());
    return out;
}

/** Rank over the rationals (equals the Smith rank). */
inline int integer_rank(const SparseIntMatrix& m) { return smith_normal_form(m).rank; }

/**
 * Dense Smith normal form with the row transform tracked: on return
 * diag(d) = U * A * V for some untracked unimodular V, with U and its
 * inverse reported explicitly.  Intended for presentation matrices,
 * which are small after sparse preprocessing.
 */
struct DenseSmithResult {
    std::vector<BigInt> diag;                 //!< positive invariant factors, divisibility order
    std::vector<std::vector<BigInt>> u;       //!< row transform (square, unimodular)
    std::vector<std::vector<BigInt>> uinv;    //!< its inverse
};

inline DenseSmithResult smith_with_left_transform(std::vector<std::vector<BigInt>> a)
{
    DenseSmithResult out;
    out.diag = detail::dense_smith_core(a, &out.u, &out.uinv);
    while (!out.diag.empty() && out.diag.back() == 0)
        out.diag.pop_back();
    return out;
}

/* ------------------------------------------------------------------ *
 *  Integer column echelon and kernel lattices                          *
 * ------------------------------------------------------------------ */

/**
 * Result of unimodular column reduction of an integer matrix: echelon
 * columns (distinct pivot rows, in increasing pivot-row order) spanning
 * the column lattice, plus a basis of the kernel lattice expressed in the
 * original column coordinates.
 */
struct ColumnEchelon {
    std::vector<SparseIntVec<BigInt>> echelon;   //!< echelon columns (value vectors)
    std::vector<int> pivot_rows;                 //!< pivot row of each echelon column
    std::vector<SparseIntVec<BigInt>> kernel;    //!< kernel lattice basis, coords in Z^ncols
};

namespace detail {

template <class I>
SparseIntVec<I> vec_axpy(const SparseIntVec<I>& x, const I& a, const SparseIntVec<I>& y)
{
    // x + a*y with sorted merge
    using Ops = int_ops<I>;
    SparseIntVec<I> out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j >= y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.push_back(x[i]);
            ++i;
        } else if (i >= x.size() || y[j].first < x[i].first) {
            I v = Ops::mul(a, y[j].second);
            if (v != 0)
                out.emplace_back(y[j].first, v);
            ++j;
        } else {
            I v = Ops::add(x[i].second, Ops::mul(a, y[j].second));
            if (v != 0)
                out.emplace_back(x[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

template <class I>
const I* vec_at(const SparseIntVec<I>& x, int idx)
{
    auto it = std::lower_bound(x.begin(), x.end(), idx,
                               [](const std::pair<int, I>& p, int k) { return p.first < k; });
    return (it != x.end() && it->first == idx) ? &it->second : nullptr;
}

}   // namespace detail

/**
 * Unimodular integer column echelon with kernel tracking.
 *
 * Column operations are restricted to unimodular combinations, so the
 * echelon columns span exactly the original column lattice and the kernel
 * vectors form a basis of the integer kernel.
 */
inline ColumnEchelon integer_column_echelon_big(int rows, const std::vector<SparseIntVec<BigInt>>& columns)
{
    using I = BigInt;
    const int ncols = static_cast<int>(columns.size());
    struct Col {
        SparseIntVec<I> v;       // remaining (un-echeloned) part
        SparseIntVec<I> combo;   // coordinates in the original columns
    };
    std::vector<Col> act(static_cast<std::size_t>(ncols));
    ColumnEchelon out;
    // active columns are zero above the current row, so each column is
    // findable by its head (first nonzero row); bucket queue over heads
    std::vector<std::vector<int>> bucket(static_cast<std::size_t>(rows));
    for (int j = 0; j < ncols; ++j) {
        for (auto& [i, v] : columns[static_cast<std::size_t>(j)])
            if (v != 0)
                act[static_cast<std::size_t>(j)].v.emplace_back(i, v);
        act[static_cast<std::size_t>(j)].combo = {{j, I(1)}};
        if (act[static_cast<std::size_t>(j)].v.empty())
            out.kernel.push_back(act[static_cast<std::size_t>(j)].combo);
        else
            bucket[static_cast<std::size_t>(act[static_cast<std::size_t>(j)].v.front().first)].push_back(j);
    }

    for (int r = 0; r < rows; ++r) {
        std::vector<int>& live = bucket[static_cast<std::size_t>(r)];
        std::sort(live.begin(), live.end());
        // gcd-combine until a single column is nonzero at row r
        while (live.size() > 1) {
            // pick the entry with the smallest magnitude as the reducer
            std::size_t best = 0;
            I best_mag = abs(act[static_cast<std::size_t>(live[0])].v.front().second);
            for (std::size_t k = 1; k < live.size(); ++k) {
                I mag = abs(act[static_cast<std::size_t>(live[k])].v.front().second);
                if (mag < best_mag) {
                    best = k;
                    best_mag = mag;
                }
            }
            std::swap(live[0], live[best]);
            const I pv = act[static_cast<std::size_t>(live[0])].v.front().second;
            std::vector<int> next{live[0]};
            for (std::size_t k = 1; k < live.size(); ++k) {
                Col& c = act[static_cast<std::size_t>(live[k])];
                I q = c.v.front().second / pv;   // truncated: remainder stays for later rounds
                if (q != 0) {
                    c.v = detail::vec_axpy(c.v, I(-q), act[static_cast<std::size_t>(live[0])].v);
                    c.combo = detail::vec_axpy(c.combo, I(-q), act[static_cast<std::size_t>(live[0])].combo);
                }
                if (c.v.empty())
                    out.kernel.push_back(c.combo);
                else if (c.v.front().first == r)
                    next.push_back(live[k]);
                else
                    bucket[static_cast<std::size_t>(c.v.front().first)].push_back(live[k]);
            }
            live = std::move(next);
        }
        if (!live.empty()) {
            out.echelon.push_back(act[static_cast<std::size_t>(live[0])].v);
            out.pivot_rows.push_back(r);
        }
    }
    return out;
}

inline ColumnEchelon integer_column_echelon(const SparseIntMatrix& m)
{
    std::vector<SparseIntVec<BigInt>> columns(static_cast<std::size_t>(m.ncols()));
    for (int j = 0; j < m.ncols(); ++j)
        for (auto& [i, v] : m.cols[static_cast<std::size_t>(j)])
            columns[static_cast<std::size_t>(j)].emplace_back(i, BigInt(v));
    return integer_column_echelon_big(m.rows, columns);
}

/**
 * Coordinates of w in the lattice spanned by echelon columns B (as
 * produced by integer_column_echelon applied to the matrix whose columns
 * are the basis).  Returns nullopt when w is not in the lattice.
 */
inline std::optional<std::vector<BigInt>> lattice_coordinates(const std::vector<SparseIntVec<BigInt>>& echelon,
                                                              const std::vector<int>& pivot_rows,
                                                              SparseIntVec<BigInt> w)
{
    std::vector<BigInt> coeff(echelon.size(), 0);
    for (std::size_t k = 0; k < echelon.size(); ++k) {
        const BigInt* entry = detail::vec_at(w, pivot_rows[k]);
        if (!entry)
            continue;
        const BigInt* pivot = detail::vec_at(echelon[k], pivot_rows[k]);
        if (*entry % *pivot != 0)
            return std::nullopt;
        BigInt q = *entry / *pivot;
        coeff[k] = q;
        w = detail::vec_axpy(w, BigInt(-q), echelon[k]);
    }
    if (!w.empty())
        return std::nullopt;
    return coeff;
}

}   // namespace homcx

#endif   // HOMCX_SNF_HPP
