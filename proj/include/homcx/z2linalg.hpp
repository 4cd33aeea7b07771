/**
 * Exact linear algebra over the two-element field.
 *
 * Two representations, chosen by the caller:
 *  - DenseZ2: bit-packed rows, Gaussian elimination; right choice for the
 *    subquotient bookkeeping in the spectral module (hundreds/thousands).
 *  - sparse column lists; right choice for the large boundary matrices of
 *    subdivided quotient complexes (10^5 .. 10^7 nonzeros), reduced with
 *    the usual pivot-per-row column algorithm.
 *
 * Everything is deterministic: pivots are chosen by index order.
 */

#ifndef HOMCX_Z2LINALG_HPP
#define HOMCX_Z2LINALG_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include <homcx/errors.hpp>

namespace homcx {
namespace z2 {

/** Sparse Z2 vector: strictly increasing row indices of the set bits. */
using SparseVec = std::vector<int>;

/** Symmetric difference (XOR) of two sorted index lists. */
inline SparseVec sparse_xor(const SparseVec& a, const SparseVec& b)
{
    SparseVec out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

/** Dot product over Z2 of two sorted index lists. */
inline int sparse_dot(const SparseVec& a, const SparseVec& b)
{
    std::size_t i = 0, j = 0;
    int parity = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            parity ^= 1;
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    return parity;
}

/**
 * Sparse Z2 matrix, columns stored as sorted row-index lists.
 */
struct SparseMatrix {
    int rows = 0;
    std::vector<SparseVec> cols;

    SparseMatrix() = default;
    SparseMatrix(int nrows, int ncols) : rows(nrows), cols(static_cast<std::size_t>(ncols)) {}

    int ncols() const { return static_cast<int>(cols.size()); }

    std::size_t nnz() const
    {
        std::size_t t = 0;
        for (auto& c : cols)
            t += c.size();
        return t;
    }

    /** Transpose (rows of the result = columns of the input). */
    SparseMatrix transpose() const
    {
        SparseMatrix out(ncols(), rows);
        for (int j = 0; j < ncols(); ++j)
            for (int i : cols[static_cast<std::size_t>(j)])
                out.cols[static_cast<std::size_t>(i)].push_back(j);
        return out;   // row indices were appended in increasing j for each i: sorted
    }
};

/**
 * Rank by column reduction: columns are reduced against a pivot table
 * keyed on their lowest (largest-index) entry.  Destroys the copy.
 */
inline int rank(SparseMatrix m)
{
    std::vector<int> pivot_of_row(static_cast<std::size_t>(m.rows), -1);
    int rk = 0;
    for (int j = 0; j < m.ncols(); ++j) {
        SparseVec& col = m.cols[static_cast<std::size_t>(j)];
        while (!col.empty()) {
            int low = col.back();
            int p = pivot_of_row[static_cast<std::size_t>(low)];
            if (p < 0)
                break;
            col = sparse_xor(col, m.cols[static_cast<std::size_t>(p)]);
        }
        if (!col.empty()) {
            pivot_of_row[static_cast<std::size_t>(col.back())] = j;
            ++rk;
        }
    }
    return rk;
}

/** Result of an attempted linear solve M x = z over Z2. */
struct SolveResult {
    bool solvable = false;
    SparseVec x;               //!< column-index combination with M x = z (when solvable)
    SparseVec certificate_y;   //!< row functional: y M = 0 and y . z = 1 (when not)
};

/**
 * Solve M x = z over Z2.  When the system is inconsistent the result
 * instead carries a separating functional y (a left-null vector of M with
 * y . z = 1), which certifies unsolvability.
 */
inline SolveResult solve(const SparseMatrix& m, const SparseVec& z)
{
    const int ncols = m.ncols();
    // column reduction with combination tracking
    std::vector<int> pivot_of_row(static_cast<std::size_t>(m.rows), -1);
    std::vector<SparseVec> red(m.cols);              // reduced columns
    std::vector<SparseVec> combo(static_cast<std::size_t>(ncols));   // red[j] = sum_{i in combo[j]} M.col[i]
    for (int j = 0; j < ncols; ++j) {
        combo[static_cast<std::size_t>(j)] = {j};
        SparseVec& col = red[static_cast<std::size_t>(j)];
        while (!col.empty()) {
            int p = pivot_of_row[static_cast<std::size_t>(col.back())];
            if (p < 0)
                break;
            col = sparse_xor(col, red[static_cast<std::size_t>(p)]);
            combo[static_cast<std::size_t>(j)] =
                sparse_xor(combo[static_cast<std::size_t>(j)], combo[static_cast<std::size_t>(p)]);
        }
        if (!col.empty())
            pivot_of_row[static_cast<std::size_t>(col.back())] = j;
    }

    SolveResult out;
    SparseVec residue = z;
    SparseVec xcombo;
    while (!residue.empty()) {
        int p = pivot_of_row[static_cast<std::size_t>(residue.back())];
        if (p < 0)
            break;
        residue = sparse_xor(residue, red[static_cast<std::size_t>(p)]);
        xcombo = sparse_xor(xcombo, combo[static_cast<std::size_t>(p)]);
    }
    if (residue.empty()) {
        out.solvable = true;
        out.x = std::move(xcombo);
        return out;
    }

    // Inconsistent: find y with y M = 0, y . residue = 1 (then y . z = 1,
    // because residue differs from z by a column combination).
    // Row-reduce the transpose with combination tracking and scan the
    // left-null vectors produced.
    SparseMatrix mt = m.transpose();
    std::vector<int> pivot_of_col(static_cast<std::size_t>(mt.rows), -1);
    std::vector<SparseVec> rred(mt.cols);
    std::vector<SparseVec> rcombo(static_cast<std::size_t>(mt.ncols()));
    for (int j = 0; j < mt.ncols(); ++j) {
        rcombo[static_cast<std::size_t>(j)] = {j};
        SparseVec& row = rred[static_cast<std::size_t>(j)];
        while (!row.empty()) {
            int p = pivot_of_col[static_cast<std::size_t>(row.back())];
            if (p < 0)
                break;
            row = sparse_xor(row, rred[static_cast<std::size_t>(p)]);
            rcombo[static_cast<std::size_t>(j)] =
                sparse_xor(rcombo[static_cast<std::size_t>(j)], rcombo[static_cast<std::size_t>(p)]);
        }
        if (row.empty()) {
            // rcombo[j] is a left-null combination of rows of M
            if (sparse_dot(rcombo[static_cast<std::size_t>(j)], residue) == 1) {
                out.certificate_y = rcombo[static_cast<std::size_t>(j)];
                return out;
            }
        } else {
            pivot_of_col[static_cast<std::size_t>(row.back())] = j;
        }
    }
    throw contract_error("z2::solve: inconsistent system without separating functional");
}

/* ------------------------------------------------------------------ *
 *  Dense bit-packed matrices                                          *
 * ------------------------------------------------------------------ */

/**
 * Dense Z2 matrix with bit-packed rows.
 */
struct DenseZ2 {
    int rows = 0;
    int cols = 0;
    int words = 0;
    std::vector<std::uint64_t> bits;   // row-major, `words` words per row

    DenseZ2() = default;
    DenseZ2(int r, int c)
        : rows(r), cols(c), words((c + 63) / 64), bits(static_cast<std::size_t>(r) * static_cast<std::size_t>((c + 63) / 64), 0)
    {
    }

    bool get(int r, int c) const
    {
        return (bits[static_cast<std::size_t>(r) * words + static_cast<std::size_t>(c / 64)] >> (c % 64)) & 1u;
    }
    void set(int r, int c, bool v)
    {
        std::uint64_t& w = bits[static_cast<std::size_t>(r) * words + static_cast<std::size_t>(c / 64)];
        if (v)
            w |= (std::uint64_t{1} << (c % 64));
        else
            w &= ~(std::uint64_t{1} << (c % 64));
    }
    void xor_row_into(int dst, int src)
    {
        auto* d = &bits[static_cast<std::size_t>(dst) * words];
        const auto* s = &bits[static_cast<std::size_t>(src) * words];
        for (int k = 0; k < words; ++k)
            d[k] ^= s[k];
    }
    bool row_empty(int r) const
    {
        const auto* p = &bits[static_cast<std::size_t>(r) * words];
        for (int k = 0; k < words; ++k)
            if (p[k])
                return false;
        return true;
    }

    static DenseZ2 from_sparse(const SparseMatrix& m)
    {
        DenseZ2 out(m.rows, m.ncols());
        for (int j = 0; j < m.ncols(); ++j)
            for (int i : m.cols[static_cast<std::size_t>(j)])
                out.set(i, j, true);
        return out;
    }

    DenseZ2 transpose() const
    {
        DenseZ2 out(cols, rows);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                if (get(r, c))
                    out.set(c, r, true);
        return out;
    }

    /** Matrix product over Z2. */
    DenseZ2 multiply(const DenseZ2& other) const
    {
        if (cols != other.rows)
            throw std::invalid_argument("DenseZ2::multiply: shape mismatch");
        DenseZ2 out(rows, other.cols);
        for (int r = 0; r < rows; ++r)
            for (int k = 0; k < cols; ++k)
                if (get(r, k)) {
                    auto* d = &out.bits[static_cast<std::size_t>(r) * out.words];
                    const auto* s = &other.bits[static_cast<std::size_t>(k) * other.words];
                    for (int w = 0; w < out.words; ++w)
                        d[w] ^= s[w];
                }
        return out;
    }
};

/**
 * Row reduction to (non-reduced) row echelon form in place.
 * @returns list of pivot column indices, one per pivot row (rank = size).
 */
inline std::vector<int> echelonize(DenseZ2& m)
{
    std::vector<int> pivot_cols;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int sel = -1;
        for (int r = row; r < m.rows; ++r)
            if (m.get(r, col)) {
                sel = r;
                break;
            }
        if (sel < 0)
            continue;
        if (sel != row)
            for (int k = 0; k < m.words; ++k)
                std::swap(m.bits[static_cast<std::size_t>(row) * m.words + k],
                          m.bits[static_cast<std::size_t>(sel) * m.words + k]);
        for (int r = 0; r < m.rows; ++r)
            if (r != row && m.get(r, col))
                m.xor_row_into(r, row);
        pivot_cols.push_back(col);
        ++row;
    }
    return pivot_cols;
}

inline int rank(DenseZ2 m) { return static_cast<int>(echelonize(m).size()); }

/**
 * Basis of the null space {x : M x = 0}, one bit-vector per basis element
 * (each of length M.cols, packed in a DenseZ2 with one row per element).
 */
inline DenseZ2 kernel_basis(DenseZ2 m)
{
    std::vector<int> pivots = echelonize(m);
    std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols), false);
    for (int c : pivots)
        is_pivot[static_cast<std::size_t>(c)] = true;
    int nfree = m.cols - static_cast<int>(pivots.size());
    DenseZ2 out(nfree, m.cols);
    int idx = 0;
    for (int fc = 0; fc < m.cols; ++fc) {
        if (is_pivot[static_cast<std::size_t>(fc)])
            continue;
        out.set(idx, fc, true);
        // back-substitute: pivot row r has pivot column pivots[r]
        for (std::size_t r = 0; r < pivots.size(); ++r)
            if (m.get(static_cast<int>(r), fc))
                out.set(idx, pivots[r], true);
        ++idx;
    }
    return out;
}

/**
 * Basis of the row space (echelon rows), rows of the result.
 */
inline DenseZ2 row_space_basis(DenseZ2 m)
{
    std::vector<int> pivots = echelonize(m);
    DenseZ2 out(static_cast<int>(pivots.size()), m.cols);
    for (std::size_t r = 0; r < pivots.size(); ++r)
        for (int k = 0; k < m.words; ++k)
            out.bits[r * static_cast<std::size_t>(out.words) + static_cast<std::size_t>(k)] =
                m.bits[r * static_cast<std::size_t>(m.words) + static_cast<std::size_t>(k)];
    return out;
}

/** Membership of a row vector (given as DenseZ2 with 1 row) in a row space. */
inline bool in_row_space(const DenseZ2& basis, const DenseZ2& v)
{
    DenseZ2 stacked(basis.rows + 1, basis.cols);
    std::copy(basis.bits.begin(), basis.bits.end(), stacked.bits.begin());
    std::copy(v.bits.begin(), v.bits.end(),
              stacked.bits.begin() + static_cast<std::ptrdiff_t>(basis.rows) * stacked.words);
    return rank(stacked) == rank(basis);
}

}   // namespace z2
}   // namespace homcx

#endif   // HOMCX_Z2LINALG_HPP
