/**
 * Finite cell complexes with explicit signed boundary operators.
 *
 * Three flavours share one container:
 *  - simplicial: cells carry strictly increasing vertex lists; the face of
 *    a simplex omitting its (i+1)-st vertex enters the boundary with sign
 *    (-1)^i.
 *  - prodsimplicial: cells are products of simplices, one factor per
 *    position; a cell is stored as one sorted vertex list per position
 *    and its codimension-one faces delete a single vertex from a factor
 *    with at least two.  The sign convention treats the cell as the
 *    tensor product of its factors in position order: deleting the k-th
 *    vertex (1-based) of factor t contributes (-1)^(k + d_t - 1) where
 *    d_t = 1 - t + sum of the sizes of the earlier factors (t 1-based).
 *  - delta: cells come with explicit boundaries supplied by the builder
 *    (used for quotients of subdivided complexes, where faces may repeat
 *    or collapse).
 *
 * Cells are sorted by (dimension, payload) so indices are deterministic;
 * boundary matrices per degree use indices local to each dimension.
 */

#ifndef HOMCX_CELL_COMPLEX_HPP
#define HOMCX_CELL_COMPLEX_HPP

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include <homcx/errors.hpp>
#include <homcx/snf.hpp>
#include <homcx/z2linalg.hpp>

namespace homcx {

/** One target list per source position; lists sorted, nonempty. */
using Multihom = std::vector<std::vector<int>>;

enum class ComplexKind { simplicial, prodsimplicial, delta };

/** FNV-style hash for integer sequences (payload lookup tables). */
struct IntVecHash {
    std::size_t operator()(const std::vector<int>& v) const
    {
        std::size_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= static_cast<std::size_t>(static_cast<unsigned>(x)) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

struct Cell {
    int dim = 0;
    std::vector<int> simplex;                  //!< simplicial payload (sorted vertex ids)
    Multihom multihom;                         //!< prodsimplicial payload
    std::vector<std::pair<int, int>> boundary; //!< (global face index, incidence sign)
};

/** Serialized payload used for ordering and hashing. */
inline std::vector<int> multihom_key(const Multihom& m)
{
    std::vector<int> key;
    for (auto& part : m) {
        key.push_back(static_cast<int>(part.size()));
        key.insert(key.end(), part.begin(), part.end());
    }
    return key;
}

class CellComplex {
  public:
    ComplexKind kind = ComplexKind::simplicial;
    std::vector<Cell> cells;       //!< sorted by (dim, payload key)
    std::vector<int> dim_start;    //!< cells of dim d live at [dim_start[d], dim_start[d+1])

    int size() const { return static_cast<int>(cells.size()); }
    int top_dim() const { return static_cast<int>(dim_start.size()) - 2; }

    int count(int d) const
    {
        if (d < 0 || d > top_dim())
            return 0;
        return dim_start[static_cast<std::size_t>(d) + 1] - dim_start[static_cast<std::size_t>(d)];
    }

    /** Global index of the first cell of dimension d. */
    int offset(int d) const { return dim_start[static_cast<std::size_t>(d)]; }

    std::vector<int> f_vector() const
    {
        std::vector<int> f(static_cast<std::size_t>(top_dim()) + 1);
        for (int d = 0; d <= top_dim(); ++d)
            f[static_cast<std::size_t>(d)] = count(d);
        return f;
    }

    long long euler_characteristic() const
    {
        long long chi = 0;
        for (int d = 0; d <= top_dim(); ++d)
            chi += (d % 2 == 0) ? count(d) : -count(d);
        return chi;
    }

    /**
     * Signed boundary matrix C_d -> C_{d-1}; columns indexed by d-cells,
     * rows by (d-1)-cells, both local to their dimension.
     */
    SparseIntMatrix boundary_matrix(int d) const
    {
        SparseIntMatrix out(count(d - 1), count(d));
        if (d <= 0 || d > top_dim())
            return out;
        const int off = offset(d), off_prev = offset(d - 1);
        for (int j = 0; j < count(d); ++j) {
            auto col = cells[static_cast<std::size_t>(off + j)].boundary;
            for (auto& [f, s] : col)
                f -= off_prev;
            std::sort(col.begin(), col.end());
            // merge repeated faces (possible in delta complexes)
            SparseIntVec<long long>& dst = out.cols[static_cast<std::size_t>(j)];
            for (auto& [f, s] : col) {
                if (!dst.empty() && dst.back().first == f)
                    dst.back().second += s;
                else
                    dst.emplace_back(f, s);
            }
            dst.erase(std::remove_if(dst.begin(), dst.end(), [](auto& p) { return p.second == 0; }),
                      dst.end());
        }
        return out;
    }

    /** Boundary matrix reduced mod 2. */
    z2::SparseMatrix boundary_matrix_z2(int d) const
    {
        SparseIntMatrix b = boundary_matrix(d);
        z2::SparseMatrix out(b.rows, b.ncols());
        for (int j = 0; j < b.ncols(); ++j)
            for (auto& [i, v] : b.cols[static_cast<std::size_t>(j)])
                if (v % 2 != 0)
                    out.cols[static_cast<std::size_t>(j)].push_back(i);
        return out;
    }

    /** Checks del o del = 0 in every degree (quadratic; for tests). */
    bool boundaries_square_to_zero() const
    {
        for (int d = 2; d <= top_dim(); ++d) {
            SparseIntMatrix bd = boundary_matrix(d);
            SparseIntMatrix bprev = boundary_matrix(d - 1);
            for (int j = 0; j < bd.ncols(); ++j) {
                std::unordered_map<int, long long> acc;
                for (auto& [i, v] : bd.cols[static_cast<std::size_t>(j)])
                    for (auto& [i2, v2] : bprev.cols[static_cast<std::size_t>(i)])
                        acc[i2] += v * v2;
                for (auto& [i2, v2] : acc)
                    if (v2 != 0)
                        return false;
            }
        }
        return true;
    }

    /** Index of a simplicial cell by its sorted vertex list, -1 if absent. */
    int find_simplex(const std::vector<int>& verts) const
    {
        auto it = index_.find(verts);
        return it == index_.end() ? -1 : it->second;
    }

    /** Index of a prodsimplicial cell by payload, -1 if absent. */
    int find_multihom(const Multihom& m) const
    {
        auto it = index_.find(multihom_key(m));
        return it == index_.end() ? -1 : it->second;
    }

    /* -------------------- builders -------------------- */

    /**
     * Simplicial complex from an explicit list of ALL faces (each a
     * strictly increasing vertex list).  The list must be closed under
     * taking faces; missing faces raise a contract error.
     */
    static CellComplex simplicial(std::vector<std::vector<int>> faces)
    {
        CellComplex cx;
        cx.kind = ComplexKind::simplicial;
        std::sort(faces.begin(), faces.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
            if (a.size() != b.size())
                return a.size() < b.size();
            return a < b;
        });
        faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
        cx.cells.reserve(faces.size());
        for (auto& f : faces) {
            contract_check(!f.empty(), "simplicial cell with no vertices");
            contract_check(std::is_sorted(f.begin(), f.end()) &&
                               std::adjacent_find(f.begin(), f.end()) == f.end(),
                           "simplex vertex list must be strictly increasing");
            Cell c;
            c.dim = static_cast<int>(f.size()) - 1;
            c.simplex = std::move(f);
            cx.cells.push_back(std::move(c));
        }
        cx.finish_index([](const Cell& c) { return c.simplex; });
        // boundaries: drop vertex i with sign (-1)^i
        for (auto& c : cx.cells) {
            if (c.dim == 0)
                continue;
            std::vector<int> face(c.simplex);
            for (std::size_t i = 0; i < c.simplex.size(); ++i) {
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
                int idx = cx.find_simplex(face);
                contract_check(idx >= 0, "simplicial complex not closed under faces");
                c.boundary.emplace_back(idx, (i % 2 == 0) ? 1 : -1);
                face.insert(face.begin() + static_cast<std::ptrdiff_t>(i), c.simplex[i]);
            }
        }
        return cx;
    }

    /**
     * Prodsimplicial complex from an explicit list of all cells (each a
     * multihom with sorted nonempty parts), closed under codimension-one
     * deletion.
     */
    static CellComplex prodsimplicial(std::vector<Multihom> mhs)
    {
        CellComplex cx;
        cx.kind = ComplexKind::prodsimplicial;
        auto mh_dim = [](const Multihom& m) {
            int d = 0;
            for (auto& part : m)
                d += static_cast<int>(part.size()) - 1;
            return d;
        };
        std::sort(mhs.begin(), mhs.end(), [&](const Multihom& a, const Multihom& b) {
            int da = mh_dim(a), db = mh_dim(b);
            if (da != db)
                return da < db;
            return multihom_key(a) < multihom_key(b);
        });
        mhs.erase(std::unique(mhs.begin(), mhs.end()), mhs.end());
        cx.cells.reserve(mhs.size());
        for (auto& m : mhs) {
            Cell c;
            c.dim = 0;
            for (auto& part : m) {
                contract_check(!part.empty(), "multihom part must be nonempty");
                contract_check(std::is_sorted(part.begin(), part.end()) &&
                                   std::adjacent_find(part.begin(), part.end()) == part.end(),
                               "multihom part must be strictly increasing");
                c.dim += static_cast<int>(part.size()) - 1;
            }
            c.multihom = std::move(m);
            cx.cells.push_back(std::move(c));
        }
        cx.finish_index([](const Cell& c) { return multihom_key(c.multihom); });
        for (auto& c : cx.cells) {
            if (c.dim == 0)
                continue;
            Multihom face(c.multihom);
            int before = 0;   // sum of part sizes before position t (0-based)
            for (std::size_t t = 0; t < c.multihom.size(); ++t) {
                const auto& part = c.multihom[t];
                if (part.size() > 1) {
                    for (std::size_t k = 0; k < part.size(); ++k) {
                        face[t].erase(face[t].begin() + static_cast<std::ptrdiff_t>(k));
                        int idx = cx.find_multihom(face);
                        contract_check(idx >= 0, "prodsimplicial complex not closed under faces");
                        // (-1)^(k1 + d - 1), k1 = k+1, d = 1 - t1 + before,
                        // t1 = t+1: exponent parity = (k + before - t) mod 2
                        long long e = static_cast<long long>(k) + before - static_cast<long long>(t);
                        c.boundary.emplace_back(idx, (((e % 2) + 2) % 2 == 0) ? 1 : -1);
                        face[t].insert(face[t].begin() + static_cast<std::ptrdiff_t>(k), part[k]);
                    }
                }
                before += static_cast<int>(part.size());
            }
        }
        return cx;
    }

    /**
     * Delta complex from explicit data: dims[i] and boundaries[i] (pairs
     * of global cell index and sign).  Cell order is preserved within
     * each dimension; indices refer to the input order and are remapped.
     */
    static CellComplex delta(const std::vector<int>& dims,
                             const std::vector<std::vector<std::pair<int, int>>>& boundaries)
    {
        contract_check(dims.size() == boundaries.size(), "delta: dims/boundaries size mismatch");
        CellComplex cx;
        cx.kind = ComplexKind::delta;
        const int n = static_cast<int>(dims.size());
        std::vector<int> order(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            order[static_cast<std::size_t>(i)] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return dims[static_cast<std::size_t>(a)] < dims[static_cast<std::size_t>(b)]; });
        std::vector<int> new_of_old(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k)
            new_of_old[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = k;
        cx.cells.resize(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            int old = order[static_cast<std::size_t>(k)];
            Cell& c = cx.cells[static_cast<std::size_t>(k)];
            c.dim = dims[static_cast<std::size_t>(old)];
            c.boundary = boundaries[static_cast<std::size_t>(old)];
            for (auto& [f, s] : c.boundary)
                f = new_of_old[static_cast<std::size_t>(f)];
        }
        cx.rebuild_dim_start();
        for (int k = 0; k < n; ++k)
            for (auto& [f, s] : cx.cells[static_cast<std::size_t>(k)].boundary)
                contract_check(cx.cells[static_cast<std::size_t>(f)].dim == cx.cells[static_cast<std::size_t>(k)].dim - 1,
                               "delta: boundary cell has wrong dimension");
        return cx;
    }

  private:
    std::unordered_map<std::vector<int>, int, IntVecHash> index_;

    void rebuild_dim_start()
    {
        int maxd = -1;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            contract_check(i == 0 || cells[i - 1].dim <= cells[i].dim,
                           "cells must be grouped by dimension");
            maxd = std::max(maxd, cells[i].dim);
        }
        dim_start.assign(static_cast<std::size_t>(maxd + 2), 0);
        for (auto& c : cells)
            ++dim_start[static_cast<std::size_t>(c.dim) + 1];
        for (std::size_t d = 1; d < dim_start.size(); ++d)
            dim_start[d] += dim_start[d - 1];
    }

    template <class KeyFn>
    void finish_index(KeyFn key)
    {
        contract_check(!cells.empty(), "complex must have at least one cell");
        rebuild_dim_start();
        index_.reserve(cells.size() * 2);
        for (int i = 0; i < size(); ++i)
            index_.emplace(key(cells[static_cast<std::size_t>(i)]), i);
    }
};

/** All proper faces (transitive) of the given cell, as sorted global indices. */
inline std::vector<int> proper_faces_closure(const CellComplex& cx, int cell)
{
    std::vector<int> out;
    std::vector<int> stack{cell};
    std::vector<bool> seen(static_cast<std::size_t>(cx.size()), false);
    while (!stack.empty()) {
        int c = stack.back();
        stack.pop_back();
        for (auto& [f, s] : cx.cells[static_cast<std::size_t>(c)].boundary)
            if (!seen[static_cast<std::size_t>(f)]) {
                seen[static_cast<std::size_t>(f)] = true;
                out.push_back(f);
                stack.push_back(f);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}   // namespace homcx

#endif   // HOMCX_CELL_COMPLEX_HPP
