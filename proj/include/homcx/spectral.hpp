#pragma once

/**
 * Spectral sequence of a filtered cochain complex, specialized to the
 * support filtration of the simplicial multihom complex.
 *
 * Filtration: every cell carries an integer level; faces never have a
 * larger level than their cofaces.  Dualizing, the functionals supported
 * on cells of level >= p form a decreasing chain of subcomplexes
 * F^0 >= F^1 >= ... >= F^{max+1} = 0 (the coboundary never decreases the
 * level).  For the support filtration the level of a multihom cell is
 * |supp| - 1, so the top quotient F^max/F^{max+1} is the cochain complex
 * of the full-support part, i.e. of the prodsimplicial multihom complex,
 * shifted down by max.
 *
 * Within each dimension the cells are reordered by decreasing level, so
 * every F^p is a coordinate prefix and all page computations reduce to
 * kernels of lower-left blocks of the coboundary matrices:
 *
 *     Z_r^{p,q} = { x in F^p C^n : dx in F^{p+r} C^{n+1} },  n = p+q,
 *     E_r^{p,q} = Z_r^{p,q} / ( Z_{r-1}^{p+1,q-1} + d Z_{r-1}^{p-r+1,q+r-2} ),
 *
 * with Z_0^{p,q} = F^p C^n (the r=0 block condition is vacuous by level
 * monotonicity).  Both denominator terms are subspaces of the numerator,
 * so dimensions come from explicit bases over the two-element field.
 * Differentials d_r are materialized as matrices between chosen
 * representative bases, giving ranks, the d_r.d_r = 0 invariant, and an
 * independent cross-check of E_{r+1} against ker/im of d_r.
 *
 * Integral support is limited to the first two pages: E_0 (level blocks)
 * and E_1 (their cohomology, via Smith normal form, reported as free rank
 * plus invariant factors).  Pages r >= 2 are mod-2 only; requesting them
 * over the integers raises std::invalid_argument.
 */

#include <map>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "cell_complex.hpp"
#include "graph.hpp"
#include "hom_complexes.hpp"
#include "snf.hpp"
#include "z2linalg.hpp"

namespace homcx
{

enum class Coefficients { integers, mod2 };

/** One module on a page: free rank / F2-dimension plus torsion factors. */
struct SpectralEntry
{
    int dim = 0;                    ///< free rank (Z mode) or F2-dimension
    std::vector<long long> torsion; ///< invariant factors > 1 (Z mode only)

    bool trivial() const { return dim == 0 && torsion.empty(); }
    bool operator==(const SpectralEntry& o) const { return dim == o.dim && torsion == o.torsion; }
};

/** One page: nonzero entries and ranks of the outgoing differentials. */
struct SpectralPage
{
    int r = 0;
    std::map<std::pair<int, int>, SpectralEntry> entries;
    std::map<std::pair<int, int>, int> differential_rank; ///< rank of d_r out of (p,q)
};

/** Degreewise comparison of E_infinity totals with the total cohomology. */
struct ConvergenceReport
{
    std::vector<int> einf_dims;  ///< sum over p of dim E_inf^{p,n-p}, index n
    std::vector<int> total_dims; ///< dim_{F2} H^n of the underlying complex
    bool match = false;
};

namespace detail
{

/**
 * Gaussian elimination over Z2 that remembers how each echelon row was
 * combined from the inserted generators, so membership tests also return
 * coordinates.  Pivoting is restricted to the first `ambient` columns;
 * the trailing columns carry the bookkeeping.
 */
class Z2CoordSolver
{
  public:
    Z2CoordSolver(int ambient, int capacity)
        : ambient_(ambient), work_(capacity, ambient + capacity), used_(0)
    {
    }

    /** Insert a generator row (width = ambient). Returns false if dependent. */
    bool insert(const z2::DenseZ2& rows, int row)
    {
        copy_row(rows, row, work_, used_);
        work_.set(used_, ambient_ + used_, true);
        reduce(used_);
        if (leading_empty(used_))
            return false; // dependent; bookkeeping row is discarded lazily
        pivots_.emplace_back(first_set(used_), used_);
        ++used_;
        return true;
    }

    int rank() const { return static_cast<int>(pivots_.size()); }

    /**
     * Express `rows[row]` as a combination of the inserted generators.
     * Returns the generator indices used, or nothing if not in the span.
     */
    std::optional<std::vector<int>> solve(const z2::DenseZ2& rows, int row)
    {
        if (used_ >= work_.rows)
            grow();
        copy_row(rows, row, work_, used_);
        reduce(used_);
        if (!leading_empty(used_))
            return std::nullopt;
        std::vector<int> combo;
        for (int g = 0; g < used_; ++g)
            if (work_.get(used_, ambient_ + g))
                combo.push_back(g);
        clear_row(used_);
        return combo;
    }

  private:
    int ambient_;
    z2::DenseZ2 work_;
    int used_;
    std::vector<std::pair<int, int>> pivots_; // (column, work row)

    static void copy_row(const z2::DenseZ2& src, int srow, z2::DenseZ2& dst, int drow)
    {
        for (int w = 0; w < src.words && w < dst.words; ++w)
            dst.bits[static_cast<std::size_t>(drow) * dst.words + w] =
                src.bits[static_cast<std::size_t>(srow) * src.words + w];
        for (int w = src.words; w < dst.words; ++w)
            dst.bits[static_cast<std::size_t>(drow) * dst.words + w] = 0;
        // mask stray bits beyond the source width inside the shared word
        if (src.cols % 64 != 0 && src.words <= dst.words) {
            std::uint64_t mask = (std::uint64_t{1} << (src.cols % 64)) - 1;
            dst.bits[static_cast<std::size_t>(drow) * dst.words + src.words - 1] &= mask;
        }
    }

    void clear_row(int r)
    {
        for (int w = 0; w < work_.words; ++w)
            work_.bits[static_cast<std::size_t>(r) * work_.words + w] = 0;
    }

    void reduce(int r)
    {
        for (auto& [col, prow] : pivots_)
            if (work_.get(r, col))
                work_.xor_row_into(r, prow);
    }

    bool leading_empty(int r) const { return first_set(r) < 0; }

    int first_set(int r) const
    {
        const auto* p = &work_.bits[static_cast<std::size_t>(r) * work_.words];
        const int lead_words = (ambient_ + 63) / 64;
        for (int w = 0; w < lead_words; ++w) {
            std::uint64_t v = p[w];
            if (w == lead_words - 1 && ambient_ % 64 != 0)
                v &= (std::uint64_t{1} << (ambient_ % 64)) - 1;
            if (v)
                return w * 64 + __builtin_ctzll(v);
        }
        return -1;
    }

    void grow()
    {
        z2::DenseZ2 bigger(work_.rows * 2 + 1, work_.cols);
        std::copy(work_.bits.begin(), work_.bits.end(), bigger.bits.begin());
        work_ = std::move(bigger);
    }
};

/** Widen basis rows (leading columns preserved) to a larger ambient width. */
inline z2::DenseZ2 widen(const z2::DenseZ2& m, int new_cols)
{
    z2::DenseZ2 out(m.rows, new_cols);
    for (int r = 0; r < m.rows; ++r)
        for (int w = 0; w < m.words; ++w)
            out.bits[static_cast<std::size_t>(r) * out.words + w] =
                m.bits[static_cast<std::size_t>(r) * m.words + w];
    return out;
}

/** Stack two row sets of equal width. */
inline z2::DenseZ2 stack(const z2::DenseZ2& a, const z2::DenseZ2& b)
{
    z2::DenseZ2 out(a.rows + b.rows, a.cols == 0 ? b.cols : a.cols);
    std::copy(a.bits.begin(), a.bits.end(), out.bits.begin());
    std::copy(b.bits.begin(), b.bits.end(), out.bits.begin() + a.bits.size());
    return out;
}

} // namespace detail

class FilteredCochainComplex
{
  public:
    /**
     * Build from a complex and a per-cell (global index) filtration level.
     * Levels must be >= 0 and must not decrease from face to coface.
     */
    FilteredCochainComplex(const CellComplex& x, const std::vector<int>& level_of_cell,
                           Coefficients coeff)
        : coeff_(coeff), top_(x.top_dim())
    {
        contract_check(static_cast<int>(level_of_cell.size()) == x.size(),
                       "filtration level list does not match the complex");
        max_level_ = 0;
        for (int lv : level_of_cell) {
            contract_check(lv >= 0, "filtration levels must be nonnegative");
            max_level_ = std::max(max_level_, lv);
        }

        // reorder each dimension by decreasing level (stable)
        level_.resize(static_cast<std::size_t>(top_ + 1));
        perm_.resize(static_cast<std::size_t>(top_ + 1));
        std::vector<std::vector<int>> newpos(static_cast<std::size_t>(top_ + 1));
        for (int q = 0; q <= top_; ++q) {
            const int n = x.count(q), off = x.offset(q);
            auto& perm = perm_[static_cast<std::size_t>(q)];
            perm.resize(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                perm[static_cast<std::size_t>(i)] = i;
            std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
                return level_of_cell[static_cast<std::size_t>(off + a)] >
                       level_of_cell[static_cast<std::size_t>(off + b)];
            });
            auto& lv = level_[static_cast<std::size_t>(q)];
            lv.resize(static_cast<std::size_t>(n));
            newpos[static_cast<std::size_t>(q)].assign(static_cast<std::size_t>(n), 0);
            for (int i = 0; i < n; ++i) {
                lv[static_cast<std::size_t>(i)] =
                    level_of_cell[static_cast<std::size_t>(off + perm[static_cast<std::size_t>(i)])];
                newpos[static_cast<std::size_t>(q)][static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = i;
            }
        }

        // prefix counts: prefix_[q][p] = #cells of dim q with level >= p
        prefix_.resize(static_cast<std::size_t>(top_ + 1));
        for (int q = 0; q <= top_; ++q) {
            auto& pr = prefix_[static_cast<std::size_t>(q)];
            pr.assign(static_cast<std::size_t>(max_level_ + 2), 0);
            for (int p = max_level_; p >= 0; --p) {
                int cnt = pr[static_cast<std::size_t>(p + 1)];
                for (int i = pr[static_cast<std::size_t>(p + 1)];
                     i < static_cast<int>(level_[static_cast<std::size_t>(q)].size()); ++i)
                    if (level_[static_cast<std::size_t>(q)][static_cast<std::size_t>(i)] == p)
                        ++cnt;
                    else if (level_[static_cast<std::size_t>(q)][static_cast<std::size_t>(i)] < p)
                        break;
                pr[static_cast<std::size_t>(p)] = cnt;
            }
            contract_check(pr[0] == x.count(q), "level reorder lost cells");
        }

        // reordered coboundary matrices: delta_[q] rows = (q+1)-cells
        delta_.resize(static_cast<std::size_t>(top_ + 1 > 0 ? top_ : 0));
        for (int q = 0; q < top_; ++q) {
            SparseIntMatrix m(count(q + 1), count(q));
            const int off_hi = x.offset(q + 1), off_lo = x.offset(q);
            for (int i = 0; i < count(q + 1); ++i) {
                const auto& cell =
                    x.cells[static_cast<std::size_t>(off_hi + perm_[static_cast<std::size_t>(q + 1)][static_cast<std::size_t>(i)])];
                for (const auto& [face, sign] : cell.boundary) {
                    const int j = newpos[static_cast<std::size_t>(q)][static_cast<std::size_t>(face - off_lo)];
                    contract_check(level_[static_cast<std::size_t>(q)][static_cast<std::size_t>(j)] <=
                                       level_[static_cast<std::size_t>(q + 1)][static_cast<std::size_t>(i)],
                                   "filtration level decreases from face to coface");
                    m.cols[static_cast<std::size_t>(j)].emplace_back(i, sign);
                }
            }
            for (auto& col : m.cols) {
                std::sort(col.begin(), col.end());
                // coalesce repeated incidences (delta complexes)
                std::size_t w = 0;
                for (std::size_t rd = 0; rd < col.size();) {
                    std::size_t e = rd;
                    long long sum = 0;
                    while (e < col.size() && col[e].first == col[rd].first)
                        sum += col[e++].second;
                    if (sum != 0)
                        col[w++] = {col[rd].first, sum};
                    rd = e;
                }
                col.resize(w);
            }
            delta_[static_cast<std::size_t>(q)] = std::move(m);
        }

        if (coeff_ == Coefficients::mod2) {
            dense_.resize(delta_.size());
            denseT_.resize(delta_.size());
            for (std::size_t q = 0; q < delta_.size(); ++q) {
                z2::DenseZ2 d(delta_[q].rows, delta_[q].ncols());
                for (int j = 0; j < delta_[q].ncols(); ++j)
                    for (const auto& [i, v] : delta_[q].cols[static_cast<std::size_t>(j)])
                        if (v % 2 != 0)
                            d.set(i, j, true);
                denseT_[q] = d.transpose();
                dense_[q] = std::move(d);
            }
        }
    }

    Coefficients coefficients() const { return coeff_; }
    int top_dim() const { return top_; }
    int max_level() const { return max_level_; }
    int levels() const { return max_level_ + 1; }

    int count(int q) const
    {
        if (q < 0 || q > top_)
            return 0;
        return static_cast<int>(level_[static_cast<std::size_t>(q)].size());
    }

    /** Cells of dimension q at level >= p (p below 0 / above max clamps). */
    int prefix_count(int p, int q) const
    {
        if (q < 0 || q > top_)
            return 0;
        if (p <= 0)
            return count(q);
        if (p > max_level_)
            return 0;
        return prefix_[static_cast<std::size_t>(q)][static_cast<std::size_t>(p)];
    }

    int level_count(int p, int q) const { return prefix_count(p, q) - prefix_count(p + 1, q); }

    /** Reordered coboundary C^q -> C^{q+1} (rows = (q+1)-cells). */
    const SparseIntMatrix& coboundary(int q) const
    {
        contract_check(q >= 0 && q < top_, "coboundary degree out of range");
        return delta_[static_cast<std::size_t>(q)];
    }

    /**
     * The E_0 differential block at (p, n): the coboundary restricted to
     * level-p cells in dimensions n and n+1 (rows local to the level-p
     * range of dimension n+1, columns local to that of dimension n).
     */
    SparseIntMatrix level_block(int p, int n) const
    {
        const int c0 = prefix_count(p + 1, n), c1 = prefix_count(p, n);
        const int r0 = prefix_count(p + 1, n + 1), r1 = prefix_count(p, n + 1);
        SparseIntMatrix out(r1 - r0, c1 - c0);
        if (n < 0 || n >= top_)
            return out;
        const auto& d = delta_[static_cast<std::size_t>(n)];
        for (int j = c0; j < c1; ++j)
            for (const auto& [i, v] : d.cols[static_cast<std::size_t>(j)])
                if (i >= r0 && i < r1)
                    out.cols[static_cast<std::size_t>(j - c0)].emplace_back(i - r0, v);
        return out;
    }

    /** E_0^{p,q}: the level-p slice of C^{p+q}; always free. */
    SpectralEntry e0(int p, int q) const { return SpectralEntry{level_count(p, p + q), {}}; }

    /**
     * E_1^{p,q} = H^{p+q}(F^p/F^{p+1}).  Over the integers: free rank and
     * invariant factors via Smith normal form of the level blocks.  Mod 2:
     * dimension via block ranks.
     */
    SpectralEntry e1(int p, int q) const
    {
        const int n = p + q;
        const int nc = level_count(p, n);
        if (nc == 0)
            return {};
        SparseIntMatrix out_block = level_block(p, n);
        SparseIntMatrix in_block = level_block(p, n - 1);
        SpectralEntry e;
        if (coeff_ == Coefficients::integers) {
            SmithSummary s_in = smith_normal_form(in_block);
            e.dim = nc - integer_rank(out_block) - s_in.rank;
            for (const auto& f : s_in.nontrivial_factors())
                e.torsion.push_back(static_cast<long long>(f));
        } else {
            e.dim = nc - z2::rank(to_dense(out_block)) - z2::rank(to_dense(in_block));
        }
        return e;
    }

    /**
     * Pages E_0 .. E_{up_to_r}.  Differential ranks: d_0 on every page-0
     * entry (both coefficient systems), d_r for r >= 1 in mod-2 mode.
     * Integral coefficients stop at E_1.
     */
    std::vector<SpectralPage> pages(int up_to_r) const
    {
        if (coeff_ == Coefficients::integers && up_to_r > 1)
            throw std::invalid_argument(
                "integral spectral pages beyond E_1 are not supported; use mod-2 coefficients");
        std::vector<SpectralPage> out;
        for (int r = 0; r <= up_to_r; ++r) {
            SpectralPage page;
            page.r = r;
            if (r == 0) {
                for (int p = 0; p <= max_level_; ++p)
                    for (int n = 0; n <= top_; ++n) {
                        SpectralEntry e = e0(p, n - p);
                        if (e.trivial())
                            continue;
                        page.entries[{p, n - p}] = e;
                        SparseIntMatrix blk = level_block(p, n);
                        int rk = (coeff_ == Coefficients::integers) ? integer_rank(blk)
                                                                    : z2::rank(to_dense(blk));
                        if (rk > 0)
                            page.differential_rank[{p, n - p}] = rk;
                    }
            } else if (r == 1 && coeff_ == Coefficients::integers) {
                for (int p = 0; p <= max_level_; ++p)
                    for (int n = 0; n <= top_; ++n) {
                        SpectralEntry e = e1(p, n - p);
                        if (!e.trivial())
                            page.entries[{p, n - p}] = e;
                    }
            } else {
                page = z2_page(r);
            }
            out.push_back(std::move(page));
        }
        return out;
    }

    /** E_infinity totals against the mod-2 cohomology of the whole complex. */
    ConvergenceReport convergence() const
    {
        if (coeff_ != Coefficients::mod2)
            throw std::invalid_argument("convergence report requires mod-2 coefficients");
        SpectralPage einf = z2_page(max_level_ + 1); // all differentials vanish from here on
        ConvergenceReport rep;
        rep.einf_dims.assign(static_cast<std::size_t>(top_ + 1), 0);
        for (const auto& [pq, e] : einf.entries) {
            const int n = pq.first + pq.second;
            if (n >= 0 && n <= top_)
                rep.einf_dims[static_cast<std::size_t>(n)] += e.dim;
        }
        rep.total_dims.assign(static_cast<std::size_t>(top_ + 1), 0);
        std::vector<int> rk(static_cast<std::size_t>(top_ + 2), 0);
        for (int q = 0; q < top_; ++q)
            rk[static_cast<std::size_t>(q + 1)] = z2::rank(dense_[static_cast<std::size_t>(q)]);
        for (int n = 0; n <= top_; ++n)
            rep.total_dims[static_cast<std::size_t>(n)] =
                count(n) - rk[static_cast<std::size_t>(n)] - rk[static_cast<std::size_t>(n + 1)];
        rep.match = rep.einf_dims == rep.total_dims;
        return rep;
    }

  private:
    Coefficients coeff_;
    int top_;
    int max_level_ = 0;
    std::vector<std::vector<int>> level_;  // per dim, new order, nonincreasing
    std::vector<std::vector<int>> perm_;   // new local index -> original local index
    std::vector<std::vector<int>> prefix_; // per dim: index p -> #cells level >= p
    std::vector<SparseIntMatrix> delta_;   // reordered coboundaries
    std::vector<z2::DenseZ2> dense_, denseT_; // mod-2 mirrors (mod2 mode only)

    static z2::DenseZ2 to_dense(const SparseIntMatrix& m)
    {
        z2::DenseZ2 out(m.rows, m.ncols());
        for (int j = 0; j < m.ncols(); ++j)
            for (const auto& [i, v] : m.cols[static_cast<std::size_t>(j)])
                if (v % 2 != 0)
                    out.set(i, j, true);
        return out;
    }

    /**
     * Basis of Z_r^{p,q} as rows in C^{p+q} coordinates: the kernel of the
     * coboundary block with columns in F^p and rows outside F^{p+r}.
     * Z_0 comes out as all of F^p automatically (the block is empty by
     * level monotonicity).  p may be negative (clamps to F^0).
     */
    const z2::DenseZ2& z_basis(int r, int p, int q, std::map<std::tuple<int, int, int>, z2::DenseZ2>& memo) const
    {
        const int n = p + q;
        const int colcut = prefix_count(p, n);
        const int rowcut = prefix_count(p + r, n + 1);
        auto key = std::make_tuple(n, colcut, rowcut);
        auto it = memo.find(key);
        if (it != memo.end())
            return it->second;

        z2::DenseZ2 basis;
        if (n < 0 || n > top_ || colcut == 0) {
            basis = z2::DenseZ2(0, std::max(count(n), 0));
        } else if (count(n + 1) == rowcut) {
            // no constraining rows: Z_r = F^p, the standard basis
            basis = z2::DenseZ2(colcut, count(n));
            for (int i = 0; i < colcut; ++i)
                basis.set(i, i, true);
        } else {
            z2::DenseZ2 block(count(n + 1) - rowcut, colcut);
            for (int j = 0; j < colcut; ++j)
                for (const auto& [i, v] : delta_[static_cast<std::size_t>(n)].cols[static_cast<std::size_t>(j)])
                    if (i >= rowcut && v % 2 != 0)
                        block.set(i - rowcut, j, true);
            basis = detail::widen(z2::kernel_basis(std::move(block)), count(n));
        }
        return memo.emplace(key, std::move(basis)).first->second;
    }

    /** Full mod-2 page r >= 1 with representative bases and differentials. */
    SpectralPage z2_page(int r) const
    {
        contract_check(coeff_ == Coefficients::mod2, "z2_page needs mod-2 mode");
        contract_check(r >= 1, "z2_page starts at r = 1");
        std::map<std::tuple<int, int, int>, z2::DenseZ2> memo;

        SpectralPage page;
        page.r = r;
        // representative bases per entry, kept for differential assembly
        std::map<std::pair<int, int>, z2::DenseZ2> reps;
        std::map<std::pair<int, int>, z2::DenseZ2> denom;

        for (int p = 0; p <= max_level_; ++p)
            for (int n = 0; n <= top_; ++n) {
                const int q = n - p;
                const z2::DenseZ2& z = z_basis(r, p, q, memo);
                if (z.rows == 0)
                    continue;
                // denominator: Z_{r-1}^{p+1,q-1}  +  d Z_{r-1}^{p-r+1,q+r-2}
                const z2::DenseZ2& zsub = z_basis(r - 1, p + 1, q - 1, memo);
                const z2::DenseZ2& zsrc = z_basis(r - 1, p - r + 1, q + r - 2, memo);
                z2::DenseZ2 dsrc(0, count(n));
                if (zsrc.rows > 0 && n >= 1)
                    dsrc = zsrc.multiply(denseT_[static_cast<std::size_t>(n - 1)]);
                z2::DenseZ2 dn = detail::stack(zsub, dsrc);

                detail::Z2CoordSolver solver(count(n), dn.rows + z.rows);
                for (int i = 0; i < dn.rows; ++i)
                    solver.insert(dn, i);
                // pick Z rows independent modulo the denominator as reps
                std::vector<int> chosen;
                for (int i = 0; i < z.rows; ++i)
                    if (solver.insert(z, i))
                        chosen.push_back(i);
                if (chosen.empty())
                    continue;
                z2::DenseZ2 rep(static_cast<int>(chosen.size()), count(n));
                for (std::size_t i = 0; i < chosen.size(); ++i)
                    for (int w = 0; w < z.words; ++w)
                        rep.bits[i * static_cast<std::size_t>(rep.words) + static_cast<std::size_t>(w)] =
                            z.bits[static_cast<std::size_t>(chosen[i]) * z.words + static_cast<std::size_t>(w)];
                page.entries[{p, q}] = SpectralEntry{static_cast<int>(chosen.size()), {}};
                reps[{p, q}] = std::move(rep);
                denom[{p, q}] = std::move(dn);
            }

        // differentials d_r: [x] -> [dx]
        for (const auto& [pq, rep] : reps) {
            const auto [p, q] = pq;
            const int n = p + q;
            if (n >= top_)
                continue; // dx = 0
            auto tgt = std::make_pair(p + r, q - r + 1);
            z2::DenseZ2 dx = rep.multiply(denseT_[static_cast<std::size_t>(n)]);
            auto rit = reps.find(tgt);
            if (rit == reps.end()) {
                // target entry is zero: dx must lie in the target denominator
                const z2::DenseZ2& ztgt = z_basis(r, tgt.first, tgt.second, memo);
                detail::Z2CoordSolver solver(count(n + 1), ztgt.rows + dx.rows);
                for (int i = 0; i < ztgt.rows; ++i)
                    solver.insert(ztgt, i);
                for (int i = 0; i < dx.rows; ++i)
                    contract_check(solver.solve(dx, i).has_value(),
                                   "differential image escapes the expected subquotient");
                continue;
            }
            const z2::DenseZ2& rtg = rit->second;
            const z2::DenseZ2& dtg = denom.at(tgt);
            detail::Z2CoordSolver solver(count(n + 1), dtg.rows + rtg.rows + 1);
            for (int i = 0; i < dtg.rows; ++i)
                solver.insert(dtg, i);
            // every rep row is independent modulo the denominator, so each
            // insert succeeds and occupies the next accepted slot
            std::vector<int> rep_slot(static_cast<std::size_t>(rtg.rows), -1);
            int inserted = solver.rank();
            for (int i = 0; i < rtg.rows; ++i) {
                bool ok = solver.insert(rtg, i);
                contract_check(ok, "representative basis unexpectedly dependent");
                rep_slot[static_cast<std::size_t>(i)] = inserted++;
            }
            z2::DenseZ2 mat(rep.rows, rtg.rows);
            for (int i = 0; i < dx.rows; ++i) {
                auto combo = solver.solve(dx, i);
                contract_check(combo.has_value(), "differential image escapes the target cycle space");
                for (int g : *combo) {
                    // coefficients on denominator generators are quotiented away;
                    // map solver slots back to representative indices
                    for (int j = 0; j < rtg.rows; ++j)
                        if (rep_slot[static_cast<std::size_t>(j)] == g)
                            mat.set(i, j, true);
                }
            }
            int rk = z2::rank(mat);
            if (rk > 0)
                page.differential_rank[pq] = rk;
            dmat_[{r, p, q}] = std::move(mat); // kept for cross-page verification
        }
        return page;
    }

  public:
    /**
     * Verify d_r composed with d_r vanishes and that E_{r+1} equals the
     * cohomology of (E_r, d_r), for every r in [1, up_to_r).  Mod-2 only.
     * Returns the number of (r, p, q) triples checked.
     */
    int verify_pages(int up_to_r) const
    {
        if (coeff_ != Coefficients::mod2)
            throw std::invalid_argument("page verification requires mod-2 coefficients");
        dmat_.clear();
        std::vector<SpectralPage> pg;
        for (int r = 1; r <= up_to_r; ++r)
            pg.push_back(z2_page(r));
        int checked = 0;
        for (int r = 1; r < up_to_r; ++r) {
            const SpectralPage& cur = pg[static_cast<std::size_t>(r - 1)];
            const SpectralPage& nxt = pg[static_cast<std::size_t>(r)];
            // d_r . d_r = 0 as matrices on representatives
            for (const auto& [key, m1] : dmat_) {
                if (std::get<0>(key) != r)
                    continue;
                const int p = std::get<1>(key), q = std::get<2>(key);
                auto k2 = std::make_tuple(r, p + r, q - r + 1);
                auto it2 = dmat_.find(k2);
                if (it2 == dmat_.end())
                    continue;
                z2::DenseZ2 prod = m1.multiply(it2->second);
                for (int i = 0; i < prod.rows; ++i)
                    contract_check(prod.row_empty(i), "d_r composed with d_r is nonzero");
                ++checked;
            }
            // E_{r+1} = ker d_r / im d_r, entrywise
            for (int p = 0; p <= max_level_; ++p)
                for (int n = 0; n <= top_; ++n) {
                    const int q = n - p;
                    auto entry_dim = [&](const SpectralPage& pgx, int pp, int qq) {
                        auto it = pgx.entries.find({pp, qq});
                        return it == pgx.entries.end() ? 0 : it->second.dim;
                    };
                    auto drank = [&](const SpectralPage& pgx, int pp, int qq) {
                        auto it = pgx.differential_rank.find({pp, qq});
                        return it == pgx.differential_rank.end() ? 0 : it->second;
                    };
                    const int expect = entry_dim(cur, p, q) - drank(cur, p, q) -
                                       drank(cur, p - r, q + r - 1);
                    contract_check(entry_dim(nxt, p, q) == expect,
                                   "next page does not match ker/im of the differential");
                    ++checked;
                }
        }
        dmat_.clear();
        return checked;
    }

  private:
    mutable std::map<std::tuple<int, int, int>, z2::DenseZ2> dmat_;
};

/**
 * The support filtration of the simplicial multihom complex of (g, h):
 * a cell's level is |supp| - 1, where supp is the set of g-vertices its
 * partial multihom assigns.  F^{|V(g)|} = 0, and the top quotient is the
 * cochain complex of the full-support (prodsimplicial) part.
 */
inline FilteredCochainComplex support_filtration(const Graph& g, const Graph& h,
                                                 Coefficients coeff, int max_dim = -1)
{
    CellComplex x = hom_plus_complex(g, h, max_dim);
    std::vector<int> level(static_cast<std::size_t>(x.size()), 0);
    for (int i = 0; i < x.size(); ++i) {
        const auto& verts = x.cells[static_cast<std::size_t>(i)].simplex;
        int support = 0, prev = -1;
        for (int id : verts) {
            const int v = id / h.n;
            if (v != prev) {
                ++support;
                prev = v;
            }
        }
        level[static_cast<std::size_t>(i)] = support - 1;
    }
    return FilteredCochainComplex(x, level, coeff);
}

/** Pages E_0 .. E_{up_to_r} of a filtered cochain complex. */
inline std::vector<SpectralPage> spectral_pages(const FilteredCochainComplex& f, int up_to_r)
{
    return f.pages(up_to_r);
}

} // namespace homcx
