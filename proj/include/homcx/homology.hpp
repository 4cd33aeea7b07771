/**
 * Exact (co)homology of finite cell complexes over the integers and over
 * the two-element field, plus explicit presentations sturdy enough to
 * evaluate induced maps on torsion classes.
 *
 * All computations reduce boundary matrices with the Smith machinery:
 *   H_k  free rank = c_k - rank del_k - rank del_{k+1},
 *   H_k  torsion   = invariant factors (> 1) of del_{k+1},
 *   H^k  free rank = same, torsion = invariant factors (> 1) of del_k
 * (the coboundary delta^{k-1} is the transpose of del_k).
 *
 * The presentation of H^k keeps an echelonized basis of the cocycle
 * lattice together with a diagonalized relation matrix, so arbitrary
 * cocycles can be classified (coordinates modulo generator orders) and
 * pullbacks along chain maps can be evaluated exactly.
 */

#ifndef HOMCX_HOMOLOGY_HPP
#define HOMCX_HOMOLOGY_HPP

#include <climits>
#include <map>
#include <string>
#include <vector>

#include <homcx/cell_complex.hpp>
#include <homcx/snf.hpp>
#include <homcx/z2linalg.hpp>

namespace homcx {

/** Finitely generated abelian group: free rank and torsion coefficients. */
struct GroupSummary {
    int free_rank = 0;
    std::vector<BigInt> torsion;   //!< invariant factors > 1, divisibility order

    bool trivial() const { return free_rank == 0 && torsion.empty(); }

    bool operator==(const GroupSummary& o) const
    {
        return free_rank == o.free_rank && torsion == o.torsion;
    }

    /** "0", "Z", "Z^2 + Z/2", ... (additive notation). */
    std::string to_string() const
    {
        if (trivial())
            return "0";
        std::string s;
        auto append = [&](const std::string& part) {
            if (!s.empty())
                s += " + ";
            s += part;
        };
        if (free_rank == 1)
            append("Z");
        else if (free_rank > 1)
            append("Z^" + std::to_string(free_rank));
        for (auto& d : torsion)
            append("Z/" + d.str());
        return s;
    }
};

/**
 * Computes (co)homology groups of one complex, caching the Smith data of
 * each boundary matrix so neighbouring degrees share work.  `reduced`
 * augments degree zero (adds the rank-one map onto the coefficients), so
 * degree-0 groups become reduced groups.
 */
class HomologyCalculator {
  public:
    explicit HomologyCalculator(const CellComplex& cx, bool reduced = false) : cx_(cx), reduced_(reduced) {}

    GroupSummary homology(int k)
    {
        GroupSummary out;
        if (k < 0 || k > cx_.top_dim())
            return out;
        out.free_rank = cx_.count(k) - boundary_smith(k).rank - boundary_smith(k + 1).rank;
        out.torsion = boundary_smith(k + 1).nontrivial_factors();
        return out;
    }

    GroupSummary cohomology(int k)
    {
        GroupSummary out;
        if (k < 0 || k > cx_.top_dim())
            return out;
        out.free_rank = cx_.count(k) - boundary_smith(k).rank - boundary_smith(k + 1).rank;
        out.torsion = boundary_smith(k).nontrivial_factors();
        return out;
    }

    /** dim of H_k with mod-2 coefficients (equals the cohomology dim). */
    int betti_z2(int k)
    {
        if (k < 0 || k > cx_.top_dim())
            return 0;
        return cx_.count(k) - z2_rank(k) - z2_rank(k + 1);
    }

    const CellComplex& complex() const { return cx_; }

  private:
    const CellComplex& cx_;
    bool reduced_;
    std::map<int, SmithSummary> smith_;
    std::map<int, int> z2_rank_;

    SparseIntMatrix matrix(int d) const
    {
        if (d == 0 && reduced_) {
            // augmentation: one row of ones over the 0-cells
            SparseIntMatrix aug(1, cx_.count(0));
            for (int j = 0; j < cx_.count(0); ++j)
                aug.cols[static_cast<std::size_t>(j)].emplace_back(0, 1);
            return aug;
        }
        if (d <= 0 || d > cx_.top_dim())
            return SparseIntMatrix(0, cx_.count(d));
        return cx_.boundary_matrix(d);
    }

    const SmithSummary& boundary_smith(int d)
    {
        auto it = smith_.find(d);
        if (it == smith_.end())
            it = smith_.emplace(d, smith_normal_form(matrix(d))).first;
        return it->second;
    }

    int z2_rank(int d)
    {
        auto it = z2_rank_.find(d);
        if (it != z2_rank_.end())
            return it->second;
        SparseIntMatrix b = matrix(d);
        z2::SparseMatrix m(b.rows, b.ncols());
        for (int j = 0; j < b.ncols(); ++j)
            for (auto& [i, v] : b.cols[static_cast<std::size_t>(j)])
                if (v % 2 != 0)
                    m.cols[static_cast<std::size_t>(j)].push_back(i);
        int r = z2::rank(std::move(m));
        z2_rank_[d] = r;
        return r;
    }
};

constexpr int connectivity_unbounded = INT_MAX;

/**
 * Homological connectivity: the largest k such that the reduced integral
 * homology vanishes in every degree <= k.  Returns -1 when the complex
 * is disconnected, and connectivity_unbounded when all reduced groups up
 * to the top dimension vanish.
 */
inline int homological_connectivity(const CellComplex& cx)
{
    HomologyCalculator calc(cx, /*reduced=*/true);
    for (int k = 0; k <= cx.top_dim(); ++k)
        if (!calc.homology(k).trivial())
            return k - 1;
    return connectivity_unbounded;
}

/* ------------------------------------------------------------------ *
 *  Cohomology presentations and induced maps                           *
 * ------------------------------------------------------------------ */

/**
 * Explicit presentation of H^k(C; Z).
 *
 * Generators g_1..g_s with orders o_i (0 = infinite); the class of a
 * cocycle is an integer vector with entry i taken modulo o_i.  Generators
 * of order one are retained (their coordinate is always zero) so that
 * indexing matches the internal transform.
 */
class CohomologyPresentation {
  public:
    int degree = 0;

    CohomologyPresentation(const CellComplex& cx, int k) : degree(k)
    {
        // cocycle lattice: kernel of delta^k = transpose of del_{k+1}
        SparseIntMatrix delta_k = cx.boundary_matrix(k + 1).transpose();
        ColumnEchelon cocycles = integer_column_echelon(delta_k);
        // re-echelonize the kernel basis for coordinate solving
        ColumnEchelon basis = integer_column_echelon_big(cx.count(k), cocycles.kernel);
        contract_check(basis.kernel.empty(), "cocycle lattice basis must be independent");
        basis_ = std::move(basis.echelon);
        pivot_rows_ = std::move(basis.pivot_rows);
        const int s = static_cast<int>(basis_.size());

        // relations: columns of delta^{k-1} in basis coordinates
        SparseIntMatrix delta_prev = cx.boundary_matrix(k).transpose();
        std::vector<SparseIntVec<BigInt>> rel_cols;
        for (int j = 0; j < delta_prev.ncols(); ++j) {
            SparseIntVec<BigInt> w;
            for (auto& [i, v] : delta_prev.cols[static_cast<std::size_t>(j)])
                w.emplace_back(i, BigInt(v));
            if (w.empty())
                continue;
            auto coords = lattice_coordinates(basis_, pivot_rows_, w);
            contract_check(coords.has_value(), "coboundary not inside the cocycle lattice");
            SparseIntVec<BigInt> col;
            for (int i = 0; i < s; ++i)
                if ((*coords)[static_cast<std::size_t>(i)] != 0)
                    col.emplace_back(i, (*coords)[static_cast<std::size_t>(i)]);
            if (!col.empty())
                rel_cols.push_back(std::move(col));
        }
        // compress the relation lattice before the dense step
        ColumnEchelon rel = integer_column_echelon_big(s, rel_cols);
        std::vector<std::vector<BigInt>> dense(static_cast<std::size_t>(s),
                                               std::vector<BigInt>(rel.echelon.size(), 0));
        for (std::size_t j = 0; j < rel.echelon.size(); ++j)
            for (auto& [i, v] : rel.echelon[j])
                dense[static_cast<std::size_t>(i)][j] = v;
        DenseSmithResult snf = smith_with_left_transform(std::move(dense));
        u_ = std::move(snf.u);
        uinv_ = std::move(snf.uinv);
        orders_.assign(static_cast<std::size_t>(s), BigInt(0));
        for (std::size_t i = 0; i < snf.diag.size(); ++i)
            orders_[i] = snf.diag[i];
        if (s == 0) {
            u_.clear();
            uinv_.clear();
        }
    }

    int generator_count() const { return static_cast<int>(orders_.size()); }

    /** Order of generator i (0 = infinite, 1 = trivial generator). */
    const BigInt& order(int i) const { return orders_[static_cast<std::size_t>(i)]; }

    GroupSummary summary() const
    {
        GroupSummary g;
        for (auto& o : orders_) {
            if (o == 0)
                ++g.free_rank;
            else if (o > 1)
                g.torsion.push_back(o);
        }
        std::sort(g.torsion.begin(), g.torsion.end());
        return g;
    }

    /**
     * Coordinates of a cocycle's class: entry i lives in Z/order(i)
     * (reduced to [0, order_i)) or in Z when the order is zero.
     * The input must be a cocycle in the lattice; anything else raises a
     * contract error.
     */
    std::vector<BigInt> classify(const SparseIntVec<BigInt>& cocycle) const
    {
        auto coords = lattice_coordinates(basis_, pivot_rows_, cocycle);
        contract_check(coords.has_value(), "classify: vector is not a cocycle of this degree");
        const int s = generator_count();
        std::vector<BigInt> y(static_cast<std::size_t>(s), 0);
        for (int i = 0; i < s; ++i) {
            BigInt acc = 0;
            for (int j = 0; j < s; ++j)
                acc += u_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                       (*coords)[static_cast<std::size_t>(j)];
            if (orders_[static_cast<std::size_t>(i)] > 0) {
                acc %= orders_[static_cast<std::size_t>(i)];
                if (acc < 0)
                    acc += orders_[static_cast<std::size_t>(i)];
            }
            y[static_cast<std::size_t>(i)] = acc;
        }
        return y;
    }

    bool is_zero_class(const SparseIntVec<BigInt>& cocycle) const
    {
        for (auto& c : classify(cocycle))
            if (c != 0)
                return false;
        return true;
    }

    /** A representative cocycle of generator i, in cochain coordinates. */
    SparseIntVec<BigInt> generator_cocycle(int i) const
    {
        SparseIntVec<BigInt> acc;
        for (int j = 0; j < generator_count(); ++j) {
            const BigInt& c = uinv_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            if (c != 0)
                acc = detail::vec_axpy(acc, c, basis_[static_cast<std::size_t>(j)]);
        }
        return acc;
    }

  private:
    std::vector<SparseIntVec<BigInt>> basis_;   //!< echelonized cocycle lattice basis
    std::vector<int> pivot_rows_;
    std::vector<std::vector<BigInt>> u_, uinv_;
    std::vector<BigInt> orders_;
};

/**
 * Pullback of a cochain along a degree-wise chain map.  `f` maps chains
 * of X to chains of Y (columns = X-cells, rows = Y-cells, one degree);
 * given a cochain z on Y, returns z o f on X.
 */
inline SparseIntVec<BigInt> pullback_cochain(const SparseIntMatrix& f, const SparseIntVec<BigInt>& z)
{
    SparseIntVec<BigInt> out;
    for (int j = 0; j < f.ncols(); ++j) {
        BigInt acc = 0;
        std::size_t a = 0, b = 0;
        const auto& col = f.cols[static_cast<std::size_t>(j)];
        while (a < col.size() && b < z.size()) {
            if (col[a].first == z[b].first) {
                acc += BigInt(col[a].second) * z[b].second;
                ++a;
                ++b;
            } else if (col[a].first < z[b].first) {
                ++a;
            } else {
                ++b;
            }
        }
        if (acc != 0)
            out.emplace_back(j, acc);
    }
    return out;
}

/** Scale a sparse cochain by an integer. */
inline SparseIntVec<BigInt> scale_cochain(const SparseIntVec<BigInt>& z, const BigInt& c)
{
    SparseIntVec<BigInt> out;
    if (c == 0)
        return out;
    out.reserve(z.size());
    for (auto& [i, v] : z)
        out.emplace_back(i, c * v);
    return out;
}

/**
 * Matrix of the induced map on cohomology: column j holds the class
 * coordinates (in `target`) of the pullback of generator j of `source`.
 * The chain map f runs between the underlying spaces in the direction
 * opposite to the cohomology map, as usual: f: C(X) -> C(Y) induces
 * H^k(Y) -> H^k(X), so `source` presents H^k(Y) and `target` H^k(X).
 */
inline std::vector<std::vector<BigInt>> induced_on_cohomology(const CohomologyPresentation& source,
                                                              const CohomologyPresentation& target,
                                                              const SparseIntMatrix& f)
{
    std::vector<std::vector<BigInt>> cols;
    for (int j = 0; j < source.generator_count(); ++j)
        cols.push_back(target.classify(pullback_cochain(f, source.generator_cocycle(j))));
    return cols;
}

}   // namespace homcx

#endif   // HOMCX_HOMOLOGY_HPP
