/**
 * First Stiefel-Whitney class of a free cellular involution, its cup
 * powers, and the derived chromatic lower bound.
 *
 * Setup.  Let X be a finite regular cell complex with an involution that
 * is free on cells (for simplicial and prodsimplicial complexes this is
 * equivalent to freeness of the action on the space, because a setwise-
 * invariant cell would fix its barycenter).  The quotient chain complex
 * C_*(Q; Z2) has one generator per cell orbit, and the mod-2 cochain
 * sequence
 *
 *      0 -> C^*(Q) --pullback--> C^*(X) --transfer--> C^*(Q) -> 0
 *
 * is exact: the pullback of an orbit cochain is its orbit-constant lift,
 * and the transfer evaluates a cochain on both lifts of an orbit and
 * adds.  The connecting homomorphism of this sequence is cup product
 * with the first Stiefel-Whitney class w of the double cover X -> Q
 * (the Gysin sequence of an S^0-bundle).  Iterating the connecting map
 * on the unit 0-cochain therefore produces explicit cocycle
 * representatives of w^k on the orbit complex, with no subdivision and
 * no simplicial cup formula:
 *
 *      u_0 = 1,   u_{k+1}([e]) = (delta b_k)(e)   where b_k is the
 *      "one-sheet" lift of u_k (equal to u_k on the chosen section,
 *      zero on the other sheet).
 *
 * The k = 1 step recovers the classical sheet cocycle: u_1 of an edge
 * orbit records whether traversing the edge switches sheets of the
 * chosen section.
 *
 * Deciding w^k = 0 and certifying the answer is a single linear solve
 * over Z2 against the quotient coboundary delta: C^{k-1}(Q) -> C^k(Q).
 * If delta x = u_k is solvable, x is a coboundary witness; if it is
 * not, the separating functional y returned by the solver satisfies
 * y . delta = 0 (y is a k-cycle of Q) and <u_k, y> = 1, an exact
 * nonvanishing certificate.  Both certificates are re-checkable by
 * direct evaluation, independent of the elimination that found them.
 */

#ifndef HOMCX_SW_HPP
#define HOMCX_SW_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <homcx/cell_complex.hpp>
#include <homcx/errors.hpp>
#include <homcx/graph.hpp>
#include <homcx/hom_complexes.hpp>
#include <homcx/involution.hpp>
#include <homcx/z2linalg.hpp>

namespace homcx {

/**
 * Orbit chain complex of a cellwise-free involution over Z2.
 *
 * Orbits are numbered in order of their smaller cell index, so they are
 * grouped by dimension; `local` indices count orbits within one
 * dimension and are what the cochain vectors below refer to.
 *
 * Holds the complex and involution by reference: both must outlive this
 * object (and any SwClassCalculator built on it).
 */
class FreeQuotientZ2 {
  public:
    FreeQuotientZ2(const CellComplex& x, const CellInvolution& inv) : x_(&x), inv_(&inv)
    {
        detail::check_involution_shape(x, inv);
        contract_check(inv.is_free(), "FreeQuotientZ2: involution must be free on cells");
        const int n = x.size();
        orbit_of_.assign(static_cast<std::size_t>(n), -1);
        for (int c = 0; c < n; ++c) {
            if (orbit_of_[static_cast<std::size_t>(c)] >= 0)
                continue;
            int g = inv.perm[static_cast<std::size_t>(c)];
            orbit_of_[static_cast<std::size_t>(c)] = static_cast<int>(rep_.size());
            orbit_of_[static_cast<std::size_t>(g)] = static_cast<int>(rep_.size());
            rep_.push_back(c);   // c < g: first encounter is the smaller id
        }
        const int maxd = x.top_dim();
        orbit_start_.assign(static_cast<std::size_t>(maxd) + 2, 0);
        for (int o = 0; o < orbit_count(); ++o)
            ++orbit_start_[static_cast<std::size_t>(dim_of(o)) + 1];
        for (std::size_t d = 1; d < orbit_start_.size(); ++d)
            orbit_start_[d] += orbit_start_[d - 1];
    }

    const CellComplex& base() const { return *x_; }
    const CellInvolution& involution() const { return *inv_; }

    int orbit_count() const { return static_cast<int>(rep_.size()); }
    int orbit_count(int d) const
    {
        if (d < 0 || d > top_dim())
            return 0;
        return orbit_start_[static_cast<std::size_t>(d) + 1] - orbit_start_[static_cast<std::size_t>(d)];
    }
    int top_dim() const { return static_cast<int>(orbit_start_.size()) - 2; }

    int orbit_of(int cell) const { return orbit_of_[static_cast<std::size_t>(cell)]; }
    /** Canonical lift (smaller cell id) of an orbit. */
    int rep(int orbit) const { return rep_[static_cast<std::size_t>(orbit)]; }
    /** The other lift of an orbit. */
    int other(int orbit) const
    {
        return inv_->perm[static_cast<std::size_t>(rep_[static_cast<std::size_t>(orbit)])];
    }
    int dim_of(int orbit) const
    {
        return x_->cells[static_cast<std::size_t>(rep(orbit))].dim;
    }
    /** Local (within-dimension) index of an orbit. */
    int local(int orbit) const
    {
        return orbit - orbit_start_[static_cast<std::size_t>(dim_of(orbit))];
    }
    /** Global orbit id from dimension and local index. */
    int global(int d, int loc) const { return orbit_start_[static_cast<std::size_t>(d)] + loc; }

    /**
     * Mod-2 boundary of an orbit as sorted local indices of (d-1)-orbits.
     * Faces of one cell lying in the same orbit cancel in pairs.
     */
    z2::SparseVec boundary(int orbit) const
    {
        std::vector<int> ids;
        for (auto& [f, s] : x_->cells[static_cast<std::size_t>(rep(orbit))].boundary)
            ids.push_back(local(orbit_of(f)));
        std::sort(ids.begin(), ids.end());
        z2::SparseVec out;
        for (std::size_t i = 0; i < ids.size();) {
            std::size_t j = i;
            while (j < ids.size() && ids[j] == ids[i])
                ++j;
            if ((j - i) % 2 == 1)
                out.push_back(ids[i]);
            i = j;
        }
        return out;
    }

    /**
     * Matrix of the quotient coboundary delta: C^{d-1}(Q) -> C^d(Q):
     * rows are d-orbits, columns are (d-1)-orbits (local indices).
     */
    z2::SparseMatrix coboundary_matrix(int d) const
    {
        z2::SparseMatrix m(orbit_count(d), orbit_count(d - 1));
        for (int r = 0; r < orbit_count(d); ++r)
            for (int j : boundary(global(d, r)))
                m.cols[static_cast<std::size_t>(j)].push_back(r);
        return m;   // row indices appended in increasing r: sorted
    }

  private:
    const CellComplex* x_;
    const CellInvolution* inv_;
    std::vector<int> orbit_of_;
    std::vector<int> rep_;
    std::vector<int> orbit_start_;
};

/**
 * One cup power of the first Stiefel-Whitney class, decided and
 * certified.  `cocycle` lists the k-orbits (local indices) where the
 * representative is 1.  When `nonzero`, `certificate` is a Z2 k-cycle
 * of the quotient pairing to 1 with the cocycle; when zero and not
 * `by_dimension`, it is a (k-1)-cochain whose coboundary equals the
 * cocycle.  `by_dimension` marks the trivial vanishing k > dim.
 */
struct SwPower {
    int k = 0;
    bool nonzero = false;
    bool by_dimension = false;
    z2::SparseVec cocycle;
    z2::SparseVec certificate;
};

/** Height and the certificates that establish it. */
struct SwHeightReport {
    int height = 0;                 //!< largest k with w^k != 0 (0: class trivial)
    std::vector<SwPower> powers;    //!< k = 1 .. height+1, each certified
};

/**
 * Cocycle representatives of powers of the first Stiefel-Whitney class
 * of a free involution, with exact (non)vanishing certificates.
 */
class SwClassCalculator {
  public:
    SwClassCalculator(const CellComplex& x, const CellInvolution& inv) : q_(x, inv) {}
    explicit SwClassCalculator(const FreeQuotientZ2& q) : q_(q) {}

    const FreeQuotientZ2& quotient() const { return q_; }

    /**
     * Representative of w^k on k-orbits via k connecting-map steps.
     * `flip_section` selects the opposite sheet everywhere; the class
     * is independent of the choice (see section_difference witness).
     */
    z2::SparseVec power_cocycle(int k, bool flip_section = false) const
    {
        contract_check(k >= 0, "power_cocycle: k must be nonnegative");
        const CellComplex& x = q_.base();
        if (k > q_.top_dim())
            return {};
        // dense orbit cochain of the current power
        std::vector<char> u(static_cast<std::size_t>(q_.orbit_count(0)), 1);
        for (int step = 0; step < k; ++step) {
            // one-sheet lift b of u: supported on the chosen section
            const int d = step;
            std::vector<char> next(static_cast<std::size_t>(q_.orbit_count(d + 1)), 0);
            for (int r = 0; r < q_.orbit_count(d + 1); ++r) {
                int e = q_.rep(q_.global(d + 1, r));
                int eg = q_.other(q_.global(d + 1, r));
                int val = 0, val_g = 0;
                for (auto& [f, s] : x.cells[static_cast<std::size_t>(e)].boundary) {
                    int o = q_.orbit_of(f);
                    int lift = flip_section ? q_.other(o) : q_.rep(o);
                    if (f == lift)
                        val ^= u[static_cast<std::size_t>(q_.local(o))];
                }
                for (auto& [f, s] : x.cells[static_cast<std::size_t>(eg)].boundary) {
                    int o = q_.orbit_of(f);
                    int lift = flip_section ? q_.other(o) : q_.rep(o);
                    if (f == lift)
                        val_g ^= u[static_cast<std::size_t>(q_.local(o))];
                }
                // exactness of the cover sequence: the two lifts agree
                contract_check(val == val_g, "connecting step must be sheet-independent");
                next[static_cast<std::size_t>(r)] = static_cast<char>(val);
            }
            u = std::move(next);
        }
        z2::SparseVec out;
        for (int r = 0; r < static_cast<int>(u.size()); ++r)
            if (u[static_cast<std::size_t>(r)])
                out.push_back(r);
        return out;
    }

    /** Decide w^k = 0 and attach the matching certificate. */
    SwPower analyze_power(int k, bool flip_section = false) const
    {
        contract_check(k >= 1, "analyze_power: k must be positive");
        SwPower out;
        out.k = k;
        if (k > q_.top_dim()) {
            out.by_dimension = true;   // C^k(Q) = 0: trivially zero
            return out;
        }
        out.cocycle = power_cocycle(k, flip_section);
        contract_check(is_cocycle(k, out.cocycle), "w^k representative must be closed");
        auto res = z2::solve(q_.coboundary_matrix(k), out.cocycle);
        if (res.solvable) {
            out.certificate = std::move(res.x);
        } else {
            out.nonzero = true;
            out.certificate = std::move(res.certificate_y);
        }
        return out;
    }

    /**
     * Largest k with w^k != 0, together with the certificates for every
     * power up to and including the first vanishing one.  Powers vanish
     * monotonically (w^{k+1} = w^k . w), so the scan stops at the first
     * zero; `max_k` caps the search (default: top dimension).
     */
    SwHeightReport height_report(int max_k = -1, bool flip_section = false) const
    {
        if (max_k < 0)
            max_k = q_.top_dim();
        SwHeightReport rep;
        for (int k = 1; k <= max_k + 1; ++k) {
            rep.powers.push_back(analyze_power(k, flip_section));
            if (!rep.powers.back().nonzero)
                break;
        }
        rep.height = static_cast<int>(rep.powers.size());
        if (!rep.powers.empty() && !rep.powers.back().nonzero)
            --rep.height;
        return rep;
    }

    int height(int max_k = -1) const { return height_report(max_k).height; }

    /**
     * Re-check a certified power by direct evaluation (no elimination):
     * the cocycle must match the deterministic recursion, and the
     * certificate must pair/cobound as claimed.
     */
    bool verify(const SwPower& p, bool flip_section = false) const
    {
        if (p.k < 1)
            return false;
        if (p.by_dimension)
            return !p.nonzero && p.k > q_.top_dim() && p.cocycle.empty() && p.certificate.empty();
        if (p.cocycle != power_cocycle(p.k, flip_section))
            return false;
        if (!is_cocycle(p.k, p.cocycle))
            return false;
        if (p.nonzero) {
            // certificate is a k-cycle of Q pairing to 1 with the cocycle
            z2::SparseVec bnd;
            for (int r : p.certificate)
                bnd = z2::sparse_xor(bnd, q_.boundary(q_.global(p.k, r)));
            return bnd.empty() && z2::sparse_dot(p.cocycle, p.certificate) == 1;
        }
        // certificate is x with delta x = cocycle
        z2::SparseVec image;
        auto m = q_.coboundary_matrix(p.k);
        for (int j : p.certificate)
            image = z2::sparse_xor(image, m.cols[static_cast<std::size_t>(j)]);
        return image == p.cocycle;
    }

    /**
     * The two section choices give cohomologous representatives: returns
     * a cochain whose coboundary is their difference.
     */
    z2::SparseVec section_difference_witness(int k) const
    {
        contract_check(k >= 1 && k <= q_.top_dim(), "section_difference_witness: bad power");
        z2::SparseVec diff =
            z2::sparse_xor(power_cocycle(k, false), power_cocycle(k, true));
        auto res = z2::solve(q_.coboundary_matrix(k), diff);
        contract_check(res.solvable, "section choices must give cohomologous powers");
        return res.x;
    }

  private:
    FreeQuotientZ2 q_;

    bool is_cocycle(int k, const z2::SparseVec& u) const
    {
        if (k + 1 > q_.top_dim())
            return true;
        for (int r = 0; r < q_.orbit_count(k + 1); ++r) {
            int parity = 0;
            auto bnd = q_.boundary(q_.global(k + 1, r));
            parity = z2::sparse_dot(bnd, u);
            if (parity)
                return false;
        }
        return true;
    }
};

/* ------------------------------------------------------------------ *
 *  Heights of graph-map complexes and the chromatic lower bound       *
 * ------------------------------------------------------------------ */

/**
 * Height of the Stiefel-Whitney class on Hom(T, G) for a test graph T
 * with an edge-flipping involution gamma; an empty complex yields -1.
 */
inline int hom_sw_height(const Graph& t, const Involution& gamma, const Graph& g)
{
    contract_check(flips_edge(t, gamma), "test involution must flip an edge");
    if (!graph_hom_exists(t, g))
        return -1;
    CellComplex x = hom_complex(t, g);
    CellInvolution inv = induced_involution_hom(x, gamma);
    return SwClassCalculator(x, inv).height();
}

/** Memo for heights of Hom(T, K_m), keyed by (test name, m). */
using SwHeightCache = std::map<std::pair<std::string, int>, int>;

/** One test graph's contribution to the chromatic bound. */
struct ChromaticTestOutcome {
    std::string test_name;   //!< which test graph
    int height_in_g = -1;    //!< k = height of w on Hom(T, G)
    int best_m = 0;          //!< largest m with w^k (Hom(T, K_m)) = 0
    int bound = 0;           //!< best_m + 1
};

/** Certified topological lower bound for the chromatic number. */
struct ChromaticBoundReport {
    int bound = 1;
    std::vector<ChromaticTestOutcome> tests;
};

/**
 * Topological lower bound on the chromatic number of g.
 *
 * For each test graph T (an edge, then odd cycles up to
 * `max_odd_cycle`) with its edge-flipping involution: if k is the
 * height of the Stiefel-Whitney class on Hom(T, G) and
 * w^k (Hom(T, K_m)) = 0, then chi(G) >= m + 1.  Vanishing transfers
 * down equivariant maps, so it is monotone in m and the largest valid
 * m is found by an upward scan.  Empty Hom(T, K_m) counts as vacuous
 * vanishing (this recovers the trivial bounds: chi >= 2 for a graph
 * with an edge, chi >= 3 for a non-bipartite graph).
 *
 * `size_cap` skips a test whose Hom(T, G) would exceed that many
 * cells; the bound stays valid, only possibly weaker.  An optional
 * cache shares the Hom(T, K_m) heights across calls (they do not
 * depend on g).
 */
inline ChromaticBoundReport chromatic_lower_bound(const Graph& g, int max_odd_cycle = 5,
                                                  long long size_cap = 2'000'000,
                                                  SwHeightCache* cache = nullptr)
{
    contract_check(g.n >= 1, "chromatic_lower_bound: empty graph");
    for (int v = 0; v < g.n; ++v)
        contract_check(!g.has_edge(v, v), "chromatic_lower_bound: graph has a loop");

    ChromaticBoundReport report;

    std::vector<std::pair<std::string, Graph>> tests;
    tests.emplace_back("K2", complete_graph(2));
    for (int m = 3; m <= max_odd_cycle; m += 2)
        tests.emplace_back("C" + std::to_string(m), cycle_graph(m));

    for (auto& [name, t] : tests) {
        Involution gamma = reflection_involution(t);
        if (!graph_hom_exists(t, g))
            continue;   // no maps from T: test not applicable
        CellComplex x;
        try {
            x = hom_complex(t, g, -1, size_cap);
        } catch (const resource_error&) {
            continue;   // oversized instance: skip, bound stays valid
        }
        CellInvolution inv = induced_involution_hom(x, gamma);
        ChromaticTestOutcome outcome;
        outcome.test_name = name;
        outcome.height_in_g = SwClassCalculator(x, inv).height();

        // scan m upward while w^k (Hom(T, K_m)) = 0; monotone in m
        int m = 1;
        int best = 0;
        while (m < g.n) {
            int h;
            auto key = std::make_pair(name, m);
            if (cache && cache->count(key)) {
                h = (*cache)[key];
            } else {
                h = hom_sw_height(t, gamma, complete_graph(m));
                if (cache)
                    (*cache)[key] = h;
            }
            bool vanishes = (h < 0) || (h < outcome.height_in_g);
            if (!vanishes)
                break;
            best = m;
            ++m;
        }
        if (best == 0)
            continue;
        outcome.best_m = best;
        outcome.bound = best + 1;
        report.tests.push_back(outcome);
        report.bound = std::max(report.bound, outcome.bound);
    }
    return report;
}

/* ------------------------------------------------------------------ *
 *  Connected components of Hom(odd cycle, K3) by winding number       *
 * ------------------------------------------------------------------ */

/** Component census of Hom(C_m, K3), m odd. */
struct WindingComponents {
    int component_count = 0;
    std::vector<int> windings;         //!< one per component, sorted
    std::vector<int> winding_values;   //!< distinct values, sorted
};

/**
 * Connected components of Hom(C_m, K3) for odd m, labeled by winding
 * number.  A vertex is a proper 3-coloring of the m-cycle; each step
 * advances +1 or -1 around K3 viewed as a triangle, and the winding is
 * (sum of steps)/3.  Two colorings are joined by an edge of the
 * complex exactly when they differ in one position, so components are
 * computed by union-find over single-position changes; the winding is
 * checked to be constant on every component.
 *
 * The winding is odd on every component and the attained value set is
 * symmetric about zero, but distinct components can share a winding:
 * for m = 9 the two 3-periodic colorings and their rotations are
 * rigid, giving six isolated vertices (three of winding +3, three of
 * -3) besides the two large components of winding +-1, so there are 8
 * components with 4 distinct winding values.
 */
inline WindingComponents winding_components(int m)
{
    contract_check(m >= 3 && m % 2 == 1, "winding_components: m must be odd and >= 3");
    Graph cm = cycle_graph(m);
    Graph k3 = complete_graph(3);
    std::vector<VertexMap> homs = enumerate_homomorphisms(cm, k3);
    const int n = static_cast<int>(homs.size());

    auto key = [&](const VertexMap& f) {
        long long v = 0;
        for (int i = 0; i < m; ++i)
            v = v * 3 + f(i);
        return v;
    };
    std::unordered_map<long long, int> index;
    for (int i = 0; i < n; ++i)
        index[key(homs[static_cast<std::size_t>(i)])] = i;

    std::vector<int> parent(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        parent[static_cast<std::size_t>(i)] = i;
    std::function<int(int)> find = [&](int a) {
        while (parent[static_cast<std::size_t>(a)] != a)
            a = parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
        return a;
    };

    for (int i = 0; i < n; ++i) {
        const VertexMap& f = homs[static_cast<std::size_t>(i)];
        for (int pos = 0; pos < m; ++pos) {
            for (int c = 0; c < 3; ++c) {
                if (c == f(pos))
                    continue;
                // changing position pos to c stays a coloring iff c avoids
                // both neighbors' colors
                if (c == f((pos + 1) % m) || c == f((pos + m - 1) % m))
                    continue;
                std::vector<int> img;
                for (int v = 0; v < m; ++v)
                    img.push_back(v == pos ? c : f(v));
                VertexMap alt(m, 3, img);
                auto it = index.find(key(alt));
                contract_check(it != index.end(), "winding_components: neighbor coloring missing");
                int a = find(i), b = find(it->second);
                if (a != b)
                    parent[static_cast<std::size_t>(a)] = b;
            }
        }
    }

    auto winding = [&](const VertexMap& f) {
        int total = 0;
        for (int i = 0; i < m; ++i) {
            int d = (f((i + 1) % m) - f(i) + 3) % 3;   // 1 or 2 (= -1)
            total += (d == 1) ? 1 : -1;
        }
        contract_check(total % 3 == 0, "winding must be a multiple of the triangle length");
        return total / 3;
    };

    std::unordered_map<int, int> comp_winding;   // root -> winding
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        int w = winding(homs[static_cast<std::size_t>(i)]);
        auto it = comp_winding.find(r);
        if (it == comp_winding.end())
            comp_winding[r] = w;
        else
            contract_check(it->second == w, "winding must be constant on a component");
    }

    WindingComponents out;
    out.component_count = static_cast<int>(comp_winding.size());
    for (auto& [r, w] : comp_winding)
        out.windings.push_back(w);
    std::sort(out.windings.begin(), out.windings.end());
    out.winding_values = out.windings;
    out.winding_values.erase(std::unique(out.winding_values.begin(), out.winding_values.end()),
                             out.winding_values.end());
    return out;
}

}   // namespace homcx

#endif   // HOMCX_SW_HPP
