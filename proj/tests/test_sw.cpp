#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <string>
#include <vector>

#include <homcx/graph.hpp>
#include <homcx/hom_complexes.hpp>
#include <homcx/homology.hpp>
#include <homcx/involution.hpp>
#include <homcx/quotient.hpp>
#include <homcx/sw.hpp>

using homcx::CellComplex;
using homcx::CellInvolution;
using homcx::FreeQuotientZ2;
using homcx::Graph;
using homcx::SwClassCalculator;
using homcx::SwPower;
namespace z2 = homcx::z2;
using z2::SparseVec;

namespace {

std::vector<std::vector<int>> closure(std::vector<std::vector<int>> faces)
{
    std::vector<std::vector<int>> all;
    for (auto& f : faces)
        for (unsigned mask = 1; mask < (1u << f.size()); ++mask) {
            std::vector<int> sub;
            for (std::size_t i = 0; i < f.size(); ++i)
                if (mask & (1u << i))
                    sub.push_back(f[i]);
            all.push_back(sub);
        }
    return all;
}

/** Z2 Betti numbers of the orbit chain complex, straight from its
 *  coboundary matrices (independent of the SW analysis path). */
std::vector<int> quotient_betti_z2(const FreeQuotientZ2& q)
{
    std::vector<int> ranks(static_cast<std::size_t>(q.top_dim()) + 2, 0);
    for (int d = 1; d <= q.top_dim(); ++d)
        ranks[static_cast<std::size_t>(d)] = z2::rank(q.coboundary_matrix(d));
    std::vector<int> betti;
    for (int d = 0; d <= q.top_dim(); ++d)
        betti.push_back(q.orbit_count(d) - ranks[static_cast<std::size_t>(d)] -
                        ranks[static_cast<std::size_t>(d) + 1]);
    return betti;
}

/** Owning bundle: the calculator keeps references into x and inv. */
struct HomSw {
    CellComplex x;
    CellInvolution inv;
    SwClassCalculator calc;

    HomSw(CellComplex xx, CellInvolution ii)
        : x(std::move(xx)), inv(std::move(ii)), calc(x, inv)
    {
    }
    HomSw(const HomSw&) = delete;
    HomSw& operator=(const HomSw&) = delete;
};

HomSw hom_calculator(const Graph& t, const Graph& g)
{
    CellComplex x = homcx::hom_complex(t, g);
    CellInvolution inv = homcx::induced_involution_hom(x, homcx::reflection_involution(t));
    return HomSw(std::move(x), std::move(inv));
}

}   // namespace

TEST_CASE("orbit complex bookkeeping and freeness contract")
{
    // hexagon Hom(K2,K3) with the coordinate swap: free, quotient is a
    // triangle (circle)
    Graph k2 = homcx::complete_graph(2);
    Graph k3 = homcx::complete_graph(3);
    CellComplex x = homcx::hom_complex(k2, k3);
    CellInvolution inv = homcx::induced_involution_hom(x, homcx::reflection_involution(k2));
    FreeQuotientZ2 q(x, inv);
    REQUIRE(q.orbit_count() == 6);
    REQUIRE(q.orbit_count(0) == 3);
    REQUIRE(q.orbit_count(1) == 3);
    for (int o = 0; o < q.orbit_count(); ++o) {
        REQUIRE(q.orbit_of(q.rep(o)) == o);
        REQUIRE(q.orbit_of(q.other(o)) == o);
        REQUIRE(q.rep(o) != q.other(o));
        if (q.dim_of(o) == 1)
            REQUIRE(q.boundary(o).size() == 2);   // quotient circle: no collapsing
    }
    REQUIRE(quotient_betti_z2(q) == std::vector<int>{1, 1});

    // a fixed cell must be rejected: the segment [0,1] with the vertex swap
    // fixes its 1-cell
    CellComplex seg = CellComplex::simplicial({{0}, {1}, {0, 1}});
    CellInvolution bad = homcx::induced_involution_simplicial(seg, {1, 0});
    REQUIRE_FALSE(bad.is_free());
    REQUIRE_THROWS_AS(FreeQuotientZ2(seg, bad), homcx::contract_error);
}

TEST_CASE("double cover of the circle: sheet cocycle detects the twist")
{
    // hexagon over triangle (twisted, antipodal): class is nonzero
    Graph k2 = homcx::complete_graph(2);
    Graph k3 = homcx::complete_graph(3);
    CellComplex hexagon = homcx::hom_complex(k2, k3);
    CellInvolution anti = homcx::induced_involution_hom(hexagon, homcx::reflection_involution(k2));
    SwClassCalculator twisted(hexagon, anti);
    auto p1 = twisted.analyze_power(1);
    REQUIRE(p1.nonzero);
    REQUIRE(twisted.verify(p1));
    REQUIRE(twisted.height() == 1);

    // two filled triangles swapped wholesale (trivial cover): class dies
    CellComplex two = CellComplex::simplicial(closure({{0, 1, 2}, {3, 4, 5}}));
    CellInvolution swap6 = homcx::induced_involution_simplicial(two, {3, 4, 5, 0, 1, 2});
    SwClassCalculator trivial_cover(two, swap6);
    auto q1 = trivial_cover.analyze_power(1);
    REQUIRE_FALSE(q1.nonzero);
    REQUIRE_FALSE(q1.by_dimension);
    REQUIRE(trivial_cover.verify(q1));
    REQUIRE(trivial_cover.height() == 0);
}

TEST_CASE("antipodal spheres: height equals the dimension")
{
    for (int d = 1; d <= 3; ++d) {
        CellComplex x = homcx::independence_complex(homcx::matching_graph(d + 1));
        std::vector<int> vp(static_cast<std::size_t>(2 * (d + 1)));
        for (std::size_t i = 0; i < vp.size(); ++i)
            vp[i] = static_cast<int>(i) ^ 1;
        CellInvolution inv = homcx::induced_involution_simplicial(x, vp);
        SwClassCalculator calc(x, inv);
        auto rep = calc.height_report();
        REQUIRE(rep.height == d);
        REQUIRE(static_cast<int>(rep.powers.size()) == d + 1);
        for (auto& p : rep.powers)
            REQUIRE(calc.verify(p));
        // the first vanishing power of the top class is dimensional
        REQUIRE(rep.powers.back().by_dimension);
        // projective-space Betti numbers from the same orbit complex
        FreeQuotientZ2 q(x, inv);
        REQUIRE(quotient_betti_z2(q) == std::vector<int>(static_cast<std::size_t>(d) + 1, 1));
    }
}

TEST_CASE("edge test complexes: height of Hom(K2,K_n) is n-2")
{
    for (int n = 3; n <= 6; ++n) {
        auto hs = hom_calculator(homcx::complete_graph(2), homcx::complete_graph(n));
        auto rep = hs.calc.height_report();
        REQUIRE(rep.height == n - 2);
        for (auto& p : rep.powers)
            REQUIRE(hs.calc.verify(p));
    }
}

TEST_CASE("vanishing powers on clique and odd-cycle test complexes")
{
    // triangle into K4: a 1-dimensional complex, so the square dies for
    // dimension reasons
    {
        auto hs = hom_calculator(homcx::complete_graph(3), homcx::complete_graph(4));
        auto p2 = hs.calc.analyze_power(2);
        REQUIRE_FALSE(p2.nonzero);
        REQUIRE(p2.by_dimension);
        REQUIRE(hs.calc.verify(p2));
        REQUIRE(hs.calc.height() == 1);
    }
    // triangle into K5: the cube dies
    {
        auto hs = hom_calculator(homcx::complete_graph(3), homcx::complete_graph(5));
        auto p3 = hs.calc.analyze_power(3);
        REQUIRE_FALSE(p3.nonzero);
        REQUIRE(hs.calc.verify(p3));
        REQUIRE(hs.calc.height() == 2);
    }
    // pentagon into K3: two swapped circles give a trivial cover
    {
        auto hs = hom_calculator(homcx::cycle_graph(5), homcx::complete_graph(3));
        REQUIRE(hs.calc.height() == 0);
        auto p1 = hs.calc.analyze_power(1);
        REQUIRE_FALSE(p1.nonzero);
        REQUIRE_FALSE(p1.by_dimension);
        REQUIRE(hs.calc.verify(p1));
    }
    // pentagon into K4: the square dies (height 1)
    {
        auto hs = hom_calculator(homcx::cycle_graph(5), homcx::complete_graph(4));
        auto rep = hs.calc.height_report();
        REQUIRE(rep.height == 1);
        for (auto& p : rep.powers)
            REQUIRE(hs.calc.verify(p));
    }
}

TEST_CASE("pentagon into K5: the cube of the class vanishes with witness")
{
    Graph c5 = homcx::cycle_graph(5);
    Graph k5 = homcx::complete_graph(5);
    CellComplex x = homcx::hom_complex(c5, k5);
    REQUIRE(x.size() == 45540);
    CellInvolution inv = homcx::induced_involution_hom(x, homcx::reflection_involution(c5));
    SwClassCalculator calc(x, inv);

    auto rep = calc.height_report();
    REQUIRE(rep.height == 2);
    REQUIRE(rep.powers.size() == 3);
    REQUIRE(rep.powers[0].nonzero);
    REQUIRE(rep.powers[1].nonzero);
    REQUIRE_FALSE(rep.powers[2].nonzero);
    REQUIRE_FALSE(rep.powers[2].by_dimension);   // genuine coboundary witness
    for (auto& p : rep.powers)
        REQUIRE(calc.verify(p));

    // flipping the section changes representatives only up to coboundary
    auto flipped = calc.height_report(-1, /*flip_section=*/true);
    REQUIRE(flipped.height == 2);
    for (int k = 1; k <= 2; ++k) {
        SparseVec w = calc.section_difference_witness(k);
        SparseVec diff = z2::sparse_xor(calc.power_cocycle(k, false), calc.power_cocycle(k, true));
        SparseVec image;
        auto m = calc.quotient().coboundary_matrix(k);
        for (int j : w)
            image = z2::sparse_xor(image, m.cols[static_cast<std::size_t>(j)]);
        REQUIRE(image == diff);
    }
}

TEST_CASE("orbit complex agrees with the geometric quotient machinery")
{
    // Hom(K2,K4) with the edge flip: quotient is a projective plane
    Graph k2 = homcx::complete_graph(2);
    Graph k4 = homcx::complete_graph(4);
    CellComplex x = homcx::hom_complex(k2, k4);
    CellInvolution inv = homcx::induced_involution_hom(x, homcx::reflection_involution(k2));

    FreeQuotientZ2 q(x, inv);
    std::vector<int> direct = quotient_betti_z2(q);

    homcx::QuotientZ2 geo = homcx::quotient_delta_complex(x, inv);
    homcx::HomologyCalculator h(geo.cx);
    std::vector<int> geometric;
    for (int d = 0; d <= geo.cx.top_dim(); ++d)
        geometric.push_back(h.betti_z2(d));

    REQUIRE(direct == std::vector<int>{1, 1, 1});
    REQUIRE(geometric == direct);

    // Euler counts of cover and quotient are consistent
    int chi_x = 0, chi_q = 0;
    for (int d = 0; d <= x.top_dim(); ++d)
        chi_x += (d % 2 ? -1 : 1) * x.count(d);
    for (int d = 0; d <= q.top_dim(); ++d)
        chi_q += (d % 2 ? -1 : 1) * q.orbit_count(d);
    REQUIRE(chi_x == 2 * chi_q);
}

TEST_CASE("winding components of Hom(C_m,K3)")
{
    auto c5 = homcx::winding_components(5);
    REQUIRE(c5.component_count == 2);
    REQUIRE(c5.windings == std::vector<int>{-1, 1});
    REQUIRE(c5.winding_values == std::vector<int>{-1, 1});

    auto c7 = homcx::winding_components(7);
    REQUIRE(c7.component_count == 2);
    REQUIRE(c7.winding_values == std::vector<int>{-1, 1});

    // r = 4: the winding VALUES are +-1, +-3 (four, matching the census
    // formula), but each +-3 coloring is a rigid 3-periodic one: three
    // isolated vertices per sign, so eight components in total
    auto c9 = homcx::winding_components(9);
    REQUIRE(c9.component_count == 8);
    REQUIRE(c9.winding_values == std::vector<int>{-3, -1, 1, 3});
    REQUIRE(c9.windings == std::vector<int>{-3, -3, -3, -1, 1, 3, 3, 3});

    // value census = 2(s+1) with s determined by r mod 3
    auto s_of = [](int r) { return (r % 3 == 1) ? (r - 1) / 3 : (r - 2) / 3; };
    REQUIRE(static_cast<int>(c5.winding_values.size()) == 2 * (s_of(2) + 1));
    REQUIRE(static_cast<int>(c7.winding_values.size()) == 2 * (s_of(3) + 1));
    REQUIRE(static_cast<int>(c9.winding_values.size()) == 2 * (s_of(4) + 1));

    // windings odd, symmetric about zero
    for (auto& w : {c5, c7, c9}) {
        for (int v : w.windings)
            REQUIRE(v % 2 != 0);
        std::vector<int> neg;
        for (int v : w.windings)
            neg.push_back(-v);
        std::sort(neg.begin(), neg.end());
        REQUIRE(neg == w.windings);
    }
}

TEST_CASE("hom_sw_height: emptiness and small values")
{
    Graph k2 = homcx::complete_graph(2);
    Graph c5 = homcx::cycle_graph(5);
    auto gamma_k2 = homcx::reflection_involution(k2);
    auto gamma_c5 = homcx::reflection_involution(c5);

    REQUIRE(homcx::hom_sw_height(c5, gamma_c5, homcx::complete_graph(2)) == -1);
    REQUIRE(homcx::hom_sw_height(k2, gamma_k2, homcx::complete_graph(1)) == -1);
    REQUIRE(homcx::hom_sw_height(k2, gamma_k2, homcx::complete_graph(2)) == 0);
    REQUIRE(homcx::hom_sw_height(k2, gamma_k2, homcx::complete_graph(3)) == 1);
    REQUIRE(homcx::hom_sw_height(k2, gamma_k2, c5) == 1);   // Hom(K2,C5) is a circle
}

TEST_CASE("chromatic lower bounds are sound and often sharp")
{
    homcx::SwHeightCache cache;
    auto check = [&](const Graph& g, int expected_bound) {
        auto rep = homcx::chromatic_lower_bound(g, 5, 2'000'000, &cache);
        int chi = homcx::exact_chromatic_number(g);
        REQUIRE(rep.bound <= chi);   // soundness
        REQUIRE(rep.bound == expected_bound);
        for (auto& t : rep.tests)
            REQUIRE(t.bound == t.best_m + 1);
        return rep;
    };

    check(homcx::complete_graph(1), 1);    // no edge: no applicable test
    check(homcx::path_graph(4), 2);        // bipartite: edge test only
    check(homcx::cycle_graph(6), 2);
    check(homcx::cycle_graph(5), 3);
    check(homcx::cycle_graph(7), 3);
    check(homcx::complete_graph(4), 4);    // sharp on cliques
    check(homcx::complete_graph(5), 5);
    auto pet = check(homcx::named_graph("petersen"), 3);
    // the edge test alone already certifies 3 for the Petersen graph
    bool edge_test_found = false;
    for (auto& t : pet.tests)
        if (t.test_name == "K2") {
            edge_test_found = true;
            REQUIRE(t.height_in_g == 1);
            REQUIRE(t.bound == 3);
        }
    REQUIRE(edge_test_found);

    // the cache now holds reusable edge-test heights
    REQUIRE(cache.count({"K2", 3}) == 1);
    REQUIRE(cache.at({"K2", 3}) == 1);
}

TEST_CASE("power vanishing is monotone and consistent across n")
{
    // For the edge test graph w^{n-2} != 0 but w^{n-1} = 0 on Hom(K2,K_n):
    // vanishing starts exactly at height + 1.
    for (int n = 3; n <= 5; ++n) {
        auto hs = hom_calculator(homcx::complete_graph(2), homcx::complete_graph(n));
        for (int k = 1; k <= n - 2; ++k)
            REQUIRE(hs.calc.analyze_power(k).nonzero);
        REQUIRE_FALSE(hs.calc.analyze_power(n - 1).nonzero);
    }
    // odd-n instances of the general vanishing for the pentagon test
    REQUIRE(hom_calculator(homcx::cycle_graph(5), homcx::complete_graph(3)).calc.height() < 1);
    REQUIRE(hom_calculator(homcx::cycle_graph(5), homcx::complete_graph(5)).calc.height() < 3);
}
