#include <catch2/catch_amalgamated.hpp>

#include <homcx/errors.hpp>
#include <homcx/homology.hpp>
#include <homcx/sphere_quotient.hpp>

using namespace homcx;

namespace
{

std::vector<int> betti_z2_of(const CellComplex& cx)
{
    HomologyCalculator calc(cx);
    std::vector<int> b(static_cast<std::size_t>(cx.top_dim() + 1));
    for (int k = 0; k <= cx.top_dim(); ++k)
        b[static_cast<std::size_t>(k)] = calc.betti_z2(k);
    return b;
}

} // namespace

TEST_CASE("odd count, no swapped pairs: real projective space", "[sphere]")
{
    for (int d : {2, 3, 5}) {
        SphereQuotient q = symbolic_sphere_quotient({0, d, true});
        REQUIRE(q.cells.size() == static_cast<std::size_t>(d + 1));
        REQUIRE(q.betti == std::vector<int>(static_cast<std::size_t>(d + 1), 1));
        REQUIRE(q.census_matches);
    }
}

TEST_CASE("odd count: census equals computed cohomology", "[sphere]")
{
    SECTION("one swapped pair of 2-spheres")
    {
        SphereQuotient q = symbolic_sphere_quotient({1, 2, true});
        // cells (i,x,y): 3 projective coordinates x 2 tuples x 2 tuples
        REQUIRE(q.cells.size() == 12);
        REQUIRE(q.betti == std::vector<int>{1, 1, 2, 0, 2, 1, 1});
        REQUIRE(q.census_by_degree == q.betti);
        REQUIRE(q.census_matches);

        // Euler characteristic must be half that of the covering product
        // of three 2-spheres (a free involution)
        long long chi = 0;
        for (std::size_t k = 0; k < q.betti.size(); ++k)
            chi += (k % 2 == 0 ? 1 : -1) * q.betti[k];
        REQUIRE(chi == 8 / 2);
    }
    SECTION("two swapped pairs of 3-spheres")
    {
        SphereQuotient q = symbolic_sphere_quotient({2, 3, true});
        REQUIRE(q.census_matches);
        REQUIRE(q.betti[0] == 1);
        long long cells_chi = 0, betti_chi = 0;
        for (const auto& c : q.cells)
            cells_chi += (c.dim % 2 == 0) ? 1 : -1;
        for (std::size_t k = 0; k < q.betti.size(); ++k)
            betti_chi += (k % 2 == 0 ? 1 : -1) * q.betti[k];
        REQUIRE(cells_chi == betti_chi);
    }
}

TEST_CASE("even count: symmetric squares", "[sphere]")
{
    SECTION("symmetric square of the 2-sphere")
    {
        SphereQuotient q = symbolic_sphere_quotient({1, 2, false});
        // {o,*}; (o,o,0); (*,*,k) for k = 0,1,2
        REQUIRE(q.cells.size() == 5);
        REQUIRE(q.betti == std::vector<int>{1, 0, 1, 0, 1});
        REQUIRE(q.census_matches);
    }
    SECTION("symmetric square of the 3-sphere")
    {
        SphereQuotient q = symbolic_sphere_quotient({1, 3, false});
        REQUIRE(q.betti == std::vector<int>{1, 0, 0, 1, 0, 1, 1});
        REQUIRE(q.census_matches);
    }
    SECTION("symmetric square of a product of two 2-spheres")
    {
        SphereQuotient q = symbolic_sphere_quotient({2, 2, false});
        REQUIRE(q.census_matches);
        REQUIRE(q.betti[0] == 1);
        REQUIRE(q.betti.size() == 9);  // top cell (**,**,k=4) in degree 8
    }
    SECTION("zero spheres: a point")
    {
        SphereQuotient q = symbolic_sphere_quotient({0, 2, false});
        REQUIRE(q.betti == std::vector<int>{1});
        REQUIRE(q.census_matches);
    }
}

TEST_CASE("cellular product building blocks", "[sphere]")
{
    CellComplex s2 = detail::cross_polytope_sphere(2);
    REQUIRE(s2.size() == 26);
    REQUIRE(betti_z2_of(s2) == std::vector<int>{1, 0, 1});

    SECTION("product of two cross-polytope 2-spheres")
    {
        std::vector<int> index;
        CellComplex prod = detail::product_complex({&s2, &s2}, index);
        REQUIRE(prod.size() == 26 * 26);
        REQUIRE(betti_z2_of(prod) == std::vector<int>{1, 0, 2, 0, 1});
        // integral check exercises the Leibniz signs: free, no torsion
        HomologyCalculator calc(prod);
        REQUIRE(calc.homology(2) == GroupSummary{2, {}});
        REQUIRE(calc.homology(3) == GroupSummary{0, {}});
        REQUIRE(calc.homology(4) == GroupSummary{1, {}});
    }
    SECTION("product with minimal spheres")
    {
        CellComplex mini = detail::minimal_sphere(2);
        std::vector<int> index;
        CellComplex prod = detail::product_complex({&s2, &mini, &mini}, index);
        REQUIRE(prod.size() == 26 * 4);
        REQUIRE(betti_z2_of(prod) == std::vector<int>{1, 0, 3, 0, 3, 0, 1});
    }
}

TEST_CASE("geometric quotients agree with the symbolic computation", "[sphere]")
{
    SECTION("projective plane and 3-space")
    {
        for (int d : {2, 3}) {
            auto chk = geometric_sphere_quotient_crosscheck(0, d, true);
            INFO("d = " << d);
            REQUIRE(chk.match);
            REQUIRE(chk.quotient_cells * 2 == chk.covering_cells);
        }
    }
    SECTION("three 2-spheres, antipode times swap")
    {
        auto chk = geometric_sphere_quotient_crosscheck(1, 2, true);
        REQUIRE(chk.covering_cells == 104);
        REQUIRE(chk.quotient_cells == 52);
        REQUIRE(chk.symbolic_betti == std::vector<int>{1, 1, 2, 0, 2, 1, 1});
        REQUIRE(chk.match);
    }
    SECTION("zero spheres, even count")
    {
        auto chk = geometric_sphere_quotient_crosscheck(0, 2, false);
        REQUIRE(chk.match);
    }
    SECTION("symmetric square of the 2-sphere, via barycentric regularization")
    {
        auto chk = geometric_sphere_quotient_crosscheck(1, 2, false);
        REQUIRE(chk.covering_cells == 676);
        REQUIRE(chk.symbolic_betti == std::vector<int>{1, 0, 1, 0, 1});
        REQUIRE(chk.match);
    }
    SECTION("budget guard")
    {
        REQUIRE_THROWS_AS(geometric_sphere_quotient_crosscheck(3, 2, false, 1000), resource_error);
        REQUIRE_THROWS_AS(geometric_sphere_quotient_crosscheck(2, 2, true, 100), resource_error);
    }
}

TEST_CASE("symbolic quotient validates its inputs", "[sphere]")
{
    REQUIRE_THROWS_AS(symbolic_sphere_quotient({-1, 2, true}), contract_error);
    REQUIRE_THROWS_AS(symbolic_sphere_quotient({1, 1, true}), contract_error);
}
