#include <catch2/catch_amalgamated.hpp>

#include <homcx/graph.hpp>
#include <homcx/hom_complexes.hpp>
#include <homcx/homology.hpp>
#include <homcx/modp_reduction.hpp>

using homcx::CellComplex;
using homcx::Graph;
using homcx::ModpRanks;
using homcx::modp_boundary_ranks;

namespace {

std::vector<int> betti_vec(const ModpRanks& r)
{
    return r.betti;
}

long long euler_from_betti(const ModpRanks& r)
{
    long long chi = 0;
    for (std::size_t d = 0; d < r.betti.size(); ++d)
        chi += (d % 2 == 0 ? 1 : -1) * r.betti[d];
    return chi;
}

} // namespace

TEST_CASE("mod-p ranks of the projective-plane multihom complex", "[modp]")
{
    // Hom(C5, K4) is homotopy equivalent to real projective 3-space:
    // mod-2 Betti numbers (1,1,1,1); at any odd prime (1,0,0,1).
    CellComplex x = homcx::hom_complex(homcx::cycle_graph(5), homcx::complete_graph(4));
    ModpRanks r2 = modp_boundary_ranks(x, 2);
    ModpRanks r3 = modp_boundary_ranks(x, 3);
    ModpRanks r5 = modp_boundary_ranks(x, 5);

    CHECK(betti_vec(r2) == std::vector<int>{1, 1, 1, 1});
    CHECK(betti_vec(r3) == std::vector<int>{1, 0, 0, 1});
    CHECK(betti_vec(r5) == std::vector<int>{1, 0, 0, 1});

    // boundary ranks over F2 differ from odd primes exactly where the
    // 2-torsion sits
    CHECK(r2.boundary_rank[2] == r3.boundary_rank[2] - 1);
    CHECK(r2.boundary_rank[1] == r3.boundary_rank[1]);
    CHECK(r2.boundary_rank[3] == r3.boundary_rank[3]);

    // Euler characteristic is prime-independent
    CHECK(euler_from_betti(r2) == x.euler_characteristic());
    CHECK(euler_from_betti(r3) == x.euler_characteristic());
}

TEST_CASE("certified integer ranks match Smith normal form", "[modp]")
{
    // Wherever the mod-p Betti number vanishes, the sandwich
    //   cells = rank(d) + dim ker(d) >= rank(d) + rank(d+1)
    //        >= rank_p(d) + rank_p(d+1)
    // collapses and the mod-p rank must equal the integer rank.
    auto check_complex = [](const CellComplex& x, int p) {
        ModpRanks r = modp_boundary_ranks(x, p);
        int certified = 0;
        for (int d = 1; d <= x.top_dim(); ++d) {
            auto c = r.certified_integer_rank(d);
            if (!c.has_value())
                continue;
            CHECK(*c == homcx::integer_rank(x.boundary_matrix(d)));
            ++certified;
        }
        return certified;
    };

    CellComplex rp3 = homcx::hom_complex(homcx::cycle_graph(5), homcx::complete_graph(4));
    CHECK(check_complex(rp3, 3) >= 2);  // odd-prime betti vanish in degrees 1,2
    CHECK(check_complex(rp3, 2) == 0);  // every F2 betti is 1: nothing certified

    CellComplex s3 = homcx::hom_complex(homcx::complete_graph(2), homcx::complete_graph(5));
    CHECK(check_complex(s3, 2) >= 2);
    CHECK(check_complex(s3, 7) >= 2);
}

TEST_CASE("mod-p betti bound the rational betti from above", "[modp]")
{
    // universal-coefficient inequality b_d(Q) <= b_d(F_p), checked against
    // the exact integral computation
    const Graph c9 = homcx::cycle_graph(9);
    CellComplex x = homcx::independence_complex(c9);
    homcx::HomologyCalculator calc(x);
    for (int p : {2, 3, 97}) {
        ModpRanks r = modp_boundary_ranks(x, p);
        for (int d = 0; d <= x.top_dim(); ++d)
            CHECK(calc.cohomology(d).free_rank <= r.betti[d]);
    }
    // Ind(C9) is a wedge of two 2-spheres: torsion-free, so equality holds
    ModpRanks r2 = modp_boundary_ranks(x, 2);
    CHECK(betti_vec(r2) == std::vector<int>{1, 0, 2, 0});
}

TEST_CASE("mod-p ranks on a sphere multihom complex", "[modp]")
{
    // Hom(K2, K5) is a 3-sphere
    CellComplex x = homcx::hom_complex(homcx::complete_graph(2), homcx::complete_graph(5));
    for (int p : {2, 3, 5}) {
        ModpRanks r = modp_boundary_ranks(x, p);
        CHECK(betti_vec(r) == std::vector<int>{1, 0, 0, 1});
    }
}

TEST_CASE("mod-p reduction rejects invalid moduli", "[modp]")
{
    CellComplex x = homcx::hom_complex(homcx::complete_graph(2), homcx::complete_graph(3));
    CHECK_THROWS_AS(modp_boundary_ranks(x, 1), homcx::contract_error);
    CHECK_THROWS_AS(modp_boundary_ranks(x, 0), homcx::contract_error);
    CHECK_THROWS_AS(modp_boundary_ranks(x, 1 << 16), homcx::contract_error);
}
