#include <catch2/catch_amalgamated.hpp>

#include <homcx/graph.hpp>
#include <homcx/hom_complexes.hpp>
#include <homcx/involution.hpp>

using homcx::CellComplex;
using homcx::Graph;
using homcx::Multihom;

namespace {

long long cross_term(const Multihom& eta)
{
    // sum of |eta(i)| * |eta(j)| over moved position pairs 1 <= i < j
    long long c = 0;
    for (std::size_t i = 1; i < eta.size(); ++i)
        for (std::size_t j = i + 1; j < eta.size(); ++j)
            c += static_cast<long long>(eta[i].size()) * static_cast<long long>(eta[j].size());
    return c;
}

}   // namespace

TEST_CASE("reflection of an odd cycle acts freely on the prodsimplicial model", "[involution]")
{
    for (auto [m, n] : std::vector<std::pair<int, int>>{{5, 3}, {5, 4}, {7, 4}}) {
        Graph cyc = homcx::cycle_graph(m);
        Graph kn = homcx::complete_graph(n);
        auto cx = homcx::hom_complex(cyc, kn);
        auto gamma = homcx::reflection_involution(cyc);
        auto inv = homcx::induced_involution_hom(cx, gamma);
        CHECK(homcx::commutes_with_boundary(cx, inv));
        CHECK(inv.is_free());
    }
}

TEST_CASE("reflection fixes simplices supported on fixed vertices", "[involution]")
{
    Graph c5 = homcx::cycle_graph(5);
    Graph k3 = homcx::complete_graph(3);
    auto plus = homcx::hom_plus_complex(c5, k3);
    auto gamma = homcx::reflection_involution(c5);
    auto inv = homcx::induced_involution_hom_plus(plus, gamma, k3.n);
    CHECK(homcx::commutes_with_boundary(plus, inv));
    CHECK_FALSE(inv.is_free());
    // every fixed cell must be supported on the fixed vertex 0 only...
    for (int i : inv.fixed_cells()) {
        Multihom eta = homcx::simplex_to_multihom(plus.cells[static_cast<std::size_t>(i)].simplex,
                                                  c5.n, k3.n);
        for (std::size_t v = 1; v < eta.size(); ++v)
            CHECK(eta[v] == eta[static_cast<std::size_t>(gamma.map(static_cast<int>(v)))]);
    }
    // ...and cells of full support are never fixed
    int full_fixed = 0;
    for (int i : inv.fixed_cells())
        if (homcx::support_size(homcx::simplex_to_multihom(
                plus.cells[static_cast<std::size_t>(i)].simplex, c5.n, k3.n)) == c5.n)
            ++full_fixed;
    CHECK(full_fixed == 0);
}

TEST_CASE("closed-form signs for the odd-cycle reflection", "[involution]")
{
    // the reflection fixes vertex 0 and reverses positions 1..m-1; on the
    // simplicial model the sign is the parity of the block reversal, on
    // the prodsimplicial model the Koszul correction adds the total size
    // and the arm length r
    for (auto [m, n] : std::vector<std::pair<int, int>>{{5, 3}, {5, 4}, {7, 3}}) {
        Graph cyc = homcx::cycle_graph(m);
        Graph kn = homcx::complete_graph(n);
        auto gamma = homcx::reflection_involution(cyc);
        const long long r = (m - 1) / 2;

        auto plus = homcx::hom_plus_complex(cyc, kn);
        auto pinv = homcx::induced_involution_hom_plus(plus, gamma, kn.n);
        for (int i = 0; i < plus.size(); ++i) {
            Multihom eta = homcx::simplex_to_multihom(plus.cells[static_cast<std::size_t>(i)].simplex,
                                                      cyc.n, kn.n);
            int expect = (cross_term(eta) % 2 == 0) ? 1 : -1;
            CHECK(pinv.sign[static_cast<std::size_t>(i)] == expect);
        }

        auto prod = homcx::hom_complex(cyc, kn);
        auto qinv = homcx::induced_involution_hom(prod, gamma);
        for (int i = 0; i < prod.size(); ++i) {
            const Multihom& eta = prod.cells[static_cast<std::size_t>(i)].multihom;
            long long total = 0;
            for (std::size_t v = 1; v < eta.size(); ++v)
                total += static_cast<long long>(eta[v].size());
            long long e = cross_term(eta) + total + r;
            CHECK(qinv.sign[static_cast<std::size_t>(i)] == ((e % 2 == 0) ? 1 : -1));
        }
    }
}

TEST_CASE("swapping the edge endpoints acts freely; a target swap does not", "[involution]")
{
    Graph k2 = homcx::complete_graph(2);
    Graph k3 = homcx::complete_graph(3);
    auto cx = homcx::hom_complex(k2, k3);

    auto source_swap = homcx::swap_involution(k2);
    auto sinv = homcx::induced_involution_hom(cx, source_swap);
    CHECK(homcx::commutes_with_boundary(cx, sinv));
    CHECK(sinv.is_free());

    auto target_swap = homcx::swap_involution(k3);
    homcx::Involution ident(k2, {0, 1});
    auto tinv = homcx::induced_involution_hom(cx, ident, &target_swap);
    CHECK(homcx::commutes_with_boundary(cx, tinv));
    CHECK_FALSE(tinv.is_free());
    CHECK(tinv.fixed_cells().size() == 2);   // ({0,1},{2}) and ({2},{0,1})
}

TEST_CASE("even cycle reflection induces a free action on the map complex", "[involution]")
{
    Graph c6 = homcx::cycle_graph(6);
    Graph k3 = homcx::complete_graph(3);
    auto cx = homcx::hom_complex(c6, k3);
    auto gamma = homcx::reflection_involution(c6);   // no fixed vertices
    auto inv = homcx::induced_involution_hom(cx, gamma);
    CHECK(homcx::commutes_with_boundary(cx, inv));
    CHECK(inv.is_free());
}

TEST_CASE("support-shift map anticommutes with the reflection as expected", "[involution]")
{
    // per full-support cell: sign+(sigma) * rho(image) equals
    // (-1)^r * rho(sigma) * sign_prod(eta)
    for (auto [m, n] : std::vector<std::pair<int, int>>{{5, 3}, {5, 4}}) {
        Graph cyc = homcx::cycle_graph(m);
        Graph kn = homcx::complete_graph(n);
        const int r = (m - 1) / 2;
        auto plus = homcx::hom_plus_complex(cyc, kn);
        auto prod = homcx::hom_complex(cyc, kn);
        auto gamma = homcx::reflection_involution(cyc);
        auto pinv = homcx::induced_involution_hom_plus(plus, gamma, kn.n);
        auto qinv = homcx::induced_involution_hom(prod, gamma);

        for (int i = 0; i < plus.size(); ++i) {
            Multihom eta = homcx::simplex_to_multihom(plus.cells[static_cast<std::size_t>(i)].simplex,
                                                      cyc.n, kn.n);
            if (homcx::support_size(eta) != cyc.n)
                continue;
            int img = pinv.perm[static_cast<std::size_t>(i)];
            Multihom eta_img = homcx::simplex_to_multihom(
                plus.cells[static_cast<std::size_t>(img)].simplex, cyc.n, kn.n);

            int prod_cell = prod.find_multihom(eta);
            REQUIRE(prod_cell >= 0);
            int lhs = pinv.sign[static_cast<std::size_t>(i)] * homcx::support_shift_sign(eta_img);
            int rhs = ((r % 2 == 0) ? 1 : -1) * homcx::support_shift_sign(eta) *
                      qinv.sign[static_cast<std::size_t>(prod_cell)];
            CHECK(lhs == rhs);
            // and the underlying cells correspond
            CHECK(prod.find_multihom(eta_img) == qinv.perm[static_cast<std::size_t>(prod_cell)]);
        }
    }
}
