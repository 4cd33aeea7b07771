#include <catch2/catch_amalgamated.hpp>

#include <homcx/cell_complex.hpp>
#include <homcx/graph.hpp>
#include <homcx/hom_complexes.hpp>

#include <map>
#include <set>

using homcx::CellComplex;
using homcx::Graph;
using homcx::Multihom;

namespace {

// all faces of one simplex, as sorted vertex lists
std::vector<std::vector<int>> simplex_faces(const std::vector<int>& verts, bool include_top)
{
    std::vector<std::vector<int>> out;
    int n = static_cast<int>(verts.size());
    for (int mask = 1; mask < (1 << n); ++mask) {
        if (!include_top && mask == (1 << n) - 1)
            continue;
        std::vector<int> f;
        for (int i = 0; i < n; ++i)
            if ((mask >> i) & 1)
                f.push_back(verts[static_cast<std::size_t>(i)]);
        out.push_back(std::move(f));
    }
    return out;
}

}   // namespace

TEST_CASE("hollow triangle and simplex boundaries", "[complex]")
{
    auto tri = CellComplex::simplicial(simplex_faces({0, 1, 2}, false));
    CHECK(tri.f_vector() == std::vector<int>{3, 3});
    CHECK(tri.euler_characteristic() == 0);
    CHECK(tri.boundaries_square_to_zero());

    auto sphere2 = CellComplex::simplicial(simplex_faces({0, 1, 2, 3}, false));
    CHECK(sphere2.f_vector() == std::vector<int>{4, 6, 4});
    CHECK(sphere2.euler_characteristic() == 2);
    CHECK(sphere2.boundaries_square_to_zero());

    auto solid = CellComplex::simplicial(simplex_faces({0, 1, 2, 3}, true));
    CHECK(solid.euler_characteristic() == 1);

    // an open (non-face-closed) list is rejected
    CHECK_THROWS_AS(CellComplex::simplicial({{0, 1}}), homcx::contract_error);
}

TEST_CASE("delta complex builder", "[complex]")
{
    // torus: one vertex, three edges, two triangles glued a+b-c each
    std::vector<int> dims{0, 1, 1, 1, 2, 2};
    std::vector<std::vector<std::pair<int, int>>> bnd{
        {},
        {{0, 1}, {0, -1}},
        {{0, 1}, {0, -1}},
        {{0, 1}, {0, -1}},
        {{1, 1}, {2, 1}, {3, -1}},
        {{1, 1}, {2, 1}, {3, -1}},
    };
    auto torus = CellComplex::delta(dims, bnd);
    CHECK(torus.f_vector() == std::vector<int>{1, 3, 2});
    CHECK(torus.euler_characteristic() == 0);
    CHECK(torus.boundaries_square_to_zero());
    // degree-1 boundary columns collapse to zero after merging
    auto b1 = torus.boundary_matrix(1);
    for (auto& col : b1.cols)
        CHECK(col.empty());
}

TEST_CASE("prodsimplicial incidence signs square to zero", "[complex]")
{
    // all sub-multihoms of a 3-factor product of simplices
    std::vector<Multihom> cells;
    std::vector<std::vector<std::vector<int>>> parts{
        {{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}},
        {{0}, {1}, {0, 1}},
        {{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}},
    };
    for (auto& a : parts[0])
        for (auto& b : parts[1])
            for (auto& c : parts[2])
                cells.push_back({a, b, c});
    auto cx = CellComplex::prodsimplicial(cells);
    CHECK(cx.top_dim() == 5);
    CHECK(cx.count(5) == 1);
    CHECK(cx.boundaries_square_to_zero());
    CHECK(cx.euler_characteristic() == 1);   // product of simplices is contractible
}

TEST_CASE("independence complexes of cycles", "[complex]")
{
    auto ind5 = homcx::independence_complex(homcx::cycle_graph(5));
    CHECK(ind5.f_vector() == std::vector<int>{5, 5});
    CHECK(ind5.euler_characteristic() == 0);

    auto ind6 = homcx::independence_complex(homcx::cycle_graph(6));
    CHECK(ind6.f_vector() == std::vector<int>{6, 9, 2});

    auto ind7 = homcx::independence_complex(homcx::cycle_graph(7));
    CHECK(ind7.f_vector() == std::vector<int>{7, 14, 7});
    CHECK(ind7.boundaries_square_to_zero());

    // looped vertices never appear
    Graph g = homcx::path_graph(3);
    g.add_edge(1, 1);
    auto ind = homcx::independence_complex(g);
    CHECK(ind.f_vector() == std::vector<int>{2, 1});   // {0}, {2}, {0,2}

    // dimension window prunes strictly above the bound
    auto ind7w = homcx::independence_complex(homcx::cycle_graph(7), 1);
    CHECK(ind7w.f_vector() == std::vector<int>{7, 14});
}

TEST_CASE("windowed complexes agree with full ones below the window", "[complex]")
{
    Graph g = homcx::cycle_graph(5), h = homcx::complete_graph(4);
    auto full = homcx::hom_complex(g, h);
    auto windowed = homcx::hom_complex(g, h, 2);
    REQUIRE(windowed.top_dim() == 2);
    for (int d = 0; d <= 2; ++d) {
        CHECK(full.count(d) == windowed.count(d));
        auto a = full.boundary_matrix(d), b = windowed.boundary_matrix(d);
        CHECK(a.cols == b.cols);
    }
}

TEST_CASE("hom complex vertex sets are the homomorphisms", "[complex]")
{
    Graph c5 = homcx::cycle_graph(5);
    Graph k3 = homcx::complete_graph(3);
    auto cx = homcx::hom_complex(c5, k3);
    CHECK(cx.count(0) == static_cast<int>(homcx::enumerate_homomorphisms(c5, k3).size()));

    // complete graph to itself: only the bijections, and nothing higher
    Graph k4 = homcx::complete_graph(4);
    auto auto4 = homcx::hom_complex(k4, k4);
    CHECK(auto4.top_dim() == 0);
    CHECK(auto4.count(0) == 24);

    // no homomorphisms at all: the empty complex is a contract violation
    CHECK_THROWS_AS(homcx::hom_complex(c5, homcx::complete_graph(2)), homcx::contract_error);
}

TEST_CASE("hom complexes with looped sources model products of spheres", "[complex]")
{
    // a looped isolated vertex mapped into the strong complement of a
    // matching picks one endpoint per matched pair: the cell structure of
    // a cross-polytope boundary, i.e. a sphere of dimension (pairs - 1)
    Graph one_loop(1);
    one_loop.add_edge(0, 0);
    Graph matching3(6);
    matching3.add_edge(0, 1);
    matching3.add_edge(2, 3);
    matching3.add_edge(4, 5);
    auto sphere = homcx::hom_complex(one_loop, homcx::strong_complement(matching3));
    CHECK(sphere.top_dim() == 2);
    CHECK(sphere.f_vector() == std::vector<int>{6, 12, 8});
    CHECK(sphere.euler_characteristic() == 2);
    CHECK(sphere.boundaries_square_to_zero());

    Graph two_loops(2);
    two_loops.add_edge(0, 0);
    two_loops.add_edge(1, 1);
    auto torus_like = homcx::hom_complex(two_loops, homcx::strong_complement(matching3));
    CHECK(torus_like.euler_characteristic() == 4);   // chi(S^2 x S^2)
    CHECK(torus_like.top_dim() == 4);
}

TEST_CASE("simplicial model matches the join-power structure", "[complex]")
{
    Graph c5 = homcx::cycle_graph(5);
    auto plus = homcx::hom_plus_complex(c5, homcx::complete_graph(3));
    // independence complex of three disjoint 5-cycles: join of three
    // copies of Ind(C5); total cell count (5+5+1)^3 - 1
    CHECK(plus.size() == 11 * 11 * 11 - 1);
    CHECK(plus.top_dim() == 3 * 2 - 1);

    // f-vector must equal the coefficient-wise join product
    std::vector<long long> fpoly{1, 5, 5};   // 1 + 5t + 5t^2, t tracks |face|
    std::vector<long long> prod{1};
    for (int copy = 0; copy < 3; ++copy) {
        std::vector<long long> next(prod.size() + fpoly.size() - 1, 0);
        for (std::size_t i = 0; i < prod.size(); ++i)
            for (std::size_t j = 0; j < fpoly.size(); ++j)
                next[i + j] += prod[i] * fpoly[j];
        prod = std::move(next);
    }
    auto f = plus.f_vector();
    REQUIRE(f.size() + 1 == prod.size());
    for (std::size_t d = 0; d < f.size(); ++d)
        CHECK(static_cast<long long>(f[d]) == prod[d + 1]);
}

TEST_CASE("support-shift map intertwines the boundaries", "[complex]")
{
    // on the full-support part of the simplicial model, dropping one
    // vertex of a pair-simplex matches the prodsimplicial face maps; the
    // signed bijection must commute with the two boundary operators
    for (auto [gn, hn] : std::vector<std::pair<int, int>>{{5, 3}, {5, 4}, {2, 4}}) {
        Graph g = gn == 2 ? homcx::complete_graph(2) : homcx::cycle_graph(gn);
        Graph h = homcx::complete_graph(hn);
        auto plus = homcx::hom_plus_complex(g, h);
        auto prod = homcx::hom_complex(g, h);
        const int shift = g.n - 1;

        for (int d = 1; d <= plus.top_dim(); ++d) {
            for (int j = 0; j < plus.count(d); ++j) {
                const auto& cell = plus.cells[static_cast<std::size_t>(plus.offset(d) + j)];
                Multihom eta = homcx::simplex_to_multihom(cell.simplex, g.n, h.n);
                if (homcx::support_size(eta) != g.n)
                    continue;
                int target = prod.find_multihom(eta);
                REQUIRE(target >= 0);
                // image of the boundary under rho, keeping full-support faces
                std::map<int, long long> lhs;
                for (auto& [f, s] : cell.boundary) {
                    Multihom feta = homcx::simplex_to_multihom(
                        plus.cells[static_cast<std::size_t>(f)].simplex, g.n, h.n);
                    if (homcx::support_size(feta) != g.n)
                        continue;
                    int fid = prod.find_multihom(feta);
                    REQUIRE(fid >= 0);
                    lhs[fid] += static_cast<long long>(s) * homcx::support_shift_sign(feta);
                }
                // boundary of the image
                std::map<int, long long> rhs;
                for (auto& [f, s] : prod.cells[static_cast<std::size_t>(target)].boundary)
                    rhs[f] += static_cast<long long>(s) * homcx::support_shift_sign(eta);
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("restriction to an induced subgraph is a chain map", "[complex]")
{
    Graph c5 = homcx::cycle_graph(5);
    Graph k4 = homcx::complete_graph(4);
    std::vector<int> edge{0, 1};
    auto big = homcx::hom_complex(c5, k4);
    auto small = homcx::hom_complex(homcx::induced_subgraph(c5, edge), k4);
    auto maps = homcx::restriction_chain_map(big, small, edge, big.top_dim());
    CHECK(homcx::is_chain_map(big, small, maps));
    // surjective on vertices: every K2-hom extends around the cycle
    std::set<int> hit;
    for (auto& col : maps[0].cols)
        for (auto& [i, v] : col)
            hit.insert(i);
    CHECK(static_cast<int>(hit.size()) == small.count(0));
}

TEST_CASE("pushforward along a target inclusion is a chain map", "[complex]")
{
    Graph k2 = homcx::complete_graph(2);
    auto src = homcx::hom_complex(k2, homcx::complete_graph(3));
    auto dst = homcx::hom_complex(k2, homcx::complete_graph(4));
    homcx::VertexMap inc(3, 4, {0, 1, 2});
    auto maps = homcx::pushforward_chain_map(src, dst, inc, src.top_dim());
    CHECK(homcx::is_chain_map(src, dst, maps));

    // a permuted inclusion exercises the orientation signs
    homcx::VertexMap perm(3, 4, {3, 1, 0});
    auto pmaps = homcx::pushforward_chain_map(src, dst, perm, src.top_dim());
    CHECK(homcx::is_chain_map(src, dst, pmaps));
}
