/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eppa/fixtures.hh>
#include <eppa/gamma.hh>

#include "oracles.hh"

#include <doctest.h>

using namespace eppa;

using std::make_shared;
using std::string;
using std::vector;

namespace
{
    auto distinct_points() -> Structure
    {
        StructureBuilder b{Signature{{Symbol{"P", 1}, Symbol{"Q", 1}}}};
        b.add_element("x");
        b.add_element("y");
        b.add_tuple("P", {"x"}).add_tuple("Q", {"y"});
        return b.build();
    }

    // psi and the commuting square, checked from scratch
    auto check_cover(const HLExtension & e, const CoverResult & cover, const vector<Structure> & forbidden) -> void
    {
        auto & g = cover.gamma;
        REQUIRE(g.psi);
        auto & psi = g.psi->images;
        CHECK(oracle::is_hom(g.structure, e.ext, psi));
        CHECK(std::set<Element>(psi.begin(), psi.end()).size() == std::size_t(e.ext.size()));
        for (int k = 0 ; k < e.pc.size() ; ++k)
            for (int x = 0 ; x < g.structure.size() ; ++x)
                CHECK(e.image(k)(psi[x]) == psi[g.Phi[k](x)]);
        CHECK(oracle::t_free(g.structure, forbidden));
        oracle::Extension ge{g.base.get(), &g.structure, {}};
        for (int k = 0 ; k < g.pc.size() ; ++k) {
            oracle::Map m;
            for (auto & [a, b] : g.pc[k].graph())
                m[a] = b;
            ge.phi[m] = g.Phi[k].images();
        }
        string why;
        CHECK_MESSAGE(oracle::verify(ge, forbidden, &why), why);
    }
}

TEST_CASE("trivial quotient collapses a class")
{
    auto c = make_shared<const Structure>(relation_free_pair());
    FiniteQuotient q{1, {"p0", "p2"}, {Perm::identity(1), Perm::identity(1)}};
    CHECK_THROWS_AS(build_gamma_N(c, q), NotEmbedding);
    FiniteQuotient partial{1, {"p0"}, {Perm::identity(1)}};
    CHECK_THROWS_AS(build_gamma_N(c, partial), InputError);
}

TEST_CASE("four-cycle quotient of the edge")
{
    auto c1 = make_shared<const Structure>(s4_c1());
    FiniteQuotient q{4, {"p0"}, {Perm{{1, 2, 3, 0}}}};
    auto g = build_gamma_N(c1, q);
    auto & s = g.structure;
    CHECK(s.size() == 4);
    CHECK(s.name(0) == "x");
    CHECK(s.name(1) == "y");
    auto r = *s.signature().find("R"), sym = *s.signature().find("S");
    CHECK(s.table(r).size() == 4);
    CHECK(s.table(sym).empty());
    // a single directed cycle through all four points
    vector<int> next(4, -1);
    for (auto & t : s.table(r))
        next[t[0]] = t[1];
    int at = 0;
    for (int k = 0 ; k < 4 ; ++k) {
        REQUIRE(next[at] != -1);
        at = next[at];
        CHECK((at == 0) == (k == 3));
    }
    CHECK(verify_hl_extension(g.as_extension(), {s4_t()}).all());
}

TEST_CASE("no partial isomorphisms")
{
    auto c = make_shared<const Structure>(distinct_points());
    auto g = build_gamma_N(c, FiniteQuotient{1, {}, {}});
    CHECK(g.structure == *c);

    HLExtension e{c, *c, enumerate_partial_isos(c), {}};
    auto cover = canonical_cover(e, {});
    CHECK(cover.gamma.structure == *c);
    CHECK(cover.gamma.psi->images == vector<Element>{0, 1});
}

TEST_CASE("canonical cover of the fixture")
{
    auto e = s4_extension();
    auto cover = canonical_cover(e, {s4_t()});
    CHECK(! cover.shrunk);
    CHECK(cover.gamma.structure.size() == 4);
    CHECK(cover.gamma.group.order() == 4);
    CHECK(cover.psi_onto);
    CHECK(cover.commutes);
    check_cover(e, cover, {s4_t()});
    // fibres are singletons
    auto psi = cover.gamma.psi->images;
    std::sort(psi.begin(), psi.end());
    CHECK(psi == vector<Element>{0, 1, 2, 3});
}

TEST_CASE("canonical cover of found extensions")
{
    auto k3 = complete_graph(3);
    vector<Structure> cs{graph_edge(), graph_path_3(), relation_free_pair(), s4_c1(), s4_c2(),
        make_graph({"a", "b", "c"}, {{"a", "b"}})};
    for (auto & c : cs)
        for (auto forbidden : {vector<Structure>{}, vector<Structure>{k3}}) {
            if (c.signature() != k3.signature() && ! forbidden.empty())
                continue;
            auto ptr = make_shared<const Structure>(c);
            auto found = find_hl_extension(ptr, forbidden, 6);
            if (! found.extension)
                continue;
            auto cover = canonical_cover(*found.extension, forbidden);
            check_cover(*found.extension, cover, forbidden);
        }
}

TEST_CASE("fragments")
{
    auto c1 = make_shared<const Structure>(s4_c1());
    auto f0 = gamma_fragment(c1, 0);
    CHECK(f0.structure.size() == 1);
    CHECK(f0.labels == vector<string>{"x"});

    auto f4 = gamma_fragment(c1, 4);
    // p^k H for -4 <= k <= 4
    CHECK(f4.structure.size() == 9);
    CHECK(f4.structure.table(*f4.structure.signature().find("R")).size() == 8);
    CHECK(std::count(f4.labels.begin(), f4.labels.end(), "y") == 1);

    auto c = make_shared<const Structure>(distinct_points());
    for (int radius : {0, 3})
        CHECK(gamma_fragment(c, radius).structure == *c);
    CHECK_THROWS_AS(gamma_fragment(c1, -1), InputError);
}
