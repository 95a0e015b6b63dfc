/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eppa/conditions.hh>
#include <eppa/fixtures.hh>
#include <eppa/gamma.hh>

#include "oracles.hh"

#include <doctest.h>

#include <random>

using namespace eppa;

using std::make_shared;
using std::string;
using std::vector;

namespace
{
    auto solvable_any(const FiniteContext & ctx, const ConditionSystems & cs, char kind) -> bool
    {
        for (unsigned k = 0 ; k < cs.systems.size() ; ++k)
            if (cs.labels[k][1] == kind && solve_left_system(ctx, cs.systems[k]))
                return true;
        return false;
    }

    auto count(const ConditionSystems & cs, char kind) -> int
    {
        int result = 0;
        for (auto & l : cs.labels)
            result += (l[0] == 'C' && l[1] == kind);
        return result;
    }
}

TEST_CASE("degenerate condition sets")
{
    StructureBuilder b{Signature{{Symbol{"R", 2}}}};
    b.add_element("a");
    auto one = enumerate_partial_isos(b.build());
    CHECK(encode_extension_conditions(one, {}).systems.empty());

    auto pair = enumerate_partial_isos(relation_free_pair());
    auto cs = encode_extension_conditions(pair, {});
    REQUIRE(cs.systems.size() == 1);
    CHECK(cs.labels[0] == "C1 a b");
    auto & sys = cs.systems[0];
    REQUIRE(sys.equations.size() == 2);
    CHECK(sys.equations[0].constant == "1");
    CHECK(sys.equations[1].constant == "p0");
    CHECK(sys.equations[0].slot == "H1");
    CHECK(cs.spec.generators == vector<string>{"p0", "p2"});

    auto edge = enumerate_partial_isos(make_graph({"a", "b"}, {{"a", "b"}}, "R"));
    auto with_edge = encode_extension_conditions(edge, {});
    CHECK(count(with_edge, '2') >= 1);

    CHECK_THROWS_AS(encode_extension_conditions(edge, {s4_t()}), SignatureMismatch);
    CHECK_THROWS_AS(encode_extension_conditions(enumerate_partial_isos(graph_path_3()), {complete_graph(3)}, 3),
            CapExceeded);
}

TEST_CASE("conditions match the coset structure of random quotients")
{
    struct Case
    {
        Structure c;
        vector<Structure> forbidden;
    };
    auto r_triangle = Structure{Signature{{Symbol{"R", 2}, Symbol{"S", 4}}}, {"0", "1", "2"},
        {{{0, 1}, {1, 2}, {2, 0}}, {}}};
    vector<Case> cases{
        {graph_edge(), {complete_graph(3)}},
        {graph_path_3(), {complete_graph(3)}},
        {make_graph({"a", "b", "c"}, {{"a", "b"}}), {complete_graph(3), graph_edge()}},
        {s4_c1(), {r_triangle}},
        {s4_c2(), {}},
    };

    std::mt19937_64 rng{31};
    int embeddings = 0, free = 0, not_free = 0;
    for (auto & cs_case : cases) {
        auto c = make_shared<const Structure>(cs_case.c);
        auto pc = enumerate_partial_isos(c);
        auto cs = encode_extension_conditions(pc, cs_case.forbidden);
        for (int trial = 0 ; trial < 40 ; ++trial) {
            FiniteQuotient q;
            q.degree = 2 + trial % 3;
            q.names = pc.generator_names();
            for (int g = 0 ; g < pc.generator_count() ; ++g)
                q.images.emplace_back(oracle::random_perm(q.degree, rng));
            auto ctx = materialize(induce(cs.spec, q));

            bool embeds_by_systems = ! solvable_any(ctx, cs, '1') && ! solvable_any(ctx, cs, '2');
            try {
                auto gamma = build_gamma_N(c, q);
                CHECK(embeds_by_systems);
                ++embeddings;
                bool t_free = oracle::t_free(gamma.structure, cs_case.forbidden);
                CHECK(t_free == ! solvable_any(ctx, cs, '3'));
                ++(t_free ? free : not_free);
            }
            catch (const NotEmbedding &) {
                CHECK(! embeds_by_systems);
            }
        }
    }
    CHECK(embeddings > 20);
    CHECK(free > 0);
    CHECK(not_free > 0);
}
