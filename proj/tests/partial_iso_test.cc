/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eppa/fixtures.hh>
#include <eppa/group.hh>
#include <eppa/partial_iso.hh>

#include "oracles.hh"

#include <doctest.h>

#include <functional>
#include <random>

using namespace eppa;

using std::string;
using std::vector;

namespace
{
    auto as_map(const PartialIso & p) -> oracle::Map
    {
        oracle::Map m;
        for (auto & [a, b] : p.graph())
            m[a] = b;
        return m;
    }

    auto small_structures() -> vector<Structure>
    {
        vector<Structure> result{s4_c1(), s4_c2(), relation_free_pair(), graph_path_3(), graph_edge(),
            kn_free_seed(3), s4_t()};
        StructureBuilder b{Signature{{Symbol{"P", 1}, Symbol{"R", 2}}}};
        for (auto n : {"x", "y", "z"})
            b.add_element(n);
        b.add_tuple("P", {"x"}).add_tuple("R", {"x", "y"}).add_tuple("R", {"y", "y"}).add_tuple("R", {"z", "x"});
        result.push_back(b.build());
        return result;
    }
}

TEST_CASE("partial isomorphism test")
{
    auto c1 = s4_c1();
    CHECK(is_partial_iso(c1, {{c1.at("x"), c1.at("y")}}));
    CHECK(is_partial_iso(c1, vector<std::pair<Element, Element>>{}));
    CHECK(! is_partial_iso(c1, {{0, 1}, {1, 0}}));

    StructureBuilder b{Signature{{Symbol{"P", 1}, Symbol{"R", 2}}}};
    for (auto n : {"x", "y", "z"})
        b.add_element(n);
    b.add_tuple("P", {"x"}).add_tuple("R", {"x", "y"}).add_tuple("R", {"y", "z"}).add_tuple("R", {"z", "x"});
    auto t = b.build();
    CHECK(! is_partial_iso(t, {{0, 1}}));
}

TEST_CASE("enumeration small cases")
{
    auto c1 = std::make_shared<const Structure>(s4_c1());
    auto pc = enumerate_partial_isos(c1);
    REQUIRE(pc.size() == 2);
    CHECK(pc[0] == PartialIso{{{0, 1}}});
    CHECK(pc[1] == PartialIso{{{1, 0}}});
    CHECK(pc.inverse_of(0) == 1);
    CHECK(pc.generator_count() == 1);

    StructureBuilder one{Signature{}};
    one.add_element("a");
    CHECK(enumerate_partial_isos(one.build()).size() == 0);

    auto pair = enumerate_partial_isos(relation_free_pair());
    REQUIRE(pair.size() == 3);
    CHECK(pair[0] == PartialIso{{{0, 1}}});
    CHECK(pair[1] == PartialIso{{{1, 0}}});
    CHECK(pair[2] == PartialIso{{{0, 1}, {1, 0}}});
    CHECK(pair.inverse_of(2) == 2);
    CHECK(pair.generator_count() == 2);
    CHECK(pair.generator_names() == vector<string>{"p0", "p2"});
}

TEST_CASE("enumeration agrees with brute force")
{
    for (auto & s : small_structures()) {
        for (bool nonidentity : {true, false}) {
            auto ps = enumerate_partial_isos(s, std::nullopt, nonidentity);
            std::set<oracle::Map> got;
            for (auto & p : ps.members())
                got.insert(as_map(p));
            CHECK(got.size() == ps.size());
            CHECK(got == oracle::partial_isos(s, nonidentity));
            for (int k = 0 ; k + 1 < ps.size() ; ++k)
                CHECK(canonical_less(ps[k], ps[k + 1]));
            for (int k = 0 ; k < ps.size() ; ++k) {
                CHECK(ps[ps.inverse_of(k)] == invert_partial(ps[k]));
                CHECK(ps.find(ps[k]) == k);
            }
        }
        auto capped = enumerate_partial_isos(s, 1, true);
        for (auto & p : capped.members())
            CHECK(p.size() <= 1);
    }
    CHECK_THROWS_AS(enumerate_partial_isos(s4_t(), std::nullopt, true, 10), CapExceeded);
}

TEST_CASE("maximal members")
{
    auto ps = enumerate_partial_isos(relation_free_pair());
    CHECK(maximal_members(ps) == vector<int>{2});
    auto c1 = enumerate_partial_isos(s4_c1());
    CHECK(maximal_members(c1) == vector<int>{0, 1});
}

TEST_CASE("composition and inverse")
{
    PartialIso p{{{0, 1}}}, q{{{1, 0}}};
    CHECK(compose_partial(p, q) == PartialIso{{{1, 1}}});
    CHECK(compose_partial(p, PartialIso{}) == PartialIso{});
    PartialIso swap{{{0, 1}, {1, 0}}};
    CHECK(compose_partial(swap, swap) == PartialIso{{{0, 0}, {1, 1}}});
    CHECK(compose_partial(swap, swap).is_identity_restriction());

    CHECK(invert_partial(p) == q);
    CHECK(invert_partial(PartialIso{}) == PartialIso{});
    CHECK(invert_partial(PartialIso{{{0, 1}, {1, 2}}}) == PartialIso{{{1, 0}, {2, 1}}});

    CHECK_THROWS_AS(PartialIso({{0, 1}, {0, 2}}), InputError);
    CHECK_THROWS_AS(PartialIso({{0, 1}, {2, 1}}), InputError);
}

TEST_CASE("word evaluation")
{
    auto c1 = enumerate_partial_isos(s4_c1());
    CHECK(eval_partial_word(Word{}, 0, c1) == 0);
    auto p = parse_member_word("p0", c1);
    CHECK(eval_partial_word(p, 0, c1) == 1);
    CHECK(eval_partial_word(p, 1, c1) == std::nullopt);
    auto back = parse_member_word("p0 p0^-1", c1);
    CHECK(back.empty());
    CHECK(eval_partial_word(back, 0, c1) == 0);
    CHECK(parse_member_word("p1", c1) == p.inverse());
    CHECK(word_of_members(c1, {1, 0}) == Word{});
    CHECK_THROWS_AS(parse_member_word("q0", c1), InputError);
    CHECK_THROWS_AS(parse_member_word("p7", c1), InputError);
}

TEST_CASE("stabilizer generators")
{
    for (auto & s : small_structures()) {
        if (s.size() > 3)
            continue;
        auto ps = enumerate_partial_isos(s);
        int k = ps.generator_count();
        std::mt19937_64 rng(k * 7 + s.size());
        for (Element a = 0 ; a < s.size() ; ++a) {
            auto gens = stabilizer_generators(ps, a);
            for (auto & w : gens) {
                CHECK(! w.empty());
                CHECK(eval_partial_word(w, a, ps) == a);
            }

            // loops at a up to length 4
            vector<Word> loops;
            std::function<void (Word, Element, int)> walk = [&] (Word w, Element at, int left) {
                if (at == a && ! w.empty())
                    loops.push_back(w);
                if (left == 0)
                    return;
                for (int g = 0 ; g < k ; ++g)
                    for (int sign : {1, -1}) {
                        auto next = Word::generator(g, sign) * w;
                        if (next.size() != w.size() + 1)
                            continue;
                        int member = ps.generator_member(g);
                        if (sign == -1)
                            member = ps.inverse_of(member);
                        if (auto to = ps[member].apply(at))
                            walk(next, *to, left - 1);
                    }
            };
            walk(Word{}, a, 4);

            // each loop must lie in the generated subgroup in random finite images
            for (int trial = 0 ; trial < 20 ; ++trial) {
                FiniteQuotient q;
                q.degree = 4;
                for (int g = 0 ; g < k ; ++g) {
                    q.names.push_back("g" + std::to_string(g));
                    q.images.emplace_back(oracle::random_perm(4, rng));
                }
                auto h = subgroup_image(gens, q);
                for (auto & w : loops)
                    CHECK(h.contains(quotient_image(w, q)));
            }
        }
    }

    // no member touches a
    StructureBuilder b{Signature{{Symbol{"P", 1}, Symbol{"R", 2}}}};
    for (auto n : {"a", "b", "c"})
        b.add_element(n);
    b.add_tuple("P", {"a"}).add_tuple("R", {"a", "b"});
    auto lone = enumerate_partial_isos(b.build());
    CHECK(stabilizer_generators(lone, 0).empty());

    // a loop at a: p = {a -> a, b -> c} fixes a
    auto rf = enumerate_partial_isos(make_graph({"a", "b", "c"}, {}));
    auto loop = *rf.find(PartialIso{{{0, 0}, {1, 2}}});
    auto gens = stabilizer_generators(rf, 0);
    bool has_letter = false;
    for (auto & w : gens)
        if (w.size() == 1 && w.letters()[0].generator == rf.generator_of(loop))
            has_letter = true;
    CHECK(has_letter);
}
