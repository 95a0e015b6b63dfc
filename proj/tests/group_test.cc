/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eppa/group.hh>

#include "oracles.hh"

#include <doctest.h>

#include <random>

using namespace eppa;

using std::string;
using std::vector;

namespace
{
    auto elements_of(const PermGroup & g) -> std::set<oracle::P>
    {
        std::set<oracle::P> result;
        for (auto & e : g.elements())
            result.insert(e.images());
        return result;
    }
}

TEST_CASE("words reduce")
{
    Word w{{Letter{0, 1}, Letter{1, 1}, Letter{1, -1}, Letter{0, 1}}};
    CHECK(w.size() == 2);
    CHECK((w * w.inverse()).empty());
    vector<string> names{"a", "b"};
    CHECK(w.to_string(names) == "a a");
    CHECK(Word{}.to_string(names) == "1");
    CHECK(Word::parse("a b^-1 b a", names) == w);
    CHECK(Word::parse("1", names).empty());
    CHECK(Word::parse("", names).empty());
    CHECK_THROWS_AS(Word::parse("c", names), InputError);
}

TEST_CASE("permutations")
{
    Perm a{{1, 0, 2}}, b{{0, 2, 1}};
    // rightmost applied first
    CHECK((a * b)(2) == 0);
    CHECK((a * b).images() == oracle::mul(a.images(), b.images()));
    CHECK((a * a).is_identity());
    CHECK((a * b).order() == 3);
    CHECK(a.inverse() == a);
    CHECK_THROWS_AS(Perm({0, 0, 1}), InputError);
    CHECK_THROWS_AS(a * Perm::identity(4), InputError);
}

TEST_CASE("closure")
{
    CHECK(close_group(4, {Perm{{1, 2, 3, 0}}}).order() == 4);
    CHECK(close_group(4, {}).order() == 1);
    auto s3 = close_group(3, {Perm{{1, 0, 2}}, Perm{{0, 2, 1}}});
    CHECK(s3.order() == 6);
    CHECK(s3.elements()[0].is_identity());
    CHECK_THROWS_AS(close_group(6, {Perm{{1, 2, 3, 4, 5, 0}}, Perm{{1, 0, 2, 3, 4, 5}}}, 100), CapExceeded);
}

TEST_CASE("closure agrees with brute force")
{
    std::mt19937_64 rng{3};
    for (int k = 0 ; k < 60 ; ++k) {
        int n = 2 + k % 4;
        vector<Perm> gens;
        vector<oracle::P> raw;
        for (int g = 0 ; g < 1 + k % 3 ; ++g) {
            raw.push_back(oracle::random_perm(n, rng));
            gens.emplace_back(raw.back());
        }
        auto g = close_group(n, gens);
        CHECK(elements_of(g) == oracle::closure(n, raw));
        for (int x = 0 ; x < n ; ++x) {
            std::set<int> expect;
            for (auto & e : oracle::closure(n, raw))
                expect.insert(e[x]);
            auto o = orbit(g, x);
            CHECK(std::set<int>(o.begin(), o.end()) == expect);
        }
        auto stab = pointwise_stabilizer(g, {0});
        for (auto & e : stab)
            CHECK(e(0) == 0);
    }
}

TEST_CASE("orbits")
{
    CHECK(orbit(close_group(3, {}), 1) == vector<int>{1});
    CHECK(orbit(close_group(4, {Perm{{1, 2, 3, 0}}}), 0) == vector<int>{0, 1, 2, 3});
    CHECK(orbit(close_group(3, {Perm{{1, 0, 2}}, Perm{{0, 2, 1}}}), 2) == vector<int>{0, 1, 2});
}

TEST_CASE("quotient images")
{
    FiniteQuotient q{3, {"p", "r"}, {Perm{{1, 0, 2}}, Perm{{0, 2, 1}}}};
    CHECK(quotient_image(Word{}, q).is_identity());
    auto p = Word::generator(0), r = Word::generator(1);
    CHECK(quotient_image(p * p.inverse(), q).is_identity());
    // p r: 2 -> 1 under r, then 1 -> 0 under p
    CHECK(quotient_image(p * r, q)(2) == 0);
    CHECK(quotient_image(p * r, q) == q.images[0] * q.images[1]);

    CHECK(subgroup_image({}, q).order() == 1);
    FiniteQuotient trivial{3, {"p", "r"}, {Perm::identity(3), Perm::identity(3)}};
    CHECK(subgroup_image({p, r * p}, trivial).order() == 1);
    FiniteQuotient cyc{3, {"p"}, {Perm{{1, 2, 0}}}};
    CHECK(subgroup_image({p}, cyc).order() == 3);
    CHECK(quotient_group(q).order() == 6);
    CHECK_THROWS_AS(quotient_image(Word::generator(5), q), InputError);
}
