/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eppa/homomorphism.hh>
#include <eppa/left_system.hh>

#include "oracles.hh"

#include <doctest.h>

#include <random>

using namespace eppa;

using std::nullopt;
using std::string;
using std::vector;

namespace
{
    const Perm s_perm{{1, 0, 2}}, t_perm{{0, 2, 1}};

    auto letters(const Word & w) -> vector<std::pair<int, int>>
    {
        vector<std::pair<int, int>> r;
        for (auto & l : w.letters())
            r.emplace_back(l.generator, l.sign);
        return r;
    }

    // S_3 on s = (0 1), t = (1 2); H1 = <s>, H2 = <t>, H3 = <s t> of order 3;
    // constants name the six elements by shortest words
    auto s3_spec() -> CosetSpec
    {
        CosetSpec spec;
        spec.generators = {"s", "t"};
        auto w = [&] (const string & text) { return Word::parse(text, spec.generators); };
        spec.subgroups = {{"H1", {w("s")}}, {"H2", {w("t")}}, {"H3", {w("s t")}}, {"G", {w("s"), w("t")}}};
        spec.constants = {{"e", w("1")}, {"s", w("s")}, {"t", w("t")}, {"st", w("s t")}, {"ts", w("t s")},
            {"sts", w("s t s")}};
        spec.images = vector<Perm>{s_perm, t_perm};
        spec.degree = 3;
        return spec;
    }

    struct Brute
    {
        int n;
        std::set<oracle::P> group;
        std::map<string, std::set<oracle::P>> subgroups;
        std::map<string, oracle::P> constants;

        explicit Brute(const CosetSpec & spec) :
            n(spec.degree)
        {
            vector<oracle::P> images;
            for (auto & p : *spec.images)
                images.push_back(p.images());
            group = oracle::closure(n, images);
            subgroups["H0"] = {oracle::id(n)};
            for (auto & [name, gens] : spec.subgroups) {
                vector<oracle::P> hs;
                for (auto & g : gens)
                    hs.push_back(oracle::eval_word(n, letters(g), images));
                subgroups[name] = oracle::closure(n, hs);
            }
            constants["1"] = oracle::id(n);
            for (auto & [name, word] : spec.constants) {
                constants[name] = oracle::eval_word(n, letters(word), images);
                constants[name + "^-1"] = oracle::inv(constants[name]);
            }
        }

        auto solvable(const LeftSystem & sys) const -> bool
        {
            vector<oracle::CosetEquation> eqs;
            for (auto & eq : sys.equations)
                eqs.push_back({eq.lhs, &subgroups.at(eq.slot), eq.var.value_or(-1), constants.at(eq.constant.value_or("1"))});
            return oracle::solvable(group, int(sys.variables.size()), eqs);
        }
    };

    auto random_system(std::mt19937_64 & rng, int variables, int equations, const vector<string> & slots,
            const vector<string> & constants) -> LeftSystem
    {
        LeftSystem sys;
        for (int v = 0 ; v < variables ; ++v)
            sys.add_variable("v" + std::to_string(v));
        for (int k = 0 ; k < equations ; ++k) {
            Equation eq;
            eq.lhs = int(rng() % variables);
            eq.slot = slots[rng() % slots.size()];
            if (rng() % 3)
                eq.var = int(rng() % variables);
            if (rng() % 4)
                eq.constant = constants[rng() % constants.size()];
            sys.equations.push_back(eq);
        }
        return sys;
    }

    auto equation(int lhs, const string & slot, std::optional<int> var, std::optional<string> c) -> Equation
    {
        return Equation{lhs, slot, var, c};
    }
}

TEST_CASE("materialize")
{
    auto spec = s3_spec();
    auto ctx = materialize(spec);
    CHECK(ctx.group.order() == 6);
    CHECK(ctx.subgroup("H1").order() == 2);
    CHECK(ctx.subgroup("H3").order() == 3);
    CHECK(ctx.subgroup("H0").order() == 1);
    CHECK(ctx.constant("st") == s_perm * t_perm);
    CHECK(ctx.constant("st^-1") == (s_perm * t_perm).inverse());
    CHECK(ctx.constant("1").is_identity());
    CHECK_THROWS_AS(ctx.constant("nope"), InputError);
    CHECK_THROWS_AS(ctx.subgroup("H9"), InputError);

    Brute b{spec};
    for (auto & [name, p] : ctx.constants)
        CHECK(p.images() == b.constants.at(name));

    auto free = spec;
    free.images.reset();
    CHECK_THROWS_AS(materialize(free), InputError);
}

TEST_CASE("solving small systems")
{
    auto ctx = materialize(s3_spec());
    LeftSystem sys;
    int x = sys.add_variable("x");
    sys.equations = {equation(x, "H1", nullopt, "e"), equation(x, "H1", nullopt, "s")};
    auto solution = solve_left_system(ctx, sys);
    REQUIRE(solution);
    CHECK((*solution)[0].is_identity());
    CHECK(satisfies(ctx, sys, *solution));

    sys.equations = {equation(x, "H1", nullopt, "e"), equation(x, "H1", nullopt, "st")};
    CHECK(! solve_left_system(ctx, sys));

    auto empty = solve_left_system(ctx, LeftSystem{});
    REQUIRE(empty);
    CHECK(empty->empty());
}

TEST_CASE("solver agrees with brute force")
{
    auto spec = s3_spec();
    auto ctx = materialize(spec);
    Brute brute{spec};
    std::mt19937_64 rng{11};
    vector<string> slots{"H0", "H1", "H2", "H3", "G"}, constants{"e", "s", "t", "st", "ts^-1", "sts", "1"};
    int solvable = 0;
    for (int k = 0 ; k < 400 ; ++k) {
        auto sys = random_system(rng, 1 + k % 3, 1 + k % 5, slots, constants);
        auto solution = solve_left_system(ctx, sys);
        CHECK(bool(solution) == brute.solvable(sys));
        if (solution) {
            ++solvable;
            CHECK(satisfies(ctx, sys, *solution));
        }
    }
    CHECK(solvable > 50);
    CHECK(solvable < 350);
}

TEST_CASE("nonmembership encoding")
{
    auto ctx = materialize(s3_spec());
    CHECK(solve_left_system(ctx, encode_nonmembership("st", "st", "H1")));
    CHECK(! solve_left_system(ctx, encode_nonmembership("e", "st", "H1")));
    CHECK(solve_left_system(ctx, encode_nonmembership("e", "s", "H1")));
    auto sys = encode_nonmembership("e", "s", "H1");
    CHECK(sys.variables == vector<string>{"x"});
    CHECK(sys.equations.size() == 2);
}

TEST_CASE("translation encoding")
{
    auto ctx = materialize(s3_spec());
    CHECK(solve_left_system(ctx, encode_no_translate({"st"}, {"st"}, {"H1"})));
    CHECK(! solve_left_system(ctx, encode_no_translate({"e", "st"}, {"e", "e"}, {"H1", "H1"})));
    CHECK(solve_left_system(ctx, encode_no_translate({"e", "st", "sts"}, {"s", "t", "e"}, {"G", "G", "G"})));
    CHECK_THROWS_AS(encode_no_translate({"e"}, {}, {"H1"}), InputError);
}

TEST_CASE("normal forms")
{
    LeftSystem sys;
    int x = sys.add_variable("x");
    sys.equations = {equation(x, "H1", nullopt, "g")};
    auto star = normalize_system(sys, NormalStage::star);
    REQUIRE(star.variables.size() == 2);
    CHECK(star.equations == vector<Equation>{equation(0, "H1", 1, "g")});

    LeftSystem yg;
    yg.add_variable("x");
    yg.add_variable("y");
    yg.equations = {equation(0, "H1", 1, "g")};
    auto prime = normalize_system(yg, NormalStage::prime);
    REQUIRE(prime.variables.size() == 3);
    CHECK(prime.equations == vector<Equation>{equation(0, "H1", 2, nullopt), equation(2, "H0", 1, "g")});
    CHECK(is_prime_normal(prime));
    CHECK(! is_prime_normal(yg));

    // already normal
    LeftSystem normal;
    normal.add_variable("x");
    normal.add_variable("y");
    normal.equations = {equation(0, "H1", 1, nullopt), equation(1, "H0", 0, "g")};
    CHECK(normalize_system(normal, NormalStage::prime) == normal);
    CHECK(normalize_system(normal, NormalStage::star) == normal);
}

TEST_CASE("normal forms keep solvability")
{
    auto spec = s3_spec();
    Brute brute{spec};
    std::mt19937_64 rng{23};
    vector<string> slots{"H1", "H2", "H3", "H0"}, constants{"e", "s", "st", "sts^-1"};
    for (int k = 0 ; k < 150 ; ++k) {
        auto sys = random_system(rng, 1 + k % 2, 1 + k % 4, slots, constants);
        bool expect = brute.solvable(sys);
        auto star = normalize_system(sys, NormalStage::star);
        auto prime = normalize_system(sys, NormalStage::prime);
        CHECK(is_prime_normal(prime));
        CHECK(brute.solvable(star) == expect);
        CHECK(brute.solvable(prime) == expect);
    }
}

TEST_CASE("gadgets")
{
    auto empty = system_to_gadget(LeftSystem{});
    CHECK(empty.t.size() == 0);

    auto spec = s3_spec();
    auto ctx = materialize(spec);
    LeftSystem xy;
    xy.add_variable("x");
    xy.add_variable("y");
    xy.equations = {equation(0, "H1", 1, nullopt)};
    auto g = system_to_gadget(xy);
    CHECK(g.coset_elements.size() == 2);
    CHECK(is_gaifman_clique(g.t));
    CHECK(bool(find_homomorphism(g.t, gadget_target(g, ctx))) == bool(solve_left_system(ctx, xy)));

    auto non = system_to_gadget(normalize_system(encode_nonmembership("e", "st", "H1"), NormalStage::prime));
    CHECK_THROWS_AS(system_to_gadget(encode_nonmembership("e", "st", "H1")), InputError);
    CHECK(non.t.size() > 0);
    CHECK(! find_homomorphism(non.t, gadget_target(non, ctx)));
}

TEST_CASE("gadget homomorphisms agree with solvability")
{
    auto spec = s3_spec();
    auto ctx = materialize(spec);
    Brute brute{spec};
    std::mt19937_64 rng{29};
    vector<string> slots{"H1", "H2", "H3", "H0"}, constants{"e", "s", "st", "sts", "ts^-1"};
    for (int k = 0 ; k < 120 ; ++k) {
        auto sys = random_system(rng, 1 + k % 3, 1 + k % 4, slots, constants);
        auto g = system_to_gadget(normalize_system(sys, NormalStage::prime));
        CHECK(is_gaifman_clique(g.t));
        CHECK(bool(find_homomorphism(g.t, gadget_target(g, ctx))) == brute.solvable(sys));
    }
}

TEST_CASE("separation")
{
    CosetSpec fa;
    fa.generators = {"a"};
    auto a = Word::generator(0);
    fa.subgroups = {{"H1", {a * a}}};
    fa.constants = {{"g", a}};
    auto sys = encode_nonmembership("1", "g", "H1");
    auto found = hl_separate(fa, sys, 4);
    REQUIRE(found.quotient);
    CHECK(found.status == SearchStatus::found);
    CHECK(found.quotient->degree <= 4);
    auto induced = induce(fa, *found.quotient);
    CHECK(! solve_left_system(materialize(induced), sys));
    CHECK(! Brute{induced}.solvable(sys));

    CosetSpec fab;
    fab.generators = {"a", "b"};
    fab.subgroups = {{"H1", {a}}};
    fab.constants = {{"g", Word::generator(1)}};
    auto b_sys = encode_nonmembership("1", "g", "H1");
    auto b_found = hl_separate(fab, b_sys, 4);
    REQUIRE(b_found.quotient);
    CHECK(b_found.quotient->degree == 2);
    CHECK(b_found.quotient->images[0].is_identity());
    CHECK(b_found.quotient->images[1] == Perm{{1, 0}});
    CHECK(! Brute{induce(fab, *b_found.quotient)}.solvable(b_sys));

    // x H = gH alone always has x = g
    LeftSystem easy;
    easy.add_variable("x");
    easy.equations = {equation(0, "H1", nullopt, "g")};
    auto none = hl_separate(fa, easy, 3);
    CHECK(none.status == SearchStatus::none);
    CHECK(! none.quotient);

    auto seeded = hl_separate(fab, b_sys, 3, 1000, 7);
    REQUIRE(seeded.quotient);
    CHECK(! Brute{induce(fab, *seeded.quotient)}.solvable(b_sys));
}
