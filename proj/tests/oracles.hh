/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef EPPA_GUARD_TESTS_ORACLES_HH
#define EPPA_GUARD_TESTS_ORACLES_HH 1

// Brute-force reference computations. Nothing here calls into the search
// code; structures are only read through their tables.

#include <eppa/structure.hh>

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle
{
    using eppa::Element;
    using eppa::Structure;
    using eppa::Tuple;

    using P = std::vector<int>;
    using Map = std::map<Element, Element>;

    inline auto mul(const P & a, const P & b) -> P
    {
        P r(b.size());
        for (unsigned x = 0 ; x < b.size() ; ++x)
            r[x] = a[b[x]];
        return r;
    }

    inline auto inv(const P & a) -> P
    {
        P r(a.size());
        for (unsigned x = 0 ; x < a.size() ; ++x)
            r[a[x]] = x;
        return r;
    }

    inline auto id(int n) -> P
    {
        P r(n);
        for (int x = 0 ; x < n ; ++x)
            r[x] = x;
        return r;
    }

    // repeat until no product of two known elements is new
    inline auto closure(int n, const std::vector<P> & gens) -> std::set<P>
    {
        std::set<P> result{id(n)};
        for (auto & g : gens)
            result.insert(g);
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<P> now(result.begin(), result.end());
            for (auto & a : now)
                for (auto & b : now)
                    if (result.insert(mul(a, b)).second)
                        grew = true;
        }
        return result;
    }

    inline auto left_coset(const P & g, const std::set<P> & h) -> std::set<P>
    {
        std::set<P> r;
        for (auto & x : h)
            r.insert(mul(g, x));
        return r;
    }

    // every subgroup of a group this small is generated by two elements
    inline auto all_subgroups(int n, const std::set<P> & g) -> std::vector<std::set<P>>
    {
        std::set<std::set<P>> found;
        for (auto & a : g)
            for (auto & b : g)
                found.insert(closure(n, {a, b}));
        return {found.begin(), found.end()};
    }

    inline auto maps_tuple(const Structure & a, int r, const Tuple & t, const std::function<Element (Element)> & f,
            const Structure & b) -> bool
    {
        Tuple u;
        for (auto e : t)
            u.push_back(f(e));
        auto s = b.signature().find(a.signature()[r].name);
        return s && b.holds(*s, u);
    }

    inline auto is_hom(const Structure & a, const Structure & b, const std::vector<Element> & f) -> bool
    {
        for (int r = 0 ; r < a.signature().size() ; ++r)
            for (auto & t : a.table(r))
                if (! maps_tuple(a, r, t, [&] (Element e) { return f[e]; }, b))
                    return false;
        return true;
    }

    // every one of |B|^|A| maps
    inline auto hom_exists(const Structure & a, const Structure & b) -> bool
    {
        if (a.size() == 0)
            return true;
        if (b.size() == 0)
            return false;
        std::vector<Element> f(a.size(), 0);
        while (true) {
            if (is_hom(a, b, f))
                return true;
            int i = a.size() - 1;
            while (i >= 0 && ++f[i] == b.size())
                f[i--] = 0;
            if (i < 0)
                return false;
        }
    }

    inline auto t_free(const Structure & s, const std::vector<Structure> & forbidden) -> bool
    {
        for (auto & t : forbidden)
            if (hom_exists(t, s))
                return false;
        return true;
    }

    // all tuples over dom, both directions
    inline auto is_partial_iso(const Structure & c, const Map & m) -> bool
    {
        std::vector<Element> dom;
        std::set<Element> images;
        for (auto & [a, b] : m) {
            dom.push_back(a);
            images.insert(b);
        }
        if (images.size() != dom.size())
            return false;
        for (int r = 0 ; r < c.signature().size() ; ++r) {
            int k = c.signature()[r].arity;
            if (dom.empty())
                continue;
            std::vector<int> ix(k, 0);
            while (true) {
                Tuple t, u;
                for (auto i : ix) {
                    t.push_back(dom[i]);
                    u.push_back(m.at(dom[i]));
                }
                if (c.holds(r, t) != c.holds(r, u))
                    return false;
                int j = k - 1;
                while (j >= 0 && ++ix[j] == int(dom.size()))
                    ix[j--] = 0;
                if (j < 0)
                    break;
            }
        }
        return true;
    }

    inline auto is_identity_part(const Map & m) -> bool
    {
        return std::all_of(m.begin(), m.end(), [] (auto & pr) { return pr.first == pr.second; });
    }

    // every injection from every subset
    inline auto partial_isos(const Structure & c, bool nonidentity) -> std::set<Map>
    {
        std::set<Map> result;
        int n = c.size();
        std::function<void (int, Map &, std::vector<char> &)> go = [&] (int x, Map & m, std::vector<char> & used) {
            if (x == n) {
                if (is_partial_iso(c, m) && ! (nonidentity && is_identity_part(m)))
                    result.insert(m);
                return;
            }
            go(x + 1, m, used);
            for (int y = 0 ; y < n ; ++y)
                if (! used[y]) {
                    used[y] = 1;
                    m[x] = y;
                    go(x + 1, m, used);
                    m.erase(x);
                    used[y] = 0;
                }
        };
        Map m;
        std::vector<char> used(n, 0);
        go(0, m, used);
        return result;
    }

    inline auto is_automorphism(const Structure & d, const P & p) -> bool
    {
        if (int(p.size()) != d.size() || std::set<int>(p.begin(), p.end()).size() != p.size())
            return false;
        for (int r = 0 ; r < d.signature().size() ; ++r) {
            std::set<Tuple> image;
            for (auto & t : d.table(r)) {
                Tuple u;
                for (auto e : t)
                    u.push_back(p[e]);
                image.insert(u);
            }
            if (image != d.table(r))
                return false;
        }
        return true;
    }

    // C induced in D by name
    inline auto induced_by_name(const Structure & c, const Structure & d) -> bool
    {
        for (auto & n : c.names())
            if (! d.find(n))
                return false;
        for (int r = 0 ; r < d.signature().size() ; ++r) {
            auto cr = c.signature().find(d.signature()[r].name);
            std::set<std::vector<std::string>> in_d, in_c;
            for (auto & t : d.table(r)) {
                std::vector<std::string> named;
                bool inside = true;
                for (auto e : t) {
                    named.push_back(d.name(e));
                    inside = inside && c.find(d.name(e));
                }
                if (inside)
                    in_d.insert(named);
            }
            if (cr)
                for (auto & t : c.table(*cr)) {
                    std::vector<std::string> named;
                    for (auto e : t)
                        named.push_back(c.name(e));
                    in_c.insert(named);
                }
            if (in_c != in_d)
                return false;
        }
        return true;
    }

    struct Extension
    {
        const Structure * c;
        const Structure * d;
        /// per nonidentity partial iso of c, the chosen automorphism of d
        std::map<Map, P> phi;
    };

    /// Substructure, automorphisms, extension, completeness, inverse law,
    /// minimality; T-freeness separately.
    inline auto verify(const Extension & e, const std::vector<Structure> & forbidden, std::string * why = nullptr) -> bool
    {
        auto fail = [&] (const std::string & s) { if (why) *why = s; return false; };
        auto & c = *e.c;
        auto & d = *e.d;
        if (! induced_by_name(c, d))
            return fail("not induced");
        auto members = partial_isos(c, true);
        if (members.size() != e.phi.size())
            return fail("phi incomplete");
        for (auto & m : members) {
            auto i = e.phi.find(m);
            if (i == e.phi.end())
                return fail("phi misses a member");
            if (! is_automorphism(d, i->second))
                return fail("not an automorphism");
            for (auto & [a, b] : m)
                if (i->second[d.at(c.name(a))] != d.at(c.name(b)))
                    return fail("does not extend");
            Map inverse;
            for (auto & [a, b] : m)
                inverse[b] = a;
            if (e.phi.at(inverse) != inv(i->second))
                return fail("inverse law");
        }
        std::set<Element> reach;
        std::vector<Element> stack;
        for (auto & n : c.names()) {
            reach.insert(d.at(n));
            stack.push_back(d.at(n));
        }
        while (! stack.empty()) {
            auto x = stack.back();
            stack.pop_back();
            for (auto & [_, p] : e.phi)
                if (reach.insert(p[x]).second)
                    stack.push_back(p[x]);
        }
        if (int(reach.size()) != d.size())
            return fail("not minimal");
        if (! t_free(d, forbidden))
            return fail("not T-free");
        return true;
    }

    /// Distinct images of all words over the generators on both sides; true
    /// if any two words agree on the first and differ on the second.
    inline auto word_kernel_leaks(int n1, const std::vector<P> & g1, int n2, const std::vector<P> & g2) -> bool
    {
        std::map<P, P> seen;
        std::queue<std::pair<P, P>> todo;
        seen.emplace(id(n1), id(n2));
        todo.emplace(id(n1), id(n2));
        while (! todo.empty()) {
            auto [a, b] = todo.front();
            todo.pop();
            for (unsigned k = 0 ; k < g1.size() ; ++k)
                for (int s : {1, -1}) {
                    auto x = mul(s == 1 ? g1[k] : inv(g1[k]), a);
                    auto y = mul(s == 1 ? g2[k] : inv(g2[k]), b);
                    auto [where, fresh] = seen.emplace(x, y);
                    if (! fresh && where->second != y)
                        return true;
                    if (fresh)
                        todo.emplace(x, y);
                }
        }
        return false;
    }

    /// Leftmost letter applied last; letters are (generator, ±1).
    inline auto eval_word(int n, const std::vector<std::pair<int, int>> & letters, const std::vector<P> & images) -> P
    {
        auto r = id(n);
        for (auto & [g, sign] : letters)
            r = mul(r, sign == 1 ? images[g] : inv(images[g]));
        return r;
    }

    /// x_lhs H = x_var c H over an explicit finite group; var -1 is the identity.
    struct CosetEquation
    {
        int lhs;
        const std::set<P> * h;
        int var;
        P c;
    };

    // every assignment of group elements to the variables
    inline auto solvable(const std::set<P> & group, int variables, const std::vector<CosetEquation> & eqs) -> bool
    {
        std::vector<P> elements(group.begin(), group.end());
        if (elements.empty())
            return false;
        int n = int(elements[0].size());
        std::vector<int> ix(variables, 0);
        while (true) {
            bool ok = true;
            for (auto & eq : eqs) {
                auto & u = elements[ix[eq.lhs]];
                auto v = eq.var == -1 ? id(n) : elements[ix[eq.var]];
                if (left_coset(u, *eq.h) != left_coset(mul(v, eq.c), *eq.h)) {
                    ok = false;
                    break;
                }
            }
            if (ok)
                return true;
            int j = variables - 1;
            while (j >= 0 && ++ix[j] == int(elements.size()))
                ix[j--] = 0;
            if (j < 0)
                return false;
        }
    }

    inline auto random_perm(int n, std::mt19937_64 & rng) -> P
    {
        auto p = id(n);
        std::shuffle(p.begin(), p.end(), rng);
        return p;
    }
}

#endif
