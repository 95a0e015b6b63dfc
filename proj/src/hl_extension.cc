/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eppa/hl_extension.hh>

#include <algorithm>
#include <deque>
#include <map>
#include <set>

using std::deque;
using std::make_shared;
using std::map;
using std::nullopt;
using std::optional;
using std::pair;
using std::set;
using std::shared_ptr;
using std::string;
using std::vector;

namespace eppa
{
    HLExtension::HLExtension(shared_ptr<const Structure> b, Structure e, PartialIsoSet p, vector<optional<Perm>> f) :
        base(std::move(b)),
        ext(std::move(e)),
        pc(std::move(p)),
        phi(std::move(f))
    {
        for (int c = 0 ; c < base->size() ; ++c) {
            auto d = ext.find(base->name(c));
            if (! d)
                throw InputError("extension does not contain base element '" + base->name(c) + "'");
            embed.push_back(*d);
        }
        if (int(phi.size()) != pc.size())
            throw InputError("phi must have one slot per member of P_C");
        for (int k = 0 ; k < pc.size() ; ++k)
            if (! phi[k] && phi[pc.inverse_of(k)])
                phi[k] = phi[pc.inverse_of(k)]->inverse();
    }

    auto HLExtension::image(int member) const -> const Perm &
    {
        if (! phi.at(member))
            throw InputError("phi has no image for member p" + std::to_string(member));
        return *phi[member];
    }

    auto HLExtension::generator_images() const -> vector<Perm>
    {
        vector<Perm> result;
        for (int g = 0 ; g < pc.generator_count() ; ++g)
            result.push_back(image(pc.generator_member(g)));
        return result;
    }

    auto closure_of_base(const HLExtension & e) -> vector<Element>
    {
        vector<char> seen(e.ext.size(), 0);
        deque<Element> queue;
        for (auto d : e.embed)
            if (! seen[d]) {
                seen[d] = 1;
                queue.push_back(d);
            }
        vector<Perm> perms;
        for (auto & p : e.phi)
            if (p && p->degree() == e.ext.size())
                perms.push_back(*p);
        while (! queue.empty()) {
            auto x = queue.front();
            queue.pop_front();
            for (auto & p : perms)
                if (! seen[p(x)]) {
                    seen[p(x)] = 1;
                    queue.push_back(p(x));
                }
        }
        vector<Element> result;
        for (int x = 0 ; x < e.ext.size() ; ++x)
            if (seen[x])
                result.push_back(x);
        return result;
    }

    auto is_minimal(const HLExtension & e) -> bool
    {
        return int(closure_of_base(e).size()) == e.ext.size();
    }

    auto shrink_to_closure(const HLExtension & e) -> HLExtension
    {
        auto points = closure_of_base(e);
        vector<int> index(e.ext.size(), -1);
        for (unsigned i = 0 ; i < points.size() ; ++i)
            index[points[i]] = int(i);
        auto smaller = induced_substructure(e.ext, points);
        vector<optional<Perm>> phi;
        for (auto & p : e.phi) {
            if (! p) {
                phi.emplace_back();
                continue;
            }
            vector<int> images;
            for (auto x : points)
                images.push_back(index[(*p)(x)]);
            phi.emplace_back(Perm{images});
        }
        return HLExtension{e.base, std::move(smaller), e.pc, std::move(phi)};
    }

    auto verify_hl_extension(const HLExtension & e, const vector<Structure> & forbidden) -> HLReport
    {
        HLReport r;
        const auto & c = *e.base;
        const auto & d = e.ext;

        r.substructure = is_induced_substructure(c, d);
        if (! r.substructure)
            r.findings.push_back("base is not an induced substructure of the extension");

        r.complete = true;
        for (int k = 0 ; k < e.pc.size() ; ++k)
            if (! e.phi[k] || e.phi[k]->degree() != d.size()) {
                r.complete = false;
                r.findings.push_back("no permutation of the extension for " + to_string(c, e.pc[k]));
            }

        r.automorphisms = true;
        r.extends = true;
        for (int k = 0 ; k < e.pc.size() ; ++k) {
            if (! e.phi[k] || e.phi[k]->degree() != d.size())
                continue;
            auto & p = *e.phi[k];
            bool automorphism = true;
            for (int s = 0 ; s < d.signature().size() && automorphism ; ++s)
                for (auto & t : d.table(s)) {
                    Tuple image;
                    for (auto x : t)
                        image.push_back(p(x));
                    if (! d.holds(s, image)) {
                        automorphism = false;
                        break;
                    }
                }
            if (! automorphism) {
                r.automorphisms = false;
                r.findings.push_back("image of " + to_string(c, e.pc[k]) + " is not an automorphism");
            }
            for (auto & [a, b] : e.pc[k].graph())
                if (p(e.embed[a]) != e.embed[b]) {
                    r.extends = false;
                    r.findings.push_back("image of " + to_string(c, e.pc[k]) + " does not extend it at " + c.name(a));
                    break;
                }
        }

        r.involution = true;
        for (int k = 0 ; k < e.pc.size() ; ++k) {
            int j = e.pc.inverse_of(k);
            if (j <= k || ! e.phi[k] || ! e.phi[j])
                continue;
            if (*e.phi[j] != e.phi[k]->inverse()) {
                r.involution = false;
                r.warnings.push_back("images of " + to_string(c, e.pc[k]) + " and its inverse are not mutually inverse");
            }
        }

        auto tf = is_t_free(d, forbidden);
        r.t_free = tf.free;
        if (! tf.free) {
            r.findings.push_back("forbidden structure " + std::to_string(*tf.which) + " maps into the extension");
            r.t_witness = tf;
        }

        r.minimal = is_minimal(e);
        return r;
    }

    namespace
    {
        auto fresh_names(const vector<string> & existing, int count) -> vector<string>
        {
            set<string> taken(existing.begin(), existing.end());
            vector<string> result = existing;
            for (int k = 0 ; k < count ; ++k) {
                string name = "d" + std::to_string(existing.size() + k);
                while (taken.contains(name))
                    name += "'";
                taken.insert(name);
                result.push_back(name);
            }
            return result;
        }

        auto build_ext(const Signature & sig, const vector<string> & initial_names, const ActionSolution & s) -> Structure
        {
            auto names = fresh_names(initial_names, s.size - int(initial_names.size()));
            return Structure{sig, names, s.tables};
        }

        /// First maximal member of `ps` containing member k.
        auto first_maximal_over(const PartialIsoSet & ps, const vector<int> & maximal, int k) -> int
        {
            for (auto q : maximal)
                if (ps[q].extends(ps[k]))
                    return q;
            throw VerificationFailure("no maximal partial isomorphism contains p" + std::to_string(k));
        }

        struct Reduction
        {
            /// Per search generator, the member whose graph it must contain.
            vector<int> search_member;
            map<int, int> pair_index;

            auto generator_for(const PartialIsoSet & ps, int q) -> pair<int, int>
            {
                int first = std::min(q, ps.inverse_of(q));
                auto [i, inserted] = pair_index.emplace(first, int(search_member.size()));
                if (inserted)
                    search_member.push_back(first);
                return {i->second, q == first ? 1 : -1};
            }
        };

        auto power(const Perm & p, int sign) -> Perm
        {
            return sign == 1 ? p : p.inverse();
        }
    }

    auto find_hl_extension(shared_ptr<const Structure> c, const vector<Structure> & forbidden,
            int max_size, long budget) -> ExtensionSearchResult
    {
        auto ps = enumerate_partial_isos(c);
        auto maximal = maximal_members(ps);

        Reduction red;
        vector<pair<int, int>> via(ps.size());
        for (int g = 0 ; g < ps.generator_count() ; ++g) {
            int r = ps.generator_member(g);
            via[r] = red.generator_for(ps, first_maximal_over(ps, maximal, r));
        }

        ActionProblem problem;
        problem.signature = c->signature();
        problem.initial_size = c->size();
        problem.initial_tables = c->tables();
        problem.regions.assign(c->size(), 1);
        for (auto m : red.search_member)
            problem.generator_maps.push_back(ps[m].graph());
        problem.forbidden = forbidden;
        problem.max_size = max_size;
        problem.budget = budget;

        auto found = search_action(problem);
        ExtensionSearchResult result;
        result.status = found.status;
        result.max_size = max_size;
        result.refuted_up_to = found.refuted_up_to;
        result.nodes = found.nodes;
        if (! found.solution)
            return result;

        auto ext = build_ext(c->signature(), c->names(), *found.solution);
        vector<optional<Perm>> phi(ps.size());
        for (int g = 0 ; g < ps.generator_count() ; ++g) {
            int r = ps.generator_member(g);
            auto [i, sign] = via[r];
            phi[r] = power(found.solution->perms[i], sign);
            if (ps.inverse_of(r) != r)
                phi[ps.inverse_of(r)] = phi[r]->inverse();
        }
        HLExtension e{c, std::move(ext), std::move(ps), std::move(phi)};
        auto report = verify_hl_extension(e, forbidden);
        if (! report.all())
            throw VerificationFailure("search returned an extension that fails verification");
        result.extension = std::move(e);
        return result;
    }

    auto translate_member(const PartialIsoSet & from, int k, const PartialIsoSet & to) -> optional<int>
    {
        vector<pair<Element, Element>> graph;
        for (auto & [a, b] : from[k].graph()) {
            auto x = to.base().find(from.base().name(a));
            auto y = to.base().find(from.base().name(b));
            if (! x || ! y)
                return nullopt;
            graph.emplace_back(*x, *y);
        }
        return to.find(PartialIso{graph});
    }

    namespace
    {
        auto restriction_perms(const HLExtension & e) -> vector<Perm>
        {
            vector<Perm> result;
            for (int k = 0 ; k < e.pc.size() ; ++k)
                result.push_back(e.image(k));
            return result;
        }
    }

    auto check_coherent(const HLExtension & e1, const HLExtension & e2, long cap) -> CoherenceReport
    {
        CoherenceReport r;
        r.base_nested = is_induced_substructure(*e1.base, *e2.base);
        if (! r.base_nested)
            r.findings.push_back("C1 is not an induced substructure of C2");
        r.ext_nested = is_induced_substructure(e1.ext, e2.ext);
        if (! r.ext_nested)
            r.findings.push_back("D1 is not an induced substructure of D2");
        if (! r.base_nested || ! r.ext_nested)
            return r;

        vector<Element> d1_in_d2;
        for (int x = 0 ; x < e1.ext.size() ; ++x)
            d1_in_d2.push_back(e2.ext.at(e1.ext.name(x)));

        r.restricts = true;
        vector<Perm> k2_gens;
        for (int k = 0 ; k < e1.pc.size() ; ++k) {
            auto k2 = translate_member(e1.pc, k, e2.pc);
            if (! k2 || ! e2.phi[*k2] || ! e1.phi[k]) {
                r.restricts = false;
                r.findings.push_back("no image in the larger extension for " + to_string(*e1.base, e1.pc[k]));
                continue;
            }
            auto & p1 = *e1.phi[k];
            auto & p2 = *e2.phi[*k2];
            k2_gens.push_back(p2);
            for (int x = 0 ; x < e1.ext.size() ; ++x)
                if (p2(d1_in_d2[x]) != d1_in_d2[p1(x)]) {
                    r.restricts = false;
                    r.findings.push_back("image of " + to_string(*e1.base, e1.pc[k]) + " does not extend its image at "
                            + e1.ext.name(x));
                    break;
                }
        }
        if (! r.restricts)
            return r;

        r.order_k1 = close_group(e1.ext.size(), restriction_perms(e1), cap).order();
        r.order_k2 = close_group(e2.ext.size(), k2_gens, cap).order();
        r.coherent = r.order_k1 == r.order_k2;
        if (! r.coherent)
            r.findings.push_back("the restriction from K2' onto K1 is not injective ("
                    + std::to_string(r.order_k2) + " vs " + std::to_string(r.order_k1) + ")");
        return r;
    }

    auto find_coherent_extension(shared_ptr<const Structure> c2, const HLExtension & e1,
            const vector<Structure> & forbidden, int max_size, long budget) -> ExtensionSearchResult
    {
        const auto & c1 = *e1.base;
        const auto & d1 = e1.ext;
        if (! is_induced_substructure(c1, *c2))
            throw InputError("C1 is not an induced substructure of C2");
        for (int x = 0 ; x < c2->size() ; ++x)
            if (! c1.find(c2->name(x)) && d1.find(c2->name(x)))
                throw InputError("id '" + c2->name(x) + "' is used by both D1 and C2 outside C1");

        return find_coherent_extension(c2, e1, free_amalgamation(d1, *c2, c1), forbidden, max_size, budget);
    }

    auto find_coherent_extension(shared_ptr<const Structure> c2, const HLExtension & e1, const Structure & start,
            const vector<Structure> & forbidden, int max_size, long budget) -> ExtensionSearchResult
    {
        const auto & c1 = *e1.base;
        const auto & d1 = e1.ext;
        if (! is_induced_substructure(c1, *c2))
            throw InputError("C1 is not an induced substructure of C2");
        if (! is_induced_substructure(d1, start) || ! is_induced_substructure(*c2, start))
            throw InputError("start structure does not contain D1 and C2 as induced substructures");

        vector<Element> c2_in_start, d1_in_start;
        for (int x = 0 ; x < c2->size() ; ++x)
            c2_in_start.push_back(start.at(c2->name(x)));
        for (int x = 0 ; x < d1.size() ; ++x)
            d1_in_start.push_back(start.at(d1.name(x)));

        auto ps = enumerate_partial_isos(c2);
        auto maximal = maximal_members(ps);

        // Members inside C1 carry φ1 and are merged by that image, since the
        // restriction to D1 must be injective on them.
        vector<Perm> keys;
        vector<pair<int, int>> via(ps.size(), {-1, 0});
        for (int k = 0 ; k < ps.size() ; ++k) {
            auto k1 = translate_member(ps, k, e1.pc);
            if (! k1)
                continue;
            auto & p = e1.image(*k1);
            auto inv = p.inverse();
            auto & key = std::min(p, inv);
            auto i = std::find(keys.begin(), keys.end(), key);
            int index = int(i - keys.begin());
            if (i == keys.end())
                keys.push_back(key);
            via[k] = {index, p == key ? 1 : -1};
        }

        vector<vector<pair<Element, Element>>> maps;
        for (auto & key : keys) {
            vector<pair<Element, Element>> graph;
            for (int x = 0 ; x < d1.size() ; ++x)
                graph.emplace_back(d1_in_start[x], d1_in_start[key(x)]);
            maps.push_back(graph);
        }

        Reduction red;
        vector<int> rest_first;
        for (int g = 0 ; g < ps.generator_count() ; ++g) {
            int r = ps.generator_member(g);
            if (via[r].first != -1)
                continue;
            auto [i, sign] = red.generator_for(ps, first_maximal_over(ps, maximal, r));
            via[r] = {int(keys.size()) + i, sign};
            if (ps.inverse_of(r) != r)
                via[ps.inverse_of(r)] = {int(keys.size()) + i, -sign};
        }
        for (auto m : red.search_member) {
            vector<pair<Element, Element>> graph;
            for (auto & [a, b] : ps[m].graph())
                graph.emplace_back(c2_in_start[a], c2_in_start[b]);
            maps.push_back(graph);
        }

        // relators of K1 from a breadth-first spanning tree of its elements
        long k1_order = 0;
        vector<Word> relators;
        {
            map<Perm, Word> tree;
            deque<Perm> queue;
            auto id = Perm::identity(d1.size());
            tree.emplace(id, Word{});
            queue.push_back(id);
            set<Word> seen;
            while (! queue.empty()) {
                auto h = queue.front();
                queue.pop_front();
                for (int j = 0 ; j < int(keys.size()) ; ++j) {
                    auto sh = keys[j] * h;
                    auto w = Word::generator(j) * tree.at(h);
                    auto i = tree.find(sh);
                    if (i == tree.end()) {
                        if (long(tree.size()) >= 20000)
                            throw CapExceeded("K1 exceeds 20000 elements");
                        tree.emplace(sh, w);
                        queue.push_back(sh);
                    }
                    else {
                        auto rel = i->second.inverse() * w;
                        if (! rel.empty() && seen.insert(rel).second)
                            relators.push_back(rel);
                    }
                }
            }
            k1_order = long(tree.size());
        }

        ActionProblem problem;
        problem.signature = c2->signature();
        problem.initial_size = start.size();
        problem.initial_tables = start.tables();
        problem.regions.assign(start.size(), 0);
        for (auto x : d1_in_start)
            problem.regions[x] |= 1;
        for (auto x : c2_in_start)
            problem.regions[x] |= 2;
        problem.generator_maps = maps;
        problem.forbidden = forbidden;
        problem.relators = relators;
        int key_count = int(keys.size());
        problem.accept = [key_count, k1_order] (const vector<Perm> & perms, int n) {
            vector<Perm> gens(perms.begin(), perms.begin() + key_count);
            try {
                return close_group(n, gens, k1_order).order() == k1_order;
            }
            catch (const CapExceeded &) {
                return false;
            }
        };
        problem.max_size = max_size;
        problem.budget = budget;

        auto found = search_action(problem);
        ExtensionSearchResult result;
        result.status = found.status;
        result.max_size = max_size;
        result.refuted_up_to = found.refuted_up_to;
        result.nodes = found.nodes;
        if (! found.solution)
            return result;

        auto ext = build_ext(c2->signature(), start.names(), *found.solution);
        vector<optional<Perm>> phi(ps.size());
        for (int k = 0 ; k < ps.size() ; ++k)
            if (via[k].first != -1)
                phi[k] = power(found.solution->perms[via[k].first], via[k].second);
        // members reduced through a maximal one and not yet covered
        for (int g = 0 ; g < ps.generator_count() ; ++g) {
            int r = ps.generator_member(g);
            if (! phi[r])
                throw VerificationFailure("no image assigned for p" + std::to_string(r));
        }

        HLExtension e{c2, std::move(ext), std::move(ps), std::move(phi)};
        auto report = verify_hl_extension(e, forbidden);
        auto coherence = check_coherent(e1, e);
        if (! report.all() || ! coherence.coherent)
            throw VerificationFailure("coherent search returned an extension that fails verification");
        result.extension = std::move(e);
        return result;
    }
}
