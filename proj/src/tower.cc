/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eppa/tower.hh>

#include <algorithm>
#include <functional>
#include <set>

using std::make_shared;
using std::optional;
using std::set;
using std::shared_ptr;
using std::string;
using std::vector;

namespace eppa
{
    namespace
    {
        // by size, then lexicographically
        auto all_subsets(int n) -> vector<vector<Element>>
        {
            vector<vector<Element>> result;
            for (unsigned long mask = 0 ; mask < (1ul << n) ; ++mask) {
                vector<Element> s;
                for (int x = 0 ; x < n ; ++x)
                    if (mask & (1ul << x))
                        s.push_back(x);
                result.push_back(s);
            }
            std::sort(result.begin(), result.end(), [] (const vector<Element> & a, const vector<Element> & b) {
                return a.size() != b.size() ? a.size() < b.size() : a < b;
            });
            return result;
        }

        auto subset_of(const vector<Element> & a, const vector<Element> & b) -> bool
        {
            return std::includes(b.begin(), b.end(), a.begin(), a.end());
        }

        auto automorphisms(const Structure & s) -> vector<Perm>
        {
            int n = s.size();
            // tuples checked once their largest element is mapped
            vector<vector<std::pair<int, Tuple>>> due(n);
            for (int r = 0 ; r < s.signature().size() ; ++r)
                for (auto & t : s.table(r))
                    due[*std::max_element(t.begin(), t.end())].emplace_back(r, t);

            vector<Perm> result;
            vector<int> image(n, -1);
            vector<char> used(n, 0);
            std::function<void (int)> extend = [&] (int x) {
                if (x == n) {
                    result.emplace_back(image);
                    return;
                }
                for (int y = 0 ; y < n ; ++y) {
                    if (used[y])
                        continue;
                    image[x] = y;
                    bool ok = true;
                    for (auto & [r, t] : due[x]) {
                        Tuple u;
                        for (auto e : t)
                            u.push_back(image[e]);
                        if (! s.holds(r, u)) {
                            ok = false;
                            break;
                        }
                    }
                    if (ok) {
                        used[y] = 1;
                        extend(x + 1);
                        used[y] = 0;
                    }
                }
                image[x] = -1;
            };
            extend(0);
            std::sort(result.begin(), result.end());
            return result;
        }

        // Up to `limit` minimal HL-extensions of d with domain e, with φ
        // chosen lexicographically per generator.
        auto minimal_extensions(const shared_ptr<const Structure> & d, const PartialIsoSet & pc, const Structure & e,
                int limit, bool & exhausted) -> vector<HLExtension>
        {
            vector<HLExtension> result;
            auto auts = automorphisms(e);
            vector<vector<int>> candidates;
            for (int g = 0 ; g < pc.generator_count() ; ++g) {
                int m = pc.generator_member(g);
                bool self_inverse = pc.inverse_of(m) == m;
                candidates.emplace_back();
                for (int a = 0 ; a < int(auts.size()) ; ++a) {
                    bool extends = true;
                    for (auto & [x, y] : pc[m].graph())
                        if (auts[a](e.at(d->name(x))) != e.at(d->name(y)))
                            extends = false;
                    if (extends && (! self_inverse || (auts[a] * auts[a]).is_identity()))
                        candidates.back().push_back(a);
                }
                if (candidates.back().empty())
                    return result;
            }

            long leaves = 0;
            vector<int> choice(pc.generator_count(), 0);
            while (true) {
                if (++leaves > 64L * limit) {
                    exhausted = false;
                    return result;
                }
                vector<optional<Perm>> phi(pc.size());
                for (int g = 0 ; g < pc.generator_count() ; ++g)
                    phi[pc.generator_member(g)] = auts[candidates[g][choice[g]]];
                HLExtension ext{d, e, pc, phi};
                if (is_minimal(ext)) {
                    if (int(result.size()) == limit) {
                        exhausted = false;
                        return result;
                    }
                    result.push_back(std::move(ext));
                }
                int g = int(choice.size()) - 1;
                while (g >= 0 && ++choice[g] == int(candidates[g].size()))
                    choice[g--] = 0;
                if (g < 0)
                    break;
            }
            return result;
        }

        auto renamed(const Structure & s, const vector<string> & names) -> Structure
        {
            return Structure{s.signature(), names, s.tables()};
        }

        void build_z(TowerLevel & level, const vector<Structure> & forbidden, const TowerOptions & options)
        {
            auto & dn = level.ext.ext;
            auto subsets = all_subsets(dn.size());
            level.z = dn;
            level.triples_complete = true;
            int processed = 0, fresh = 0;

            for (auto & d : subsets) {
                auto d_ptr = make_shared<const Structure>(induced_substructure(dn, d));
                auto pc = enumerate_partial_isos(d_ptr);
                for (auto & e_set : subsets) {
                    if (! subset_of(d, e_set))
                        continue;
                    bool exhausted = true;
                    auto exts = minimal_extensions(d_ptr, pc, induced_substructure(dn, e_set), 4, exhausted);
                    if (! exhausted)
                        level.triples_complete = false;
                    for (auto & e : exts)
                        for (auto & d_prime : subsets) {
                            if (d_prime.size() == d.size() || ! subset_of(d, d_prime))
                                continue;
                            if (processed == options.triple_cap) {
                                level.triples_complete = false;
                                return;
                            }
                            ++processed;

                            vector<Element> both;
                            std::set_union(e_set.begin(), e_set.end(), d_prime.begin(), d_prime.end(), std::back_inserter(both));
                            auto start = induced_substructure(dn, both);
                            auto dp_ptr = make_shared<const Structure>(induced_substructure(dn, d_prime));

                            TripleRecord record;
                            record.d = d_ptr->names();
                            record.d_prime = dp_ptr->names();
                            record.e = e;
                            auto found = find_coherent_extension(dp_ptr, e, start, forbidden,
                                    std::max(options.max_size, start.size()), options.budget);
                            record.status = found.status;
                            if (! found.extension) {
                                level.triples_complete = false;
                                level.triples.push_back(std::move(record));
                                continue;
                            }

                            auto names = found.extension->ext.names();
                            for (auto & nm : names)
                                if (! start.find(nm)) {
                                    string candidate;
                                    do
                                        candidate = "z" + std::to_string(level.index) + "." + std::to_string(++fresh);
                                    while (level.z.find(candidate));
                                    nm = candidate;
                                }
                            HLExtension e_prime{dp_ptr, renamed(found.extension->ext, names), found.extension->pc,
                                found.extension->phi};
                            level.z = free_amalgamation(level.z, e_prime.ext, start);
                            record.e_prime = std::move(e_prime);
                            level.triples.push_back(std::move(record));
                        }
                }
            }
        }
    }

    auto build_tower(const vector<Structure> & seed, const vector<Structure> & forbidden, int levels,
            const TowerOptions & options) -> TowerResult
    {
        for (unsigned t = 0 ; t < forbidden.size() ; ++t)
            if (! is_gaifman_clique(forbidden[t]))
                throw InputError("forbidden structure " + std::to_string(t + 1) + " is not a Gaifman clique");
        if (seed.empty())
            throw InputError("empty seed chain");
        for (unsigned i = 0 ; i < seed.size() ; ++i) {
            if (! is_t_free(seed[i], forbidden).free)
                throw InputError("seed structure " + std::to_string(i + 1) + " is not T-free");
            if (i > 0 && ! is_induced_substructure(seed[i - 1], seed[i]))
                throw InputError("seed structure " + std::to_string(i) + " is not induced in the next one");
        }
        auto f = [&] (int n) -> const Structure & { return seed[std::min<int>(n, seed.size()) - 1]; };

        TowerResult result;
        auto c = make_shared<const Structure>(f(1));
        for (int n = 1 ; n <= levels ; ++n) {
            TowerLevel level;
            level.index = n;
            level.c = c;

            auto found = n == 1
                ? find_hl_extension(c, forbidden, std::max(options.max_size, c->size()), options.budget)
                : find_coherent_extension(c, result.levels.back().ext, *c, forbidden,
                        std::max(options.max_size, c->size()), options.budget);
            if (! found.extension) {
                result.status = found.status == SearchStatus::budget ? SearchStatus::budget : SearchStatus::none;
                result.findings.push_back("level " + std::to_string(n) + ": no extension within "
                        + std::to_string(found.max_size) + " points (" + to_string(found.status) + ")");
                break;
            }
            level.ext = std::move(*found.extension);

            build_z(level, forbidden, options);
            level.next_c = free_amalgamation(level.z, f(n + 1), f(n));

            auto & ch = level.checks;
            ch.t_free = is_t_free(*c, forbidden).free && is_t_free(level.ext.ext, forbidden).free
                && is_t_free(level.z, forbidden).free;
            if (! ch.t_free)
                ch.findings.push_back("a level structure admits a forbidden homomorphism");
            auto report = verify_hl_extension(level.ext, forbidden);
            ch.minimal = report.all();
            for (auto & x : report.findings)
                ch.findings.push_back(x);
            if (n == 1)
                ch.coherent = true;
            else {
                auto coherence = check_coherent(result.levels.back().ext, level.ext);
                ch.coherent = coherence.coherent;
                for (auto & x : coherence.findings)
                    ch.findings.push_back(x);
            }
            ch.nested = is_induced_substructure(*c, level.ext.ext) && is_induced_substructure(level.ext.ext, level.z)
                && is_induced_substructure(level.z, level.next_c);
            if (! ch.nested)
                ch.findings.push_back("C_n, D_n, Z_n, C_n+1 are not nested as induced substructures");
            for (auto & t : level.triples)
                if (t.e_prime) {
                    auto rep = verify_hl_extension(*t.e_prime, forbidden);
                    auto coh = check_coherent(t.e, *t.e_prime);
                    if (! rep.all() || ! coh.coherent || ! is_induced_substructure(t.e_prime->ext, level.z))
                        ch.findings.push_back("triple E' fails verification");
                }

            c = make_shared<const Structure>(level.next_c);
            result.levels.push_back(std::move(level));
        }
        return result;
    }

    auto chain_report(const TowerResult & tower, long cap) -> ChainReport
    {
        ChainReport result;
        result.certified = ! tower.levels.empty();
        for (unsigned n = 0 ; n < tower.levels.size() ; ++n) {
            auto & level = tower.levels[n];
            LevelStatistics s;
            s.index = level.index;
            s.d_size = level.ext.ext.size();
            auto k = close_group(s.d_size, level.ext.generator_images(), cap);
            s.k_order = k.order();
            vector<char> seen(s.d_size, 0);
            for (int x = 0 ; x < s.d_size ; ++x)
                if (! seen[x]) {
                    auto o = orbit(k, x);
                    for (auto y : o)
                        seen[y] = 1;
                    s.orbit_sizes.push_back(o.size());
                }
            if (n > 0) {
                s.link = check_coherent(tower.levels[n - 1].ext, level.ext, cap);
                s.embeds = s.link->coherent;
                if (! *s.embeds)
                    result.certified = false;
            }
            if (! level.checks.all())
                result.certified = false;
            result.levels.push_back(std::move(s));
        }
        return result;
    }
}
