/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eppa/partial_iso.hh>

#include <algorithm>
#include <map>

using std::make_shared;
using std::map;
using std::nullopt;
using std::optional;
using std::pair;
using std::shared_ptr;
using std::string;
using std::vector;

namespace eppa
{
    PartialIso::PartialIso(vector<pair<Element, Element>> graph) :
        _graph(std::move(graph))
    {
        std::sort(_graph.begin(), _graph.end());
        for (unsigned i = 1 ; i < _graph.size() ; ++i)
            if (_graph[i].first == _graph[i - 1].first)
                throw InputError("partial map is not a function");
        auto r = range();
        if (std::adjacent_find(r.begin(), r.end()) != r.end())
            throw InputError("partial map is not injective");
    }

    auto PartialIso::apply(Element a) const -> optional<Element>
    {
        auto i = std::lower_bound(_graph.begin(), _graph.end(), pair{a, -1});
        if (i == _graph.end() || i->first != a)
            return nullopt;
        return i->second;
    }

    auto PartialIso::preimage(Element b) const -> optional<Element>
    {
        for (auto & [x, y] : _graph)
            if (y == b)
                return x;
        return nullopt;
    }

    auto PartialIso::domain() const -> vector<Element>
    {
        vector<Element> result;
        for (auto & [x, _] : _graph)
            result.push_back(x);
        return result;
    }

    auto PartialIso::range() const -> vector<Element>
    {
        vector<Element> result;
        for (auto & [_, y] : _graph)
            result.push_back(y);
        std::sort(result.begin(), result.end());
        return result;
    }

    auto PartialIso::is_identity_restriction() const -> bool
    {
        return std::all_of(_graph.begin(), _graph.end(), [] (const auto & xy) { return xy.first == xy.second; });
    }

    auto PartialIso::extends(const PartialIso & smaller) const -> bool
    {
        return std::includes(_graph.begin(), _graph.end(), smaller._graph.begin(), smaller._graph.end());
    }

    auto canonical_less(const PartialIso & a, const PartialIso & b) -> bool
    {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a.graph() < b.graph();
    }

    auto is_partial_iso(const Structure & c, const PartialIso & p) -> bool
    {
        for (auto & [x, y] : p.graph())
            if (x < 0 || x >= c.size() || y < 0 || y >= c.size())
                return false;

        vector<int> fwd(c.size(), -1), bwd(c.size(), -1);
        for (auto & [x, y] : p.graph()) {
            fwd[x] = y;
            bwd[y] = x;
        }

        for (int s = 0 ; s < c.signature().size() ; ++s)
            for (auto & t : c.table(s)) {
                Tuple image, pre;
                bool in_dom = true, in_range = true;
                for (auto e : t) {
                    if (fwd[e] == -1)
                        in_dom = false;
                    else
                        image.push_back(fwd[e]);
                    if (bwd[e] == -1)
                        in_range = false;
                    else
                        pre.push_back(bwd[e]);
                }
                if (in_dom && ! c.holds(s, image))
                    return false;
                if (in_range && ! c.holds(s, pre))
                    return false;
            }
        return true;
    }

    auto is_partial_iso(const Structure & c, const vector<pair<Element, Element>> & m) -> bool
    {
        for (unsigned i = 0 ; i < m.size() ; ++i)
            for (unsigned j = i + 1 ; j < m.size() ; ++j)
                if (m[i].first == m[j].first || m[i].second == m[j].second) {
                    if (m[i] != m[j])
                        return false;
                }
        vector<pair<Element, Element>> deduped = m;
        std::sort(deduped.begin(), deduped.end());
        deduped.erase(std::unique(deduped.begin(), deduped.end()), deduped.end());
        return is_partial_iso(c, PartialIso{deduped});
    }

    auto compose_partial(const PartialIso & p, const PartialIso & q) -> PartialIso
    {
        vector<pair<Element, Element>> graph;
        for (auto & [a, qa] : q.graph())
            if (auto pqa = p.apply(qa))
                graph.emplace_back(a, *pqa);
        return PartialIso{graph};
    }

    auto invert_partial(const PartialIso & p) -> PartialIso
    {
        vector<pair<Element, Element>> graph;
        for (auto & [a, b] : p.graph())
            graph.emplace_back(b, a);
        return PartialIso{graph};
    }

    auto to_string(const Structure & c, const PartialIso & p) -> string
    {
        string result = "{";
        bool first = true;
        for (auto & [a, b] : p.graph()) {
            if (! first)
                result += ", ";
            first = false;
            result += c.name(a) + "->" + c.name(b);
        }
        return result + "}";
    }

    PartialIsoSet::PartialIsoSet(shared_ptr<const Structure> base, vector<PartialIso> members, bool nonidentity) :
        _base(std::move(base)),
        _members(std::move(members)),
        _nonidentity(nonidentity)
    {
        map<PartialIso, int> index;
        for (int k = 0 ; k < size() ; ++k)
            if (! index.emplace(_members[k], k).second)
                throw InputError("duplicate member in partial isomorphism set");

        _inverse.assign(size(), -1);
        _generator_of.assign(size(), -1);
        _sign_of.assign(size(), 0);
        for (int k = 0 ; k < size() ; ++k) {
            auto i = index.find(invert_partial(_members[k]));
            if (i == index.end())
                throw InputError("partial isomorphism set is not closed under inverse");
            _inverse[k] = i->second;
        }
        for (int k = 0 ; k < size() ; ++k) {
            if (_generator_of[k] != -1)
                continue;
            int g = int(_generator_members.size());
            _generator_members.push_back(k);
            _generator_of[k] = g;
            _sign_of[k] = 1;
            if (_inverse[k] != k) {
                _generator_of[_inverse[k]] = g;
                _sign_of[_inverse[k]] = -1;
            }
        }
    }

    auto PartialIsoSet::find(const PartialIso & p) const -> optional<int>
    {
        auto i = std::lower_bound(_members.begin(), _members.end(), p, canonical_less);
        if (i != _members.end() && *i == p)
            return int(i - _members.begin());
        // members supplied out of canonical order
        for (int k = 0 ; k < size() ; ++k)
            if (_members[k] == p)
                return k;
        return nullopt;
    }

    auto PartialIsoSet::generator_names() const -> vector<string>
    {
        vector<string> result;
        for (auto k : _generator_members)
            result.push_back("p" + std::to_string(k));
        return result;
    }

    namespace
    {
        /// Per element, the tuples it occurs in.
        struct Incidence
        {
            vector<vector<pair<int, const Tuple *>>> of;

            explicit Incidence(const Structure & c) :
                of(c.size())
            {
                for (int s = 0 ; s < c.signature().size() ; ++s)
                    for (auto & t : c.table(s)) {
                        vector<Element> seen;
                        for (auto e : t)
                            if (std::find(seen.begin(), seen.end(), e) == seen.end()) {
                                seen.push_back(e);
                                of[e].emplace_back(s, &t);
                            }
                    }
            }
        };

        /// Whether adding a -> b to a partial isomorphism (fwd/bwd tables,
        /// a and b not yet used) keeps it one.
        auto can_add(const Structure & c, const Incidence & inc, vector<int> & fwd, vector<int> & bwd, Element a, Element b) -> bool
        {
            fwd[a] = b;
            bwd[b] = a;
            bool ok = true;
            for (auto & [s, t] : inc.of[a]) {
                Tuple image;
                for (auto e : *t) {
                    if (fwd[e] == -1)
                        break;
                    image.push_back(fwd[e]);
                }
                if (image.size() == t->size() && ! c.holds(s, image)) {
                    ok = false;
                    break;
                }
            }
            if (ok)
                for (auto & [s, t] : inc.of[b]) {
                    Tuple pre;
                    for (auto e : *t) {
                        if (bwd[e] == -1)
                            break;
                        pre.push_back(bwd[e]);
                    }
                    if (pre.size() == t->size() && ! c.holds(s, pre)) {
                        ok = false;
                        break;
                    }
                }
            fwd[a] = -1;
            bwd[b] = -1;
            return ok;
        }

        auto enumerate(const Structure & c, const Incidence & inc, int max_dom, long cap, Element next,
                vector<int> & fwd, vector<int> & bwd, vector<pair<Element, Element>> & current, vector<PartialIso> & out) -> void
        {
            if (next == c.size()) {
                if (long(out.size()) >= cap)
                    throw CapExceeded("partial isomorphism enumeration exceeds " + std::to_string(cap) + " members");
                out.emplace_back(current);
                return;
            }

            enumerate(c, inc, max_dom, cap, next + 1, fwd, bwd, current, out);

            if (int(current.size()) >= max_dom)
                return;
            for (Element b = 0 ; b < c.size() ; ++b) {
                if (bwd[b] != -1 || ! can_add(c, inc, fwd, bwd, next, b))
                    continue;
                fwd[next] = b;
                bwd[b] = next;
                current.emplace_back(next, b);
                enumerate(c, inc, max_dom, cap, next + 1, fwd, bwd, current, out);
                current.pop_back();
                fwd[next] = -1;
                bwd[b] = -1;
            }
        }
    }

    auto enumerate_partial_isos(shared_ptr<const Structure> c, optional<int> max_dom, bool nonidentity, long cap) -> PartialIsoSet
    {
        Incidence inc{*c};
        vector<int> fwd(c->size(), -1), bwd(c->size(), -1);
        vector<pair<Element, Element>> current;
        vector<PartialIso> all;
        // the identity restrictions are dropped afterwards, so allow for them
        long headroom = nonidentity ? (c->size() < 40 ? (1l << c->size()) : cap) : 0;
        enumerate(*c, inc, max_dom.value_or(c->size()), cap + headroom, 0, fwd, bwd, current, all);

        vector<PartialIso> members;
        for (auto & p : all)
            if (! nonidentity || ! p.is_identity_restriction())
                members.push_back(std::move(p));
        if (long(members.size()) > cap)
            throw CapExceeded("partial isomorphism enumeration exceeds " + std::to_string(cap) + " members");
        std::sort(members.begin(), members.end(), canonical_less);
        return PartialIsoSet{std::move(c), std::move(members), nonidentity};
    }

    auto enumerate_partial_isos(const Structure & c, optional<int> max_dom, bool nonidentity, long cap) -> PartialIsoSet
    {
        return enumerate_partial_isos(make_shared<const Structure>(c), max_dom, nonidentity, cap);
    }

    auto maximal_members(const PartialIsoSet & ps) -> vector<int>
    {
        const auto & c = ps.base();
        Incidence inc{c};
        vector<int> result;
        vector<int> fwd(c.size(), -1), bwd(c.size(), -1);
        for (int k = 0 ; k < ps.size() ; ++k) {
            for (auto & [a, b] : ps[k].graph()) {
                fwd[a] = b;
                bwd[b] = a;
            }
            bool maximal = true;
            for (Element a = 0 ; a < c.size() && maximal ; ++a) {
                if (fwd[a] != -1)
                    continue;
                for (Element b = 0 ; b < c.size() ; ++b)
                    if (bwd[b] == -1 && can_add(c, inc, fwd, bwd, a, b)) {
                        maximal = false;
                        break;
                    }
            }
            if (maximal)
                result.push_back(k);
            for (auto & [a, b] : ps[k].graph()) {
                fwd[a] = -1;
                bwd[b] = -1;
            }
        }
        return result;
    }
}
