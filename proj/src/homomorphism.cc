/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eppa/homomorphism.hh>

#include <algorithm>
#include <unordered_set>

using std::nullopt;
using std::optional;
using std::unordered_set;
using std::vector;

namespace eppa
{
    namespace
    {
        struct TupleHash
        {
            auto operator() (const Tuple & t) const -> std::size_t
            {
                std::size_t h = 0xcbf29ce484222325ull;
                for (auto e : t) {
                    h ^= std::size_t(e) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
                }
                return h;
            }
        };

        auto mapped(const Tuple & t, const StructureMap & m) -> Tuple
        {
            Tuple result;
            result.reserve(t.size());
            for (auto e : t)
                result.push_back(m.images[e]);
            return result;
        }

        struct SourceTuple
        {
            int symbol;
            Tuple entries;
            vector<Element> distinct;
        };

        constexpr std::size_t support_scan_limit = 4096;

        class HomomorphismSearch
        {
            private:
                const Structure & _source;
                const Structure & _target;
                vector<unordered_set<Tuple, TupleHash>> _target_tables;
                vector<vector<Tuple>> _target_lists;
                vector<char> _full;
                vector<vector<int>> _position;
                vector<SourceTuple> _tuples;
                vector<vector<int>> _tuples_of;
                vector<Element> _assignment;

                auto holds_in_target(int symbol, const Tuple & t) const -> bool
                {
                    return _target_tables[symbol].contains(t);
                }

                auto image_with(const SourceTuple & st, Element free_element, Element value) const -> Tuple
                {
                    Tuple t;
                    t.reserve(st.entries.size());
                    for (auto e : st.entries)
                        t.push_back(e == free_element ? value : _assignment[e]);
                    return t;
                }

                auto single_unassigned(const SourceTuple & st) const -> optional<Element>
                {
                    optional<Element> result;
                    for (auto e : st.distinct)
                        if (_assignment[e] == -1) {
                            if (result)
                                return nullopt;
                            result = e;
                        }
                    return result;
                }

                auto filter(vector<vector<char>> & domains, const SourceTuple & st, Element u) const -> bool
                {
                    bool any = false;
                    for (Element v = 0 ; v < _target.size() ; ++v)
                        if (domains[u][v]) {
                            if (! holds_in_target(st.symbol, image_with(st, u, v)))
                                domains[u][v] = 0;
                            else
                                any = true;
                        }
                    return any;
                }

                // table supports for every entry, to a fixpoint
                auto propagate(vector<vector<char>> & domains, vector<int> queue) const -> bool
                {
                    vector<char> queued(_tuples.size(), 0);
                    for (auto ti : queue)
                        queued[ti] = 1;
                    while (! queue.empty()) {
                        int ti = queue.back();
                        queue.pop_back();
                        queued[ti] = 0;
                        auto & st = _tuples[ti];
                        if (_full[st.symbol])
                            continue;

                        if (_target_lists[st.symbol].size() > support_scan_limit) {
                            auto u = single_unassigned(st);
                            if (u) {
                                if (! filter(domains, st, *u))
                                    return false;
                            }
                            else if (std::all_of(st.distinct.begin(), st.distinct.end(),
                                        [&] (Element e) { return _assignment[e] != -1; })
                                    && ! holds_in_target(st.symbol, image_with(st, -1, -1)))
                                return false;
                            continue;
                        }

                        vector<vector<char>> seen(st.distinct.size(), vector<char>(_target.size(), 0));
                        vector<Element> value(st.distinct.size());
                        for (auto & tt : _target_lists[st.symbol]) {
                            bool fits = true;
                            std::fill(value.begin(), value.end(), -1);
                            for (unsigned j = 0 ; j < tt.size() && fits ; ++j) {
                                auto k = _position[ti][j];
                                if (! domains[st.entries[j]][tt[j]] || (value[k] != -1 && value[k] != tt[j]))
                                    fits = false;
                                else
                                    value[k] = tt[j];
                            }
                            if (fits)
                                for (unsigned k = 0 ; k < value.size() ; ++k)
                                    seen[k][value[k]] = 1;
                        }
                        for (unsigned k = 0 ; k < st.distinct.size() ; ++k) {
                            auto e = st.distinct[k];
                            bool changed = false, any = false;
                            for (Element v = 0 ; v < _target.size() ; ++v)
                                if (domains[e][v]) {
                                    if (! seen[k][v])
                                        domains[e][v] = 0, changed = true;
                                    else
                                        any = true;
                                }
                            if (! any)
                                return false;
                            if (changed)
                                for (auto other : _tuples_of[e])
                                    if (other != ti && ! queued[other])
                                        queued[other] = 1, queue.push_back(other);
                        }
                    }
                    return true;
                }

                auto recurse(int next, vector<vector<char>> & domains) -> bool
                {
                    if (next == _source.size())
                        return true;

                    for (Element v = 0 ; v < _target.size() ; ++v) {
                        if (! domains[next][v])
                            continue;

                        _assignment[next] = v;
                        auto saved = domains;
                        std::fill(domains[next].begin(), domains[next].end(), 0);
                        domains[next][v] = 1;

                        if (propagate(domains, _tuples_of[next]) && recurse(next + 1, domains))
                            return true;

                        domains = std::move(saved);
                        _assignment[next] = -1;
                    }
                    return false;
                }

            public:
                HomomorphismSearch(const Structure & source, const Structure & target) :
                    _source(source),
                    _target(target),
                    _target_tables(target.signature().size()),
                    _target_lists(target.signature().size()),
                    _full(target.signature().size(), 0),
                    _tuples_of(source.size()),
                    _assignment(source.size(), -1)
                {
                    for (int s = 0 ; s < target.signature().size() ; ++s) {
                        for (auto & t : target.table(s))
                            _target_tables[s].insert(t);
                        _target_lists[s].assign(target.table(s).begin(), target.table(s).end());
                        double all = 1;
                        for (int j = 0 ; j < target.signature()[s].arity ; ++j)
                            all *= target.size();
                        _full[s] = target.size() > 0 && double(_target_lists[s].size()) == all;
                    }

                    for (int s = 0 ; s < source.signature().size() ; ++s)
                        for (auto & t : source.table(s)) {
                            // every image lies in a full relation
                            if (_full[s])
                                continue;
                            SourceTuple st{s, t, t};
                            std::sort(st.distinct.begin(), st.distinct.end());
                            st.distinct.erase(std::unique(st.distinct.begin(), st.distinct.end()), st.distinct.end());
                            for (auto e : st.distinct)
                                _tuples_of[e].push_back(int(_tuples.size()));
                            _position.emplace_back();
                            for (auto e : st.entries)
                                _position.back().push_back(int(std::lower_bound(st.distinct.begin(), st.distinct.end(), e)
                                            - st.distinct.begin()));
                            _tuples.push_back(std::move(st));
                        }
                }

                auto run() -> optional<StructureMap>
                {
                    if (_source.size() > 0 && _target.size() == 0)
                        return nullopt;

                    vector<vector<char>> domains(_source.size(), vector<char>(_target.size(), 1));
                    for (auto & st : _tuples)
                        if (st.distinct.size() == 1 && ! filter(domains, st, st.distinct[0]))
                            return nullopt;
                    vector<int> all(_tuples.size());
                    for (unsigned i = 0 ; i < all.size() ; ++i)
                        all[i] = i;
                    if (! propagate(domains, all))
                        return nullopt;

                    if (! recurse(0, domains))
                        return nullopt;
                    return StructureMap{_assignment};
                }
        };
    }

    auto is_homomorphism(const Structure & source, const Structure & target, const StructureMap & m) -> bool
    {
        if (source.signature() != target.signature() || int(m.images.size()) != source.size())
            return false;
        for (auto e : m.images)
            if (e < 0 || e >= target.size())
                return false;
        for (int s = 0 ; s < source.signature().size() ; ++s)
            for (auto & t : source.table(s))
                if (! target.holds(s, mapped(t, m)))
                    return false;
        return true;
    }

    auto is_embedding(const Structure & source, const Structure & target, const StructureMap & m) -> bool
    {
        if (! is_homomorphism(source, target, m))
            return false;
        vector<int> back(target.size(), -1);
        for (int i = 0 ; i < source.size() ; ++i) {
            if (back[m.images[i]] != -1)
                return false;
            back[m.images[i]] = i;
        }
        for (int s = 0 ; s < target.signature().size() ; ++s)
            for (auto & t : target.table(s)) {
                Tuple pre;
                for (auto e : t) {
                    if (back[e] == -1)
                        break;
                    pre.push_back(back[e]);
                }
                if (pre.size() == t.size() && ! source.holds(s, pre))
                    return false;
            }
        return true;
    }

    auto compose(const StructureMap & outer, const StructureMap & inner) -> StructureMap
    {
        StructureMap result;
        for (auto e : inner.images)
            result.images.push_back(outer.images[e]);
        return result;
    }

    auto find_homomorphism(const Structure & source, const Structure & target) -> optional<StructureMap>
    {
        if (source.signature() != target.signature())
            throw SignatureMismatch("homomorphism search");
        return HomomorphismSearch{source, target}.run();
    }

    auto is_t_free(const Structure & s, const vector<Structure> & forbidden) -> TFreeResult
    {
        for (int i = 0 ; i < int(forbidden.size()) ; ++i) {
            auto h = find_homomorphism(forbidden[i], s);
            if (h)
                return TFreeResult{false, i, h};
        }
        return TFreeResult{};
    }
}
